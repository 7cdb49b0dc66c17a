// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HRUSH_PREGEOMETRY_H_
#define HRUSH_PREGEOMETRY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hrush/embedding.h"
#include "hrush/limits.h"
#include "hrush/structure.h"

namespace hrush {

// Subsets of a pregeometry's ground set, bit i for ground()[i].
using PgMask = uint32_t;

// A finite pregeometry given by its full rank table. The ground set is kept
// in lexicographic order.
class Pregeometry {
 public:
  // The empty pregeometry.
  Pregeometry() : rank_{0} {}

  // Validates shape and the rank axioms. `rank` is indexed by masks over
  // `ground` in the order given; the result is reindexed to sorted order.
  // Throws ArgumentError on a malformed table and DomainError when the
  // axioms fail.
  static Pregeometry Create(std::vector<std::string> ground,
                            std::span<const int> rank);
  // rank(X) = |X|.
  static Pregeometry Free(std::vector<std::string> ground);
  // No validation. `ground` must be sorted and the table must satisfy the
  // axioms; used for results the library derives itself.
  static Pregeometry Trusted(std::vector<std::string> ground,
                             std::vector<uint8_t> rank);

  const std::vector<std::string>& ground() const { return ground_; }
  int size() const { return static_cast<int>(ground_.size()); }
  PgMask full() const { return (PgMask{1} << size()) - 1; }
  int Rank(PgMask subset) const { return rank_[subset]; }
  const std::vector<uint8_t>& table() const { return rank_; }

  std::optional<int> IndexOf(const std::string& name) const;
  // Throws ArgumentError on an unknown name.
  PgMask MaskOf(std::span<const std::string> names) const;
  PgMask MaskOf(std::initializer_list<std::string> names) const;
  std::vector<std::string> Names(PgMask subset) const;

  friend bool operator==(const Pregeometry&, const Pregeometry&) = default;

 private:
  std::vector<std::string> ground_;
  std::vector<uint8_t> rank_;
};

// rank(A) = Dimension(M, A). Requires InClass(M) and |M| within the cap.
Pregeometry PgExtract(const RelStructure& m, const Limits& limits = {});

// { c : rank(A + c) = rank(A) }.
PgMask PgClosure(const Pregeometry& p, PgMask a);

// Localization at Z with Z removed from the ground set:
// rank'(X) = rank(X u Z) - rank(Z).
Pregeometry PgLocalize(const Pregeometry& p, PgMask z);

// The restriction to the points of `subset`.
Pregeometry PgRestrict(const Pregeometry& p, PgMask subset);

// The simplification: loops dropped, one (least) point kept per parallel
// class.
Pregeometry PgGeometry(const Pregeometry& p);

// Normalization, unit increase and submodularity over every subset. `table`
// must have length 2^n for some n; anything else is rejected.
bool PgIsMatroid(std::span<const int> table);
bool PgIsMatroid(std::span<const uint8_t> table);

// True iff the entries are distinct and independent.
bool IsIndependentTuple(const Pregeometry& p,
                        std::span<const std::string> entries);

enum class PgIsoMode { kIso, kEmbed };

struct PgIsoOptions {
  PgIsoMode mode = PgIsoMode::kIso;
  // Compare the simplifications instead of the pregeometries themselves.
  bool geometry_quotient = false;
  Limits limits;
};

// A rank-preserving bijection (kIso) or injection (kEmbed) from P into Q,
// or nullopt. The search is deterministic and returns the first map found.
std::optional<EmbeddingMap> PgIso(const Pregeometry& p, const Pregeometry& q,
                                  const PgIsoOptions& options = {});

// Every pregeometry on the ground set p0..p{m-1}, in lexicographic order of
// rank tables. Throws SizeLimitError for m > 6.
std::vector<Pregeometry> EnumeratePregeometries(int m);

}  // namespace hrush

#endif  // HRUSH_PREGEOMETRY_H_
