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

#ifndef HRUSH_GENESIS_H_
#define HRUSH_GENESIS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hrush/embedding.h"
#include "hrush/limits.h"
#include "hrush/structure.h"

namespace hrush {

// The union of A1 and A2 glued along their common points, with no further
// relations. Throws ArgumentError when the two disagree on the common part
// and NotSelfSufficientError unless the common part is self-sufficient in
// A2.
RelStructure FreeAmalgam(const RelStructure& a1, const RelStructure& a2);
// As above, additionally checking that `a0` is exactly the common part.
RelStructure FreeAmalgam(const RelStructure& a1, const RelStructure& a2,
                         const std::vector<std::string>& a0);

// A self-sufficient pair A <= B. The points of B are named a1.., b1.. with
// the points of A first; `a` marks them.
struct ExtensionPair {
  RelStructure b;
  PointSet a;

  int a_size() const { return static_cast<int>(a.count()); }
  bool trivial() const { return a_size() == b.size(); }
};

// Every pair A <= B with |B| <= k and B in the class, one per isomorphism
// type of pairs, ordered by |B|, then |A|, then canonical encoding. Throws
// SizeLimitError for k > limits.catalog_cap and ArgumentError for open-mode
// signatures.
std::vector<ExtensionPair> ExtensionCatalog(const Signature& signature, int k,
                                            const Limits& limits = {});

struct EmbedOptions {
  // Preassigned images: entry i is the image of point i of A, or -1.
  std::vector<int> fixed;
  // Only report embeddings whose image is self-sufficient.
  bool strong = true;
  // Candidate order for points not constrained by a relation; defaults to
  // index order.
  const std::vector<int>* order = nullptr;
};

// Visits every embedding of A into M (injective, preserving and reflecting
// relations) as the vector of image indices. Stops when `visit` returns
// false; returns false iff it stopped early.
bool ForEachEmbedding(const RelStructure& a, const RelStructure& m,
                      const EmbedOptions& options,
                      const std::function<bool(const std::vector<int>&)>& visit);

// The first embedding g of A into M with g(A) <= M that extends `fixed`
// (names of A to names of M), or nullopt.
std::optional<EmbeddingMap> StrongEmbedStructure(
    const RelStructure& a, const RelStructure& m,
    const std::map<std::string, std::string>& fixed = {});

struct RoundLog {
  int round = 0;
  int pair = 0;
  int64_t copies_seen = 0;
  int glued = 0;
  // The per-pair budget ran out with copies still unexamined.
  bool budget_exhausted = false;
  // The copy scan limit ran out.
  bool scan_truncated = false;
};

struct GenericChainOptions {
  int catalog_bound = 3;
  int rounds = 1;
  uint64_t seed = 0;
  // Gluings per pair per round.
  int budget = 64;
  // Copies of A examined per pair per round.
  int64_t scan_limit = 200000;
  // No gluing is started once a stage reaches this many points.
  int max_stage_points = 100000;
  Limits limits;
};

struct GenericChain {
  Signature signature;
  std::vector<RelStructure> stages;
  std::vector<ExtensionPair> catalog;
  int catalog_bound = 0;
  int rounds_done = 0;
  uint64_t seed = 0;
  int budget = 0;
  std::vector<RoundLog> log;
  // Set when some round hit the budget, the scan limit or the size limit.
  bool truncated = false;
  std::string truncation;
};

// M_0 is empty. Round r builds M_{r+1} from M_r: for every catalog pair
// (A, B) and every self-sufficient copy of A in M_r without a witness in
// M_r, a fresh copy of B is freely amalgamated over it, up to the budget.
// Copies are visited in a seed-dependent order.
GenericChain GenericBuild(const Signature& signature,
                          const GenericChainOptions& options);

struct ExtensionFailure {
  int stage = 0;
  int pair = 0;
  // Points of A to their images.
  std::map<std::string, std::string> copy;
};

struct ExtensionReport {
  bool pass = true;
  int64_t copies_checked = 0;
  std::vector<ExtensionFailure> failures;
  // More failures exist than are listed.
  bool failures_truncated = false;
};

// For every non-trivial catalog pair (A, B), every stage M_i before the last
// and every self-sufficient copy of A in M_i, looks for a strong copy of B
// over it in the last stage. A chain of one stage is checked against
// itself. Stops after `max_failures` failures.
ExtensionReport ExtensionCheck(const GenericChain& chain,
                               int max_failures = 20);

// Replaces Z by `z_new` in the last stage and restricts every stage to its
// old universe inside the result. Z must be self-sufficient in the last
// stage.
GenericChain ReplaceInChain(const GenericChain& chain,
                            const std::vector<std::string>& z,
                            const RelStructure& z_new);

}  // namespace hrush

#endif  // HRUSH_GENESIS_H_
