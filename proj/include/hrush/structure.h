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

#ifndef HRUSH_STRUCTURE_H_
#define HRUSH_STRUCTURE_H_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "hrush/signature.h"

namespace hrush {

// A subset of a structure's universe, indexed by point position.
using PointSet = boost::dynamic_bitset<>;

// An ordered tuple of point indices. Coordinates may repeat.
using Tuple = std::vector<int>;

struct TupleRef {
  int symbol;
  int index;
};

namespace internal {
struct AnalysisCache;
}  // namespace internal

// A finite relational structure: a universe of named points and, for every
// symbol of the signature, a duplicate-free set of ordered tuples.
//
// Values are immutable once built. Points are stored in lexicographic order
// of their names; that order is the canonical point order used by every
// bitmask and every deterministic tie-break in the library. Relations are
// sorted, so two structures are equal iff their members compare equal.
class RelStructure {
 public:
  // The empty structure over the empty closed signature.
  RelStructure();

  const Signature& signature() const { return signature_; }
  int size() const { return static_cast<int>(points_.size()); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& point(int index) const { return points_.at(index); }
  std::optional<int> IndexOf(std::string_view name) const;

  const std::vector<Tuple>& relation(int symbol) const {
    return relations_.at(symbol);
  }
  bool Contains(int symbol, const Tuple& tuple) const;
  int TupleCount() const;
  // Tuples in which `point` occurs (each tuple listed once per point).
  const std::vector<TupleRef>& incident(int point) const {
    return incidence_.at(point);
  }

  // Lazily computed analysis data shared between copies of this value.
  internal::AnalysisCache& cache() const { return *cache_; }

  friend bool operator==(const RelStructure& a, const RelStructure& b) {
    return a.signature_ == b.signature_ && a.points_ == b.points_ &&
           a.relations_ == b.relations_;
  }

 private:
  friend class StructureBuilder;

  Signature signature_;
  std::vector<std::string> points_;
  std::vector<std::vector<Tuple>> relations_;
  std::vector<std::vector<TupleRef>> incidence_;
  std::shared_ptr<internal::AnalysisCache> cache_;
};

// Accumulates points and named tuples and validates them into a
// RelStructure. Duplicate points and tuples collapse (set semantics).
class StructureBuilder {
 public:
  explicit StructureBuilder(Signature signature);
  // Starts from a copy of `base`.
  explicit StructureBuilder(const RelStructure& base);

  StructureBuilder& AddPoint(const std::string& name);
  template <typename Range>
  StructureBuilder& AddPoints(const Range& names) {
    for (const auto& n : names) AddPoint(n);
    return *this;
  }
  // Adds a tuple under `symbol`. Open-mode symbols are materialized into the
  // signature. Points must already be present when Build() runs.
  StructureBuilder& AddTuple(std::string_view symbol,
                             std::vector<std::string> names);
  StructureBuilder& RemoveTuple(std::string_view symbol,
                                const std::vector<std::string>& names);
  // Drops every tuple whose points all lie in `names`.
  StructureBuilder& RemoveTuplesInside(const std::set<std::string>& names);

  bool HasPoint(const std::string& name) const {
    return points_.count(name) > 0;
  }
  const Signature& signature() const { return signature_; }

  // Throws ArgumentError if a tuple refers to an undeclared point.
  RelStructure Build() const;

 private:
  Signature signature_;
  std::set<std::string> points_;
  std::map<std::string, std::set<std::vector<std::string>>> tuples_;
};

// Subset helpers. All throw ArgumentError when a name or a bitset does not
// belong to the structure.
PointSet EmptySet(const RelStructure& m);
PointSet FullSet(const RelStructure& m);
PointSet MakeSubset(const RelStructure& m,
                    std::span<const std::string> names);
PointSet MakeSubset(const RelStructure& m,
                    std::initializer_list<std::string> names);
std::vector<std::string> SubsetNames(const RelStructure& m,
                                     const PointSet& subset);
void CheckSubset(const RelStructure& m, const PointSet& subset);

bool TupleInside(const Tuple& tuple, const PointSet& subset);
std::vector<std::string> TupleNames(const RelStructure& m,
                                    const Tuple& tuple);

// "{a,b,c}"
std::string FormatSubset(std::span<const std::string> names);

}  // namespace hrush

#endif  // HRUSH_STRUCTURE_H_
