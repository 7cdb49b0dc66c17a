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

#include "hrush/structure.h"

#include <algorithm>
#include <utility>

#include "analysis.h"
#include "hrush/error.h"

namespace hrush {

RelStructure::RelStructure()
    : cache_(std::make_shared<internal::AnalysisCache>()) {}

std::optional<int> RelStructure::IndexOf(std::string_view name) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), name);
  if (it == points_.end() || *it != name) return std::nullopt;
  return static_cast<int>(it - points_.begin());
}

bool RelStructure::Contains(int symbol, const Tuple& tuple) const {
  const std::vector<Tuple>& rel = relations_.at(symbol);
  return std::binary_search(rel.begin(), rel.end(), tuple);
}

int RelStructure::TupleCount() const {
  int count = 0;
  for (const auto& rel : relations_) count += static_cast<int>(rel.size());
  return count;
}

StructureBuilder::StructureBuilder(Signature signature)
    : signature_(std::move(signature)) {}

StructureBuilder::StructureBuilder(const RelStructure& base)
    : signature_(base.signature()) {
  points_.insert(base.points().begin(), base.points().end());
  for (int s = 0; s < signature_.size(); ++s) {
    auto& bucket = tuples_[signature_.symbol(s).name];
    for (const Tuple& t : base.relation(s)) bucket.insert(TupleNames(base, t));
  }
}

StructureBuilder& StructureBuilder::AddPoint(const std::string& name) {
  if (name.empty()) throw ArgumentError("empty point name");
  points_.insert(name);
  return *this;
}

StructureBuilder& StructureBuilder::AddTuple(std::string_view symbol,
                                             std::vector<std::string> names) {
  std::optional<Symbol> resolved = signature_.Resolve(symbol);
  if (!resolved) {
    throw ArgumentError("unknown relation symbol " + std::string(symbol));
  }
  if (static_cast<int>(names.size()) != resolved->arity) {
    throw ArgumentError("arity mismatch for " + resolved->name + ": expected " +
                        std::to_string(resolved->arity) + ", got " +
                        std::to_string(names.size()));
  }
  if (!signature_.Find(resolved->name)) signature_ = signature_.With(*resolved);
  tuples_[resolved->name].insert(std::move(names));
  return *this;
}

StructureBuilder& StructureBuilder::RemoveTuple(
    std::string_view symbol, const std::vector<std::string>& names) {
  auto it = tuples_.find(std::string(symbol));
  if (it != tuples_.end()) it->second.erase(names);
  return *this;
}

StructureBuilder& StructureBuilder::RemoveTuplesInside(
    const std::set<std::string>& names) {
  for (auto& [symbol, bucket] : tuples_) {
    for (auto it = bucket.begin(); it != bucket.end();) {
      bool inside = std::all_of(it->begin(), it->end(), [&](const auto& p) {
        return names.count(p) > 0;
      });
      it = inside ? bucket.erase(it) : std::next(it);
    }
  }
  return *this;
}

RelStructure StructureBuilder::Build() const {
  RelStructure m;
  m.signature_ = signature_;
  if (signature_.open_mode()) {
    // Implicit symbols are only kept while they carry tuples.
    std::vector<Symbol> kept;
    for (const Symbol& s : signature_.symbols()) {
      auto it = tuples_.find(s.name);
      bool empty = it == tuples_.end() || it->second.empty();
      if (!(empty && OpenSymbolArity(s.name))) kept.push_back(s);
    }
    m.signature_ = Signature(std::move(kept), /*open_mode=*/true);
  }
  const Signature& sig = m.signature_;
  m.points_.assign(points_.begin(), points_.end());
  m.relations_.resize(sig.size());
  m.incidence_.resize(m.points_.size());
  for (int s = 0; s < sig.size(); ++s) {
    auto it = tuples_.find(sig.symbol(s).name);
    if (it == tuples_.end()) continue;
    std::vector<Tuple>& rel = m.relations_[s];
    for (const std::vector<std::string>& names : it->second) {
      Tuple t;
      t.reserve(names.size());
      for (const std::string& name : names) {
        std::optional<int> index = m.IndexOf(name);
        if (!index) {
          throw ArgumentError("tuple of " + sig.symbol(s).name +
                              " uses undeclared point " + name);
        }
        t.push_back(*index);
      }
      rel.push_back(std::move(t));
    }
    std::sort(rel.begin(), rel.end());
    for (int i = 0; i < static_cast<int>(rel.size()); ++i) {
      std::vector<int> seen = rel[i];
      std::sort(seen.begin(), seen.end());
      seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
      for (int p : seen) m.incidence_[p].push_back(TupleRef{s, i});
    }
  }
  return m;
}

PointSet EmptySet(const RelStructure& m) { return PointSet(m.size()); }

PointSet FullSet(const RelStructure& m) {
  PointSet s(m.size());
  s.set();
  return s;
}

PointSet MakeSubset(const RelStructure& m,
                    std::span<const std::string> names) {
  PointSet s(m.size());
  for (const std::string& name : names) {
    std::optional<int> index = m.IndexOf(name);
    if (!index) throw ArgumentError("point " + name + " is not in the universe");
    s.set(*index);
  }
  return s;
}

PointSet MakeSubset(const RelStructure& m,
                    std::initializer_list<std::string> names) {
  return MakeSubset(m, std::span<const std::string>(names.begin(), names.size()));
}

std::vector<std::string> SubsetNames(const RelStructure& m,
                                     const PointSet& subset) {
  CheckSubset(m, subset);
  std::vector<std::string> names;
  for (auto p = subset.find_first(); p != PointSet::npos;
       p = subset.find_next(p)) {
    names.push_back(m.point(static_cast<int>(p)));
  }
  return names;
}

void CheckSubset(const RelStructure& m, const PointSet& subset) {
  if (static_cast<int>(subset.size()) != m.size()) {
    throw ArgumentError("subset is not drawn from this universe (size " +
                        std::to_string(subset.size()) + " vs " +
                        std::to_string(m.size()) + ")");
  }
}

bool TupleInside(const Tuple& tuple, const PointSet& subset) {
  for (int p : tuple) {
    if (!subset.test(p)) return false;
  }
  return true;
}

std::vector<std::string> TupleNames(const RelStructure& m,
                                    const Tuple& tuple) {
  std::vector<std::string> names;
  names.reserve(tuple.size());
  for (int p : tuple) names.push_back(m.point(p));
  return names;
}

std::string FormatSubset(std::span<const std::string> names) {
  std::string out = "{";
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  return out + "}";
}

}  // namespace hrush
