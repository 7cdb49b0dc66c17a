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

#include "hrush/core.h"

#include <algorithm>

#include <bit>
#include <set>
#include <string>

#include "analysis.h"
#include "hrush/error.h"

namespace hrush {

int64_t Predim(const RelStructure& m, const PointSet& a) {
  CheckSubset(m, a);
  int64_t value = static_cast<int64_t>(a.count());
  // Each tuple is counted at its least point.
  for (auto p = a.find_first(); p != PointSet::npos; p = a.find_next(p)) {
    for (const TupleRef& ref : m.incident(static_cast<int>(p))) {
      const Tuple& t = m.relation(ref.symbol)[ref.index];
      if (*std::min_element(t.begin(), t.end()) == static_cast<int>(p) &&
          TupleInside(t, a)) {
        value -= m.signature().symbol(ref.symbol).weight;
      }
    }
  }
  return value;
}

RelStructure Induced(const RelStructure& m, const PointSet& a) {
  CheckSubset(m, a);
  StructureBuilder builder(m.signature());
  for (auto p = a.find_first(); p != PointSet::npos; p = a.find_next(p)) {
    builder.AddPoint(m.point(static_cast<int>(p)));
  }
  for (int s = 0; s < m.signature().size(); ++s) {
    for (const Tuple& t : m.relation(s)) {
      if (TupleInside(t, a)) {
        builder.AddTuple(m.signature().symbol(s).name, TupleNames(m, t));
      }
    }
  }
  return builder.Build();
}

bool InClass(const RelStructure& m) {
  return internal::Components(m).in_class;
}

void CheckUniverseCap(int size, const Limits& limits) {
  int cap = std::min(limits.universe_cap, kHardUniverseCap);
  if (size > cap) {
    throw SizeLimitError("universe of " + std::to_string(size) +
                         " points exceeds the cap of " + std::to_string(cap));
  }
}

std::vector<int64_t> PredimTable(const RelStructure& m, const Limits& limits) {
  CheckUniverseCap(m.size(), limits);
  const int n = m.size();
  const uint64_t full = uint64_t{1} << n;
  // Weight of tuples by exact support, then subset-sum (zeta) transform.
  std::vector<int64_t> weight(full, 0);
  for (int s = 0; s < m.signature().size(); ++s) {
    const int64_t w = m.signature().symbol(s).weight;
    for (const Tuple& t : m.relation(s)) {
      uint64_t support = 0;
      for (int p : t) support |= uint64_t{1} << p;
      weight[support] += w;
    }
  }
  for (int i = 0; i < n; ++i) {
    const uint64_t bit = uint64_t{1} << i;
    for (uint64_t mask = 0; mask < full; ++mask) {
      if (mask & bit) weight[mask] += weight[mask ^ bit];
    }
  }
  for (uint64_t mask = 0; mask < full; ++mask) {
    weight[mask] = std::popcount(mask) - weight[mask];
  }
  return weight;
}

uint64_t ToMask(const PointSet& s) {
  if (s.size() > 64) throw SizeLimitError("subset too large for a bitmask");
  uint64_t mask = 0;
  for (auto p = s.find_first(); p != PointSet::npos; p = s.find_next(p)) {
    mask |= uint64_t{1} << p;
  }
  return mask;
}

PointSet FromMask(const RelStructure& m, uint64_t mask) {
  PointSet s(m.size());
  for (int p = 0; p < m.size(); ++p) {
    if (mask >> p & 1) s.set(p);
  }
  return s;
}

}  // namespace hrush
