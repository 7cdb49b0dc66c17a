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

#include "hrush/random.h"

#include <algorithm>
#include <map>
#include <set>

#include "hrush/core.h"
#include "hrush/error.h"

namespace hrush {
namespace {

constexpr int kTableLimit = 16;

uint64_t SplitMix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string PointName(const std::string& prefix, int i, int n) {
  std::string digits = std::to_string(i);
  const int width = static_cast<int>(std::to_string(n - 1).size());
  return prefix + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

uint64_t TrialSeed(uint64_t seed, uint64_t index) {
  return SplitMix(SplitMix(seed) ^ SplitMix(index + 0x632be59bd9b4e019ULL));
}

RelStructure RandomStructure(Rng& rng, const RandomStructureOptions& options) {
  const Signature& sig = options.signature;
  if (sig.size() == 0) throw ArgumentError("signature has no symbols");
  if (options.min_points < 0 || options.max_points < options.min_points) {
    throw ArgumentError("bad point range");
  }
  const int n = rng.Uniform(options.min_points, options.max_points);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(PointName(options.prefix, i, n));
  return RandomStructureOn(rng, names, options);
}

RelStructure RandomStructureOn(Rng& rng, const std::vector<std::string>& names,
                               const RandomStructureOptions& options) {
  const Signature& sig = options.signature;
  if (sig.size() == 0) throw ArgumentError("signature has no symbols");
  const int n = static_cast<int>(names.size());
  StructureBuilder builder(sig);
  builder.AddPoints(names);
  if (n == 0) return builder.Build();

  const int attempts =
      rng.Uniform(0, options.max_tuples < 0 ? 2 * n : options.max_tuples);
  const bool use_table = options.in_class && n <= kTableLimit;
  std::vector<int64_t> delta;
  if (use_table) {
    delta.resize(size_t{1} << n);
    for (size_t s = 0; s < delta.size(); ++s) {
      delta[s] = __builtin_popcountll(s);
    }
  }
  std::set<std::pair<int, std::vector<int>>> seen;
  for (int t = 0; t < attempts; ++t) {
    const int sym = rng.Uniform(0, sig.size() - 1);
    const Symbol& symbol = sig.symbol(sym);
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    rng.Shuffle(pool);
    if (rng.Chance(50)) {
      pool.resize(rng.Uniform(1, std::min(n, symbol.arity)));
    }
    std::vector<int> tuple(symbol.arity);
    for (int& x : tuple) x = pool[rng.Uniform(0, pool.size() - 1)];
    if (!seen.insert({sym, tuple}).second) continue;

    std::vector<std::string> tuple_names;
    for (int x : tuple) tuple_names.push_back(names[x]);
    if (!options.in_class) {
      builder.AddTuple(symbol.name, tuple_names);
      continue;
    }
    if (use_table) {
      uint64_t support = 0;
      for (int x : tuple) support |= uint64_t{1} << x;
      const uint64_t full = (uint64_t{1} << n) - 1;
      const uint64_t rest = full & ~support;
      bool ok = true;
      for (uint64_t s = rest;; s = (s - 1) & rest) {
        if (delta[s | support] < symbol.weight) {
          ok = false;
          break;
        }
        if (s == 0) break;
      }
      if (!ok) continue;
      for (uint64_t s = rest;; s = (s - 1) & rest) {
        delta[s | support] -= symbol.weight;
        if (s == 0) break;
      }
      builder.AddTuple(symbol.name, tuple_names);
    } else {
      StructureBuilder trial = builder;
      trial.AddTuple(symbol.name, tuple_names);
      if (InClass(trial.Build())) builder = std::move(trial);
    }
  }
  return builder.Build();
}

RelStructure ReshuffleTuples(Rng& rng, const RelStructure& m) {
  const Signature& sig = m.signature();
  StructureBuilder builder(sig);
  builder.AddPoints(m.points());
  for (int s = 0; s < sig.size(); ++s) {
    const int arity = sig.symbol(s).arity;
    std::map<std::vector<int>, int> groups;
    for (const Tuple& t : m.relation(s)) {
      std::vector<int> u(t.begin(), t.end());
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      groups[u]++;
    }
    for (const auto& [u, count] : groups) {
      // All tuples over u that use every point of u.
      std::vector<Tuple> onto;
      Tuple cur(arity);
      const int k = static_cast<int>(u.size());
      std::vector<int> idx(arity, 0);
      while (true) {
        int mask = 0;
        for (int i = 0; i < arity; ++i) {
          cur[i] = u[idx[i]];
          mask |= 1 << idx[i];
        }
        if (mask == (1 << k) - 1) onto.push_back(cur);
        int i = arity - 1;
        while (i >= 0 && ++idx[i] == k) idx[i--] = 0;
        if (i < 0) break;
      }
      rng.Shuffle(onto);
      for (int i = 0; i < count; ++i) {
        builder.AddTuple(sig.symbol(s).name, TupleNames(m, onto[i]));
      }
    }
  }
  return builder.Build();
}

PointSet RandomSubset(Rng& rng, const RelStructure& m, int max_size) {
  PointSet s = EmptySet(m);
  if (m.size() == 0) return s;
  const int k = rng.Uniform(0, std::min(max_size, m.size()));
  std::vector<int> order(m.size());
  for (int i = 0; i < m.size(); ++i) order[i] = i;
  rng.Shuffle(order);
  for (int i = 0; i < k; ++i) s.set(order[i]);
  return s;
}

}  // namespace hrush
