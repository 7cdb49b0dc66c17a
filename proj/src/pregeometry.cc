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

#include "hrush/pregeometry.h"

#include <algorithm>
#include <functional>
#include <numeric>

#include "hrush/core.h"
#include "hrush/error.h"

namespace hrush {
namespace {

constexpr int kEnumerationCap = 6;

template <typename T>
bool IsMatroidTable(std::span<const T> table) {
  if (table.empty() || (table.size() & (table.size() - 1)) != 0) return false;
  const int n = __builtin_ctzll(table.size());
  if (n > kHardUniverseCap) return false;
  if (table[0] != 0) return false;
  const PgMask full = static_cast<PgMask>(table.size() - 1);
  for (PgMask s = 0; s <= full; ++s) {
    const long rs = table[s];
    for (int i = 0; i < n; ++i) {
      const PgMask bi = PgMask{1} << i;
      if (s & bi) continue;
      const long ri = table[s | bi];
      if (ri < rs || ri > rs + 1) return false;
      for (int j = i + 1; j < n; ++j) {
        const PgMask bj = PgMask{1} << j;
        if (s & bj) continue;
        if (ri + table[s | bj] < table[s | bi | bj] + rs) return false;
      }
    }
    if (s == full) break;
  }
  return true;
}

}  // namespace

Pregeometry Pregeometry::Create(std::vector<std::string> ground,
                                std::span<const int> rank) {
  const int n = static_cast<int>(ground.size());
  if (n > kHardUniverseCap) {
    throw SizeLimitError("pregeometry ground set exceeds hard cap");
  }
  if (rank.size() != (size_t{1} << n)) {
    throw ArgumentError("rank table must have 2^n entries");
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return ground[x] < ground[y]; });
  for (int i = 0; i + 1 < n; ++i) {
    if (ground[order[i]] == ground[order[i + 1]]) {
      throw ArgumentError("duplicate point " + ground[order[i]]);
    }
  }
  if (!IsMatroidTable(rank)) {
    throw DomainError("rank table violates the pregeometry axioms");
  }
  // new_of_old[i] = sorted position of ground[i].
  std::vector<int> new_of_old(n);
  for (int i = 0; i < n; ++i) new_of_old[order[i]] = i;
  std::vector<uint8_t> table(rank.size());
  for (size_t s = 0; s < rank.size(); ++s) {
    PgMask t = 0;
    for (int i = 0; i < n; ++i) {
      if (s >> i & 1) t |= PgMask{1} << new_of_old[i];
    }
    table[t] = static_cast<uint8_t>(rank[s]);
  }
  std::vector<std::string> sorted(n);
  for (int i = 0; i < n; ++i) sorted[i] = ground[order[i]];
  return Trusted(std::move(sorted), std::move(table));
}

Pregeometry Pregeometry::Free(std::vector<std::string> ground) {
  std::sort(ground.begin(), ground.end());
  if (std::adjacent_find(ground.begin(), ground.end()) != ground.end()) {
    throw ArgumentError("duplicate point in ground set");
  }
  if (static_cast<int>(ground.size()) > kHardUniverseCap) {
    throw SizeLimitError("pregeometry ground set exceeds hard cap");
  }
  std::vector<uint8_t> table(size_t{1} << ground.size());
  for (size_t s = 0; s < table.size(); ++s) {
    table[s] = static_cast<uint8_t>(__builtin_popcountll(s));
  }
  return Trusted(std::move(ground), std::move(table));
}

Pregeometry Pregeometry::Trusted(std::vector<std::string> ground,
                                 std::vector<uint8_t> rank) {
  Pregeometry p;
  p.ground_ = std::move(ground);
  p.rank_ = std::move(rank);
  return p;
}

std::optional<int> Pregeometry::IndexOf(const std::string& name) const {
  auto it = std::lower_bound(ground_.begin(), ground_.end(), name);
  if (it == ground_.end() || *it != name) return std::nullopt;
  return static_cast<int>(it - ground_.begin());
}

PgMask Pregeometry::MaskOf(std::span<const std::string> names) const {
  PgMask mask = 0;
  for (const std::string& name : names) {
    auto i = IndexOf(name);
    if (!i) throw ArgumentError("unknown point " + name);
    mask |= PgMask{1} << *i;
  }
  return mask;
}

PgMask Pregeometry::MaskOf(std::initializer_list<std::string> names) const {
  return MaskOf(std::span<const std::string>(names.begin(), names.size()));
}

std::vector<std::string> Pregeometry::Names(PgMask subset) const {
  std::vector<std::string> out;
  for (int i = 0; i < size(); ++i) {
    if (subset >> i & 1) out.push_back(ground_[i]);
  }
  return out;
}

Pregeometry PgExtract(const RelStructure& m, const Limits& limits) {
  CheckUniverseCap(m.size(), limits);
  if (!InClass(m)) {
    throw DomainError("pregeometry is only defined for structures in the class");
  }
  std::vector<int64_t> delta = PredimTable(m, limits);
  const int n = m.size();
  // Superset minimum: rank(A) = min over B >= A of delta(B).
  for (int i = 0; i < n; ++i) {
    const size_t bit = size_t{1} << i;
    for (size_t s = 0; s < delta.size(); ++s) {
      if (!(s & bit)) delta[s] = std::min(delta[s], delta[s | bit]);
    }
  }
  std::vector<uint8_t> table(delta.size());
  for (size_t s = 0; s < delta.size(); ++s) {
    table[s] = static_cast<uint8_t>(delta[s]);
  }
  return Pregeometry::Trusted(m.points(), std::move(table));
}

PgMask PgClosure(const Pregeometry& p, PgMask a) {
  const int r = p.Rank(a);
  PgMask out = 0;
  for (int c = 0; c < p.size(); ++c) {
    const PgMask bit = PgMask{1} << c;
    if (p.Rank(a | bit) == r) out |= bit;
  }
  return out;
}

Pregeometry PgRestrict(const Pregeometry& p, PgMask subset) {
  subset &= p.full();
  std::vector<int> keep;
  for (int i = 0; i < p.size(); ++i) {
    if (subset >> i & 1) keep.push_back(i);
  }
  const int k = static_cast<int>(keep.size());
  std::vector<uint8_t> table(size_t{1} << k);
  for (size_t s = 0; s < table.size(); ++s) {
    PgMask t = 0;
    for (int i = 0; i < k; ++i) {
      if (s >> i & 1) t |= PgMask{1} << keep[i];
    }
    table[s] = static_cast<uint8_t>(p.Rank(t));
  }
  return Pregeometry::Trusted(p.Names(subset), std::move(table));
}

Pregeometry PgLocalize(const Pregeometry& p, PgMask z) {
  z &= p.full();
  const PgMask rest = p.full() & ~z;
  const int rz = p.Rank(z);
  std::vector<int> keep;
  for (int i = 0; i < p.size(); ++i) {
    if (rest >> i & 1) keep.push_back(i);
  }
  const int k = static_cast<int>(keep.size());
  std::vector<uint8_t> table(size_t{1} << k);
  for (size_t s = 0; s < table.size(); ++s) {
    PgMask t = z;
    for (int i = 0; i < k; ++i) {
      if (s >> i & 1) t |= PgMask{1} << keep[i];
    }
    table[s] = static_cast<uint8_t>(p.Rank(t) - rz);
  }
  return Pregeometry::Trusted(p.Names(rest), std::move(table));
}

Pregeometry PgGeometry(const Pregeometry& p) {
  PgMask keep = 0;
  for (int i = 0; i < p.size(); ++i) {
    const PgMask bi = PgMask{1} << i;
    if (p.Rank(bi) == 0) continue;
    bool parallel = false;
    for (int j = 0; j < i && !parallel; ++j) {
      const PgMask bj = PgMask{1} << j;
      parallel = (keep & bj) && p.Rank(bi | bj) == 1;
    }
    if (!parallel) keep |= bi;
  }
  return PgRestrict(p, keep);
}

bool PgIsMatroid(std::span<const int> table) { return IsMatroidTable(table); }

bool PgIsMatroid(std::span<const uint8_t> table) {
  return IsMatroidTable(table);
}

bool IsIndependentTuple(const Pregeometry& p,
                        std::span<const std::string> entries) {
  std::vector<std::string> sorted(entries.begin(), entries.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    return false;
  }
  return p.Rank(p.MaskOf(sorted)) == static_cast<int>(sorted.size());
}

namespace {

// Counts of (subset size, rank) over subsets of size <= 3 through `point`.
std::vector<int> PointSignature(const Pregeometry& p, int point) {
  std::vector<int> sig(3 * 4, 0);
  const int n = p.size();
  const PgMask bp = PgMask{1} << point;
  auto add = [&](PgMask s, int size) {
    sig[(size - 1) * 4 + p.Rank(s)]++;
  };
  add(bp, 1);
  for (int i = 0; i < n; ++i) {
    if (i == point) continue;
    const PgMask bi = PgMask{1} << i;
    add(bp | bi, 2);
    for (int j = i + 1; j < n; ++j) {
      if (j == point) continue;
      add(bp | bi | (PgMask{1} << j), 3);
    }
  }
  return sig;
}

std::vector<int> RankHistogram(const Pregeometry& p) {
  std::vector<int> hist((p.size() + 1) * (p.size() + 1), 0);
  for (PgMask s = 0; s < p.table().size(); ++s) {
    hist[__builtin_popcount(s) * (p.size() + 1) + p.Rank(s)]++;
  }
  return hist;
}

class IsoSearch {
 public:
  IsoSearch(const Pregeometry& p, const Pregeometry& q, PgIsoMode mode)
      : p_(p), q_(q), used_(q.size(), false) {
    const int n = p.size();
    candidates_.resize(n);
    if (mode == PgIsoMode::kIso) {
      std::vector<std::vector<int>> qsig(q.size());
      for (int j = 0; j < q.size(); ++j) qsig[j] = PointSignature(q, j);
      for (int i = 0; i < n; ++i) {
        std::vector<int> sig = PointSignature(p, i);
        for (int j = 0; j < q.size(); ++j) {
          if (qsig[j] == sig) candidates_[i].push_back(j);
        }
      }
    } else {
      for (int i = 0; i < n; ++i) {
        const int r = p.Rank(PgMask{1} << i);
        for (int j = 0; j < q.size(); ++j) {
          if (q.Rank(PgMask{1} << j) == r) candidates_[i].push_back(j);
        }
      }
    }
    // A same-named candidate is tried first so that identical ground sets
    // prefer the identity.
    for (int i = 0; i < n; ++i) {
      auto same = q.IndexOf(p.ground()[i]);
      auto& c = candidates_[i];
      if (same) {
        auto it = std::find(c.begin(), c.end(), *same);
        if (it != c.end()) std::rotate(c.begin(), it, it + 1);
      }
    }
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) {
      return candidates_[x].size() < candidates_[y].size();
    });
    pmask_.assign(size_t{1} << n, 0);
    qmask_.assign(size_t{1} << n, 0);
    assignment_.assign(n, -1);
  }

  std::optional<EmbeddingMap> Run() {
    if (!Extend(0)) return std::nullopt;
    EmbeddingMap map;
    for (int i = 0; i < p_.size(); ++i) {
      map.image[p_.ground()[i]] = q_.ground()[assignment_[i]];
    }
    return map;
  }

 private:
  bool Extend(int depth) {
    const int n = p_.size();
    if (depth == n) return true;
    const int point = order_[depth];
    const PgMask pbit = PgMask{1} << point;
    const size_t count = size_t{1} << depth;
    for (int cand : candidates_[point]) {
      if (used_[cand]) continue;
      const PgMask qbit = PgMask{1} << cand;
      bool ok = true;
      for (size_t sub = 0; sub < count; ++sub) {
        const PgMask np = pmask_[sub] | pbit;
        const PgMask nq = qmask_[sub] | qbit;
        if (p_.Rank(np) != q_.Rank(nq)) {
          ok = false;
          break;
        }
        pmask_[sub | count] = np;
        qmask_[sub | count] = nq;
      }
      if (!ok) continue;
      used_[cand] = true;
      assignment_[point] = cand;
      if (Extend(depth + 1)) return true;
      used_[cand] = false;
      assignment_[point] = -1;
    }
    return false;
  }

  const Pregeometry& p_;
  const Pregeometry& q_;
  std::vector<bool> used_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> order_;
  std::vector<PgMask> pmask_;
  std::vector<PgMask> qmask_;
  std::vector<int> assignment_;
};

}  // namespace

std::optional<EmbeddingMap> PgIso(const Pregeometry& p, const Pregeometry& q,
                                  const PgIsoOptions& options) {
  CheckUniverseCap(p.size(), options.limits);
  CheckUniverseCap(q.size(), options.limits);
  if (options.geometry_quotient) {
    PgIsoOptions plain = options;
    plain.geometry_quotient = false;
    return PgIso(PgGeometry(p), PgGeometry(q), plain);
  }
  if (options.mode == PgIsoMode::kIso) {
    if (p.size() != q.size() || RankHistogram(p) != RankHistogram(q)) {
      return std::nullopt;
    }
  } else if (p.size() > q.size()) {
    return std::nullopt;
  }
  auto map = IsoSearch(p, q, options.mode).Run();
  if (map) map->strong = options.mode == PgIsoMode::kIso;
  return map;
}

std::vector<Pregeometry> EnumeratePregeometries(int m) {
  if (m < 0) throw ArgumentError("negative ground size");
  if (m > kEnumerationCap) {
    throw SizeLimitError("pregeometry enumeration is capped at 6 points");
  }
  std::vector<std::string> ground;
  for (int i = 0; i < m; ++i) ground.push_back("p" + std::to_string(i));
  const size_t n = size_t{1} << m;
  std::vector<uint8_t> table(n, 0);
  std::vector<Pregeometry> out;
  // Masks are assigned in increasing order, so every proper subset of s is
  // already fixed when s is reached.
  std::function<void(size_t)> assign = [&](size_t s) {
    if (s == n) {
      out.push_back(Pregeometry::Trusted(ground, table));
      return;
    }
    int lo = 0, hi = m;
    for (int i = 0; i < m; ++i) {
      if (!(s >> i & 1)) continue;
      const int r = table[s & ~(size_t{1} << i)];
      lo = std::max(lo, r);
      hi = std::min(hi, r + 1);
    }
    for (int i = 0; i < m; ++i) {
      if (!(s >> i & 1)) continue;
      for (int j = i + 1; j < m; ++j) {
        if (!(s >> j & 1)) continue;
        const size_t si = s & ~(size_t{1} << i);
        const size_t sj = s & ~(size_t{1} << j);
        hi = std::min(hi, table[si] + table[sj] - table[si & sj]);
      }
    }
    for (int r = lo; r <= hi; ++r) {
      table[s] = static_cast<uint8_t>(r);
      assign(s + 1);
    }
  };
  if (m == 0) {
    out.push_back(Pregeometry());
    return out;
  }
  assign(1);
  return out;
}

}  // namespace hrush
