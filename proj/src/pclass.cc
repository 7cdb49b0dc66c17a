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

#include "hrush/pclass.h"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <string>

#include "hrush/core.h"
#include "hrush/error.h"
#include "hrush/transforms.h"

namespace hrush {
namespace {

void CheckLiftCaps(const Pregeometry& p, int arity, const Limits& limits) {
  if (arity < 1) throw ArgumentError("arity must be positive");
  if (p.size() > limits.lift_ground_cap) {
    throw SizeLimitError("ground set of " + std::to_string(p.size()) +
                         " points exceeds the lift cap " +
                         std::to_string(limits.lift_ground_cap));
  }
  if (arity > limits.lift_arity_cap) {
    throw SizeLimitError("arity " + std::to_string(arity) +
                         " exceeds the lift cap " +
                         std::to_string(limits.lift_arity_cap));
  }
}

// The surjective tuples of the given arity onto `support`, in lexicographic
// order.
std::vector<Tuple> SurjectiveTuples(int arity, const std::vector<int>& support) {
  const int m = static_cast<int>(support.size());
  std::vector<Tuple> out;
  std::vector<int> digits(arity, 0);
  while (true) {
    std::vector<bool> hit(m, false);
    for (int d : digits) hit[d] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
      Tuple t;
      for (int d : digits) t.push_back(support[d]);
      out.push_back(std::move(t));
    }
    int i = arity - 1;
    while (i >= 0 && digits[i] == m - 1) digits[i--] = 0;
    if (i < 0) break;
    ++digits[i];
  }
  return out;
}

// Depth-first search over multisets of point sets. Each point set S of the
// ground carries the bound |S| - rank(S) on the number of tuples inside it;
// a complete multiset is a lift iff the superset minima of the resulting
// predimension equal the rank table.
class LiftSearcher {
 public:
  using Visit = std::function<bool(const std::vector<PgMask>&)>;

  LiftSearcher(const Pregeometry& p, int arity, std::optional<PgMask> tight)
      : p_(p), arity_(arity), tight_(tight) {
    const PgMask full = p.full();
    bound_.resize(full + 1);
    for (PgMask s = 0; s <= full; ++s) {
      bound_[s] = std::popcount(s) - p.Rank(s);
    }
    count_.assign(full + 1, 0);
    for (PgMask u = 1; u <= full; ++u) {
      const int size = std::popcount(u);
      if (size > arity) continue;
      // Surjection count, capped by what the set itself may hold.
      std::vector<int> support;
      for (int i = 0; i < p.size(); ++i) {
        if (u >> i & 1) support.push_back(i);
      }
      const int available = static_cast<int>(
          SurjectiveTuples(arity, support).size());
      const int mult = std::min(available, bound_[u]);
      if (mult <= 0) continue;
      supports_.push_back(u);
      max_mult_.push_back(mult);
    }
  }

  // Returns false iff `visit` stopped the search.
  bool Run(const Visit& visit) {
    const int total = bound_[p_.full()];
    if (total < 0) return true;
    for (PgMask s = 0; s <= p_.full(); ++s) {
      if (bound_[s] < 0) return true;
    }
    return Dfs(0, total, visit);
  }

 private:
  bool Add(PgMask u) {
    bool ok = true;
    const PgMask rest = p_.full() & ~u;
    for (PgMask extra = rest;; extra = (extra - 1) & rest) {
      if (++count_[u | extra] > bound_[u | extra]) ok = false;
      if (extra == 0) break;
    }
    return ok;
  }

  void Remove(PgMask u) {
    const PgMask rest = p_.full() & ~u;
    for (PgMask extra = rest;; extra = (extra - 1) & rest) {
      --count_[u | extra];
      if (extra == 0) break;
    }
  }

  bool IsLift() const {
    if (tight_ && count_[*tight_] != bound_[*tight_]) return false;
    const PgMask full = p_.full();
    std::vector<int> best(full + 1);
    for (PgMask s = full + 1; s-- > 0;) {
      int v = std::popcount(s) - count_[s];
      for (int i = 0; i < p_.size(); ++i) {
        if (!(s >> i & 1)) v = std::min(v, best[s | PgMask{1} << i]);
      }
      best[s] = v;
      if (v != p_.Rank(s)) return false;
    }
    return true;
  }

  bool Dfs(size_t from, int remaining, const Visit& visit) {
    if (remaining == 0) return !IsLift() || visit(chosen_);
    for (size_t i = from; i < supports_.size(); ++i) {
      const PgMask u = supports_[i];
      const int used = static_cast<int>(
          std::count(chosen_.begin(), chosen_.end(), u));
      if (used >= max_mult_[i]) continue;
      chosen_.push_back(u);
      const bool ok = Add(u);
      const bool go_on = !ok || Dfs(i, remaining - 1, visit);
      Remove(u);
      chosen_.pop_back();
      if (!go_on) return false;
    }
    return true;
  }

  const Pregeometry& p_;
  int arity_;
  std::optional<PgMask> tight_;
  std::vector<int> bound_;
  std::vector<int> count_;
  std::vector<PgMask> supports_;
  std::vector<int> max_mult_;
  std::vector<PgMask> chosen_;
};

RelStructure BuildLift(const Pregeometry& p, int arity,
                       const std::vector<PgMask>& supports) {
  StructureBuilder b(Signature::Single(arity));
  b.AddPoints(p.ground());
  std::map<PgMask, int> used;
  for (PgMask u : supports) {
    std::vector<int> support;
    for (int i = 0; i < p.size(); ++i) {
      if (u >> i & 1) support.push_back(i);
    }
    const Tuple t = SurjectiveTuples(arity, support)[used[u]++];
    std::vector<std::string> names;
    for (int i : t) names.push_back(p.ground()[i]);
    b.AddTuple("R", std::move(names));
  }
  return b.Build();
}

void CheckRestriction(const Pregeometry& a, const Pregeometry& b) {
  for (const std::string& name : a.ground()) {
    if (!b.IndexOf(name)) {
      throw ArgumentError("point " + name + " is not in the larger ground set");
    }
  }
  if (PgRestrict(b, b.MaskOf(a.ground())) != a) {
    throw ArgumentError("not the restriction of the larger pregeometry");
  }
}

RelStructure Rename(const RelStructure& m,
                    const std::map<std::string, std::string>& names) {
  StructureBuilder b(m.signature());
  for (const std::string& p : m.points()) b.AddPoint(names.at(p));
  for (int s = 0; s < m.signature().size(); ++s) {
    for (const Tuple& t : m.relation(s)) {
      std::vector<std::string> mapped;
      for (int q : t) mapped.push_back(names.at(m.point(q)));
      b.AddTuple(m.signature().symbol(s).name, std::move(mapped));
    }
  }
  return b.Build();
}

}  // namespace

LiftResult LiftSearch(const Pregeometry& p, int arity, const Limits& limits) {
  CheckLiftCaps(p, arity, limits);
  LiftResult result;
  LiftSearcher(p, arity, std::nullopt).Run([&](const auto& supports) {
    result.lift = BuildLift(p, arity, supports);
    return false;
  });
  return result;
}

bool ForEachLift(const Pregeometry& p, int arity, const Limits& limits,
                 const std::function<bool(const RelStructure&)>& visit) {
  CheckLiftCaps(p, arity, limits);
  return LiftSearcher(p, arity, std::nullopt).Run([&](const auto& supports) {
    return visit(BuildLift(p, arity, supports));
  });
}

StrongSubResult IsStrongSub(const Pregeometry& a, const Pregeometry& b,
                            int arity, const Limits& limits) {
  CheckLiftCaps(b, arity, limits);
  CheckRestriction(a, b);
  StrongSubResult result;
  // The restriction of a lift to a self-sufficient set is a lift of the
  // restricted pregeometry, so only tightness on A's points is required.
  LiftSearcher(b, arity, b.MaskOf(a.ground()))
      .Run([&](const auto& supports) {
        result.holds = true;
        result.lift = BuildLift(b, arity, supports);
        return false;
      });
  return result;
}

PgAmalgamResult PregeomAmalgam(const Pregeometry& a0, const Pregeometry& a1,
                               const Pregeometry& a2, int arity,
                               const Limits& limits) {
  StrongSubResult s1 = IsStrongSub(a0, a1, arity, limits);
  if (!s1.holds) {
    throw DomainError("A0 is not strong in A1 for arity " +
                      std::to_string(arity));
  }
  StrongSubResult s2 = IsStrongSub(a0, a2, arity, limits);
  if (!s2.holds) {
    throw DomainError("A0 is not strong in A2 for arity " +
                      std::to_string(arity));
  }
  const std::set<std::string> common(a0.ground().begin(), a0.ground().end());
  std::set<std::string> taken(a1.ground().begin(), a1.ground().end());
  std::map<std::string, std::string> rename;
  for (const std::string& p : a2.ground()) {
    std::string name = p;
    if (!common.count(p)) {
      while (taken.count(name)) name += "_2";
      taken.insert(name);
    }
    rename[p] = name;
  }
  const RelStructure& lift1 = *s1.lift;
  RelStructure lift2 = Rename(*s2.lift, rename);
  // Align the two lifts of A0 before gluing.
  RelStructure aligned = ReplaceSubstructure(
      lift2, MakeSubset(lift2, a0.ground()),
      Induced(lift1, MakeSubset(lift1, a0.ground())));
  RelStructure glued = FreeAmalgam(lift1, aligned, a0.ground());
  PgAmalgamResult result;
  result.p = PgExtract(glued, limits);
  for (const std::string& p : a1.ground()) result.from_a1.image[p] = p;
  result.from_a1.strong = true;
  result.from_a2.image = rename;
  result.from_a2.strong = true;
  return result;
}

PregeometryChain PclassGenericBuild(int arity,
                                    const GenericChainOptions& options) {
  PregeometryChain out;
  out.chain = GenericBuild(Signature::Single(arity), options);
  for (const RelStructure& stage : out.chain.stages) {
    if (stage.size() <= options.limits.universe_cap) {
      out.tables.push_back(PgExtract(stage, options.limits));
    } else {
      out.tables.push_back(std::nullopt);
    }
  }
  return out;
}

std::optional<EmbeddingMap> PgStrongEmbed(const Pregeometry& p,
                                          const RelStructure& m, int arity,
                                          const Limits& limits) {
  std::optional<EmbeddingMap> found;
  ForEachLift(p, arity, limits, [&](const RelStructure& lift) {
    found = StrongEmbedStructure(lift, m);
    return !found.has_value();
  });
  return found;
}

std::vector<Pregeometry> PclassMembers(int arity, int max_size,
                                       const Limits& limits) {
  std::vector<Pregeometry> out;
  for (int m = 0; m <= max_size; ++m) {
    for (Pregeometry& p : EnumeratePregeometries(m)) {
      if (LiftSearch(p, arity, limits).lift) out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace hrush
