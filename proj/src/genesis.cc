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

#include "hrush/genesis.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "analysis.h"
#include "hrush/closure.h"
#include "hrush/core.h"
#include "hrush/error.h"
#include "hrush/random.h"
#include "hrush/transforms.h"

namespace hrush {
namespace {

using NamedTuple = std::pair<std::string, std::vector<std::string>>;

std::set<NamedTuple> NamedTuples(const RelStructure& m) {
  std::set<NamedTuple> out;
  for (int s = 0; s < m.signature().size(); ++s) {
    for (const Tuple& t : m.relation(s)) {
      out.emplace(m.signature().symbol(s).name, TupleNames(m, t));
    }
  }
  return out;
}

Signature MergeSignatures(const Signature& x, const Signature& y) {
  Signature merged(x.symbols(), x.open_mode() || y.open_mode());
  for (const Symbol& s : y.symbols()) merged = merged.With(s);
  return merged;
}

// ---- Canonical forms of small structures ---------------------------------

struct Small {
  int n = 0;
  // Per symbol, sorted tuples over 0..n-1.
  std::vector<std::vector<Tuple>> rel;
};

std::vector<int> Encode(const Small& s, const std::vector<int>& perm) {
  std::vector<int> code;
  for (const auto& rel : s.rel) {
    std::vector<Tuple> mapped;
    mapped.reserve(rel.size());
    for (const Tuple& t : rel) {
      Tuple u(t.size());
      for (size_t i = 0; i < t.size(); ++i) u[i] = perm[t[i]];
      mapped.push_back(std::move(u));
    }
    std::sort(mapped.begin(), mapped.end());
    code.push_back(static_cast<int>(mapped.size()));
    for (const Tuple& t : mapped) code.insert(code.end(), t.begin(), t.end());
  }
  return code;
}

// Least encoding over the permutations sending the points of `amask` to the
// first positions; also returns the permutation attaining it.
std::pair<std::vector<int>, std::vector<int>> Canonical(const Small& s,
                                                        unsigned amask) {
  const int asize = __builtin_popcount(amask);
  std::vector<int> perm(s.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_code, best_perm;
  do {
    bool ok = true;
    for (int i = 0; i < s.n && ok; ++i) {
      ok = ((amask >> i & 1) != 0) == (perm[i] < asize);
    }
    if (!ok) continue;
    std::vector<int> code = Encode(s, perm);
    if (best_perm.empty() || code < best_code) {
      best_code = std::move(code);
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best_code, best_perm};
}

std::vector<int64_t> SmallPredims(const Small& s, const Signature& sig) {
  std::vector<int64_t> delta(size_t{1} << s.n);
  for (size_t a = 0; a < delta.size(); ++a) {
    delta[a] = __builtin_popcountll(a);
  }
  for (size_t k = 0; k < s.rel.size(); ++k) {
    for (const Tuple& t : s.rel[k]) {
      size_t support = 0;
      for (int p : t) support |= size_t{1} << p;
      for (size_t a = 0; a < delta.size(); ++a) {
        if ((a & support) == support) delta[a] -= sig.symbol(k).weight;
      }
    }
  }
  return delta;
}

// One representative per isomorphism type of in-class structures on n
// points, grown one tuple at a time.
std::vector<Small> ClassMembers(const Signature& sig, int n) {
  std::vector<std::pair<int, Tuple>> all_tuples;
  for (int k = 0; k < sig.size() && n > 0; ++k) {
    const int arity = sig.symbol(k).arity;
    Tuple t(arity, 0);
    while (true) {
      all_tuples.emplace_back(k, t);
      int i = arity - 1;
      while (i >= 0 && ++t[i] == n) t[i--] = 0;
      if (i < 0) break;
    }
  }
  std::vector<Small> out;
  std::set<std::vector<int>> seen;
  Small empty{n, std::vector<std::vector<Tuple>>(sig.size())};
  std::vector<Small> level = {empty};
  seen.insert(Canonical(empty, 0).first);
  while (!level.empty()) {
    std::vector<Small> next;
    for (const Small& s : level) {
      out.push_back(s);
      for (const auto& [k, t] : all_tuples) {
        if (std::binary_search(s.rel[k].begin(), s.rel[k].end(), t)) continue;
        Small grown = s;
        auto& rel = grown.rel[k];
        rel.insert(std::upper_bound(rel.begin(), rel.end(), t), t);
        std::vector<int64_t> delta = SmallPredims(grown, sig);
        if (*std::min_element(delta.begin(), delta.end()) < 0) continue;
        auto [code, perm] = Canonical(grown, 0);
        if (!seen.insert(code).second) continue;
        // Store the canonical representative.
        Small canon{n, std::vector<std::vector<Tuple>>(sig.size())};
        for (size_t j = 0; j < grown.rel.size(); ++j) {
          for (const Tuple& u : grown.rel[j]) {
            Tuple v(u.size());
            for (size_t i = 0; i < u.size(); ++i) v[i] = perm[u[i]];
            canon.rel[j].push_back(v);
          }
          std::sort(canon.rel[j].begin(), canon.rel[j].end());
        }
        next.push_back(std::move(canon));
      }
    }
    level = std::move(next);
  }
  return out;
}

ExtensionPair MakePair(const Small& s, const std::vector<int>& perm, int asize,
                       const Signature& sig) {
  std::vector<std::string> names(s.n);
  for (int i = 0; i < s.n; ++i) {
    const int p = perm[i];
    names[i] = p < asize ? "a" + std::to_string(p + 1)
                         : "b" + std::to_string(p - asize + 1);
  }
  StructureBuilder builder(sig);
  builder.AddPoints(names);
  for (size_t k = 0; k < s.rel.size(); ++k) {
    for (const Tuple& t : s.rel[k]) {
      std::vector<std::string> tn;
      for (int p : t) tn.push_back(names[p]);
      builder.AddTuple(sig.symbol(k).name, tn);
    }
  }
  ExtensionPair pair{builder.Build(), {}};
  pair.a = EmptySet(pair.b);
  for (int i = 0; i < asize; ++i) pair.a.set(i);
  return pair;
}

// ---- Embedding search -----------------------------------------------------

class EmbedSearch {
 public:
  EmbedSearch(const RelStructure& a, const RelStructure& m,
              const EmbedOptions& options,
              const std::function<bool(const std::vector<int>&)>& visit)
      : a_(a), m_(m), options_(options), visit_(visit) {}

  bool Run() {
    const Signature& as = a_.signature();
    const Signature& ms = m_.signature();
    a_to_m_.assign(as.size(), -1);
    m_to_a_.assign(ms.size(), -1);
    for (int k = 0; k < as.size(); ++k) {
      auto j = ms.Find(as.symbol(k).name);
      if (j && ms.symbol(*j).arity == as.symbol(k).arity) {
        a_to_m_[k] = *j;
        m_to_a_[*j] = k;
      } else if (!a_.relation(k).empty()) {
        return true;
      }
    }
    const int n = a_.size();
    if (n > m_.size()) return true;
    image_.assign(n, -1);
    if (!options_.fixed.empty()) {
      if (static_cast<int>(options_.fixed.size()) != n) {
        throw ArgumentError("fixed map has the wrong length");
      }
      std::set<int> targets;
      for (int f : options_.fixed) {
        if (f < -1 || f >= m_.size()) throw ArgumentError("bad fixed image");
        if (f >= 0 && !targets.insert(f).second) return true;
      }
    }
    PlanOrder();
    buffers_.resize(n);
    // If a prefix X of the order is self-sufficient in A, then g(X) <= g(A)
    // <= M forces g(X) <= M, which is checked before going deeper.
    prefix_strong_.assign(n + 1, false);
    if (options_.strong) {
      PointSet prefix = EmptySet(a_);
      for (int d = 1; d < n; ++d) {
        prefix.set(order_[d - 1]);
        prefix_strong_[d] = IsSelfSufficient(a_, prefix);
      }
    }
    return Extend(0);
  }

 private:
  int Fixed(int x) const {
    return options_.fixed.empty() ? -1 : options_.fixed[x];
  }

  void PlanOrder() {
    const int n = a_.size();
    std::vector<bool> placed(n, false);
    for (int x = 0; x < n; ++x) {
      if (Fixed(x) >= 0) {
        order_.push_back(x);
        placed[x] = true;
      }
    }
    while (static_cast<int>(order_.size()) < n) {
      int best = -1, best_links = -1;
      for (int x = 0; x < n; ++x) {
        if (placed[x]) continue;
        int links = 0;
        for (const TupleRef& ref : a_.incident(x)) {
          for (int y : a_.relation(ref.symbol)[ref.index]) {
            if (y != x && placed[y]) {
              ++links;
              break;
            }
          }
        }
        if (links > best_links) {
          best = x;
          best_links = links;
        }
      }
      order_.push_back(best);
      placed[best] = true;
    }
  }

  int PreimageOf(int c) const {
    for (size_t i = 0; i < used_.size(); ++i) {
      if (used_[i].first == c) return used_[i].second;
    }
    return -1;
  }

  // The returned list stays valid until the next call at the same depth.
  const std::vector<int>& Candidates(int x, int depth) {
    std::vector<int>& out = buffers_[depth];
    out.clear();
    if (Fixed(x) >= 0) {
      out.push_back(Fixed(x));
      return out;
    }
    // An A-tuple through x and an already placed point narrows the search
    // to the M-tuples through that point's image.
    for (const TupleRef& ref : a_.incident(x)) {
      const Tuple& t = a_.relation(ref.symbol)[ref.index];
      int anchor = -1;
      for (int y : t) {
        if (y != x && image_[y] >= 0) anchor = y;
      }
      if (anchor < 0) continue;
      const int msym = a_to_m_[ref.symbol];
      const int xpos = static_cast<int>(std::find(t.begin(), t.end(), x) -
                                        t.begin());
      for (const TupleRef& mref : m_.incident(image_[anchor])) {
        if (mref.symbol != msym) continue;
        const Tuple& u = m_.relation(msym)[mref.index];
        bool match = true;
        for (size_t i = 0; i < t.size() && match; ++i) {
          if (t[i] != x && image_[t[i]] >= 0) match = u[i] == image_[t[i]];
        }
        if (match) out.push_back(u[xpos]);
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    if (options_.order) return *options_.order;
    if (all_.empty()) {
      all_.resize(m_.size());
      std::iota(all_.begin(), all_.end(), 0);
    }
    return all_;
  }

  bool Compatible(int x, int c) const {
    if (PreimageOf(c) >= 0) return false;
    // Relations among placed points must be preserved.
    for (const TupleRef& ref : a_.incident(x)) {
      const Tuple& t = a_.relation(ref.symbol)[ref.index];
      Tuple u(t.size());
      bool ready = true;
      for (size_t i = 0; i < t.size() && ready; ++i) {
        if (t[i] == x) {
          u[i] = c;
        } else if (image_[t[i]] >= 0) {
          u[i] = image_[t[i]];
        } else {
          ready = false;
        }
      }
      if (ready && !m_.Contains(a_to_m_[ref.symbol], u)) return false;
    }
    // ...and reflected.
    for (const TupleRef& ref : m_.incident(c)) {
      const Tuple& u = m_.relation(ref.symbol)[ref.index];
      Tuple t(u.size());
      bool inside = true;
      for (size_t i = 0; i < u.size() && inside; ++i) {
        t[i] = u[i] == c ? x : PreimageOf(u[i]);
        inside = t[i] >= 0;
      }
      if (!inside) continue;
      const int asym = m_to_a_[ref.symbol];
      if (asym < 0 || !a_.Contains(asym, t)) return false;
    }
    return true;
  }

  bool Extend(int depth) {
    if (depth == a_.size()) {
      if (options_.strong &&
          !internal::IsSelfSufficientPoints(m_, image_)) {
        return true;
      }
      return visit_(image_);
    }
    if (depth > 0 && prefix_strong_[depth]) {
      std::vector<int> prefix(depth);
      for (int d = 0; d < depth; ++d) prefix[d] = image_[order_[d]];
      if (!internal::IsSelfSufficientPoints(m_, prefix)) return true;
    }
    const int x = order_[depth];
    for (int c : Candidates(x, depth)) {
      if (!Compatible(x, c)) continue;
      image_[x] = c;
      used_.emplace_back(c, x);
      const bool go_on = Extend(depth + 1);
      used_.pop_back();
      image_[x] = -1;
      if (!go_on) return false;
    }
    return true;
  }

  const RelStructure& a_;
  const RelStructure& m_;
  const EmbedOptions& options_;
  const std::function<bool(const std::vector<int>&)>& visit_;
  std::vector<int> a_to_m_;
  std::vector<int> m_to_a_;
  std::vector<int> order_;
  std::vector<bool> prefix_strong_;
  std::vector<int> image_;
  std::vector<std::pair<int, int>> used_;
  std::vector<std::vector<int>> buffers_;
  std::vector<int> all_;
};

bool HasWitness(const ExtensionPair& pair, const RelStructure& m,
                const std::vector<int>& copy) {
  EmbedOptions options;
  options.fixed.assign(pair.b.size(), -1);
  for (size_t i = 0; i < copy.size(); ++i) options.fixed[i] = copy[i];
  return !ForEachEmbedding(pair.b, m, options,
                           [](const std::vector<int>&) { return false; });
}

}  // namespace

RelStructure FreeAmalgam(const RelStructure& a1, const RelStructure& a2) {
  Signature sig = MergeSignatures(a1.signature(), a2.signature());
  std::vector<std::string> common;
  std::set_intersection(a1.points().begin(), a1.points().end(),
                        a2.points().begin(), a2.points().end(),
                        std::back_inserter(common));
  PointSet c1 = MakeSubset(a1, common);
  PointSet c2 = MakeSubset(a2, common);
  if (NamedTuples(Induced(a1, c1)) != NamedTuples(Induced(a2, c2))) {
    throw ArgumentError("the structures disagree on their common points " +
                        FormatSubset(common));
  }
  if (!IsSelfSufficient(a2, c2)) {
    throw NotSelfSufficientError("common part " + FormatSubset(common) +
                                 " is not self-sufficient in the second "
                                 "structure");
  }
  StructureBuilder builder(sig);
  builder.AddPoints(a1.points()).AddPoints(a2.points());
  for (const RelStructure* part : {&a1, &a2}) {
    for (const auto& [symbol, names] : NamedTuples(*part)) {
      builder.AddTuple(symbol, names);
    }
  }
  return builder.Build();
}

RelStructure FreeAmalgam(const RelStructure& a1, const RelStructure& a2,
                         const std::vector<std::string>& a0) {
  std::vector<std::string> common;
  std::set_intersection(a1.points().begin(), a1.points().end(),
                        a2.points().begin(), a2.points().end(),
                        std::back_inserter(common));
  std::vector<std::string> given = a0;
  std::sort(given.begin(), given.end());
  if (given != common) {
    throw ArgumentError("shared part " + FormatSubset(given) +
                        " is not the intersection " + FormatSubset(common));
  }
  return FreeAmalgam(a1, a2);
}

std::vector<ExtensionPair> ExtensionCatalog(const Signature& signature, int k,
                                            const Limits& limits) {
  if (signature.open_mode()) {
    throw ArgumentError("the extension catalog needs a finite signature");
  }
  if (k < 0) throw ArgumentError("catalog bound must be nonnegative");
  if (k > limits.catalog_cap) {
    throw SizeLimitError("catalog bound " + std::to_string(k) +
                         " exceeds cap " + std::to_string(limits.catalog_cap));
  }
  std::set<std::tuple<int, int, std::vector<int>>> keys;
  std::vector<std::pair<std::tuple<int, int, std::vector<int>>, ExtensionPair>>
      pairs;
  for (int n = 0; n <= k; ++n) {
    for (const Small& s : ClassMembers(signature, n)) {
      std::vector<int64_t> delta = SmallPredims(s, signature);
      const unsigned full = (1u << n) - 1;
      for (unsigned a = 0; a <= full; ++a) {
        bool strong = true;
        for (unsigned b = a; b <= full && strong; b = (b + 1) | a) {
          strong = delta[b] >= delta[a];
          if (b == full) break;
        }
        if (!strong) continue;
        auto [code, perm] = Canonical(s, a);
        auto key = std::make_tuple(n, __builtin_popcount(a), code);
        if (!keys.insert(key).second) continue;
        pairs.emplace_back(key,
                           MakePair(s, perm, __builtin_popcount(a), signature));
      }
    }
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<ExtensionPair> out;
  for (auto& p : pairs) out.push_back(std::move(p.second));
  return out;
}

bool ForEachEmbedding(
    const RelStructure& a, const RelStructure& m, const EmbedOptions& options,
    const std::function<bool(const std::vector<int>&)>& visit) {
  return EmbedSearch(a, m, options, visit).Run();
}

std::optional<EmbeddingMap> StrongEmbedStructure(
    const RelStructure& a, const RelStructure& m,
    const std::map<std::string, std::string>& fixed) {
  if (Predim(a, FullSet(a)) > m.size()) return std::nullopt;
  EmbedOptions options;
  if (!fixed.empty()) {
    options.fixed.assign(a.size(), -1);
    for (const auto& [from, to] : fixed) {
      auto x = a.IndexOf(from);
      auto y = m.IndexOf(to);
      if (!x || !y) throw ArgumentError("unknown point in fixed map");
      options.fixed[*x] = *y;
    }
  }
  std::optional<EmbeddingMap> found;
  ForEachEmbedding(a, m, options, [&](const std::vector<int>& image) {
    EmbeddingMap map;
    for (int i = 0; i < a.size(); ++i) map.image[a.point(i)] = m.point(image[i]);
    map.strong = true;
    found = std::move(map);
    return false;
  });
  return found;
}

GenericChain GenericBuild(const Signature& signature,
                          const GenericChainOptions& options) {
  if (options.rounds < 0 || options.budget < 0) {
    throw ArgumentError("rounds and budget must be nonnegative");
  }
  GenericChain chain;
  chain.signature = signature;
  chain.catalog =
      ExtensionCatalog(signature, options.catalog_bound, options.limits);
  chain.catalog_bound = options.catalog_bound;
  chain.seed = options.seed;
  chain.budget = options.budget;
  chain.stages.push_back(StructureBuilder(signature).Build());
  const int pairs = static_cast<int>(chain.catalog.size());
  std::vector<RelStructure> a_parts;
  for (const ExtensionPair& p : chain.catalog) {
    a_parts.push_back(Induced(p.b, p.a));
  }
  for (int r = 0; r < options.rounds; ++r) {
    const RelStructure current = chain.stages.back();
    StructureBuilder next(current);
    int points = current.size();
    int gluings = 0;
    bool size_hit = false;
    for (int pi = 0; pi < pairs && !size_hit; ++pi) {
      const ExtensionPair& pair = chain.catalog[pi];
      if (pair.trivial()) continue;
      RoundLog log;
      log.round = r + 1;
      log.pair = pi;
      std::vector<int> order(current.size());
      std::iota(order.begin(), order.end(), 0);
      Rng rng(TrialSeed(options.seed,
                        static_cast<uint64_t>(r) * pairs + pi));
      rng.Shuffle(order);
      EmbedOptions eo;
      eo.order = &order;
      const int a_size = pair.a_size();
      ForEachEmbedding(
          a_parts[pi], current, eo, [&](const std::vector<int>& copy) {
            if (log.copies_seen == options.scan_limit) {
              log.scan_truncated = true;
              return false;
            }
            ++log.copies_seen;
            if (HasWitness(pair, current, copy)) return true;
            if (log.glued == options.budget) {
              log.budget_exhausted = true;
              return false;
            }
            if (points >= options.max_stage_points) {
              size_hit = true;
              return false;
            }
            std::vector<std::string> names(pair.b.size());
            for (int i = 0; i < pair.b.size(); ++i) {
              names[i] = i < a_size
                             ? current.point(copy[i])
                             : "g" + std::to_string(r + 1) + "_" +
                                   std::to_string(gluings) + "_" +
                                   std::to_string(i - a_size);
              if (i >= a_size) next.AddPoint(names[i]);
            }
            for (int s = 0; s < pair.b.signature().size(); ++s) {
              for (const Tuple& t : pair.b.relation(s)) {
                std::vector<std::string> tn;
                for (int p : t) tn.push_back(names[p]);
                next.AddTuple(pair.b.signature().symbol(s).name, tn);
              }
            }
            ++log.glued;
            ++gluings;
            points += pair.b.size() - a_size;
            return true;
          });
      if (log.budget_exhausted || log.scan_truncated) chain.truncated = true;
      chain.log.push_back(log);
    }
    if (size_hit) {
      chain.truncated = true;
      chain.truncation += "round " + std::to_string(r + 1) +
                          ": stage size limit reached; ";
    }
    chain.stages.push_back(next.Build());
    chain.rounds_done = r + 1;
  }
  for (const RoundLog& log : chain.log) {
    if (log.budget_exhausted) {
      chain.truncation += "round " + std::to_string(log.round) + " pair " +
                          std::to_string(log.pair) + ": budget exhausted; ";
    }
    if (log.scan_truncated) {
      chain.truncation += "round " + std::to_string(log.round) + " pair " +
                          std::to_string(log.pair) + ": scan limit reached; ";
    }
  }
  return chain;
}

ExtensionReport ExtensionCheck(const GenericChain& chain, int max_failures) {
  ExtensionReport report;
  if (chain.stages.empty()) return report;
  const RelStructure& last = chain.stages.back();
  // A single stage is checked against itself.
  const int checked = std::max(1, static_cast<int>(chain.stages.size()) - 1);
  for (int i = 0; i < checked; ++i) {
    const RelStructure& stage = chain.stages[i];
    std::vector<int> to_last(stage.size());
    for (int p = 0; p < stage.size(); ++p) {
      auto q = last.IndexOf(stage.point(p));
      if (!q) throw ArgumentError("stages are not nested");
      to_last[p] = *q;
    }
    for (int pi = 0; pi < static_cast<int>(chain.catalog.size()); ++pi) {
      const ExtensionPair& pair = chain.catalog[pi];
      if (pair.trivial()) continue;
      RelStructure a = Induced(pair.b, pair.a);
      const bool finished = ForEachEmbedding(
          a, stage, {}, [&](const std::vector<int>& copy) {
            ++report.copies_checked;
            std::vector<int> lifted(copy.size());
            for (size_t j = 0; j < copy.size(); ++j) {
              lifted[j] = to_last[copy[j]];
            }
            if (HasWitness(pair, last, lifted)) return true;
            report.pass = false;
            if (static_cast<int>(report.failures.size()) == max_failures) {
              report.failures_truncated = true;
              return false;
            }
            ExtensionFailure f;
            f.stage = i;
            f.pair = pi;
            for (size_t j = 0; j < copy.size(); ++j) {
              f.copy[a.point(j)] = stage.point(copy[j]);
            }
            report.failures.push_back(std::move(f));
            return true;
          });
      if (!finished) return report;
    }
  }
  return report;
}

GenericChain ReplaceInChain(const GenericChain& chain,
                            const std::vector<std::string>& z,
                            const RelStructure& z_new) {
  if (chain.stages.empty()) throw ArgumentError("empty chain");
  GenericChain out = chain;
  const RelStructure& last = chain.stages.back();
  RelStructure replaced =
      ReplaceSubstructure(last, MakeSubset(last, z), z_new);
  for (RelStructure& stage : out.stages) {
    stage = Induced(replaced, MakeSubset(replaced, stage.points()));
  }
  return out;
}

}  // namespace hrush
