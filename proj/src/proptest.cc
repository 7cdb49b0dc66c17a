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

#include "hrush/proptest.h"

#include <algorithm>
#include <functional>
#include <map>

#include "hrush/closure.h"
#include "hrush/core.h"
#include "hrush/error.h"
#include "hrush/genesis.h"
#include "hrush/pregeometry.h"
#include "hrush/random.h"
#include "hrush/transforms.h"
#include "hrush/workspace.h"

namespace hrush {
namespace {

struct Failure {
  std::string message;
  std::string dump;
};

// Per-trial state: the inputs drawn so far, for the reproducer.
class Trial {
 public:
  Trial(Rng& rng, const ProptestOptions& options, int default_points,
        int64_t& checks)
      : rng_(rng),
        options_(options),
        max_points_(options.max_points > 0 ? options.max_points
                                           : default_points),
        checks_(checks) {}

  Rng& rng() { return rng_; }
  int max_points() const { return max_points_; }
  const Limits& limits() const { return options_.limits; }

  void Record(const std::string& name, const RelStructure& m) {
    dump_ += SerializeStandalone(name, m);
  }
  void Note(const std::string& name, const RelStructure& m,
            const PointSet& s) {
    dump_ += "# " + name + " = " + FormatSubset(SubsetNames(m, s)) + "\n";
  }

  // Counts one comparison.
  bool Check(bool ok) {
    ++checks_;
    return ok;
  }
  void Count(int64_t n) { checks_ += n; }

  Failure Fail(const std::string& message) const { return {message, dump_}; }

  RelStructure Draw(const Signature& signature, bool in_class = true,
                    int max_tuples = -1) {
    RandomStructureOptions opt;
    opt.signature = signature;
    opt.max_points = max_points_;
    opt.max_tuples = max_tuples;
    opt.in_class = in_class;
    return RandomStructure(rng_, opt);
  }

  // A signature from a small pool of weighted languages.
  Signature PoolSignature() {
    static const std::vector<Signature> pool = {
        Signature::Single(3),
        Signature({{"R", 3, 1}, {"Q", 2, 1}}),
        Signature({{"R", 3, 1}, {"W", 4, 2}}),
        Signature::Single(2),
    };
    return pool[rng_.Uniform(0, static_cast<int>(pool.size()) - 1)];
  }

  // A self-sufficient subset of at most `max_size` points.
  PointSet SelfSufficientSubset(const RelStructure& m, int max_size) {
    PointSet z = SsClosure(m, RandomSubset(rng_, m, max_size));
    if (static_cast<int>(z.count()) > max_size && m.size() > 0) {
      z = SsClosure(m, RandomSubset(rng_, m, 1));
    }
    if (static_cast<int>(z.count()) > max_size) z = EmptySet(m);
    return z;
  }

 private:
  Rng& rng_;
  const ProptestOptions& options_;
  int max_points_;
  int64_t& checks_;
  std::string dump_;
};

using Suite = std::function<std::optional<Failure>(Trial&)>;

bool Subset(const PointSet& a, const PointSet& b) { return a.is_subset_of(b); }

PointSet Map(const RelStructure& from, const PointSet& s,
             const RelStructure& to) {
  return MakeSubset(to, SubsetNames(from, s));
}

std::optional<Failure> Submodularity(Trial& t) {
  RelStructure m = t.Draw(t.PoolSignature(), t.rng().Chance(50));
  t.Record("M", m);
  const std::vector<int64_t> d = PredimTable(m, t.limits());
  const uint64_t n = d.size();
  const PointSet probe = RandomSubset(t.rng(), m, m.size());
  if (!t.Check(Predim(m, probe) == d[ToMask(probe)])) {
    return t.Fail("predimension table disagrees with direct count");
  }
  if (m.size() <= 6) {
    for (uint64_t a = 0; a < n; ++a) {
      for (uint64_t b = 0; b < n; ++b) {
        if (d[a | b] + d[a & b] > d[a] + d[b]) {
          t.Note("A", m, FromMask(m, a));
          t.Note("B", m, FromMask(m, b));
          return t.Fail("delta(A u B) + delta(A n B) > delta(A) + delta(B)");
        }
      }
    }
    t.Count(static_cast<int64_t>(n * n));
    return std::nullopt;
  }
  // Submodularity is equivalent to its local form.
  int64_t count = 0;
  for (uint64_t a = 0; a < n; ++a) {
    for (int x = 0; x < m.size(); ++x) {
      if (a >> x & 1) continue;
      for (int y = x + 1; y < m.size(); ++y) {
        if (a >> y & 1) continue;
        const uint64_t ax = a | uint64_t{1} << x;
        const uint64_t ay = a | uint64_t{1} << y;
        ++count;
        if (d[ax | ay] + d[a] > d[ax] + d[ay]) {
          t.Note("A", m, FromMask(m, a));
          return t.Fail("delta(A+x+y) + delta(A) > delta(A+x) + delta(A+y) "
                        "for x=" + m.point(x) + ", y=" + m.point(y));
        }
      }
    }
  }
  t.Count(count);
  return std::nullopt;
}

std::optional<Failure> Matroid(Trial& t) {
  RelStructure m = t.Draw(t.PoolSignature());
  t.Record("M", m);
  Pregeometry p = PgExtract(m, t.limits());
  if (!t.Check(PgIsMatroid(p.table()))) {
    return t.Fail("extracted rank table violates the matroid axioms");
  }
  return std::nullopt;
}

std::optional<Failure> Closure(Trial& t) {
  RelStructure m = t.Draw(t.PoolSignature());
  t.Record("M", m);
  PointSet a = RandomSubset(t.rng(), m, m.size());
  PointSet b = a | RandomSubset(t.rng(), m, m.size());
  t.Note("A", m, a);
  t.Note("B", m, b);
  const PointSet c = SsClosure(m, a);
  if (!t.Check(Subset(a, c))) return t.Fail("A is not inside cl(A)");
  if (!t.Check(SsClosure(m, c) == c)) return t.Fail("cl(cl(A)) != cl(A)");
  if (!t.Check(Subset(c, SsClosure(m, b)))) {
    return t.Fail("cl(A) is not inside cl(B)");
  }
  if (!t.Check(IsSelfSufficient(m, c))) {
    return t.Fail("cl(A) is not self-sufficient");
  }
  // Least: inside every self-sufficient superset of A.
  const PointSet s = SsClosure(m, a | RandomSubset(t.rng(), m, m.size()));
  if (!t.Check(IsSelfSufficient(m, s) && Subset(c, s))) {
    return t.Fail("cl(A) is not inside a self-sufficient superset of A");
  }
  const PointSet da = DClosure(m, a);
  if (!t.Check(Subset(a, da))) return t.Fail("A is not inside cl_d(A)");
  if (!t.Check(DClosure(m, da) == da)) {
    return t.Fail("cl_d(cl_d(A)) != cl_d(A)");
  }
  if (!t.Check(Subset(da, DClosure(m, b)))) {
    return t.Fail("cl_d(A) is not inside cl_d(B)");
  }
  if (m.size() >= 2) {
    const int x = t.rng().Uniform(0, m.size() - 1);
    const int y = t.rng().Uniform(0, m.size() - 1);
    PointSet ax = a;
    ax.set(x);
    PointSet ay = a;
    ay.set(y);
    if (DClosure(m, ax).test(y) && !da.test(y)) {
      if (!t.Check(DClosure(m, ay).test(x))) {
        return t.Fail("exchange fails for x=" + m.point(x) +
                      ", y=" + m.point(y));
      }
    }
  }
  return std::nullopt;
}

std::optional<Failure> Transitivity(Trial& t) {
  RelStructure m = t.Draw(t.PoolSignature());
  t.Record("M", m);
  const PointSet b = SsClosure(m, RandomSubset(t.rng(), m, m.size()));
  const RelStructure mb = Induced(m, b);
  const PointSet a = SsClosure(mb, RandomSubset(t.rng(), mb, mb.size()));
  t.Note("B", m, b);
  t.Note("A", mb, a);
  if (!t.Check(IsSelfSufficient(m, Map(mb, a, m)))) {
    return t.Fail("A <= B <= M but not A <= M");
  }
  return std::nullopt;
}

std::optional<Failure> Hereditary(Trial& t) {
  RelStructure m = t.Draw(t.PoolSignature());
  t.Record("M", m);
  const PointSet s = RandomSubset(t.rng(), m, m.size());
  const RelStructure ms = Induced(m, s);
  t.Note("S", m, s);
  if (!t.Check(InClass(ms))) return t.Fail("M[S] is not in the class");
  const PointSet a = SsClosure(m, RandomSubset(t.rng(), m, m.size()));
  t.Note("A", m, a);
  if (!t.Check(IsSelfSufficient(ms, Map(m, a & s, ms)))) {
    return t.Fail("A <= M but A n S is not self-sufficient in M[S]");
  }
  return std::nullopt;
}

struct ReplacementCase {
  RelStructure m;
  PointSet z;
  RelStructure z_new;
};

// M over {R/3, Q/2}, Z <= M with |Z| <= 4 and a class member on Z's points;
// with `same_pg` the member has the same pregeometry as M[Z].
ReplacementCase DrawReplacement(Trial& t, bool same_pg) {
  const Signature sig({{"R", 3, 1}, {"Q", 2, 1}});
  RelStructure m = t.Draw(sig, true, 14);
  PointSet z = t.SelfSufficientSubset(m, 4);
  RelStructure induced = Induced(m, z);
  RandomStructureOptions opt;
  opt.signature = sig;
  RelStructure z_new = RandomStructureOn(t.rng(), induced.points(), opt);
  if (same_pg) {
    const Pregeometry target = PgExtract(induced);
    bool found = false;
    for (int attempt = 0; attempt < 50 && !found; ++attempt) {
      found = PgExtract(z_new) == target;
      if (!found) z_new = RandomStructureOn(t.rng(), induced.points(), opt);
    }
    if (!found) z_new = ReshuffleTuples(t.rng(), induced);
  }
  t.Record("M", m);
  t.Note("Z", m, z);
  t.Record("Z_new", z_new);
  return {std::move(m), std::move(z), std::move(z_new)};
}

std::optional<Failure> Changing1(Trial& t) {
  ReplacementCase c = DrawReplacement(t, false);
  RelStructure out = ReplaceSubstructure(c.m, c.z, c.z_new);
  if (!t.Check(InClass(out))) return t.Fail("replacement left the class");
  if (!t.Check(IsSelfSufficient(out, c.z))) {
    return t.Fail("Z is not self-sufficient after replacement");
  }
  return std::nullopt;
}

std::optional<Failure> Changing2(Trial& t) {
  ReplacementCase c = DrawReplacement(t, true);
  RelStructure out = ReplaceSubstructure(c.m, c.z, c.z_new);
  if (!t.Check(PgExtract(out, t.limits()) == PgExtract(c.m, t.limits()))) {
    return t.Fail("rank tables differ after replacing Z by a structure with "
                  "the same pregeometry");
  }
  return std::nullopt;
}

std::optional<Failure> Changing4(Trial& t) {
  ReplacementCase c = DrawReplacement(t, false);
  RelStructure out = ReplaceSubstructure(c.m, c.z, c.z_new);
  const PgMask z = static_cast<PgMask>(ToMask(c.z));
  if (!t.Check(PgLocalize(PgExtract(c.m, t.limits()), z) ==
               PgLocalize(PgExtract(out, t.limits()), z))) {
    return t.Fail("localized rank tables differ after replacing Z");
  }
  return std::nullopt;
}

std::optional<Failure> Cor54(Trial& t) {
  ReplacementCase c = DrawReplacement(t, false);
  RelStructure diag =
      DiagonalSaturate(SubsetNames(c.m, c.z), 3, c.m.signature());
  RelStructure out = ReplaceSubstructure(c.m, c.z, diag);
  const PgMask z = static_cast<PgMask>(ToMask(c.z));
  const Pregeometry after = PgExtract(out, t.limits());
  if (!t.Check(PgLocalize(PgExtract(c.m, t.limits()), z) ==
               PgRestrict(after, after.full() & ~z))) {
    return t.Fail("localization at Z differs from the diagonal replacement");
  }
  return std::nullopt;
}

std::optional<Failure> Localization(Trial& t) {
  const Signature sig = t.PoolSignature();
  RelStructure m = t.Draw(sig);
  PointSet z = t.SelfSufficientSubset(m, 3);
  t.Record("M", m);
  t.Note("Z", m, z);
  int arity = 0;
  for (const Symbol& s : sig.symbols()) {
    if (s.weight == 1) arity = s.arity;
  }
  RelStructure diag = DiagonalSaturate(SubsetNames(m, z), arity, sig);
  RelStructure out = ReplaceSubstructure(m, z, diag);
  const PgMask zm = static_cast<PgMask>(ToMask(z));
  const Pregeometry local = PgLocalize(PgExtract(m, t.limits()), zm);
  const Pregeometry after = PgExtract(out, t.limits());
  if (!t.Check(local == PgRestrict(after, after.full() & ~zm))) {
    return t.Fail("PG_Z(M) differs from PG(M') off Z");
  }
  if (!t.Check(PgRestrict(after, zm).Rank(PgRestrict(after, zm).full()) ==
               0)) {
    return t.Fail("Z does not have rank 0 after diagonal saturation");
  }
  for (PgMask x = 0; x <= local.full(); ++x) {
    PointSet xs = MakeSubset(m, local.Names(x));
    if (!t.Check(local.Rank(x) == RelDim(m, xs, z))) {
      return t.Fail("localized rank of " + FormatSubset(local.Names(x)) +
                    " differs from d(X/Z)");
    }
  }
  return std::nullopt;
}

std::optional<Failure> PiReduceSuite(Trial& t) {
  RelStructure m = t.Draw(Signature({{"R3", 3, 1}, {"R4", 4, 1}}), true, 14);
  t.Record("M", m);
  RelStructure out = PiReduce(m, {{"R3", "R4"}});
  const std::optional<int> r3 = out.signature().Find("R3");
  if (!t.Check(!r3 || out.relation(*r3).empty())) {
    return t.Fail("R3 tuples remain");
  }
  if (!t.Check(PredimTable(m, t.limits()) == PredimTable(out, t.limits()))) {
    return t.Fail("pi-reduction changed the predimension of a subset");
  }
  return std::nullopt;
}

std::optional<Failure> Pad(Trial& t) {
  RelStructure m = t.Draw(Signature::Single(3));
  const int n = t.rng().Uniform(3, 6);
  t.Record("M", m);
  RelStructure out = PadArity(m, n);
  if (!t.Check(PredimTable(m, t.limits()) == PredimTable(out, t.limits()))) {
    return t.Fail("padding to arity " + std::to_string(n) +
                  " changed the predimension of a subset");
  }
  return std::nullopt;
}

Signature WideSignature() {
  return Signature({{"R3", 3, 1}, {"R4", 4, 1}, {"R5", 5, 1}},
                   /*open_mode=*/true);
}

std::optional<Failure> Derive(Trial& t) {
  RelStructure m = t.Draw(WideSignature(), true, 5);
  t.Record("M", m);
  std::vector<std::pair<int, int>> wide;
  for (int s = 0; s < m.signature().size(); ++s) {
    if (m.signature().symbol(s).arity < 4) continue;
    for (int i = 0; i < static_cast<int>(m.relation(s).size()); ++i) {
      wide.emplace_back(s, i);
    }
  }
  if (wide.empty()) return std::nullopt;
  auto [s, i] = wide[t.rng().Uniform(0, static_cast<int>(wide.size()) - 1)];
  const std::string symbol = m.signature().symbol(s).name;
  const std::vector<std::string> names = TupleNames(m, m.relation(s)[i]);
  RelStructure out = DeriveTuple(m, symbol, names);
  if (!t.Check(InClass(out))) return t.Fail("derivative left the class");
  for (uint64_t a = 0; a < (uint64_t{1} << m.size()); ++a) {
    const PointSet orig = FromMask(m, a);
    if (!t.Check(Dimension(m, orig) == Dimension(out, Map(m, orig, out)))) {
      return t.Fail("deriving " + symbol + FormatSubset(names) +
                    " changed the dimension of " +
                    FormatSubset(SubsetNames(m, orig)));
    }
  }
  return std::nullopt;
}

std::optional<Failure> DeriveSaturateSuite(Trial& t) {
  RelStructure m = t.Draw(WideSignature(), true, 5);
  t.Record("M", m);
  RelStructure out = DeriveSaturate(m);
  for (int s = 0; s < out.signature().size(); ++s) {
    if (!out.relation(s).empty() &&
        !t.Check(out.signature().symbol(s).arity == 3)) {
      return t.Fail("a tuple of arity " +
                    std::to_string(out.signature().symbol(s).arity) +
                    " remains");
    }
  }
  if (!t.Check(InClass(out))) return t.Fail("saturation left the class");
  for (int k = 0; k < 8; ++k) {
    const PointSet a = RandomSubset(t.rng(), m, m.size());
    if (!t.Check(Dimension(m, a) == Dimension(out, Map(m, a, out)))) {
      return t.Fail("saturation changed the dimension of " +
                    FormatSubset(SubsetNames(m, a)));
    }
  }
  return std::nullopt;
}

std::optional<Failure> Amalgam(Trial& t) {
  const Signature sig = t.PoolSignature();
  RelStructure m = t.Draw(sig);
  const PointSet a0 = t.SelfSufficientSubset(m, 3);
  const std::vector<std::string> common = SubsetNames(m, a0);
  std::vector<std::string> fresh;
  const int extra = t.rng().Uniform(0, std::max(0, t.max_points() - 5));
  for (int i = 0; i < extra; ++i) fresh.push_back("q" + std::to_string(i));
  std::vector<std::string> all = common;
  all.insert(all.end(), fresh.begin(), fresh.end());
  // A1 agrees with M on the common part and adds tuples touching new points.
  RandomStructureOptions opt;
  opt.signature = sig;
  RelStructure base = RandomStructureOn(t.rng(), all, opt);
  StructureBuilder b(Induced(m, a0));
  b.AddPoints(fresh);
  for (int s = 0; s < base.signature().size(); ++s) {
    for (const Tuple& tuple : base.relation(s)) {
      bool touches = false;
      for (int p : tuple) touches = touches || base.point(p)[0] == 'q';
      if (touches) {
        b.AddTuple(base.signature().symbol(s).name, TupleNames(base, tuple));
      }
    }
  }
  RelStructure a1 = b.Build();
  t.Record("A1", a1);
  t.Record("A2", m);
  t.Note("A0", m, a0);
  if (!InClass(a1)) return std::nullopt;
  RelStructure f = FreeAmalgam(a1, m, common);
  if (!t.Check(InClass(f))) return t.Fail("free amalgam left the class");
  const PointSet in_f = MakeSubset(f, a1.points());
  if (!t.Check(IsSelfSufficient(f, in_f))) {
    return t.Fail("A1 is not self-sufficient in the amalgam");
  }
  if (!t.Check(Predim(f, FullSet(f)) == Predim(a1, FullSet(a1)) +
                                            Predim(m, FullSet(m)) -
                                            Predim(m, a0))) {
    return t.Fail("predimension is not additive over A0");
  }
  for (uint64_t x = 0; x < (uint64_t{1} << a1.size()); ++x) {
    const PointSet xs = FromMask(a1, x);
    if (!t.Check(Dimension(f, Map(a1, xs, f)) == Dimension(a1, xs))) {
      return t.Fail("dimension of " + FormatSubset(SubsetNames(a1, xs)) +
                    " dropped in the amalgam");
    }
  }
  return std::nullopt;
}

std::optional<Failure> Corrupt(Trial& t) {
  RelStructure m = t.Draw(Signature::Single(3));
  t.Record("M", m);
  if (!t.Check(Predim(m, FullSet(m)) == m.size())) {
    return t.Fail("delta(M) != |M| (deliberately false)");
  }
  return std::nullopt;
}

struct SuiteInfo {
  Suite run;
  int default_points;
};

const std::map<std::string, SuiteInfo>& Registry() {
  static const auto* registry = new std::map<std::string, SuiteInfo>{
      {"amalgam", {Amalgam, 8}},
      {"changing1", {Changing1, 8}},
      {"changing2", {Changing2, 8}},
      {"changing4", {Changing4, 8}},
      {"closure", {Closure, 8}},
      {"cor54", {Cor54, 8}},
      {"corrupt", {Corrupt, 8}},
      {"derive", {Derive, 6}},
      {"derive_saturate", {DeriveSaturateSuite, 6}},
      {"hereditary", {Hereditary, 8}},
      {"localization", {Localization, 8}},
      {"matroid", {Matroid, 8}},
      {"pad", {Pad, 8}},
      {"pireduce", {PiReduceSuite, 7}},
      {"submodularity", {Submodularity, 10}},
      {"transitivity", {Transitivity, 8}},
  };
  return *registry;
}

}  // namespace

std::vector<std::string> ProptestSuites() {
  std::vector<std::string> out;
  for (const auto& [name, info] : Registry()) out.push_back(name);
  return out;
}

ProptestReport RunProptest(const std::string& suite,
                           const ProptestOptions& options) {
  auto it = Registry().find(suite);
  if (it == Registry().end()) {
    throw ArgumentError("unknown suite " + suite);
  }
  if (options.trials < 0) throw ArgumentError("trials must be non-negative");
  ProptestReport report;
  report.suite = suite;
  report.trials = options.trials;
  report.seed = options.seed;
  if (options.trials == 0) {
    report.warning = "zero trials: the pass is vacuous";
    return report;
  }
  for (int64_t i = 0; i < options.trials; ++i) {
    Rng rng(TrialSeed(options.seed, static_cast<uint64_t>(i)));
    Trial trial(rng, options, it->second.default_points, report.checks);
    std::optional<Failure> failure = it->second.run(trial);
    if (failure) {
      report.pass = false;
      report.failing_trial = i;
      report.failure = failure->message;
      report.counterexample = failure->dump;
      return report;
    }
  }
  return report;
}

}  // namespace hrush
