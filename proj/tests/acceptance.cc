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

// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hrush/closure.h"
#include "hrush/core.h"
#include "hrush/genesis.h"
#include "hrush/pclass.h"
#include "hrush/pregeometry.h"
#include "hrush/proptest.h"
#include "hrush/random.h"
#include "hrush/transforms.h"

namespace hrush {
namespace {

// Wall-clock budgets, in seconds.
constexpr double kLiftBudget = 60.0;
constexpr double kAxiomBudget = 300.0;

constexpr int64_t kAxiomTrials = 10000;
constexpr int64_t kChangingTrials = 2000;
constexpr int64_t kTranslationTrials = 1000;
constexpr int64_t kLocalizationTrials = 500;
constexpr int kReplacementDraws = 5;

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void Report(int id, const std::string& name, const Outcome& o) {
  std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
              o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

const std::vector<std::string> kFour = {"a", "b", "c", "d"};

// Every set of at most four ternary tuples over four points, in the class.
std::vector<RelStructure> TernaryClassOnFour() {
  std::vector<std::vector<std::string>> all;
  for (int i = 0; i < 64; ++i) {
    all.push_back({kFour[i / 16], kFour[i / 4 % 4], kFour[i % 4]});
  }
  std::vector<RelStructure> out;
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int next) {
    StructureBuilder b(Signature::Single(3));
    b.AddPoints(kFour);
    for (int i : chosen) b.AddTuple("R", all[i]);
    RelStructure m = b.Build();
    if (!InClass(m)) return;  // supersets of a bad set stay bad
    out.push_back(std::move(m));
    if (chosen.size() == 4) return;
    for (int i = next; i < 64; ++i) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

Pregeometry U34() {
  std::vector<int> rank(16);
  for (int x = 0; x < 16; ++x) rank[x] = std::min(__builtin_popcount(x), 3);
  return Pregeometry::Create(kFour, rank);
}

Outcome Criterion1(const std::vector<RelStructure>& c3) {
  const auto start = Clock::now();
  const Pregeometry p = U34();
  LiftResult four = LiftSearch(p, 4);
  LiftResult three = LiftSearch(p, 3);
  int brute = 0;
  for (const RelStructure& m : c3) brute += PgExtract(m) == p;
  const double secs = Since(start);
  const bool ok = four.lift && PgExtract(*four.lift) == p && !three.lift &&
                  three.exhaustive && brute == 0 && secs < kLiftBudget;
  return {ok, "n=4 lift " + std::string(four.lift ? "found" : "missing") +
                  ", n=3 lift " + (three.lift ? "found" : "none") +
                  (three.exhaustive ? " (exhaustive)" : " (partial)") +
                  ", brute-force ternary lifts over " +
                  std::to_string(c3.size()) + " class members: " +
                  std::to_string(brute) + ", " + std::to_string(secs) + " s"};
}

Outcome Criterion2() {
  std::string detail;
  bool ok = true;
  for (int m = 3; m <= 5; ++m) {
    std::vector<std::string> pts;
    for (int i = 0; i < m; ++i) pts.push_back("p" + std::to_string(i));
    RelStructure s = StructureBuilder(Signature::Single(m))
                         .AddPoints(pts)
                         .AddTuple("R", pts)
                         .Build();
    const int64_t d = Dimension(s, FullSet(s));
    ok = ok && d == m - 1;
    detail += "m=" + std::to_string(m) + " d=" + std::to_string(d) + " ";
  }
  return {ok, detail};
}

struct SuiteRun {
  std::string suite;
  int64_t trials;
  int max_points;
};

Outcome RunSuites(const std::vector<SuiteRun>& runs, double budget) {
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (const SuiteRun& run : runs) {
    ProptestOptions o;
    o.trials = run.trials;
    o.seed = 1;
    o.max_points = run.max_points;
    ProptestReport r = RunProptest(run.suite, o);
    ok = ok && r.pass;
    detail += run.suite + (run.max_points ? "@" + std::to_string(run.max_points)
                                          : std::string()) +
              "=" + (r.pass ? "ok(" + std::to_string(r.trials) + " trials, " +
                                  std::to_string(r.checks) + " checks)"
                            : "trial " +
                                         std::to_string(*r.failing_trial) +
                                         " " + r.failure) +
              " ";
  }
  const double secs = Since(start);
  if (budget > 0) ok = ok && secs < budget;
  return {ok, detail + std::to_string(secs) + " s"};
}

GenericChain Prefix(const GenericChain& chain, int rounds) {
  GenericChain out = chain;
  out.stages.resize(rounds + 1);
  out.rounds_done = rounds;
  return out;
}

Outcome Criterion7() {
  const auto start = Clock::now();
  GenericChainOptions o;
  o.catalog_bound = 3;
  o.rounds = 3;
  const GenericChain chain = GenericBuild(Signature::Single(3), o);
  std::string detail = "build " + std::to_string(Since(start)) + " s;";
  bool passed_some_round = false;
  for (int r = 1; r <= 3; ++r) {
    ExtensionReport rep = ExtensionCheck(Prefix(chain, r));
    passed_some_round = passed_some_round || rep.pass;
    detail += " round " + std::to_string(r) + " (" +
              std::to_string(chain.stages[r].size()) + " points) " +
              (rep.pass ? "pass" : "fail, " +
                                       std::to_string(rep.failures.size()) +
                                       (rep.failures_truncated ? "+" : "") +
                                       " unwitnessed copies") +
              ";";
  }
  const GenericChain two = Prefix(chain, 2);
  const RelStructure& last = two.stages.back();
  Rng rng(7);
  int replaced = 0;
  int replaced_pass = 0;
  for (int attempt = 0; replaced < kReplacementDraws && attempt < 1000;
       ++attempt) {
    std::vector<std::string> z;
    const int size = rng.Uniform(1, 3);
    while (static_cast<int>(z.size()) < size) {
      const std::string p = last.point(rng.Uniform(0, last.size() - 1));
      if (std::find(z.begin(), z.end(), p) == z.end()) z.push_back(p);
    }
    const PointSet zs = MakeSubset(last, z);
    if (!IsSelfSufficient(last, zs)) continue;
    RelStructure z_new = ReshuffleTuples(rng, Induced(last, zs));
    ExtensionReport rep = ExtensionCheck(ReplaceInChain(two, z, z_new));
    ++replaced;
    replaced_pass += rep.pass;
  }
  detail += " stage-2 replacements passing: " + std::to_string(replaced_pass) +
            "/" + std::to_string(replaced) + "; total " +
            std::to_string(Since(start)) + " s";
  return {passed_some_round && replaced > 0 && replaced_pass == replaced,
          detail};
}

Outcome Criterion8() {
  int64_t premises = 0;
  int64_t violations = 0;
  int64_t realizable = 0;
  for (int m = 0; m <= 3; ++m) {
    for (const Pregeometry& c : EnumeratePregeometries(m)) {
      if (!LiftSearch(c, 3).lift) continue;
      ++realizable;
      for (PgMask b = 0; b <= c.full(); ++b) {
        const Pregeometry pb = PgRestrict(c, b);
        if (!IsStrongSub(pb, c, 3).holds) continue;
        for (PgMask a = b;; a = (a - 1) & b) {
          const Pregeometry pa = PgRestrict(c, a);
          if (IsStrongSub(pa, pb, 3).holds) {
            ++premises;
            violations += !IsStrongSub(pa, c, 3).holds;
          }
          if (a == 0) break;
        }
      }
    }
  }
  return {violations == 0 && premises > 0,
          std::to_string(realizable) + " realizable pregeometries, " +
              std::to_string(premises) + " triples with A<|B<|C, " +
              std::to_string(violations) + " violations"};
}

Outcome Criterion9(const std::vector<RelStructure>& c3) {
  const RelStructure s1 = StructureBuilder(Signature::Single(4))
                              .AddPoints(kFour)
                              .AddTuple("R", kFour)
                              .Build();
  const Pregeometry target = PgExtract(s1);
  int isomorphic = 0;
  std::set<std::vector<uint8_t>> tables;
  for (const RelStructure& b : c3) {
    const Pregeometry p = PgExtract(b);
    tables.insert(p.table());
    isomorphic += PgIso(target, p).has_value();
  }
  return {isomorphic == 0 && !c3.empty(),
          std::to_string(c3.size()) + " structures, " +
              std::to_string(tables.size()) + " distinct rank tables, " +
              std::to_string(isomorphic) + " isomorphic to PG(S1)"};
}

}  // namespace
}  // namespace hrush

int main() {
  using namespace hrush;
  const auto start = Clock::now();
  const std::vector<RelStructure> c3 = TernaryClassOnFour();
  Report(1, "U(3,4) lifts for arity 4 and not for arity 3", Criterion1(c3));
  Report(2, "single m-ary tuple has dimension m-1", Criterion2());
  Report(3, "axiom suites",
         RunSuites({{"submodularity", kAxiomTrials, 6},
                    {"submodularity", kAxiomTrials, 10},
                    {"matroid", kAxiomTrials, 8},
                    {"closure", kAxiomTrials, 8}},
                   kAxiomBudget));
  Report(4, "replacement suites",
         RunSuites({{"changing1", kChangingTrials, 8},
                    {"changing2", kChangingTrials, 8},
                    {"changing4", kChangingTrials, 8},
                    {"cor54", kChangingTrials, 8}},
                   0));
  Report(5, "translation suites",
         RunSuites({{"pireduce", kTranslationTrials, 0},
                    {"pad", kTranslationTrials, 0},
                    {"derive", kTranslationTrials, 0},
                    {"derive_saturate", kTranslationTrials, 0}},
                   0));
  Report(6, "localization by diagonal saturation",
         RunSuites({{"localization", kLocalizationTrials, 0}}, 0));
  Report(7, "generic chain n=3 k=3 extension check", Criterion7());
  Report(8, "<|_3 transitivity on ground size <= 3", Criterion8());
  Report(9, "no ternary class member on 4 points has PG(S1)",
         Criterion9(c3));
  std::printf("%d criteria failed, %.1f s\n", failures, Since(start));
  return failures == 0 ? 0 : 1;
}
