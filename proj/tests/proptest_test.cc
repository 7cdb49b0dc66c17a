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

#include <gtest/gtest.h>

#include "hrush/core.h"
#include "hrush/error.h"
#include "hrush/workspace.h"

namespace hrush {
namespace {

TEST(ProptestTest, EverySuitePasses) {
  for (const std::string& suite : ProptestSuites()) {
    if (suite == "corrupt") continue;
    ProptestReport r = RunProptest(suite, {.trials = 150, .seed = 1});
    EXPECT_TRUE(r.pass) << suite << ": " << r.failure << "\n"
                        << r.counterexample;
    EXPECT_GT(r.checks, 0) << suite;
  }
}

TEST(ProptestTest, ExhaustiveSubmodularityOnSmallUniverses) {
  ProptestReport r =
      RunProptest("submodularity", {.trials = 300, .seed = 2, .max_points = 6});
  EXPECT_TRUE(r.pass);
}

TEST(ProptestTest, ZeroTrialsIsVacuous) {
  ProptestReport r = RunProptest("changing2", {.trials = 0});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.checks, 0);
  EXPECT_FALSE(r.warning.empty());
}

TEST(ProptestTest, CorruptSuiteFailsAtLowestTrialWithReproducer) {
  ProptestReport r = RunProptest("corrupt", {.trials = 100, .seed = 9});
  ASSERT_FALSE(r.pass);
  ASSERT_TRUE(r.failing_trial.has_value());
  // Every earlier trial passes on its own.
  ProptestReport before =
      RunProptest("corrupt", {.trials = *r.failing_trial, .seed = 9});
  EXPECT_TRUE(before.pass);
  Workspace w = Parse(r.counterexample);
  const RelStructure& m = w.GetStructure("M");
  EXPECT_NE(Predim(m, FullSet(m)), m.size());
}

TEST(ProptestTest, Deterministic) {
  ProptestOptions o{.trials = 50, .seed = 3};
  ProptestReport a = RunProptest("corrupt", o);
  ProptestReport b = RunProptest("corrupt", o);
  EXPECT_EQ(a.failing_trial, b.failing_trial);
  EXPECT_EQ(a.counterexample, b.counterexample);
  EXPECT_EQ(RunProptest("localization", o).checks,
            RunProptest("localization", o).checks);
}

TEST(ProptestTest, UnknownSuite) {
  EXPECT_THROW(RunProptest("nope", {}), ArgumentError);
  EXPECT_THROW(RunProptest("pad", {.trials = -1}), ArgumentError);
}

}  // namespace
}  // namespace hrush
