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

#ifndef HRUSH_PROPTEST_H_
#define HRUSH_PROPTEST_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hrush/limits.h"

namespace hrush {

struct ProptestOptions {
  int64_t trials = 1000;
  uint64_t seed = 0;
  // Largest random universe; 0 selects the suite's default.
  int max_points = 0;
  Limits limits;
};

struct ProptestReport {
  std::string suite;
  int64_t trials = 0;
  uint64_t seed = 0;
  bool pass = true;
  // Individual comparisons evaluated.
  int64_t checks = 0;
  // The lowest failing trial index.
  std::optional<int64_t> failing_trial;
  std::string failure;
  // The failing input in the workspace grammar.
  std::string counterexample;
  std::string warning;
};

// Registered suite names, sorted. "corrupt" checks a false statement and
// exists to exercise the failure path.
std::vector<std::string> ProptestSuites();

// Runs `trials` independent trials; trial i draws from TrialSeed(seed, i).
// Stops at the first failure. Throws ArgumentError for an unknown suite.
ProptestReport RunProptest(const std::string& suite,
                           const ProptestOptions& options);

}  // namespace hrush

#endif  // HRUSH_PROPTEST_H_
