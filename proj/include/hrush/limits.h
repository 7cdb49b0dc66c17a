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

#ifndef HRUSH_LIMITS_H_
#define HRUSH_LIMITS_H_

namespace hrush {

// Caps on the exhaustive searches. Every operation that enumerates subsets
// or lifts checks the relevant cap up front and throws SizeLimitError.
struct Limits {
  // Largest universe for which full rank tables / subset enumeration run.
  int universe_cap = 20;
  // Ground-set and arity caps for lift search in the pregeometry class.
  int lift_ground_cap = 5;
  int lift_arity_cap = 5;
  // Largest |B| accepted by the extension catalog.
  int catalog_cap = 5;
};

// Dense tables are indexed by 32-bit masks and held in memory; this is the
// ceiling no configuration may exceed.
inline constexpr int kHardUniverseCap = 26;

}  // namespace hrush

#endif  // HRUSH_LIMITS_H_
