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

#ifndef HRUSH_CORE_H_
#define HRUSH_CORE_H_

#include <cstdint>
#include <vector>

#include "hrush/limits.h"
#include "hrush/structure.h"

namespace hrush {

// |A| minus the weighted number of tuples lying entirely inside A. May be
// negative.
int64_t Predim(const RelStructure& m, const PointSet& a);

// The substructure on A: universe A and exactly the tuples inside A.
RelStructure Induced(const RelStructure& m, const PointSet& a);

// True iff every subset of the universe has non-negative predimension.
// Runs in polynomial time (one min-cut per tuple-connected component).
bool InClass(const RelStructure& m);

// Predimension of every subset, indexed by bitmask over the canonical point
// order. Throws SizeLimitError above `limits.universe_cap`.
std::vector<int64_t> PredimTable(const RelStructure& m,
                                 const Limits& limits = {});

// Bitmask <-> PointSet conversions for universes of at most 64 points.
uint64_t ToMask(const PointSet& s);
PointSet FromMask(const RelStructure& m, uint64_t mask);

void CheckUniverseCap(int size, const Limits& limits);

}  // namespace hrush

#endif  // HRUSH_CORE_H_
