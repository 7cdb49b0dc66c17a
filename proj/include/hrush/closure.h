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

#ifndef HRUSH_CLOSURE_H_
#define HRUSH_CLOSURE_H_

#include <cstdint>

#include "hrush/structure.h"

namespace hrush {

// Self-sufficiency, closures and dimension inside a fixed finite structure.
//
// All of these reduce to one quantity: the minimum predimension over the
// supersets of A, and the inclusion-least superset that attains it. Because
// the predimension is submodular the minimizers are closed under
// intersection, so the least one is well defined; it is exactly the
// self-sufficient closure. The minimum is computed as a min-cut, so none of
// these functions has a size cap.

// True iff delta(A) <= delta(B') for every B' with A <= B' <= M.
bool IsSelfSufficient(const RelStructure& m, const PointSet& a);

// The least self-sufficient superset of A.
PointSet SsClosure(const RelStructure& m, const PointSet& a);

// min { delta(A') : A <= A' <= M }. Requires InClass(m); throws DomainError
// otherwise.
int64_t Dimension(const RelStructure& m, const PointSet& a);

// { c : Dimension(A + c) == Dimension(A) }.
PointSet DClosure(const RelStructure& m, const PointSet& a);

// Dimension(X u Z) - Dimension(Z).
int64_t RelDim(const RelStructure& m, const PointSet& x, const PointSet& z);

}  // namespace hrush

#endif  // HRUSH_CLOSURE_H_
