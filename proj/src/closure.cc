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

#include "hrush/closure.h"

#include "analysis.h"
#include "hrush/core.h"
#include "hrush/error.h"

namespace hrush {
namespace {

void RequireInClass(const RelStructure& m) {
  if (!InClass(m)) {
    throw DomainError("dimension is only defined for structures in the class");
  }
}

}  // namespace

bool IsSelfSufficient(const RelStructure& m, const PointSet& a) {
  CheckSubset(m, a);
  return internal::MinPredimSuperset(m, a).value == Predim(m, a);
}

PointSet SsClosure(const RelStructure& m, const PointSet& a) {
  CheckSubset(m, a);
  return internal::MinPredimSuperset(m, a).least;
}

int64_t Dimension(const RelStructure& m, const PointSet& a) {
  CheckSubset(m, a);
  RequireInClass(m);
  return internal::MinPredimSuperset(m, a).value;
}

PointSet DClosure(const RelStructure& m, const PointSet& a) {
  CheckSubset(m, a);
  RequireInClass(m);
  internal::Minimizer base = internal::MinPredimSuperset(m, a);
  PointSet closure = base.least;
  PointSet probe = a;
  for (int c = 0; c < m.size(); ++c) {
    if (closure.test(c)) continue;
    probe.set(c);
    if (internal::MinPredimSuperset(m, probe).value == base.value) {
      closure.set(c);
    }
    probe.reset(c);
  }
  return closure;
}

int64_t RelDim(const RelStructure& m, const PointSet& x, const PointSet& z) {
  CheckSubset(m, x);
  CheckSubset(m, z);
  return Dimension(m, x | z) - Dimension(m, z);
}

}  // namespace hrush
