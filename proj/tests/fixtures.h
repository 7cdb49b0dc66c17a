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

#ifndef HRUSH_TESTS_FIXTURES_H_
#define HRUSH_TESTS_FIXTURES_H_

#include <string>
#include <vector>

#include "hrush/structure.h"

namespace hrush::testing {

// Four points carrying one 4-ary tuple.
inline RelStructure S1() {
  return StructureBuilder(Signature::Single(4))
      .AddPoints(std::vector<std::string>{"a", "b", "c", "d"})
      .AddTuple("R", {"a", "b", "c", "d"})
      .Build();
}

// Three points, three ternary tuples; delta of the whole set is 0.
inline RelStructure S2() {
  return StructureBuilder(Signature::Single(3))
      .AddPoints(std::vector<std::string>{"a", "b", "c"})
      .AddTuple("R", {"a", "b", "c"})
      .AddTuple("R", {"a", "c", "b"})
      .AddTuple("R", {"b", "a", "c"})
      .Build();
}

// m points with one m-ary tuple.
inline RelStructure SingleTuple(int m) {
  StructureBuilder b(Signature::Single(m));
  std::vector<std::string> names;
  for (int i = 0; i < m; ++i) names.push_back("p" + std::to_string(i));
  b.AddPoints(names).AddTuple("R", names);
  return b.Build();
}

}  // namespace hrush::testing

#endif  // HRUSH_TESTS_FIXTURES_H_
