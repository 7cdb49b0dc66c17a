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

#ifndef HRUSH_RANDOM_H_
#define HRUSH_RANDOM_H_

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hrush/signature.h"
#include "hrush/structure.h"

namespace hrush {

// Deterministic across platforms: mt19937_64 is fully specified and the
// helpers below avoid the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  // Uniform on [lo, hi]. Requires lo <= hi.
  int Uniform(int lo, int hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(Next() % span);
  }
  // True with probability percent/100.
  bool Chance(int percent) { return Uniform(0, 99) < percent; }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[i], v[Uniform(0, i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Independent seed for trial `index` of a run seeded with `seed`.
uint64_t TrialSeed(uint64_t seed, uint64_t index);

struct RandomStructureOptions {
  Signature signature = Signature::Single(3);
  int min_points = 1;
  int max_points = 8;
  // Upper bound on tuple insertion attempts; negative means 2 * |M|.
  int max_tuples = -1;
  // Reject tuples that would leave the class.
  bool in_class = true;
  std::string prefix = "p";
};

RelStructure RandomStructure(Rng& rng, const RandomStructureOptions& options);

// A random structure on exactly the points `names` (in the class when
// options.in_class is set; the point-count fields are ignored).
RelStructure RandomStructureOn(Rng& rng, const std::vector<std::string>& names,
                               const RandomStructureOptions& options);

// Replaces the tuples of each symbol and each underlying point set by an
// equally large random choice of tuples with that same underlying set.
// Predimension is unchanged on every subset.
RelStructure ReshuffleTuples(Rng& rng, const RelStructure& m);

// A uniformly random subset of at most `max_size` points.
PointSet RandomSubset(Rng& rng, const RelStructure& m, int max_size);

}  // namespace hrush

#endif  // HRUSH_RANDOM_H_
