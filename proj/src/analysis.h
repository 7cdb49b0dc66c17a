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

#ifndef HRUSH_SRC_ANALYSIS_H_
#define HRUSH_SRC_ANALYSIS_H_

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hrush/structure.h"

namespace hrush::internal {

struct Minimizer {
  int64_t value = 0;
  PointSet least;
};

// Project-selection network of one tuple-connected component, kept at a
// maximum flow for A = {}. Vertex 0 is the source, 1 the sink, then one
// vertex per tuple and one per point. Arcs: source -> tuple (weight),
// tuple -> point (unbounded), point -> sink (1).
struct ComponentNetwork {
  std::vector<int> first;  // CSR offsets, one past the end for the last
  std::vector<int> to;
  std::vector<int> rev;
  std::vector<int64_t> cap;  // residual capacities
  std::vector<int> points;   // global indices, sorted
  std::vector<int> sink_arc;  // per local point
  int num_tuples = 0;
  int64_t total_weight = 0;
  int64_t flow = 0;
  // Source arcs with residual capacity under the base flow.
  std::vector<int> open_source_arcs;
  // Query scratch: a vertex is seen when its stamp equals `epoch`.
  std::vector<uint32_t> stamp;
  std::vector<int> parent;
  uint32_t epoch = 0;

  int PointVertex(int local) const { return 2 + num_tuples + local; }
  int vertices() const { return static_cast<int>(first.size()) - 1; }
};

struct AnalysisCache {
  std::once_flag components_once;
  // Connected components of the hypergraph whose edges are the tuples.
  std::vector<int> component_of;
  std::vector<std::vector<int>> components;
  // min over subsets T of the component of delta(T); zero iff the component
  // is in the class.
  std::vector<int64_t> deficit;
  // The least subset attaining `deficit`.
  std::vector<std::vector<int>> deficit_witness;
  bool in_class = true;
  int64_t total_deficit = 0;
  PointSet witness_union;
  // Null for components without tuples.
  std::vector<std::unique_ptr<ComponentNetwork>> networks;

  // Guards the networks, which queries edit and restore, and the memo.
  std::mutex mutex;
  // Per component: (value, points outside A chosen), keyed by the component
  // and the points of A in it.
  std::unordered_map<std::string, std::pair<int64_t, std::vector<int>>> memo;
};

const AnalysisCache& Components(const RelStructure& m);

Minimizer MinPredimSuperset(const RelStructure& m, const PointSet& a);

// IsSelfSufficient for a short list of point indices, without whole-universe
// bitsets.
bool IsSelfSufficientPoints(const RelStructure& m, std::vector<int> points);

}  // namespace hrush::internal

#endif  // HRUSH_SRC_ANALYSIS_H_
