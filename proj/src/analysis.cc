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

#include "analysis.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <utility>

namespace hrush::internal {
namespace {

constexpr size_t kMemoCapacity = 1 << 16;
constexpr int kSource = 0;
constexpr int kSink = 1;

std::unique_ptr<ComponentNetwork> BuildNetwork(const RelStructure& m,
                                               const std::vector<int>& comp) {
  auto net = std::make_unique<ComponentNetwork>();
  net->points = comp;
  std::sort(net->points.begin(), net->points.end());
  auto local = [&](int p) {
    return static_cast<int>(
        std::lower_bound(net->points.begin(), net->points.end(), p) -
        net->points.begin());
  };
  // Tuples with their weights and distinct points, each counted at its
  // least point.
  std::vector<std::pair<int64_t, std::vector<int>>> tuples;
  for (int p : net->points) {
    for (const TupleRef& ref : m.incident(p)) {
      const Tuple& t = m.relation(ref.symbol)[ref.index];
      if (*std::min_element(t.begin(), t.end()) != p) continue;
      std::vector<int> pts(t.begin(), t.end());
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      tuples.emplace_back(m.signature().symbol(ref.symbol).weight,
                          std::move(pts));
    }
  }
  net->num_tuples = static_cast<int>(tuples.size());
  for (const auto& [w, pts] : tuples) net->total_weight += w;
  const int64_t unbounded = net->total_weight + 1;
  const int vertices = 2 + net->num_tuples + static_cast<int>(comp.size());

  struct Arc {
    int from, to;
    int64_t cap;
  };
  std::vector<Arc> arcs;
  for (int j = 0; j < net->num_tuples; ++j) {
    arcs.push_back({kSource, 2 + j, tuples[j].first});
    for (int p : tuples[j].second) {
      arcs.push_back({2 + j, net->PointVertex(local(p)), unbounded});
    }
  }
  for (size_t i = 0; i < comp.size(); ++i) {
    arcs.push_back({net->PointVertex(static_cast<int>(i)), kSink, 1});
  }
  std::vector<int> degree(vertices, 0);
  for (const Arc& a : arcs) {
    ++degree[a.from];
    ++degree[a.to];
  }
  net->first.assign(vertices + 1, 0);
  for (int v = 0; v < vertices; ++v) {
    net->first[v + 1] = net->first[v] + degree[v];
  }
  const int slots = net->first[vertices];
  net->to.resize(slots);
  net->rev.resize(slots);
  net->cap.resize(slots);
  net->sink_arc.resize(comp.size());
  std::vector<int> fill(net->first.begin(), net->first.end() - 1);
  for (const Arc& a : arcs) {
    const int f = fill[a.from]++;
    const int b = fill[a.to]++;
    net->to[f] = a.to;
    net->cap[f] = a.cap;
    net->rev[f] = b;
    net->to[b] = a.from;
    net->cap[b] = 0;
    net->rev[b] = f;
    if (a.to == kSink) {
      net->sink_arc[a.from - net->PointVertex(0)] = f;
    }
  }
  return net;
}

// Dinic's algorithm from the current residual state; returns the added flow.
int64_t Saturate(ComponentNetwork& net) {
  const int n = net.vertices();
  std::vector<int> level(n), iter(n), path;
  int64_t added = 0;
  while (true) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[kSource] = 0;
    q.push(kSource);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int e = net.first[v]; e < net.first[v + 1]; ++e) {
        if (net.cap[e] > 0 && level[net.to[e]] < 0) {
          level[net.to[e]] = level[v] + 1;
          q.push(net.to[e]);
        }
      }
    }
    if (level[kSink] < 0) return added;
    for (int v = 0; v < n; ++v) iter[v] = net.first[v];
    while (true) {
      path.clear();
      int v = kSource;
      bool stuck = false;
      while (v != kSink) {
        int& e = iter[v];
        while (e < net.first[v + 1] &&
               !(net.cap[e] > 0 && level[net.to[e]] == level[v] + 1)) {
          ++e;
        }
        if (e == net.first[v + 1]) {
          if (v == kSource) {
            stuck = true;
            break;
          }
          level[v] = -1;
          const int back = path.back();
          path.pop_back();
          v = net.to[net.rev[back]];
          ++iter[v];
          continue;
        }
        path.push_back(e);
        v = net.to[e];
      }
      if (stuck) break;
      int64_t bottleneck = std::numeric_limits<int64_t>::max();
      for (int e : path) bottleneck = std::min(bottleneck, net.cap[e]);
      for (int e : path) {
        net.cap[e] -= bottleneck;
        net.cap[net.rev[e]] += bottleneck;
      }
      added += bottleneck;
    }
  }
}

std::vector<bool> Reachable(const ComponentNetwork& net) {
  std::vector<bool> seen(net.vertices(), false);
  std::vector<int> stack = {kSource};
  seen[kSource] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int e = net.first[v]; e < net.first[v + 1]; ++e) {
      if (net.cap[e] > 0 && !seen[net.to[e]]) {
        seen[net.to[e]] = true;
        stack.push_back(net.to[e]);
      }
    }
  }
  return seen;
}

// Minimum of delta over T with A <= T <= component, where `a_local` lists
// the local indices of the points of A. The network is edited in place and
// restored before returning.
std::pair<int64_t, std::vector<int>> Solve(ComponentNetwork& net,
                                           const std::vector<int>& a_local) {
  std::vector<std::pair<int, int64_t>> saved;
  auto set = [&](int e, int64_t value) {
    saved.emplace_back(e, net.cap[e]);
    net.cap[e] = value;
  };
  std::vector<int> open = net.open_source_arcs;
  const int64_t base_flow = net.flow;
  int64_t flow = net.flow;
  // Points of A cost nothing: drop their sink arcs, first cancelling the
  // unit of flow a saturated one carries.
  for (int x : a_local) {
    const int s = net.sink_arc[x];
    const int v = net.PointVertex(x);
    if (net.cap[s] == 0 && net.cap[net.rev[s]] > 0) {
      int into = -1;
      for (int e = net.first[v]; e < net.first[v + 1]; ++e) {
        if (net.to[e] != kSink && net.cap[e] > 0) {
          into = e;  // reverse of a tuple -> point arc carrying flow
          break;
        }
      }
      const int tuple = net.to[into];
      int from_source = -1;
      for (int e = net.first[tuple]; e < net.first[tuple + 1]; ++e) {
        if (net.to[e] == kSource && net.cap[e] > 0) {
          from_source = e;
          break;
        }
      }
      open.push_back(net.rev[from_source]);
      set(from_source, net.cap[from_source] - 1);
      set(net.rev[from_source], net.cap[net.rev[from_source]] + 1);
      set(into, net.cap[into] - 1);
      set(net.rev[into], net.cap[net.rev[into]] + 1);
      --flow;
    }
    set(s, 0);
    set(net.rev[s], 0);
  }
  // Reaugment with shortest paths; at most |A| units can be restored. Only
  // the explored region is touched, so a query costs little on a large
  // component.
  std::vector<int> visited;
  std::vector<int> queue;
  auto seen = [&](int v) { return net.stamp[v] == net.epoch; };
  while (true) {
    if (++net.epoch == 0) {
      std::fill(net.stamp.begin(), net.stamp.end(), 0);
      net.epoch = 1;
    }
    visited.clear();
    queue.clear();
    auto visit = [&](int e) {
      const int w = net.to[e];
      if (net.cap[e] > 0 && !seen(w)) {
        net.stamp[w] = net.epoch;
        net.parent[w] = e;
        visited.push_back(w);
        queue.push_back(w);
      }
    };
    net.stamp[kSource] = net.epoch;
    for (int e : open) visit(e);
    for (size_t head = 0; head < queue.size() && !seen(kSink); ++head) {
      const int v = queue[head];
      for (int e = net.first[v]; e < net.first[v + 1]; ++e) visit(e);
    }
    if (!seen(kSink)) break;
    int64_t bottleneck = std::numeric_limits<int64_t>::max();
    for (int v = kSink; v != kSource; v = net.to[net.rev[net.parent[v]]]) {
      bottleneck = std::min(bottleneck, net.cap[net.parent[v]]);
    }
    for (int v = kSink; v != kSource; v = net.to[net.rev[net.parent[v]]]) {
      const int e = net.parent[v];
      set(e, net.cap[e] - bottleneck);
      set(net.rev[e], net.cap[net.rev[e]] + bottleneck);
    }
    flow += bottleneck;
  }
  // `visited` now lists the source side of the least minimum cut.
  std::vector<int> chosen;
  const int first_point = net.PointVertex(0);
  for (int v : visited) {
    const int x = v - first_point;
    if (x >= 0 && std::find(a_local.begin(), a_local.end(), x) ==
                      a_local.end()) {
      chosen.push_back(net.points[x]);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  const int64_t value = static_cast<int64_t>(a_local.size()) -
                        (net.total_weight - flow);
  for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
    net.cap[it->first] = it->second;
  }
  net.flow = base_flow;
  return {value, std::move(chosen)};
}

std::string MemoKey(int component, const std::vector<int>& points) {
  std::string key(reinterpret_cast<const char*>(&component), sizeof(int));
  key.append(reinterpret_cast<const char*>(points.data()),
             points.size() * sizeof(int));
  return key;
}

void ComputeComponents(const RelStructure& m, AnalysisCache& cache) {
  const int n = m.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int s = 0; s < m.signature().size(); ++s) {
    for (const Tuple& t : m.relation(s)) {
      for (int q : t) parent[find(q)] = find(t.front());
    }
  }
  cache.component_of.assign(n, -1);
  for (int p = 0; p < n; ++p) {
    int root = find(p);
    if (cache.component_of[root] < 0) {
      cache.component_of[root] = static_cast<int>(cache.components.size());
      cache.components.emplace_back();
    }
    cache.component_of[p] = cache.component_of[root];
    cache.components[cache.component_of[p]].push_back(p);
  }
  cache.witness_union = PointSet(n);
  for (const std::vector<int>& comp : cache.components) {
    bool has_tuples = false;
    for (int p : comp) has_tuples = has_tuples || !m.incident(p).empty();
    int64_t deficit = 0;
    std::vector<int> witness;
    std::unique_ptr<ComponentNetwork> net;
    if (has_tuples) {
      net = BuildNetwork(m, comp);
      net->flow = Saturate(*net);
      deficit = net->flow - net->total_weight;
      for (int e = net->first[kSource]; e < net->first[kSource + 1]; ++e) {
        if (net->cap[e] > 0) net->open_source_arcs.push_back(e);
      }
      net->stamp.assign(net->vertices(), 0);
      net->parent.assign(net->vertices(), -1);
      std::vector<bool> side = Reachable(*net);
      for (size_t i = 0; i < net->points.size(); ++i) {
        if (side[net->PointVertex(static_cast<int>(i))]) {
          witness.push_back(net->points[i]);
        }
      }
    }
    if (deficit < 0) cache.in_class = false;
    cache.total_deficit += deficit;
    for (int p : witness) cache.witness_union.set(p);
    cache.deficit.push_back(deficit);
    cache.deficit_witness.push_back(std::move(witness));
    cache.networks.push_back(std::move(net));
  }
}

}  // namespace

const AnalysisCache& Components(const RelStructure& m) {
  AnalysisCache& cache = m.cache();
  std::call_once(cache.components_once,
                 [&] { ComputeComponents(m, cache); });
  return cache;
}

namespace {

// Solves for the points `local` (global indices) of A in component c. The
// caller holds the cache mutex; the result stays valid until the next call.
const std::pair<int64_t, std::vector<int>>& SolveCached(
    AnalysisCache& cache, int c, const std::vector<int>& local) {
  ComponentNetwork* net = cache.networks[c].get();
  std::string key = MemoKey(c, local);
  auto it = cache.memo.find(key);
  if (it == cache.memo.end()) {
    std::vector<int> a_local;
    for (int p : local) {
      a_local.push_back(static_cast<int>(
          std::lower_bound(net->points.begin(), net->points.end(), p) -
          net->points.begin()));
    }
    if (cache.memo.size() >= kMemoCapacity) cache.memo.clear();
    it = cache.memo.emplace(std::move(key), Solve(*net, a_local)).first;
  }
  return it->second;
}

}  // namespace

Minimizer MinPredimSuperset(const RelStructure& m, const PointSet& a) {
  Components(m);
  AnalysisCache& cache = m.cache();
  // Tuples never cross components, so the minimum splits into one
  // independent problem per component.
  std::vector<std::pair<int, int>> by_component;
  for (auto p = a.find_first(); p != PointSet::npos; p = a.find_next(p)) {
    by_component.emplace_back(cache.component_of[p], static_cast<int>(p));
  }
  std::sort(by_component.begin(), by_component.end());
  Minimizer result;
  result.value = cache.total_deficit;
  result.least = cache.witness_union | a;
  size_t i = 0;
  while (i < by_component.size()) {
    const int c = by_component[i].first;
    std::vector<int> local;
    for (; i < by_component.size() && by_component[i].first == c; ++i) {
      local.push_back(by_component[i].second);
    }
    result.value -= cache.deficit[c];
    for (int p : cache.deficit_witness[c]) {
      if (!a.test(p)) result.least.reset(p);
    }
    if (cache.networks[c] == nullptr) {
      result.value += static_cast<int64_t>(local.size());
      continue;
    }
    std::lock_guard<std::mutex> lock(cache.mutex);
    const auto& solved = SolveCached(cache, c, local);
    result.value += solved.first;
    for (int p : solved.second) result.least.set(p);
  }
  return result;
}

bool IsSelfSufficientPoints(const RelStructure& m, std::vector<int> points) {
  Components(m);
  AnalysisCache& cache = m.cache();
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  int64_t predim = static_cast<int64_t>(points.size());
  std::vector<std::pair<int, int>> by_component;
  for (int p : points) {
    by_component.emplace_back(cache.component_of[p], p);
    for (const TupleRef& ref : m.incident(p)) {
      const Tuple& t = m.relation(ref.symbol)[ref.index];
      if (*std::min_element(t.begin(), t.end()) != p) continue;
      bool inside = true;
      for (int q : t) {
        inside = inside && std::binary_search(points.begin(), points.end(), q);
      }
      if (inside) predim -= m.signature().symbol(ref.symbol).weight;
    }
  }
  std::sort(by_component.begin(), by_component.end());
  int64_t value = cache.total_deficit;
  size_t i = 0;
  while (i < by_component.size()) {
    const int c = by_component[i].first;
    std::vector<int> local;
    for (; i < by_component.size() && by_component[i].first == c; ++i) {
      local.push_back(by_component[i].second);
    }
    value -= cache.deficit[c];
    if (cache.networks[c] == nullptr) {
      value += static_cast<int64_t>(local.size());
      continue;
    }
    std::lock_guard<std::mutex> lock(cache.mutex);
    value += SolveCached(cache, c, local).first;
  }
  return value == predim;
}

}  // namespace hrush::internal
