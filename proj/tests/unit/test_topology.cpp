// Copyright 2026 The cavq Authors
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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

#include "cavq/error.hpp"
#include "cavq/topology.hpp"

using namespace cavq;

namespace {

// Floyd-Warshall over the edge list, independent of the BFS table.
std::vector<std::vector<std::size_t>> floyd(const Topology& t) {
  const std::size_t n = t.num_resources();
  const std::size_t inf = n + 1;
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : t.edges()) d[e.a][e.b] = d[e.b][e.a] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// All shortest paths by DFS, for small graphs.
std::vector<std::vector<std::size_t>> all_shortest(const Topology& t, std::size_t a,
                                                   std::size_t b) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path{a};
  std::function<void(std::size_t)> go = [&](std::size_t u) {
    if (u == b) {
      out.push_back(path);
      return;
    }
    for (std::size_t v : t.neighbors(u))
      if (t.distance(v, b) + 1 == t.distance(u, b)) {
        path.push_back(v);
        go(v);
        path.pop_back();
      }
  };
  go(a);
  return out;
}

std::vector<Topology> samples() {
  std::vector<Topology> out;
  for (auto [r, c] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}})
    out.push_back(build_honeycomb(r, c));
  out.push_back(build_octagonal(1, 1));
  out.push_back(build_octagonal(2, 1));
  out.push_back(build_octagonal(2, 2));
  out.push_back(build_cavity(2, 4));
  out.push_back(build_cavity(3, 3, TransmonCoupling::kComplete));
  out.push_back(build_cavity(4, 2));
  out.push_back(build_cavity(2, 3, TransmonCoupling::kComplete, true));
  return out;
}

}  // namespace

TEST_CASE("single hexagon") {
  const Topology t = build_honeycomb(1, 1);
  CHECK(t.num_resources() == 6);
  CHECK(t.edges().size() == 6);
  for (std::size_t v = 0; v < 6; ++v) CHECK(t.degree(v) == 2);
}

TEST_CASE("honeycomb tilings have degrees two and three") {
  for (auto [r, c] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}, {4, 5}}) {
    const Topology t = build_honeycomb(r, c);
    std::set<std::size_t> degrees;
    for (std::size_t v = 0; v < t.num_resources(); ++v) degrees.insert(t.degree(v));
    CHECK(degrees == std::set<std::size_t>{2, 3});
    // Independent adjacency: rebuild from the edge list and compare.
    std::vector<std::set<std::size_t>> adj(t.num_resources());
    for (const auto& e : t.edges()) {
      adj[e.a].insert(e.b);
      adj[e.b].insert(e.a);
    }
    for (std::size_t v = 0; v < t.num_resources(); ++v) {
      const auto& n = t.neighbors(v);
      CHECK(std::set<std::size_t>(n.begin(), n.end()) == adj[v]);
    }
    // Hexagonal cells: E = V + faces - 1 with r*c faces.
    CHECK(t.edges().size() == t.num_resources() + static_cast<std::size_t>(r * c) - 1);
  }
}

TEST_CASE("octagonal lattice") {
  const Topology one = build_octagonal(1, 1);
  CHECK(one.num_resources() == 8);
  CHECK(one.edges().size() == 8);
  const Topology two = build_octagonal(2, 1);
  CHECK(two.num_resources() == 16);
  CHECK(two.edges().size() == 18);
}

TEST_CASE("cavity topology counts") {
  const Topology a = build_cavity(2, 4);
  CHECK(a.num_resources() == 10);
  std::size_t io = 0, tt = 0;
  for (const auto& e : a.edges()) (e.kind == EdgeKind::kCavityIO ? io : tt)++;
  CHECK(io == 8);
  CHECK(tt == 1);
  const Topology b = build_cavity(3, 2, TransmonCoupling::kComplete);
  tt = 0;
  for (const auto& e : b.edges()) tt += e.kind == EdgeKind::kTransmonTransmon;
  CHECK(tt == 3);
  CHECK(b.num_transmons() == 3);
  CHECK(a.resource(a.mode_resource(1, 2)).cavity == 1);
  CHECK(a.resource(a.mode_resource(1, 2)).mode == 2);
  CHECK(a.transmon_of_cavity(1) == 1);
}

TEST_CASE("modes of neighbouring cavities are three apart for any mode count") {
  for (std::size_t m = 1; m <= 64; ++m) {
    const Topology t = build_cavity(2, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        CHECK(t.distance(t.mode_resource(0, i), t.mode_resource(1, j)) == 3);
    if (m >= 2) CHECK(t.distance(t.mode_resource(0, 0), t.mode_resource(0, 1)) == 2);
  }
}

TEST_CASE("distance basics") {
  const Topology hex = build_honeycomb(1, 1);
  std::size_t far = 0;
  for (std::size_t v = 0; v < 6; ++v) far = std::max(far, hex.distance(0, v));
  CHECK(far == 3);
  CHECK(hex.distance(4, 4) == 0);
}

TEST_CASE("distance is a metric matching Floyd-Warshall") {
  for (const auto& t : samples()) {
    const std::size_t n = t.num_resources();
    if (n > 40) continue;
    const auto d = floyd(t);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        CHECK(t.distance(a, b) == d[a][b]);
        CHECK(t.distance(a, b) == t.distance(b, a));
        for (std::size_t c = 0; c < n; ++c)
          CHECK(t.distance(a, c) <= t.distance(a, b) + t.distance(b, c));
      }
  }
}

TEST_CASE("shortest_path is the lexicographically smallest shortest path") {
  for (const auto& t : {build_honeycomb(2, 2), build_octagonal(2, 1), build_cavity(3, 2)}) {
    for (std::size_t a = 0; a < t.num_resources(); ++a)
      for (std::size_t b = 0; b < t.num_resources(); ++b) {
        auto all = all_shortest(t, a, b);
        std::sort(all.begin(), all.end());
        CHECK(t.shortest_path(a, b) == all.front());
      }
  }
}

TEST_CASE("resource classes") {
  for (const auto& t : samples()) {
    std::size_t transmons = 0;
    for (const auto& r : t.resources()) transmons += r.cls == ResourceClass::kTransmon;
    CHECK(transmons == t.num_transmons());
    if (t.is_cavity())
      CHECK(transmons == t.num_cavities());
    else
      CHECK(transmons == t.num_resources());
  }
}

TEST_CASE("shared I/O couples both transmons to both cavities") {
  const Topology t = build_cavity(2, 2, TransmonCoupling::kComplete, true);
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t m = 0; m < 2; ++m)
      for (std::size_t tr = 0; tr < 2; ++tr)
        CHECK(t.has_edge(tr, t.mode_resource(c, m), EdgeKind::kCavityIO));
}

TEST_CASE("invalid configurations") {
  CHECK_THROWS_AS(build_cavity(1, 0), Error);
  CHECK_THROWS_AS(build_honeycomb(0, 2), Error);
  CHECK_THROWS_AS(build_octagonal(0, 1), Error);
  TopologyConfig cfg;
  cfg.kind = TopologyKind::kCavity;
  cfg.cavities = 0;
  CHECK_THROWS_AS(build_topology(cfg), Error);
}
