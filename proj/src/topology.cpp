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

#include "cavq/topology.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <queue>

#include "cavq/error.hpp"

namespace cavq {

namespace {

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

}  // namespace

std::string topology_kind_name(TopologyKind k) {
  switch (k) {
    case TopologyKind::kHoneycomb: return "honeycomb";
    case TopologyKind::kOctagonal: return "octagonal";
    case TopologyKind::kCavity: return "cavity";
  }
  return "unknown";
}

Topology::Topology(TopologyConfig config, std::vector<Resource> resources,
                   std::vector<TopologyEdge> edges)
    : config_(config), resources_(std::move(resources)), edges_(std::move(edges)) {
  const std::size_t n = resources_.size();
  require(n > 0, "topology has no resources");
  for (std::size_t i = 0; i < n; ++i) {
    require(resources_[i].id == i, "resource ids must be dense");
    if (resources_[i].cls == ResourceClass::kTransmon) ++num_transmons_;
  }
  adjacency_.assign(n, {});
  edge_kind_.assign(n, std::vector<unsigned char>(n, 0));
  for (const auto& e : edges_) {
    require(e.a < n && e.b < n && e.a != e.b, "invalid topology edge");
    require(edge_kind_[e.a][e.b] == 0, "duplicate topology edge");
    const bool ta = resources_[e.a].cls == ResourceClass::kTransmon;
    const bool tb = resources_[e.b].cls == ResourceClass::kTransmon;
    if (e.kind == EdgeKind::kTransmonTransmon)
      require(ta && tb, "transmon edge touches a cavity mode");
    else
      require(ta != tb, "cavity I/O edge must join a mode and a transmon");
    const unsigned char tag = e.kind == EdgeKind::kTransmonTransmon ? 1 : 2;
    edge_kind_[e.a][e.b] = edge_kind_[e.b][e.a] = tag;
    adjacency_[e.a].push_back(e.b);
    adjacency_[e.b].push_back(e.a);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

  dist_.assign(n * n, kUnreachable);
  for (std::size_t s = 0; s < n; ++s) {
    std::size_t* row = &dist_[s * n];
    row[s] = 0;
    std::queue<std::size_t> frontier;
    frontier.push(s);
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      for (std::size_t v : adjacency_[u])
        if (row[v] == kUnreachable) {
          row[v] = row[u] + 1;
          frontier.push(v);
        }
    }
    for (std::size_t v = 0; v < n; ++v)
      if (row[v] == kUnreachable)
        fail(ErrorCode::kInvalidArgument, "topology is not connected");
  }
}

bool Topology::adjacent(std::size_t a, std::size_t b) const {
  return a < resources_.size() && b < resources_.size() && edge_kind_[a][b] != 0;
}

bool Topology::has_edge(std::size_t a, std::size_t b, EdgeKind kind) const {
  if (!adjacent(a, b)) return false;
  return edge_kind_[a][b] == (kind == EdgeKind::kTransmonTransmon ? 1 : 2);
}

std::size_t Topology::distance(std::size_t a, std::size_t b) const {
  require(a < resources_.size() && b < resources_.size(),
          "resource id out of range");
  return dist_[a * resources_.size() + b];
}

std::vector<std::size_t> Topology::shortest_path(std::size_t a,
                                                 std::size_t b) const {
  std::size_t remaining = distance(a, b);
  std::vector<std::size_t> path{a};
  std::size_t cur = a;
  while (remaining > 0) {
    for (std::size_t v : adjacency_[cur])
      if (distance(v, b) + 1 == remaining) {
        cur = v;
        break;
      }
    path.push_back(cur);
    --remaining;
  }
  return path;
}

std::size_t Topology::transmon_of_cavity(std::size_t c) const {
  require(is_cavity(), "not a cavity topology");
  require(c < config_.cavities, "cavity id out of range");
  return c;
}

std::size_t Topology::mode_resource(std::size_t cavity, std::size_t mode) const {
  require(is_cavity(), "not a cavity topology");
  require(cavity < config_.cavities && mode < config_.modes,
          "cavity mode out of range");
  return config_.cavities + cavity * config_.modes + mode;
}

Topology build_honeycomb(std::size_t rows, std::size_t cols) {
  require(rows >= 1 && cols >= 1, "honeycomb needs rows, cols >= 1");
  const std::size_t R = rows, C = cols;
  auto x_range = [&](std::size_t y) -> std::pair<std::size_t, std::size_t> {
    if (y == 0) return {0, 2 * C};
    if (y < R) return {0, 2 * C + 1};
    const std::size_t s = (R - 1) % 2;
    return {s, 2 * C + s};
  };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> id;
  std::vector<Resource> res;
  for (std::size_t y = 0; y <= R; ++y) {
    auto [lo, hi] = x_range(y);
    for (std::size_t x = lo; x <= hi; ++x) {
      id[{y, x}] = res.size();
      res.push_back({res.size(), ResourceClass::kTransmon, 0, 0});
    }
  }
  std::vector<TopologyEdge> edges;
  for (std::size_t y = 0; y <= R; ++y) {
    auto [lo, hi] = x_range(y);
    for (std::size_t x = lo; x < hi; ++x)
      edges.push_back({id[{y, x}], id[{y, x + 1}], EdgeKind::kTransmonTransmon});
  }
  for (std::size_t y = 0; y < R; ++y) {
    const std::size_t lo = y % 2, hi = 2 * C + y % 2;
    for (std::size_t x = lo; x <= hi; ++x)
      if ((x + y) % 2 == 0)
        edges.push_back({id[{y, x}], id[{y + 1, x}], EdgeKind::kTransmonTransmon});
  }
  TopologyConfig cfg;
  cfg.kind = TopologyKind::kHoneycomb;
  cfg.rows = rows;
  cfg.cols = cols;
  return Topology(cfg, std::move(res), std::move(edges));
}

Topology build_octagonal(std::size_t nx, std::size_t ny) {
  require(nx >= 1 && ny >= 1, "octagonal grid needs nx, ny >= 1");
  const std::size_t rings = nx * ny;
  std::vector<Resource> res;
  for (std::size_t i = 0; i < 8 * rings; ++i)
    res.push_back({i, ResourceClass::kTransmon, 0, 0});
  auto base = [&](std::size_t i, std::size_t j) { return 8 * (j * nx + i); };
  std::vector<TopologyEdge> edges;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t k = 0; k < 8; ++k)
        edges.push_back({base(i, j) + k, base(i, j) + (k + 1) % 8,
                         EdgeKind::kTransmonTransmon});
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const std::size_t a = base(i, j), b = base(i + 1, j);
      edges.push_back({a + 2, b + 7, EdgeKind::kTransmonTransmon});
      edges.push_back({a + 3, b + 6, EdgeKind::kTransmonTransmon});
    }
  for (std::size_t j = 0; j + 1 < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t a = base(i, j), b = base(i, j + 1);
      edges.push_back({a + 5, b + 0, EdgeKind::kTransmonTransmon});
      edges.push_back({a + 4, b + 1, EdgeKind::kTransmonTransmon});
    }
  TopologyConfig cfg;
  cfg.kind = TopologyKind::kOctagonal;
  cfg.nx = nx;
  cfg.ny = ny;
  return Topology(cfg, std::move(res), std::move(edges));
}

Topology build_cavity(std::size_t num_cavities, std::size_t modes_per_cavity,
                      TransmonCoupling coupling, bool shared_io) {
  require(num_cavities >= 2, "cavity topology needs at least 2 cavities");
  require(modes_per_cavity >= 1, "cavity topology needs at least 1 mode");
  const std::size_t k = num_cavities, m = modes_per_cavity;
  std::vector<Resource> res;
  for (std::size_t c = 0; c < k; ++c)
    res.push_back({c, ResourceClass::kTransmon, c, 0});
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < m; ++j)
      res.push_back({res.size(), ResourceClass::kCavityMode, c, j});
  std::vector<TopologyEdge> edges;
  if (coupling == TransmonCoupling::kLine) {
    for (std::size_t c = 0; c + 1 < k; ++c)
      edges.push_back({c, c + 1, EdgeKind::kTransmonTransmon});
  } else {
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        edges.push_back({a, b, EdgeKind::kTransmonTransmon});
  }
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t j = 0; j < m; ++j)
      edges.push_back({c, k + c * m + j, EdgeKind::kCavityIO});
  if (shared_io)
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t c = 0; c < k; ++c)
        if (c != t)
          for (std::size_t j = 0; j < m; ++j)
            edges.push_back({t, k + c * m + j, EdgeKind::kCavityIO});
  TopologyConfig cfg;
  cfg.kind = TopologyKind::kCavity;
  cfg.cavities = k;
  cfg.modes = m;
  cfg.coupling = coupling;
  cfg.shared_io = shared_io;
  return Topology(cfg, std::move(res), std::move(edges));
}

Topology build_topology(const TopologyConfig& cfg) {
  switch (cfg.kind) {
    case TopologyKind::kHoneycomb: return build_honeycomb(cfg.rows, cfg.cols);
    case TopologyKind::kOctagonal: return build_octagonal(cfg.nx, cfg.ny);
    case TopologyKind::kCavity:
      return build_cavity(cfg.cavities, cfg.modes, cfg.coupling, cfg.shared_io);
  }
  fail(ErrorCode::kInvalidArgument, "unknown topology kind");
}

}  // namespace cavq
