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

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace cavq {

enum class ResourceClass { kTransmon, kCavityMode };
enum class EdgeKind { kTransmonTransmon, kCavityIO };
enum class TopologyKind { kHoneycomb, kOctagonal, kCavity };
enum class TransmonCoupling { kLine, kComplete };

struct Resource {
  std::size_t id = 0;
  ResourceClass cls = ResourceClass::kTransmon;
  // Valid for cavity modes only.
  std::size_t cavity = 0;
  std::size_t mode = 0;
};

struct TopologyEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  EdgeKind kind = EdgeKind::kTransmonTransmon;
};

// Parameters a topology was generated from; doubles as its JSON config.
struct TopologyConfig {
  TopologyKind kind = TopologyKind::kCavity;
  std::size_t rows = 1;  // honeycomb
  std::size_t cols = 1;
  std::size_t nx = 1;  // octagonal
  std::size_t ny = 1;
  std::size_t cavities = 2;  // cavity
  std::size_t modes = 1;
  TransmonCoupling coupling = TransmonCoupling::kLine;
  bool shared_io = false;

  bool operator==(const TopologyConfig&) const = default;
};

std::string topology_kind_name(TopologyKind k);

// Coupling graph over transmons and cavity modes. Immutable once built; all
// pairwise distances are precomputed.
//
// Numbering:
//   cavity     transmon of cavity c is resource c; mode j of cavity c is
//              resource cavities + c * modes + j.
//   honeycomb  brick-wall embedding with rows+1 horizontal lines; vertices
//              are numbered row-major by (line, x).
//   octagonal  ring (i, j) occupies ids 8 * (j * nx + i) + 0..7, listed
//              clockwise from the top-left corner.
class Topology {
 public:
  Topology(TopologyConfig config, std::vector<Resource> resources,
           std::vector<TopologyEdge> edges);

  const TopologyConfig& config() const noexcept { return config_; }
  TopologyKind kind() const noexcept { return config_.kind; }
  bool is_cavity() const noexcept { return config_.kind == TopologyKind::kCavity; }

  std::size_t num_resources() const noexcept { return resources_.size(); }
  const std::vector<Resource>& resources() const noexcept { return resources_; }
  const Resource& resource(std::size_t id) const { return resources_.at(id); }
  const std::vector<TopologyEdge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t id) const {
    return adjacency_.at(id);
  }
  std::size_t degree(std::size_t id) const { return adjacency_.at(id).size(); }

  bool adjacent(std::size_t a, std::size_t b) const;
  bool has_edge(std::size_t a, std::size_t b, EdgeKind kind) const;
  std::size_t distance(std::size_t a, std::size_t b) const;
  // Lexicographically smallest shortest path from a to b, endpoints included.
  std::vector<std::size_t> shortest_path(std::size_t a, std::size_t b) const;

  std::size_t num_transmons() const noexcept { return num_transmons_; }

  // Cavity-only helpers.
  std::size_t num_cavities() const noexcept { return config_.cavities; }
  std::size_t modes_per_cavity() const noexcept { return config_.modes; }
  std::size_t transmon_of_cavity(std::size_t c) const;
  std::size_t mode_resource(std::size_t cavity, std::size_t mode) const;

 private:
  TopologyConfig config_;
  std::vector<Resource> resources_;
  std::vector<TopologyEdge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::vector<unsigned char>> edge_kind_;  // 0 none, 1 TT, 2 IO
  std::vector<std::size_t> dist_;
  std::size_t num_transmons_ = 0;
};

Topology build_honeycomb(std::size_t rows, std::size_t cols);
Topology build_octagonal(std::size_t nx, std::size_t ny);
Topology build_cavity(std::size_t num_cavities, std::size_t modes_per_cavity,
                      TransmonCoupling coupling = TransmonCoupling::kLine,
                      bool shared_io = false);
Topology build_topology(const TopologyConfig& cfg);

}  // namespace cavq
