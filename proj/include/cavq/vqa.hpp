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
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cavq/densim.hpp"
#include "cavq/partition.hpp"
#include "cavq/pauli.hpp"
#include "cavq/schedule.hpp"
#include "cavq/topology.hpp"
#include "cavq/transpile.hpp"

namespace cavq {

struct SpsaConfig {
  std::size_t iterations = 500;
  double a = 0.2;
  double c = 0.1;
  double big_a = 50.0;
  double alpha = 0.602;
  double gamma = 0.101;
  std::uint64_t seed = 0;

  void validate() const;
};

using Objective = std::function<double(const std::vector<double>&)>;

struct SpsaResult {
  std::vector<double> best_params;
  double best_value = 0.0;
  // Best value seen after each iteration.
  std::vector<double> history;
  std::vector<double> final_params;
  std::size_t evaluations = 0;
};

// Two objective calls per iteration, at theta +/- c_k Delta with Delta drawn
// from {-1, +1}^dim. a_k = a / (A + k + 1)^alpha, c_k = c / (k + 1)^gamma.
SpsaResult spsa_minimize(const Objective& f, std::vector<double> initial,
                         const SpsaConfig& cfg);

struct VqaOptions {
  NoiseParams noise;
  GateTimes times;
  SpsaConfig spsa;
  // Multinomial sampling of each term's expectation when nonzero.
  std::uint64_t shots = 0;
  std::uint64_t partition_seed = 0;
  // Starting point; drawn from the SPSA seed when empty.
  std::vector<double> initial_params;
};

struct VqaResult {
  double best_cost = 0.0;
  std::vector<double> cost_history;
  std::vector<double> best_params;
  RoutingMetrics metrics;
  Nanos makespan = 0;
  std::optional<double> exact_minimum;
  std::size_t evaluations = 0;
};

// Noisy expectation of a parametrised ansatz compiled for one topology.
// Compilation is structural, so the partition (cavity) or layout (lattice)
// is fixed at construction and reused for every parameter vector.
class VqaObjective {
 public:
  enum class Ansatz { kQaoa, kHardwareEfficient };

  static VqaObjective qaoa(const ProblemGraph& g, std::size_t layers,
                           const TopologyConfig& topo, const VqaOptions& opts);
  static VqaObjective hardware_efficient(const Hamiltonian& h,
                                         std::size_t layers,
                                         const TopologyConfig& topo,
                                         const VqaOptions& opts);

  std::size_t dimension() const noexcept;
  const Hamiltonian& hamiltonian() const noexcept { return h_; }
  const Topology& topology() const noexcept { return topo_; }

  LogicalCircuit logical_circuit(const std::vector<double>& params) const;
  // Transpiled, not yet lowered.
  PhysicalCircuit physical_circuit(const std::vector<double>& params) const;
  double operator()(const std::vector<double>& params) const;
  double evaluate(const std::vector<double>& params,
                  std::uint64_t shot_seed) const;

 private:
  VqaObjective(Ansatz a, Hamiltonian h, std::size_t layers, Topology topo,
               VqaOptions opts);

  Ansatz ansatz_;
  Hamiltonian h_;
  ProblemGraph graph_;
  std::size_t layers_ = 0;
  Topology topo_;
  VqaOptions opts_;
  Groupings groups_;
  std::vector<std::size_t> layout_;
};

std::vector<double> default_initial_params(VqaObjective::Ansatz a,
                                           std::size_t dim,
                                           std::uint64_t seed);

VqaResult run_qaoa(const ProblemGraph& g, std::size_t layers,
                   const TopologyConfig& topo, const VqaOptions& opts);
VqaResult run_vqe(const Hamiltonian& h, std::size_t layers,
                  const TopologyConfig& topo, const VqaOptions& opts);

// Lowest eigenvalue by Lanczos with full reorthogonalisation.
double exact_ground_energy(const Hamiltonian& h);

}  // namespace cavq
