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
#include <vector>

#include "cavq/circuit.hpp"
#include "cavq/partition.hpp"
#include "cavq/pauli.hpp"
#include "cavq/topology.hpp"

namespace cavq {

// Gate list over physical resources plus where every logical qubit starts
// and ends. term_order records the Hamiltonian term indices in the order the
// cavity transpiler executed them.
struct PhysicalCircuit {
  Topology topology;
  std::vector<Gate> gates;
  std::vector<std::size_t> initial_placement;
  std::vector<std::size_t> final_placement;
  std::vector<std::size_t> term_order;

  explicit PhysicalCircuit(Topology t) : topology(std::move(t)) {}
  std::size_t num_logical() const noexcept { return final_placement.size(); }
};

struct RoutingMetrics {
  std::size_t cx_count = 0;
  std::size_t single_qubit_count = 0;
  std::size_t swap_io_count = 0;
  std::size_t swap_route_count = 0;
  std::size_t depth = 0;
  // Gates appended for data movement. A composite SWAP counts as its three
  // CX.
  std::size_t routing_overhead = 0;
  bool operator==(const RoutingMetrics&) const = default;
};

RoutingMetrics count_metrics(const PhysicalCircuit& pc);

// Replays the circuit and throws if a gate leaves the coupling graph, an
// I/O gate targets an occupied slot, or two states share a resource.
void validate_physical(const PhysicalCircuit& pc);

// SWAP-OUT both operands, run `core` (a two-qubit circuit; qubit 0 is qa,
// qubit 1 is qb) on the transmons, SWAP-IN both. qa and qb must sit in
// different cavities. With a lone CX core this is the three-step protocol.
PhysicalCircuit emit_two_qubit_protocol(const Topology& topo,
                                        const Groupings& groups,
                                        std::size_t qa, std::size_t qb,
                                        const LogicalCircuit& core);

// Reference sequence for two qubits that share a cavity: stage qa on a
// neighbouring transmon through a transmon SWAP, interact, and undo. Counts
// the transmon SWAP as one primitive, giving seven steps.
PhysicalCircuit emit_naive_same_cavity(const Topology& topo,
                                       const Groupings& groups,
                                       std::size_t qa, std::size_t qb);

// Chain while no cavity dominates the term (imbalance <= 1), otherwise chain
// across cavities until one cavity's qubits remain and root the rest on the
// held transmon qubit.
Entangler cavity_entangler(const PauliTerm& term, const Groupings& groups,
                           const Topology* topo = nullptr);

PhysicalCircuit transpile_term(const PauliTerm& term, double theta,
                               const Groupings& groups, const Topology& topo);
PhysicalCircuit transpile_term(const PauliTerm& term, double theta,
                               const Groupings& groups);

struct TranspileOptions {
  bool cancel_swaps = true;
  PartitionOptions partition;
};

struct CavityTranspileResult {
  Groupings initial_groupings;
  Groupings final_groupings;
  // Reallocation passes and the exchanges or moves they applied.
  std::size_t passes = 0;
  std::size_t exchanges = 0;
};

// Interaction graph -> k-way partition -> E/L split -> per pass, E terms in
// Hamiltonian order then a reallocation of the remaining L terms, until no
// term is pending. `thetas` holds one angle per term, or a single angle.
PhysicalCircuit transpile_cavity(const Hamiltonian& h,
                                 const std::vector<double>& thetas,
                                 const Topology& topo, std::uint64_t seed,
                                 const TranspileOptions& opts = {},
                                 CavityTranspileResult* info = nullptr);

// Same pipeline, starting from a caller-supplied partition.
PhysicalCircuit transpile_cavity(const Hamiltonian& h,
                                 const std::vector<double>& thetas,
                                 const Topology& topo, const Groupings& groups,
                                 const TranspileOptions& opts = {},
                                 CavityTranspileResult* info = nullptr);

// Maps an arbitrary logical circuit onto a cavity topology with the
// hold-and-chain machine (transmons keep qubits until displaced).
PhysicalCircuit transpile_circuit_cavity(const LogicalCircuit& c,
                                         const Topology& topo,
                                         const Groupings& groups);

// QAOA on a cavity topology: lazy H layer, each cost layer through the
// term pipeline, RX mixers.
PhysicalCircuit transpile_qaoa_cavity(const ProblemGraph& g,
                                      const std::vector<double>& gammas,
                                      const std::vector<double>& betas,
                                      const Topology& topo,
                                      const Groupings& groups);

// Removes SWAP-IN/SWAP-OUT pairs on the same (transmon, mode) with no gate on
// either resource in between. Idempotent.
PhysicalCircuit cancel_swaps(const PhysicalCircuit& pc);

enum class InitialLayout { kTrivial, kDegreeMatched };

std::vector<std::size_t> initial_layout(const LogicalCircuit& c,
                                        const Topology& topo,
                                        InitialLayout kind);

// Greedy lattice router: each two-qubit gate at distance N > 1 first moves
// its control along the lexicographically smallest shortest path with N - 1
// SWAPs.
PhysicalCircuit route_lattice(const LogicalCircuit& c, const Topology& topo,
                              InitialLayout layout = InitialLayout::kDegreeMatched,
                              std::uint64_t seed = 0);

// Lowers every gate of a physical circuit (see lower_gates).
PhysicalCircuit lower_physical(const PhysicalCircuit& pc,
                               const LoweringOptions& opts = {});

// Four-or-more qubit GHZ state built on the transmons of a two-cavity device
// and parked in the modes, 2 * modes_per_cavity qubits in total.
PhysicalCircuit ghz_cavity_circuit(std::size_t modes_per_cavity = 2);

}  // namespace cavq
