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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cavq/circuit.hpp"

namespace cavq {

enum class Pauli : unsigned char { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p) noexcept;

// Weighted Pauli string. axes[q] acts on qubit q.
struct PauliTerm {
  std::vector<Pauli> axes;
  double coefficient = 1.0;

  std::size_t width() const noexcept { return axes.size(); }
  std::vector<std::size_t> active_qubits() const;
  std::size_t num_active() const;
  bool is_identity() const { return num_active() == 0; }
  std::string label() const;

  bool operator==(const PauliTerm&) const = default;
};

// Builds a term from a label such as "XXIZ"; character i acts on qubit i.
// Throws kParse naming the offending position.
PauliTerm parse_pauli(std::string_view text, double coefficient);

struct Hamiltonian {
  std::size_t num_qubits = 0;
  // Classical constant (identity weight); contributes no gates.
  double offset = 0.0;
  std::vector<PauliTerm> terms;

  Hamiltonian() = default;
  explicit Hamiltonian(std::size_t n) : num_qubits(n) {}

  void add(PauliTerm t);
  void add(std::string_view label, double coeff) {
    add(parse_pauli(label, coeff));
  }
  void validate() const;
};

struct WeightedEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 1.0;
};

struct ProblemGraph {
  std::size_t num_nodes = 0;
  std::vector<WeightedEdge> edges;

  ProblemGraph() = default;
  explicit ProblemGraph(std::size_t n) : num_nodes(n) {}

  void add_edge(std::size_t a, std::size_t b, double w = 1.0);
  void validate() const;

  static ProblemGraph ring(std::size_t n);
  static ProblemGraph complete(std::size_t n);
  // Random graph with every degree <= 3, built by a seeded pairing process
  // that retries until the result is connected; "3-regular-ish".
  static ProblemGraph random_cubic(std::size_t n, std::uint64_t seed);
};

std::size_t cut_size(const ProblemGraph& g, std::uint64_t bits);
double cut_weight_of(const ProblemGraph& g, std::uint64_t bits);

enum class EntanglerKind { kChain, kRoot, kMixed };

// CX-tree shape for a Pauli exponential. `order` lists active qubits in the
// sequence the tree visits them.
//   Chain:        order[0] -> order[1] -> ... -> order[m-1] (sink = last)
//   Root:         every order[j], j < m-1, targets order[m-1]
//   Mixed(s):     chain over order[0..s], then order[j>s] target order[s]
struct Entangler {
  EntanglerKind kind = EntanglerKind::kChain;
  std::size_t split_index = 0;
  // Empty means ascending active-qubit order.
  std::vector<std::size_t> order;

  static Entangler chain() { return {}; }
  static Entangler root() { return {EntanglerKind::kRoot, 0, {}}; }
  static Entangler mixed(std::size_t split) {
    return {EntanglerKind::kMixed, split, {}};
  }
};

// Control/target pairs of the compute half plus the sink qubit.
struct EntanglerTree {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t sink = 0;
};

EntanglerTree entangler_tree(const PauliTerm& term, const Entangler& shape);

// exp(-i * theta * coefficient * P) as basis change, CX tree, RZ(2 theta c)
// on the sink, and the mirrored uncompute. Y uses RX(pi/2) / RX(-pi/2).
LogicalCircuit evolution_circuit(const PauliTerm& term, double theta,
                                 const Entangler& shape = Entangler::chain());

LogicalCircuit qaoa_ansatz(const ProblemGraph& g, std::size_t layers,
                           const std::vector<double>& gammas,
                           const std::vector<double>& betas);

// Per layer: RY, RZ on each qubit then a CX ladder q0 -> ... -> q(n-1).
// params[2 * (layer * n + q)] is the RY angle, the next entry the RZ angle.
LogicalCircuit hwe_ansatz(std::size_t n, std::size_t layers,
                          const std::vector<double>& params);

// Sum over edges of 0.5 w Z_i Z_j with offset -0.5 sum w, so that
// <b|H|b> = -cut(b).
Hamiltonian maxcut_hamiltonian(const ProblemGraph& g);

// -sum Z_i Z_{i+1} - h sum X_i on an open line.
Hamiltonian transverse_field_ising(std::size_t n, double field = 1.0);

// Trotter step: product of the term exponentials in the given order.
LogicalCircuit trotter_circuit(const Hamiltonian& h,
                               const std::vector<double>& thetas,
                               const std::vector<std::size_t>& order = {});

}  // namespace cavq
