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
#include <map>
#include <utility>
#include <vector>

#include "cavq/pauli.hpp"

namespace cavq {

// Symmetric weighted graph of required qubit interactions.
class InteractionGraph {
 public:
  explicit InteractionGraph(std::size_t n = 0) : n_(n) {}

  std::size_t num_nodes() const noexcept { return n_; }
  void add(std::size_t a, std::size_t b, double w = 1.0);
  double weight(std::size_t a, std::size_t b) const;
  // Edges keyed by (min, max).
  const std::map<std::pair<std::size_t, std::size_t>, double>& edges() const {
    return w_;
  }
  double total_weight() const;
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency() const;

 private:
  std::size_t n_;
  std::map<std::pair<std::size_t, std::size_t>, double> w_;
};

struct Groupings {
  std::vector<std::size_t> assignment;  // logical qubit -> cavity
  std::vector<std::size_t> capacities;  // cavity -> modes

  std::size_t num_groups() const noexcept { return capacities.size(); }
  std::vector<std::size_t> members(std::size_t group) const;
  std::vector<std::size_t> loads() const;
  void validate() const;
  bool operator==(const Groupings&) const = default;
};

struct TermClassification {
  std::vector<std::size_t> e_terms;
  std::vector<std::size_t> l_terms;
};

struct Exchange {
  // kSwap exchanges qubit_a and qubit_b between their cavities; kMove sends
  // qubit_a to cavity `to` (fallback).
  enum class Kind { kSwap, kMove } kind = Kind::kSwap;
  std::size_t qubit_a = 0;
  std::size_t qubit_b = 0;
  std::size_t to = 0;
  bool operator==(const Exchange&) const = default;
};

using RelocationPlan = std::vector<Exchange>;

// Consecutive non-identity qubits of each term (index order) add 1 to their
// edge; identity positions are skipped.
InteractionGraph build_interaction_graph(const Hamiltonian& h);
InteractionGraph interaction_graph_of(const LogicalCircuit& c);

struct PartitionOptions {
  std::size_t restarts = 12;
};

// Capacity-constrained k-way partition maximising the weight of edges that
// cross groups, i.e. spreading frequently interacting qubits over different
// cavities. Greedy seeding plus Fiduccia-Mattheyses style passes over single
// moves and pairwise swaps, repeated from seeded random starts.
Groupings kway_partition(const InteractionGraph& g, std::size_t k,
                         std::size_t capacity, std::uint64_t seed,
                         const PartitionOptions& opts = {});

double cut_weight(const InteractionGraph& g, const Groupings& groups);

// Number of multi-qubit terms confined to a single cavity.
std::size_t count_local_terms(const Hamiltonian& h, const Groupings& groups);

// L-term iff the term has >= 2 active qubits, all in one cavity.
bool is_local_term(const PauliTerm& term, const Groupings& groups);
TermClassification split_terms(const Hamiltonian& h, const Groupings& groups);
TermClassification split_terms(const Hamiltonian& h, const Groupings& groups,
                               const std::vector<std::size_t>& subset);

// Active-qubit count per cavity for a term.
std::vector<std::size_t> cavity_counts(const PauliTerm& term,
                                       const Groupings& groups);

// max_g c_g minus the sum of the other counts (argmax ties to lower id).
long term_imbalance(const PauliTerm& term, const Groupings& groups);

RelocationPlan plan_reallocation(const std::vector<PauliTerm>& l_terms,
                                 const Groupings& groups);

// Applies a plan to the bookkeeping only.
Groupings apply_plan(const Groupings& groups, const RelocationPlan& plan);

}  // namespace cavq
