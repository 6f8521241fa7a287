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

#include "cavq/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>
#include <tuple>

#include "cavq/error.hpp"
#include "cavq/rng.hpp"

namespace cavq {

char pauli_char(Pauli p) noexcept { return "IXYZ"[static_cast<int>(p)]; }

std::vector<std::size_t> PauliTerm::active_qubits() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < axes.size(); ++q)
    if (axes[q] != Pauli::I) out.push_back(q);
  return out;
}

std::size_t PauliTerm::num_active() const {
  return static_cast<std::size_t>(
      std::count_if(axes.begin(), axes.end(),
                    [](Pauli p) { return p != Pauli::I; }));
}

std::string PauliTerm::label() const {
  std::string s;
  s.reserve(axes.size());
  for (Pauli p : axes) s.push_back(pauli_char(p));
  return s;
}

PauliTerm parse_pauli(std::string_view text, double coefficient) {
  if (text.empty()) fail(ErrorCode::kParse, "empty Pauli string");
  if (!std::isfinite(coefficient))
    fail(ErrorCode::kParse, "Pauli coefficient is not finite");
  PauliTerm t;
  t.coefficient = coefficient;
  t.axes.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'I': t.axes.push_back(Pauli::I); break;
      case 'X': t.axes.push_back(Pauli::X); break;
      case 'Y': t.axes.push_back(Pauli::Y); break;
      case 'Z': t.axes.push_back(Pauli::Z); break;
      default:
        fail(ErrorCode::kParse, "invalid Pauli character '" +
                                    std::string(1, text[i]) +
                                    "' at position " + std::to_string(i));
    }
  }
  return t;
}

void Hamiltonian::add(PauliTerm t) {
  require(t.width() == num_qubits,
          "term " + t.label() + " has width " + std::to_string(t.width()) +
              ", expected " + std::to_string(num_qubits));
  require(std::isfinite(t.coefficient), "term coefficient is not finite");
  terms.push_back(std::move(t));
}

void Hamiltonian::validate() const {
  require(std::isfinite(offset), "Hamiltonian offset is not finite");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    require(terms[i].width() == num_qubits,
            "term " + std::to_string(i) + " has the wrong width");
    require(std::isfinite(terms[i].coefficient),
            "term " + std::to_string(i) + " coefficient is not finite");
  }
}

void ProblemGraph::add_edge(std::size_t a, std::size_t b, double w) {
  require(a != b, "self-loop on node " + std::to_string(a));
  require(a < num_nodes && b < num_nodes, "edge endpoint out of range");
  require(std::isfinite(w), "edge weight is not finite");
  edges.push_back({a, b, w});
}

void ProblemGraph::validate() const {
  for (const auto& e : edges) {
    require(e.a != e.b, "self-loop on node " + std::to_string(e.a));
    require(e.a < num_nodes && e.b < num_nodes, "edge endpoint out of range");
    require(std::isfinite(e.weight), "edge weight is not finite");
  }
}

ProblemGraph ProblemGraph::ring(std::size_t n) {
  require(n >= 3, "ring needs at least 3 nodes");
  ProblemGraph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

ProblemGraph ProblemGraph::complete(std::size_t n) {
  ProblemGraph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

namespace {

bool connected(std::size_t n, const std::vector<WeightedEdge>& edges) {
  if (n == 0) return true;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        frontier.push(v);
      }
  }
  return reached == n;
}

}  // namespace

ProblemGraph ProblemGraph::random_cubic(std::size_t n, std::uint64_t seed) {
  require(n >= 4, "random cubic graph needs at least 4 nodes");
  Rng rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<std::size_t> stubs;
    for (std::size_t v = 0; v < n; ++v)
      for (int k = 0; k < 3; ++k) stubs.push_back(v);
    for (std::size_t i = stubs.size(); i > 1; --i)
      std::swap(stubs[i - 1], stubs[rng.index(i)]);
    ProblemGraph g(n);
    std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      std::size_t a = stubs[i], b = stubs[i + 1];
      if (a == b || has[a][b]) continue;
      has[a][b] = has[b][a] = true;
      g.add_edge(std::min(a, b), std::max(a, b));
    }
    if (connected(n, g.edges)) {
      std::sort(g.edges.begin(), g.edges.end(),
                [](const WeightedEdge& x, const WeightedEdge& y) {
                  return std::tie(x.a, x.b) < std::tie(y.a, y.b);
                });
      return g;
    }
  }
  fail(ErrorCode::kInternal, "random cubic graph generation did not converge");
}

std::size_t cut_size(const ProblemGraph& g, std::uint64_t bits) {
  std::size_t n = 0;
  for (const auto& e : g.edges) n += ((bits >> e.a) & 1) != ((bits >> e.b) & 1);
  return n;
}

double cut_weight_of(const ProblemGraph& g, std::uint64_t bits) {
  double w = 0.0;
  for (const auto& e : g.edges)
    if (((bits >> e.a) & 1) != ((bits >> e.b) & 1)) w += e.weight;
  return w;
}

EntanglerTree entangler_tree(const PauliTerm& term, const Entangler& shape) {
  std::vector<std::size_t> order = shape.order;
  const auto actives = term.active_qubits();
  if (actives.empty()) fail(ErrorCode::kInvalidArgument, "no active qubits");
  if (order.empty()) {
    order = actives;
  } else {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    require(sorted == actives,
            "entangler order must be a permutation of the active qubits");
  }
  const std::size_t m = order.size();
  EntanglerTree tree;
  switch (shape.kind) {
    case EntanglerKind::kChain:
      for (std::size_t j = 0; j + 1 < m; ++j)
        tree.edges.emplace_back(order[j], order[j + 1]);
      tree.sink = order[m - 1];
      break;
    case EntanglerKind::kRoot:
      for (std::size_t j = 0; j + 1 < m; ++j)
        tree.edges.emplace_back(order[j], order[m - 1]);
      tree.sink = order[m - 1];
      break;
    case EntanglerKind::kMixed: {
      const std::size_t s = shape.split_index;
      require(s > 0 && s + 1 < m,
              "mixed split index must lie strictly inside the active list");
      for (std::size_t j = 0; j < s; ++j)
        tree.edges.emplace_back(order[j], order[j + 1]);
      for (std::size_t j = s + 1; j < m; ++j)
        tree.edges.emplace_back(order[j], order[s]);
      tree.sink = order[s];
      break;
    }
  }
  return tree;
}

LogicalCircuit evolution_circuit(const PauliTerm& term, double theta,
                                 const Entangler& shape) {
  require(std::isfinite(theta), "evolution angle is not finite");
  if (term.is_identity()) return LogicalCircuit(term.width());
  const EntanglerTree tree = entangler_tree(term, shape);
  const auto actives = term.active_qubits();
  constexpr double kHalfPi = std::numbers::pi / 2;

  LogicalCircuit c(term.width());
  for (std::size_t q : actives) {
    if (term.axes[q] == Pauli::X) c.h(q);
    if (term.axes[q] == Pauli::Y) c.rx(q, kHalfPi);
  }
  for (const auto& [ctl, tgt] : tree.edges) c.cx(ctl, tgt);
  c.rz(tree.sink, 2.0 * theta * term.coefficient);
  for (auto it = tree.edges.rbegin(); it != tree.edges.rend(); ++it)
    c.cx(it->first, it->second);
  for (std::size_t q : actives) {
    if (term.axes[q] == Pauli::X) c.h(q);
    if (term.axes[q] == Pauli::Y) c.rx(q, -kHalfPi);
  }
  return c;
}

LogicalCircuit qaoa_ansatz(const ProblemGraph& g, std::size_t layers,
                           const std::vector<double>& gammas,
                           const std::vector<double>& betas) {
  g.validate();
  require(gammas.size() == layers && betas.size() == layers,
          "qaoa needs one gamma and one beta per layer");
  LogicalCircuit c(g.num_nodes);
  for (std::size_t q = 0; q < g.num_nodes; ++q) c.h(q);
  for (std::size_t k = 0; k < layers; ++k) {
    for (const auto& e : g.edges) {
      c.cx(e.a, e.b);
      c.rz(e.b, gammas[k] * e.weight);
      c.cx(e.a, e.b);
    }
    for (std::size_t q = 0; q < g.num_nodes; ++q) c.rx(q, 2.0 * betas[k]);
  }
  return c;
}

LogicalCircuit hwe_ansatz(std::size_t n, std::size_t layers,
                          const std::vector<double>& params) {
  require(params.size() == 2 * n * layers,
          "hardware-efficient ansatz expects " + std::to_string(2 * n * layers) +
              " parameters, got " + std::to_string(params.size()));
  LogicalCircuit c(n);
  for (std::size_t l = 0; l < layers; ++l) {
    for (std::size_t q = 0; q < n; ++q) {
      c.ry(q, params[2 * (l * n + q)]);
      c.rz(q, params[2 * (l * n + q) + 1]);
    }
    for (std::size_t q = 0; q + 1 < n; ++q) c.cx(q, q + 1);
  }
  return c;
}

Hamiltonian maxcut_hamiltonian(const ProblemGraph& g) {
  g.validate();
  require(g.num_nodes > 0, "maxcut graph is empty");
  Hamiltonian h(g.num_nodes);
  for (const auto& e : g.edges) {
    PauliTerm t;
    t.axes.assign(g.num_nodes, Pauli::I);
    t.axes[e.a] = Pauli::Z;
    t.axes[e.b] = Pauli::Z;
    t.coefficient = 0.5 * e.weight;
    h.add(std::move(t));
    h.offset -= 0.5 * e.weight;
  }
  return h;
}

Hamiltonian transverse_field_ising(std::size_t n, double field) {
  require(n >= 1, "Ising chain needs at least one site");
  Hamiltonian h(n);
  for (std::size_t q = 0; q + 1 < n; ++q) {
    PauliTerm t;
    t.axes.assign(n, Pauli::I);
    t.axes[q] = t.axes[q + 1] = Pauli::Z;
    t.coefficient = -1.0;
    h.add(std::move(t));
  }
  for (std::size_t q = 0; q < n; ++q) {
    PauliTerm t;
    t.axes.assign(n, Pauli::I);
    t.axes[q] = Pauli::X;
    t.coefficient = -field;
    h.add(std::move(t));
  }
  return h;
}

LogicalCircuit trotter_circuit(const Hamiltonian& h,
                               const std::vector<double>& thetas,
                               const std::vector<std::size_t>& order) {
  h.validate();
  require(thetas.size() == h.terms.size() || thetas.size() == 1,
          "trotter step needs one angle per term or a single shared angle");
  std::vector<std::size_t> seq = order;
  if (seq.empty()) {
    seq.resize(h.terms.size());
    std::iota(seq.begin(), seq.end(), std::size_t{0});
  }
  LogicalCircuit c(h.num_qubits);
  for (std::size_t i : seq) {
    require(i < h.terms.size(), "term order index out of range");
    const PauliTerm& t = h.terms[i];
    if (t.is_identity()) continue;
    const double theta = thetas.size() == 1 ? thetas[0] : thetas[i];
    c.append(evolution_circuit(t, theta));
  }
  return c;
}

}  // namespace cavq
