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
#include <numeric>
#include <random>

#include "cavq/error.hpp"
#include "cavq/pauli.hpp"
#include "oracle.hpp"

using namespace cavq;
using Catch::Matchers::WithinAbs;

namespace {

LogicalCircuit qaoa_of(const ProblemGraph& g, std::vector<double> gam, std::vector<double> bet) {
  return qaoa_ansatz(g, gam.size(), gam, bet);
}

oracle::Vec plus_state(std::size_t n) {
  const std::size_t d = std::size_t{1} << n;
  return oracle::Vec::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
}

}  // namespace

TEST_CASE("parse_pauli maps characters to qubits") {
  const PauliTerm t = parse_pauli("XXII", 0.5);
  CHECK(t.width() == 4);
  CHECK(t.axes[0] == Pauli::X);
  CHECK(t.axes[1] == Pauli::X);
  CHECK(t.axes[2] == Pauli::I);
  CHECK(t.active_qubits() == std::vector<std::size_t>{0, 1});
  CHECK(t.coefficient == 0.5);
  CHECK(t.label() == "XXII");
  CHECK(parse_pauli("IIII", 1.0).is_identity());
}

TEST_CASE("parse_pauli reports the offending position") {
  try {
    parse_pauli("ZQ", 1.0);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("position 1") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_pauli("", 1.0), Error);
}

TEST_CASE("identity terms synthesize to nothing") {
  CHECK(evolution_circuit(parse_pauli("III", 2.0), 0.3).gates.empty());
}

TEST_CASE("ZZ chain evolution is CX RZ CX") {
  const auto c = evolution_circuit(parse_pauli("ZZ", 1.0), oracle::kPi / 4);
  REQUIRE(c.gates.size() == 3);
  CHECK(c.gates[0] == Gate::two(GateKind::kCX, 0, 1));
  CHECK(c.gates[1].kind == GateKind::kRZ);
  CHECK(c.gates[1].q[0] == 1);
  CHECK_THAT(c.gates[1].angle, WithinAbs(oracle::kPi / 2, 1e-15));
  CHECK(c.gates[2] == Gate::two(GateKind::kCX, 0, 1));
}

TEST_CASE("X axes get H on both sides of the core") {
  const auto c = evolution_circuit(parse_pauli("XIX", 1.0), 0.2);
  REQUIRE(c.gates.size() == 7);
  CHECK(c.gates[0] == Gate::one(GateKind::kH, 0));
  CHECK(c.gates[1] == Gate::one(GateKind::kH, 2));
  CHECK(c.gates[5] == Gate::one(GateKind::kH, 0));
  CHECK(c.gates[6] == Gate::one(GateKind::kH, 2));
}

TEST_CASE("entangler trees have the declared shapes") {
  const PauliTerm t = parse_pauli("ZZZZ", 1.0);
  const auto chain = entangler_tree(t, Entangler::chain());
  CHECK(chain.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}, {2, 3}});
  CHECK(chain.sink == 3);
  const auto root = entangler_tree(t, Entangler::root());
  CHECK(root.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 3}, {1, 3}, {2, 3}});
  const auto mixed = entangler_tree(t, Entangler::mixed(1));
  CHECK(mixed.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 1}, {3, 1}});
  CHECK(mixed.sink == 1);
}

TEST_CASE("Root and Chain orderings differ but implement the same unitary") {
  const PauliTerm t = parse_pauli("ZZZZ", 0.7);
  const auto a = evolution_circuit(t, 0.37, Entangler::chain());
  const auto b = evolution_circuit(t, 0.37, Entangler::root());
  CHECK(a.gates != b.gates);
  CHECK(oracle::phase_distance(oracle::unitary(4, a.gates), oracle::unitary(4, b.gates)) < 1e-10);
}

TEST_CASE("every entangler shape equals the dense Pauli exponential") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> axis(0, 3);
  std::uniform_real_distribution<double> angle(-2.0, 2.0);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + trial % 6;
    PauliTerm t;
    t.axes.resize(n);
    for (auto& a : t.axes) a = static_cast<Pauli>(axis(rng));
    t.coefficient = angle(rng);
    const double theta = angle(rng);
    const auto want = oracle::pauli_exp(t, theta * t.coefficient);
    std::vector<Entangler> shapes{Entangler::chain(), Entangler::root()};
    const std::size_t m = t.num_active();
    for (std::size_t s = 1; s + 1 < m; ++s) shapes.push_back(Entangler::mixed(s));
    auto order = t.active_qubits();
    std::shuffle(order.begin(), order.end(), rng);
    Entangler permuted = Entangler::root();
    permuted.order = order;
    shapes.push_back(permuted);
    for (const auto& shape : shapes) {
      const auto c = evolution_circuit(t, theta, shape);
      CHECK(oracle::phase_distance(oracle::unitary(n, c.gates), want) < 1e-10);
    }
  }
}

TEST_CASE("maxcut Hamiltonian conventions") {
  ProblemGraph edge(2);
  edge.add_edge(0, 1);
  const Hamiltonian h = maxcut_hamiltonian(edge);
  REQUIRE(h.terms.size() == 1);
  CHECK(h.terms[0].label() == "ZZ");
  CHECK(h.terms[0].coefficient == 0.5);
  CHECK(h.offset == -0.5);
  // |01>: qubit 0 is 1.
  oracle::Vec psi = oracle::Vec::Zero(4);
  psi(1) = 1.0;
  CHECK_THAT((psi.adjoint() * oracle::hamiltonian_matrix(h) * psi)(0).real(), WithinAbs(-1.0, 0));
}

TEST_CASE("maxcut diagonal is exactly minus the cut") {
  std::mt19937_64 rng(5);
  std::vector<ProblemGraph> graphs{ProblemGraph::ring(4), ProblemGraph::complete(3),
                                   ProblemGraph::complete(5), ProblemGraph::random_cubic(8, 3)};
  ProblemGraph weighted(5);
  weighted.add_edge(0, 1, 2.0);
  weighted.add_edge(1, 4, 3.0);
  weighted.add_edge(2, 3, 1.0);
  graphs.push_back(weighted);
  for (const auto& g : graphs) {
    const Hamiltonian h = maxcut_hamiltonian(g);
    for (std::uint64_t b = 0; b < (1u << g.num_nodes); ++b) {
      double diag = h.offset;
      for (const auto& t : h.terms) {
        double s = t.coefficient;
        for (std::size_t q : t.active_qubits()) s *= ((b >> q) & 1u) ? -1.0 : 1.0;
        diag += s;
      }
      CHECK(diag + cut_weight_of(g, b) == 0.0);
    }
  }
}

TEST_CASE("maxcut minima by brute force") {
  CHECK_THAT(oracle::ground_energy(maxcut_hamiltonian(ProblemGraph::ring(4))), WithinAbs(-4, 1e-10));
  CHECK_THAT(oracle::ground_energy(maxcut_hamiltonian(ProblemGraph::complete(3))), WithinAbs(-2, 1e-10));
  std::size_t best = 0;
  for (std::uint64_t b = 0; b < 16; ++b) best = std::max(best, cut_size(ProblemGraph::ring(4), b));
  CHECK(best == 4);
}

TEST_CASE("QAOA with zero angles is the uniform superposition") {
  for (std::size_t n : {3u, 4u, 6u}) {
    const auto g = ProblemGraph::ring(n);
    const auto c = qaoa_of(g, {0.0, 0.0}, {0.0, 0.0});
    const auto psi = oracle::run(n, c.gates);
    for (Eigen::Index i = 0; i < psi.size(); ++i)
      CHECK_THAT(std::norm(psi(i)), WithinAbs(1.0 / static_cast<double>(psi.size()), 1e-12));
  }
}

TEST_CASE("QAOA on a triangle matches the dense operator product") {
  const auto g = ProblemGraph::complete(3);
  const double gamma = 0.83, beta = -0.41;
  const auto c = qaoa_of(g, {gamma}, {beta});
  const auto cost = oracle::hamiltonian_matrix(maxcut_hamiltonian(g));
  Eigen::SelfAdjointEigenSolver<oracle::Mat> es(cost);
  const oracle::Mat uc = es.eigenvectors() *
                         (-oracle::kI * gamma * es.eigenvalues().cast<oracle::cplx>()).array().exp().matrix().asDiagonal() *
                         es.eigenvectors().adjoint();
  oracle::Mat ub = oracle::Mat::Identity(8, 8);
  for (std::size_t q = 0; q < 3; ++q)
    ub = oracle::embed1(3, q, oracle::single(GateKind::kRX, 2 * beta)) * ub;
  const oracle::Vec want = ub * uc * plus_state(3);
  CHECK(oracle::overlap(want, oracle::run(3, c.gates)) > 1 - 1e-12);
}

TEST_CASE("QAOA gate counts follow the construction") {
  const auto c = qaoa_of(ProblemGraph::ring(4), {0.1, 0.2}, {0.3, 0.4});
  CHECK(c.count(GateKind::kH) == 4);
  CHECK(c.count(GateKind::kCX) == 2 * 4 * 2);
  CHECK(c.count(GateKind::kRZ) == 2 * 4);
  CHECK(c.count(GateKind::kRX) == 2 * 4);
  CHECK(c.gates.size() == 4 + 2 * (4 * 3 + 4));
}

TEST_CASE("hardware-efficient ansatz") {
  const auto flip = hwe_ansatz(2, 1, {oracle::kPi, 0, 0, 0});
  const auto psi = oracle::run(2, flip.gates);
  CHECK(std::norm(psi(3)) > 1 - 1e-12);
  CHECK(hwe_ansatz(3, 0, {}).gates.empty());
  const auto c = hwe_ansatz(4, 1, std::vector<double>(8, 0.1));
  CHECK(c.count(GateKind::kRY) + c.count(GateKind::kRZ) == 8);
  CHECK(c.count(GateKind::kCX) == 3);
  CHECK_THROWS_AS(hwe_ansatz(4, 1, std::vector<double>(7, 0.1)), Error);
}

TEST_CASE("transverse-field Ising ground energy") {
  const Hamiltonian h = transverse_field_ising(4, 1.0);
  CHECK(h.terms.size() == 3 + 4);
  // Open chain of 2 at h=1: eigenvalues of -ZZ - X1 - X2 give -sqrt(5).
  CHECK_THAT(oracle::ground_energy(transverse_field_ising(2, 1.0)), WithinAbs(-std::sqrt(5.0), 1e-12));
}

TEST_CASE("trotter circuit is the ordered product of term exponentials") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = oracle::random_hamiltonian(rng, 4, 5);
    std::vector<double> thetas{0.1, -0.3, 0.25, 0.7, 1.1};
    std::vector<std::size_t> order{3, 1, 4, 0, 2};
    const auto c = trotter_circuit(h, thetas, order);
    CHECK(oracle::phase_distance(oracle::unitary(4, c.gates),
                                 oracle::trotter_unitary(h, thetas, order)) < 1e-10);
  }
}

TEST_CASE("random cubic graphs") {
  for (std::size_t n : {4u, 6u, 8u, 10u}) {
    const auto g = ProblemGraph::random_cubic(n, 7);
    std::vector<std::size_t> deg(n, 0);
    for (const auto& e : g.edges) {
      ++deg[e.a];
      ++deg[e.b];
      CHECK(e.a < e.b);
    }
    for (auto d : deg) CHECK(d <= 3);
    // Connectivity by union-find.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& e : g.edges) parent[find(e.a)] = find(e.b);
    for (std::size_t v = 0; v < n; ++v) CHECK(find(v) == find(0));
    const auto again = ProblemGraph::random_cubic(n, 7);
    REQUIRE(again.edges.size() == g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      CHECK(again.edges[i].a == g.edges[i].a);
      CHECK(again.edges[i].b == g.edges[i].b);
    }
  }
}

TEST_CASE("Hamiltonian validation") {
  Hamiltonian h(3);
  CHECK_THROWS_AS(h.add("XX", 1.0), Error);
  ProblemGraph g(3);
  CHECK_THROWS_AS(g.add_edge(0, 0), Error);
  CHECK_THROWS_AS(g.add_edge(0, 5), Error);
}
