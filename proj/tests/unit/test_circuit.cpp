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

#include <limits>
#include <random>

#include "cavq/circuit.hpp"
#include "cavq/error.hpp"
#include "oracle.hpp"

using namespace cavq;

TEST_CASE("gate table") {
  CHECK(gate_arity(GateKind::kCX) == 2);
  CHECK(gate_arity(GateKind::kRZ) == 1);
  CHECK(gate_name(GateKind::kSwapOut) == "swap_out");
  CHECK(gate_from_name("swap_in") == GateKind::kSwapIn);
  CHECK_FALSE(gate_from_name("toffoli").has_value());
  for (auto k : {GateKind::kH, GateKind::kX, GateKind::kSX, GateKind::kId, GateKind::kRX,
                 GateKind::kRY, GateKind::kRZ, GateKind::kCX, GateKind::kSwap, GateKind::kSwapIn,
                 GateKind::kSwapOut, GateKind::kMeasure})
    CHECK(gate_from_name(gate_name(k)) == k);
}

TEST_CASE("circuit validation") {
  auto invalid = [](const Gate& g) {
    LogicalCircuit c(2);
    c.add(g);
    return c;
  };
  CHECK_THROWS_AS(invalid(Gate::two(GateKind::kCX, 0, 0)).validate(), Error);
  CHECK_THROWS_AS(invalid(Gate::one(GateKind::kH, 2)).validate(), Error);
  CHECK_THROWS_AS(invalid(Gate::one(GateKind::kRZ, 0, std::numeric_limits<double>::infinity())).validate(),
                  Error);
  CHECK_THROWS_AS(invalid(Gate::two(GateKind::kSwapIn, 0, 1)).validate(), Error);
  LogicalCircuit ok(2);
  ok.cx(0, 1);
  ok.validate();
  CHECK(ok.count(GateKind::kCX) == 1);
}

TEST_CASE("H lowers to RZ SX RZ") {
  LogicalCircuit c(1);
  c.h(0);
  const auto low = lower_to_basis(c);
  REQUIRE(low.gates.size() == 3);
  CHECK(low.gates[0].kind == GateKind::kRZ);
  CHECK(low.gates[0].angle == oracle::kPi / 2);
  CHECK(low.gates[1].kind == GateKind::kSX);
  CHECK(low.gates[2].kind == GateKind::kRZ);
  CHECK(low.gates[2].angle == oracle::kPi / 2);
  CHECK(oracle::phase_distance(oracle::unitary(1, c.gates), oracle::unitary(1, low.gates)) < 1e-12);
}

TEST_CASE("SWAP lowers to three CX") {
  LogicalCircuit c(2);
  c.swap(0, 1);
  const auto low = lower_to_basis(c);
  REQUIRE(low.gates.size() == 3);
  CHECK(low.gates[0] == Gate::two(GateKind::kCX, 0, 1));
  CHECK(low.gates[1] == Gate::two(GateKind::kCX, 1, 0));
  CHECK(low.gates[2] == Gate::two(GateKind::kCX, 0, 1));
  const auto kept = lower_to_basis(c, {false});
  CHECK(kept.gates == c.gates);
}

TEST_CASE("basis circuits are a fixpoint of lowering") {
  LogicalCircuit c(3);
  c.rz(0, 0.3);
  c.add(Gate::one(GateKind::kSX, 1));
  c.x(2);
  c.cx(2, 0);
  c.add(Gate::one(GateKind::kMeasure, 1));
  for (const auto& g : c.gates) CHECK(is_basis_gate(g.kind));
  CHECK(lower_to_basis(c).gates == c.gates);
}

TEST_CASE("lowering preserves the unitary up to global phase") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    LogicalCircuit c(n);
    for (const auto& g : oracle::random_gates(rng, n, 1 + trial % 40)) c.add(g);
    const auto low = lower_to_basis(c);
    for (const auto& g : low.gates) CHECK(is_basis_gate(g.kind));
    CHECK(oracle::phase_distance(oracle::unitary(n, c.gates), oracle::unitary(n, low.gates)) < 1e-10);
  }
}

TEST_CASE("lowering keeps the routing flag") {
  Gate s = Gate::two(GateKind::kSwap, 0, 1);
  s.routing = true;
  for (const auto& g : lower_gates({s})) CHECK(g.routing);
}

TEST_CASE("just-in-time order keeps per-qubit order and the unitary") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const auto gates = oracle::random_gates(rng, n, 30);
    const auto moved = just_in_time_order(gates);
    REQUIRE(moved.size() == gates.size());
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<Gate> a, b;
      for (const auto& g : gates)
        if (g.q[0] == q || g.q[1] == q) a.push_back(g);
      for (const auto& g : moved)
        if (g.q[0] == q || g.q[1] == q) b.push_back(g);
      CHECK(a == b);
    }
    CHECK(oracle::phase_distance(oracle::unitary(n, gates), oracle::unitary(n, moved)) < 1e-10);
  }
}

TEST_CASE("just-in-time order delays single-qubit gates to their consumer") {
  LogicalCircuit c(3);
  c.h(2);
  c.cx(0, 1);
  c.cx(1, 2);
  const auto moved = just_in_time_order(c.gates);
  CHECK(moved[0] == Gate::two(GateKind::kCX, 0, 1));
  CHECK(moved[1] == Gate::one(GateKind::kH, 2));
}
