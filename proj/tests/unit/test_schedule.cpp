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
#include <random>

#include "cavq/error.hpp"
#include "cavq/schedule.hpp"
#include "cavq/transpile.hpp"
#include "oracle.hpp"

using namespace cavq;

namespace {

PhysicalCircuit on(const Topology& t, std::vector<std::size_t> placement, std::vector<Gate> gates) {
  PhysicalCircuit pc(t);
  pc.initial_placement = placement;
  pc.final_placement = placement;
  pc.gates = std::move(gates);
  return pc;
}

// Busy intervals per resource straight from the events.
std::vector<std::vector<std::pair<Nanos, Nanos>>> busy(const Schedule& s) {
  std::vector<std::vector<std::pair<Nanos, Nanos>>> out(s.num_resources());
  for (const auto& e : s.events)
    for (std::size_t k = 0; k < e.gate.arity(); ++k)
      if (e.duration > 0) out[e.gate.q[k]].emplace_back(e.start, e.end());
  return out;
}

PhysicalCircuit random_lattice_circuit(std::mt19937_64& rng, std::size_t n, std::size_t count) {
  LogicalCircuit c(n);
  for (const auto& g : oracle::random_gates(rng, n, count)) c.add(g);
  return route_lattice(c, build_honeycomb(2, 2));
}

}  // namespace

TEST_CASE("single CX") {
  const Topology hex = build_honeycomb(1, 1);
  const Schedule s = asap_schedule(on(hex, {0, 1}, {Gate::two(GateKind::kCX, 0, 1)}));
  CHECK(s.makespan == 100);
  const IdleReport idle = idle_report(s);
  CHECK(idle.sum == 0);
}

TEST_CASE("independent single-qubit gates run in parallel") {
  const Topology hex = build_honeycomb(1, 1);
  const Schedule s =
      asap_schedule(on(hex, {0, 1}, {Gate::one(GateKind::kX, 0), Gate::one(GateKind::kX, 1)}));
  CHECK(s.makespan == 40);
}

TEST_CASE("three-step protocol takes 300 ns with overlapping SWAP-OUTs") {
  const Topology topo = build_cavity(2, 2);
  Groupings g;
  g.assignment = {0, 0, 1, 1};
  g.capacities = {2, 2};
  LogicalCircuit core(2);
  core.cx(0, 1);
  const Schedule s = asap_schedule(emit_two_qubit_protocol(topo, g, 0, 2, core));
  CHECK(s.makespan == 300);
  std::vector<Nanos> out_starts;
  for (const auto& e : s.events)
    if (e.gate.kind == GateKind::kSwapOut) out_starts.push_back(e.start);
  CHECK(out_starts == std::vector<Nanos>{0, 0});
}

TEST_CASE("X after CX leaves the other operand idle") {
  const Topology hex = build_honeycomb(1, 1);
  const Schedule s = asap_schedule(
      on(hex, {0, 1}, {Gate::two(GateKind::kCX, 0, 1), Gate::one(GateKind::kX, 0)}));
  CHECK(s.makespan == 140);
  const IdleReport idle = idle_report(s);
  CHECK(idle.gaps[1] == std::vector<IdleGap>{{100, 40}});
  CHECK(idle.gaps[0].empty());
}

TEST_CASE("two protocols sharing a transmon") {
  const Topology t = build_cavity(3, 2);
  const std::size_t m00 = t.mode_resource(0, 0), m10 = t.mode_resource(1, 0),
                    m11 = t.mode_resource(1, 1), m20 = t.mode_resource(2, 0);
  auto io = [](GateKind k, std::size_t tr, std::size_t m) { return Gate::two(k, tr, m); };
  const PhysicalCircuit pc = on(
      t, {m00, m10, m11, m20},
      {io(GateKind::kSwapOut, 0, m00), io(GateKind::kSwapOut, 1, m10), Gate::two(GateKind::kCX, 0, 1),
       io(GateKind::kSwapIn, 0, m00), io(GateKind::kSwapIn, 1, m10), io(GateKind::kSwapOut, 1, m11),
       io(GateKind::kSwapOut, 2, m20), Gate::two(GateKind::kCX, 1, 2), io(GateKind::kSwapIn, 1, m11),
       io(GateKind::kSwapIn, 2, m20)});
  validate_physical(pc);
  const Schedule s = asap_schedule(pc);
  CHECK(s.makespan == 600);
  const IdleReport idle = idle_report(s);
  // By hand: transmon 0 works 0-300, then waits out the second protocol.
  CHECK(idle.gaps[0] == std::vector<IdleGap>{{300, 300}});
  // Transmon 2 fetches at 0 and waits for transmon 1 to come free.
  CHECK(idle.gaps[2] == std::vector<IdleGap>{{100, 300}});
  // Mode m00 is empty while its state is on the transmon.
  CHECK(idle.gaps[m00] == std::vector<IdleGap>{{100, 100}, {300, 300}});
  CHECK(idle.total[0] == 300);
  CHECK(idle.total[2] == 300);
  CHECK(idle.total[1] == 0);
}

TEST_CASE("busy and idle intervals tile each live resource") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const PhysicalCircuit pc = random_lattice_circuit(rng, 2 + trial % 8, 40);
    const Schedule s = asap_schedule(pc);
    const IdleReport idle = idle_report(s);
    const auto b = busy(s);
    for (std::size_t r = 0; r < s.num_resources(); ++r) {
      if (s.live_from[r] < 0) {
        CHECK(b[r].empty());
        continue;
      }
      std::vector<std::pair<Nanos, Nanos>> pieces = b[r];
      for (const auto& gap : idle.gaps[r]) pieces.emplace_back(gap.start, gap.start + gap.length);
      std::sort(pieces.begin(), pieces.end());
      Nanos cursor = s.live_from[r];
      for (const auto& [a, z] : pieces) {
        CHECK(a == cursor);
        cursor = z;
      }
      CHECK(cursor == s.makespan);
    }
  }
}

TEST_CASE("makespan is invariant under per-resource-order-preserving reordering") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const PhysicalCircuit pc = random_lattice_circuit(rng, 3 + trial % 6, 30);
    // Random topological order of the dependency DAG.
    const std::size_t n = pc.gates.size();
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<long> last(pc.topology.num_resources(), -1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < pc.gates[i].arity(); ++k) {
        auto& l = last[pc.gates[i].q[k]];
        if (l >= 0) preds[i].push_back(static_cast<std::size_t>(l));
        l = static_cast<long>(i);
      }
    std::vector<bool> done(n, false);
    PhysicalCircuit shuffled = pc;
    shuffled.gates.clear();
    while (shuffled.gates.size() < n) {
      std::vector<std::size_t> ready;
      for (std::size_t i = 0; i < n; ++i)
        if (!done[i] && std::all_of(preds[i].begin(), preds[i].end(), [&](auto p) { return done[p]; }))
          ready.push_back(i);
      const std::size_t pick = ready[rng() % ready.size()];
      done[pick] = true;
      shuffled.gates.push_back(pc.gates[pick]);
    }
    CHECK(asap_schedule(shuffled).makespan == asap_schedule(pc).makespan);
  }
}

TEST_CASE("depth times the longest duration bounds the makespan") {
  std::mt19937_64 rng(47);
  GateTimes uniform;
  uniform.single_qubit = uniform.cx = uniform.swap_io = 100;
  for (int trial = 0; trial < 40; ++trial) {
    PhysicalCircuit pc = random_lattice_circuit(rng, 2 + trial % 6, 30);
    const auto depth = static_cast<Nanos>(count_metrics(pc).depth);
    CHECK(asap_schedule(pc).makespan <= depth * GateTimes{}.lattice_swap());
    pc = lower_physical(pc);
    CHECK(asap_schedule(pc, uniform).makespan == static_cast<Nanos>(count_metrics(pc).depth) * 100);
  }
}

TEST_CASE("measurements sit at the makespan and take no time") {
  const Topology hex = build_honeycomb(1, 1);
  const Schedule s = asap_schedule(on(hex, {0, 1},
                                      {Gate::one(GateKind::kMeasure, 1), Gate::two(GateKind::kCX, 0, 1),
                                       Gate::one(GateKind::kX, 0)}));
  CHECK(s.makespan == 140);
  const auto it = std::find_if(s.events.begin(), s.events.end(),
                               [](const auto& e) { return e.gate.kind == GateKind::kMeasure; });
  REQUIRE(it != s.events.end());
  CHECK(it->start == 140);
  CHECK(it->duration == 0);
}

TEST_CASE("gate times validation") {
  GateTimes bad;
  bad.cx = -1;
  CHECK_THROWS_AS(bad.validate(), Error);
}
