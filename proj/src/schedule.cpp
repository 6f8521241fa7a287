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

#include "cavq/schedule.hpp"

#include <algorithm>

#include "cavq/error.hpp"

namespace cavq {

Nanos GateTimes::duration(const Gate& g) const {
  switch (g.kind) {
    case GateKind::kCX: return cx;
    case GateKind::kSwap: return lattice_swap();
    case GateKind::kSwapIn:
    case GateKind::kSwapOut: return swap_io;
    case GateKind::kMeasure: return measure;
    default: return single_qubit;
  }
}

void GateTimes::validate() const {
  require(single_qubit >= 0 && cx >= 0 && swap_io >= 0 && measure >= 0,
          "gate durations must be non-negative");
}

Schedule asap_schedule(const PhysicalCircuit& pc, const GateTimes& gt) {
  gt.validate();
  const std::size_t nr = pc.topology.num_resources();
  Schedule s;
  s.resource_class.resize(nr);
  for (std::size_t r = 0; r < nr; ++r) s.resource_class[r] = pc.topology.resource(r).cls;
  s.initial_placement = pc.initial_placement;
  s.final_placement = pc.final_placement;
  s.live_from.assign(nr, -1);
  for (std::size_t r : pc.initial_placement) s.live_from.at(r) = 0;

  std::vector<Nanos> ready(nr, 0);
  std::vector<std::size_t> measures;
  for (std::size_t i = 0; i < pc.gates.size(); ++i) {
    const Gate& g = pc.gates[i];
    for (std::size_t k = 0; k < g.arity(); ++k)
      require(g.q[k] < nr, "gate operand outside the topology");
    if (g.kind == GateKind::kMeasure) {
      measures.push_back(i);
      continue;
    }
    Nanos start = ready[g.q[0]];
    if (g.arity() == 2) start = std::max(start, ready[g.q[1]]);
    const Nanos d = gt.duration(g);
    s.events.push_back({g, i, start, d});
    for (std::size_t k = 0; k < g.arity(); ++k) {
      ready[g.q[k]] = start + d;
      if (s.live_from[g.q[k]] < 0) s.live_from[g.q[k]] = start;
    }
    s.makespan = std::max(s.makespan, start + d);
  }
  for (std::size_t i : measures) {
    const Gate& g = pc.gates[i];
    s.events.push_back({g, i, s.makespan, gt.measure});
    if (s.live_from[g.q[0]] < 0) s.live_from[g.q[0]] = s.makespan;
  }
  std::stable_sort(s.events.begin(), s.events.end(),
                   [](const ScheduledEvent& a, const ScheduledEvent& b) {
                     return a.start < b.start;
                   });
  return s;
}

IdleReport idle_report(const Schedule& s) {
  const std::size_t nr = s.num_resources();
  IdleReport rep;
  rep.gaps.assign(nr, {});
  rep.total.assign(nr, 0);
  std::vector<std::vector<std::pair<Nanos, Nanos>>> busy(nr);
  for (const auto& e : s.events) {
    if (e.duration == 0) continue;
    for (std::size_t k = 0; k < e.gate.arity(); ++k)
      busy[e.gate.q[k]].emplace_back(e.start, e.end());
  }
  for (std::size_t r = 0; r < nr; ++r) {
    if (s.live_from[r] < 0) continue;
    auto& b = busy[r];
    std::sort(b.begin(), b.end());
    Nanos cursor = s.live_from[r];
    for (const auto& [lo, hi] : b) {
      if (lo > cursor) rep.gaps[r].push_back({cursor, lo - cursor});
      cursor = std::max(cursor, hi);
    }
    if (s.makespan > cursor) rep.gaps[r].push_back({cursor, s.makespan - cursor});
    for (const auto& g : rep.gaps[r]) rep.total[r] += g.length;
    rep.sum += rep.total[r];
  }
  return rep;
}

}  // namespace cavq
