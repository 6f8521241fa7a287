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

#include "cavq/cavity_machine.hpp"

#include <algorithm>
#include <string>

#include "cavq/error.hpp"
#include "cavq/transpile.hpp"

namespace cavq {

CavityMachine::CavityMachine(const Topology& topo, const Groupings& groups)
    : topo_(topo), groups_(groups) {
  require(topo.is_cavity(), "cavity machine needs a cavity topology");
  groups_.validate();
  require(groups_.num_groups() == topo.num_cavities(),
          "groupings and topology disagree on the cavity count");
  for (std::size_t c : groups_.capacities)
    require(c <= topo.modes_per_cavity(), "cavity capacity exceeds its modes");
  const std::size_t n = groups_.assignment.size();
  occupant_.assign(topo.num_resources(), kNone);
  loc_.assign(n, kNone);
  queued_.assign(n, {});
  std::vector<std::size_t> next(topo.num_cavities(), 0);
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t c = groups_.assignment[q];
    const std::size_t r = topo.mode_resource(c, next[c]++);
    loc_[q] = r;
    occupant_[r] = q;
  }
  home_ = loc_;
}

bool CavityMachine::on_transmon(std::size_t q) const {
  return topo_.resource(loc_.at(q)).cls == ResourceClass::kTransmon;
}

void CavityMachine::emit(Gate g) {
  if (g.arity() == 1) g.q[1] = g.q[0];
  gates_.push_back(g);
}

std::size_t CavityMachine::free_mode(std::size_t cavity, std::size_t prefer) const {
  if (prefer != kNone && occupant_[prefer] == kNone &&
      topo_.resource(prefer).cavity == cavity &&
      topo_.resource(prefer).cls == ResourceClass::kCavityMode)
    return prefer;
  for (std::size_t j = 0; j < topo_.modes_per_cavity(); ++j) {
    const std::size_t r = topo_.mode_resource(cavity, j);
    if (occupant_[r] == kNone) return r;
  }
  fail(ErrorCode::kInfeasible,
       "cavity " + std::to_string(cavity) + " has no free mode");
}

void CavityMachine::stash(std::size_t q) {
  const std::size_t t = loc_[q];
  const std::size_t cavity = groups_.assignment[q];
  require(t == topo_.transmon_of_cavity(cavity),
          "qubit must sit on its own cavity transmon to be stored");
  const std::size_t m = free_mode(cavity, home_[q]);
  Gate g = Gate::two(GateKind::kSwapIn, t, m);
  g.routing = true;
  emit(g);
  occupant_[t] = kNone;
  occupant_[m] = q;
  loc_[q] = m;
  home_[q] = m;
}

void CavityMachine::clear_transmon(std::size_t t) {
  if (occupant_[t] != kNone) stash(occupant_[t]);
}

void CavityMachine::fetch(std::size_t q) {
  if (!on_transmon(q)) {
    const std::size_t m = loc_[q];
    const std::size_t t = topo_.transmon_of_cavity(topo_.resource(m).cavity);
    clear_transmon(t);
    Gate g = Gate::two(GateKind::kSwapOut, t, m);
    g.routing = true;
    emit(g);
    occupant_[m] = kNone;
    occupant_[t] = q;
    loc_[q] = t;
  }
  auto& pending = queued_[q];
  while (!pending.empty()) {
    Gate g = pending.front();
    pending.pop_front();
    g.q[0] = g.q[1] = loc_[q];
    emit(g);
  }
}

void CavityMachine::transmon_swap(std::size_t ta, std::size_t tb) {
  Gate g = Gate::two(GateKind::kSwap, ta, tb);
  g.routing = true;
  emit(g);
  const std::size_t a = occupant_[ta], b = occupant_[tb];
  occupant_[ta] = b;
  occupant_[tb] = a;
  if (a != kNone) loc_[a] = tb;
  if (b != kNone) loc_[b] = ta;
}

std::vector<std::size_t> CavityMachine::transmon_path(std::size_t ta,
                                                      std::size_t tb) const {
  // Transmon-transmon edges are the only transmon-to-transmon links, and a
  // path through a mode is never shorter, so the topology path is usable
  // once modes are filtered out.
  std::vector<std::size_t> path{ta};
  std::size_t cur = ta;
  while (cur != tb) {
    std::size_t next = kNone, best = 0;
    for (std::size_t v : topo_.neighbors(cur)) {
      if (topo_.resource(v).cls != ResourceClass::kTransmon) continue;
      const std::size_t d = topo_.distance(v, tb);
      if (next == kNone || d < best) {
        next = v;
        best = d;
      }
    }
    require(next != kNone, "transmons are not connected");
    path.push_back(next);
    cur = next;
  }
  return path;
}

void CavityMachine::gate1(std::size_t q, GateKind kind, double angle) {
  require(q < loc_.size(), "qubit index out of range");
  require(gate_arity(kind) == 1 && kind != GateKind::kMeasure,
          "gate1 expects a single-qubit unitary");
  if (kind == GateKind::kId) return;
  Gate g = Gate::one(kind, loc_[q], angle);
  if (on_transmon(q))
    emit(g);
  else
    queued_[q].push_back(g);
}

void CavityMachine::touch(std::size_t q) {
  require(q < loc_.size(), "qubit index out of range");
  fetch(q);
}

void CavityMachine::measure(std::size_t q) {
  fetch(q);
  emit(Gate::one(GateKind::kMeasure, loc_[q]));
}

void CavityMachine::cx(std::size_t control, std::size_t target) {
  require(control < loc_.size() && target < loc_.size() && control != target,
          "invalid cx operands");
  const std::size_t cc = groups_.assignment[control];
  const std::size_t ct = groups_.assignment[target];
  if (cc == ct) {
    // Same cavity: stage the control on a neighbouring transmon.
    fetch(control);
    const std::size_t t = loc_[control];
    std::size_t u = kNone;
    for (std::size_t v : topo_.neighbors(t))
      if (topo_.resource(v).cls == ResourceClass::kTransmon) {
        u = v;
        break;
      }
    require(u != kNone, "transmon has no transmon neighbour");
    clear_transmon(u);
    transmon_swap(t, u);
    fetch(target);
    emit(Gate::two(GateKind::kCX, u, t));
    stash(target);
    transmon_swap(u, t);
    return;
  }
  fetch(control);
  fetch(target);
  const std::size_t ta = loc_[control], tb = loc_[target];
  if (topo_.adjacent(ta, tb)) {
    emit(Gate::two(GateKind::kCX, ta, tb));
    return;
  }
  const auto path = transmon_path(ta, tb);
  for (std::size_t i = 0; i + 2 < path.size(); ++i) transmon_swap(path[i], path[i + 1]);
  emit(Gate::two(GateKind::kCX, path[path.size() - 2], tb));
  for (std::size_t i = path.size() - 2; i > 0; --i) transmon_swap(path[i - 1], path[i]);
}

void CavityMachine::release_all() {
  for (std::size_t t = 0; t < topo_.num_transmons(); ++t)
    if (occupant_[t] != kNone) stash(occupant_[t]);
}

void CavityMachine::finish() {
  for (std::size_t q = 0; q < loc_.size(); ++q)
    if (!queued_[q].empty()) {
      fetch(q);
      stash(q);
    }
  release_all();
}

void CavityMachine::run_term(const PauliTerm& term, double theta) {
  if (term.is_identity()) return;
  require(term.width() == loc_.size(), "term width does not match the machine");
  const Entangler shape = cavity_entangler(term, groups_, &topo_);
  const LogicalCircuit c = evolution_circuit(term, theta, shape);
  for (const Gate& g : just_in_time_order(c.gates)) {
    if (g.kind == GateKind::kCX)
      cx(g.q[0], g.q[1]);
    else
      gate1(g.q[0], g.kind, g.angle);
  }
  release_all();
}

void CavityMachine::exchange(std::size_t a, std::size_t b) {
  const std::size_t ca = groups_.assignment.at(a), cb = groups_.assignment.at(b);
  require(ca != cb, "exchange needs qubits in different cavities");
  release_all();
  const std::size_t ha = home_[a], hb = home_[b];
  fetch(a);
  fetch(b);
  const auto path = transmon_path(loc_[a], loc_[b]);
  // Carry a next to b's transmon, trade places, and walk b back.
  for (std::size_t i = 0; i + 1 < path.size(); ++i) transmon_swap(path[i], path[i + 1]);
  for (std::size_t i = path.size() - 1; i > 1; --i) transmon_swap(path[i - 2], path[i - 1]);
  groups_.assignment[a] = cb;
  groups_.assignment[b] = ca;
  home_[a] = hb;
  home_[b] = ha;
  stash(a);
  stash(b);
}

void CavityMachine::move(std::size_t q, std::size_t cavity) {
  require(cavity < groups_.num_groups(), "move targets an unknown cavity");
  const std::size_t from = groups_.assignment.at(q);
  if (from == cavity) return;
  const auto loads = groups_.loads();
  if (loads[cavity] >= groups_.capacities[cavity])
    fail(ErrorCode::kInfeasible, "target cavity is full");
  release_all();
  fetch(q);
  const auto path = transmon_path(loc_[q], topo_.transmon_of_cavity(cavity));
  for (std::size_t i = 0; i + 1 < path.size(); ++i) transmon_swap(path[i], path[i + 1]);
  groups_.assignment[q] = cavity;
  home_[q] = kNone;
  stash(q);
}

void CavityMachine::apply_plan(const RelocationPlan& plan) {
  for (const auto& ex : plan) {
    if (ex.kind == Exchange::Kind::kSwap)
      exchange(ex.qubit_a, ex.qubit_b);
    else
      move(ex.qubit_a, ex.to);
  }
}

}  // namespace cavq
