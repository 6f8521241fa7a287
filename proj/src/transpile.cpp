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

#include "cavq/transpile.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "cavq/cavity_machine.hpp"
#include "cavq/error.hpp"

namespace cavq {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::size_t routing_weight(const Gate& g) {
  if (!g.routing) return 0;
  return g.kind == GateKind::kSwap ? 3 : 1;
}

PhysicalCircuit finish_machine(const Topology& topo, CavityMachine& m,
                               std::vector<std::size_t> initial) {
  m.finish();
  PhysicalCircuit pc(topo);
  pc.initial_placement = std::move(initial);
  pc.final_placement = m.placement();
  pc.gates = m.take_gates();
  return pc;
}

Topology default_cavity_topology(const Groupings& groups) {
  std::size_t modes = 1;
  for (std::size_t c : groups.capacities) modes = std::max(modes, c);
  return build_cavity(std::max<std::size_t>(2, groups.num_groups()), modes);
}

}  // namespace

RoutingMetrics count_metrics(const PhysicalCircuit& pc) {
  RoutingMetrics m;
  std::vector<std::size_t> layer(pc.topology.num_resources(), 0);
  for (const Gate& g : pc.gates) {
    switch (g.kind) {
      case GateKind::kCX: ++m.cx_count; break;
      case GateKind::kSwap: ++m.swap_route_count; break;
      case GateKind::kSwapIn:
      case GateKind::kSwapOut: ++m.swap_io_count; break;
      case GateKind::kMeasure: break;
      default: ++m.single_qubit_count; break;
    }
    m.routing_overhead += routing_weight(g);
    if (g.kind == GateKind::kMeasure) continue;
    std::size_t l = layer.at(g.q[0]);
    if (g.arity() == 2) l = std::max(l, layer.at(g.q[1]));
    ++l;
    layer[g.q[0]] = l;
    if (g.arity() == 2) layer[g.q[1]] = l;
    m.depth = std::max(m.depth, l);
  }
  return m;
}

void validate_physical(const PhysicalCircuit& pc) {
  const Topology& topo = pc.topology;
  const std::size_t nr = topo.num_resources();
  std::vector<std::size_t> occ(nr, kNone);
  std::vector<std::size_t> pos = pc.initial_placement;
  for (std::size_t q = 0; q < pos.size(); ++q) {
    require(pos[q] < nr, "initial placement out of range");
    require(occ[pos[q]] == kNone, "two qubits share an initial resource");
    occ[pos[q]] = q;
  }
  auto swap_occ = [&](std::size_t a, std::size_t b) {
    std::swap(occ[a], occ[b]);
    if (occ[a] != kNone) pos[occ[a]] = a;
    if (occ[b] != kNone) pos[occ[b]] = b;
  };
  for (std::size_t i = 0; i < pc.gates.size(); ++i) {
    const Gate& g = pc.gates[i];
    const std::string where =
        "gate " + std::to_string(i) + " (" + std::string(gate_name(g.kind)) + ")";
    for (std::size_t k = 0; k < g.arity(); ++k)
      require(g.q[k] < nr, where + ": resource out of range");
    switch (g.kind) {
      case GateKind::kCX:
      case GateKind::kSwap:
        require(topo.has_edge(g.q[0], g.q[1], EdgeKind::kTransmonTransmon),
                where + ": operands are not coupled transmons");
        // Routing SWAPs move states; a logical SWAP leaves every wire in place.
        if (g.kind == GateKind::kSwap && g.routing) swap_occ(g.q[0], g.q[1]);
        break;
      case GateKind::kSwapOut:
        require(topo.has_edge(g.q[0], g.q[1], EdgeKind::kCavityIO),
                where + ": no cavity I/O link");
        require(occ[g.q[0]] == kNone, where + ": transmon is occupied");
        swap_occ(g.q[0], g.q[1]);
        break;
      case GateKind::kSwapIn:
        require(topo.has_edge(g.q[0], g.q[1], EdgeKind::kCavityIO),
                where + ": no cavity I/O link");
        require(occ[g.q[1]] == kNone, where + ": mode is occupied");
        swap_occ(g.q[0], g.q[1]);
        break;
      case GateKind::kMeasure:
        break;
      default:
        require(topo.resource(g.q[0]).cls == ResourceClass::kTransmon,
                where + ": gates act on transmons only");
        break;
    }
  }
  require(pos == pc.final_placement,
          "replayed placement disagrees with the recorded final placement");
}

Entangler cavity_entangler(const PauliTerm& term, const Groupings& groups,
                           const Topology* topo) {
  const auto actives = term.active_qubits();
  if (actives.size() < 2 || is_local_term(term, groups)) return Entangler::chain();
  const std::size_t k = groups.num_groups();
  std::vector<std::deque<std::size_t>> left(k);
  for (std::size_t q : actives) left[groups.assignment.at(q)].push_back(q);
  const bool mixed = term_imbalance(term, groups) >= 2;

  auto cavities_left = [&] {
    std::size_t n = 0;
    for (const auto& l : left) n += !l.empty();
    return n;
  };
  std::vector<std::size_t> order;
  std::size_t prev = kNone;
  while (order.size() < actives.size()) {
    if (mixed && !order.empty() && cavities_left() == 1) break;
    std::size_t pick = kNone;
    for (std::size_t g = 0; g < k; ++g) {
      if (g == prev || left[g].empty()) continue;
      if (pick == kNone || left[g].size() > left[pick].size()) {
        pick = g;
        continue;
      }
      if (left[g].size() == left[pick].size() && topo && prev != kNone) {
        const bool adj_g = topo->adjacent(topo->transmon_of_cavity(g),
                                          topo->transmon_of_cavity(prev));
        const bool adj_p = topo->adjacent(topo->transmon_of_cavity(pick),
                                          topo->transmon_of_cavity(prev));
        if (adj_g && !adj_p) pick = g;
      }
    }
    if (pick == kNone) pick = prev;
    order.push_back(left[pick].front());
    left[pick].pop_front();
    prev = pick;
  }
  Entangler e;
  if (mixed) {
    e.kind = EntanglerKind::kMixed;
    e.split_index = order.size() - 1;
    for (const auto& l : left)
      for (std::size_t q : l) order.push_back(q);
  }
  e.order = std::move(order);
  return e;
}

PhysicalCircuit transpile_term(const PauliTerm& term, double theta,
                               const Groupings& groups, const Topology& topo) {
  if (is_local_term(term, groups))
    fail(ErrorCode::kInvalidArgument,
         "term " + term.label() + " lies inside one cavity and needs reallocation");
  CavityMachine m(topo, groups);
  const auto initial = m.placement();
  m.run_term(term, theta);
  return finish_machine(topo, m, initial);
}

PhysicalCircuit transpile_term(const PauliTerm& term, double theta,
                               const Groupings& groups) {
  return transpile_term(term, theta, groups, default_cavity_topology(groups));
}

PhysicalCircuit emit_two_qubit_protocol(const Topology& topo,
                                        const Groupings& groups, std::size_t qa,
                                        std::size_t qb, const LogicalCircuit& core) {
  require(qa < groups.assignment.size() && qb < groups.assignment.size(),
          "protocol operand out of range");
  if (groups.assignment[qa] == groups.assignment[qb])
    fail(ErrorCode::kInvalidArgument,
         "protocol operands share a cavity; use the entangler machinery");
  require(core.num_qubits == 2, "protocol core must be a two-qubit circuit");
  core.validate();
  CavityMachine m(topo, groups);
  const auto initial = m.placement();
  m.touch(qa);
  m.touch(qb);
  const std::size_t map[2] = {qa, qb};
  for (const Gate& g : core.gates) {
    if (g.kind == GateKind::kCX) {
      m.cx(map[g.q[0]], map[g.q[1]]);
    } else if (g.kind == GateKind::kSwap) {
      m.cx(map[g.q[0]], map[g.q[1]]);
      m.cx(map[g.q[1]], map[g.q[0]]);
      m.cx(map[g.q[0]], map[g.q[1]]);
    } else {
      m.gate1(map[g.q[0]], g.kind, g.angle);
    }
  }
  return finish_machine(topo, m, initial);
}

PhysicalCircuit emit_naive_same_cavity(const Topology& topo,
                                       const Groupings& groups, std::size_t qa,
                                       std::size_t qb) {
  require(qa < groups.assignment.size() && qb < groups.assignment.size() && qa != qb,
          "invalid operands");
  require(groups.assignment[qa] == groups.assignment[qb],
          "naive sequence is for qubits that share a cavity");
  CavityMachine m(topo, groups);
  const auto initial = m.placement();
  m.cx(qa, qb);
  return finish_machine(topo, m, initial);
}

namespace {

void check_cavity_inputs(const Hamiltonian& h, const Topology& topo) {
  h.validate();
  require(topo.is_cavity(), "cavity transpiler needs a cavity topology");
  if (h.num_qubits > topo.num_cavities() * topo.modes_per_cavity())
    fail(ErrorCode::kInfeasible,
         std::to_string(h.num_qubits) + " qubits exceed the " +
             std::to_string(topo.num_cavities() * topo.modes_per_cavity()) +
             " available cavity modes");
}

// Executes every term of h: E terms in Hamiltonian order, then reallocation
// for whatever is still confined to one cavity, until nothing is pending.
void run_terms(CavityMachine& m, const Hamiltonian& h,
               const std::vector<double>& thetas,
               std::vector<std::size_t>& term_order, CavityTranspileResult* info) {
  require(thetas.size() == h.terms.size() || thetas.size() == 1,
          "need one angle per term or a single shared angle");
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < h.terms.size(); ++i)
    if (!h.terms[i].is_identity()) pending.push_back(i);
  while (!pending.empty()) {
    const auto split = split_terms(h, m.groupings(), pending);
    for (std::size_t i : split.e_terms) {
      m.run_term(h.terms[i], thetas.size() == 1 ? thetas[0] : thetas[i]);
      term_order.push_back(i);
    }
    if (split.l_terms.empty()) break;
    std::vector<PauliTerm> local;
    for (std::size_t i : split.l_terms) local.push_back(h.terms[i]);
    const RelocationPlan plan = plan_reallocation(local, m.groupings());
    m.apply_plan(plan);
    if (info) {
      ++info->passes;
      info->exchanges += plan.size();
    }
    pending = split.l_terms;
  }
}

}  // namespace

PhysicalCircuit transpile_cavity(const Hamiltonian& h,
                                 const std::vector<double>& thetas,
                                 const Topology& topo, const Groupings& groups,
                                 const TranspileOptions& opts,
                                 CavityTranspileResult* info) {
  check_cavity_inputs(h, topo);
  require(groups.assignment.size() == h.num_qubits,
          "groupings cover a different number of qubits");
  CavityMachine m(topo, groups);
  const auto initial = m.placement();
  if (info) {
    *info = {};
    info->initial_groupings = groups;
  }
  std::vector<std::size_t> order;
  run_terms(m, h, thetas, order, info);
  if (info) info->final_groupings = m.groupings();
  PhysicalCircuit pc = finish_machine(topo, m, initial);
  pc.term_order = std::move(order);
  return opts.cancel_swaps ? cancel_swaps(pc) : pc;
}

PhysicalCircuit transpile_cavity(const Hamiltonian& h,
                                 const std::vector<double>& thetas,
                                 const Topology& topo, std::uint64_t seed,
                                 const TranspileOptions& opts,
                                 CavityTranspileResult* info) {
  check_cavity_inputs(h, topo);
  const Groupings groups =
      kway_partition(build_interaction_graph(h), topo.num_cavities(),
                     topo.modes_per_cavity(), seed, opts.partition);
  return transpile_cavity(h, thetas, topo, groups, opts, info);
}

PhysicalCircuit transpile_circuit_cavity(const LogicalCircuit& c,
                                         const Topology& topo,
                                         const Groupings& groups) {
  c.validate();
  require(groups.assignment.size() == c.num_qubits,
          "groupings cover a different number of qubits");
  CavityMachine m(topo, groups);
  const auto initial = m.placement();
  for (const Gate& g : just_in_time_order(c.gates)) {
    switch (g.kind) {
      case GateKind::kCX:
        m.cx(g.q[0], g.q[1]);
        break;
      case GateKind::kSwap:
        m.cx(g.q[0], g.q[1]);
        m.cx(g.q[1], g.q[0]);
        m.cx(g.q[0], g.q[1]);
        break;
      case GateKind::kMeasure:
        m.measure(g.q[0]);
        break;
      default:
        m.gate1(g.q[0], g.kind, g.angle);
        break;
    }
  }
  return finish_machine(topo, m, initial);
}

PhysicalCircuit transpile_qaoa_cavity(const ProblemGraph& g,
                                      const std::vector<double>& gammas,
                                      const std::vector<double>& betas,
                                      const Topology& topo,
                                      const Groupings& groups) {
  require(gammas.size() == betas.size(), "qaoa needs matching gamma and beta counts");
  const Hamiltonian cost = maxcut_hamiltonian(g);
  check_cavity_inputs(cost, topo);
  require(groups.assignment.size() == g.num_nodes,
          "groupings cover a different number of qubits");
  CavityMachine m(topo, groups);
  const auto initial = m.placement();
  for (std::size_t q = 0; q < g.num_nodes; ++q) m.gate1(q, GateKind::kH);
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    run_terms(m, cost, {gammas[k]}, order, nullptr);
    for (std::size_t q = 0; q < g.num_nodes; ++q)
      m.gate1(q, GateKind::kRX, 2.0 * betas[k]);
  }
  PhysicalCircuit pc = finish_machine(topo, m, initial);
  pc.term_order = std::move(order);
  return cancel_swaps(pc);
}

PhysicalCircuit cancel_swaps(const PhysicalCircuit& pc) {
  const std::size_t nr = pc.topology.num_resources();
  std::vector<Gate> out;
  out.reserve(pc.gates.size());
  std::vector<bool> alive;
  alive.reserve(pc.gates.size());
  std::vector<std::vector<std::size_t>> last(nr);
  auto touches = [](const Gate& g, auto&& fn) {
    fn(g.q[0]);
    if (g.arity() == 2) fn(g.q[1]);
  };
  for (const Gate& g : pc.gates) {
    const bool io = g.kind == GateKind::kSwapIn || g.kind == GateKind::kSwapOut;
    if (io && !last[g.q[0]].empty() && !last[g.q[1]].empty() &&
        last[g.q[0]].back() == last[g.q[1]].back()) {
      const std::size_t k = last[g.q[0]].back();
      const Gate& prev = out[k];
      const bool opposite =
          (prev.kind == GateKind::kSwapIn && g.kind == GateKind::kSwapOut) ||
          (prev.kind == GateKind::kSwapOut && g.kind == GateKind::kSwapIn);
      if (opposite && prev.q == g.q) {
        alive[k] = false;
        last[g.q[0]].pop_back();
        last[g.q[1]].pop_back();
        continue;
      }
    }
    touches(g, [&](std::size_t r) { last.at(r).push_back(out.size()); });
    out.push_back(g);
    alive.push_back(true);
  }
  PhysicalCircuit res = pc;
  res.gates.clear();
  for (std::size_t i = 0; i < out.size(); ++i)
    if (alive[i]) res.gates.push_back(out[i]);
  return res;
}

std::vector<std::size_t> initial_layout(const LogicalCircuit& c,
                                        const Topology& topo, InitialLayout kind) {
  const std::size_t n = c.num_qubits;
  require(!topo.is_cavity(), "lattice layout needs a lattice topology");
  if (n > topo.num_transmons())
    fail(ErrorCode::kInfeasible, std::to_string(n) + " qubits exceed the " +
                                     std::to_string(topo.num_transmons()) +
                                     " transmons");
  std::vector<std::size_t> layout(n);
  std::iota(layout.begin(), layout.end(), std::size_t{0});
  if (kind == InitialLayout::kTrivial || n == 0) return layout;

  const InteractionGraph ig = interaction_graph_of(c);
  const auto adj = ig.adjacency();
  const std::size_t np = topo.num_resources();
  std::vector<double> deg(n, 0.0);
  for (std::size_t q = 0; q < n; ++q)
    for (const auto& [_, w] : adj[q]) deg[q] += w;

  std::vector<std::size_t> sumdist(np, 0);
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t r = 0; r < np; ++r) sumdist[p] += topo.distance(p, r);

  std::vector<std::size_t> placed_at(n, kNone);
  std::vector<bool> used(np, false);
  std::vector<std::size_t> placed;
  auto place = [&](std::size_t q) {
    std::size_t best = kNone;
    double best_cost = 0.0;
    std::size_t best_spread = 0;
    for (std::size_t p = 0; p < np; ++p) {
      if (used[p]) continue;
      double cost = 0.0;
      for (const auto& [v, w] : adj[q])
        if (placed_at[v] != kNone) cost += w * static_cast<double>(topo.distance(p, placed_at[v]));
      std::size_t spread = 0;
      if (placed.empty())
        spread = sumdist[p];
      else
        for (std::size_t v : placed) spread += topo.distance(p, placed_at[v]);
      const bool better =
          best == kNone || cost < best_cost - 1e-12 ||
          (cost <= best_cost + 1e-12 &&
           (spread < best_spread ||
            (spread == best_spread && topo.degree(p) > topo.degree(best))));
      if (better) {
        best = p;
        best_cost = cost;
        best_spread = spread;
      }
    }
    placed_at[q] = best;
    used[best] = true;
    placed.push_back(q);
  };

  std::vector<std::size_t> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), std::size_t{0});
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [&](std::size_t a, std::size_t b) { return deg[a] > deg[b]; });
  for (std::size_t root : by_degree) {
    if (placed_at[root] != kNone) continue;
    std::queue<std::size_t> frontier;
    place(root);
    frontier.push(root);
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      auto nb = adj[u];
      std::stable_sort(nb.begin(), nb.end(), [](const auto& x, const auto& y) {
        return x.second > y.second || (x.second == y.second && x.first < y.first);
      });
      for (const auto& [v, _] : nb)
        if (placed_at[v] == kNone) {
          place(v);
          frontier.push(v);
        }
    }
  }
  return placed_at;
}

PhysicalCircuit route_lattice(const LogicalCircuit& c, const Topology& topo,
                              InitialLayout layout, std::uint64_t /*seed*/) {
  c.validate();
  std::vector<std::size_t> pos = initial_layout(c, topo, layout);
  std::vector<std::size_t> occ(topo.num_resources(), kNone);
  for (std::size_t q = 0; q < pos.size(); ++q) occ[pos[q]] = q;
  PhysicalCircuit pc(topo);
  pc.initial_placement = pos;
  auto swap = [&](std::size_t a, std::size_t b) {
    Gate g = Gate::two(GateKind::kSwap, a, b);
    g.routing = true;
    pc.gates.push_back(g);
    std::swap(occ[a], occ[b]);
    if (occ[a] != kNone) pos[occ[a]] = a;
    if (occ[b] != kNone) pos[occ[b]] = b;
  };
  for (const Gate& g : c.gates) {
    if (g.arity() == 1) {
      Gate p = g;
      p.q[0] = p.q[1] = pos[g.q[0]];
      pc.gates.push_back(p);
      continue;
    }
    const std::size_t a = g.q[0], b = g.q[1];
    if (topo.distance(pos[a], pos[b]) > 1) {
      const auto path = topo.shortest_path(pos[a], pos[b]);
      for (std::size_t i = 0; i + 2 < path.size(); ++i) swap(path[i], path[i + 1]);
    }
    Gate p = g;
    p.q = {pos[a], pos[b]};
    pc.gates.push_back(p);
  }
  pc.final_placement = pos;
  return pc;
}

PhysicalCircuit lower_physical(const PhysicalCircuit& pc, const LoweringOptions& opts) {
  PhysicalCircuit out = pc;
  out.gates = lower_gates(pc.gates, opts);
  return out;
}

PhysicalCircuit ghz_cavity_circuit(std::size_t modes_per_cavity) {
  require(modes_per_cavity >= 2, "GHZ fixture needs at least two modes per cavity");
  const std::size_t n = 2 * modes_per_cavity;
  const Topology topo = build_cavity(2, modes_per_cavity);
  Groupings groups;
  groups.capacities = {modes_per_cavity, modes_per_cavity};
  for (std::size_t q = 0; q < n; ++q) groups.assignment.push_back(q % 2);
  LogicalCircuit c(n);
  c.h(0);
  for (std::size_t q = 0; q + 1 < n; ++q) c.cx(q, q + 1);
  return transpile_circuit_cavity(c, topo, groups);
}

}  // namespace cavq
