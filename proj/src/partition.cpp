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

#include "cavq/partition.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cavq/error.hpp"
#include "cavq/rng.hpp"

namespace cavq {

void InteractionGraph::add(std::size_t a, std::size_t b, double w) {
  require(a != b, "interaction graph has no self-edges");
  require(a < n_ && b < n_, "interaction node out of range");
  w_[{std::min(a, b), std::max(a, b)}] += w;
}

double InteractionGraph::weight(std::size_t a, std::size_t b) const {
  auto it = w_.find({std::min(a, b), std::max(a, b)});
  return it == w_.end() ? 0.0 : it->second;
}

double InteractionGraph::total_weight() const {
  double s = 0.0;
  for (const auto& [_, w] : w_) s += w;
  return s;
}

std::vector<std::vector<std::pair<std::size_t, double>>>
InteractionGraph::adjacency() const {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n_);
  for (const auto& [e, w] : w_) {
    adj[e.first].emplace_back(e.second, w);
    adj[e.second].emplace_back(e.first, w);
  }
  return adj;
}

std::vector<std::size_t> Groupings::members(std::size_t group) const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < assignment.size(); ++q)
    if (assignment[q] == group) out.push_back(q);
  return out;
}

std::vector<std::size_t> Groupings::loads() const {
  std::vector<std::size_t> out(capacities.size(), 0);
  for (std::size_t g : assignment)
    if (g < out.size()) ++out[g];
  return out;
}

void Groupings::validate() const {
  for (std::size_t q = 0; q < assignment.size(); ++q)
    require(assignment[q] < capacities.size(),
            "qubit " + std::to_string(q) + " assigned to an unknown cavity");
  const auto l = loads();
  for (std::size_t g = 0; g < l.size(); ++g)
    require(l[g] <= capacities[g],
            "cavity " + std::to_string(g) + " exceeds its capacity");
}

InteractionGraph build_interaction_graph(const Hamiltonian& h) {
  InteractionGraph g(h.num_qubits);
  for (const auto& t : h.terms) {
    const auto act = t.active_qubits();
    for (std::size_t i = 1; i < act.size(); ++i) g.add(act[i - 1], act[i]);
  }
  return g;
}

InteractionGraph interaction_graph_of(const LogicalCircuit& c) {
  InteractionGraph g(c.num_qubits);
  for (const auto& gate : c.gates)
    if (gate.arity() == 2) g.add(gate.q[0], gate.q[1]);
  return g;
}

double cut_weight(const InteractionGraph& g, const Groupings& groups) {
  double s = 0.0;
  for (const auto& [e, w] : g.edges())
    if (groups.assignment.at(e.first) != groups.assignment.at(e.second)) s += w;
  return s;
}

namespace {

constexpr double kEps = 1e-12;

// Dense working state for refinement: conn[u][g] is the weight between u and
// the current members of group g.
class Refiner {
 public:
  Refiner(const InteractionGraph& g, std::size_t k, std::size_t cap)
      : n_(g.num_nodes()), k_(k), cap_(cap), w_(n_ * n_, 0.0) {
    for (const auto& [e, wt] : g.edges()) {
      w_[e.first * n_ + e.second] = wt;
      w_[e.second * n_ + e.first] = wt;
    }
  }

  double cut(const std::vector<std::size_t>& a) const {
    double s = 0.0;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (a[u] != a[v]) s += w(u, v);
    return s;
  }

  void refine(std::vector<std::size_t>& a) const {
    while (pass(a) > kEps) {
    }
  }

  // Greedy seeding: heaviest nodes first, each into the group it is least
  // connected to.
  std::vector<std::size_t> seed() const {
    std::vector<double> deg(n_, 0.0);
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = 0; v < n_; ++v) deg[u] += w(u, v);
    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return deg[x] > deg[y]; });
    std::vector<std::size_t> a(n_, k_), load(k_, 0);
    std::vector<double> conn(k_);
    for (std::size_t u : order) {
      std::fill(conn.begin(), conn.end(), 0.0);
      for (std::size_t v = 0; v < n_; ++v)
        if (a[v] < k_) conn[a[v]] += w(u, v);
      std::size_t best = k_;
      for (std::size_t g = 0; g < k_; ++g) {
        if (load[g] >= cap_) continue;
        if (best == k_ || conn[g] < conn[best] - kEps ||
            (conn[g] <= conn[best] + kEps && load[g] < load[best]))
          best = g;
      }
      a[u] = best;
      ++load[best];
    }
    return a;
  }

  std::vector<std::size_t> random_start(Rng& rng) const {
    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n_; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
    std::vector<std::size_t> a(n_, 0), load(k_, 0);
    for (std::size_t u : order) {
      std::vector<std::size_t> open;
      for (std::size_t g = 0; g < k_; ++g)
        if (load[g] < cap_) open.push_back(g);
      const std::size_t g = open[rng.index(open.size())];
      a[u] = g;
      ++load[g];
    }
    return a;
  }

 private:
  double w(std::size_t u, std::size_t v) const { return w_[u * n_ + v]; }

  // One Fiduccia-Mattheyses pass over moves and swaps; keeps the best prefix
  // and returns its total gain.
  double pass(std::vector<std::size_t>& a) const {
    std::vector<double> conn(n_ * k_, 0.0);
    std::vector<std::size_t> load(k_, 0);
    for (std::size_t u = 0; u < n_; ++u) {
      ++load[a[u]];
      for (std::size_t v = 0; v < n_; ++v) conn[u * k_ + a[v]] += w(u, v);
    }
    auto relocate = [&](std::size_t u, std::size_t to) {
      const std::size_t from = a[u];
      for (std::size_t v = 0; v < n_; ++v) {
        conn[v * k_ + from] -= w(u, v);
        conn[v * k_ + to] += w(u, v);
      }
      --load[from];
      ++load[to];
      a[u] = to;
    };
    // Gain of moving u to h (cut weight increase).
    auto move_gain = [&](std::size_t u, std::size_t h) {
      return conn[u * k_ + a[u]] - conn[u * k_ + h];
    };

    std::vector<bool> locked(n_, false);
    struct Step {
      std::size_t u, v, gu, gv;  // v == n_ for a single move
    };
    std::vector<Step> log;
    double total = 0.0, best_total = 0.0;
    std::size_t best_len = 0;
    for (;;) {
      bool found = false;
      double best_gain = 0.0;
      Step pick{};
      for (std::size_t u = 0; u < n_; ++u) {
        if (locked[u]) continue;
        for (std::size_t h = 0; h < k_; ++h) {
          if (h == a[u] || load[h] >= cap_) continue;
          const double g = move_gain(u, h);
          if (!found || g > best_gain + kEps) {
            found = true;
            best_gain = g;
            pick = {u, n_, a[u], h};
          }
        }
        for (std::size_t v = u + 1; v < n_; ++v) {
          if (locked[v] || a[v] == a[u]) continue;
          const double g = move_gain(u, a[v]) + move_gain(v, a[u]) + 2.0 * w(u, v);
          if (!found || g > best_gain + kEps) {
            found = true;
            best_gain = g;
            pick = {u, v, a[u], a[v]};
          }
        }
      }
      if (!found) break;
      if (pick.v == n_) {
        relocate(pick.u, pick.gv);
      } else {
        relocate(pick.u, pick.gv);
        relocate(pick.v, pick.gu);
        locked[pick.v] = true;
      }
      locked[pick.u] = true;
      log.push_back(pick);
      total += best_gain;
      if (total > best_total + kEps) {
        best_total = total;
        best_len = log.size();
      }
    }
    for (std::size_t i = log.size(); i > best_len; --i) {
      const Step& s = log[i - 1];
      if (s.v == n_) {
        relocate(s.u, s.gu);
      } else {
        relocate(s.u, s.gu);
        relocate(s.v, s.gv);
      }
    }
    return best_total;
  }

  std::size_t n_, k_, cap_;
  std::vector<double> w_;
};

}  // namespace

Groupings kway_partition(const InteractionGraph& g, std::size_t k,
                         std::size_t capacity, std::uint64_t seed,
                         const PartitionOptions& opts) {
  require(k >= 1, "partition needs at least one group");
  if (k * capacity < g.num_nodes())
    fail(ErrorCode::kInfeasible,
         std::to_string(g.num_nodes()) + " qubits do not fit in " +
             std::to_string(k) + " cavities of " + std::to_string(capacity) +
             " modes");
  Groupings out;
  out.capacities.assign(k, capacity);
  if (g.num_nodes() == 0) return out;

  const Refiner r(g, k, capacity);
  std::vector<std::size_t> best = r.seed();
  r.refine(best);
  double best_cut = r.cut(best);
  Rng rng(derive_seed(seed, 0x9a27));
  for (std::size_t i = 1; i < opts.restarts; ++i) {
    auto a = r.random_start(rng);
    r.refine(a);
    const double c = r.cut(a);
    if (c > best_cut + kEps) {
      best_cut = c;
      best = std::move(a);
    }
  }
  out.assignment = std::move(best);
  return out;
}

bool is_local_term(const PauliTerm& term, const Groupings& groups) {
  const auto act = term.active_qubits();
  if (act.size() < 2) return false;
  for (std::size_t q : act)
    if (groups.assignment.at(q) != groups.assignment.at(act[0])) return false;
  return true;
}

std::size_t count_local_terms(const Hamiltonian& h, const Groupings& groups) {
  std::size_t n = 0;
  for (const auto& t : h.terms) n += is_local_term(t, groups);
  return n;
}

TermClassification split_terms(const Hamiltonian& h, const Groupings& groups,
                               const std::vector<std::size_t>& subset) {
  TermClassification out;
  for (std::size_t i : subset) {
    require(i < h.terms.size(), "term index out of range");
    (is_local_term(h.terms[i], groups) ? out.l_terms : out.e_terms).push_back(i);
  }
  return out;
}

TermClassification split_terms(const Hamiltonian& h, const Groupings& groups) {
  std::vector<std::size_t> all(h.terms.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return split_terms(h, groups, all);
}

std::vector<std::size_t> cavity_counts(const PauliTerm& term,
                                       const Groupings& groups) {
  std::vector<std::size_t> c(groups.num_groups(), 0);
  for (std::size_t q : term.active_qubits()) ++c.at(groups.assignment.at(q));
  return c;
}

long term_imbalance(const PauliTerm& term, const Groupings& groups) {
  const auto c = cavity_counts(term, groups);
  if (c.empty()) return 0;
  const std::size_t arg =
      static_cast<std::size_t>(std::max_element(c.begin(), c.end()) - c.begin());
  long rest = 0;
  for (std::size_t g = 0; g < c.size(); ++g)
    if (g != arg) rest += static_cast<long>(c[g]);
  return static_cast<long>(c[arg]) - rest;
}

Groupings apply_plan(const Groupings& groups, const RelocationPlan& plan) {
  Groupings out = groups;
  for (const auto& ex : plan) {
    if (ex.kind == Exchange::Kind::kSwap) {
      std::swap(out.assignment.at(ex.qubit_a), out.assignment.at(ex.qubit_b));
    } else {
      require(ex.to < out.num_groups(), "move targets an unknown cavity");
      out.assignment.at(ex.qubit_a) = ex.to;
    }
  }
  out.validate();
  return out;
}

namespace {

std::size_t count_local(const std::vector<PauliTerm>& terms, const Groupings& g) {
  std::size_t n = 0;
  for (const auto& t : terms) n += is_local_term(t, g);
  return n;
}

}  // namespace

RelocationPlan plan_reallocation(const std::vector<PauliTerm>& l_terms,
                                 const Groupings& groups) {
  require(!l_terms.empty(), "reallocation needs at least one pending term");
  const std::size_t n = groups.assignment.size();
  const std::size_t k = groups.num_groups();
  std::vector<std::size_t> freq(n, 0);
  for (const auto& t : l_terms) {
    require(t.width() == n, "pending term width does not match the groupings");
    for (std::size_t q : t.active_qubits()) ++freq[q];
  }

  // Majority qubit per cavity among pending-term appearances.
  std::vector<std::size_t> majority(k, n);
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t g = groups.assignment[q];
    if (freq[q] == 0) continue;
    if (majority[g] == n || freq[q] > freq[majority[g]]) majority[g] = q;
  }
  std::vector<std::size_t> active;
  for (std::size_t g = 0; g < k; ++g)
    if (majority[g] != n) active.push_back(g);

  RelocationPlan plan;
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i + 1 < active.size(); i += 2) {
    const std::size_t a = majority[active[i]], b = majority[active[i + 1]];
    plan.push_back({Exchange::Kind::kSwap, a, b, 0});
    used[a] = used[b] = true;
  }
  if (active.size() % 2 == 1) {
    const std::size_t lone = active.back();
    const std::size_t q = majority[lone];
    // Partner: prefer idle cavities, then any other; the partner qubit is the
    // lowest-index member not already moving.
    std::vector<std::size_t> candidates;
    for (std::size_t g = 0; g < k; ++g)
      if (g != lone && majority[g] == n) candidates.push_back(g);
    for (std::size_t g = 0; g < k; ++g)
      if (g != lone && majority[g] != n) candidates.push_back(g);
    bool paired = false;
    for (std::size_t g : candidates) {
      for (std::size_t r : groups.members(g)) {
        if (used[r]) continue;
        plan.push_back({Exchange::Kind::kSwap, q, r, 0});
        used[q] = used[r] = true;
        paired = true;
        break;
      }
      if (paired) break;
    }
    if (!paired) {
      const auto loads = groups.loads();
      std::size_t to = k;
      for (std::size_t g = 0; g < k; ++g) {
        if (g == lone || loads[g] >= groups.capacities[g]) continue;
        if (to == k || loads[g] < loads[to]) to = g;
      }
      if (to != k) plan.push_back({Exchange::Kind::kMove, q, q, to});
    }
  }

  if (!plan.empty() &&
      count_local(l_terms, apply_plan(groups, plan)) < l_terms.size())
    return plan;

  // Fallback: move the most frequent pending qubit to the least-loaded other
  // cavity with a free mode.
  std::size_t best_q = 0;
  for (std::size_t q = 1; q < n; ++q)
    if (freq[q] > freq[best_q]) best_q = q;
  const auto loads = groups.loads();
  std::size_t to = k;
  for (std::size_t g = 0; g < k; ++g) {
    if (g == groups.assignment[best_q] || loads[g] >= groups.capacities[g]) continue;
    if (to == k || loads[g] < loads[to]) to = g;
  }
  if (to == k)
    fail(ErrorCode::kInfeasible, "no reallocation makes progress");
  return {{Exchange::Kind::kMove, best_q, best_q, to}};
}

}  // namespace cavq
