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
#include "cavq/partition.hpp"
#include "oracle.hpp"

using namespace cavq;

namespace {

Hamiltonian ham(std::size_t n, std::initializer_list<const char*> labels) {
  Hamiltonian h(n);
  for (const char* l : labels) h.add(l, 1.0);
  return h;
}

Groupings halves(std::size_t n) {
  Groupings g;
  for (std::size_t q = 0; q < n; ++q) g.assignment.push_back(q < n / 2 ? 0 : 1);
  g.capacities = {n / 2, n - n / 2};
  return g;
}

// Best cut over every assignment of n nodes into 2 groups of at most cap.
double exhaustive_best(const InteractionGraph& g, std::size_t cap) {
  const std::size_t n = g.num_nodes();
  double best = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const auto ones = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (ones > cap || n - ones > cap) continue;
    double w = 0;
    for (const auto& [e, wt] : g.edges())
      if (((mask >> e.first) & 1u) != ((mask >> e.second) & 1u)) w += wt;
    best = std::max(best, w);
  }
  return best;
}

PauliTerm random_local_term(std::mt19937_64& rng, const Groupings& g, std::size_t cavity) {
  auto members = g.members(cavity);
  std::shuffle(members.begin(), members.end(), rng);
  std::uniform_int_distribution<std::size_t> size(2, members.size());
  std::uniform_int_distribution<int> axis(1, 3);
  PauliTerm t;
  t.axes.assign(g.assignment.size(), Pauli::I);
  const std::size_t m = size(rng);
  for (std::size_t i = 0; i < m; ++i) t.axes[members[i]] = static_cast<Pauli>(axis(rng));
  return t;
}

}  // namespace

TEST_CASE("interaction graph edges skip identity positions") {
  const auto g = build_interaction_graph(ham(3, {"XIX"}));
  CHECK(g.edges().size() == 1);
  CHECK(g.weight(0, 2) == 1.0);
  CHECK(build_interaction_graph(ham(2, {"ZZ", "ZZ"})).weight(0, 1) == 2.0);
  CHECK(build_interaction_graph(ham(4, {"IIII"})).edges().empty());
}

TEST_CASE("interaction graph total weight counts consecutive actives") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto h = oracle::random_hamiltonian(rng, 1 + trial % 8, 1 + trial % 12);
    double want = 0;
    for (const auto& t : h.terms) want += std::max<long>(0, static_cast<long>(t.num_active()) - 1);
    CHECK(build_interaction_graph(h).total_weight() == want);
  }
}

TEST_CASE("path graph refinement finds the best balanced split") {
  InteractionGraph g(4);
  g.add(0, 1);
  g.add(1, 2);
  g.add(2, 3);
  const Groupings p = kway_partition(g, 2, 2, 0);
  p.validate();
  CHECK(p.loads() == std::vector<std::size_t>{2, 2});
  CHECK(cut_weight(g, p) == exhaustive_best(g, 2));
  CHECK(cut_weight(g, p) == 3.0);
}

TEST_CASE("edgeless graph gives any balanced split") {
  const Groupings p = kway_partition(InteractionGraph(4), 2, 2, 0);
  CHECK(p.loads() == std::vector<std::size_t>{2, 2});
  CHECK(cut_weight(InteractionGraph(4), p) == 0.0);
}

TEST_CASE("partition infeasible when capacity is too small") {
  try {
    kway_partition(InteractionGraph(5), 2, 2, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInfeasible);
  }
}

TEST_CASE("two-way refinement matches exhaustive search up to 8 nodes") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> coin(0, 1);
  std::uniform_int_distribution<int> weight(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 7;
    InteractionGraph g(n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (coin(rng) < 0.5) g.add(a, b, weight(rng));
    const std::size_t cap = (n + 1) / 2;
    const Groupings p = kway_partition(g, 2, cap, trial);
    p.validate();
    CHECK(cut_weight(g, p) == exhaustive_best(g, cap));
  }
}

TEST_CASE("partition is deterministic and respects capacities") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto h = oracle::random_hamiltonian(rng, 10, 12);
    const auto g = build_interaction_graph(h);
    const std::size_t k = 2 + trial % 3;
    const std::size_t cap = (10 + k - 1) / k + trial % 2;
    const Groupings a = kway_partition(g, k, cap, 1234);
    const Groupings b = kway_partition(g, k, cap, 1234);
    CHECK(a == b);
    for (auto l : a.loads()) CHECK(l <= cap);
  }
}

TEST_CASE("E and L terms") {
  const Groupings g = halves(4);
  const auto h = ham(4, {"ZZII", "ZIZI", "XIII", "IIII", "IIZY"});
  const auto split = split_terms(h, g);
  CHECK(split.l_terms == std::vector<std::size_t>{0, 4});
  CHECK(split.e_terms == std::vector<std::size_t>{1, 2, 3});
  CHECK(count_local_terms(h, g) == 2);
}

TEST_CASE("term imbalance") {
  const Groupings g = halves(4);
  CHECK(cavity_counts(parse_pauli("ZIZI", 1), g) == std::vector<std::size_t>{1, 1});
  CHECK(term_imbalance(parse_pauli("ZIZI", 1), g) == 0);
  CHECK(cavity_counts(parse_pauli("ZZZI", 1), g) == std::vector<std::size_t>{2, 1});
  CHECK(term_imbalance(parse_pauli("ZZZI", 1), g) == 1);
  Groupings wide;
  wide.assignment = {0, 0, 0, 1, 1};
  wide.capacities = {3, 3};
  CHECK(cavity_counts(parse_pauli("ZZZZI", 1), wide) == std::vector<std::size_t>{3, 1});
  CHECK(term_imbalance(parse_pauli("ZZZZI", 1), wide) == 2);
}

TEST_CASE("reallocation exchanges the lowest-index majority qubit") {
  const Groupings g = halves(4);
  const auto plan = plan_reallocation({parse_pauli("ZZII", 1)}, g);
  REQUIRE(plan.size() == 1);
  CHECK(plan[0].kind == Exchange::Kind::kSwap);
  CHECK(plan[0].qubit_a == 0);
  CHECK(plan[0].qubit_b == 2);
  const Groupings after = apply_plan(g, plan);
  CHECK_FALSE(is_local_term(parse_pauli("ZZII", 1), after));
  CHECK_THROWS_AS(plan_reallocation({}, g), Error);
}

TEST_CASE("majority qubit is the one shared by the pending terms") {
  Groupings g;
  g.assignment = {0, 0, 0, 1, 1, 1};
  g.capacities = {3, 3};
  const std::vector<PauliTerm> l{parse_pauli("ZZIIII", 1), parse_pauli("IZZIII", 1)};
  // Counting oracle: q1 appears in both terms.
  std::vector<int> freq(6, 0);
  for (const auto& t : l)
    for (auto q : t.active_qubits()) ++freq[q];
  const auto best = static_cast<std::size_t>(std::max_element(freq.begin(), freq.end()) - freq.begin());
  REQUIRE(best == 1);
  const auto plan = plan_reallocation(l, g);
  REQUIRE_FALSE(plan.empty());
  CHECK(plan[0].qubit_a == best);
  CHECK(count_local_terms([&] {
          Hamiltonian h(6);
          for (const auto& t : l) h.add(t);
          return h;
        }(),
                          apply_plan(g, plan)) == 0);
}

TEST_CASE("reallocation strictly reduces the pending terms") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 11;
    const std::size_t k = 2 + trial % 3;
    Groupings g;
    g.capacities.assign(k, (n + k - 1) / k + trial % 2);
    std::vector<std::size_t> slots;
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t i = 0; i < g.capacities[c]; ++i) slots.push_back(c);
    std::shuffle(slots.begin(), slots.end(), rng);
    g.assignment.assign(slots.begin(), slots.begin() + static_cast<long>(n));
    std::vector<std::size_t> big;
    for (std::size_t c = 0; c < k; ++c)
      if (g.members(c).size() >= 2) big.push_back(c);
    if (big.empty()) continue;
    std::vector<PauliTerm> l;
    const std::size_t count = 1 + trial % 6;
    for (std::size_t i = 0; i < count; ++i)
      l.push_back(random_local_term(rng, g, big[rng() % big.size()]));
    const auto after = apply_plan(g, plan_reallocation(l, g));
    after.validate();
    std::size_t still = 0;
    for (const auto& t : l) still += is_local_term(t, after);
    CHECK(still < l.size());
  }
}

TEST_CASE("groupings validation") {
  Groupings g;
  g.assignment = {0, 0, 0};
  g.capacities = {2, 2};
  CHECK_THROWS_AS(g.validate(), Error);
  g.assignment = {0, 2};
  CHECK_THROWS_AS(g.validate(), Error);
}
