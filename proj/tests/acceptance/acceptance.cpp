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

// Acceptance checks. `cavq_acceptance N` runs criterion N, no argument runs
// all of them. Each prints one "criterion N: PASS|FAIL ..." line.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cavq/bench.hpp"
#include "cavq/densim.hpp"
#include "cavq/io.hpp"
#include "cavq/schedule.hpp"
#include "cavq/transpile.hpp"
#include "cavq/vqa.hpp"
#include "oracle.hpp"

using namespace cavq;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

SimulationResult run_noiseless(const PhysicalCircuit& pc, const NoiseParams& noise) {
  return simulate(asap_schedule(lower_physical(pc, {.expand_swaps = false})), noise);
}

// <psi|rho|psi> with the logical state laid out on the simulator slots.
double slot_fidelity(const SimulationResult& res, const oracle::Vec& logical) {
  const auto slots = res.logical_slots();
  Statevector psi(res.rho.dim(), cplx{});
  for (Eigen::Index i = 0; i < logical.size(); ++i) {
    std::size_t idx = 0;
    bool ok = true;
    for (std::size_t q = 0; q < slots.size(); ++q) {
      if (!((static_cast<std::size_t>(i) >> q) & 1u)) continue;
      if (slots[q] == SimulationResult::kUnbound) {
        ok = false;
        break;
      }
      idx |= std::size_t{1} << slots[q];
    }
    if (ok) psi[idx] += logical(i);
    else if (std::abs(logical(i)) > 1e-12) return 0.0;
  }
  return res.rho.fidelity(psi);
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20260101);
  const std::size_t trials = 240;
  double worst = 1.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const std::size_t terms = 1 + (trial / 5) % 10;
    const Hamiltonian h = oracle::random_hamiltonian(rng, n, terms);
    const std::size_t cavities = 2 + trial % 2;
    const Topology topo = build_cavity(cavities, (n + cavities - 1) / cavities);
    std::vector<double> thetas;
    std::uniform_real_distribution<double> angle(-1.5, 1.5);
    for (std::size_t k = 0; k < terms; ++k) thetas.push_back(angle(rng));
    const PhysicalCircuit pc = transpile_cavity(h, thetas, topo, trial);
    validate_physical(pc);
    const SimulationResult res = run_noiseless(pc, NoiseParams::none());
    const oracle::Vec want =
        oracle::trotter_unitary(h, thetas, pc.term_order) * oracle::zero_state(n);
    worst = std::min(worst, slot_fidelity(res, want));
  }
  const double secs = seconds_since(t0);
  return {worst > 1 - 1e-9 && secs <= 120.0,
          format("%zu Hamiltonians, worst fidelity 1 - %.3g, %.1f s", trials, 1 - worst, secs)};
}

Outcome criterion2() {
  const Topology topo = build_cavity(2, 2);
  Groupings g;
  g.assignment = {0, 0, 1, 1};
  g.capacities = {2, 2};
  LogicalCircuit core(2);
  core.cx(0, 1);
  const PhysicalCircuit proto = emit_two_qubit_protocol(topo, g, 0, 2, core);
  const PhysicalCircuit naive = emit_naive_same_cavity(topo, g, 0, 1);
  const std::size_t depth = count_metrics(proto).depth;
  const Nanos makespan = asap_schedule(proto).makespan;
  const std::size_t naive_depth = count_metrics(naive).depth;
  return {depth == 3 && makespan == 300 && naive_depth == 7,
          format("protocol depth %zu makespan %lld ns, same-cavity fallback depth %zu", depth,
                 static_cast<long long>(makespan), naive_depth)};
}

Outcome criterion3() {
  const Topology t = build_honeycomb(3, 3);
  std::string detail;
  bool pass = true;
  for (std::size_t want = 2; want <= 6; ++want) {
    std::size_t b = 1;
    while (b < t.num_resources() && t.distance(0, b) != want) ++b;
    if (b == t.num_resources()) {
      pass = false;
      detail += format("N=%zu unreachable ", want);
      continue;
    }
    LogicalCircuit c(t.num_resources());
    c.cx(0, b);
    const PhysicalCircuit low = lower_physical(route_lattice(c, t, InitialLayout::kTrivial));
    const std::size_t extra = count_metrics(low).cx_count - 1;
    pass = pass && extra == 3 * (want - 1);
    detail += format("N=%zu:+%zu ", want, extra);
  }
  return {pass, detail};
}

Outcome criterion4() {
  const auto t0 = Clock::now();
  const BenchResult r = bench_routing(BenchConfig::defaults());
  const double secs = seconds_since(t0);
  const ArchSummary& cav = r.summary.at("cavity");
  const ArchSummary& hex = r.summary.at("honeycomb");
  const double ratio = cav.mean_appended.at(22) / hex.mean_appended.at(22);
  const double growth = cav.growth_exponent;
  const double io_growth = fit_growth_exponent(cav.mean_swap_io);
  return {ratio <= 0.5 && growth <= 1.15 && io_growth <= 1.15 && cav.failures == 0 &&
              hex.failures == 0 && secs <= 600.0,
          format("appended at 22 qubits: cavity %.2f honeycomb %.2f (ratio %.3f); cavity "
                 "growth exponent %.3f, swap_io exponent %.3f; %zu rows, %.1f s",
                 cav.mean_appended.at(22), hex.mean_appended.at(22), ratio, growth, io_growth,
                 r.rows.size(), secs)};
}

Outcome criterion5() {
  const auto t0 = Clock::now();
  const NoiseParams noise = NoiseParams::preset("default");
  const double t1 = noise.transmon.t1_ns, t2 = noise.transmon.t2_ns;

  // X, then idle until t = T1 while a neighbour is busy at the end.
  const Topology hex = build_honeycomb(1, 1);
  Schedule s;
  s.resource_class.assign(hex.num_resources(), ResourceClass::kTransmon);
  s.live_from.assign(hex.num_resources(), -1);
  s.live_from[0] = s.live_from[1] = 0;
  s.initial_placement = s.final_placement = {0, 1};
  s.events.push_back({Gate::one(GateKind::kX, 0), 0, 0, 0});
  s.events.push_back({Gate::one(GateKind::kX, 1), 1, static_cast<Nanos>(t1) - 40, 40});
  s.makespan = static_cast<Nanos>(t1);
  const SimulationResult res = simulate(s, noise);
  const double survival = res.rho.marginal({res.slot_of_resource[0]})[1];
  const double survival_err = std::abs(survival - std::exp(-1.0));

  double coherence_err = 0.0, kraus_err = 0.0;
  for (double t : {100.0, 1e4, 1e5, t2, 1e6}) {
    DensityMatrix plus = DensityMatrix::from_statevector({std::sqrt(0.5), std::sqrt(0.5)});
    plus.apply_decay(0, t, t1, t2);
    coherence_err = std::max(coherence_err, std::abs(std::abs(plus(0, 1)) - 0.5 * std::exp(-t / t2)));
    for (const auto& ct : {noise.transmon, noise.cavity})
      kraus_err = std::max(kraus_err, kraus_completeness_error(decay_kraus(t, ct.t1_ns, ct.t2_ns)));
  }
  const double secs = seconds_since(t0);
  return {survival_err <= 1e-6 && coherence_err <= 1e-9 && kraus_err < 1e-14 && secs < 1.0,
          format("survival error %.2g, coherence error %.2g, Kraus residual %.2g, %.3f s",
                 survival_err, coherence_err, kraus_err, secs)};
}

Outcome criterion6() {
  const auto t0 = Clock::now();
  double mean = 0.0;
  std::string each;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    VqaOptions o;
    o.noise = NoiseParams::none();
    o.spsa.iterations = 500;
    o.spsa.seed = seed;
    o.partition_seed = seed;
    const VqaResult r = run_qaoa(ProblemGraph::ring(4), 2, architecture_for("cavity", 4), o);
    mean += r.best_cost / 10.0;
    each += format("%.3f ", r.best_cost);
  }
  const double secs = seconds_since(t0);
  return {mean <= -3.5 && secs <= 120.0,
          format("mean best cost %.4f (optimum -4); seeds: %s; %.1f s", mean, each.c_str(), secs)};
}

Outcome criterion7() {
  const auto t0 = Clock::now();
  const MatrixSpec preset = matrix_preset("mucic-sweep");
  bool pass = true;
  std::string detail;
  for (std::size_t n : {6u, 8u}) {
    std::uint64_t graph_seed = 0;
    for (const auto& c : preset.cells)
      if (c.size == n) graph_seed = c.graph_seed;
    const ProblemGraph g = ProblemGraph::random_cubic(n, graph_seed);
    const Hamiltonian tfim = transverse_field_ising(n);
    for (const char* kind : {"qaoa", "vqe"}) {
      double mean[2] = {0.0, 0.0};
      int a = 0;
      for (const char* arch : {"cavity", "honeycomb"}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
          VqaOptions o;
          o.noise = NoiseParams::preset("default");
          o.spsa.seed = seed;
          o.partition_seed = seed;
          const TopologyConfig topo = architecture_for(arch, n);
          const VqaResult r = std::string(kind) == "qaoa" ? run_qaoa(g, 2, topo, o)
                                                          : run_vqe(tfim, 2, topo, o);
          mean[a] += r.best_cost / 10.0;
        }
        ++a;
      }
      pass = pass && mean[0] <= mean[1];
      detail += format("n=%zu %s cavity %.4f honeycomb %.4f; ", n, kind, mean[0], mean[1]);
    }
  }
  const double secs = seconds_since(t0);
  return {pass && secs <= 1800.0, detail + format("%.0f s", secs)};
}

Outcome criterion8() {
  const auto t0 = Clock::now();
  const PhysicalCircuit pc = ghz_cavity_circuit(2);
  oracle::Vec ghz = oracle::Vec::Zero(16);
  ghz(0) = ghz(15) = 1.0 / std::sqrt(2.0);
  const double ideal = slot_fidelity(run_noiseless(pc, NoiseParams::none()), ghz);
  const double noisy = slot_fidelity(run_noiseless(pc, NoiseParams::preset("default")), ghz);
  const double secs = seconds_since(t0);
  return {ideal >= 1 - 1e-9 && noisy > 0.99 && noisy < 1.0 && secs < 5.0,
          format("noiseless 1 - %.3g, default noise %.6f, %.3f s", 1 - ideal, noisy, secs)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion9() {
  const fs::path root = fs::temp_directory_path() / ("cavq-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(root);
  MatrixSpec spec = matrix_preset("mucic-sweep", 40, 9);
  std::erase_if(spec.cells, [](const MatrixCell& c) { return c.size > 6; });
  for (std::size_t n : {4u, 6u}) {
    MatrixCell v = spec.cells.front();
    v.kind = "vqe";
    v.size = n;
    v.layers = 2;
    v.topology = architecture_for("cavity", n);
    v.id = "vqe-n" + std::to_string(n) + "-cavity";
    spec.cells.push_back(v);
  }
  const std::size_t failed_a = run_experiment_matrix(spec, root / "a", 1);
  const MatrixSpec again = matrix_spec_from_json(read_json_file(root / "a" / "manifest.json"));
  const std::size_t failed_b = run_experiment_matrix(again, root / "b", 1);
  const std::string a = slurp(root / "a" / "aggregate.csv");
  const std::string b = slurp(root / "b" / "aggregate.csv");
  fs::remove_all(root);
  return {failed_a == 0 && failed_b == 0 && !a.empty() && a == b,
          format("%zu cells, aggregate %zu bytes, %s", spec.cells.size(), a.size(),
                 a == b ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3,
                                               criterion4, criterion5, criterion6,
                                               criterion7, criterion8, criterion9};
  int first = 1, last = 9;
  if (argc > 1) {
    first = last = std::atoi(argv[1]);
    if (first < 1 || first > 9) {
      std::fprintf(stderr, "usage: %s [1-9]\n", argv[0]);
      return 2;
    }
  }
  int failures = 0;
  for (int k = first; k <= last; ++k) {
    Outcome o;
    try {
      o = criteria[k - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("criterion %d: %s %s\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
