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

#include "cavq/vqa.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>

#include "cavq/error.hpp"
#include "cavq/rng.hpp"

namespace cavq {

void SpsaConfig::validate() const {
  require(iterations >= 1, "SPSA needs at least one iteration");
  require(a > 0 && c > 0 && big_a >= 0 && alpha > 0 && gamma > 0,
          "SPSA gains must be positive");
}

SpsaResult spsa_minimize(const Objective& f, std::vector<double> initial,
                         const SpsaConfig& cfg) {
  cfg.validate();
  require(!initial.empty(), "SPSA needs at least one parameter");
  Rng rng(cfg.seed);
  const std::size_t dim = initial.size();
  std::vector<double> theta = std::move(initial), delta(dim), plus(dim), minus(dim);
  SpsaResult res;
  res.best_value = std::numeric_limits<double>::infinity();
  res.best_params = theta;
  res.history.reserve(cfg.iterations);
  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    const double ak = cfg.a / std::pow(cfg.big_a + static_cast<double>(k) + 1.0, cfg.alpha);
    const double ck = cfg.c / std::pow(static_cast<double>(k) + 1.0, cfg.gamma);
    for (std::size_t i = 0; i < dim; ++i) {
      delta[i] = rng.rademacher();
      plus[i] = theta[i] + ck * delta[i];
      minus[i] = theta[i] - ck * delta[i];
    }
    const double fp = f(plus);
    const double fm = f(minus);
    res.evaluations += 2;
    if (fp < res.best_value) {
      res.best_value = fp;
      res.best_params = plus;
    }
    if (fm < res.best_value) {
      res.best_value = fm;
      res.best_params = minus;
    }
    const double scale = (fp - fm) / (2.0 * ck);
    for (std::size_t i = 0; i < dim; ++i) theta[i] -= ak * scale / delta[i];
    res.history.push_back(res.best_value);
  }
  res.final_params = std::move(theta);
  return res;
}

namespace {

Topology checked_topology(const TopologyConfig& cfg, std::size_t n) {
  Topology t = build_topology(cfg);
  const std::size_t budget =
      t.is_cavity() ? t.num_cavities() * t.modes_per_cavity() : t.num_transmons();
  if (n > budget)
    fail(ErrorCode::kInfeasible, std::to_string(n) + " qubits exceed the " +
                                     std::to_string(budget) + "-qubit budget of the " +
                                     topology_kind_name(cfg.kind) + " topology");
  return t;
}

}  // namespace

VqaObjective::VqaObjective(Ansatz a, Hamiltonian h, std::size_t layers,
                           Topology topo, VqaOptions opts)
    : ansatz_(a), h_(std::move(h)), layers_(layers), topo_(std::move(topo)),
      opts_(std::move(opts)) {
  opts_.noise.validate();
  opts_.times.validate();
}

VqaObjective VqaObjective::qaoa(const ProblemGraph& g, std::size_t layers,
                                const TopologyConfig& topo, const VqaOptions& opts) {
  Hamiltonian cost = maxcut_hamiltonian(g);
  VqaObjective obj(Ansatz::kQaoa, cost, layers, checked_topology(topo, g.num_nodes), opts);
  obj.graph_ = g;
  if (obj.topo_.is_cavity())
    obj.groups_ = kway_partition(build_interaction_graph(cost), obj.topo_.num_cavities(),
                                 obj.topo_.modes_per_cavity(), opts.partition_seed);
  else
    obj.layout_ = initial_layout(obj.logical_circuit(std::vector<double>(2 * layers, 0.0)),
                                 obj.topo_, InitialLayout::kDegreeMatched);
  return obj;
}

VqaObjective VqaObjective::hardware_efficient(const Hamiltonian& h, std::size_t layers,
                                              const TopologyConfig& topo,
                                              const VqaOptions& opts) {
  h.validate();
  VqaObjective obj(Ansatz::kHardwareEfficient, h, layers,
                   checked_topology(topo, h.num_qubits), opts);
  const LogicalCircuit shape = obj.logical_circuit(std::vector<double>(obj.dimension(), 0.0));
  if (obj.topo_.is_cavity())
    obj.groups_ = kway_partition(interaction_graph_of(shape), obj.topo_.num_cavities(),
                                 obj.topo_.modes_per_cavity(), opts.partition_seed);
  else
    obj.layout_ = initial_layout(shape, obj.topo_, InitialLayout::kDegreeMatched);
  return obj;
}

std::size_t VqaObjective::dimension() const noexcept {
  return ansatz_ == Ansatz::kQaoa ? 2 * layers_ : 2 * h_.num_qubits * layers_;
}

LogicalCircuit VqaObjective::logical_circuit(const std::vector<double>& params) const {
  require(params.size() == dimension(), "parameter count mismatch");
  if (ansatz_ == Ansatz::kHardwareEfficient) return hwe_ansatz(h_.num_qubits, layers_, params);
  std::vector<double> gammas(params.begin(), params.begin() + static_cast<long>(layers_));
  std::vector<double> betas(params.begin() + static_cast<long>(layers_), params.end());
  return qaoa_ansatz(graph_, layers_, gammas, betas);
}

PhysicalCircuit VqaObjective::physical_circuit(const std::vector<double>& params) const {
  require(params.size() == dimension(), "parameter count mismatch");
  if (!topo_.is_cavity())
    return route_lattice(logical_circuit(params), topo_, InitialLayout::kDegreeMatched);
  if (ansatz_ == Ansatz::kQaoa) {
    std::vector<double> gammas(params.begin(), params.begin() + static_cast<long>(layers_));
    std::vector<double> betas(params.begin() + static_cast<long>(layers_), params.end());
    return transpile_qaoa_cavity(graph_, gammas, betas, topo_, groups_);
  }
  return cancel_swaps(transpile_circuit_cavity(logical_circuit(params), topo_, groups_));
}

double VqaObjective::evaluate(const std::vector<double>& params,
                              std::uint64_t shot_seed) const {
  const PhysicalCircuit pc =
      lower_physical(physical_circuit(params), {.expand_swaps = false});
  const Schedule s = asap_schedule(pc, opts_.times);
  const SimulationResult sim = simulate(s, opts_.noise);
  if (opts_.shots == 0) return expectation(sim, h_);

  const auto slots = sim.logical_slots();
  Rng rng(shot_seed);
  double e = h_.offset;
  for (const auto& t : h_.terms) {
    const double v = std::clamp(pauli_expectation(sim.rho, t, slots), -1.0, 1.0);
    const double p_plus = 0.5 * (1.0 + v);
    std::uint64_t plus = 0;
    for (std::uint64_t k = 0; k < opts_.shots; ++k) plus += rng.uniform() < p_plus;
    const double est = (2.0 * static_cast<double>(plus) - static_cast<double>(opts_.shots)) /
                       static_cast<double>(opts_.shots);
    e += t.coefficient * est;
  }
  return e;
}

double VqaObjective::operator()(const std::vector<double>& params) const {
  return evaluate(params, opts_.spsa.seed);
}

std::vector<double> default_initial_params(VqaObjective::Ansatz a, std::size_t dim,
                                           std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x1417));
  std::vector<double> p(dim);
  if (a == VqaObjective::Ansatz::kQaoa) {
    // Linear ramp: gamma grows and beta shrinks across layers.
    const std::size_t layers = dim / 2;
    for (std::size_t k = 0; k < layers; ++k) {
      const double f = (static_cast<double>(k) + 0.5) / static_cast<double>(layers);
      p[k] = 0.8 * f + rng.uniform(-0.1, 0.1);
      p[layers + k] = 0.8 * (1.0 - f) + rng.uniform(-0.1, 0.1);
    }
  } else {
    for (auto& v : p) v = rng.uniform(-std::numbers::pi, std::numbers::pi);
  }
  return p;
}

namespace {

VqaResult run(const VqaObjective& obj, VqaObjective::Ansatz a, const VqaOptions& opts) {
  std::vector<double> init = opts.initial_params;
  if (init.empty()) init = default_initial_params(a, obj.dimension(), opts.spsa.seed);
  require(init.size() == obj.dimension(), "initial parameter count mismatch");
  std::uint64_t calls = 0;
  const Objective f = [&](const std::vector<double>& x) {
    return obj.evaluate(x, derive_seed(opts.spsa.seed, 0x5407, calls++));
  };
  const SpsaResult sp = spsa_minimize(f, init, opts.spsa);
  VqaResult r;
  r.best_cost = sp.best_value;
  r.cost_history = sp.history;
  r.best_params = sp.best_params;
  r.evaluations = sp.evaluations;
  const PhysicalCircuit pc = obj.physical_circuit(sp.best_params);
  r.metrics = count_metrics(pc);
  r.makespan = asap_schedule(lower_physical(pc, {.expand_swaps = false}), opts.times).makespan;
  return r;
}

}  // namespace

VqaResult run_qaoa(const ProblemGraph& g, std::size_t layers, const TopologyConfig& topo,
                   const VqaOptions& opts) {
  const VqaObjective obj = VqaObjective::qaoa(g, layers, topo, opts);
  VqaResult r;
  if (layers == 0) {
    r.best_cost = obj({});
    r.cost_history.assign(1, r.best_cost);
    const PhysicalCircuit pc = obj.physical_circuit({});
    r.metrics = count_metrics(pc);
    r.makespan = asap_schedule(lower_physical(pc, {.expand_swaps = false}), opts.times).makespan;
  } else {
    r = run(obj, VqaObjective::Ansatz::kQaoa, opts);
  }
  if (g.num_nodes <= 20) {
    double w = 0.0;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << g.num_nodes); ++b)
      w = std::max(w, cut_weight_of(g, b));
    r.exact_minimum = -w;
  }
  return r;
}

VqaResult run_vqe(const Hamiltonian& h, std::size_t layers, const TopologyConfig& topo,
                  const VqaOptions& opts) {
  require(layers >= 1, "vqe needs at least one layer");
  const VqaObjective obj = VqaObjective::hardware_efficient(h, layers, topo, opts);
  VqaResult r = run(obj, VqaObjective::Ansatz::kHardwareEfficient, opts);
  if (h.num_qubits <= 12) r.exact_minimum = exact_ground_energy(h);
  return r;
}

namespace {

void apply_hamiltonian(const Hamiltonian& h, const std::vector<cplx>& v, std::vector<cplx>& out) {
  std::fill(out.begin(), out.end(), cplx{});
  static const cplx kPhase[4] = {1.0, {0.0, 1.0}, -1.0, {0.0, -1.0}};
  for (const auto& t : h.terms) {
    std::size_t x = 0, z = 0, ny = 0;
    for (std::size_t q = 0; q < t.width(); ++q) {
      const Pauli p = t.axes[q];
      if (p == Pauli::X || p == Pauli::Y) x |= std::size_t{1} << q;
      if (p == Pauli::Y || p == Pauli::Z) z |= std::size_t{1} << q;
      ny += (p == Pauli::Y);
    }
    const cplx c = t.coefficient * kPhase[ny % 4];
    for (std::size_t j = 0; j < v.size(); ++j) {
      const cplx val = c * v[j];
      out[j ^ x] += (std::popcount(j & z) & 1) ? -val : val;
    }
  }
}

}  // namespace

double exact_ground_energy(const Hamiltonian& h) {
  h.validate();
  require(h.num_qubits <= 20, "exact diagonalisation supports at most 20 qubits");
  const std::size_t dim = std::size_t{1} << h.num_qubits;
  const std::size_t max_steps = std::min<std::size_t>(dim, 300);
  Rng rng(0x5eed);
  std::vector<std::vector<cplx>> basis;
  std::vector<cplx> v(dim), w(dim);
  double norm = 0.0;
  for (auto& x : v) {
    x = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    norm += std::norm(x);
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  std::vector<double> alpha, beta;
  double last = std::numeric_limits<double>::infinity();
  double ground = 0.0;
  for (std::size_t step = 0; step < max_steps; ++step) {
    basis.push_back(v);
    apply_hamiltonian(h, v, w);
    cplx a{};
    for (std::size_t i = 0; i < dim; ++i) a += std::conj(v[i]) * w[i];
    alpha.push_back(a.real());
    // Full reorthogonalisation against every stored vector, twice.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        cplx ov{};
        for (std::size_t i = 0; i < dim; ++i) ov += std::conj(b[i]) * w[i];
        for (std::size_t i = 0; i < dim; ++i) w[i] -= ov * b[i];
      }
    double bn = 0.0;
    for (const auto& x : w) bn += std::norm(x);
    bn = std::sqrt(bn);

    const std::size_t m = alpha.size();
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(static_cast<long>(m), static_cast<long>(m));
    for (std::size_t i = 0; i < m; ++i) {
      t(static_cast<long>(i), static_cast<long>(i)) = alpha[i];
      if (i + 1 < m) {
        t(static_cast<long>(i), static_cast<long>(i + 1)) = beta[i];
        t(static_cast<long>(i + 1), static_cast<long>(i)) = beta[i];
      }
    }
    ground = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(t, Eigen::EigenvaluesOnly)
                 .eigenvalues()
                 .minCoeff();
    if (bn < 1e-10 || (m > 8 && std::abs(ground - last) < 1e-13)) break;
    last = ground;
    beta.push_back(bn);
    for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / bn;
  }
  return ground + h.offset;
}

}  // namespace cavq
