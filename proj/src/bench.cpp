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

#include "cavq/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "cavq/error.hpp"
#include "cavq/io.hpp"
#include "cavq/rng.hpp"
#include "cavq/schedule.hpp"
#include "cavq/transpile.hpp"
#include "cavq/vqa.hpp"

namespace cavq {

Hamiltonian random_term_suite(std::size_t n_qubits, std::size_t n_terms,
                              std::uint64_t seed,
                              const std::vector<std::size_t>& arities) {
  require(n_qubits >= 2, "random suites need at least 2 qubits");
  require(!arities.empty(), "arity distribution is empty");
  for (std::size_t a : arities) require(a >= 1, "term arity must be positive");
  Rng rng(seed);
  Hamiltonian h(n_qubits);
  std::vector<std::size_t> qubits(n_qubits);
  for (std::size_t t = 0; t < n_terms; ++t) {
    const std::size_t m = std::min(arities[rng.index(arities.size())], n_qubits);
    std::iota(qubits.begin(), qubits.end(), std::size_t{0});
    // Partial Fisher-Yates: the first m entries become a uniform subset.
    for (std::size_t i = 0; i < m; ++i) std::swap(qubits[i], qubits[i + rng.index(n_qubits - i)]);
    PauliTerm term;
    term.axes.assign(n_qubits, Pauli::I);
    for (std::size_t i = 0; i < m; ++i)
      term.axes[qubits[i]] = static_cast<Pauli>(1 + rng.index(3));
    term.coefficient = 1.0;
    h.add(std::move(term));
  }
  return h;
}

std::vector<std::size_t> IntRange::values() const {
  require(step >= 1, "range step must be positive");
  require(first <= last, "range is empty");
  std::vector<std::size_t> v;
  for (std::size_t x = first; x <= last; x += step) v.push_back(x);
  return v;
}

BenchConfig BenchConfig::defaults() {
  BenchConfig c;
  TopologyConfig cav;
  cav.kind = TopologyKind::kCavity;
  cav.cavities = 2;
  cav.modes = 11;
  TopologyConfig hc;
  hc.kind = TopologyKind::kHoneycomb;
  hc.rows = 3;
  hc.cols = 3;
  c.architectures = {{"cavity", cav}, {"honeycomb", hc}};
  return c;
}

void BenchConfig::validate() const {
  qubits.values();
  terms.values();
  require(qubits.first >= 2, "bench needs at least 2 qubits");
  require(seeds >= 1, "bench needs at least one seed per cell");
  require(!arities.empty(), "arity distribution is empty");
  require(!architectures.empty(), "bench needs at least one architecture");
  for (const auto& a : architectures) build_topology(a.topology);
}

std::string bench_csv_header() {
  return "arch,qubits,terms,seed_index,seed,status,cx,swap_io,swap_route,appended,depth,"
         "duration_ns,idle_ns";
}

BenchRow bench_cell(const Architecture& arch, std::size_t qubits, std::size_t terms,
                    std::size_t seed_index, const BenchConfig& cfg) {
  BenchRow row;
  row.arch = arch.name;
  row.qubits = qubits;
  row.terms = terms;
  row.seed_index = seed_index;
  row.seed = derive_seed(cfg.base_seed, qubits, terms, seed_index);
  try {
    const Hamiltonian h = random_term_suite(qubits, terms, row.seed, cfg.arities);
    const Topology topo = build_topology(arch.topology);
    const PhysicalCircuit pc =
        topo.is_cavity() ? transpile_cavity(h, {cfg.theta}, topo, row.seed)
                         : route_lattice(trotter_circuit(h, {cfg.theta}), topo,
                                         InitialLayout::kDegreeMatched, row.seed);
    const RoutingMetrics m = count_metrics(pc);
    row.cx = m.cx_count;
    row.swap_io = m.swap_io_count;
    row.swap_route = m.swap_route_count;
    row.appended = m.routing_overhead;
    row.depth = m.depth;
    const Schedule s = asap_schedule(lower_physical(pc, {.expand_swaps = false}));
    row.duration_ns = s.makespan;
    row.idle_ns = idle_report(s).sum;
  } catch (const Error& e) {
    row.status = e.code() == ErrorCode::kInfeasible ? "infeasible" : "error";
  } catch (const std::exception&) {
    row.status = "error";
  }
  return row;
}

double fit_growth_exponent(const std::map<std::size_t, double>& means) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& [q, m] : means) {
    if (q == 0 || !(m > 0)) continue;
    const double x = std::log(static_cast<double>(q)), y = std::log(m);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  const double den = static_cast<double>(n) * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (static_cast<double>(n) * sxy - sx * sy) / den;
}

void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

BenchResult bench_routing(const BenchConfig& cfg) {
  cfg.validate();
  struct Job {
    std::size_t arch, qubits, terms, seed;
  };
  std::vector<Job> jobs;
  for (std::size_t a = 0; a < cfg.architectures.size(); ++a)
    for (std::size_t q : cfg.qubits.values())
      for (std::size_t t : cfg.terms.values())
        for (std::size_t s = 0; s < cfg.seeds; ++s) jobs.push_back({a, q, t, s});
  BenchResult res;
  res.rows.resize(jobs.size());
  parallel_for(jobs.size(), cfg.workers, [&](std::size_t i) {
    const Job& j = jobs[i];
    res.rows[i] = bench_cell(cfg.architectures[j.arch], j.qubits, j.terms, j.seed, cfg);
  });

  for (const auto& arch : cfg.architectures) {
    ArchSummary sum;
    std::map<std::size_t, std::array<double, 3>> acc;
    std::map<std::size_t, std::size_t> count;
    for (const auto& r : res.rows) {
      if (r.arch != arch.name) continue;
      if (r.status != "ok") {
        ++sum.failures;
        continue;
      }
      auto& a = acc[r.qubits];
      a[0] += static_cast<double>(r.appended);
      a[1] += static_cast<double>(r.swap_io);
      a[2] += static_cast<double>(r.depth);
      ++count[r.qubits];
    }
    for (const auto& [q, a] : acc) {
      const double n = static_cast<double>(count[q]);
      sum.mean_appended[q] = a[0] / n;
      sum.mean_swap_io[q] = a[1] / n;
      sum.mean_depth[q] = a[2] / n;
    }
    sum.growth_exponent = fit_growth_exponent(sum.mean_appended);
    res.summary[arch.name] = sum;
  }
  return res;
}

std::string BenchResult::csv() const {
  std::ostringstream out;
  out << bench_csv_header() << "\n";
  for (const auto& r : rows)
    out << r.arch << ',' << r.qubits << ',' << r.terms << ',' << r.seed_index << ','
        << r.seed << ',' << r.status << ',' << r.cx << ',' << r.swap_io << ','
        << r.swap_route << ',' << r.appended << ',' << r.depth << ',' << r.duration_ns
        << ',' << r.idle_ns << "\n";
  return out.str();
}

std::string BenchResult::summary_json() const {
  Json j;
  j["csv_schema"] = kBenchCsvSchema;
  Json archs = Json::object();
  for (const auto& [name, s] : summary) {
    Json a;
    auto table = [](const std::map<std::size_t, double>& m) {
      Json t = Json::object();
      for (const auto& [q, v] : m) t[std::to_string(q)] = v;
      return t;
    };
    a["mean_appended"] = table(s.mean_appended);
    a["mean_swap_io"] = table(s.mean_swap_io);
    a["mean_depth"] = table(s.mean_depth);
    a["growth_exponent"] = s.growth_exponent;
    a["swap_io_growth_exponent"] = fit_growth_exponent(s.mean_swap_io);
    a["failures"] = s.failures;
    archs[name] = a;
  }
  j["architectures"] = archs;
  if (summary.count("cavity") && summary.count("honeycomb")) {
    Json ratio = Json::object();
    const auto& c = summary.at("cavity").mean_appended;
    const auto& h = summary.at("honeycomb").mean_appended;
    for (const auto& [q, v] : c)
      if (h.count(q) && h.at(q) > 0) ratio[std::to_string(q)] = v / h.at(q);
    j["cavity_to_honeycomb_appended"] = ratio;
  }
  return j.dump(2) + "\n";
}

TopologyConfig architecture_for(const std::string& arch, std::size_t size) {
  require(size >= 2, "problem size must be at least 2");
  TopologyConfig c;
  if (arch == "cavity") {
    c.kind = TopologyKind::kCavity;
    c.cavities = 2;
    c.modes = (size + 1) / 2;
    return c;
  }
  if (arch == "honeycomb") {
    c.kind = TopologyKind::kHoneycomb;
    for (std::size_t r = 1, k = 0;; ++k) {
      const std::size_t cols = (k % 2 == 0) ? r : r + 1;
      if (2 * (r + 1) * (cols + 1) - 2 >= size) {
        c.rows = r;
        c.cols = cols;
        return c;
      }
      if (k % 2 == 1) ++r;
    }
  }
  if (arch == "octagonal") {
    c.kind = TopologyKind::kOctagonal;
    c.nx = (size + 7) / 8;
    c.ny = 1;
    return c;
  }
  fail(ErrorCode::kInvalidArgument, "unknown architecture '" + arch + "'");
}

MatrixSpec matrix_preset(const std::string& name, std::size_t iterations,
                         std::uint64_t seed) {
  std::vector<std::size_t> layers;
  if (name == "mucic-sweep" || name == "paper-qaoa")
    layers = {2, 4};
  else if (name == "results-sweep")
    layers = {3, 4, 5, 6};
  else
    fail(ErrorCode::kInvalidArgument, "unknown matrix preset '" + name + "'");
  MatrixSpec spec;
  spec.name = name;
  for (std::size_t size : {4, 6, 8, 10})
    for (std::size_t p : layers)
      for (const char* arch : {"cavity", "honeycomb"}) {
        MatrixCell c;
        c.kind = "qaoa";
        c.arch = arch;
        c.topology = architecture_for(arch, size);
        c.size = size;
        c.layers = p;
        c.graph_seed = derive_seed(seed, 0x6ea9, size);
        c.seed = derive_seed(seed, 0x5e7, size, p);
        c.iterations = iterations;
        c.id = "qaoa-n" + std::to_string(size) + "-p" + std::to_string(p) + "-" + arch;
        spec.cells.push_back(c);
      }
  return spec;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::size_t run_experiment_matrix(const MatrixSpec& spec,
                                  const std::filesystem::path& out_dir,
                                  std::size_t workers) {
  std::filesystem::create_directories(out_dir);
  struct Outcome {
    std::string status = "ok";
    std::string error;
    VqaResult result;
  };
  std::vector<Outcome> outcomes(spec.cells.size());
  parallel_for(spec.cells.size(), workers, [&](std::size_t i) {
    const MatrixCell& c = spec.cells[i];
    Outcome& o = outcomes[i];
    try {
      VqaOptions opts;
      opts.noise = NoiseParams::preset(c.noise);
      opts.spsa.iterations = c.iterations;
      opts.spsa.seed = c.seed;
      opts.partition_seed = c.seed;
      if (c.kind == "qaoa") {
        o.result = run_qaoa(ProblemGraph::random_cubic(c.size, c.graph_seed), c.layers,
                            c.topology, opts);
      } else if (c.kind == "vqe") {
        o.result = run_vqe(transverse_field_ising(c.size), c.layers, c.topology, opts);
      } else {
        fail(ErrorCode::kInvalidArgument, "unknown cell kind '" + c.kind + "'");
      }
    } catch (const std::exception& e) {
      o.status = "failed";
      o.error = e.what();
    }
  });

  std::size_t failures = 0;
  Json manifest;
  manifest["tool"] = "cavq";
  manifest["version"] = CAVQ_VERSION;
  manifest["csv_schema"] = kBenchCsvSchema;
  Json spec_json = matrix_spec_to_json(spec);
  manifest["name"] = spec_json["name"];
  manifest["cells"] = spec_json["cells"];
  for (std::size_t i = 0; i < spec.cells.size(); ++i) {
    manifest["cells"][i]["status"] = outcomes[i].status;
    if (outcomes[i].status != "ok") {
      ++failures;
      manifest["cells"][i]["error"] = outcomes[i].error;
    }
  }
  write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  if (spec.cells.empty()) return 0;

  std::ostringstream csv;
  csv << "id,kind,arch,size,layers,graph_seed,seed,iterations,noise,status,best_cost,"
         "exact_minimum,makespan_ns,cx,swap_io,swap_route,appended,depth\n";
  for (std::size_t i = 0; i < spec.cells.size(); ++i) {
    const MatrixCell& c = spec.cells[i];
    const Outcome& o = outcomes[i];
    csv << c.id << ',' << c.kind << ',' << c.arch << ',' << c.size << ',' << c.layers << ','
        << c.graph_seed << ',' << c.seed << ',' << c.iterations << ',' << c.noise << ','
        << o.status << ',';
    if (o.status == "ok") {
      const VqaResult& r = o.result;
      csv << fmt(r.best_cost) << ',' << (r.exact_minimum ? fmt(*r.exact_minimum) : "") << ','
          << r.makespan << ',' << r.metrics.cx_count << ',' << r.metrics.swap_io_count << ','
          << r.metrics.swap_route_count << ',' << r.metrics.routing_overhead << ','
          << r.metrics.depth;
      Json cell = matrix_spec_to_json({spec.name, {c}})["cells"][0];
      Json out;
      out["cell"] = cell;
      out["result"] = to_json(r);
      write_text_file(out_dir / "cells" / c.id / "result.json", out.dump(2) + "\n");
    } else {
      csv << ",,,,,,,";
    }
    csv << "\n";
  }
  write_text_file(out_dir / "aggregate.csv", csv.str());
  return failures;
}

}  // namespace cavq
