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

#include "cavq.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "cavq/bench.hpp"
#include "cavq/densim.hpp"
#include "cavq/error.hpp"
#include "cavq/io.hpp"
#include "cavq/schedule.hpp"
#include "cavq/transpile.hpp"
#include "cavq/vqa.hpp"

struct cavq_hamiltonian {
  cavq::Hamiltonian value;
};
struct cavq_graph {
  cavq::ProblemGraph value;
};
struct cavq_topology {
  cavq::Topology value;
};
struct cavq_circuit {
  cavq::PhysicalCircuit value;
};

namespace {

thread_local std::string g_last_error;

cavq_status status_of(cavq::ErrorCode c) {
  switch (c) {
    case cavq::ErrorCode::kInvalidArgument: return CAVQ_INVALID_ARGUMENT;
    case cavq::ErrorCode::kParse: return CAVQ_PARSE;
    case cavq::ErrorCode::kInfeasible: return CAVQ_INFEASIBLE;
    case cavq::ErrorCode::kResourceLimit: return CAVQ_RESOURCE_LIMIT;
    case cavq::ErrorCode::kIo: return CAVQ_IO;
    case cavq::ErrorCode::kInternal: return CAVQ_INTERNAL;
  }
  return CAVQ_INTERNAL;
}

template <typename F>
cavq_status guard(F&& fn) {
  try {
    g_last_error.clear();
    fn();
    return CAVQ_OK;
  } catch (const cavq::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const cavq::Json::exception& e) {
    g_last_error = e.what();
    return CAVQ_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CAVQ_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CAVQ_INTERNAL;
  }
}

void need(const void* p, const char* name) {
  if (p == nullptr) cavq::fail(cavq::ErrorCode::kInvalidArgument, std::string(name) + " is null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cavq::Json parse(const char* text) {
  need(text, "json");
  return cavq::parse_json(text);
}

cavq::IntRange range_from(const cavq::Json& j) {
  if (!j.is_array() || j.size() < 2 || j.size() > 3)
    cavq::fail(cavq::ErrorCode::kParse, "ranges are written as [first, last] or [first, last, step]");
  return {j[0].get<std::size_t>(), j[1].get<std::size_t>(),
          j.size() == 3 ? j[2].get<std::size_t>() : std::size_t{1}};
}

cavq::BenchConfig bench_config_from(const cavq::Json& j) {
  cavq::BenchConfig cfg = cavq::BenchConfig::defaults();
  if (j.contains("qubits")) cfg.qubits = range_from(j.at("qubits"));
  if (j.contains("terms")) cfg.terms = range_from(j.at("terms"));
  cfg.seeds = j.value("seeds", cfg.seeds);
  cfg.base_seed = j.value("base_seed", cfg.base_seed);
  if (j.contains("arities")) cfg.arities = j.at("arities").get<std::vector<std::size_t>>();
  cfg.theta = j.value("theta", cfg.theta);
  cfg.workers = j.value("workers", cfg.workers);
  if (j.contains("architectures")) {
    cfg.architectures.clear();
    for (const auto& a : j.at("architectures"))
      cfg.architectures.push_back({a.at("name").get<std::string>(),
                                   cavq::topology_config_from_json(a.at("topology"))});
  }
  cfg.validate();
  return cfg;
}

cavq::VqaOptions vqa_options_from(const cavq_vqa_options* o) {
  cavq_vqa_options d;
  cavq_vqa_options_default(&d);
  if (o == nullptr) o = &d;
  cavq::VqaOptions opts;
  opts.noise = cavq::NoiseParams::preset(o->noise ? o->noise : "default");
  opts.spsa.iterations = o->iterations;
  opts.spsa.a = o->a;
  opts.spsa.c = o->c;
  opts.spsa.big_a = o->big_a;
  opts.spsa.alpha = o->alpha;
  opts.spsa.gamma = o->gamma;
  opts.spsa.seed = o->seed;
  opts.shots = o->shots;
  opts.partition_seed = o->partition_seed;
  return opts;
}

}  // namespace

extern "C" {

const char* cavq_version(void) { return CAVQ_VERSION; }

const char* cavq_last_error(void) { return g_last_error.c_str(); }

void cavq_string_free(char* s) { std::free(s); }

cavq_status cavq_hamiltonian_from_json(const char* json, cavq_hamiltonian** out) {
  return guard([&] {
    need(out, "out");
    *out = new cavq_hamiltonian{cavq::hamiltonian_from_json(parse(json))};
  });
}

cavq_status cavq_hamiltonian_random(size_t num_qubits, size_t num_terms, uint64_t seed,
                                    const size_t* arities, size_t num_arities,
                                    cavq_hamiltonian** out) {
  return guard([&] {
    need(out, "out");
    std::vector<std::size_t> ar{2, 3, 4};
    if (arities != nullptr) ar.assign(arities, arities + num_arities);
    *out = new cavq_hamiltonian{cavq::random_term_suite(num_qubits, num_terms, seed, ar)};
  });
}

cavq_status cavq_hamiltonian_to_json(const cavq_hamiltonian* h, char** out) {
  return guard([&] {
    need(h, "hamiltonian");
    need(out, "out");
    *out = dup_string(cavq::to_json(h->value).dump());
  });
}

size_t cavq_hamiltonian_num_qubits(const cavq_hamiltonian* h) {
  return h ? h->value.num_qubits : 0;
}

void cavq_hamiltonian_free(cavq_hamiltonian* h) { delete h; }

cavq_status cavq_graph_from_json(const char* json, cavq_graph** out) {
  return guard([&] {
    need(out, "out");
    *out = new cavq_graph{cavq::graph_from_json(parse(json))};
  });
}

cavq_status cavq_graph_random_cubic(size_t nodes, uint64_t seed, cavq_graph** out) {
  return guard([&] {
    need(out, "out");
    *out = new cavq_graph{cavq::ProblemGraph::random_cubic(nodes, seed)};
  });
}

cavq_status cavq_graph_to_json(const cavq_graph* g, char** out) {
  return guard([&] {
    need(g, "graph");
    need(out, "out");
    *out = dup_string(cavq::to_json(g->value).dump());
  });
}

void cavq_graph_free(cavq_graph* g) { delete g; }

cavq_status cavq_topology_from_json(const char* json, cavq_topology** out) {
  return guard([&] {
    need(out, "out");
    *out = new cavq_topology{cavq::build_topology(cavq::topology_config_from_json(parse(json)))};
  });
}

cavq_status cavq_topology_to_json(const cavq_topology* t, char** out) {
  return guard([&] {
    need(t, "topology");
    need(out, "out");
    *out = dup_string(cavq::to_json(t->value.config()).dump());
  });
}

size_t cavq_topology_num_resources(const cavq_topology* t) {
  return t ? t->value.num_resources() : 0;
}

cavq_status cavq_topology_distance(const cavq_topology* t, size_t a, size_t b, size_t* out) {
  return guard([&] {
    need(t, "topology");
    need(out, "out");
    cavq::require(a < t->value.num_resources() && b < t->value.num_resources(),
                  "resource id out of range");
    *out = t->value.distance(a, b);
  });
}

void cavq_topology_free(cavq_topology* t) { delete t; }

void cavq_transpile_options_default(cavq_transpile_options* opts) {
  if (opts == nullptr) return;
  opts->theta = 0.1;
  opts->seed = 0;
  opts->cancel_swaps = 1;
  opts->partition_restarts = cavq::PartitionOptions{}.restarts;
  opts->layout = CAVQ_LAYOUT_DEGREE;
}

cavq_status cavq_transpile(const cavq_hamiltonian* h, const cavq_topology* t,
                           const cavq_transpile_options* opts, cavq_circuit** out) {
  return guard([&] {
    need(h, "hamiltonian");
    need(t, "topology");
    need(out, "out");
    cavq_transpile_options o;
    cavq_transpile_options_default(&o);
    if (opts != nullptr) o = *opts;
    if (t->value.is_cavity()) {
      cavq::TranspileOptions to;
      to.cancel_swaps = o.cancel_swaps != 0;
      to.partition.restarts = o.partition_restarts;
      *out = new cavq_circuit{cavq::transpile_cavity(h->value, {o.theta}, t->value, o.seed, to)};
    } else {
      const auto layout = o.layout == CAVQ_LAYOUT_TRIVIAL ? cavq::InitialLayout::kTrivial
                                                          : cavq::InitialLayout::kDegreeMatched;
      *out = new cavq_circuit{cavq::route_lattice(cavq::trotter_circuit(h->value, {o.theta}),
                                                  t->value, layout, o.seed)};
    }
  });
}

cavq_status cavq_circuit_from_json(const char* json, cavq_circuit** out) {
  return guard([&] {
    need(out, "out");
    *out = new cavq_circuit{cavq::physical_circuit_from_json(parse(json))};
  });
}

cavq_status cavq_circuit_to_json(const cavq_circuit* c, char** out) {
  return guard([&] {
    need(c, "circuit");
    need(out, "out");
    *out = dup_string(cavq::to_json(c->value).dump());
  });
}

void cavq_circuit_free(cavq_circuit* c) { delete c; }

cavq_status cavq_circuit_metrics(const cavq_circuit* c, cavq_metrics* out) {
  return guard([&] {
    need(c, "circuit");
    need(out, "out");
    const cavq::RoutingMetrics m = cavq::count_metrics(c->value);
    *out = {m.cx_count,     m.single_qubit_count, m.swap_io_count,
            m.swap_route_count, m.depth,          m.routing_overhead};
  });
}

cavq_status cavq_circuit_schedule_json(const cavq_circuit* c, int lower, char** out) {
  return guard([&] {
    need(c, "circuit");
    need(out, "out");
    const cavq::Schedule s =
        lower ? cavq::asap_schedule(cavq::lower_physical(c->value, {false}))
              : cavq::asap_schedule(c->value);
    *out = dup_string(cavq::to_json(s).dump());
  });
}

cavq_status cavq_simulate(const cavq_circuit* c, const char* noise,
                          const cavq_hamiltonian* observable, size_t top_k, char** out) {
  return guard([&] {
    need(c, "circuit");
    need(out, "out");
    const cavq::NoiseParams np = cavq::NoiseParams::preset(noise ? noise : "default");
    const cavq::Schedule s = cavq::asap_schedule(cavq::lower_physical(c->value, {false}));
    const cavq::SimulationResult res = cavq::simulate(s, np);
    const auto slots = res.logical_slots();
    std::vector<std::size_t> bound;
    for (std::size_t sl : slots)
      if (sl != cavq::SimulationResult::kUnbound) bound.push_back(sl);
    const std::vector<double> probs = res.rho.marginal(bound);

    std::vector<std::pair<double, std::string>> outcomes;
    for (std::size_t k = 0; k < probs.size(); ++k) {
      std::string bits(slots.size(), '0');
      std::size_t b = 0;
      for (std::size_t q = 0; q < slots.size(); ++q)
        if (slots[q] != cavq::SimulationResult::kUnbound) {
          if ((k >> b) & 1u) bits[q] = '1';
          ++b;
        }
      outcomes.emplace_back(probs[k], bits);
    }
    std::stable_sort(outcomes.begin(), outcomes.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    if (outcomes.size() > top_k) outcomes.resize(top_k);

    cavq::Json top = cavq::Json::object();
    for (const auto& [p, bits] : outcomes) top[bits] = p;
    cavq::Json j = {{"makespan_ns", s.makespan},
                    {"slots", res.rho.num_qubits()},
                    {"trace_error", res.trace_error()},
                    {"probabilities", top}};
    if (observable != nullptr) j["expectation"] = cavq::expectation(res, observable->value);
    *out = dup_string(j.dump());
  });
}

void cavq_vqa_options_default(cavq_vqa_options* opts) {
  if (opts == nullptr) return;
  const cavq::SpsaConfig s;
  opts->iterations = s.iterations;
  opts->a = s.a;
  opts->c = s.c;
  opts->big_a = s.big_a;
  opts->alpha = s.alpha;
  opts->gamma = s.gamma;
  opts->seed = s.seed;
  opts->shots = 0;
  opts->partition_seed = 0;
  opts->noise = "default";
}

cavq_status cavq_run_qaoa(const cavq_graph* g, size_t layers, const cavq_topology* t,
                          const cavq_vqa_options* opts, char** out) {
  return guard([&] {
    need(g, "graph");
    need(t, "topology");
    need(out, "out");
    const cavq::VqaResult r =
        cavq::run_qaoa(g->value, layers, t->value.config(), vqa_options_from(opts));
    *out = dup_string(cavq::to_json(r).dump());
  });
}

cavq_status cavq_run_vqe(const cavq_hamiltonian* h, size_t layers, const cavq_topology* t,
                         const cavq_vqa_options* opts, char** out) {
  return guard([&] {
    need(h, "hamiltonian");
    need(t, "topology");
    need(out, "out");
    const cavq::VqaResult r =
        cavq::run_vqe(h->value, layers, t->value.config(), vqa_options_from(opts));
    *out = dup_string(cavq::to_json(r).dump());
  });
}

cavq_status cavq_bench_routing(const char* config_json, char** out_csv, char** out_summary) {
  return guard([&] {
    const cavq::Json j = config_json ? cavq::parse_json(config_json) : cavq::Json::object();
    const cavq::BenchResult r = cavq::bench_routing(bench_config_from(j));
    if (out_csv != nullptr) *out_csv = dup_string(r.csv());
    if (out_summary != nullptr) *out_summary = dup_string(r.summary_json());
  });
}

cavq_status cavq_matrix_preset(const char* name, size_t iterations, uint64_t seed, char** out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    *out = dup_string(cavq::matrix_spec_to_json(cavq::matrix_preset(name, iterations, seed)).dump(2));
  });
}

cavq_status cavq_run_matrix(const char* spec_json, const char* out_dir, size_t workers,
                            size_t* failed_cells) {
  return guard([&] {
    need(out_dir, "out_dir");
    const cavq::MatrixSpec spec = cavq::matrix_spec_from_json(parse(spec_json));
    const std::size_t failed = cavq::run_experiment_matrix(spec, out_dir, workers);
    if (failed_cells != nullptr) *failed_cells = failed;
  });
}

}  // extern "C"
