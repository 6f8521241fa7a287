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

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cavq.h"

namespace fs = std::filesystem;

namespace {

struct CliError {
  int code;
};

void check(cavq_status s) {
  if (s == CAVQ_OK) return;
  std::cerr << "cavq: " << cavq_last_error() << "\n";
  throw CliError{static_cast<int>(s)};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  cavq_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cavq: cannot open " << path << "\n";
    throw CliError{CAVQ_IO};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Inline JSON when the argument starts with '{', otherwise a file path.
std::string json_arg(const std::string& arg) {
  const auto p = arg.find_first_not_of(" \t\n");
  if (p != std::string::npos && arg[p] == '{') return arg;
  return slurp(arg);
}

void emit(const std::string& text, const std::string& out_dir, const std::string& name) {
  if (name.empty() || name == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  fs::path p = name;
  if (p.is_relative() && !out_dir.empty()) p = fs::path(out_dir) / p;
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) {
    std::cerr << "cavq: cannot write " << p.string() << "\n";
    throw CliError{CAVQ_IO};
  }
  out << text;
}

template <typename T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};

std::string metrics_text(const cavq_metrics& m, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    os << "cx,single_qubit,swap_io,swap_route,depth,routing_overhead\n"
       << m.cx << "," << m.single_qubit << "," << m.swap_io << "," << m.swap_route << ","
       << m.depth << "," << m.routing_overhead << "\n";
  } else {
    os << "{\"cx\":" << m.cx << ",\"single_qubit\":" << m.single_qubit
       << ",\"swap_io\":" << m.swap_io << ",\"swap_route\":" << m.swap_route
       << ",\"depth\":" << m.depth << ",\"routing_overhead\":" << m.routing_overhead << "}\n";
  }
  return os.str();
}

std::string range_json(const std::string& text) {
  // first:last[:step]
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string s; std::getline(ss, s, ':');) parts.push_back(s);
  if (parts.size() < 2 || parts.size() > 3) {
    std::cerr << "cavq: ranges are written first:last[:step]\n";
    throw CliError{CAVQ_INVALID_ARGUMENT};
  }
  std::string out = "[";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + std::to_string(std::stoul(parts[i]));
  return out + "]";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cavity-aware compilation and variational simulation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(cavq_version()));

  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string out_dir;
  app.add_option("--seed", seed, "Base random seed")->capture_default_str();
  app.add_option("--workers", workers, "Worker threads (CAVQ_WORKERS overrides)")
      ->capture_default_str();
  app.add_option("--out-dir", out_dir, "Directory for relative output paths");

  // transpile
  auto* tr = app.add_subcommand("transpile", "Map one Trotter step onto a topology");
  std::string tr_ham, tr_topo, tr_out, tr_metrics, tr_schedule;
  double tr_theta = 0.1;
  bool tr_no_cancel = false;
  std::string tr_layout = "degree";
  std::size_t tr_restarts = 0;
  tr->add_option("--hamiltonian", tr_ham, "Hamiltonian JSON file")->required();
  tr->add_option("--topology", tr_topo, "Topology JSON file or inline JSON")->required();
  tr->add_option("--theta", tr_theta, "Evolution angle")->capture_default_str();
  tr->add_option("--out", tr_out, "Physical circuit output (default stdout)");
  tr->add_option("--metrics", tr_metrics, "Print routing metrics")
      ->check(CLI::IsMember({"csv", "json"}));
  tr->add_option("--emit-schedule", tr_schedule, "Write the ASAP schedule JSON here");
  tr->add_flag("--no-cancel", tr_no_cancel, "Keep redundant SWAP-IN/SWAP-OUT pairs");
  tr->add_option("--layout", tr_layout, "Lattice initial layout")
      ->check(CLI::IsMember({"trivial", "degree"}))
      ->capture_default_str();
  tr->add_option("--restarts", tr_restarts, "Partition restarts (0 keeps the default)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Noisy density-matrix simulation of a circuit");
  std::string sim_circuit, sim_noise = "default", sim_obs, sim_out;
  std::size_t sim_top = 8;
  sim->add_option("--circuit", sim_circuit, "Physical circuit JSON")->required();
  sim->add_option("--noise", sim_noise, "Noise preset")
      ->check(CLI::IsMember({"default", "companion", "none"}))
      ->capture_default_str();
  sim->add_option("--observable", sim_obs, "Hamiltonian JSON to evaluate");
  sim->add_option("--top", sim_top, "Number of outcomes to report")->capture_default_str();
  sim->add_option("--out", sim_out, "Output file (default stdout)");

  // vqa
  auto* vqa = app.add_subcommand("vqa", "Variational optimisation");
  vqa->require_subcommand(1);
  vqa->fallthrough();
  std::string v_topo, v_noise = "default", v_out;
  std::size_t v_layers = 2, v_iters = 500;
  std::uint64_t v_shots = 0;
  for (auto* sub : {vqa->add_subcommand("qaoa", "QAOA for MaxCut"),
                    vqa->add_subcommand("vqe", "Hardware-efficient VQE")}) {
    sub->add_option("--topology", v_topo, "Topology JSON file or inline JSON")->required();
    sub->add_option("--layers", v_layers, "Ansatz layers")->capture_default_str();
    sub->add_option("--iterations,--iters", v_iters, "SPSA iterations")->capture_default_str();
    sub->add_option("--noise", v_noise, "Noise preset")
        ->check(CLI::IsMember({"default", "companion", "none"}))
        ->capture_default_str();
    sub->add_option("--shots", v_shots, "Sample each term with this many shots (0 = exact)");
    sub->add_option("--out", v_out, "Result JSON (default stdout)");
  }
  auto* qaoa = vqa->get_subcommand("qaoa");
  auto* vqe = vqa->get_subcommand("vqe");
  std::string q_graph;
  std::size_t q_nodes = 0;
  qaoa->add_option("--graph", q_graph, "Graph JSON file or inline JSON");
  qaoa->add_option("--random-nodes", q_nodes, "Seeded random cubic graph with this many nodes");
  std::string e_ham;
  vqe->add_option("--hamiltonian", e_ham, "Hamiltonian JSON file")->required();

  // bench-routing
  auto* bench = app.add_subcommand("bench-routing", "Routing overhead across architectures");
  std::string b_config, b_qubits, b_terms, b_arity;
  std::size_t b_seeds = 0;
  bool b_full = false;
  bench->add_option("--config", b_config, "Benchmark config JSON");
  bench->add_option("--qubits", b_qubits, "Qubit range first:last[:step]");
  bench->add_option("--terms", b_terms, "Term range first:last[:step]");
  bench->add_option("--seeds", b_seeds, "Seeds per cell");
  bench->add_option("--arity-dist", b_arity, "Comma-separated term arities, drawn uniformly");
  bench->add_flag("--full-scale", b_full, "1000 seeds per cell");

  // matrix
  auto* mx = app.add_subcommand("matrix", "Run an experiment matrix");
  std::string m_preset, m_spec, m_manifest;
  std::size_t m_iters = 500;
  bool m_dry = false;
  auto* m_opt_preset = mx->add_option("--preset", m_preset, "mucic-sweep (alias paper-qaoa) or results-sweep");
  auto* m_opt_spec = mx->add_option("--spec", m_spec, "Matrix spec JSON");
  auto* m_opt_manifest = mx->add_option("--manifest", m_manifest, "Re-run a manifest");
  m_opt_preset->excludes(m_opt_spec)->excludes(m_opt_manifest);
  m_opt_spec->excludes(m_opt_manifest);
  mx->add_option("--iterations", m_iters, "SPSA iterations for presets")->capture_default_str();
  mx->add_flag("--dry-run", m_dry, "Print the expanded spec and exit");

  CLI11_PARSE(app, argc, argv);

  if (const char* env = std::getenv("CAVQ_WORKERS")) {
    try {
      workers = std::stoul(env);
    } catch (const std::exception&) {
      std::cerr << "cavq: CAVQ_WORKERS must be a non-negative integer\n";
      return CAVQ_INVALID_ARGUMENT;
    }
  }

  try {
    if (*tr) {
      Handle<cavq_hamiltonian, cavq_hamiltonian_free> h;
      Handle<cavq_topology, cavq_topology_free> t;
      Handle<cavq_circuit, cavq_circuit_free> c;
      check(cavq_hamiltonian_from_json(json_arg(tr_ham).c_str(), &h.p));
      check(cavq_topology_from_json(json_arg(tr_topo).c_str(), &t.p));
      cavq_transpile_options o;
      cavq_transpile_options_default(&o);
      o.theta = tr_theta;
      o.seed = seed;
      o.cancel_swaps = tr_no_cancel ? 0 : 1;
      o.layout = tr_layout == "trivial" ? CAVQ_LAYOUT_TRIVIAL : CAVQ_LAYOUT_DEGREE;
      if (tr_restarts > 0) o.partition_restarts = tr_restarts;
      check(cavq_transpile(h.p, t.p, &o, &c.p));
      char* s = nullptr;
      check(cavq_circuit_to_json(c.p, &s));
      const std::string circuit = take(s);
      if (!tr_out.empty() || tr_metrics.empty()) emit(circuit, out_dir, tr_out);
      if (!tr_metrics.empty()) {
        cavq_metrics m;
        check(cavq_circuit_metrics(c.p, &m));
        std::cout << metrics_text(m, tr_metrics);
      }
      if (!tr_schedule.empty()) {
        check(cavq_circuit_schedule_json(c.p, 1, &s));
        emit(take(s), out_dir, tr_schedule);
      }
    } else if (*sim) {
      Handle<cavq_circuit, cavq_circuit_free> c;
      Handle<cavq_hamiltonian, cavq_hamiltonian_free> h;
      check(cavq_circuit_from_json(json_arg(sim_circuit).c_str(), &c.p));
      if (!sim_obs.empty()) check(cavq_hamiltonian_from_json(json_arg(sim_obs).c_str(), &h.p));
      char* s = nullptr;
      check(cavq_simulate(c.p, sim_noise.c_str(), h.p, sim_top, &s));
      emit(take(s), out_dir, sim_out);
    } else if (*vqa) {
      Handle<cavq_topology, cavq_topology_free> t;
      check(cavq_topology_from_json(json_arg(v_topo).c_str(), &t.p));
      cavq_vqa_options o;
      cavq_vqa_options_default(&o);
      o.iterations = v_iters;
      o.seed = seed;
      o.partition_seed = seed;
      o.shots = v_shots;
      o.noise = v_noise.c_str();
      char* s = nullptr;
      if (*qaoa) {
        Handle<cavq_graph, cavq_graph_free> g;
        if (!q_graph.empty())
          check(cavq_graph_from_json(json_arg(q_graph).c_str(), &g.p));
        else if (q_nodes > 0)
          check(cavq_graph_random_cubic(q_nodes, seed, &g.p));
        else {
          std::cerr << "cavq: vqa qaoa needs --graph or --random-nodes\n";
          return CAVQ_INVALID_ARGUMENT;
        }
        check(cavq_run_qaoa(g.p, v_layers, t.p, &o, &s));
      } else {
        Handle<cavq_hamiltonian, cavq_hamiltonian_free> h;
        check(cavq_hamiltonian_from_json(json_arg(e_ham).c_str(), &h.p));
        check(cavq_run_vqe(h.p, v_layers, t.p, &o, &s));
      }
      emit(take(s), out_dir, v_out);
    } else if (*bench) {
      std::string cfg = b_config.empty() ? "{}" : json_arg(b_config);
      // Flags override keys of the config object.
      std::string extra;
      auto add = [&](const std::string& k, const std::string& v) {
        extra += ",\"" + k + "\":" + v;
      };
      if (!b_qubits.empty()) add("qubits", range_json(b_qubits));
      if (!b_terms.empty()) add("terms", range_json(b_terms));
      if (b_full) add("seeds", "1000");
      if (b_seeds > 0) add("seeds", std::to_string(b_seeds));
      if (!b_arity.empty()) add("arities", "[" + b_arity + "]");
      add("base_seed", std::to_string(seed));
      add("workers", std::to_string(workers));
      const auto close = cfg.find_last_of('}');
      const bool empty_obj = cfg.find_first_not_of(" \t\n{}") == std::string::npos;
      cfg = empty_obj ? "{" + extra.substr(1) + "}" : cfg.substr(0, close) + extra + "}";
      char* csv = nullptr;
      char* summary = nullptr;
      check(cavq_bench_routing(cfg.c_str(), &csv, &summary));
      const std::string dir = out_dir.empty() ? "." : out_dir;
      emit(take(csv), dir, "bench.csv");
      emit(take(summary), dir, "summary.json");
      std::cout << "wrote " << (fs::path(dir) / "bench.csv").string() << " and "
                << (fs::path(dir) / "summary.json").string() << "\n";
    } else if (*mx) {
      std::string spec;
      if (!m_preset.empty()) {
        char* s = nullptr;
        check(cavq_matrix_preset(m_preset.c_str(), m_iters, seed, &s));
        spec = take(s);
      } else if (!m_spec.empty()) {
        spec = json_arg(m_spec);
      } else if (!m_manifest.empty()) {
        spec = json_arg(m_manifest);
      } else {
        std::cerr << "cavq: matrix needs --preset, --spec or --manifest\n";
        return CAVQ_INVALID_ARGUMENT;
      }
      if (m_dry) {
        emit(spec, "", "-");
        return 0;
      }
      const std::string dir = out_dir.empty() ? "matrix-out" : out_dir;
      std::size_t failed = 0;
      check(cavq_run_matrix(spec.c_str(), dir.c_str(), workers, &failed));
      std::cout << "wrote " << dir << " (" << failed << " failed cells)\n";
      if (failed > 0) return CAVQ_INTERNAL;
    }
  } catch (const CliError& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "cavq: " << e.what() << "\n";
    return CAVQ_INTERNAL;
  }
  return 0;
}
