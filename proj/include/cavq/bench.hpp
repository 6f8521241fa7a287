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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cavq/pauli.hpp"
#include "cavq/topology.hpp"

namespace cavq {

// Each term draws an arity from `arities` (capped at n), that many distinct
// qubits, and an axis from {X, Y, Z} per qubit; coefficient 1.
Hamiltonian random_term_suite(std::size_t n_qubits, std::size_t n_terms,
                              std::uint64_t seed,
                              const std::vector<std::size_t>& arities = {2, 3,
                                                                         4});

struct Architecture {
  std::string name;
  TopologyConfig topology;
};

struct IntRange {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t step = 1;
  std::vector<std::size_t> values() const;
};

struct BenchConfig {
  IntRange qubits{6, 22, 2};
  IntRange terms{5, 30, 1};
  std::size_t seeds = 100;
  std::uint64_t base_seed = 0;
  std::vector<std::size_t> arities{2, 3, 4};
  double theta = 0.1;
  std::vector<Architecture> architectures;
  std::size_t workers = 1;

  // Cavity 2 x 11 modes against a 30-transmon honeycomb.
  static BenchConfig defaults();
  void validate() const;
};

inline constexpr int kBenchCsvSchema = 1;
std::string bench_csv_header();

struct BenchRow {
  std::string arch;
  std::size_t qubits = 0;
  std::size_t terms = 0;
  std::size_t seed_index = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";
  std::size_t cx = 0;
  std::size_t swap_io = 0;
  std::size_t swap_route = 0;
  std::size_t appended = 0;
  std::size_t depth = 0;
  std::int64_t duration_ns = 0;
  std::int64_t idle_ns = 0;
};

struct ArchSummary {
  // qubit count -> mean over all (terms, seed) cells.
  std::map<std::size_t, double> mean_appended;
  std::map<std::size_t, double> mean_swap_io;
  std::map<std::size_t, double> mean_depth;
  // Least-squares slope of log(mean appended) against log(qubits).
  double growth_exponent = 0.0;
  std::size_t failures = 0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::map<std::string, ArchSummary> summary;

  std::string csv() const;
  std::string summary_json() const;
};

BenchRow bench_cell(const Architecture& arch, std::size_t qubits,
                    std::size_t terms, std::size_t seed_index,
                    const BenchConfig& cfg);
BenchResult bench_routing(const BenchConfig& cfg);

double fit_growth_exponent(const std::map<std::size_t, double>& means);

// Experiment matrix: a flat list of VQA cells, each fully specified so a
// manifest can re-run it bit-identically.
struct MatrixCell {
  std::string id;
  std::string kind = "qaoa";  // qaoa | vqe
  std::string arch;
  TopologyConfig topology;
  std::size_t size = 4;
  std::size_t layers = 2;
  std::uint64_t graph_seed = 0;
  std::uint64_t seed = 0;
  std::size_t iterations = 500;
  std::string noise = "default";
};

struct MatrixSpec {
  std::string name;
  std::vector<MatrixCell> cells;
};

// "mucic-sweep" (sizes 4,6,8,10 x layers 2,4 x cavity/honeycomb; alias
// "paper-qaoa") and "results-sweep" (layers 3..6).
MatrixSpec matrix_preset(const std::string& name, std::size_t iterations = 500,
                         std::uint64_t seed = 0);

// Topology used for a `size`-qubit problem on a named architecture.
TopologyConfig architecture_for(const std::string& arch, std::size_t size);

// Writes <out>/cells/<id>/result.json, <out>/aggregate.csv and
// <out>/manifest.json. Returns the number of failed cells.
std::size_t run_experiment_matrix(const MatrixSpec& spec,
                                  const std::filesystem::path& out_dir,
                                  std::size_t workers = 1);

// Shared deterministic worker pool: runs fn(i) for i in [0, n).
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace cavq
