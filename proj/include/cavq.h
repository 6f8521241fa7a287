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

#ifndef CAVQ_H_
#define CAVQ_H_

#include <stddef.h>
#include <stdint.h>

#if defined(CAVQ_BUILDING_LIBRARY)
#define CAVQ_API __attribute__((visibility("default")))
#else
#define CAVQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cavq_status {
  CAVQ_OK = 0,
  CAVQ_INVALID_ARGUMENT = 1,
  CAVQ_PARSE = 2,
  CAVQ_INFEASIBLE = 3,
  CAVQ_RESOURCE_LIMIT = 4,
  CAVQ_IO = 5,
  CAVQ_INTERNAL = 6
} cavq_status;

typedef struct cavq_hamiltonian cavq_hamiltonian;
typedef struct cavq_graph cavq_graph;
typedef struct cavq_topology cavq_topology;
typedef struct cavq_circuit cavq_circuit;

CAVQ_API const char* cavq_version(void);
/* Message of the last failed call on this thread; empty after success. */
CAVQ_API const char* cavq_last_error(void);
/* Releases any string returned through a char** out parameter. */
CAVQ_API void cavq_string_free(char* s);

/* Hamiltonians: {"num_qubits", "offset", "terms": [{"pauli", "coeff"}]}. */
CAVQ_API cavq_status cavq_hamiltonian_from_json(const char* json,
                                                cavq_hamiltonian** out);
/* Random Pauli strings of the given arities (NULL selects 2, 3, 4). */
CAVQ_API cavq_status cavq_hamiltonian_random(size_t num_qubits, size_t num_terms,
                                             uint64_t seed, const size_t* arities,
                                             size_t num_arities,
                                             cavq_hamiltonian** out);
CAVQ_API cavq_status cavq_hamiltonian_to_json(const cavq_hamiltonian* h, char** out);
CAVQ_API size_t cavq_hamiltonian_num_qubits(const cavq_hamiltonian* h);
CAVQ_API void cavq_hamiltonian_free(cavq_hamiltonian* h);

/* Problem graphs: {"nodes", "edges": [[i, j] or [i, j, w]]}. */
CAVQ_API cavq_status cavq_graph_from_json(const char* json, cavq_graph** out);
CAVQ_API cavq_status cavq_graph_random_cubic(size_t nodes, uint64_t seed,
                                             cavq_graph** out);
CAVQ_API cavq_status cavq_graph_to_json(const cavq_graph* g, char** out);
CAVQ_API void cavq_graph_free(cavq_graph* g);

/* Topologies: {"kind": "cavity", "cavities", "modes", "coupling"},
   {"kind": "honeycomb", "rows", "cols"} or {"kind": "octagonal", "nx", "ny"}. */
CAVQ_API cavq_status cavq_topology_from_json(const char* json, cavq_topology** out);
CAVQ_API cavq_status cavq_topology_to_json(const cavq_topology* t, char** out);
CAVQ_API size_t cavq_topology_num_resources(const cavq_topology* t);
CAVQ_API cavq_status cavq_topology_distance(const cavq_topology* t, size_t a,
                                            size_t b, size_t* out);
CAVQ_API void cavq_topology_free(cavq_topology* t);

typedef enum cavq_layout { CAVQ_LAYOUT_TRIVIAL = 0, CAVQ_LAYOUT_DEGREE = 1 } cavq_layout;

typedef struct cavq_transpile_options {
  double theta;
  uint64_t seed;
  int cancel_swaps;
  size_t partition_restarts;
  cavq_layout layout;
} cavq_transpile_options;

CAVQ_API void cavq_transpile_options_default(cavq_transpile_options* opts);

/* One Trotter step of h, mapped onto t. Cavity topologies use the
   partition-driven transpiler, lattices the greedy router. opts may be NULL. */
CAVQ_API cavq_status cavq_transpile(const cavq_hamiltonian* h, const cavq_topology* t,
                                    const cavq_transpile_options* opts,
                                    cavq_circuit** out);
CAVQ_API cavq_status cavq_circuit_from_json(const char* json, cavq_circuit** out);
CAVQ_API cavq_status cavq_circuit_to_json(const cavq_circuit* c, char** out);
CAVQ_API void cavq_circuit_free(cavq_circuit* c);

typedef struct cavq_metrics {
  size_t cx;
  size_t single_qubit;
  size_t swap_io;
  size_t swap_route;
  size_t depth;
  size_t routing_overhead;
} cavq_metrics;

CAVQ_API cavq_status cavq_circuit_metrics(const cavq_circuit* c, cavq_metrics* out);
/* ASAP schedule as JSON; lower != 0 rewrites to basis gates first. */
CAVQ_API cavq_status cavq_circuit_schedule_json(const cavq_circuit* c, int lower,
                                                char** out);

/* Lowers, schedules and simulates c under a noise preset ("default",
   "companion" or "none"). The JSON result holds the makespan, the trace
   error, "probabilities" of the top_k most likely logical outcomes and, when
   observable is not NULL, its expectation. */
CAVQ_API cavq_status cavq_simulate(const cavq_circuit* c, const char* noise,
                                   const cavq_hamiltonian* observable, size_t top_k,
                                   char** out);

typedef struct cavq_vqa_options {
  size_t iterations;
  double a;
  double c;
  double big_a;
  double alpha;
  double gamma;
  uint64_t seed;
  uint64_t shots;
  uint64_t partition_seed;
  const char* noise;
} cavq_vqa_options;

CAVQ_API void cavq_vqa_options_default(cavq_vqa_options* opts);
CAVQ_API cavq_status cavq_run_qaoa(const cavq_graph* g, size_t layers,
                                   const cavq_topology* t,
                                   const cavq_vqa_options* opts, char** out);
CAVQ_API cavq_status cavq_run_vqe(const cavq_hamiltonian* h, size_t layers,
                                  const cavq_topology* t,
                                  const cavq_vqa_options* opts, char** out);

/* Routing benchmark. config_json may be NULL or "{}" for the defaults; keys
   qubits/terms ([first, last, step]), seeds, base_seed, arities, theta,
   workers, architectures ([{"name", "topology"}]). */
CAVQ_API cavq_status cavq_bench_routing(const char* config_json, char** out_csv,
                                        char** out_summary);

CAVQ_API cavq_status cavq_matrix_preset(const char* name, size_t iterations,
                                        uint64_t seed, char** out);
/* Runs every cell of a matrix spec (or manifest) into out_dir. */
CAVQ_API cavq_status cavq_run_matrix(const char* spec_json, const char* out_dir,
                                     size_t workers, size_t* failed_cells);

#ifdef __cplusplus
}
#endif

#endif  // CAVQ_H_
