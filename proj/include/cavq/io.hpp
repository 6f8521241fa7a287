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

#include <filesystem>
#include <string>

#include "json.hpp"

#include "cavq/bench.hpp"
#include "cavq/partition.hpp"
#include "cavq/pauli.hpp"
#include "cavq/schedule.hpp"
#include "cavq/topology.hpp"
#include "cavq/transpile.hpp"
#include "cavq/vqa.hpp"

namespace cavq {

using Json = nlohmann::json;

// {"num_qubits": N, "offset": x, "terms": [{"pauli": "XXII", "coeff": 0.5}]}
Hamiltonian hamiltonian_from_json(const Json& j);
Json to_json(const Hamiltonian& h);

// {"nodes": N, "edges": [[i, j], [i, j, w], ...]}
ProblemGraph graph_from_json(const Json& j);
Json to_json(const ProblemGraph& g);

// {"kind": "cavity", "cavities": 2, "modes": 4, "coupling": "line"}
// {"kind": "honeycomb", "rows": 2, "cols": 3}
// {"kind": "octagonal", "nx": 2, "ny": 2}
TopologyConfig topology_config_from_json(const Json& j);
Json to_json(const TopologyConfig& c);

// {"assignment": [0, 0, 1, 1], "capacities": [2, 2]}
Groupings groupings_from_json(const Json& j);
Json to_json(const Groupings& g);

// {"topology": {...}, "gates": [{"op": "swap_out", "mode": [c, m],
//  "transmon": t}, {"op": "cx", "t": [a, b]}, {"op": "rz", "t": a,
//  "angle": x}, ...], "initial_placement": [...], "final_placement": [...]}
// Cavity modes are addressed as [cavity, mode]; everything else by id.
PhysicalCircuit physical_circuit_from_json(const Json& j);
Json to_json(const PhysicalCircuit& pc);

Json to_json(const Schedule& s);
Json to_json(const RoutingMetrics& m);
Json to_json(const VqaResult& r);

Json matrix_spec_to_json(const MatrixSpec& s);
MatrixSpec matrix_spec_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& p);
void write_text_file(const std::filesystem::path& p, const std::string& text);
Json parse_json(const std::string& text);

}  // namespace cavq
