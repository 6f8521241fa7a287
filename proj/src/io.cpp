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

#include "cavq/io.hpp"

#include <fstream>
#include <sstream>

#include "cavq/error.hpp"

namespace cavq {

namespace {

// Runs a decoder and reports any JSON type or shape error as a parse error.
template <typename F>
auto decode(const char* what, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    fail(ErrorCode::kParse, std::string(what) + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument)
      fail(ErrorCode::kParse, std::string(what) + ": " + e.what());
    throw;
  }
}

std::size_t get_count(const Json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    fail(ErrorCode::kParse, std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

}  // namespace

Hamiltonian hamiltonian_from_json(const Json& j) {
  return decode("hamiltonian", [&] {
    Hamiltonian h(get_count(j, "num_qubits", 0));
    h.offset = j.value("offset", 0.0);
    for (const auto& t : j.at("terms")) {
      PauliTerm term = parse_pauli(t.at("pauli").get<std::string>(), t.value("coeff", 1.0));
      if (term.width() != h.num_qubits)
        fail(ErrorCode::kParse, "term '" + term.label() + "' does not have width " +
                                    std::to_string(h.num_qubits));
      h.add(std::move(term));
    }
    return h;
  });
}

Json to_json(const Hamiltonian& h) {
  Json terms = Json::array();
  for (const auto& t : h.terms) terms.push_back({{"pauli", t.label()}, {"coeff", t.coefficient}});
  return {{"num_qubits", h.num_qubits}, {"offset", h.offset}, {"terms", terms}};
}

ProblemGraph graph_from_json(const Json& j) {
  return decode("graph", [&] {
    ProblemGraph g(get_count(j, "nodes", 0));
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3)
        fail(ErrorCode::kParse, "edges must be [i, j] or [i, j, weight]");
      g.add_edge(e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                 e.size() == 3 ? e[2].get<double>() : 1.0);
    }
    return g;
  });
}

Json to_json(const ProblemGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges) {
    if (e.weight == 1.0)
      edges.push_back({e.a, e.b});
    else
      edges.push_back({e.a, e.b, e.weight});
  }
  return {{"nodes", g.num_nodes}, {"edges", edges}};
}

TopologyConfig topology_config_from_json(const Json& j) {
  return decode("topology", [&] {
    TopologyConfig c;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "cavity") {
      c.kind = TopologyKind::kCavity;
      c.cavities = get_count(j, "cavities", 2);
      c.modes = get_count(j, "modes", 1);
      const std::string coupling = j.value("coupling", std::string("line"));
      if (coupling == "line")
        c.coupling = TransmonCoupling::kLine;
      else if (coupling == "complete")
        c.coupling = TransmonCoupling::kComplete;
      else
        fail(ErrorCode::kParse, "unknown coupling '" + coupling + "'");
      c.shared_io = j.value("shared_io", false);
    } else if (kind == "honeycomb") {
      c.kind = TopologyKind::kHoneycomb;
      c.rows = get_count(j, "rows", 1);
      c.cols = get_count(j, "cols", 1);
    } else if (kind == "octagonal") {
      c.kind = TopologyKind::kOctagonal;
      c.nx = get_count(j, "nx", 1);
      c.ny = get_count(j, "ny", 1);
    } else {
      fail(ErrorCode::kParse, "unknown topology kind '" + kind + "'");
    }
    return c;
  });
}

Json to_json(const TopologyConfig& c) {
  switch (c.kind) {
    case TopologyKind::kCavity: {
      Json j = {{"kind", "cavity"},
                {"cavities", c.cavities},
                {"modes", c.modes},
                {"coupling", c.coupling == TransmonCoupling::kLine ? "line" : "complete"}};
      if (c.shared_io) j["shared_io"] = true;
      return j;
    }
    case TopologyKind::kHoneycomb:
      return {{"kind", "honeycomb"}, {"rows", c.rows}, {"cols", c.cols}};
    case TopologyKind::kOctagonal:
      return {{"kind", "octagonal"}, {"nx", c.nx}, {"ny", c.ny}};
  }
  return {};
}

Groupings groupings_from_json(const Json& j) {
  return decode("groupings", [&] {
    Groupings g;
    g.assignment = j.at("assignment").get<std::vector<std::size_t>>();
    g.capacities = j.at("capacities").get<std::vector<std::size_t>>();
    g.validate();
    return g;
  });
}

Json to_json(const Groupings& g) {
  return {{"assignment", g.assignment}, {"capacities", g.capacities}};
}

namespace {

Json resource_ref(const Topology& t, std::size_t r) {
  const Resource& res = t.resource(r);
  if (res.cls == ResourceClass::kCavityMode) return Json::array({res.cavity, res.mode});
  return r;
}

std::size_t resource_from(const Topology& t, const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2) fail(ErrorCode::kParse, "cavity modes are written as [cavity, mode]");
    return t.mode_resource(j[0].get<std::size_t>(), j[1].get<std::size_t>());
  }
  const std::size_t r = j.get<std::size_t>();
  if (r >= t.num_resources()) fail(ErrorCode::kParse, "resource id out of range");
  return r;
}

Json gate_to_json(const Topology& t, const Gate& g) {
  Json j;
  j["op"] = std::string(gate_name(g.kind));
  if (g.kind == GateKind::kSwapIn || g.kind == GateKind::kSwapOut) {
    j["transmon"] = g.q[0];
    j["mode"] = resource_ref(t, g.q[1]);
  } else if (g.arity() == 2) {
    j["t"] = {g.q[0], g.q[1]};
  } else {
    j["t"] = resource_ref(t, g.q[0]);
  }
  if (g.is_parametric()) j["angle"] = g.angle;
  if (g.routing) j["routing"] = true;
  return j;
}

}  // namespace

PhysicalCircuit physical_circuit_from_json(const Json& j) {
  return decode("physical circuit", [&] {
    PhysicalCircuit pc(build_topology(topology_config_from_json(j.at("topology"))));
    const Topology& t = pc.topology;
    for (const auto& gj : j.at("gates")) {
      const std::string op = gj.at("op").get<std::string>();
      const auto kind = gate_from_name(op);
      if (!kind) fail(ErrorCode::kParse, "unknown gate '" + op + "'");
      Gate g;
      g.kind = *kind;
      if (g.kind == GateKind::kSwapIn || g.kind == GateKind::kSwapOut) {
        g.q = {resource_from(t, gj.at("transmon")), resource_from(t, gj.at("mode"))};
      } else if (g.arity() == 2) {
        const Json& ops = gj.at("t");
        if (!ops.is_array() || ops.size() != 2)
          fail(ErrorCode::kParse, op + " needs two operands");
        g.q = {resource_from(t, ops[0]), resource_from(t, ops[1])};
      } else {
        const std::size_t r = resource_from(t, gj.at("t"));
        g.q = {r, r};
      }
      g.angle = gj.value("angle", 0.0);
      g.routing = gj.value("routing", false);
      pc.gates.push_back(g);
    }
    for (const auto& r : j.at("initial_placement")) pc.initial_placement.push_back(resource_from(t, r));
    for (const auto& r : j.at("final_placement")) pc.final_placement.push_back(resource_from(t, r));
    if (j.contains("term_order")) pc.term_order = j.at("term_order").get<std::vector<std::size_t>>();
    validate_physical(pc);
    return pc;
  });
}

Json to_json(const PhysicalCircuit& pc) {
  Json gates = Json::array();
  for (const Gate& g : pc.gates) gates.push_back(gate_to_json(pc.topology, g));
  Json init = Json::array(), fin = Json::array();
  for (std::size_t r : pc.initial_placement) init.push_back(resource_ref(pc.topology, r));
  for (std::size_t r : pc.final_placement) fin.push_back(resource_ref(pc.topology, r));
  Json j = {{"topology", to_json(pc.topology.config())},
            {"gates", gates},
            {"initial_placement", init},
            {"final_placement", fin}};
  if (!pc.term_order.empty()) j["term_order"] = pc.term_order;
  return j;
}

Json to_json(const Schedule& s) {
  Json events = Json::array();
  for (const auto& e : s.events) {
    Json r = Json::array();
    for (std::size_t k = 0; k < e.gate.arity(); ++k) r.push_back(e.gate.q[k]);
    Json ev = {{"op", std::string(gate_name(e.gate.kind))},
               {"resources", r},
               {"index", e.index},
               {"start", e.start},
               {"duration", e.duration}};
    if (e.gate.is_parametric()) ev["angle"] = e.gate.angle;
    events.push_back(ev);
  }
  return {{"makespan", s.makespan}, {"events", events}};
}

Json to_json(const RoutingMetrics& m) {
  return {{"cx", m.cx_count},
          {"single_qubit", m.single_qubit_count},
          {"swap_io", m.swap_io_count},
          {"swap_route", m.swap_route_count},
          {"depth", m.depth},
          {"routing_overhead", m.routing_overhead}};
}

Json to_json(const VqaResult& r) {
  Json j = {{"best_cost", r.best_cost},
            {"cost_history", r.cost_history},
            {"best_params", r.best_params},
            {"metrics", to_json(r.metrics)},
            {"makespan_ns", r.makespan},
            {"evaluations", r.evaluations}};
  j["exact_minimum"] = r.exact_minimum ? Json(*r.exact_minimum) : Json(nullptr);
  return j;
}

Json matrix_spec_to_json(const MatrixSpec& s) {
  Json cells = Json::array();
  for (const auto& c : s.cells)
    cells.push_back({{"id", c.id},
                     {"kind", c.kind},
                     {"arch", c.arch},
                     {"topology", to_json(c.topology)},
                     {"size", c.size},
                     {"layers", c.layers},
                     {"graph_seed", c.graph_seed},
                     {"seed", c.seed},
                     {"iterations", c.iterations},
                     {"noise", c.noise}});
  return {{"name", s.name}, {"cells", cells}};
}

MatrixSpec matrix_spec_from_json(const Json& j) {
  return decode("matrix spec", [&] {
    MatrixSpec s;
    s.name = j.value("name", std::string());
    for (const auto& cj : j.at("cells")) {
      MatrixCell c;
      c.id = cj.at("id").get<std::string>();
      c.kind = cj.value("kind", std::string("qaoa"));
      c.arch = cj.at("arch").get<std::string>();
      c.size = get_count(cj, "size", 4);
      c.topology = cj.contains("topology") ? topology_config_from_json(cj.at("topology"))
                                           : architecture_for(c.arch, c.size);
      c.layers = get_count(cj, "layers", 2);
      c.graph_seed = cj.value("graph_seed", std::uint64_t{0});
      c.seed = cj.value("seed", std::uint64_t{0});
      c.iterations = get_count(cj, "iterations", 500);
      c.noise = cj.value("noise", std::string("default"));
      for (const auto& other : s.cells)
        if (other.id == c.id) fail(ErrorCode::kParse, "duplicate cell id '" + c.id + "'");
      s.cells.push_back(c);
    }
    return s;
  });
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorCode::kParse, e.what());
  }
}

Json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) fail(ErrorCode::kIo, "cannot open " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::exception& e) {
    fail(ErrorCode::kParse, p.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write " + p.string());
  out << text;
  if (!out) fail(ErrorCode::kIo, "failed writing " + p.string());
}

}  // namespace cavq
