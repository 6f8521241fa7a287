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

#include "cavq/circuit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cavq/error.hpp"

namespace cavq {

namespace {

constexpr double kPi = std::numbers::pi;

struct GateInfo {
  GateKind kind;
  std::string_view name;
  std::size_t arity;
};

constexpr GateInfo kGateTable[] = {
    {GateKind::kH, "h", 1},          {GateKind::kX, "x", 1},
    {GateKind::kSX, "sx", 1},        {GateKind::kId, "id", 1},
    {GateKind::kRX, "rx", 1},        {GateKind::kRY, "ry", 1},
    {GateKind::kRZ, "rz", 1},        {GateKind::kCX, "cx", 2},
    {GateKind::kSwap, "swap", 2},    {GateKind::kSwapIn, "swap_in", 2},
    {GateKind::kSwapOut, "swap_out", 2}, {GateKind::kMeasure, "measure", 1},
};

const GateInfo& info(GateKind k) {
  return kGateTable[static_cast<std::size_t>(k)];
}

}  // namespace

std::size_t gate_arity(GateKind k) noexcept { return info(k).arity; }
std::string_view gate_name(GateKind k) noexcept { return info(k).name; }

std::optional<GateKind> gate_from_name(std::string_view name) noexcept {
  for (const auto& g : kGateTable)
    if (g.name == name) return g.kind;
  return std::nullopt;
}

bool is_basis_gate(GateKind k) noexcept {
  switch (k) {
    case GateKind::kCX:
    case GateKind::kRZ:
    case GateKind::kSX:
    case GateKind::kX:
    case GateKind::kId:
    case GateKind::kMeasure:
    case GateKind::kSwapIn:
    case GateKind::kSwapOut:
      return true;
    default:
      return false;
  }
}

std::size_t Gate::arity() const noexcept { return gate_arity(kind); }

bool Gate::is_parametric() const noexcept {
  return kind == GateKind::kRX || kind == GateKind::kRY ||
         kind == GateKind::kRZ;
}

void LogicalCircuit::add(const Gate& g) {
  Gate copy = g;
  if (copy.arity() == 1) copy.q[1] = copy.q[0];
  gates.push_back(copy);
}

void LogicalCircuit::append(const LogicalCircuit& other) {
  require(other.num_qubits <= num_qubits,
          "appended circuit is wider than the target");
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

std::size_t LogicalCircuit::count(GateKind k) const {
  std::size_t n = 0;
  for (const auto& g : gates) n += (g.kind == k);
  return n;
}

void LogicalCircuit::validate() const {
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    std::ostringstream where;
    where << "gate " << i << " (" << gate_name(g.kind) << ")";
    if (g.kind == GateKind::kSwapIn || g.kind == GateKind::kSwapOut)
      fail(ErrorCode::kInvalidArgument,
           where.str() + ": cavity I/O is not a logical gate");
    for (std::size_t k = 0; k < g.arity(); ++k)
      require(g.q[k] < num_qubits, where.str() + ": qubit out of range");
    if (g.arity() == 2)
      require(g.q[0] != g.q[1], where.str() + ": operands must differ");
    require(std::isfinite(g.angle), where.str() + ": angle is not finite");
  }
}

std::vector<Gate> lower_gates(const std::vector<Gate>& gates,
                              const LoweringOptions& opts) {
  std::vector<Gate> out;
  out.reserve(gates.size() * 2);
  auto one = [&](const Gate& src, GateKind k, double angle = 0.0) {
    Gate g = Gate::one(k, src.q[0], angle);
    g.routing = src.routing;
    out.push_back(g);
  };
  for (const Gate& g : gates) {
    switch (g.kind) {
      case GateKind::kH:
        one(g, GateKind::kRZ, kPi / 2);
        one(g, GateKind::kSX);
        one(g, GateKind::kRZ, kPi / 2);
        break;
      case GateKind::kRX:
        one(g, GateKind::kRZ, kPi / 2);
        one(g, GateKind::kSX);
        one(g, GateKind::kRZ, g.angle + kPi);
        one(g, GateKind::kSX);
        one(g, GateKind::kRZ, kPi / 2);
        break;
      case GateKind::kRY:
        one(g, GateKind::kSX);
        one(g, GateKind::kRZ, g.angle + kPi);
        one(g, GateKind::kSX);
        one(g, GateKind::kRZ, kPi);
        break;
      case GateKind::kSwap:
        if (opts.expand_swaps) {
          for (int k = 0; k < 3; ++k) {
            Gate cx = (k == 1) ? Gate::two(GateKind::kCX, g.q[1], g.q[0])
                               : Gate::two(GateKind::kCX, g.q[0], g.q[1]);
            cx.routing = g.routing;
            out.push_back(cx);
          }
        } else {
          out.push_back(g);
        }
        break;
      case GateKind::kCX:
      case GateKind::kRZ:
      case GateKind::kSX:
      case GateKind::kX:
      case GateKind::kId:
      case GateKind::kMeasure:
      case GateKind::kSwapIn:
      case GateKind::kSwapOut:
        out.push_back(g);
        break;
      default:
        fail(ErrorCode::kInvalidArgument,
             "cannot lower gate kind " + std::string(gate_name(g.kind)));
    }
  }
  return out;
}

LogicalCircuit lower_to_basis(const LogicalCircuit& c,
                              const LoweringOptions& opts) {
  LogicalCircuit out(c.num_qubits);
  out.gates = lower_gates(c.gates, opts);
  return out;
}

std::vector<Gate> just_in_time_order(const std::vector<Gate>& gates) {
  std::size_t width = 0;
  for (const auto& g : gates) width = std::max({width, g.q[0] + 1, g.q[1] + 1});

  // last_multi[q]: index of the last multi-qubit gate touching q.
  std::vector<long> last_multi(width, -1);
  for (std::size_t i = 0; i < gates.size(); ++i)
    if (gates[i].arity() == 2) {
      last_multi[gates[i].q[0]] = static_cast<long>(i);
      last_multi[gates[i].q[1]] = static_cast<long>(i);
    }

  std::vector<std::vector<Gate>> pending(width);
  std::vector<Gate> out;
  out.reserve(gates.size());
  auto flush = [&](std::size_t q) {
    for (const auto& g : pending[q]) out.push_back(g);
    pending[q].clear();
  };
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    if (g.arity() == 2) {
      flush(g.q[0]);
      flush(g.q[1]);
      out.push_back(g);
    } else if (last_multi[g.q[0]] > static_cast<long>(i)) {
      pending[g.q[0]].push_back(g);
    } else {
      flush(g.q[0]);
      out.push_back(g);
    }
  }
  for (std::size_t q = 0; q < width; ++q) flush(q);
  return out;
}

}  // namespace cavq
