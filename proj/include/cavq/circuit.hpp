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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cavq {

// Gate vocabulary shared by logical and physical circuits. SwapIn/SwapOut
// only appear in physical cavity circuits; they are ideal SWAPs between a
// transmon and a cavity mode, operands always {transmon, mode}:
//   SwapOut: mode -> transmon (the transmon must be empty)
//   SwapIn:  transmon -> mode (the mode must be empty)
enum class GateKind {
  kH,
  kX,
  kSX,
  kId,
  kRX,
  kRY,
  kRZ,
  kCX,
  kSwap,
  kSwapIn,
  kSwapOut,
  kMeasure,
};

struct Gate {
  GateKind kind = GateKind::kId;
  std::array<std::size_t, 2> q{0, 0};
  double angle = 0.0;
  // Set on gates a transpiler appended purely to move state around.
  bool routing = false;

  static Gate one(GateKind k, std::size_t a, double angle = 0.0) {
    return Gate{k, {a, a}, angle, false};
  }
  static Gate two(GateKind k, std::size_t a, std::size_t b) {
    return Gate{k, {a, b}, 0.0, false};
  }

  std::size_t arity() const noexcept;
  bool is_parametric() const noexcept;
  bool operator==(const Gate&) const = default;
};

std::size_t gate_arity(GateKind k) noexcept;
std::string_view gate_name(GateKind k) noexcept;
std::optional<GateKind> gate_from_name(std::string_view name) noexcept;

bool is_basis_gate(GateKind k) noexcept;

struct LogicalCircuit {
  std::size_t num_qubits = 0;
  std::vector<Gate> gates;

  LogicalCircuit() = default;
  explicit LogicalCircuit(std::size_t n) : num_qubits(n) {}

  void add(const Gate& g);
  void h(std::size_t q) { add(Gate::one(GateKind::kH, q)); }
  void x(std::size_t q) { add(Gate::one(GateKind::kX, q)); }
  void rx(std::size_t q, double t) { add(Gate::one(GateKind::kRX, q, t)); }
  void ry(std::size_t q, double t) { add(Gate::one(GateKind::kRY, q, t)); }
  void rz(std::size_t q, double t) { add(Gate::one(GateKind::kRZ, q, t)); }
  void cx(std::size_t c, std::size_t t) { add(Gate::two(GateKind::kCX, c, t)); }
  void swap(std::size_t a, std::size_t b) { add(Gate::two(GateKind::kSwap, a, b)); }

  void append(const LogicalCircuit& other);
  std::size_t count(GateKind k) const;

  // Throws if any gate violates the container invariants.
  void validate() const;
};

struct LoweringOptions {
  // When false, SWAPs are kept as composite gates (used by the simulator
  // path, where a SWAP against an empty partner is a relabelling).
  bool expand_swaps = true;
};

// Rewrites onto {CX, RZ, SX, X, Id, MEASURE} plus the physical cavity I/O
// gates. Exact up to global phase:
//   H      -> RZ(pi/2) SX RZ(pi/2)
//   RX(t)  -> RZ(pi/2) SX RZ(t+pi) SX RZ(pi/2)
//   RY(t)  -> SX RZ(t+pi) SX RZ(pi)
//   SWAP   -> CX(a,b) CX(b,a) CX(a,b)
std::vector<Gate> lower_gates(const std::vector<Gate>& gates,
                              const LoweringOptions& opts = {});
LogicalCircuit lower_to_basis(const LogicalCircuit& c,
                              const LoweringOptions& opts = {});

// Reorders single-qubit gates so each one sits directly next to the
// multi-qubit gate it precedes or follows on the same qubit. Per-qubit order
// is preserved, so the unitary is unchanged.
std::vector<Gate> just_in_time_order(const std::vector<Gate>& gates);

}  // namespace cavq
