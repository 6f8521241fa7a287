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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "cavq/circuit.hpp"
#include "cavq/pauli.hpp"
#include "cavq/schedule.hpp"
#include "cavq/topology.hpp"
#include "cavq/transpile.hpp"

namespace cavq {

using cplx = std::complex<double>;
// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<cplx, 4>;
using Statevector = std::vector<cplx>;

inline constexpr double kForever = std::numeric_limits<double>::infinity();

struct CoherenceTimes {
  double t1_ns = kForever;
  double t2_ns = kForever;
};

struct NoiseParams {
  CoherenceTimes transmon;
  CoherenceTimes cavity;

  // "default": transmon 250 us, cavity 30 ms. "companion": transmon 0.1 ms,
  // cavity 1 ms. "none": no decay. T2 = T1 in every preset.
  static NoiseParams preset(const std::string& name);
  static NoiseParams none() { return {}; }

  const CoherenceTimes& of(ResourceClass cls) const noexcept {
    return cls == ResourceClass::kTransmon ? transmon : cavity;
  }
  // Rejects non-positive times and T2 > 2 T1.
  void validate() const;
};

Mat2 gate_matrix(GateKind kind, double angle = 0.0);

// Kraus sets. Amplitude damping {[[1,0],[0,sqrt(1-g)]], [[0,sqrt g],[0,0]]};
// dephasing {sqrt(1-l/2) I, sqrt(l/2) Z}, which scales coherences by 1 - l.
std::vector<Mat2> amplitude_damping_kraus(double gamma);
std::vector<Mat2> dephasing_kraus(double lambda);
// Kraus set of `second` applied after `first`.
std::vector<Mat2> compose_kraus(const std::vector<Mat2>& first,
                                const std::vector<Mat2>& second);
// Max-abs entry of sum K^dagger K - I.
double kraus_completeness_error(const std::vector<Mat2>& ks);

// gamma = 1 - exp(-t/T1); lambda = 1 - exp(-t/Tphi) with
// 1/Tphi = 1/T2 - 1/(2 T1).
double damping_gamma(double t_ns, double t1_ns);
double dephasing_lambda(double t_ns, double t1_ns, double t2_ns);
std::vector<Mat2> decay_kraus(double t_ns, double t1_ns, double t2_ns);

// Dense density matrix over n qubits; qubit q is bit q of the basis index.
class DensityMatrix {
 public:
  static constexpr std::size_t kMaxQubits = 12;

  explicit DensityMatrix(std::size_t n);
  static DensityMatrix from_statevector(const Statevector& psi);
  static DensityMatrix maximally_mixed(std::size_t n);

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_; }
  cplx operator()(std::size_t r, std::size_t c) const {
    return data_[(r << n_) | c];
  }
  cplx& at(std::size_t r, std::size_t c) { return data_[(r << n_) | c]; }
  std::span<const cplx> raw() const noexcept { return data_; }

  void apply_unitary(std::size_t q, const Mat2& u);
  void apply_cx(std::size_t control, std::size_t target);
  void apply_swap(std::size_t a, std::size_t b);
  void apply_kraus(std::size_t q, const std::vector<Mat2>& ks);
  // Closed form of decay_kraus applied to qubit q.
  void apply_decay(std::size_t q, double t_ns, double t1_ns, double t2_ns);
  // Same channel given directly as population survival and coherence factor.
  void apply_decay_factors(std::size_t q, double survival, double coherence);

  cplx trace() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
  double fidelity(const Statevector& psi) const;
  std::vector<double> diagonal() const;
  // Marginal over `qubits`; outcome bit i is qubits[i].
  std::vector<double> marginal(const std::vector<std::size_t>& qubits) const;

 private:
  std::size_t n_;
  std::vector<cplx> data_;
};

// Ideal unitary gate on slot indices. SwapIn/SwapOut act as SWAP.
void apply_gate(DensityMatrix& rho, const Gate& g);
void apply_gate(Statevector& psi, std::size_t n, const Gate& g);

// Decay during the gate window is applied separately by simulate().
void apply_decay(DensityMatrix& rho, std::size_t q, double t_ns,
                 const CoherenceTimes& times);

struct SimOptions {
  std::size_t max_slots = DensityMatrix::kMaxQubits;
};

// State of the resources that ever held information. Resources are bound to
// matrix slots on first use; I/O and SWAP gates move bindings, which is exact
// because their partner is always in |0> or is itself bound.
struct SimulationResult {
  DensityMatrix rho;
  std::vector<std::size_t> slot_of_resource;  // kUnbound if never used
  std::vector<std::size_t> final_placement;   // logical -> resource
  std::vector<std::size_t> measured;          // resources read out
  static constexpr std::size_t kUnbound = static_cast<std::size_t>(-1);

  // Slot of each logical qubit; kUnbound for qubits no gate ever touched,
  // which are still in |0>.
  std::vector<std::size_t> logical_slots() const;
  double trace_error() const { return std::abs(rho.trace() - cplx{1.0, 0.0}); }
};

// Event sweep in start order. Before each event its operands decay for the
// time since they were last brought up to date (which includes the previous
// gate window), using the class of the resource; then the ideal gate is
// applied. All resources are flushed to the makespan at the end.
SimulationResult simulate(const Schedule& s, const NoiseParams& noise,
                          const SimOptions& opts = {});

// Number of slots simulate() would allocate.
std::size_t count_slots(const Schedule& s);

// qubit_slots[q] may be SimulationResult::kUnbound, meaning qubit q is |0>.
double pauli_expectation(const DensityMatrix& rho, const PauliTerm& term,
                         const std::vector<std::size_t>& qubit_slots);
// Sum of c Tr(rho P) plus the offset. Throws if the imaginary part exceeds
// 1e-10.
double expectation(const DensityMatrix& rho, const Hamiltonian& h,
                   const std::vector<std::size_t>& qubit_slots);
double expectation(const SimulationResult& res, const Hamiltonian& h);

Statevector statevector_oracle(const LogicalCircuit& c);
Statevector basis_state(std::size_t n, std::size_t index = 0);
double state_fidelity(const Statevector& a, const Statevector& b);
double expectation(const Statevector& psi, const Hamiltonian& h);

// Noiseless state of a physical circuit over the resources it touches,
// listed in `resources` (bit i of the index is resources[i]). The logical
// input defaults to |0...0> and is placed per the initial placement.
Statevector physical_statevector(const PhysicalCircuit& pc,
                                 std::vector<std::size_t>& resources,
                                 const Statevector& logical_input = {});

// Places a logical state on the given resources with every other resource in
// |0>; resource order as in physical_statevector.
Statevector embed_logical_state(const Statevector& logical,
                                const std::vector<std::size_t>& placement,
                                const std::vector<std::size_t>& resources);

}  // namespace cavq
