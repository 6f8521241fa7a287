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

#include "cavq/densim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cavq/error.hpp"

namespace cavq {

namespace {

constexpr cplx kI{0.0, 1.0};

Mat2 adjoint(const Mat2& m) {
  return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

void check_times(const CoherenceTimes& t, const char* what) {
  if (!(t.t1_ns > 0.0) || !(t.t2_ns > 0.0))
    fail(ErrorCode::kInvalidArgument, std::string(what) + ": T1 and T2 must be positive");
  if (t.t2_ns > 2.0 * t.t1_ns)
    fail(ErrorCode::kInvalidArgument, std::string(what) + ": T2 exceeds 2 T1");
}

}  // namespace

NoiseParams NoiseParams::preset(const std::string& name) {
  NoiseParams p;
  if (name == "default") {
    p.transmon = {250e3, 250e3};
    p.cavity = {30e6, 30e6};
  } else if (name == "companion") {
    p.transmon = {100e3, 100e3};
    p.cavity = {1e6, 1e6};
  } else if (name != "none") {
    fail(ErrorCode::kInvalidArgument, "unknown noise preset '" + name + "'");
  }
  return p;
}

void NoiseParams::validate() const {
  check_times(transmon, "transmon");
  check_times(cavity, "cavity");
}

Mat2 gate_matrix(GateKind kind, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  const double r = 1.0 / std::numbers::sqrt2;
  switch (kind) {
    case GateKind::kH: return {r, r, r, -r};
    case GateKind::kX: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::kSX:
      return {cplx{0.5, 0.5}, cplx{0.5, -0.5}, cplx{0.5, -0.5}, cplx{0.5, 0.5}};
    case GateKind::kId: return {1.0, 0.0, 0.0, 1.0};
    case GateKind::kRX: return {c, -kI * s, -kI * s, c};
    case GateKind::kRY: return {c, -s, s, c};
    case GateKind::kRZ: return {std::polar(1.0, -angle / 2), 0.0, 0.0, std::polar(1.0, angle / 2)};
    default:
      fail(ErrorCode::kInvalidArgument,
           "no single-qubit matrix for " + std::string(gate_name(kind)));
  }
}

std::vector<Mat2> amplitude_damping_kraus(double gamma) {
  require(gamma >= 0.0 && gamma <= 1.0, "damping probability outside [0, 1]");
  return {Mat2{1.0, 0.0, 0.0, std::sqrt(1.0 - gamma)},
          Mat2{0.0, std::sqrt(gamma), 0.0, 0.0}};
}

std::vector<Mat2> dephasing_kraus(double lambda) {
  require(lambda >= 0.0 && lambda <= 1.0, "dephasing probability outside [0, 1]");
  const double a = std::sqrt(1.0 - lambda / 2), b = std::sqrt(lambda / 2);
  return {Mat2{a, 0.0, 0.0, a}, Mat2{b, 0.0, 0.0, -b}};
}

std::vector<Mat2> compose_kraus(const std::vector<Mat2>& first,
                                const std::vector<Mat2>& second) {
  std::vector<Mat2> out;
  for (const auto& b : second)
    for (const auto& a : first) out.push_back(mul(b, a));
  return out;
}

double kraus_completeness_error(const std::vector<Mat2>& ks) {
  Mat2 sum{0.0, 0.0, 0.0, 0.0};
  for (const auto& k : ks) {
    const Mat2 p = mul(adjoint(k), k);
    for (int i = 0; i < 4; ++i) sum[i] += p[i];
  }
  sum[0] -= 1.0;
  sum[3] -= 1.0;
  double e = 0.0;
  for (const auto& v : sum) e = std::max(e, std::abs(v));
  return e;
}

double damping_gamma(double t_ns, double t1_ns) {
  require(t_ns >= 0.0, "decay time must be non-negative");
  return -std::expm1(-t_ns / t1_ns);
}

double dephasing_lambda(double t_ns, double t1_ns, double t2_ns) {
  require(t_ns >= 0.0, "decay time must be non-negative");
  const double rate = 1.0 / t2_ns - 0.5 / t1_ns;
  require(rate >= -1e-18, "T2 exceeds 2 T1");
  return -std::expm1(-t_ns * std::max(rate, 0.0));
}

std::vector<Mat2> decay_kraus(double t_ns, double t1_ns, double t2_ns) {
  return compose_kraus(amplitude_damping_kraus(damping_gamma(t_ns, t1_ns)),
                       dephasing_kraus(dephasing_lambda(t_ns, t1_ns, t2_ns)));
}

DensityMatrix::DensityMatrix(std::size_t n) : n_(n) {
  if (n > kMaxQubits)
    fail(ErrorCode::kResourceLimit,
         "density matrix over " + std::to_string(n) + " qubits exceeds the " +
             std::to_string(kMaxQubits) + "-qubit limit");
  data_.assign(dim() * dim(), cplx{});
  data_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_statevector(const Statevector& psi) {
  const std::size_t n = static_cast<std::size_t>(std::countr_zero(psi.size()));
  require(psi.size() == (std::size_t{1} << n), "state length is not a power of two");
  DensityMatrix rho(n);
  for (std::size_t r = 0; r < psi.size(); ++r)
    for (std::size_t c = 0; c < psi.size(); ++c) rho.at(r, c) = psi[r] * std::conj(psi[c]);
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n) {
  DensityMatrix rho(n);
  rho.data_[0] = 0.0;
  const double p = 1.0 / static_cast<double>(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) rho.at(i, i) = p;
  return rho;
}

void DensityMatrix::apply_unitary(std::size_t q, const Mat2& u) {
  require(q < n_, "qubit out of range");
  const std::size_t bit = std::size_t{1} << q, d = dim();
  if (u[1] == cplx{} && u[2] == cplx{}) {
    // Diagonal: rho_rc picks up u_r conj(u_c).
    const cplx p[2][2] = {{u[0] * std::conj(u[0]), u[0] * std::conj(u[3])},
                          {u[3] * std::conj(u[0]), u[3] * std::conj(u[3])}};
    for (std::size_t r = 0; r < d; ++r) {
      cplx* row = &data_[r << n_];
      const cplx* pr = p[(r & bit) ? 1 : 0];
      for (std::size_t c0 = 0; c0 < d; c0 += 2 * bit)
        for (std::size_t c = c0; c < c0 + bit; ++c) {
          row[c] *= pr[0];
          row[c | bit] *= pr[1];
        }
    }
    return;
  }
  const Mat2 ud = adjoint(u);
  for (std::size_t r0 = 0; r0 < d; r0 += 2 * bit)
    for (std::size_t r = r0; r < r0 + bit; ++r) {
      cplx* row0 = &data_[r << n_];
      cplx* row1 = &data_[(r | bit) << n_];
      for (std::size_t c0 = 0; c0 < d; c0 += 2 * bit)
        for (std::size_t c = c0; c < c0 + bit; ++c) {
          const cplx a = row0[c], b = row0[c | bit], e = row1[c], f = row1[c | bit];
          // t = U * B
          const cplx t00 = u[0] * a + u[1] * e, t01 = u[0] * b + u[1] * f;
          const cplx t10 = u[2] * a + u[3] * e, t11 = u[2] * b + u[3] * f;
          row0[c] = t00 * ud[0] + t01 * ud[2];
          row0[c | bit] = t00 * ud[1] + t01 * ud[3];
          row1[c] = t10 * ud[0] + t11 * ud[2];
          row1[c | bit] = t10 * ud[1] + t11 * ud[3];
        }
    }
}

void DensityMatrix::apply_cx(std::size_t control, std::size_t target) {
  require(control < n_ && target < n_ && control != target, "invalid cx operands");
  const std::size_t cb = std::size_t{1} << control, tb = std::size_t{1} << target;
  const std::size_t d = dim();
  for (std::size_t r = 0; r < d; ++r)
    if ((r & cb) && !(r & tb))
      std::swap_ranges(&data_[r << n_], &data_[r << n_] + d, &data_[(r | tb) << n_]);
  for (std::size_t r = 0; r < d; ++r) {
    cplx* row = &data_[r << n_];
    for (std::size_t c0 = 0; c0 < d; c0 += 2 * tb)
      for (std::size_t c = c0; c < c0 + tb; ++c)
        if (c & cb) std::swap(row[c], row[c | tb]);
  }
}

void DensityMatrix::apply_swap(std::size_t a, std::size_t b) {
  require(a < n_ && b < n_, "swap operand out of range");
  if (a == b) return;
  const std::size_t ab = std::size_t{1} << a, bb = std::size_t{1} << b;
  const std::size_t d = dim();
  for (std::size_t r = 0; r < d; ++r)
    if ((r & ab) && !(r & bb))
      std::swap_ranges(&data_[r << n_], &data_[r << n_] + d, &data_[(r ^ ab ^ bb) << n_]);
  for (std::size_t r = 0; r < d; ++r) {
    cplx* row = &data_[r << n_];
    for (std::size_t c = 0; c < d; ++c)
      if ((c & ab) && !(c & bb)) std::swap(row[c], row[c ^ ab ^ bb]);
  }
}

void DensityMatrix::apply_kraus(std::size_t q, const std::vector<Mat2>& ks) {
  require(q < n_, "qubit out of range");
  const std::size_t bit = std::size_t{1} << q, d = dim();
  std::vector<Mat2> kd;
  for (const auto& k : ks) kd.push_back(adjoint(k));
  for (std::size_t r = 0; r < d; ++r) {
    if (r & bit) continue;
    cplx* row0 = &data_[r << n_];
    cplx* row1 = &data_[(r | bit) << n_];
    for (std::size_t c = 0; c < d; ++c) {
      if (c & bit) continue;
      const Mat2 blk{row0[c], row0[c | bit], row1[c], row1[c | bit]};
      Mat2 acc{0.0, 0.0, 0.0, 0.0};
      for (std::size_t i = 0; i < ks.size(); ++i) {
        const Mat2 t = mul(mul(ks[i], blk), kd[i]);
        for (int j = 0; j < 4; ++j) acc[j] += t[j];
      }
      row0[c] = acc[0];
      row0[c | bit] = acc[1];
      row1[c] = acc[2];
      row1[c | bit] = acc[3];
    }
  }
}

void DensityMatrix::apply_decay_factors(std::size_t q, double survival,
                                        double coherence) {
  require(q < n_, "qubit out of range");
  if (survival == 1.0 && coherence == 1.0) return;
  const double lost = 1.0 - survival;
  const std::size_t bit = std::size_t{1} << q, d = dim();
  for (std::size_t r0 = 0; r0 < d; r0 += 2 * bit)
    for (std::size_t r = r0; r < r0 + bit; ++r) {
      cplx* row0 = &data_[r << n_];
      cplx* row1 = &data_[(r | bit) << n_];
      for (std::size_t c0 = 0; c0 < d; c0 += 2 * bit)
        for (std::size_t c = c0; c < c0 + bit; ++c) {
          const cplx e = row1[c | bit];
          row0[c] += lost * e;
          row1[c | bit] = survival * e;
          row0[c | bit] *= coherence;
          row1[c] *= coherence;
        }
    }
}

void DensityMatrix::apply_decay(std::size_t q, double t_ns, double t1_ns, double t2_ns) {
  require(t_ns >= 0.0, "decay time must be non-negative");
  check_times({t1_ns, t2_ns}, "decay");
  apply_decay_factors(q, std::exp(-t_ns / t1_ns), std::exp(-t_ns / t2_ns));
}

cplx DensityMatrix::trace() const {
  cplx t{};
  for (std::size_t i = 0; i < dim(); ++i) t += (*this)(i, i);
  return t;
}

double DensityMatrix::hermiticity_error() const {
  double e = 0.0;
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t c = r; c < dim(); ++c)
      e = std::max(e, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return e;
}

double DensityMatrix::min_eigenvalue() const {
  const std::size_t d = dim();
  Eigen::MatrixXcd m(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) m(r, c) = (*this)(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double DensityMatrix::fidelity(const Statevector& psi) const {
  require(psi.size() == dim(), "state dimension mismatch");
  cplx f{};
  for (std::size_t r = 0; r < dim(); ++r) {
    cplx row{};
    for (std::size_t c = 0; c < dim(); ++c) row += (*this)(r, c) * psi[c];
    f += std::conj(psi[r]) * row;
  }
  return f.real();
}

std::vector<double> DensityMatrix::diagonal() const {
  std::vector<double> p(dim());
  for (std::size_t i = 0; i < dim(); ++i) p[i] = (*this)(i, i).real();
  return p;
}

std::vector<double> DensityMatrix::marginal(const std::vector<std::size_t>& qubits) const {
  for (std::size_t q : qubits) require(q < n_, "marginal qubit out of range");
  std::vector<double> out(std::size_t{1} << qubits.size(), 0.0);
  for (std::size_t i = 0; i < dim(); ++i) {
    std::size_t k = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) k |= ((i >> qubits[j]) & 1) << j;
    out[k] += (*this)(i, i).real();
  }
  return out;
}

void apply_gate(DensityMatrix& rho, const Gate& g) {
  switch (g.kind) {
    case GateKind::kCX: rho.apply_cx(g.q[0], g.q[1]); break;
    case GateKind::kSwap:
    case GateKind::kSwapIn:
    case GateKind::kSwapOut: rho.apply_swap(g.q[0], g.q[1]); break;
    case GateKind::kMeasure: break;
    case GateKind::kId: break;
    default: rho.apply_unitary(g.q[0], gate_matrix(g.kind, g.angle)); break;
  }
}

void apply_gate(Statevector& psi, std::size_t n, const Gate& g) {
  require(psi.size() == (std::size_t{1} << n), "state dimension mismatch");
  for (std::size_t k = 0; k < g.arity(); ++k) require(g.q[k] < n, "gate operand out of range");
  switch (g.kind) {
    case GateKind::kCX: {
      const std::size_t cb = std::size_t{1} << g.q[0], tb = std::size_t{1} << g.q[1];
      for (std::size_t i = 0; i < psi.size(); ++i)
        if ((i & cb) && !(i & tb)) std::swap(psi[i], psi[i | tb]);
      break;
    }
    case GateKind::kSwap:
    case GateKind::kSwapIn:
    case GateKind::kSwapOut: {
      const std::size_t ab = std::size_t{1} << g.q[0], bb = std::size_t{1} << g.q[1];
      for (std::size_t i = 0; i < psi.size(); ++i)
        if ((i & ab) && !(i & bb)) std::swap(psi[i], psi[i ^ ab ^ bb]);
      break;
    }
    case GateKind::kMeasure:
      fail(ErrorCode::kInvalidArgument, "statevector evolution is pre-measurement");
    case GateKind::kId: break;
    default: {
      const Mat2 u = gate_matrix(g.kind, g.angle);
      const std::size_t bit = std::size_t{1} << g.q[0];
      for (std::size_t i = 0; i < psi.size(); ++i) {
        if (i & bit) continue;
        const cplx a = psi[i], b = psi[i | bit];
        psi[i] = u[0] * a + u[1] * b;
        psi[i | bit] = u[2] * a + u[3] * b;
      }
    }
  }
}

void apply_decay(DensityMatrix& rho, std::size_t q, double t_ns,
                 const CoherenceTimes& times) {
  rho.apply_decay(q, t_ns, times.t1_ns, times.t2_ns);
}

std::vector<std::size_t> SimulationResult::logical_slots() const {
  std::vector<std::size_t> out;
  for (std::size_t r : final_placement) out.push_back(slot_of_resource.at(r));
  return out;
}

namespace {

constexpr std::size_t kUnbound = SimulationResult::kUnbound;

bool relabels(GateKind k) {
  return k == GateKind::kSwap || k == GateKind::kSwapIn || k == GateKind::kSwapOut;
}

// Shared binding replay: calls on_bind(resource) whenever a resource first
// needs a slot.
template <typename OnBind>
void replay_bindings(const Schedule& s, std::vector<std::size_t>& slot, OnBind&& on_bind) {
  for (const auto& e : s.events) {
    const Gate& g = e.gate;
    if (g.kind == GateKind::kMeasure) continue;
    if (relabels(g.kind)) {
      std::swap(slot[g.q[0]], slot[g.q[1]]);
      continue;
    }
    for (std::size_t k = 0; k < g.arity(); ++k)
      if (slot[g.q[k]] == kUnbound) on_bind(g.q[k]);
  }
}

}  // namespace

std::size_t count_slots(const Schedule& s) {
  std::vector<std::size_t> slot(s.num_resources(), kUnbound);
  std::size_t n = 0;
  replay_bindings(s, slot, [&](std::size_t r) { slot[r] = n++; });
  return n;
}

SimulationResult simulate(const Schedule& s, const NoiseParams& noise,
                          const SimOptions& opts) {
  noise.validate();
  const std::size_t need = count_slots(s);
  if (need > std::min(opts.max_slots, DensityMatrix::kMaxQubits)) {
    std::ostringstream msg;
    const double mib = std::ldexp(16.0, static_cast<int>(2 * need)) / (1024.0 * 1024.0);
    msg << "simulation needs " << need << " live resources (" << mib
        << " MiB density matrix); the limit is "
        << std::min(opts.max_slots, DensityMatrix::kMaxQubits);
    fail(ErrorCode::kResourceLimit, msg.str());
  }
  SimulationResult res{DensityMatrix(need), std::vector<std::size_t>(s.num_resources(), kUnbound),
                       s.final_placement, {}};
  std::vector<Nanos> pending(need, 0);
  std::vector<std::size_t>& slot = res.slot_of_resource;
  std::size_t bound = 0;

  auto bring_up_to_date = [&](std::size_t r, Nanos now) {
    const std::size_t sl = slot[r];
    if (sl == kUnbound) return;
    const Nanos dt = now - pending[sl];
    if (dt > 0) apply_decay(res.rho, sl, static_cast<double>(dt), noise.of(s.resource_class[r]));
    pending[sl] = now;
  };

  for (const auto& e : s.events) {
    const Gate& g = e.gate;
    if (g.kind == GateKind::kMeasure) {
      res.measured.push_back(g.q[0]);
      continue;
    }
    for (std::size_t k = 0; k < g.arity(); ++k) bring_up_to_date(g.q[k], e.start);
    if (relabels(g.kind)) {
      std::swap(slot[g.q[0]], slot[g.q[1]]);
      continue;
    }
    for (std::size_t k = 0; k < g.arity(); ++k)
      if (slot[g.q[k]] == kUnbound) {
        slot[g.q[k]] = bound;
        pending[bound] = e.start;
        ++bound;
      }
    Gate local = g;
    local.q = {slot[g.q[0]], slot[g.q[1]]};
    apply_gate(res.rho, local);
  }
  for (std::size_t r = 0; r < s.num_resources(); ++r) bring_up_to_date(r, s.makespan);
  return res;
}

double pauli_expectation(const DensityMatrix& rho, const PauliTerm& term,
                         const std::vector<std::size_t>& qubit_slots) {
  require(qubit_slots.size() == term.width(), "slot list does not match the term width");
  std::size_t x = 0, z = 0, ny = 0;
  for (std::size_t q = 0; q < term.width(); ++q) {
    const Pauli p = term.axes[q];
    if (p == Pauli::I) continue;
    const std::size_t sl = qubit_slots[q];
    if (sl == kUnbound) {
      if (p != Pauli::Z) return 0.0;
      continue;
    }
    require(sl < rho.num_qubits(), "slot out of range");
    const std::size_t bit = std::size_t{1} << sl;
    if (p == Pauli::X || p == Pauli::Y) x |= bit;
    if (p == Pauli::Y || p == Pauli::Z) z |= bit;
    ny += (p == Pauli::Y);
  }
  cplx acc{};
  for (std::size_t j = 0; j < rho.dim(); ++j) {
    const cplx v = rho(j, j ^ x);
    acc += (std::popcount(j & z) & 1) ? -v : v;
  }
  static const cplx kPhase[4] = {1.0, kI, -1.0, -kI};
  acc *= kPhase[ny % 4];
  const double scale = std::max(1.0, std::abs(term.coefficient));
  if (std::abs(acc.imag()) > 1e-10 * scale)
    fail(ErrorCode::kInternal, "Pauli expectation has an imaginary part");
  return acc.real();
}

double expectation(const DensityMatrix& rho, const Hamiltonian& h,
                   const std::vector<std::size_t>& qubit_slots) {
  require(qubit_slots.size() == h.num_qubits, "every logical qubit needs a placement");
  double e = h.offset;
  for (const auto& t : h.terms) e += t.coefficient * pauli_expectation(rho, t, qubit_slots);
  return e;
}

double expectation(const SimulationResult& res, const Hamiltonian& h) {
  return expectation(res.rho, h, res.logical_slots());
}

Statevector basis_state(std::size_t n, std::size_t index) {
  require(n <= 30, "statevector too large");
  Statevector psi(std::size_t{1} << n, cplx{});
  require(index < psi.size(), "basis index out of range");
  psi[index] = 1.0;
  return psi;
}

Statevector statevector_oracle(const LogicalCircuit& c) {
  require(c.num_qubits <= 20, "statevector oracle supports at most 20 qubits");
  c.validate();
  Statevector psi = basis_state(c.num_qubits);
  for (const Gate& g : c.gates) apply_gate(psi, c.num_qubits, g);
  return psi;
}

double state_fidelity(const Statevector& a, const Statevector& b) {
  require(a.size() == b.size(), "state dimension mismatch");
  cplx ip{};
  for (std::size_t i = 0; i < a.size(); ++i) ip += std::conj(a[i]) * b[i];
  return std::norm(ip);
}

double expectation(const Statevector& psi, const Hamiltonian& h) {
  require(psi.size() == (std::size_t{1} << h.num_qubits), "state dimension mismatch");
  double e = h.offset;
  for (const auto& t : h.terms) {
    std::size_t x = 0, z = 0, ny = 0;
    for (std::size_t q = 0; q < t.width(); ++q) {
      const Pauli p = t.axes[q];
      if (p == Pauli::X || p == Pauli::Y) x |= std::size_t{1} << q;
      if (p == Pauli::Y || p == Pauli::Z) z |= std::size_t{1} << q;
      ny += (p == Pauli::Y);
    }
    cplx acc{};
    for (std::size_t j = 0; j < psi.size(); ++j) {
      const cplx v = std::conj(psi[j ^ x]) * psi[j];
      acc += (std::popcount(j & z) & 1) ? -v : v;
    }
    static const cplx kPhase[4] = {1.0, kI, -1.0, -kI};
    e += t.coefficient * (acc * kPhase[ny % 4]).real();
  }
  return e;
}

Statevector embed_logical_state(const Statevector& logical,
                                const std::vector<std::size_t>& placement,
                                const std::vector<std::size_t>& resources) {
  require(logical.size() == (std::size_t{1} << placement.size()),
          "logical state does not match the placement");
  std::vector<std::size_t> bit(placement.size());
  for (std::size_t q = 0; q < placement.size(); ++q) {
    auto it = std::find(resources.begin(), resources.end(), placement[q]);
    require(it != resources.end(), "placement resource is not in the resource list");
    bit[q] = static_cast<std::size_t>(it - resources.begin());
  }
  Statevector out = basis_state(resources.size());
  out[0] = 0.0;
  for (std::size_t i = 0; i < logical.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t q = 0; q < placement.size(); ++q)
      if ((i >> q) & 1) j |= std::size_t{1} << bit[q];
    out[j] = logical[i];
  }
  return out;
}

Statevector physical_statevector(const PhysicalCircuit& pc,
                                 std::vector<std::size_t>& resources,
                                 const Statevector& logical_input) {
  std::vector<bool> used(pc.topology.num_resources(), false);
  for (std::size_t r : pc.initial_placement) used.at(r) = true;
  for (std::size_t r : pc.final_placement) used.at(r) = true;
  for (const Gate& g : pc.gates)
    for (std::size_t k = 0; k < g.arity(); ++k) used.at(g.q[k]) = true;
  resources.clear();
  for (std::size_t r = 0; r < used.size(); ++r)
    if (used[r]) resources.push_back(r);
  require(resources.size() <= 20, "physical circuit touches more than 20 resources");
  std::vector<std::size_t> index(used.size(), 0);
  for (std::size_t i = 0; i < resources.size(); ++i) index[resources[i]] = i;

  Statevector psi =
      logical_input.empty()
          ? basis_state(resources.size())
          : embed_logical_state(logical_input, pc.initial_placement, resources);
  for (const Gate& g : pc.gates) {
    if (g.kind == GateKind::kMeasure) continue;
    Gate local = g;
    local.q = {index[g.q[0]], index[g.q[1]]};
    apply_gate(psi, resources.size(), local);
  }
  return psi;
}

}  // namespace cavq
