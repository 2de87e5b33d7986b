// Copyright 2026 The geophase Authors
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

#include "geophase/quantum_core.hpp"

#include <cmath>
#include <string>

#include "geophase/errors.hpp"

namespace geophase {

namespace {

constexpr Complex kI{0.0, 1.0};

bool all_finite(const Eigen::MatrixXcd& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex v = m.data()[i];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
  if (a.dim() != b.dim())
    throw ContractViolation(std::string(what) + ": dimension mismatch");
}

}  // namespace

// ---------------------------------------------------------------- Operator

Operator::Operator(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1)
    throw ContractViolation("operator must be a non-empty square matrix");
  if (!all_finite(m_)) throw ContractViolation("operator has non-finite entries");
}

Operator Operator::identity(int dim) {
  return Operator(Eigen::MatrixXcd::Identity(dim, dim));
}

Operator Operator::zero(int dim) {
  return Operator(Eigen::MatrixXcd::Zero(dim, dim));
}

bool Operator::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_unitary(double tol) const {
  const Eigen::MatrixXcd d =
      m_.adjoint() * m_ - Eigen::MatrixXcd::Identity(dim(), dim());
  return d.cwiseAbs().maxCoeff() <= tol;
}

double Operator::max_abs_diff(const Operator& other) const {
  require_same_dim(*this, other, "max_abs_diff");
  return (m_ - other.m_).cwiseAbs().maxCoeff();
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator product");
  return Operator(a.m_ * b.m_);
}

Operator operator+(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator sum");
  return Operator(a.m_ + b.m_);
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator difference");
  return Operator(a.m_ - b.m_);
}

Operator operator*(Complex s, const Operator& a) { return Operator(s * a.m_); }

namespace pauli {

Operator identity() { return Operator::identity(2); }

Operator x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return Operator(m);
}

Operator y() {
  Eigen::Matrix2cd m;
  m << 0, -kI, kI, 0;
  return Operator(m);
}

Operator z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return Operator(m);
}

}  // namespace pauli

// ------------------------------------------------------------- StateVector

StateVector::StateVector(Eigen::VectorXcd amplitudes) : a_(std::move(amplitudes)) {
  if (a_.size() < 2) throw ContractViolation("state dimension must be >= 2");
  if (!all_finite(a_)) throw ContractViolation("state has non-finite amplitudes");
}

StateVector StateVector::from_amplitudes(std::span<const Complex> amplitudes) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amplitudes.size()));
  for (std::size_t i = 0; i < amplitudes.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = amplitudes[i];
  StateVector s(std::move(v));
  if (std::abs(s.a_.squaredNorm() - 1.0) > 1e-12)
    throw ContractViolation("state is not normalized");
  return s;
}

StateVector StateVector::normalized(std::span<const Complex> amplitudes) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(amplitudes.size()));
  for (std::size_t i = 0; i < amplitudes.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = amplitudes[i];
  const double n = v.norm();
  if (!(n > 0.0)) throw ContractViolation("cannot normalize a zero state");
  return StateVector(v / n);
}

StateVector StateVector::basis(int dim, int index) {
  if (index < 0 || index >= dim)
    throw ContractViolation("basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::plus_y() {
  Eigen::Vector2cd v(1.0, kI);
  return StateVector(v / std::sqrt(2.0));
}

StateVector StateVector::minus_y() {
  Eigen::Vector2cd v(1.0, -kI);
  return StateVector(v / std::sqrt(2.0));
}

Complex StateVector::inner(const StateVector& other) const {
  if (dim() != other.dim()) throw ContractViolation("inner: dimension mismatch");
  return a_.dot(other.a_);  // conjugates the left argument
}

Complex StateVector::expectation(const Operator& op) const {
  if (op.dim() != dim()) throw ContractViolation("expectation: dimension mismatch");
  return a_.dot(op.matrix() * a_);
}

StateVector operator*(const Operator& op, const StateVector& psi) {
  if (op.dim() != psi.dim())
    throw ContractViolation("operator/state dimension mismatch");
  return StateVector(op.matrix() * psi.a_);
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(a.inner(b));
}

// ------------------------------------------------------------------- Bloch

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector BlochVector::cross(const BlochVector& o) const {
  return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
}

double FieldVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

BlochVector bloch_from_state(const StateVector& state) {
  if (state.dim() != 2)
    throw ContractViolation("bloch_from_state requires a single-qubit state");
  const Complex up = state[0];
  const Complex down = state[1];
  // <sigma_x> = 2 Re(up* down), <sigma_y> = 2 Im(up* down)
  const Complex c = std::conj(up) * down;
  return {2.0 * c.real(), 2.0 * c.imag(), std::norm(up) - std::norm(down)};
}

BlochVector rotate(const BlochVector& v, const BlochVector& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const BlochVector k = axis;
  const BlochVector kxv = k.cross(v);
  const double kv = k.dot(v);
  return {v.x * c + kxv.x * s + k.x * kv * (1 - c),
          v.y * c + kxv.y * s + k.y * kv * (1 - c),
          v.z * c + kxv.z * s + k.z * kv * (1 - c)};
}

// ------------------------------------------------------------- Propagators

Operator two_level_propagator(const FieldVector& b, double t) {
  if (!(t >= 0.0)) throw ContractViolation("propagation time must be >= 0");
  const double mag = b.norm();
  if (mag == 0.0) return pauli::identity();
  const double half = 0.5 * mag * t;
  const double c = std::cos(half);
  const double s = std::sin(half);
  const double nx = b.x / mag, ny = b.y / mag, nz = b.z / mag;
  // cos I + i sin (n.sigma)
  Eigen::Matrix2cd m;
  m << Complex(c, s * nz), Complex(s * ny, s * nx),
      Complex(-s * ny, s * nx), Complex(c, -s * nz);
  return Operator(m);
}

Operator expm_hermitian(const Operator& h, double t) {
  if (!h.is_hermitian(1e-12))
    throw ContractViolation("expm_hermitian requires a Hermitian generator");
  const Eigen::MatrixXcd herm = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
  if (eig.info() != Eigen::Success)
    throw Error("eigendecomposition failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i)
    phases(i) = std::exp(-kI * lambda(i) * t);
  const Eigen::MatrixXcd& v = eig.eigenvectors();
  return Operator(v * phases.asDiagonal() * v.adjoint());
}

Operator kron(const Operator& a, const Operator& b) {
  if (a.dim() != 2 || b.dim() != 2)
    throw ContractViolation("kron is defined for single-qubit operators");
  Eigen::MatrixXcd m(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.block(2 * i, 2 * j, 2, 2) = a(i, j) * b.matrix();
  return Operator(std::move(m));
}

// --------------------------------------------------------------- Evolution

Trajectory::Trajectory(std::vector<TrajectorySample> samples,
                       std::vector<Operator> hamiltonians)
    : samples_(std::move(samples)), hamiltonians_(std::move(hamiltonians)) {
  if (samples_.empty()) throw ContractViolation("trajectory has no samples");
  if (samples_.front().t != 0.0)
    throw ContractViolation("trajectory must start at t = 0");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (samples_[i].segment >= hamiltonians_.size())
      throw ContractViolation("trajectory segment index out of range");
    if (samples_[i].state.dim() != hamiltonians_[samples_[i].segment].dim())
      throw ContractViolation("trajectory state/generator dimension mismatch");
    if (i > 0) {
      if (!(samples_[i].t > samples_[i - 1].t))
        throw ContractViolation("trajectory times must strictly increase");
      if (samples_[i].segment < samples_[i - 1].segment)
        throw ContractViolation("trajectory segment indices must not decrease");
    }
  }
}

namespace {

Eigen::VectorXcd rk4_step(const Eigen::MatrixXcd& mih, const Eigen::VectorXcd& psi,
                          double h) {
  const Eigen::VectorXcd k1 = mih * psi;
  const Eigen::VectorXcd k2 = mih * (psi + 0.5 * h * k1);
  const Eigen::VectorXcd k3 = mih * (psi + 0.5 * h * k2);
  const Eigen::VectorXcd k4 = mih * (psi + h * k3);
  return psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

Trajectory evolve_schedule(std::span<const HamiltonianSegment> schedule,
                           const StateVector& initial, int samples_per_segment,
                           EvolutionMethod method) {
  if (schedule.empty()) throw Error("empty schedule");
  if (samples_per_segment < 2)
    throw ContractViolation("samples_per_segment must be >= 2");
  for (const auto& seg : schedule) {
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration))
      throw ContractViolation("segment durations must be positive");
    if (seg.hamiltonian.dim() != initial.dim())
      throw ContractViolation("schedule/state dimension mismatch");
    if (!seg.hamiltonian.is_hermitian(1e-12))
      throw ContractViolation("segment generator is not Hermitian");
  }

  std::vector<TrajectorySample> samples;
  std::vector<Operator> hamiltonians;
  samples.reserve(schedule.size() * static_cast<std::size_t>(samples_per_segment - 1) + 1);
  hamiltonians.reserve(schedule.size());
  samples.push_back({0.0, initial, 0});

  double t0 = 0.0;
  Eigen::VectorXcd psi = initial.amplitudes();
  const int steps = samples_per_segment - 1;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const auto& seg = schedule[k];
    hamiltonians.push_back(seg.hamiltonian);
    const double h = seg.duration / steps;
    if (method == EvolutionMethod::closed_form) {
      const Eigen::MatrixXcd herm =
          0.5 * (seg.hamiltonian.matrix() + seg.hamiltonian.matrix().adjoint());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
      const Eigen::MatrixXcd& v = eig.eigenvectors();
      const Eigen::VectorXd& lambda = eig.eigenvalues();
      const Eigen::VectorXcd coeff = v.adjoint() * psi;
      for (int j = 1; j <= steps; ++j) {
        const double dt = (j == steps) ? seg.duration : j * h;
        Eigen::VectorXcd c(coeff.size());
        for (Eigen::Index i = 0; i < c.size(); ++i)
          c(i) = std::exp(-kI * lambda(i) * dt) * coeff(i);
        psi = v * c;
        samples.push_back({t0 + dt, StateVector(psi), k});
      }
    } else {
      const Eigen::MatrixXcd mih = -kI * seg.hamiltonian.matrix();
      for (int j = 1; j <= steps; ++j) {
        psi = rk4_step(mih, psi, h);
        const double dt = (j == steps) ? seg.duration : j * h;
        samples.push_back({t0 + dt, StateVector(psi), k});
      }
    }
    t0 += seg.duration;
  }
  return Trajectory(std::move(samples), std::move(hamiltonians));
}

Operator schedule_propagator(std::span<const HamiltonianSegment> schedule) {
  if (schedule.empty()) throw Error("empty schedule");
  Operator u = Operator::identity(schedule.front().hamiltonian.dim());
  for (const auto& seg : schedule) u = expm_hermitian(seg.hamiltonian, seg.duration) * u;
  return u;
}

}  // namespace geophase
