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

#pragma once

// Small dense quantum mechanics: states, operators and piecewise-constant
// time evolution for one and two qubits (hbar = 1).
//
// Basis conventions
//   one qubit : (|up>, |down>), sigma_z = diag(1, -1)
//   two qubits: (|up up>, |up down>, |down up>, |down down>), qubit 1 is the
//               left tensor factor
//
// Precession convention
//   For H = -1/2 B.sigma the propagator is exp(-iHt) = cos(|B|t/2) I +
//   i sin(|B|t/2) n.sigma, n = B/|B|. The Bloch vector turns by the angle
//   |B|t about -n, i.e. clockwise when viewed from the tip of B.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace geophase {

using Complex = std::complex<double>;

class Operator {
 public:
  explicit Operator(Eigen::MatrixXcd m);

  static Operator identity(int dim);
  static Operator zero(int dim);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  Complex operator()(int row, int col) const { return m_(row, col); }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

  Operator adjoint() const { return Operator(m_.adjoint()); }
  Complex trace() const { return m_.trace(); }

  bool is_hermitian(double tol = 1e-12) const;
  bool is_unitary(double tol = 1e-10) const;

  // Largest entrywise modulus of (this - other).
  double max_abs_diff(const Operator& other) const;

  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(Complex s, const Operator& a);

 private:
  Eigen::MatrixXcd m_;
};

namespace pauli {
Operator identity();
Operator x();
Operator y();
Operator z();
}  // namespace pauli

class StateVector {
 public:
  // Any dimension >= 2 is storable (the charge-basis validation uses 6-8
  // levels); qubit-specific operations check their own dimension.
  explicit StateVector(Eigen::VectorXcd amplitudes);

  // Checked construction: normalized to 1e-12.
  static StateVector from_amplitudes(std::span<const Complex> amplitudes);
  // Rescales to unit norm; throws on a zero vector.
  static StateVector normalized(std::span<const Complex> amplitudes);
  static StateVector basis(int dim, int index);
  static StateVector up() { return basis(2, 0); }
  static StateVector down() { return basis(2, 1); }
  // sigma_y eigenstates (|up> +- i|down>)/sqrt(2): Bloch vector (0, +-1, 0).
  static StateVector plus_y();
  static StateVector minus_y();

  int dim() const noexcept { return static_cast<int>(a_.size()); }
  Complex operator[](int i) const { return a_(i); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return a_; }

  double norm() const { return a_.norm(); }
  // <this|other>
  Complex inner(const StateVector& other) const;
  Complex expectation(const Operator& op) const;
  StateVector scaled(Complex s) const { return StateVector(s * a_); }

  friend StateVector operator*(const Operator& op, const StateVector& psi);

 private:
  Eigen::VectorXcd a_;
};

// |<a|b>|^2 for normalized a, b.
double state_fidelity(const StateVector& a, const StateVector& b);

struct BlochVector {
  double x = 0, y = 0, z = 0;

  double norm() const;
  double dot(const BlochVector& o) const { return x * o.x + y * o.y + z * o.z; }
  BlochVector cross(const BlochVector& o) const;
};

// Fictitious field in energy units; H = -1/2 B.sigma.
struct FieldVector {
  double x = 0, y = 0, z = 0;

  double norm() const;
};

BlochVector bloch_from_state(const StateVector& state);

// Rodrigues rotation of v by `angle` (right-handed) about the unit axis.
BlochVector rotate(const BlochVector& v, const BlochVector& axis, double angle);

// Closed-form exp(-iHt) for H = -1/2 B.sigma; identity for B = 0.
Operator two_level_propagator(const FieldVector& b, double t);

// exp(-iHt) through the Hermitian eigendecomposition of H.
Operator expm_hermitian(const Operator& h, double t);

// Tensor product of two single-qubit operators, `a` acting on qubit 1.
Operator kron(const Operator& a, const Operator& b);

struct HamiltonianSegment {
  Operator hamiltonian;
  double duration;
};

enum class EvolutionMethod { closed_form, rk4 };

inline constexpr int kDefaultSamplesPerSegment = 1001;

struct TrajectorySample {
  double t;
  StateVector state;
  // Index of the segment whose generator acts over the interval that ends
  // at this sample (segment 0 for the initial sample).
  std::size_t segment;
};

class Trajectory {
 public:
  // Checks: non-empty, t starts at 0 and strictly increases, segment indices
  // are non-decreasing and within `hamiltonians`.
  Trajectory(std::vector<TrajectorySample> samples,
             std::vector<Operator> hamiltonians);

  std::size_t size() const noexcept { return samples_.size(); }
  const TrajectorySample& operator[](std::size_t i) const { return samples_[i]; }
  const TrajectorySample& front() const { return samples_.front(); }
  const TrajectorySample& back() const { return samples_.back(); }
  const std::vector<TrajectorySample>& samples() const noexcept {
    return samples_;
  }

  // The generator acting over the interval that ends at sample i.
  const Operator& hamiltonian(std::size_t i) const {
    return hamiltonians_[samples_[i].segment];
  }
  const std::vector<Operator>& segment_hamiltonians() const noexcept {
    return hamiltonians_;
  }

 private:
  std::vector<TrajectorySample> samples_;
  std::vector<Operator> hamiltonians_;
};

// Piecewise-constant evolution, each segment sampled at samples_per_segment
// uniformly spaced points (shared boundary samples are stored once).
Trajectory evolve_schedule(std::span<const HamiltonianSegment> schedule,
                           const StateVector& initial,
                           int samples_per_segment = kDefaultSamplesPerSegment,
                           EvolutionMethod method = EvolutionMethod::closed_form);

// Product of segment propagators, last segment leftmost.
Operator schedule_propagator(std::span<const HamiltonianSegment> schedule);

}  // namespace geophase
