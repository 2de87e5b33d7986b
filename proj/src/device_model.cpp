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

#include "geophase/device_model.hpp"

#include <cmath>
#include <numbers>

#include "geophase/errors.hpp"

namespace geophase {

void DeviceParams::validate() const {
  if (!std::isfinite(e_j0) || !std::isfinite(e_ch) || !std::isfinite(delta_coupling))
    throw ContractViolation("device parameters must be finite");
  if (!(e_j0 > 0.0)) throw ContractViolation("e_j0 must be > 0");
  if (!(e_ch > 0.0)) throw ContractViolation("e_ch must be > 0");
  if (!(delta_coupling >= 0.0)) throw ContractViolation("delta_coupling must be >= 0");
}

std::vector<std::string> DeviceParams::warnings() const {
  std::vector<std::string> out;
  if (e_j0 / e_ch > 0.2)
    out.emplace_back("charging regime violated: e_j0/e_ch > 0.2");
  if (delta_coupling / e_ch > 0.1)
    out.emplace_back("weak coupling violated: delta_coupling/e_ch > 0.1");
  return out;
}

void ControlSegment::validate() const {
  if (!std::isfinite(n_x) || !std::isfinite(flux_frac) || !std::isfinite(duration))
    throw ContractViolation("control segment fields must be finite");
  if (!(duration > 0.0)) throw ContractViolation("segment duration must be > 0");
}

double Schedule::total_duration() const {
  double t = 0.0;
  for (const auto& s : qubit2_segments) t += s.duration;
  return t;
}

double josephson_energy(double e_j0, double flux_frac) {
  return 2.0 * e_j0 * std::cos(std::numbers::pi * flux_frac);
}

FieldVector effective_field(const DeviceParams& params, const ControlSegment& seg) {
  return {josephson_energy(params.e_j0, seg.flux_frac), 0.0,
          params.e_ch * (1.0 - 2.0 * seg.n_x)};
}

Operator two_level_hamiltonian(const DeviceParams& params, const ControlSegment& seg) {
  const FieldVector b = effective_field(params, seg);
  Eigen::Matrix2cd m;
  m << -0.5 * b.z, -0.5 * b.x, -0.5 * b.x, 0.5 * b.z;
  return Operator(m);
}

Operator charge_hamiltonian(const DeviceParams& params, const ControlSegment& seg,
                            int n_min, int n_max) {
  if (n_max <= n_min) throw ContractViolation("charge window needs n_max > n_min");
  const int dim = n_max - n_min + 1;
  const double ej = josephson_energy(params.e_j0, seg.flux_frac);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double n = n_min + i;
    m(i, i) = params.e_ch * (n - seg.n_x) * (n - seg.n_x);
    if (i + 1 < dim) {
      m(i, i + 1) = -0.5 * ej;
      m(i + 1, i) = -0.5 * ej;
    }
  }
  return Operator(std::move(m));
}

namespace {

// (N - n_x I) with N = (sigma_z + I)/2 in the (|up>, |down>) basis.
Operator shifted_number(double n_x) {
  Eigen::Matrix2cd m;
  m << 1.0 - n_x, 0, 0, -n_x;
  return Operator(m);
}

}  // namespace

Operator coupled_hamiltonian(const DeviceParams& params, const ControlSegment& seg1,
                             const ControlSegment& seg2) {
  const Operator id = pauli::identity();
  Operator h = kron(two_level_hamiltonian(params, seg1), id) +
               kron(id, two_level_hamiltonian(params, seg2));
  if (params.delta_coupling != 0.0) {
    h = h + Complex(params.delta_coupling) *
                kron(shifted_number(seg1.n_x), shifted_number(seg2.n_x));
  }
  return h;
}

std::vector<HamiltonianSegment> schedule_hamiltonians(const DeviceParams& params,
                                                      const Schedule& schedule) {
  std::vector<HamiltonianSegment> out;
  for (const auto& s : schedule.qubit2_segments) s.validate();
  if (!schedule.is_two_qubit()) {
    out.reserve(schedule.qubit2_segments.size());
    for (const auto& s : schedule.qubit2_segments)
      out.push_back({two_level_hamiltonian(params, s), s.duration});
    return out;
  }
  for (const auto& s : schedule.qubit1_segments) s.validate();
  const auto& q1 = schedule.qubit1_segments;
  const auto& q2 = schedule.qubit2_segments;
  if (q1.size() != q2.size()) throw Error("misaligned schedule");
  DeviceParams p = params;
  if (!schedule.coupling_on) p.delta_coupling = 0.0;
  out.reserve(q1.size());
  for (std::size_t k = 0; k < q1.size(); ++k) {
    const double scale = std::max(q1[k].duration, q2[k].duration);
    if (std::abs(q1[k].duration - q2[k].duration) > 1e-12 * scale)
      throw Error("misaligned schedule");
    out.push_back({coupled_hamiltonian(p, q1[k], q2[k]), q2[k].duration});
  }
  return out;
}

StateVector embed_in_charge_basis(const StateVector& qubit, int n_min, int n_max) {
  if (qubit.dim() != 2) throw ContractViolation("embedding expects a qubit state");
  if (!(n_min <= 0 && n_max >= 1))
    throw ContractViolation("charge window must contain n = 0 and n = 1");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n_max - n_min + 1);
  v(0 - n_min) = qubit[0];
  v(1 - n_min) = qubit[1];
  return StateVector(std::move(v));
}

Eigen::Vector2cd project_to_two_level(const StateVector& charge_state, int n_min) {
  if (n_min > 0 || charge_state.dim() + n_min - 1 < 1)
    throw ContractViolation("charge window must contain n = 0 and n = 1");
  return {charge_state[0 - n_min], charge_state[1 - n_min]};
}

}  // namespace geophase
