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

// Hamiltonians of a Cooper-pair box closed by a symmetric SQUID.
//
// Controls are the offset charge n_x and the flux fraction f = Phi/Phi_0.
// The Josephson energy is E_J(f) = 2 E_J0 cos(pi f), so f = 1/2 switches the
// junctions off and f = 0 (f = 1) gives +2 E_J0 (-2 E_J0).
//
// Two-level model: H = -1/2 B.sigma with B = (E_J, 0, E_ch (1 - 2 n_x)).
// Charge labelling used by the coupled model: |down> <-> n = 0,
// |up> <-> n = 1, so the number operator is N = (sigma_z + I)/2.
//
// The truncated charge-basis model is indexed by ascending n. With the sign
// of B_z above, its {0, 1} block reduces to the two-level model under the
// index map |up> <-> n = 0, |down> <-> n = 1; embed_in_charge_basis and
// project_to_two_level use that map.

#include <string>
#include <vector>

#include "geophase/quantum_core.hpp"

namespace geophase {

struct DeviceParams {
  double e_j0 = 1.0;            // single-junction Josephson coupling E_J0
  double e_ch = 50.0;           // charging energy E_ch
  double delta_coupling = 1.0;  // capacitive coupling Delta

  // Throws ContractViolation unless e_j0 > 0, e_ch > 0, delta_coupling >= 0
  // and all are finite.
  void validate() const;

  // Charging-regime (e_j0/e_ch > 0.2) and weak-coupling
  // (delta_coupling/e_ch > 0.1) notices; empty when the model is in range.
  std::vector<std::string> warnings() const;
};

struct ControlSegment {
  double n_x = 0.0;
  double flux_frac = 0.5;
  double duration = 0.0;

  void validate() const;
};

struct Schedule {
  std::vector<ControlSegment> qubit1_segments;  // empty for one qubit
  std::vector<ControlSegment> qubit2_segments;
  bool coupling_on = true;

  bool is_two_qubit() const noexcept { return !qubit1_segments.empty(); }
  double total_duration() const;
};

inline constexpr int kDefaultChargeMin = -2;
inline constexpr int kDefaultChargeMax = 3;

double josephson_energy(double e_j0, double flux_frac);

FieldVector effective_field(const DeviceParams& params, const ControlSegment& seg);

Operator two_level_hamiltonian(const DeviceParams& params, const ControlSegment& seg);

// E_ch (n - n_x)^2 on the diagonal, -E_J/2 on the nearest-neighbour
// off-diagonals, for n in [n_min, n_max].
Operator charge_hamiltonian(const DeviceParams& params, const ControlSegment& seg,
                            int n_min = kDefaultChargeMin,
                            int n_max = kDefaultChargeMax);

// H1 x I + I x H2 + Delta (N1 - n_x1)(N2 - n_x2).
Operator coupled_hamiltonian(const DeviceParams& params, const ControlSegment& seg1,
                             const ControlSegment& seg2);

// Per-segment generators for evolve_schedule. Two-qubit schedules must have
// the same segment durations on both qubits ("misaligned schedule"
// otherwise). coupling_on = false drops the interaction term.
std::vector<HamiltonianSegment> schedule_hamiltonians(const DeviceParams& params,
                                                      const Schedule& schedule);

// Two-level state into the truncated charge basis and back.
StateVector embed_in_charge_basis(const StateVector& qubit, int n_min = kDefaultChargeMin,
                                  int n_max = kDefaultChargeMax);
// Amplitudes on the computational pair; not renormalized.
Eigen::Vector2cd project_to_two_level(const StateVector& charge_state,
                                      int n_min = kDefaultChargeMin);

}  // namespace geophase
