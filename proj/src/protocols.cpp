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

#include "geophase/protocols.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "geophase/errors.hpp"

namespace geophase {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

}  // namespace

// ------------------------------------------------------------ single qubit

double SingleQubitPlan::tau(const DeviceParams& params) const {
  const double bz = params.e_ch * delta;
  const double bx = 2.0 * params.e_j0;
  return kPi / std::sqrt(bz * bz + bx * bx);
}

void SingleQubitPlan::validate() const {
  if (!std::isfinite(delta) || delta < 0.0 || delta >= 1.0)
    throw ContractViolation("delta must lie in [0, 1)");
}

Schedule build_single_qubit_schedule(const DeviceParams& params,
                                     const SingleQubitPlan& plan) {
  params.validate();
  plan.validate();
  const double tau = plan.tau(params);
  const double second_nx = plan.step3_mode == Step3Mode::symmetric
                               ? 0.5 * (1.0 + plan.delta)
                               : 0.5 + plan.delta;
  Schedule s;
  s.coupling_on = false;
  s.qubit2_segments = {{0.5 * (1.0 - plan.delta), 0.0, tau}, {second_nx, 0.0, tau}};
  return s;
}

double predict_gamma(const DeviceParams& params, double delta) {
  return 2.0 * std::atan(params.e_ch * delta / (2.0 * params.e_j0));
}

Eigen::Vector2cd interference_amplitudes(Complex alpha, Complex beta, double gamma) {
  const double c = std::cos(gamma);
  const double s = std::sin(gamma);
  return {alpha * c - beta * s, -(alpha * s + beta * c)};
}

StateVector predicted_final_state(const StateVector& initial, double gamma) {
  if (initial.dim() != 2) throw ContractViolation("expected a single-qubit state");
  const Eigen::Vector2cd a = interference_amplitudes(initial[0], initial[1], gamma);
  return StateVector(Eigen::Vector2cd(-a(0), a(1)));
}

SingleQubitRun run_single_qubit(const DeviceParams& params, const SingleQubitPlan& plan,
                                const StateVector& initial, EvolutionMethod method,
                                int samples_per_segment) {
  if (initial.dim() != 2) throw ContractViolation("expected a single-qubit state");
  const Schedule schedule = build_single_qubit_schedule(params, plan);
  const auto segments = schedule_hamiltonians(params, schedule);
  Trajectory traj = evolve_schedule(segments, initial, samples_per_segment, method);

  SingleQubitRun run{.final_state = traj.back().state, .trajectory = std::move(traj)};
  run.gamma_predicted = predict_gamma(params, plan.delta);

  const Trajectory plus = evolve_schedule(segments, StateVector::plus_y(),
                                          samples_per_segment, method);
  const Trajectory minus = evolve_schedule(segments, StateVector::minus_y(),
                                           samples_per_segment, method);
  const double dp = 1.0 - std::abs(plus.front().state.inner(plus.back().state));
  const double dm = 1.0 - std::abs(minus.front().state.inner(minus.back().state));
  run.eigen_cyclicity_defect = std::max({dp, dm, 0.0});
  run.eigenstates_cyclic = run.eigen_cyclicity_defect <= kCyclicityTolerance;
  if (!run.eigenstates_cyclic) {
    run.gamma_from_plus = std::numeric_limits<double>::quiet_NaN();
    run.gamma_from_minus = std::numeric_limits<double>::quiet_NaN();
    return run;
  }
  run.plus_y = geometric_phase(plus);
  run.minus_y = geometric_phase(minus);
  run.plus_y_consistency = phase_consistency(plus);
  run.minus_y_consistency = phase_consistency(minus);
  run.gamma_from_plus = wrap_phase(kPi - run.plus_y->geometric_phase_wrapped);
  run.gamma_from_minus = wrap_phase(run.minus_y->geometric_phase_wrapped - kPi);
  return run;
}

namespace {

// gamma read off the exact propagator through the |+y> eigenphase.
double simulated_gamma(const DeviceParams& params, double delta) {
  const SingleQubitPlan plan{delta, Step3Mode::symmetric};
  const auto segments =
      schedule_hamiltonians(params, build_single_qubit_schedule(params, plan));
  const StateVector p = StateVector::plus_y();
  const Complex ov = p.inner(schedule_propagator(segments) * p);
  return wrap_phase(kPi - std::arg(ov));
}

}  // namespace

Calibration calibrate_delta(const DeviceParams& params, double target_gamma) {
  params.validate();
  if (!std::isfinite(target_gamma) || target_gamma <= 0.0 || target_gamma >= kPi)
    throw Error("unreachable phase");
  const double analytic = 2.0 * params.e_j0 / params.e_ch * std::tan(0.5 * target_gamma);
  if (!(analytic < 1.0)) throw Error("unreachable phase");

  Calibration cal;
  cal.delta = analytic;
  cal.gamma_simulated = simulated_gamma(params, analytic);
  cal.residual = std::abs(cal.gamma_simulated - target_gamma);
  if (cal.residual > 1e-8) {
    // gamma(delta) increases monotonically on [0, 1).
    double lo = 0.0;
    double hi = std::nextafter(1.0, 0.0);
    if (simulated_gamma(params, hi) < target_gamma) throw Error("unreachable phase");
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      (simulated_gamma(params, mid) < target_gamma ? lo : hi) = mid;
    }
    cal.delta = 0.5 * (lo + hi);
    cal.gamma_simulated = simulated_gamma(params, cal.delta);
    cal.residual = std::abs(cal.gamma_simulated - target_gamma);
    cal.used_bisection = true;
  }
  cal.tau = SingleQubitPlan{cal.delta}.tau(params);
  return cal;
}

// ------------------------------------------------------------- two qubits

Operator x_rotation(double angle) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  Eigen::Matrix2cd m;
  m << c, Complex(0, -s), Complex(0, -s), c;
  return Operator(m);
}

double TwoQubitPlan::tau(const DeviceParams& params) const {
  return kPi / params.delta_coupling;
}

void TwoQubitPlan::validate() const {
  if (!std::isfinite(theta) || theta < 0.0 || theta >= 0.5 * kPi)
    throw ContractViolation("theta must lie in [0, pi/2)");
}

std::array<double, 3> frame_rotation_angles(double theta) {
  return {-theta, -(kPi - 2.0 * theta), kPi - theta};
}

TwoQubitProgram build_two_qubit_schedule(const DeviceParams& params,
                                         const TwoQubitPlan& plan) {
  params.validate();
  plan.validate();
  if (params.delta_coupling == 0.0) throw Error("no coupling");
  const double tau = plan.tau(params);
  const ControlSegment control_idle{0.0, 0.5, 0.0};
  const ControlSegment target_wait{0.5, 0.5, tau};
  const auto angles = frame_rotation_angles(plan.theta);

  TwoQubitProgram prog;
  prog.schedule.coupling_on = true;
  auto push = [&](ControlSegment target) {
    ControlSegment control = control_idle;
    control.duration = target.duration;
    prog.schedule.qubit1_segments.push_back(control);
    prog.schedule.qubit2_segments.push_back(target);
  };

  if (plan.rotation_mode == RotationMode::instantaneous) {
    prog.frame_rotations.assign(angles.begin(), angles.end());
    push(target_wait);
    push(target_wait);
    return prog;
  }

  const double nx_rot =
      plan.compensation_mode == CompensationMode::derived
          ? 0.5 - params.delta_coupling / (2.0 * params.e_ch)
          : 0.5 + params.delta_coupling / params.e_ch;
  auto push_rotation = [&](double angle) {
    if (angle == 0.0) return;
    // B_x = +2 E_J0 (f = 0) turns the frame by a positive angle.
    push({nx_rot, angle > 0.0 ? 0.0 : 1.0, std::abs(angle) / (2.0 * params.e_j0)});
  };
  push_rotation(angles[0]);
  push(target_wait);
  push_rotation(angles[1]);
  push(target_wait);
  push_rotation(angles[2]);
  return prog;
}

Operator two_qubit_program_unitary(const DeviceParams& params,
                                   const TwoQubitProgram& program) {
  const auto segments = schedule_hamiltonians(params, program.schedule);
  if (program.frame_rotations.empty()) return schedule_propagator(segments);
  if (program.frame_rotations.size() != segments.size() + 1)
    throw ContractViolation("instantaneous program needs one rotation per gap");
  const Operator id = pauli::identity();
  Operator u = kron(id, x_rotation(-program.frame_rotations[0]));
  for (std::size_t k = 0; k < segments.size(); ++k) {
    u = expm_hermitian(segments[k].hamiltonian, segments[k].duration) * u;
    u = kron(id, x_rotation(-program.frame_rotations[k + 1])) * u;
  }
  return u;
}

namespace {

Eigen::Matrix2cd block(const Operator& u, int r, int c) {
  return u.matrix().block(r, c, 2, 2);
}

}  // namespace

GateReport run_conditional_gate(const DeviceParams& params, const TwoQubitPlan& plan) {
  const TwoQubitProgram prog = build_two_qubit_schedule(params, plan);
  GateReport rep{two_qubit_program_unitary(params, prog)};
  const Operator& u = rep.unitary;
  rep.gamma_nominal = -2.0 * plan.theta;

  const Eigen::Matrix2cd up = block(u, 0, 0);
  const Eigen::Matrix2cd down = block(u, 2, 2);
  rep.leakage = std::max(block(u, 0, 2).cwiseAbs().maxCoeff(),
                         block(u, 2, 0).cwiseAbs().maxCoeff());

  const Complex tr_down = down.trace();
  rep.block_phase_down = std::arg(tr_down);
  rep.conditional_identity_defect =
      std::sqrt(std::max(0.0, down.squaredNorm() + 2.0 - 2.0 * std::abs(tr_down)));

  // up = e^{i phi} (cos g I + i sin g sigma_x); (g, phi) and (g + pi, phi + pi)
  // describe the same block, so report the branch nearest the nominal g.
  const double phi0 = 0.5 * std::arg(up.determinant());
  const Eigen::Matrix2cd n = std::exp(-kI * phi0) * up;
  const double c = 0.5 * (n(0, 0) + n(1, 1)).real();
  const double s = 0.5 * (n(0, 1) + n(1, 0)).imag();
  const double g0 = std::atan2(s, c);
  double best_g = g0;
  double best_phi = phi0;
  for (int k : {-1, 1}) {
    const double g = g0 + k * kPi;
    if (std::abs(g - rep.gamma_nominal) < std::abs(best_g - rep.gamma_nominal)) {
      best_g = g;
      best_phi = phi0 + k * kPi;
    }
  }
  rep.gamma_measured = best_g;
  rep.block_phase_up = wrap_phase(best_phi);
  rep.fidelity_vs_target = cnot_fidelity(u);
  return rep;
}

Operator to_listed_order(const Operator& u) {
  if (u.dim() != 4) throw ContractViolation("expected a two-qubit operator");
  Eigen::MatrixXcd m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = u(3 - i, 3 - j);
  return Operator(std::move(m));
}

Operator ideal_conditional_gate(double gamma) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4);
  const Operator mm = Complex(std::cos(gamma)) * pauli::identity() +
                      Complex(0.0, std::sin(gamma)) * pauli::x();
  m.block(0, 0, 2, 2) = mm.matrix();
  return Operator(std::move(m));
}

Operator cnot_target() {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  m(0, 1) = m(1, 0) = 1.0;
  m(2, 2) = m(3, 3) = 1.0;
  return Operator(std::move(m));
}

// --------------------------------------------------- two-level validation

namespace {

struct ChargeRun {
  StateVector two_level;
  StateVector charge;
};

ChargeRun run_both(const DeviceParams& params, double delta, int n_min, int n_max) {
  const Schedule sched = build_single_qubit_schedule(params, SingleQubitPlan{delta});
  std::vector<HamiltonianSegment> two, charge;
  for (const auto& seg : sched.qubit2_segments) {
    two.push_back({two_level_hamiltonian(params, seg), seg.duration});
    charge.push_back({charge_hamiltonian(params, seg, n_min, n_max), seg.duration});
  }
  const StateVector start = StateVector::down();
  return {schedule_propagator(two) * start,
          schedule_propagator(charge) * embed_in_charge_basis(start, n_min, n_max)};
}

double discrepancy(const StateVector& two_level, const StateVector& charge, int n_min,
                   int n_max) {
  const StateVector e = embed_in_charge_basis(two_level, n_min, n_max);
  return 1.0 - std::norm(e.inner(charge));
}

double leakage(const StateVector& charge, int n_min) {
  return std::max(0.0, 1.0 - project_to_two_level(charge, n_min).squaredNorm());
}

}  // namespace

ValidationReport validate_two_level(double e_ch, const std::vector<double>& ratios,
                                    int n_min, int n_max, double target_gamma) {
  if (!(n_min <= 0 && n_max >= 1) || n_max - n_min > 40)
    throw ContractViolation("charge window must contain n = 0 and n = 1");
  ValidationReport rep;
  for (double ratio : ratios) {
    DeviceParams params{ratio * e_ch, e_ch, 0.0};
    params.validate();
    ValidationRow row;
    row.ratio = ratio;
    row.e_j0 = params.e_j0;
    row.delta = calibrate_delta(params, target_gamma).delta;
    const ChargeRun base = run_both(params, row.delta, n_min, n_max);
    row.leakage = leakage(base.charge, n_min);
    row.discrepancy = discrepancy(base.two_level, base.charge, n_min, n_max);

    const ChargeRun wide = run_both(params, row.delta, n_min - 1, n_max + 1);
    Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(n_max - n_min + 3);
    padded.segment(1, n_max - n_min + 1) = base.charge.amplitudes();
    const double state_change = 1.0 - std::abs(StateVector(padded).inner(wide.charge));
    const double disc_change = std::abs(
        discrepancy(wide.two_level, wide.charge, n_min - 1, n_max + 1) - row.discrepancy);
    const double leak_change = std::abs(leakage(wide.charge, n_min - 1) - row.leakage);
    row.widening_change = std::max({state_change, disc_change, leak_change});
    rep.rows.push_back(row);
  }
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    if (!(rep.rows[i].discrepancy < rep.rows[i - 1].discrepancy))
      rep.discrepancy_monotone = false;
  }
  return rep;
}

}  // namespace geophase
