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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "geophase/device_model.hpp"
#include "geophase/phase_analysis.hpp"
#include "geophase/protocols.hpp"
#include "geophase/quantum_core.hpp"
#include "test_support.hpp"

namespace {

using namespace geophase;
using geophase::testing::field_hamiltonian;
using geophase::testing::Gen;
using geophase::testing::kPi;

const DeviceParams kDevice{1.0, 50.0, 1.0};

int g_failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 20 log-spaced offsets in [1e-3, 0.2].
std::vector<double> delta_sweep() {
  std::vector<double> d;
  for (int i = 0; i < 20; ++i) d.push_back(1e-3 * std::pow(200.0, i / 19.0));
  return d;
}

void criterion1() {
  const SingleQubitPlan plan{0.04};
  const double tau = plan.tau(kDevice);
  const Schedule s = build_single_qubit_schedule(kDevice, plan);
  double worst = std::abs(tau - kPi / std::sqrt(8.0));
  for (const auto& seg : s.qubit2_segments)
    worst = std::max(worst, std::abs(effective_field(kDevice, seg).norm() * seg.duration - kPi));
  report(1, worst < 1e-12, fmt("tau = %.17g, worst |B|tau - pi or tau - pi/sqrt8 = %.3g", tau, worst));
}

void criterion2() {
  Gen g(2);
  double worst_closed = 0, worst_rk4 = 0;
  for (double d : delta_sweep()) {
    for (int k = 0; k < 3; ++k) {
      const StateVector psi = k == 0 ? StateVector::down() : g.qubit_state();
      const StateVector expect = predicted_final_state(psi, predict_gamma(kDevice, d));
      const auto c = run_single_qubit(kDevice, {d}, psi, EvolutionMethod::closed_form);
      const auto r = run_single_qubit(kDevice, {d}, psi, EvolutionMethod::rk4);
      worst_closed = std::max(worst_closed, 1 - state_fidelity(expect, c.final_state));
      worst_rk4 = std::max(worst_rk4, 1 - state_fidelity(expect, r.final_state));
    }
  }
  report(2, worst_closed < 1e-9 && worst_rk4 < 1e-6,
         fmt("worst infidelity closed %.3g, rk4 %.3g", worst_closed, worst_rk4));
}

void criterion3() {
  const Calibration cal = calibrate_delta(kDevice, kPi / 2);
  const auto r = run_single_qubit(kDevice, {cal.delta}, StateVector::down());
  const double p_up = std::norm(r.final_state[0]);
  report(3, std::abs(p_up - 1) < 1e-9, fmt("delta = %.17g, P(up) = %.17g", cal.delta, p_up));
}

void criteria4and5() {
  double worst_dyn = 0, worst_area = 0;
  for (double d : delta_sweep()) {
    for (auto method : {EvolutionMethod::closed_form, EvolutionMethod::rk4}) {
      const auto r = run_single_qubit(kDevice, {d}, StateVector::down(), method);
      worst_dyn = std::max({worst_dyn, std::abs(r.plus_y->dynamic_phase),
                            std::abs(r.minus_y->dynamic_phase)});
      worst_area = std::max({worst_area, r.plus_y_consistency->mismatch,
                             r.minus_y_consistency->mismatch});
    }
  }
  report(4, worst_dyn < 1e-8, fmt("worst |dynamic phase| %.3g", worst_dyn));

  // Octant: three quarter great circles through the axes.
  auto arc = [](std::vector<BlochVector>& out, const BlochVector& a, const BlochVector& b) {
    for (int i = 0; i < 200; ++i) {
      const double s = 0.5 * kPi * i / 200;
      out.push_back({a.x * std::cos(s) + b.x * std::sin(s), a.y * std::cos(s) + b.y * std::sin(s),
                     a.z * std::cos(s) + b.z * std::sin(s)});
    }
  };
  std::vector<BlochVector> oct;
  arc(oct, {1, 0, 0}, {0, 1, 0});
  arc(oct, {0, 1, 0}, {0, 0, 1});
  arc(oct, {0, 0, 1}, {1, 0, 0});
  oct.push_back({1, 0, 0});
  const double octant_err = std::abs(solid_angle(BlochLoop(oct)) - kPi / 2);

  // Lune: two half great circles from +y to -y, tilted by +-eta about y.
  double lune_err = 0;
  for (double eta : {0.05, kPi / 8, 0.6, 1.2}) {
    std::vector<BlochVector> pts;
    for (int i = 0; i < 500; ++i) {
      const double s = kPi * i / 500;
      pts.push_back({std::cos(eta) * std::sin(s), std::cos(s), std::sin(eta) * std::sin(s)});
    }
    for (int i = 0; i < 500; ++i) {
      const double s = kPi * i / 500;
      pts.push_back({std::cos(eta) * std::sin(s), -std::cos(s), -std::sin(eta) * std::sin(s)});
    }
    pts.push_back({0, 1, 0});
    lune_err = std::max(lune_err, std::abs(std::abs(solid_angle(BlochLoop(pts))) - 4 * eta));
  }
  report(5, worst_area < 1e-6 && octant_err < 1e-6 && lune_err < 1e-6,
         fmt("phase-area mismatch %.3g, octant error %.3g, lune error %.3g", worst_area,
             octant_err, lune_err));
}

void criterion6() {
  double worst_leak = 0, worst_gamma = 0, eighth = 0;
  for (double theta : {kPi / 16, kPi / 8, kPi / 4}) {
    const GateReport r = run_conditional_gate(kDevice, {theta});
    worst_leak = std::max(worst_leak, r.leakage);
    worst_gamma = std::max(worst_gamma, std::abs(r.gamma_measured + 2 * theta));
    if (theta == kPi / 8) eighth = r.gamma_measured;
  }
  const double eighth_err = std::abs(std::abs(eighth) - kPi / 4);
  report(6, worst_leak < 1e-10 && worst_gamma < 1e-9 && eighth_err < 1e-9,
         fmt("leakage %.3g, |gamma + 2 theta| %.3g, gamma(pi/8) = %.17g", worst_leak,
             worst_gamma, eighth));
}

void criterion7() {
  const Operator u = ideal_conditional_gate(kPi / 4);
  const double f = cnot_fidelity(u);
  const LocalInvariants a = local_invariants(u), c = local_invariants(cnot_target());
  report(7, f >= 1 - 1e-9,
         fmt("best z-phase completion %.17g; invariants (G1, G2) = (%.6g%+.6gi, %.6g) vs CNOT "
             "(%.6g%+.6gi, %.6g), so no local completion exists",
             f, a.g1.real(), a.g1.imag(), a.g2, c.g1.real(), c.g1.imag(), c.g2));
}

void criterion8() {
  constexpr double kFloor = 1e-12;
  double ej_ratio = 0.1, coupling_ratio = 0.02;
  std::vector<double> derived, literal;
  std::string detail;
  for (int k = 0; k < 4; ++k) {
    const DeviceParams p{ej_ratio * 50.0, 50.0, coupling_ratio * 50.0};
    derived.push_back(
        run_conditional_gate(p, {kPi / 8, RotationMode::finite, CompensationMode::derived})
            .fidelity_vs_target);
    literal.push_back(
        run_conditional_gate(p, {kPi / 8, RotationMode::finite, CompensationMode::paper_literal})
            .fidelity_vs_target);
    detail += fmt(" (%.4g, %.4g): %.15f vs %.15f;", ej_ratio, coupling_ratio, derived.back(),
                  literal.back());
    ej_ratio /= 2;
    coupling_ratio /= 2;
  }
  bool increasing = true, beats = true;
  for (std::size_t k = 0; k < derived.size(); ++k) {
    if (k > 0 && !(derived[k] > derived[k - 1] + kFloor)) increasing = false;
    if (!(derived[k] > literal[k])) beats = false;
  }
  report(8, increasing && beats,
         fmt("fidelity strictly increasing under halving: %s; derived beats literal at every "
             "point: %s;",
             increasing ? "yes" : "no", beats ? "yes" : "no") +
             detail);
}

void criterion9() {
  const ValidationReport v = validate_two_level(50.0, {0.2, 0.1, 0.05, 0.025});
  bool widening_ok = true;
  std::string detail;
  for (const auto& r : v.rows) {
    if (r.ratio <= 0.1 && !(r.widening_change < 1e-6)) widening_ok = false;
    detail += fmt(" %.3g: discrepancy %.3g, widening %.3g;", r.ratio, r.discrepancy,
                  r.widening_change);
  }
  report(9, v.discrepancy_monotone && widening_ok,
         fmt("monotone: %s;", v.discrepancy_monotone ? "yes" : "no") + detail);
}

void criterion10() {
  Gen g(10);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    const FieldVector b = g.field(10.0);
    const double t = g.uniform(0.0, 5.0);
    worst = std::max(worst, two_level_propagator(b, t).max_abs_diff(
                                expm_hermitian(field_hamiltonian(b), t)));
  }
  double min_ratio = 1e300;
  for (int k = 0; k < 10; ++k) {
    std::vector<HamiltonianSegment> sched;
    const int n = g.integer(1, 4);
    for (int i = 0; i < n; ++i) sched.push_back({g.hermitian(2, 2.0), g.uniform(0.2, 1.5)});
    const StateVector psi = g.qubit_state();
    const Eigen::VectorXcd exact = (schedule_propagator(sched) * psi).amplitudes();
    auto err = [&](int steps) {
      const Trajectory tr = evolve_schedule(sched, psi, steps + 1, EvolutionMethod::rk4);
      return (tr.back().state.amplitudes() - exact).norm();
    };
    min_ratio = std::min(min_ratio, err(20) / err(40));
  }
  report(10, worst < 1e-11 && min_ratio >= 8,
         fmt("worst propagator difference %.3g, smallest rk4 error ratio %.4g", worst, min_ratio));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criteria4and5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  std::printf("%d of 10 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
