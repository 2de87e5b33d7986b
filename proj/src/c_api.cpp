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

#include "geophase/geophase.h"

#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <vector>

#include "geophase/device_model.hpp"
#include "geophase/errors.hpp"
#include "geophase/phase_analysis.hpp"
#include "geophase/protocols.hpp"

struct gp_device {
  geophase::DeviceParams params;
  std::vector<std::string> warnings;
};

struct gp_single_run {
  geophase::SingleQubitRun run;
  double tau;
  geophase::StateVector predicted;
};

struct gp_gate_run {
  geophase::GateReport report;
  double tau;
};

struct gp_validation {
  geophase::ValidationReport report;
};

namespace {

thread_local std::string g_last_error;

gp_status fail(gp_status code, const char* msg) {
  g_last_error = msg;
  return code;
}

// Runs `fn`, translating exceptions into status codes.
template <class Fn>
gp_status guarded(Fn&& fn) {
  try {
    fn();
    return GP_OK;
  } catch (const geophase::NonCyclicTrajectory& e) {
    return fail(GP_ERR_NON_CYCLIC, e.what());
  } catch (const geophase::Error& e) {
    return fail(GP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const geophase::ContractViolation& e) {
    return fail(GP_ERR_CONTRACT, e.what());
  } catch (const std::exception& e) {
    return fail(GP_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GP_ERR_INTERNAL, "unknown error");
  }
}

geophase::EvolutionMethod to_method(gp_method m) {
  switch (m) {
    case GP_METHOD_CLOSED_FORM: return geophase::EvolutionMethod::closed_form;
    case GP_METHOD_RK4: return geophase::EvolutionMethod::rk4;
  }
  throw geophase::Error("unknown evolution method");
}

geophase::Step3Mode to_step3(gp_step3_mode m) {
  switch (m) {
    case GP_STEP3_SYMMETRIC: return geophase::Step3Mode::symmetric;
    case GP_STEP3_LITERAL: return geophase::Step3Mode::literal;
  }
  throw geophase::Error("unknown step-3 mode");
}

geophase::RotationMode to_rotation(gp_rotation_mode m) {
  switch (m) {
    case GP_ROTATION_INSTANTANEOUS: return geophase::RotationMode::instantaneous;
    case GP_ROTATION_FINITE: return geophase::RotationMode::finite;
  }
  throw geophase::Error("unknown rotation mode");
}

geophase::CompensationMode to_compensation(gp_compensation_mode m) {
  switch (m) {
    case GP_COMPENSATION_DERIVED: return geophase::CompensationMode::derived;
    case GP_COMPENSATION_PAPER_LITERAL: return geophase::CompensationMode::paper_literal;
  }
  throw geophase::Error("unknown compensation mode");
}

// Parameter errors raised by the model are caller input at this boundary.
void check_device(const geophase::DeviceParams& p) {
  try {
    p.validate();
  } catch (const geophase::ContractViolation& e) {
    throw geophase::Error(e.what());
  }
}

}  // namespace

extern "C" {

const char* gp_version(void) { return "1.0.0"; }

const char* gp_last_error(void) { return g_last_error.c_str(); }

gp_status gp_device_create(double e_j0, double e_ch, double delta_coupling,
                           gp_device** out) {
  if (!out) return fail(GP_ERR_INVALID_ARGUMENT, "null output pointer");
  *out = nullptr;
  return guarded([&] {
    geophase::DeviceParams p{e_j0, e_ch, delta_coupling};
    check_device(p);
    *out = new gp_device{p, p.warnings()};
  });
}

void gp_device_destroy(gp_device* device) { delete device; }

size_t gp_device_warning_count(const gp_device* device) {
  return device ? device->warnings.size() : 0;
}

const char* gp_device_warning(const gp_device* device, size_t index) {
  if (!device || index >= device->warnings.size()) return nullptr;
  return device->warnings[index].c_str();
}

gp_status gp_predict_gamma(const gp_device* device, double delta, double* out) {
  if (!device || !out) return fail(GP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = geophase::predict_gamma(device->params, delta); });
}

gp_status gp_calibrate_delta(const gp_device* device, double target_gamma,
                             gp_calibration* out) {
  if (!device || !out) return fail(GP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto c = geophase::calibrate_delta(device->params, target_gamma);
    *out = {c.delta, c.tau, c.gamma_simulated, c.residual, c.used_bisection ? 1 : 0};
  });
}

gp_status gp_single_run_create(const gp_device* device, double delta, gp_step3_mode step3,
                               double alpha_re, double alpha_im, double beta_re,
                               double beta_im, gp_method method, int samples_per_segment,
                               gp_single_run** out) {
  if (!device || !out) return fail(GP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    geophase::SingleQubitPlan plan{delta, to_step3(step3)};
    if (!std::isfinite(delta) || delta < 0.0 || delta >= 1.0)
      throw geophase::Error("delta must lie in [0, 1)");
    if (samples_per_segment < 2) throw geophase::Error("samples must be >= 2");
    const geophase::Complex amps[2] = {{alpha_re, alpha_im}, {beta_re, beta_im}};
    geophase::StateVector initial = [&] {
      try {
        return geophase::StateVector::normalized(amps);
      } catch (const geophase::ContractViolation& e) {
        throw geophase::Error(e.what());
      }
    }();
    auto run = geophase::run_single_qubit(device->params, plan, initial,
                                          to_method(method), samples_per_segment);
    auto predicted = geophase::predicted_final_state(initial, run.gamma_predicted);
    *out = new gp_single_run{std::move(run), plan.tau(device->params),
                             std::move(predicted)};
  });
}

void gp_single_run_destroy(gp_single_run* run) { delete run; }

gp_status gp_single_run_summary(const gp_single_run* run, gp_single_summary* out) {
  if (!run || !out) return fail(GP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto& r = run->run;
    const auto& fin = r.final_state;
    double amp_res = 0.0;
    for (int i = 0; i < 2; ++i)
      amp_res = std::max(amp_res, std::abs(fin[i] - run->predicted[i]));
    const double pop_res = std::max(std::abs(std::norm(fin[0]) - std::norm(run->predicted[0])),
                                    std::abs(std::norm(fin[1]) - std::norm(run->predicted[1])));
    *out = {run->tau,
            r.gamma_predicted,
            r.gamma_from_plus,
            r.gamma_from_minus,
            r.eigen_cyclicity_defect,
            r.eigenstates_cyclic ? 1 : 0,
            std::norm(fin[0]),
            std::norm(fin[1]),
            geophase::state_fidelity(run->predicted, fin),
            amp_res,
            pop_res};
  });
}

gp_status gp_single_run_final_state(const gp_single_run* run, double out_re[2],
                                    double out_im[2]) {
  if (!run || !out_re || !out_im) return fail(GP_ERR_INVALID_ARGUMENT, "null argument");
  for (int i = 0; i < 2; ++i) {
    out_re[i] = run->run.final_state[i].real();
    out_im[i] = run->run.final_state[i].imag();
  }
  return GP_OK;
}

gp_status gp_single_run_phase_report(const gp_single_run* run, gp_eigenstate which,
                                     gp_phase_report* out) {
  if (!run || !out) return fail(GP_ERR_INVALID_ARGUMENT, "null argument");
  const auto& r = run->run;
  const auto& rep = which == GP_PLUS_Y ? r.plus_y : r.minus_y;
  const auto& con = which == GP_PLUS_Y ? r.plus_y_consistency : r.minus_y_consistency;
  if (!rep || !con) return fail(GP_ERR_NON_CYCLIC, "non-cyclic trajectory");
  *out = {rep->total_phase,       rep->dynamic_phase,    rep->geometric_phase,
          rep->geometric_phase_wrapped, rep->cyclicity_defect, con->geo_from_area,
          con->mismatch};
  return GP_OK;
}

size_t gp_single_run_sample_count(const gp_single_run* run) {
  return run ? run->run.trajectory.size() : 0;
}

gp_status gp_single_run_sample(const gp_single_run* run, size_t index, double* t,
                               double amp_re[2], double amp_im[2], double bloch[3]) {
  if (!run || !t || !amp_re || !amp_im || !bloch)
    return fail(GP_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= run->run.trajectory.size())
    return fail(GP_ERR_INVALID_ARGUMENT, "sample index out of range");
  const auto& s = run->run.trajectory[index];
  *t = s.t;
  for (int i = 0; i < 2; ++i) {
    amp_re[i] = s.state[i].real();
    amp_im[i] = s.state[i].imag();
  }
  const auto b = geophase::bloch_from_state(s.state);
  bloch[0] = b.x;
  bloch[1] = b.y;
  bloch[2] = b.z;
  return GP_OK;
}

gp_status gp_gate_run_create(const gp_device* device, double theta,
                             gp_rotation_mode rotation, gp_compensation_mode compensation,
                             gp_gate_run** out) {
  if (!device || !out) return fail(GP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    geophase::TwoQubitPlan plan{theta, to_rotation(rotation), to_compensation(compensation)};
    if (!std::isfinite(theta) || theta < 0.0 || theta >= 0.5 * std::numbers::pi)
      throw geophase::Error("theta must lie in [0, pi/2)");
    auto rep = geophase::run_conditional_gate(device->params, plan);
    *out = new gp_gate_run{std::move(rep), plan.tau(device->params)};
  });
}

void gp_gate_run_destroy(gp_gate_run* run) { delete run; }

gp_status gp_gate_run_summary(const gp_gate_run* run, gp_gate_summary* out) {
  if (!run || !out) return fail(GP_ERR_INVALID_ARGUMENT, "null argument");
  const auto& r = run->report;
  *out = {run->tau,
          r.gamma_measured,
          r.gamma_nominal,
          r.fidelity_vs_target,
          r.conditional_identity_defect,
          r.block_phase_down,
          r.block_phase_up,
          r.leakage};
  return GP_OK;
}

gp_status gp_gate_run_unitary(const gp_gate_run* run, int listed_order, double out_re[16],
                              double out_im[16]) {
  if (!run || !out_re || !out_im) return fail(GP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const geophase::Operator u =
        listed_order ? geophase::to_listed_order(run->report.unitary) : run->report.unitary;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        out_re[4 * i + j] = u(i, j).real();
        out_im[4 * i + j] = u(i, j).imag();
      }
    }
  });
}

gp_status gp_cnot_fidelity(const double re[16], const double im[16], double* out) {
  if (!re || !im || !out) return fail(GP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    Eigen::MatrixXcd m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = {re[4 * i + j], im[4 * i + j]};
    *out = geophase::cnot_fidelity(geophase::Operator(std::move(m)));
  });
}

gp_status gp_local_invariants(const double re[16], const double im[16], double* g1_re,
                              double* g1_im, double* g2) {
  if (!re || !im || !g1_re || !g1_im || !g2)
    return fail(GP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    Eigen::MatrixXcd m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = {re[4 * i + j], im[4 * i + j]};
    const auto inv = geophase::local_invariants(geophase::Operator(std::move(m)));
    *g1_re = inv.g1.real();
    *g1_im = inv.g1.imag();
    *g2 = inv.g2;
  });
}

gp_status gp_validation_create(double e_ch, const double* ratios, size_t n_ratios,
                               int n_min, int n_max, double target_gamma,
                               gp_validation** out) {
  if (!out || (!ratios && n_ratios > 0)) return fail(GP_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    if (!(n_min <= 0 && n_max >= 1))
      throw geophase::Error("invalid truncation window: need n_min <= 0 < 1 <= n_max");
    if (n_max - n_min > 40) throw geophase::Error("invalid truncation window: at most 41 levels");
    if (n_ratios == 0) throw geophase::Error("empty ratio list");
    std::vector<double> rs(ratios, ratios + n_ratios);
    for (double r : rs) {
      if (!(r > 0.0) || !std::isfinite(r)) throw geophase::Error("ratios must be > 0");
    }
    if (!(e_ch > 0.0) || !std::isfinite(e_ch)) throw geophase::Error("e_ch must be > 0");
    *out = new gp_validation{
        geophase::validate_two_level(e_ch, rs, n_min, n_max, target_gamma)};
  });
}

void gp_validation_destroy(gp_validation* v) { delete v; }

size_t gp_validation_row_count(const gp_validation* v) { return v ? v->report.rows.size() : 0; }

gp_status gp_validation_row(const gp_validation* v, size_t index, gp_validation_entry* out) {
  if (!v || !out) return fail(GP_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= v->report.rows.size())
    return fail(GP_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = v->report.rows[index];
  *out = {r.ratio, r.e_j0, r.delta, r.leakage, r.discrepancy, r.widening_change};
  return GP_OK;
}

int gp_validation_monotone(const gp_validation* v) {
  return v && v->report.discrepancy_monotone ? 1 : 0;
}

}  // extern "C"
