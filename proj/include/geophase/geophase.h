/* Copyright 2026 The geophase Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

/* C interface of libgeophase.
 *
 * Every call returns a gp_status. On failure the message is available from
 * gp_last_error() on the calling thread until the next failing call on that
 * thread. Result objects are opaque handles released with their matching
 * *_destroy function; destroy functions accept NULL. Handles are immutable
 * after creation and may be read from several threads at once.
 *
 * Single-qubit amplitudes are ordered (|up>, |down>). Two-qubit unitaries
 * come in module order (|uu>, |ud>, |du>, |dd>) or, with listed_order != 0,
 * in (|dd>, |du>, |ud>, |uu>).
 */

#ifndef GEOPHASE_GEOPHASE_H_
#define GEOPHASE_GEOPHASE_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(GEOPHASE_BUILDING_LIBRARY)
#define GP_API __declspec(dllexport)
#else
#define GP_API __declspec(dllimport)
#endif
#else
#define GP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gp_status {
  GP_OK = 0,
  GP_ERR_INVALID_ARGUMENT = 1, /* bad input: out-of-range parameter, unknown mode */
  GP_ERR_CONTRACT = 2,         /* numeric contract violated inside the library */
  GP_ERR_NON_CYCLIC = 3,       /* phase analysis on a loop that does not close */
  GP_ERR_INTERNAL = 4
} gp_status;

typedef enum gp_method { GP_METHOD_CLOSED_FORM = 0, GP_METHOD_RK4 = 1 } gp_method;
typedef enum gp_step3_mode { GP_STEP3_SYMMETRIC = 0, GP_STEP3_LITERAL = 1 } gp_step3_mode;
typedef enum gp_rotation_mode {
  GP_ROTATION_INSTANTANEOUS = 0,
  GP_ROTATION_FINITE = 1
} gp_rotation_mode;
typedef enum gp_compensation_mode {
  GP_COMPENSATION_DERIVED = 0,
  GP_COMPENSATION_PAPER_LITERAL = 1
} gp_compensation_mode;
typedef enum gp_eigenstate { GP_PLUS_Y = 0, GP_MINUS_Y = 1 } gp_eigenstate;

typedef struct gp_device gp_device;
typedef struct gp_single_run gp_single_run;
typedef struct gp_gate_run gp_gate_run;
typedef struct gp_validation gp_validation;

typedef struct gp_phase_report {
  double total_phase;
  double dynamic_phase;
  double geometric_phase;
  double geometric_phase_wrapped;
  double cyclicity_defect;
  double geo_from_area;  /* wrapped, from the enclosed solid angle */
  double area_mismatch;
} gp_phase_report;

typedef struct gp_single_summary {
  double tau;
  double gamma_predicted;
  double gamma_from_plus; /* NaN when the eigenstate loops do not close */
  double gamma_from_minus;
  double eigen_cyclicity_defect;
  int eigenstates_cyclic;
  double final_population_up;
  double final_population_down;
  /* Agreement with the closed-form interference amplitudes. */
  double interference_fidelity;          /* |<predicted|final>|^2 */
  double interference_amplitude_residual; /* max |predicted_i - final_i| */
  double interference_population_residual;
} gp_single_summary;

typedef struct gp_calibration {
  double delta;
  double tau;
  double gamma_simulated;
  double residual;
  int used_bisection;
} gp_calibration;

typedef struct gp_gate_summary {
  double tau;
  double gamma_measured;
  double gamma_nominal;
  double fidelity_vs_target;
  double conditional_identity_defect;
  double block_phase_down;
  double block_phase_up;
  double leakage;
} gp_gate_summary;

typedef struct gp_validation_entry {
  double ratio;
  double e_j0;
  double delta;
  double leakage;
  double discrepancy;
  double widening_change;
} gp_validation_entry;

GP_API const char* gp_version(void);
GP_API const char* gp_last_error(void);

/* ---- device ------------------------------------------------------------ */
GP_API gp_status gp_device_create(double e_j0, double e_ch, double delta_coupling,
                                  gp_device** out);
GP_API void gp_device_destroy(gp_device* device);
GP_API size_t gp_device_warning_count(const gp_device* device);
/* NULL when index is out of range. */
GP_API const char* gp_device_warning(const gp_device* device, size_t index);

/* ---- single-qubit protocol -------------------------------------------- */
GP_API gp_status gp_predict_gamma(const gp_device* device, double delta, double* out);
GP_API gp_status gp_calibrate_delta(const gp_device* device, double target_gamma,
                                    gp_calibration* out);
/* initial = (alpha_re + i alpha_im)|up> + (beta_re + i beta_im)|down>,
 * normalized by the library. */
GP_API gp_status gp_single_run_create(const gp_device* device, double delta,
                                      gp_step3_mode step3, double alpha_re,
                                      double alpha_im, double beta_re, double beta_im,
                                      gp_method method, int samples_per_segment,
                                      gp_single_run** out);
GP_API void gp_single_run_destroy(gp_single_run* run);
GP_API gp_status gp_single_run_summary(const gp_single_run* run, gp_single_summary* out);
GP_API gp_status gp_single_run_final_state(const gp_single_run* run, double out_re[2],
                                           double out_im[2]);
/* GP_ERR_NON_CYCLIC when the eigenstate loops do not close. */
GP_API gp_status gp_single_run_phase_report(const gp_single_run* run, gp_eigenstate which,
                                            gp_phase_report* out);
GP_API size_t gp_single_run_sample_count(const gp_single_run* run);
GP_API gp_status gp_single_run_sample(const gp_single_run* run, size_t index, double* t,
                                      double amp_re[2], double amp_im[2],
                                      double bloch[3]);

/* ---- conditional two-qubit gate ---------------------------------------- */
GP_API gp_status gp_gate_run_create(const gp_device* device, double theta,
                                    gp_rotation_mode rotation,
                                    gp_compensation_mode compensation, gp_gate_run** out);
GP_API void gp_gate_run_destroy(gp_gate_run* run);
GP_API gp_status gp_gate_run_summary(const gp_gate_run* run, gp_gate_summary* out);
/* Row-major 4x4. */
GP_API gp_status gp_gate_run_unitary(const gp_gate_run* run, int listed_order,
                                     double out_re[16], double out_im[16]);
/* Row-major 4x4 input, module order. */
GP_API gp_status gp_cnot_fidelity(const double re[16], const double im[16], double* out);
/* Makhlin invariants (G1 complex, G2 real); equal for locally equivalent gates.
 * CNOT gives (0, 1). */
GP_API gp_status gp_local_invariants(const double re[16], const double im[16], double* g1_re,
                                     double* g1_im, double* g2);

/* ---- two-level validation ---------------------------------------------- */
GP_API gp_status gp_validation_create(double e_ch, const double* ratios, size_t n_ratios,
                                      int n_min, int n_max, double target_gamma,
                                      gp_validation** out);
GP_API void gp_validation_destroy(gp_validation* v);
GP_API size_t gp_validation_row_count(const gp_validation* v);
GP_API gp_status gp_validation_row(const gp_validation* v, size_t index,
                                   gp_validation_entry* out);
GP_API int gp_validation_monotone(const gp_validation* v);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* GEOPHASE_GEOPHASE_H_ */
