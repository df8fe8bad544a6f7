#ifndef ACCEL_CS_H
#define ACCEL_CS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AcsStatus {
  ACS_STATUS_OK = 0,
  ACS_STATUS_NULL_POINTER = 1,
  ACS_STATUS_DOMAIN = 2,
  ACS_STATUS_CONTRACT = 3,
  ACS_STATUS_CAPABILITY = 4,
  ACS_STATUS_UNCONVERGED = 5,
  ACS_STATUS_IO = 6,
  ACS_STATUS_CONFIG = 7,
  ACS_STATUS_INVALID_UTF8 = 8,
  ACS_STATUS_PANIC = 9,
} AcsStatus;

typedef struct AcsCoherentState AcsCoherentState;

typedef struct AcsModel AcsModel;

typedef struct AcsPropagation AcsPropagation;

// First and second moments of a coherent state at time `tau`.
typedef struct AcsMoments {
  double mean_q;
  double mean_p;
  double sigma_q;
  double sigma_p;
  double sigma_qp;
  double tau;
} AcsMoments;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty if none.
// The pointer stays valid until the next failing call on the same thread.
const char *acs_last_error(void);

// Library version as a static NUL-terminated string.
const char *acs_version(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void acs_string_free(char *s);

enum AcsStatus acs_airy_ai(double x, double *out_value);

enum AcsStatus acs_model_new(double f_q, struct AcsModel **out_model);

// # Safety
// `model` must be null or a handle from [`acs_model_new`], not yet freed.
void acs_model_free(struct AcsModel *model);

// Coherent state of width `sigma_q` centred at `(q0, p0)` at `tau = 0`.
enum AcsStatus acs_cs_new(double sigma_q,
                          double q0,
                          double p0,
                          struct AcsCoherentState **out_state);

// Generalized coherent state: integral of motion `(|c1|, mu1, mu2 - mu1)` and label `z`.
enum AcsStatus acs_gcs_new(double c1_abs,
                           double mu1,
                           double delta_mu,
                           double z_re,
                           double z_im,
                           struct AcsCoherentState **out_state);

// # Safety
// `state` must be null or a handle from [`acs_cs_new`] or [`acs_gcs_new`], not yet freed.
void acs_state_free(struct AcsCoherentState *state);

enum AcsStatus acs_state_eval(const struct AcsCoherentState *state,
                              const struct AcsModel *model,
                              double q,
                              double tau,
                              double *out_re,
                              double *out_im);

enum AcsStatus acs_state_moments(const struct AcsCoherentState *state,
                                 const struct AcsModel *model,
                                 double tau,
                                 struct AcsMoments *out_moments);

enum AcsStatus acs_eta_state(const struct AcsModel *model,
                             double eta,
                             double q,
                             double tau,
                             double *out_re,
                             double *out_im);

// Real stationary state of energy `epsilon` at `q`; multiply by `exp(-i epsilon tau)` for the time dependence.
enum AcsStatus acs_stationary_state(const struct AcsModel *model,
                                    double epsilon,
                                    double q,
                                    double *out_value);

// Crank-Nicolson evolution of `state` (sampled at `tau = 0` on `n_points`
// nodes of `[q_min, q_max]` and normalized) to `tau_end`, steps at most `max_dt`.
enum AcsStatus acs_propagate(const struct AcsCoherentState *state,
                             const struct AcsModel *model,
                             double q_min,
                             double q_max,
                             size_t n_points,
                             double tau_end,
                             double max_dt,
                             struct AcsPropagation **out_run);

// # Safety
// `run` must be null or a handle from [`acs_propagate`], not yet freed.
void acs_propagation_free(struct AcsPropagation *run);

// Number of grid nodes; 0 for a null handle.
size_t acs_propagation_len(const struct AcsPropagation *run);

// Copies the final wave function into `re` and `im`, each of length `len`
// equal to [`acs_propagation_len`]. Either buffer may be null to skip it.
//
// # Safety
// Non-null buffers must hold `len` writable doubles.
enum AcsStatus acs_propagation_values(const struct AcsPropagation *run,
                                      double *re,
                                      double *im,
                                      size_t len);

enum AcsStatus acs_propagation_diagnostics(const struct AcsPropagation *run,
                                           double *out_norm_drift,
                                           double *out_edge_mass,
                                           bool *out_clean);

// Runs the named verification suite. `out_report` receives the JSON report
// (free with [`acs_string_free`]) and may be null.
//
// # Safety
// `suite` must be a NUL-terminated string.
enum AcsStatus acs_validate(const char *suite, uint64_t seed, bool *out_passed, char **out_report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ACCEL_CS_H */
