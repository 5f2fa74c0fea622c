/* C interface to the cr-noma cognitive-radio NOMA toolkit.
* Generated by cbindgen; do not edit by hand. */

#ifndef CR_NOMA_H
#define CR_NOMA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Admission scheme selector.
 */
typedef enum CrnScheme {
  /**
   * Hybrid SIC ordering with power adaptation.
   */
  CrnScheme_HsicPa = 0,
  /**
   * Fixed second-stage SIC ordering with power adaptation.
   */
  CrnScheme_FsicPa = 1,
  /**
   * Hybrid SIC ordering without power adaptation.
   */
  CrnScheme_HsicNpa = 2,
} CrnScheme;

/**
 * Result code of every fallible ABI call.
 */
typedef enum CrnStatus {
  /**
   * Success; out-parameters hold results.
   */
  CrnStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  CrnStatus_NullPointer = 1,
  /**
   * Arguments outside the accepted domain (bad parameters, zero trials…).
   */
  CrnStatus_InvalidArgument = 2,
  /**
   * The requested combination has no implementation (for example a
   * closed-form outage without power adaptation).
   */
  CrnStatus_Unsupported = 3,
  /**
   * A conditional quantity whose conditioning event has zero mass here.
   */
  CrnStatus_Degenerate = 4,
  /**
   * A numerical routine could not reach its accuracy target.
   */
  CrnStatus_Numerical = 5,
  /**
   * Internal failure (caught panic or unexpected error kind).
   */
  CrnStatus_Internal = 6,
} CrnStatus;

/**
 * Opaque, validated scenario configuration.
 */
typedef struct CrnConfig CrnConfig;

/**
 * Threshold constants derived from a configuration.
 */
typedef struct CrnConstants {
  /**
   * SINR threshold of the primary target rate, `2^R0 - 1`.
   */
  double epsilon0;
  /**
   * SINR threshold of the secondary target rate, `2^Rs - 1`.
   */
  double epsilon_s;
  /**
   * Primary outage threshold on its own gain, `epsilon0 / P0`.
   */
  double alpha0;
  /**
   * Interference-free secondary threshold, `epsilon_s / Ps`.
   */
  double alpha_s;
  /**
   * Admission-window saturation level, `(1 + epsilon_s) * alpha0`.
   */
  double alpha1;
} CrnConstants;

/**
 * A Monte Carlo estimate with its uncertainty and provenance.
 */
typedef struct CrnEstimate {
  /**
   * Sample mean.
   */
  double mean;
  /**
   * Standard error of the mean. (Named to dodge the `stderr` macro that
   * `<stdio.h>` would otherwise splice into the struct declaration.)
   */
  double std_err;
  /**
   * Number of trials (conditioning-event count for conditional metrics).
   */
  uint64_t n;
  /**
   * Seed the estimate was produced under (replay yields identical bits).
   */
  uint64_t seed;
} CrnEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a configuration from linear, noise-normalised transmit powers.
 *
 * # Safety
 * `out` must point to writable `*mut CrnConfig` storage. On `Ok` it receives
 * a fresh handle owned by the caller; release it with [`crn_config_free`].
 */
enum CrnStatus crn_config_new(uint32_t m,
                              double p0,
                              double ps,
                              double r0,
                              double rs,
                              struct CrnConfig **out);

/**
 * Creates a configuration from a primary SNR in dB and the power ratio
 * `rho = Ps/P0`.
 *
 * # Safety
 * Same contract as [`crn_config_new`].
 */
enum CrnStatus crn_config_from_snr_db(uint32_t m,
                                      double snr_db,
                                      double rho,
                                      double r0,
                                      double rs,
                                      struct CrnConfig **out);

/**
 * Releases a configuration handle. Null is a no-op.
 *
 * # Safety
 * `config` must be a handle obtained from this library that has not been
 * freed already.
 */
void crn_config_free(struct CrnConfig *config);

/**
 * Reads back the derived threshold constants of a configuration.
 *
 * # Safety
 * `config` must be a live handle; `out` must be valid for writes.
 */
enum CrnStatus crn_constants(const struct CrnConfig *config, struct CrnConstants *out);

/**
 * Interference tolerance `tau(g2) = max(0, P0*g2/epsilon0 - 1)` of the
 * primary at squared gain `g2`.
 *
 * # Safety
 * `config` must be a live handle; `out` must be valid for writes.
 */
enum CrnStatus crn_tau(const struct CrnConfig *config, double g2, double *out);

/**
 * Exact outage probability of the served secondary user, where a closed
 * form exists (`Unsupported` for the no-adaptation scheme — use the oracle
 * or Monte Carlo entry points instead).
 *
 * # Safety
 * `config` must be a live handle; `out` must be valid for writes.
 */
enum CrnStatus crn_outage_closed_form(const struct CrnConfig *config,
                                      enum CrnScheme scheme,
                                      double *out);

/**
 * High-SNR outage approximation. With `refined` set the hybrid scheme uses
 * the correction-term form; the fixed-order scheme has a single
 * approximation and ignores the flag.
 *
 * # Safety
 * `config` must be a live handle; `out` must be valid for writes.
 */
enum CrnStatus crn_outage_high_snr(const struct CrnConfig *config,
                                   enum CrnScheme scheme,
                                   bool refined,
                                   double *out);

/**
 * Probability that the served secondary user is type II (closed form).
 *
 * # Safety
 * `config` must be a live handle; `out` must be valid for writes.
 */
enum CrnStatus crn_p_type2(const struct CrnConfig *config, double *out);

/**
 * Conditional probability that power adaptation beats full-power
 * first-stage decoding, given a type-II served user (closed form).
 *
 * # Safety
 * `config` must be a live handle; `out` must be valid for writes.
 */
enum CrnStatus crn_p_better(const struct CrnConfig *config, double *out);

/**
 * Complement of [`crn_p_better`] (closed form).
 *
 * # Safety
 * `config` must be a live handle; `out` must be valid for writes.
 */
enum CrnStatus crn_p_worse(const struct CrnConfig *config, double *out);

/**
 * Outage probability by adaptive quadrature, available for all three
 * schemes and independent of the closed forms.
 *
 * # Safety
 * `config` must be a live handle; `out` must be valid for writes.
 */
enum CrnStatus crn_outage_oracle(const struct CrnConfig *config,
                                 enum CrnScheme scheme,
                                 double *out);

/**
 * Monte Carlo outage estimate. Fixed `(trials, seed)` reproduce the same
 * bits on any machine and thread count.
 *
 * # Safety
 * `config` must be a live handle; `out` must be valid for writes.
 */
enum CrnStatus crn_mc_outage(const struct CrnConfig *config,
                             enum CrnScheme scheme,
                             uint64_t trials,
                             uint64_t seed,
                             struct CrnEstimate *out);

/**
 * Monte Carlo estimate of the served user's mean achievable rate.
 *
 * # Safety
 * `config` must be a live handle; `out` must be valid for writes.
 */
enum CrnStatus crn_mc_ergodic_rate(const struct CrnConfig *config,
                                   enum CrnScheme scheme,
                                   uint64_t trials,
                                   uint64_t seed,
                                   struct CrnEstimate *out);

/**
 * Monte Carlo estimate of the served user's mean transmit-power scale β.
 * With `type2_only` set, only trials whose served user is type II enter the
 * average (`Degenerate` if none do).
 *
 * # Safety
 * `config` must be a live handle; `out` must be valid for writes.
 */
enum CrnStatus crn_mc_avg_beta(const struct CrnConfig *config,
                               enum CrnScheme scheme,
                               uint64_t trials,
                               uint64_t seed,
                               bool type2_only,
                               struct CrnEstimate *out);

/**
 * Monte Carlo estimate of the probability that the served user is type II.
 *
 * # Safety
 * `config` must be a live handle; `out` must be valid for writes.
 */
enum CrnStatus crn_mc_p_type2(const struct CrnConfig *config,
                              uint64_t trials,
                              uint64_t seed,
                              struct CrnEstimate *out);

/**
 * Joint Monte Carlo estimate of the better/worse conditional probabilities
 * (one pass over shared draws, so the two means add to 1 exactly).
 *
 * # Safety
 * `config` must be a live handle; `out_better` and `out_worse` must be
 * valid for writes.
 */
enum CrnStatus crn_mc_better_worse(const struct CrnConfig *config,
                                   uint64_t trials,
                                   uint64_t seed,
                                   struct CrnEstimate *out_better,
                                   struct CrnEstimate *out_worse);

/**
 * Static description of a status code. Never null; do not free.
 */
const char *crn_status_message(enum CrnStatus status);

/**
 * Library version as a static C string; do not free.
 */
const char *crn_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CR_NOMA_H */
