//! C ABI for the cognitive-radio NOMA analytics and simulation library.
//!
//! Conventions:
//!
//! * Configurations are opaque handles: create with [`crn_config_new`] or
//!   [`crn_config_from_snr_db`], release with [`crn_config_free`]. Handles
//!   are immutable after creation and safe to share across threads.
//! * Every fallible call returns a [`CrnStatus`] and writes its result
//!   through out-pointers, which are written only when the returned status is
//!   `Ok`.
//! * Nothing unwinds across the boundary; an internal panic is caught and
//!   reported as [`CrnStatus::Internal`].
//! * [`crn_status_message`] and [`crn_version`] return pointers to static
//!   strings — never free them.
//!
//! The matching C header `include/cr_noma.h` is generated by the build
//! script.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use cr_noma::{analytic, channel, mc, oracle};
use cr_noma::{BetaPopulation, Error, McEstimate, Scheme, SystemConfig};

/// Opaque, validated scenario configuration.
pub struct CrnConfig(SystemConfig);

/// Result code of every fallible ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrnStatus {
    /// Success; out-parameters hold results.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Arguments outside the accepted domain (bad parameters, zero trials…).
    InvalidArgument = 2,
    /// The requested combination has no implementation (for example a
    /// closed-form outage without power adaptation).
    Unsupported = 3,
    /// A conditional quantity whose conditioning event has zero mass here.
    Degenerate = 4,
    /// A numerical routine could not reach its accuracy target.
    Numerical = 5,
    /// Internal failure (caught panic or unexpected error kind).
    Internal = 6,
}

/// Admission scheme selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrnScheme {
    /// Hybrid SIC ordering with power adaptation.
    HsicPa = 0,
    /// Fixed second-stage SIC ordering with power adaptation.
    FsicPa = 1,
    /// Hybrid SIC ordering without power adaptation.
    HsicNpa = 2,
}

/// A Monte Carlo estimate with its uncertainty and provenance.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrnEstimate {
    /// Sample mean.
    pub mean: f64,
    /// Standard error of the mean. (Named to dodge the `stderr` macro that
    /// `<stdio.h>` would otherwise splice into the struct declaration.)
    pub std_err: f64,
    /// Number of trials (conditioning-event count for conditional metrics).
    pub n: u64,
    /// Seed the estimate was produced under (replay yields identical bits).
    pub seed: u64,
}

/// Threshold constants derived from a configuration.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrnConstants {
    /// SINR threshold of the primary target rate, `2^R0 - 1`.
    pub epsilon0: f64,
    /// SINR threshold of the secondary target rate, `2^Rs - 1`.
    pub epsilon_s: f64,
    /// Primary outage threshold on its own gain, `epsilon0 / P0`.
    pub alpha0: f64,
    /// Interference-free secondary threshold, `epsilon_s / Ps`.
    pub alpha_s: f64,
    /// Admission-window saturation level, `(1 + epsilon_s) * alpha0`.
    pub alpha1: f64,
}

fn status_of(e: &Error) -> CrnStatus {
    match e {
        Error::InvalidConfig(_) | Error::Domain(_) | Error::NoTrials => CrnStatus::InvalidArgument,
        Error::Unsupported(_) | Error::SeriesCap { .. } => CrnStatus::Unsupported,
        Error::Degenerate(_) => CrnStatus::Degenerate,
        Error::NoConvergence { .. } | Error::OutOfRange(_) => CrnStatus::Numerical,
        Error::Io(_) | Error::Json(_) => CrnStatus::Internal,
    }
}

fn scheme_of(s: CrnScheme) -> Scheme {
    match s {
        CrnScheme::HsicPa => Scheme::HsicPa,
        CrnScheme::FsicPa => Scheme::FsicPa,
        CrnScheme::HsicNpa => Scheme::HsicNpa,
    }
}

fn estimate_of(e: McEstimate) -> CrnEstimate {
    CrnEstimate { mean: e.mean, std_err: e.stderr, n: e.n, seed: e.seed }
}

/// Runs `f` without letting a panic cross the ABI.
fn guarded(f: impl FnOnce() -> CrnStatus) -> CrnStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(CrnStatus::Internal)
}

/// Writes a library result through an out-pointer, mapping errors to codes.
///
/// # Safety
/// `out` must be valid for writes (checked non-null by the callers).
unsafe fn complete<T>(result: Result<T, Error>, out: *mut T) -> CrnStatus {
    match result {
        Ok(v) => {
            *out = v;
            CrnStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

// ---------------------------------------------------------------------------
// Configuration lifecycle.
// ---------------------------------------------------------------------------

/// Creates a configuration from linear, noise-normalised transmit powers.
///
/// # Safety
/// `out` must point to writable `*mut CrnConfig` storage. On `Ok` it receives
/// a fresh handle owned by the caller; release it with [`crn_config_free`].
#[no_mangle]
pub unsafe extern "C" fn crn_config_new(
    m: u32,
    p0: f64,
    ps: f64,
    r0: f64,
    rs: f64,
    out: *mut *mut CrnConfig,
) -> CrnStatus {
    if out.is_null() {
        return CrnStatus::NullPointer;
    }
    guarded(|| match SystemConfig::new(m, p0, ps, r0, rs) {
        Ok(c) => {
            *out = Box::into_raw(Box::new(CrnConfig(c)));
            CrnStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Creates a configuration from a primary SNR in dB and the power ratio
/// `rho = Ps/P0`.
///
/// # Safety
/// Same contract as [`crn_config_new`].
#[no_mangle]
pub unsafe extern "C" fn crn_config_from_snr_db(
    m: u32,
    snr_db: f64,
    rho: f64,
    r0: f64,
    rs: f64,
    out: *mut *mut CrnConfig,
) -> CrnStatus {
    if out.is_null() {
        return CrnStatus::NullPointer;
    }
    guarded(|| match SystemConfig::from_snr_db(m, snr_db, rho, r0, rs) {
        Ok(c) => {
            *out = Box::into_raw(Box::new(CrnConfig(c)));
            CrnStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Releases a configuration handle. Null is a no-op.
///
/// # Safety
/// `config` must be a handle obtained from this library that has not been
/// freed already.
#[no_mangle]
pub unsafe extern "C" fn crn_config_free(config: *mut CrnConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Reads back the derived threshold constants of a configuration.
///
/// # Safety
/// `config` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crn_constants(
    config: *const CrnConfig,
    out: *mut CrnConstants,
) -> CrnStatus {
    let Some(cfg) = config.as_ref() else { return CrnStatus::NullPointer };
    if out.is_null() {
        return CrnStatus::NullPointer;
    }
    let k = cfg.0.constants();
    *out = CrnConstants {
        epsilon0: k.epsilon0,
        epsilon_s: k.epsilon_s,
        alpha0: k.alpha0,
        alpha_s: k.alpha_s,
        alpha1: k.alpha1,
    };
    CrnStatus::Ok
}

/// Interference tolerance `tau(g2) = max(0, P0*g2/epsilon0 - 1)` of the
/// primary at squared gain `g2`.
///
/// # Safety
/// `config` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crn_tau(
    config: *const CrnConfig,
    g2: f64,
    out: *mut f64,
) -> CrnStatus {
    let Some(cfg) = config.as_ref() else { return CrnStatus::NullPointer };
    if out.is_null() {
        return CrnStatus::NullPointer;
    }
    if !(g2.is_finite() && g2 >= 0.0) {
        return CrnStatus::InvalidArgument;
    }
    *out = channel::tau(g2, &cfg.0);
    CrnStatus::Ok
}

// ---------------------------------------------------------------------------
// Closed forms.
// ---------------------------------------------------------------------------

/// Exact outage probability of the served secondary user, where a closed
/// form exists (`Unsupported` for the no-adaptation scheme — use the oracle
/// or Monte Carlo entry points instead).
///
/// # Safety
/// `config` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crn_outage_closed_form(
    config: *const CrnConfig,
    scheme: CrnScheme,
    out: *mut f64,
) -> CrnStatus {
    let Some(cfg) = config.as_ref() else { return CrnStatus::NullPointer };
    if out.is_null() {
        return CrnStatus::NullPointer;
    }
    guarded(|| {
        let r = match scheme_of(scheme) {
            Scheme::HsicPa => analytic::outage_hsic_pa_exact(&cfg.0),
            Scheme::FsicPa => analytic::outage_fsic_pa_exact(&cfg.0),
            Scheme::HsicNpa => Err(Error::Unsupported(
                "no closed-form outage without power adaptation".into(),
            )),
        };
        complete(r.map(|a| a.value), out)
    })
}

/// High-SNR outage approximation. With `refined` set the hybrid scheme uses
/// the correction-term form; the fixed-order scheme has a single
/// approximation and ignores the flag.
///
/// # Safety
/// `config` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crn_outage_high_snr(
    config: *const CrnConfig,
    scheme: CrnScheme,
    refined: bool,
    out: *mut f64,
) -> CrnStatus {
    let Some(cfg) = config.as_ref() else { return CrnStatus::NullPointer };
    if out.is_null() {
        return CrnStatus::NullPointer;
    }
    guarded(|| {
        let r = match (scheme_of(scheme), refined) {
            (Scheme::HsicPa, true) => analytic::outage_hsic_pa_approx1(&cfg.0),
            (Scheme::HsicPa, false) => analytic::outage_hsic_pa_approx2(&cfg.0),
            (Scheme::FsicPa, _) => analytic::outage_fsic_pa_approx(&cfg.0),
            (Scheme::HsicNpa, _) => Err(Error::Unsupported(
                "no high-SNR approximation without power adaptation".into(),
            )),
        };
        complete(r.map(|a| a.value), out)
    })
}

/// Probability that the served secondary user is type II (closed form).
///
/// # Safety
/// `config` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crn_p_type2(config: *const CrnConfig, out: *mut f64) -> CrnStatus {
    let Some(cfg) = config.as_ref() else { return CrnStatus::NullPointer };
    if out.is_null() {
        return CrnStatus::NullPointer;
    }
    guarded(|| complete(analytic::p_type2(&cfg.0).map(|a| a.value), out))
}

/// Conditional probability that power adaptation beats full-power
/// first-stage decoding, given a type-II served user (closed form).
///
/// # Safety
/// `config` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crn_p_better(config: *const CrnConfig, out: *mut f64) -> CrnStatus {
    let Some(cfg) = config.as_ref() else { return CrnStatus::NullPointer };
    if out.is_null() {
        return CrnStatus::NullPointer;
    }
    guarded(|| complete(analytic::p_better(&cfg.0).map(|a| a.value), out))
}

/// Complement of [`crn_p_better`] (closed form).
///
/// # Safety
/// `config` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crn_p_worse(config: *const CrnConfig, out: *mut f64) -> CrnStatus {
    let Some(cfg) = config.as_ref() else { return CrnStatus::NullPointer };
    if out.is_null() {
        return CrnStatus::NullPointer;
    }
    guarded(|| complete(analytic::p_worse_fsic(&cfg.0).map(|a| a.value), out))
}

// ---------------------------------------------------------------------------
// Quadrature oracle.
// ---------------------------------------------------------------------------

/// Outage probability by adaptive quadrature, available for all three
/// schemes and independent of the closed forms.
///
/// # Safety
/// `config` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crn_outage_oracle(
    config: *const CrnConfig,
    scheme: CrnScheme,
    out: *mut f64,
) -> CrnStatus {
    let Some(cfg) = config.as_ref() else { return CrnStatus::NullPointer };
    if out.is_null() {
        return CrnStatus::NullPointer;
    }
    guarded(|| complete(oracle::outage_numeric(scheme_of(scheme), &cfg.0), out))
}

// ---------------------------------------------------------------------------
// Monte Carlo.
// ---------------------------------------------------------------------------

/// Monte Carlo outage estimate. Fixed `(trials, seed)` reproduce the same
/// bits on any machine and thread count.
///
/// # Safety
/// `config` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crn_mc_outage(
    config: *const CrnConfig,
    scheme: CrnScheme,
    trials: u64,
    seed: u64,
    out: *mut CrnEstimate,
) -> CrnStatus {
    let Some(cfg) = config.as_ref() else { return CrnStatus::NullPointer };
    if out.is_null() {
        return CrnStatus::NullPointer;
    }
    guarded(|| {
        complete(
            mc::estimate_outage(scheme_of(scheme), &cfg.0, trials, seed).map(estimate_of),
            out,
        )
    })
}

/// Monte Carlo estimate of the served user's mean achievable rate.
///
/// # Safety
/// `config` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crn_mc_ergodic_rate(
    config: *const CrnConfig,
    scheme: CrnScheme,
    trials: u64,
    seed: u64,
    out: *mut CrnEstimate,
) -> CrnStatus {
    let Some(cfg) = config.as_ref() else { return CrnStatus::NullPointer };
    if out.is_null() {
        return CrnStatus::NullPointer;
    }
    guarded(|| {
        complete(
            mc::estimate_ergodic_rate(scheme_of(scheme), &cfg.0, trials, seed).map(estimate_of),
            out,
        )
    })
}

/// Monte Carlo estimate of the served user's mean transmit-power scale β.
/// With `type2_only` set, only trials whose served user is type II enter the
/// average (`Degenerate` if none do).
///
/// # Safety
/// `config` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crn_mc_avg_beta(
    config: *const CrnConfig,
    scheme: CrnScheme,
    trials: u64,
    seed: u64,
    type2_only: bool,
    out: *mut CrnEstimate,
) -> CrnStatus {
    let Some(cfg) = config.as_ref() else { return CrnStatus::NullPointer };
    if out.is_null() {
        return CrnStatus::NullPointer;
    }
    let population = if type2_only { BetaPopulation::Type2Only } else { BetaPopulation::AllTrials };
    guarded(|| {
        complete(
            mc::estimate_avg_beta(scheme_of(scheme), &cfg.0, trials, seed, population)
                .map(estimate_of),
            out,
        )
    })
}

/// Monte Carlo estimate of the probability that the served user is type II.
///
/// # Safety
/// `config` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crn_mc_p_type2(
    config: *const CrnConfig,
    trials: u64,
    seed: u64,
    out: *mut CrnEstimate,
) -> CrnStatus {
    let Some(cfg) = config.as_ref() else { return CrnStatus::NullPointer };
    if out.is_null() {
        return CrnStatus::NullPointer;
    }
    guarded(|| complete(mc::estimate_p_type2(&cfg.0, trials, seed).map(estimate_of), out))
}

/// Joint Monte Carlo estimate of the better/worse conditional probabilities
/// (one pass over shared draws, so the two means add to 1 exactly).
///
/// # Safety
/// `config` must be a live handle; `out_better` and `out_worse` must be
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn crn_mc_better_worse(
    config: *const CrnConfig,
    trials: u64,
    seed: u64,
    out_better: *mut CrnEstimate,
    out_worse: *mut CrnEstimate,
) -> CrnStatus {
    let Some(cfg) = config.as_ref() else { return CrnStatus::NullPointer };
    if out_better.is_null() || out_worse.is_null() {
        return CrnStatus::NullPointer;
    }
    guarded(|| match mc::estimate_better_worse(&cfg.0, trials, seed) {
        Ok((b, w)) => {
            *out_better = estimate_of(b);
            *out_worse = estimate_of(w);
            CrnStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

// ---------------------------------------------------------------------------
// Introspection.
// ---------------------------------------------------------------------------

/// Static description of a status code. Never null; do not free.
#[no_mangle]
pub extern "C" fn crn_status_message(status: CrnStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        CrnStatus::Ok => b"ok\0",
        CrnStatus::NullPointer => b"a required pointer argument was null\0",
        CrnStatus::InvalidArgument => b"argument outside the accepted domain\0",
        CrnStatus::Unsupported => b"requested combination has no implementation\0",
        CrnStatus::Degenerate => b"conditioning event has zero mass\0",
        CrnStatus::Numerical => b"numerical routine missed its accuracy target\0",
        CrnStatus::Internal => b"internal failure\0",
    };
    msg.as_ptr() as *const c_char
}

/// Library version as a static C string; do not free.
#[no_mangle]
pub extern "C" fn crn_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;
    use std::ptr;

    fn make(m: u32, p0: f64, ps: f64, r0: f64, rs: f64) -> *mut CrnConfig {
        let mut cfg = ptr::null_mut();
        let status = unsafe { crn_config_new(m, p0, ps, r0, rs, &mut cfg) };
        assert_eq!(status, CrnStatus::Ok);
        assert!(!cfg.is_null());
        cfg
    }

    #[test]
    fn config_lifecycle_and_validation() {
        let cfg = make(2, 10.0, 10.0, 1.0, 1.0);
        let mut k = CrnConstants {
            epsilon0: 0.0,
            epsilon_s: 0.0,
            alpha0: 0.0,
            alpha_s: 0.0,
            alpha1: 0.0,
        };
        assert_eq!(unsafe { crn_constants(cfg, &mut k) }, CrnStatus::Ok);
        assert_eq!(k.epsilon0, 1.0);
        assert_eq!(k.alpha0, 0.1);
        assert_eq!(k.alpha1, 0.2);
        unsafe { crn_config_free(cfg) };

        let mut bad = ptr::null_mut();
        assert_eq!(
            unsafe { crn_config_new(0, 10.0, 10.0, 1.0, 1.0, &mut bad) },
            CrnStatus::InvalidArgument
        );
        assert_eq!(
            unsafe { crn_config_new(2, -1.0, 10.0, 1.0, 1.0, &mut bad) },
            CrnStatus::InvalidArgument
        );
        unsafe { crn_config_free(ptr::null_mut()) }; // tolerated
    }

    #[test]
    fn closed_forms_match_the_library() {
        let cfg = make(1, 10.0, 10.0, 1.0, 1.0);
        let mut v = 0.0;
        assert_eq!(
            unsafe { crn_outage_closed_form(cfg, CrnScheme::HsicPa, &mut v) },
            CrnStatus::Ok
        );
        let direct = {
            let c = SystemConfig::new(1, 10.0, 10.0, 1.0, 1.0).unwrap();
            analytic::outage_hsic_pa_exact(&c).unwrap().value
        };
        assert_eq!(v.to_bits(), direct.to_bits());
        unsafe { crn_config_free(cfg) };
    }

    #[test]
    fn oracle_and_closed_form_agree_through_the_abi() {
        let cfg = make(2, 100.0, 100.0, 1.0, 1.0);
        let (mut exact, mut numeric) = (0.0, 0.0);
        assert_eq!(
            unsafe { crn_outage_closed_form(cfg, CrnScheme::FsicPa, &mut exact) },
            CrnStatus::Ok
        );
        assert_eq!(
            unsafe { crn_outage_oracle(cfg, CrnScheme::FsicPa, &mut numeric) },
            CrnStatus::Ok
        );
        assert!((exact - numeric).abs() < 1e-8, "{exact} vs {numeric}");
        unsafe { crn_config_free(cfg) };
    }

    #[test]
    fn monte_carlo_is_deterministic_per_seed() {
        let cfg = make(4, 100.0, 100.0, 1.0, 1.0);
        let zero = CrnEstimate { mean: 0.0, std_err: 0.0, n: 0, seed: 0 };
        let (mut a, mut b, mut c) = (zero, zero, zero);
        for out in [&mut a, &mut b] {
            assert_eq!(
                unsafe { crn_mc_outage(cfg, CrnScheme::FsicPa, 50_000, 9, out) },
                CrnStatus::Ok
            );
        }
        assert_eq!(a, b);
        assert_eq!(
            unsafe { crn_mc_outage(cfg, CrnScheme::FsicPa, 50_000, 10, &mut c) },
            CrnStatus::Ok
        );
        assert_ne!(a.mean.to_bits(), c.mean.to_bits());
        assert_eq!(a.n, 50_000);
        unsafe { crn_config_free(cfg) };
    }

    #[test]
    fn unsupported_and_degenerate_report_cleanly() {
        let cfg = make(2, 10.0, 10.0, 1.0, 1.0);
        let mut v = -1.0;
        assert_eq!(
            unsafe { crn_outage_closed_form(cfg, CrnScheme::HsicNpa, &mut v) },
            CrnStatus::Unsupported
        );
        assert_eq!(v, -1.0, "out must be untouched on failure");
        let zero = CrnEstimate { mean: 0.0, std_err: 0.0, n: 0, seed: 0 };
        let (mut b, mut w) = (zero, zero);
        assert_eq!(
            unsafe { crn_mc_better_worse(cfg, 0, 1, &mut b, &mut w) },
            CrnStatus::InvalidArgument,
            "zero trials"
        );
        unsafe { crn_config_free(cfg) };
    }

    #[test]
    fn null_pointers_are_rejected() {
        let cfg = make(2, 10.0, 10.0, 1.0, 1.0);
        let mut v = 0.0;
        assert_eq!(
            unsafe { crn_outage_closed_form(ptr::null(), CrnScheme::HsicPa, &mut v) },
            CrnStatus::NullPointer
        );
        assert_eq!(
            unsafe { crn_outage_closed_form(cfg, CrnScheme::HsicPa, ptr::null_mut()) },
            CrnStatus::NullPointer
        );
        assert_eq!(
            unsafe { crn_config_new(2, 10.0, 10.0, 1.0, 1.0, ptr::null_mut()) },
            CrnStatus::NullPointer
        );
        unsafe { crn_config_free(cfg) };
    }

    #[test]
    fn status_messages_cover_all_codes() {
        for status in [
            CrnStatus::Ok,
            CrnStatus::NullPointer,
            CrnStatus::InvalidArgument,
            CrnStatus::Unsupported,
            CrnStatus::Degenerate,
            CrnStatus::Numerical,
            CrnStatus::Internal,
        ] {
            let ptr = crn_status_message(status);
            assert!(!ptr.is_null());
            let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap();
            assert!(!text.is_empty());
        }
        let version = unsafe { CStr::from_ptr(crn_version()) }.to_str().unwrap();
        assert_eq!(version, env!("CARGO_PKG_VERSION"));
    }

    #[test]
    fn tau_matches_the_library_and_validates_inputs() {
        let cfg = make(2, 10.0, 10.0, 1.0, 1.0);
        let mut t = 0.0;
        assert_eq!(unsafe { crn_tau(cfg, 0.5, &mut t) }, CrnStatus::Ok);
        assert_eq!(t, 4.0); // 10*0.5/1 - 1
        assert_eq!(unsafe { crn_tau(cfg, 0.05, &mut t) }, CrnStatus::Ok);
        assert_eq!(t, 0.0);
        assert_eq!(unsafe { crn_tau(cfg, f64::NAN, &mut t) }, CrnStatus::InvalidArgument);
        assert_eq!(unsafe { crn_tau(cfg, -1.0, &mut t) }, CrnStatus::InvalidArgument);
        unsafe { crn_config_free(cfg) };
    }
}
