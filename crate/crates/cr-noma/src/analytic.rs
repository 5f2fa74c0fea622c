//! Closed-form outage and selection probabilities.
//!
//! Every quantity here is an exact integral of the admission rules in
//! [`crate::channel`] against the Rayleigh fading law, reduced to finite
//! combinations of exponentials, the template integrals of
//! [`crate::special`], and alternating binomial sums coming from the CDF of
//! the strongest of `M` i.i.d. exponential gains,
//! `F(x) = (1 − e^{−x})^M = Σ_i C(M,i)(−1)^i e^{−ix}`.
//!
//! # Numerical strategy
//!
//! The alternating sums cancel catastrophically at high SNR: for `M = 4` at
//! 60 dB the outage probability is ~1e-24 while individual terms are ~1e-5,
//! so even perfectly compensated `f64` summation returns pure round-off (the
//! terms themselves carry ~1e-21 of absolute error). Those sums are therefore
//! evaluated in double-double arithmetic (the private `dd` module), keeping the
//! result to ~13 significant digits in the worst supported corner; the
//! surrounding one-shot expressions stay in `f64` with Neumaier compensation.
//!
//! Binomial series are refused above [`SERIES_CAP_M`] users — the terms grow
//! like `C(M, M/2)` and eventually outrun even double-double — and callers
//! are pointed at the quadrature oracle, which has no such limit.

use crate::config::SystemConfig;
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::special::{u_weighted, v_weighted};

/// Largest user count accepted by the closed-form binomial series.
pub const SERIES_CAP_M: u32 = 30;

/// Conditioning events below this mass are reported as degenerate rather
/// than divided by.
pub const DEGENERATE_MASS: f64 = 1e-300;

/// Whether a result is an exact expression or a high-SNR approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Exact for all parameters (up to floating-point evaluation error).
    Exact,
    /// Asymptotic in SNR; no accuracy promise at low power.
    Approx,
}

/// Identifies which expression produced an [`AnalyticResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Formula {
    /// Exact outage of hybrid SIC with power adaptation.
    HsicPaOutageExact,
    /// High-SNR outage of hybrid SIC with PA, leading term plus correction.
    HsicPaOutageHighSnrRefined,
    /// High-SNR outage of hybrid SIC with PA, leading term only.
    HsicPaOutageHighSnrLeading,
    /// Exact outage of fixed SIC with power adaptation.
    FsicPaOutageExact,
    /// High-SNR outage of fixed SIC with power adaptation.
    FsicPaOutageHighSnr,
    /// Probability that the served secondary user is type II.
    ServedTypeTwoProbability,
    /// Conditional probability that power adaptation beats full power.
    BetterGivenTypeTwo,
    /// Conditional probability that power adaptation loses to full power.
    WorseGivenTypeTwo,
}

impl Formula {
    /// Stable identifier used in CLI output.
    pub fn label(&self) -> &'static str {
        match self {
            Formula::HsicPaOutageExact => "hsic-pa-outage-exact",
            Formula::HsicPaOutageHighSnrRefined => "hsic-pa-outage-high-snr-refined",
            Formula::HsicPaOutageHighSnrLeading => "hsic-pa-outage-high-snr-leading",
            Formula::FsicPaOutageExact => "fsic-pa-outage-exact",
            Formula::FsicPaOutageHighSnr => "fsic-pa-outage-high-snr",
            Formula::ServedTypeTwoProbability => "served-type-two-probability",
            Formula::BetterGivenTypeTwo => "better-given-type-two",
            Formula::WorseGivenTypeTwo => "worse-given-type-two",
        }
    }
}

impl std::fmt::Display for Formula {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// A closed-form evaluation with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticResult {
    /// The probability (exact results are clamped to `[0,1]`; approximations
    /// are reported as-is and may exceed 1 at low SNR).
    pub value: f64,
    pub kind: Kind,
    pub source: Formula,
}

// ---------------------------------------------------------------------------
// Small numerical helpers.
// ---------------------------------------------------------------------------

/// Neumaier-compensated running sum for the `f64` series.
#[derive(Debug, Default, Clone, Copy)]
struct Neumaier {
    s: f64,
    c: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    fn total(&self) -> f64 {
        self.s + self.c
    }
}

/// Exact binomial coefficient as `f64` (exact for every `n ≤ SERIES_CAP_M`).
fn binom(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    let mut c = 1u128;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c as f64
}

fn require_series(m: u32) -> Result<()> {
    if m > SERIES_CAP_M {
        Err(Error::SeriesCap { m, cap: SERIES_CAP_M })
    } else {
        Ok(())
    }
}

fn require_positive_rs(config: &SystemConfig) -> Result<()> {
    if config.rs() > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(
            "exact outage expressions require a positive secondary target rate".into(),
        ))
    }
}

/// Clamps an exact probability to `[0,1]`, tolerating round-off excursions up
/// to 1e-9 and rejecting anything further out.
fn clamp_unit(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::OutOfRange(x));
    }
    if x < 0.0 {
        if x > -1e-9 {
            return Ok(0.0);
        }
        return Err(Error::OutOfRange(x));
    }
    if x > 1.0 {
        if x < 1.0 + 1e-9 {
            return Ok(1.0);
        }
        return Err(Error::OutOfRange(x));
    }
    Ok(x)
}

fn finite_approx(x: f64, source: Formula) -> Result<AnalyticResult> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("approximation {source} is not finite here")));
    }
    Ok(AnalyticResult { value: x, kind: Kind::Approx, source })
}

// ---------------------------------------------------------------------------
// Exact outage probabilities.
// ---------------------------------------------------------------------------

/// Exact outage probability of the served secondary user under hybrid SIC
/// with power adaptation.
///
/// Integrating the admission rules over the primary gain splits the event by
/// the interference headroom `tau(g)`: below `alpha0` the headroom is zero
/// and outage means the strongest gain sits under the first-stage threshold;
/// inside the window `(alpha0, alpha1)` both decoding options can fail; above
/// `alpha1` the adapted second stage always reaches the target and only
/// type-I outage remains. The pieces assemble into
///
/// ```text
/// Σ_{i=0}^{M} C(M,i)(−1)^i e^{−i·αs} (1 − e^{−(i·αs·P0 + 1)·α1}) / (i·αs·P0 + 1)
/// + (1 − e^{−αs})^M e^{−α1}
/// ```
///
/// evaluated in double-double arithmetic (see the module docs for why).
pub fn outage_hsic_pa_exact(config: &SystemConfig) -> Result<AnalyticResult> {
    require_series(config.m())?;
    require_positive_rs(config)?;
    let c = config.constants();
    let m = config.m();

    let alpha1 = Dd::from_f64(c.alpha1);
    let alpha_s = Dd::from_f64(c.alpha_s);
    let as_p0 = alpha_s.mul_f64(config.p0());

    let mut sum = Dd::ZERO;
    for i in 0..=m {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let k = as_p0.mul_f64(i as f64).add_f64(1.0);
        let decay = alpha_s.mul_f64(-(i as f64)).exp();
        let window = k.mul(alpha1).neg().exp_m1().neg();
        let term = decay.mul(window).div(k).mul_f64(sign * binom(m, i));
        sum = sum.add(term);
    }
    let floor = alpha_s.neg().exp_m1().neg().powi(m).mul(alpha1.neg().exp());
    let value = clamp_unit(sum.add(floor).to_f64())?;
    Ok(AnalyticResult { value, kind: Kind::Exact, source: Formula::HsicPaOutageExact })
}

/// Exact outage probability of the served secondary user under fixed SIC
/// with power adaptation.
///
/// With the decoding order pinned to the second stage the window `(alpha0,
/// alpha1)` is pure outage for a type-II server, which collapses the
/// expression to `1 − e^{−α1} + (1 − e^{−αs})^M e^{−α1}` — no alternating
/// series, so plain `f64` with `expm1` is already accurate.
pub fn outage_fsic_pa_exact(config: &SystemConfig) -> Result<AnalyticResult> {
    require_series(config.m())?;
    require_positive_rs(config)?;
    let c = config.constants();
    let head = -f64::exp_m1(-c.alpha1);
    let tail = (-f64::exp_m1(-c.alpha_s)).powi(config.m() as i32) * (-c.alpha1).exp();
    let value = clamp_unit(head + tail)?;
    Ok(AnalyticResult { value, kind: Kind::Exact, source: Formula::FsicPaOutageExact })
}

// ---------------------------------------------------------------------------
// High-SNR approximations.
// ---------------------------------------------------------------------------

/// High-SNR outage of hybrid SIC with PA: the `(εs/Ps)^M` diversity term plus
/// the first-order correction in `1/P0`.
pub fn outage_hsic_pa_approx1(config: &SystemConfig) -> Result<AnalyticResult> {
    require_series(config.m())?;
    let c = config.constants();
    let m = config.m();
    let b1 = c.epsilon0 * (1.0 + c.epsilon_s);
    let lead = (c.epsilon_s / config.ps()).powi(m as i32);

    let mut first = Neumaier::default();
    for i in 1..=m {
        first.add(binom(m, i) * b1.powi(i as i32 + 1) / (i + 1) as f64);
    }
    let mut second = Neumaier::default();
    for i in 0..=m {
        second.add(binom(m, i) * b1.powi(i as i32 + 2) / (i + 2) as f64);
    }
    let value = lead / config.p0() * first.total()
        - lead / (config.p0() * config.p0()) * second.total()
        + lead;
    finite_approx(value, Formula::HsicPaOutageHighSnrRefined)
}

/// High-SNR outage of hybrid SIC with PA, leading term only: `(εs/Ps)^M`.
///
/// This is the diversity-order-`M` slope line; it ignores every `1/P0`
/// correction and is the crudest (but most legible) of the approximations.
pub fn outage_hsic_pa_approx2(config: &SystemConfig) -> Result<AnalyticResult> {
    require_series(config.m())?;
    let c = config.constants();
    let value = (c.epsilon_s / config.ps()).powi(config.m() as i32);
    finite_approx(value, Formula::HsicPaOutageHighSnrLeading)
}

/// High-SNR outage of fixed SIC with PA:
/// `α1 + (εs/Ps)^M·(1 − α1)`, exposing the diversity-one floor `α1`.
pub fn outage_fsic_pa_approx(config: &SystemConfig) -> Result<AnalyticResult> {
    require_series(config.m())?;
    let c = config.constants();
    let lead = (c.epsilon_s / config.ps()).powi(config.m() as i32);
    let value = c.alpha1 + lead - lead * c.alpha1;
    finite_approx(value, Formula::FsicPaOutageHighSnr)
}

// ---------------------------------------------------------------------------
// Selection probabilities.
// ---------------------------------------------------------------------------

/// Probability that the served secondary user is type II (its full-power
/// interference would exceed the primary's headroom).
///
/// `1 − e^{−α0}·Σ_{i=0}^{M} C(M,i)(−1)^i / (1 + i/(Ps·α0))` — the integral
/// of `F(t1(g))` telescopes into a pure rational sum, evaluated in
/// double-double because it cancels to `O(α0)` at high SNR.
pub fn p_type2(config: &SystemConfig) -> Result<AnalyticResult> {
    let value = clamp_unit(type2_mass_dd(config)?.to_f64())?;
    Ok(AnalyticResult { value, kind: Kind::Exact, source: Formula::ServedTypeTwoProbability })
}

fn type2_mass_dd(config: &SystemConfig) -> Result<Dd> {
    require_series(config.m())?;
    let c = config.constants();
    let m = config.m();
    let ps_alpha0 = Dd::from_f64(config.ps()).mul_f64(c.alpha0);
    let mut sum = Dd::ZERO;
    for i in 0..=m {
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let denom = Dd::from_f64(i as f64).div(ps_alpha0).add_f64(1.0);
        sum = sum.add(Dd::from_f64(sign * binom(m, i)).div(denom));
    }
    Ok(Dd::ONE.sub(Dd::from_f64(c.alpha0).neg().exp().mul(sum)))
}

/// Conditional probability that, for a type-II served user, the adapted
/// second-stage rate beats (or ties) the full-power first-stage rate — i.e.
/// that power adaptation is the right call for hybrid SIC.
///
/// Ratio of two masses over the primary gain: the numerator integrates
/// `F(h̄²) − F(t1)` (strongest gain inside the second-stage-wins band), the
/// denominator is [`p_type2`]. Reported degenerate when the type-II mass is
/// below [`DEGENERATE_MASS`] or fails to evaluate to a finite number (at
/// extreme powers the series terms themselves overflow).
pub fn p_better(config: &SystemConfig) -> Result<AnalyticResult> {
    let q_d = type2_mass_dd(config)?.to_f64();
    if q_d.is_nan() || q_d < DEGENERATE_MASS {
        return Err(Error::Degenerate(format!(
            "type-II selection mass {q_d:e} is too small to condition on"
        )));
    }
    let q_n = stage2_wins_mass(config, f64::INFINITY)?;
    let value = clamp_unit(q_n / q_d)?;
    Ok(AnalyticResult { value, kind: Kind::Exact, source: Formula::BetterGivenTypeTwo })
}

/// The probability that the *fixed*-SIC power adaptation outperforms full
/// power, conditioned on a type-II served user.
///
/// The second-stage rate is the same expression under both adaptive schemes,
/// so this is identical to [`p_better`]; it exists as a named entry point
/// because the two quantities answer different design questions.
pub fn p_better_fsic(config: &SystemConfig) -> Result<AnalyticResult> {
    p_better(config)
}

/// Conditional probability that fixed-SIC power adaptation does *worse* than
/// full power would have: the complement of [`p_better_fsic`].
pub fn p_worse_fsic(config: &SystemConfig) -> Result<AnalyticResult> {
    let better = p_better_fsic(config)?;
    Ok(AnalyticResult {
        value: 1.0 - better.value,
        kind: Kind::Exact,
        source: Formula::WorseGivenTypeTwo,
    })
}

/// `∫_{α0}^{g_hi} (F(h̄²(g)) − F(t1(g)))·e^{−g} dg`: the mass where the served
/// user is type II and the second stage wins. `g_hi = ∞` gives the numerator
/// of [`p_better`]; `g_hi = α1` gives the second-stage slice of the outage
/// window.
fn stage2_wins_mass(config: &SystemConfig, g_hi: f64) -> Result<f64> {
    require_series(config.m())?;
    let c = config.constants();
    let m = config.m();
    let ps = config.ps();
    let mut acc = Neumaier::default();
    for i in 1..=m {
        let fi = i as f64;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let w = fi / ps;
        let big_a = fi * config.p0() / (ps * c.alpha0);
        let big_b = w * (1.0 / c.alpha0 - config.p0()) + 1.0;
        let vband = v_weighted(w, g_hi, c.alpha0, big_a, big_b)?;
        let uband = u_weighted(w, c.alpha0, g_hi, fi / (ps * c.alpha0))?;
        acc.add(sign * binom(m, i) * (vband - uband));
    }
    Ok(acc.total())
}

// ---------------------------------------------------------------------------
// Outage decompositions (closed forms mirroring the oracle's regions).
// ---------------------------------------------------------------------------

/// Closed-form masses of the four disjoint outage regions for hybrid SIC
/// with PA, ordered as in
/// [`crate::oracle::HSIC_REGION_NAMES`]:
///
/// 1. zero interference headroom (`g < α0`);
/// 2. window, served type II, second stage chosen and failing;
/// 3. window, served type II, first stage chosen and failing;
/// 4. served type I below target (window floor plus the `g > α1` tail).
///
/// The four sum to [`outage_hsic_pa_exact`].
pub fn outage_regions_hsic_pa(config: &SystemConfig) -> Result<[f64; 4]> {
    require_series(config.m())?;
    require_positive_rs(config)?;
    let c = config.constants();
    let m = config.m();
    let ps = config.ps();

    let mut zero_headroom = Neumaier::default();
    let mut first_stage = Neumaier::default();
    let mut type_one = Neumaier::default();
    for i in 0..=m {
        let fi = i as f64;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = sign * binom(m, i);
        // F(cap)-type pieces: e^{−i·cap(g)} = e^{−i·αs}·e^{−i·αs·P0·g}.
        zero_headroom.add(coeff * u_weighted(-fi * c.alpha_s, 0.0, c.alpha0, fi * c.alpha_s * config.p0())?);
        let cap_window = u_weighted(-fi * c.alpha_s, c.alpha0, c.alpha1, fi * c.alpha_s * config.p0())?;
        // F(h̄²)-type piece: quadratic exponent in g.
        let w = fi / ps;
        let big_a = fi * config.p0() / (ps * c.alpha0);
        let big_b = w * (1.0 / c.alpha0 - config.p0()) + 1.0;
        let hbar_window = v_weighted(w, c.alpha1, c.alpha0, big_a, big_b)?;
        first_stage.add(coeff * (cap_window - hbar_window));
        // F(t1)-type piece: linear exponent in g.
        type_one.add(coeff * u_weighted(w, c.alpha0, c.alpha1, fi / (ps * c.alpha0))?);
    }
    let tail = (-f64::exp_m1(-c.alpha_s)).powi(m as i32) * (-c.alpha1).exp();
    let second_stage = stage2_wins_mass(config, c.alpha1)?;
    Ok([zero_headroom.total(), second_stage, first_stage.total(), type_one.total() + tail])
}

/// Closed-form masses of the three disjoint outage regions for fixed SIC
/// with PA, ordered as in [`crate::oracle::FSIC_REGION_NAMES`]:
///
/// 1. zero interference headroom (`g < α0`, the served user is silenced);
/// 2. window, served type II (the pinned second stage cannot reach target);
/// 3. served type I below target.
///
/// The three sum to [`outage_fsic_pa_exact`].
pub fn outage_regions_fsic_pa(config: &SystemConfig) -> Result<[f64; 3]> {
    require_series(config.m())?;
    require_positive_rs(config)?;
    let c = config.constants();
    let m = config.m();
    let ps = config.ps();

    let zero_headroom = -f64::exp_m1(-c.alpha0);
    let mut type_one = Neumaier::default();
    let mut type_two = Neumaier::default();
    for i in 0..=m {
        let fi = i as f64;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = sign * binom(m, i);
        let below_t1 = u_weighted(fi / ps, c.alpha0, c.alpha1, fi / (ps * c.alpha0))?;
        type_one.add(coeff * below_t1);
        // 1 − F(t1) over the window: the i = 0 term of the series is the
        // full window mass, so the complement flips the sign of i ≥ 1.
        if i >= 1 {
            type_two.add(-coeff * below_t1);
        }
    }
    let tail = (-f64::exp_m1(-c.alpha_s)).powi(m as i32) * (-c.alpha1).exp();
    Ok([zero_headroom, type_two.total(), type_one.total() + tail])
}
