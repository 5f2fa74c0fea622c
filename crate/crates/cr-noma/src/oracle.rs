//! Independent numerical cross-check for every closed-form probability.
//!
//! This module evaluates the same quantities as the closed-form module by a
//! completely separate route: conditioning on the primary gain `g`, writing
//! the conditional outage of the served secondary user directly from the
//! admission rules, and integrating against the `e^{−g}` law with adaptive
//! Gauss–Kronrod quadrature. It deliberately imports nothing from the
//! closed-form or special-function modules — only `std` exponentials and
//! powers appear below — so agreement between the two paths is evidence, not
//! tautology. A test at the bottom scans this file to keep it that way.
//!
//! Infinite tails are folded to finite ranges with the substitution
//! `t = e^{−g}`, which absorbs the exponential weight exactly:
//! `∫_a^∞ f(g)·e^{−g} dg = ∫_0^{e^{−a}} f(−ln t) dt`. All integrands are
//! piecewise smooth; the known breakpoints (`α0`, `α1`, and the
//! crossing point where the full-power threshold overtakes the first-stage
//! target, present only without power adaptation) seed the initial panels so
//! the adaptive refinement never has to hunt for a kink.

use std::collections::BinaryHeap;

use crate::channel::Scheme;
use crate::config::SystemConfig;
use crate::error::{Error, Result};

/// Absolute tolerance of every oracle integral.
pub const ORACLE_TOL: f64 = 1e-10;

/// Panel budget per integral before giving up.
const MAX_PANELS: usize = 10_000;

// 15-point Kronrod extension of the 7-point Gauss rule (positive nodes).
const XGK: [f64; 7] = [
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993944,
    0.5860872354676911,
    0.4058451513773972,
    0.2077849550078985,
];
const WGK: [f64; 8] = [
    0.0229353220105292,
    0.0630920926299786,
    0.1047900103222502,
    0.1406532597155259,
    0.1690047266392679,
    0.1903505780647854,
    0.2044329400752989,
    0.2094821410847278,
];
const WG: [f64; 4] = [
    0.1294849661688697,
    0.2797053914892767,
    0.3818300505051189,
    0.4179591836734694,
];

/// One quadrature panel with its Kronrod value and error estimate.
#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    val: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.to_bits() == other.err.to_bits() && self.a.to_bits() == other.a.to_bits()
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Max-heap: largest error first, leftmost panel on ties, so the
        // refinement order (and thus the result) is fully deterministic.
        self.err.total_cmp(&other.err).then(other.a.total_cmp(&self.a))
    }
}

/// Gauss–Kronrod 7/15 rule on `[a, b]`: returns the Kronrod value and the
/// |Kronrod − Gauss| error estimate. Endpoints are never evaluated.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let hw = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, &x) in XGK.iter().enumerate() {
        let dx = hw * x;
        let f1 = f(mid - dx);
        let f2 = f(mid + dx);
        kron += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    (kron * hw, ((kron - gauss) * hw).abs())
}

/// Globally adaptive bisection over a fixed set of seed breakpoints.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Integrator {
    tol: f64,
    budget: usize,
}

impl Integrator {
    pub(crate) fn new(tol: f64, budget: usize) -> Self {
        Integrator { tol, budget }
    }

    /// Integrates `f` over `[seeds[0], seeds[last]]` with initial panels at
    /// the given breakpoints, bisecting the worst panel until the summed
    /// error estimate meets the tolerance.
    pub(crate) fn integrate<F: Fn(f64) -> f64>(&self, f: F, seeds: &[f64]) -> Result<f64> {
        let mut heap = BinaryHeap::new();
        let mut total_err = 0.0;
        let mut panels = 0usize;
        for w in seeds.windows(2) {
            if w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater) {
                continue; // collapsed segment (e.g. an underflowed breakpoint)
            }
            let (val, err) = gk15(&f, w[0], w[1]);
            total_err += err;
            panels += 1;
            heap.push(Panel { a: w[0], b: w[1], val, err });
        }
        while total_err > self.tol {
            if panels >= self.budget {
                return Err(Error::NoConvergence {
                    requested: self.tol,
                    achieved: total_err,
                    panels,
                });
            }
            let worst = heap.pop().expect("non-empty heap while error is positive");
            let mid = 0.5 * (worst.a + worst.b);
            if !(worst.a < mid && mid < worst.b) {
                // Panel is at floating-point resolution; its error estimate
                // cannot shrink further.
                return Err(Error::NoConvergence {
                    requested: self.tol,
                    achieved: total_err,
                    panels,
                });
            }
            let (lv, le) = gk15(&f, worst.a, mid);
            let (rv, re) = gk15(&f, mid, worst.b);
            total_err += le + re - worst.err;
            panels += 1;
            heap.push(Panel { a: worst.a, b: mid, val: lv, err: le });
            heap.push(Panel { a: mid, b: worst.b, val: rv, err: re });
        }
        // Sum panels left-to-right so the result does not depend on the
        // history of heap operations.
        let mut ordered: Vec<Panel> = heap.into_vec();
        ordered.sort_by(|p, q| p.a.total_cmp(&q.a));
        Ok(ordered.iter().map(|p| p.val).sum())
    }
}

/// Prepares g-space seed points for direct integration against `e^{−g}`:
/// clamps to where the weight has any `f64` support at all, and subdivides
/// wide gaps so no panel can park all fifteen quadrature nodes beyond the
/// weight's decay (which would fool the error estimate into accepting 0).
fn g_space_seeds(points: &[f64]) -> Vec<f64> {
    const G_MAX: f64 = 760.0; // e^{−760} underflows to exactly 0
    const MAX_GAP: f64 = 50.0;
    let mut pts: Vec<f64> = points.iter().map(|&p| p.min(G_MAX)).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut out = vec![pts[0]];
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let n = ((b - a) / MAX_GAP).ceil().max(1.0) as usize;
        for k in 1..=n {
            out.push(a + (b - a) * k as f64 / n as f64);
        }
    }
    out
}

/// `P(max of M unit exponentials ≤ x)`.
fn cdf_max(x: f64, m: u32) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        (-f64::exp_m1(-x)).powi(m as i32)
    }
}

/// Primary-gain level beyond which the full-power first-stage threshold
/// `cap(g)` falls below the interference threshold `t1(g)`: past it, a
/// non-adaptive type-II user always meets its target. Exists only when
/// `ε0·εs < 1`; beyond that product the two curves never cross and the
/// scheme keeps an outage floor.
fn npa_crossing(config: &SystemConfig) -> Option<f64> {
    let c = config.constants();
    let denom = 1.0 - c.epsilon0 * c.epsilon_s;
    if denom > 0.0 {
        Some((1.0 + c.epsilon_s) * c.alpha0 / denom)
    } else {
        None
    }
}

/// Outage probability of the served secondary user conditioned on the
/// primary squared gain `g2`, straight from the admission rules.
///
/// For the two power-adapting schemes the served user is the strongest
/// secondary, and the conditional collapses to a max-CDF evaluated at a
/// `g2`-dependent threshold (with fixed SIC certain to fail anywhere inside
/// the window `g2 < α1`). Without power adaptation the served user need not
/// be the strongest — a weaker type-I user can beat the strongest user's
/// first-stage rate — so the event "everyone misses the target" is a product
/// over the *unordered* per-user outage set `[0, αs) ∪ (t1, cap)`.
pub fn conditional_outage_given_g(scheme: Scheme, g2: f64, config: &SystemConfig) -> f64 {
    let c = config.constants();
    let m = config.m();
    let cap = c.alpha_s * (config.p0() * g2 + 1.0);
    match scheme {
        Scheme::HsicPa => {
            if g2 < c.alpha1 {
                cdf_max(cap, m)
            } else {
                cdf_max(c.alpha_s, m)
            }
        }
        Scheme::FsicPa => {
            if g2 < c.alpha1 {
                1.0
            } else {
                cdf_max(c.alpha_s, m)
            }
        }
        Scheme::HsicNpa => {
            if g2 <= c.alpha0 {
                return cdf_max(cap, m);
            }
            let t1 = (g2 / c.alpha0 - 1.0) / config.ps();
            if t1 <= c.alpha_s {
                return cdf_max(cap, m);
            }
            let per_user = -f64::exp_m1(-c.alpha_s) + ((-t1).exp() - (-cap).exp()).max(0.0);
            per_user.powi(m as i32)
        }
    }
}

fn require_positive_rs(config: &SystemConfig) -> Result<()> {
    if config.rs() > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(
            "numerical outage evaluation requires a positive secondary target rate".into(),
        ))
    }
}

/// Direct-plus-transformed-tail integration of `f(g)·e^{−g}` over `[0, ∞)`,
/// where `f` is bounded and piecewise smooth with the given interior
/// breakpoints (ascending; the tail starts at the last one).
fn expectation_over_g<F: Fn(f64) -> f64 + Copy>(
    f: F,
    breaks: &[f64],
    tol: f64,
) -> Result<f64> {
    let quad = Integrator::new(0.5 * tol, MAX_PANELS);
    let mut direct_seeds = vec![0.0];
    direct_seeds.extend_from_slice(breaks);
    let direct = quad.integrate(|g| f(g) * (-g).exp(), &g_space_seeds(&direct_seeds))?;
    // Tail: t = e^{−g} maps [tail_start, ∞) to (0, e^{−tail_start}]. The
    // substitution samples g logarithmically, so no chunking is needed here.
    let tail_start = *breaks.last().expect("at least one breakpoint");
    let tail = quad.integrate(|t| f(-t.ln()), &[0.0, (-tail_start).exp()])?;
    Ok(direct + tail)
}

/// Outage probability of the served secondary user, by adaptive quadrature
/// of [`conditional_outage_given_g`] against the primary fading law, to
/// [`ORACLE_TOL`] absolute accuracy.
pub fn outage_numeric(scheme: Scheme, config: &SystemConfig) -> Result<f64> {
    require_positive_rs(config)?;
    let c = config.constants();
    let mut breaks = vec![c.alpha0, c.alpha1];
    if scheme == Scheme::HsicNpa {
        if let Some(g_star) = npa_crossing(config) {
            breaks.push(g_star);
        }
    }
    expectation_over_g(|g| conditional_outage_given_g(scheme, g, config), &breaks, ORACLE_TOL)
}

/// One labelled piece of an outage decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionTerm {
    pub name: &'static str,
    pub value: f64,
}

/// Region labels for the hybrid-SIC-with-PA outage decomposition, in output
/// order: see [`decomposition_terms`].
pub const HSIC_REGION_NAMES: [&str; 4] =
    ["no-headroom", "second-stage-window", "first-stage-window", "type-one-weak"];

/// Region labels for the fixed-SIC-with-PA outage decomposition, in output
/// order: see [`decomposition_terms`].
pub const FSIC_REGION_NAMES: [&str; 3] = ["no-headroom", "type-two-window", "type-one-weak"];

/// Splits the outage probability into the disjoint regions of the underlying
/// integral, each integrated separately:
///
/// * `no-headroom` — the primary leaves no interference budget (`g < α0`):
///   with power adaptation and hybrid ordering the strongest user must
///   survive first-stage decoding; with fixed ordering the served user is
///   silenced outright.
/// * `second-stage-window` / `first-stage-window` (hybrid only) — inside
///   `(α0, α1)` a type-II server fails in whichever stage the hybrid rule
///   picked.
/// * `type-two-window` (fixed only) — inside the window the pinned second
///   stage can never reach the target.
/// * `type-one-weak` — the strongest user fits under the headroom but below
///   the rate target (window floor plus the whole `g > α1` tail).
///
/// The terms sum to [`outage_numeric`]. Not defined for the non-adaptive
/// scheme, whose served user does not decompose along these lines.
pub fn decomposition_terms(scheme: Scheme, config: &SystemConfig) -> Result<Vec<RegionTerm>> {
    require_positive_rs(config)?;
    let c = config.constants();
    let m = config.m();
    let quad = Integrator::new(ORACLE_TOL, MAX_PANELS);
    let t1_of = |g: f64| (g / c.alpha0 - 1.0) / config.ps();
    let cap_of = |g: f64| c.alpha_s * (config.p0() * g + 1.0);
    let hbar_of = |g: f64| t1_of(g) * (config.p0() * g + 1.0);

    let window = g_space_seeds(&[c.alpha0, c.alpha1]);
    // Shared between both schemes: type-I outage mass (window floor + tail).
    let window_floor = quad.integrate(|g| cdf_max(t1_of(g), m) * (-g).exp(), &window)?;
    let tail = quad.integrate(|_| cdf_max(c.alpha_s, m), &[0.0, (-c.alpha1).exp()])?;
    let type_one = window_floor + tail;

    match scheme {
        Scheme::HsicPa => {
            let below = g_space_seeds(&[0.0, c.alpha0]);
            let no_headroom = quad.integrate(|g| cdf_max(cap_of(g), m) * (-g).exp(), &below)?;
            let second = quad.integrate(
                |g| (cdf_max(hbar_of(g), m) - cdf_max(t1_of(g), m)) * (-g).exp(),
                &window,
            )?;
            let first = quad.integrate(
                |g| (cdf_max(cap_of(g), m) - cdf_max(hbar_of(g), m)) * (-g).exp(),
                &window,
            )?;
            Ok(HSIC_REGION_NAMES
                .iter()
                .zip([no_headroom, second, first, type_one])
                .map(|(&name, value)| RegionTerm { name, value })
                .collect())
        }
        Scheme::FsicPa => {
            let below = g_space_seeds(&[0.0, c.alpha0]);
            let no_headroom = quad.integrate(|g| (-g).exp(), &below)?;
            let type_two =
                quad.integrate(|g| (1.0 - cdf_max(t1_of(g), m)) * (-g).exp(), &window)?;
            Ok(FSIC_REGION_NAMES
                .iter()
                .zip([no_headroom, type_two, type_one])
                .map(|(&name, value)| RegionTerm { name, value })
                .collect())
        }
        Scheme::HsicNpa => Err(Error::Unsupported(
            "outage decomposition is defined for the power-adapting schemes only".into(),
        )),
    }
}

/// Numerical evaluation of the power-adaptation selection probabilities:
/// returns `(stage-two-wins mass, type-II mass, conditional probability)`.
///
/// The numerator integrates `P(t1 < h_max < h̄²)` — the strongest user is
/// type II and the adapted second stage beats full power — and the
/// denominator `P(h_max > t1)`. Errors with [`Error::Degenerate`] when the
/// type-II mass falls below 1e-300.
pub fn p_better_numeric(config: &SystemConfig) -> Result<(f64, f64, f64)> {
    let c = config.constants();
    let m = config.m();
    let t1_of = |g: f64| (g / c.alpha0 - 1.0) / config.ps();
    let hbar_of = |g: f64| t1_of(g) * (config.p0() * g + 1.0);

    // Below α0 every user is type II but the second stage is silent, so the
    // numerator starts at α0 while the denominator picks up the full mass.
    let q_n = expectation_over_g(
        |g| {
            if g <= c.alpha0 {
                0.0
            } else {
                cdf_max(hbar_of(g), m) - cdf_max(t1_of(g), m)
            }
        },
        &[c.alpha0, c.alpha1],
        ORACLE_TOL,
    )?;
    let q_d = expectation_over_g(
        |g| if g <= c.alpha0 { 1.0 } else { 1.0 - cdf_max(t1_of(g), m) },
        &[c.alpha0, c.alpha1],
        ORACLE_TOL,
    )?;
    if q_d < 1e-300 {
        return Err(Error::Degenerate(format!(
            "type-II selection mass {q_d:e} is too small to condition on"
        )));
    }
    Ok((q_n, q_d, q_n / q_d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::Scheme;

    fn cfg(m: u32, p0: f64, ps: f64, r0: f64, rs: f64) -> SystemConfig {
        SystemConfig::new(m, p0, ps, r0, rs).unwrap()
    }

    fn assert_abs(actual: f64, reference: f64, tol: f64, what: &str) {
        assert!(
            (actual - reference).abs() <= tol,
            "{what}: got {actual:.15e}, reference {reference:.15e}, |diff| = {:.2e} > {tol:.0e}",
            (actual - reference).abs()
        );
    }

    // References below were computed with 50-digit arbitrary-precision
    // quadrature of the same defining integrals.

    #[test]
    fn oracle_source_has_no_closed_form_dependencies() {
        let src = include_str!("oracle.rs");
        // Needles are assembled at compile time so this test's own source
        // cannot satisfy them.
        for needle in [
            concat!("crate::", "analytic"),
            concat!("crate::", "special"),
            concat!("crate::", "dd"),
            concat!("super::", "analytic"),
            concat!("super::", "special"),
            concat!("use ", "analytic"),
            concat!("use ", "special"),
        ] {
            assert!(!src.contains(needle), "oracle must not reference `{needle}`");
        }
    }

    #[test]
    fn conditional_outage_matches_spot_references() {
        let c = cfg(2, 10.0, 5.0, 1.5, 0.8);
        let spots = [
            // (g2, hsic, fsic, npa)
            (0.1, 0.065812823672819559443, 1.0, 0.065812823672819559443),
            (0.3, 0.20004810859342924299, 1.0, 0.20004810859342924299),
            (0.45, 0.018977485135002352709, 0.018977485135002352709, 0.19519827362008493661),
            (0.7, 0.018977485135002352709, 0.018977485135002352709, 0.16017297100188030901),
            (1.2, 0.018977485135002352709, 0.018977485135002352709, 0.10294894608212062409),
            (5.0, 0.018977485135002352709, 0.018977485135002352709, 0.020273584878876740533),
        ];
        for (g, hsic, fsic, npa) in spots {
            assert_abs(conditional_outage_given_g(Scheme::HsicPa, g, &c), hsic, 1e-15, "hsic cond");
            assert_abs(conditional_outage_given_g(Scheme::FsicPa, g, &c), fsic, 1e-15, "fsic cond");
            assert_abs(conditional_outage_given_g(Scheme::HsicNpa, g, &c), npa, 1e-15, "npa cond");
        }
    }

    #[test]
    fn outage_numeric_matches_references() {
        let cases = [
            (cfg(1, 10.0, 10.0, 1.0, 1.0), 0.11002840015661905915, 0.25918177931828213393),
            (cfg(2, 10.0, 5.0, 1.5, 0.8), 0.041402555668148115231, 0.28645339220180671273),
            (cfg(4, 1000.0, 1000.0, 1.0, 1.0), 1.0440936700676777152e-12, 0.0019980013336629413998),
            (
                cfg(3, 31.622776601683793, 3.1622776601683795, 2.0, 0.5),
                0.0072356848956714807486,
                0.12717153454806318062,
            ),
            (cfg(8, 100.0, 100.0, 4.0, 2.0), 0.020724783582915469516, 0.45118836390629302135),
        ];
        for (c, hsic, fsic) in cases {
            assert_abs(outage_numeric(Scheme::HsicPa, &c).unwrap(), hsic, 1e-9, "hsic outage");
            assert_abs(outage_numeric(Scheme::FsicPa, &c).unwrap(), fsic, 1e-9, "fsic outage");
        }
    }

    #[test]
    fn npa_outage_matches_references() {
        let cases = [
            (cfg(2, 10.0, 5.0, 1.5, 0.8), 0.11455345745818368674),
            (cfg(4, 1000.0, 1000.0, 1.0, 1.0), 2.4066808132784208288e-11),
            (cfg(3, 31.622776601683793, 3.1622776601683795, 2.0, 0.5), 0.024455428516263718176),
            (cfg(8, 100.0, 100.0, 4.0, 2.0), 0.26732005310810881609),
        ];
        for (c, r) in cases {
            assert_abs(outage_numeric(Scheme::HsicNpa, &c).unwrap(), r, 1e-9, "npa outage");
        }
    }

    #[test]
    fn npa_floor_appears_when_thresholds_never_cross() {
        // R0 = 4, Rs = 1: ε0·εs = 15 > 1, so no crossing point exists and the
        // outage saturates instead of decaying.
        let at = |p: f64| outage_numeric(Scheme::HsicNpa, &cfg(4, p, p, 4.0, 1.0)).unwrap();
        assert_abs(at(1e5), 0.10259202757833854680, 1e-9, "npa floor 50 dB");
        assert_abs(at(1e6), 0.10258023580091354307, 1e-9, "npa floor 60 dB");
        // With ε0·εs < 1 the crossing exists and the outage keeps falling;
        // R0 = Rs = 1 sits exactly on the ε0·εs = 1 boundary and has none.
        assert!(npa_crossing(&cfg(4, 1e5, 1e5, 1.0, 0.5)).is_some());
        assert!(npa_crossing(&cfg(4, 1e5, 1e5, 1.0, 1.0)).is_none());
        assert!(npa_crossing(&cfg(4, 1e5, 1e5, 4.0, 1.0)).is_none());
    }

    #[test]
    fn decomposition_terms_sum_to_the_outage() {
        let c = cfg(2, 10.0, 5.0, 1.5, 0.8);
        let hsic = decomposition_terms(Scheme::HsicPa, &c).unwrap();
        let names: Vec<_> = hsic.iter().map(|t| t.name).collect();
        assert_eq!(names, HSIC_REGION_NAMES);
        let refs = [
            0.010337768478159667719,
            0.0065637622916332359750,
            0.010027934400614485239,
            0.014473090497740726298,
        ];
        for (t, r) in hsic.iter().zip(refs) {
            assert_abs(t.value, r, 1e-9, t.name);
        }
        let total: f64 = hsic.iter().map(|t| t.value).sum();
        assert_abs(total, outage_numeric(Scheme::HsicPa, &c).unwrap(), 1e-9, "hsic sum");

        let fsic = decomposition_terms(Scheme::FsicPa, &c).unwrap();
        let refs = [0.16710084991885902335, 0.10487945178520696309, 0.014473090497740726298];
        for (t, r) in fsic.iter().zip(refs) {
            assert_abs(t.value, r, 1e-9, t.name);
        }
        let total: f64 = fsic.iter().map(|t| t.value).sum();
        assert_abs(total, outage_numeric(Scheme::FsicPa, &c).unwrap(), 1e-9, "fsic sum");

        assert!(decomposition_terms(Scheme::HsicNpa, &c).is_err());
    }

    #[test]
    fn selection_probabilities_match_references() {
        let cases = [
            (cfg(4, 10.0, 10.0, 1.0, 1.0), 0.46046103502101028537, 0.81903251639280808537),
            (cfg(1, 10.0, 5.0, 1.5, 1.0), 0.27292428167864628979, 0.56488702908959826838),
            (cfg(4, 1000.0, 1000.0, 1.0, 1.0), 0.75730381183459100216, 0.80019990003332500167),
        ];
        for (c, qn, qd) in cases {
            let (got_n, got_d, ratio) = p_better_numeric(&c).unwrap();
            assert_abs(got_n, qn, 1e-9, "stage-two-wins mass");
            assert_abs(got_d, qd, 1e-9, "type-II mass");
            assert_abs(ratio, qn / qd, 1e-12, "ratio consistency");
        }
        // Near-degenerate numerator: the masses differ by nine orders.
        let c = cfg(2, 3.1622776601683795, 0.31622776601683794, 6.0, 1.0);
        let (qn, qd, _) = p_better_numeric(&c).unwrap();
        assert_abs(qn, 1.8619824085527811186e-9, 2e-10, "tiny numerator");
        assert_abs(qd, 0.99999999992647031704, 1e-9, "near-unit denominator");
    }

    #[test]
    fn zero_secondary_rate_is_rejected() {
        let c = cfg(2, 10.0, 10.0, 1.0, 0.0);
        assert!(outage_numeric(Scheme::HsicPa, &c).is_err());
        assert!(decomposition_terms(Scheme::FsicPa, &c).is_err());
    }

    #[test]
    fn integrator_reports_budget_exhaustion() {
        // A rapidly oscillating integrand cannot be resolved with four panels.
        let tiny = Integrator::new(1e-14, 4);
        let err = tiny.integrate(|x: f64| (1000.0 * x).sin(), &[0.0, 1.0]).unwrap_err();
        match err {
            Error::NoConvergence { requested, achieved, panels } => {
                assert_eq!(requested, 1e-14);
                assert!(achieved > 1e-14);
                assert!(panels <= 4);
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn integrator_handles_known_integrals() {
        let quad = Integrator::new(1e-12, MAX_PANELS);
        // ∫_0^1 x² dx = 1/3 (polynomial: exact for the rule).
        let v = quad.integrate(|x| x * x, &[0.0, 1.0]).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-14);
        // ∫_0^π sin = 2 across an interior breakpoint.
        let v = quad.integrate(f64::sin, &[0.0, 1.0, std::f64::consts::PI]).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        // Collapsed segments are skipped.
        let v = quad.integrate(|_| 1.0, &[0.0, 0.0, 2.0]).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }
}
