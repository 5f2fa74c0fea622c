//! Error-function family and the two template integrals behind every closed
//! form in the crate.
//!
//! The outage expressions reduce to linear combinations of
//!
//! * `u_fn(a, b, c) = ∫_a^b e^{−(c+1)x} dx` and
//! * `v_fn(b, a, A, B) = ∫_a^b e^{−(A·x² + B·x)} dx`,
//!
//! evaluated with weights `e^w` whose naive product over- or underflows long
//! before the weighted result does. The `*_weighted` variants therefore fold
//! `w` into the exponent and are what the analytic module actually calls.
//!
//! The Gaussian integral is expressed through the *scaled* complementary
//! error function `erfcx(x) = e^{x²}·erfc(x)`, which stays in range for all
//! non-negative arguments; `erf`/`erfc` are the classical Sun/FreeBSD rational
//! approximations (accurate to < 1 ulp over the whole line), and `erfcx`
//! reuses their tail rational directly — in the tail regime
//! `erfc(x) = e^{−x²}·e^{−0.5625 + R/S}/x`, so dropping the `e^{−x²}` factor
//! *is* the scaled function, with no extra rounding.

use crate::error::{Error, Result};

/// `1/√π`.
const INV_SQRT_PI: f64 = 5.641895835477562869e-1;
/// `√π`.
const SQRT_PI: f64 = 1.7724538509055160273;

// ---------------------------------------------------------------------------
// erf/erfc/erfcx rational-approximation constants (Sun Microsystems lineage).
// ---------------------------------------------------------------------------

const ERX: f64 = 8.45062911510467529297e-01;
const EFX: f64 = 1.28379167095512586316e-01;

// |x| < 0.84375: erf(x) = x + x·P(x²)/Q(x²)
const PP0: f64 = 1.28379167095512558561e-01;
const PP1: f64 = -3.25042107247001499370e-01;
const PP2: f64 = -2.84817495755985104766e-02;
const PP3: f64 = -5.77027029648944159157e-03;
const PP4: f64 = -2.37630166566501626084e-05;
const QQ1: f64 = 3.97917223959155352819e-01;
const QQ2: f64 = 6.50222499887672944485e-02;
const QQ3: f64 = 5.08130628187576562776e-03;
const QQ4: f64 = 1.32494738004321644526e-04;
const QQ5: f64 = -3.96022827877536812320e-06;

// 0.84375 ≤ |x| < 1.25: erf(x) = erx + P(|x|−1)/Q(|x|−1)
const PA0: f64 = -2.36211856075265944077e-03;
const PA1: f64 = 4.14856118683748331666e-01;
const PA2: f64 = -3.72207876035701323847e-01;
const PA3: f64 = 3.18346619901161753674e-01;
const PA4: f64 = -1.10894694282396677476e-01;
const PA5: f64 = 3.54783043256182359371e-02;
const PA6: f64 = -2.16637559486879084300e-03;
const QA1: f64 = 1.06420880400844228286e-01;
const QA2: f64 = 5.40397917702171048937e-01;
const QA3: f64 = 7.18286544141962662868e-02;
const QA4: f64 = 1.26171219808761642112e-01;
const QA5: f64 = 1.36370839120290507362e-02;
const QA6: f64 = 1.19844998467991074170e-02;

// 1.25 ≤ |x| < 1/0.35: erfc(x) = e^{−x²−0.5625+R(1/x²)/S(1/x²)}/x
const RA0: f64 = -9.86494403484714822705e-03;
const RA1: f64 = -6.93858572707181875394e-01;
const RA2: f64 = -1.05586262253232909814e+01;
const RA3: f64 = -6.23753324503260060396e+01;
const RA4: f64 = -1.62396669462573470355e+02;
const RA5: f64 = -1.84605092906711035994e+02;
const RA6: f64 = -8.12874355063065934246e+01;
const RA7: f64 = -9.81432934416914548592e+00;
const SA1: f64 = 1.96512716674392571292e+01;
const SA2: f64 = 1.37657754143519042600e+02;
const SA3: f64 = 4.34565877475229228821e+02;
const SA4: f64 = 6.45387271733267880336e+02;
const SA5: f64 = 4.29008140027567833386e+02;
const SA6: f64 = 1.08635005541779435134e+02;
const SA7: f64 = 6.57024977031928170135e+00;
const SA8: f64 = -6.04244152148580987438e-02;

// 1/0.35 ≤ |x| < 28: same shape, different fit.
const RB0: f64 = -9.86494292470009928597e-03;
const RB1: f64 = -7.99283237680523006574e-01;
const RB2: f64 = -1.77579549177547519889e+01;
const RB3: f64 = -1.60636384855821916062e+02;
const RB4: f64 = -6.37566443368389627722e+02;
const RB5: f64 = -1.02509513161107724954e+03;
const RB6: f64 = -4.83519191608651397019e+02;
const SB1: f64 = 3.03380607434824582924e+01;
const SB2: f64 = 3.25792512996573918826e+02;
const SB3: f64 = 1.53672958608443695994e+03;
const SB4: f64 = 3.19985821950859553908e+03;
const SB5: f64 = 2.55305040643316442583e+03;
const SB6: f64 = 4.74528541206955367215e+02;
const SB7: f64 = -2.24409524465858183362e+01;

/// Tail rational `R(1/x²)/S(1/x²)` shared by `erfc` and `erfcx` for `|x| ≥ 1.25`.
fn tail_rational(x_abs: f64) -> f64 {
    let s = 1.0 / (x_abs * x_abs);
    if x_abs < 1.0 / 0.35 {
        let r = RA0 + s * (RA1 + s * (RA2 + s * (RA3 + s * (RA4 + s * (RA5 + s * (RA6 + s * RA7))))));
        let q = 1.0 + s * (SA1 + s * (SA2 + s * (SA3 + s * (SA4 + s * (SA5 + s * (SA6 + s * (SA7 + s * SA8)))))));
        r / q
    } else {
        let r = RB0 + s * (RB1 + s * (RB2 + s * (RB3 + s * (RB4 + s * (RB5 + s * RB6)))));
        let q = 1.0 + s * (SB1 + s * (SB2 + s * (SB3 + s * (SB4 + s * (SB5 + s * (SB6 + s * SB7))))));
        r / q
    }
}

/// `erfc(|x|)` for `1.25 ≤ |x| < 28`, with the argument split in two so the
/// dominant `e^{−x²}` factor is computed without squaring error.
fn erfc_tail(x_abs: f64) -> f64 {
    let z = f64::from_bits(x_abs.to_bits() & 0xFFFF_FFFF_0000_0000);
    let r = (-z * z - 0.5625).exp() * ((z - x_abs) * (z + x_abs) + tail_rational(x_abs)).exp();
    r / x_abs
}

/// Gauss error function `erf(x) = (2/√π)·∫_0^x e^{−t²} dt`.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let ax = x.abs();
    if ax < 0.84375 {
        if ax < 3.725290298461914e-9 {
            // 2^-28: the quadratic term is below round-off.
            return x + EFX * x;
        }
        let z = x * x;
        let r = PP0 + z * (PP1 + z * (PP2 + z * (PP3 + z * PP4)));
        let s = 1.0 + z * (QQ1 + z * (QQ2 + z * (QQ3 + z * (QQ4 + z * QQ5))));
        return x + x * (r / s);
    }
    if ax < 1.25 {
        let s = ax - 1.0;
        let p = PA0 + s * (PA1 + s * (PA2 + s * (PA3 + s * (PA4 + s * (PA5 + s * PA6)))));
        let q = 1.0 + s * (QA1 + s * (QA2 + s * (QA3 + s * (QA4 + s * (QA5 + s * QA6)))));
        return if x >= 0.0 { ERX + p / q } else { -ERX - p / q };
    }
    if ax >= 6.0 {
        // 1 − erf(6) < 3e-17: saturates in f64.
        return if x > 0.0 { 1.0 } else { -1.0 };
    }
    let c = erfc_tail(ax);
    if x >= 0.0 {
        1.0 - c
    } else {
        c - 1.0
    }
}

/// Complementary error function `erfc(x) = 1 − erf(x)`, accurate into the
/// deep tail where `1 − erf(x)` would round to zero.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    if x.is_infinite() {
        return if x > 0.0 { 0.0 } else { 2.0 };
    }
    let ax = x.abs();
    if ax < 0.84375 {
        if ax < 1.3877787807814457e-17 {
            // 2^-56.
            return 1.0 - x;
        }
        let z = x * x;
        let r = PP0 + z * (PP1 + z * (PP2 + z * (PP3 + z * PP4)));
        let s = 1.0 + z * (QQ1 + z * (QQ2 + z * (QQ3 + z * (QQ4 + z * QQ5))));
        let y = r / s;
        if ax < 0.25 {
            return 1.0 - (x + x * y);
        }
        let r = x * y + (x - 0.5);
        return 0.5 - r;
    }
    if ax < 1.25 {
        let s = ax - 1.0;
        let p = PA0 + s * (PA1 + s * (PA2 + s * (PA3 + s * (PA4 + s * (PA5 + s * PA6)))));
        let q = 1.0 + s * (QA1 + s * (QA2 + s * (QA3 + s * (QA4 + s * (QA5 + s * QA6)))));
        return if x >= 0.0 { 1.0 - ERX - p / q } else { 1.0 + (ERX + p / q) };
    }
    if ax < 28.0 {
        if x < -6.0 {
            return 2.0;
        }
        let c = erfc_tail(ax);
        return if x >= 0.0 { c } else { 2.0 - c };
    }
    if x > 0.0 {
        0.0
    } else {
        2.0
    }
}

/// Scaled complementary error function `erfcx(x) = e^{x²}·erfc(x)`.
///
/// Decays like `1/(x√π)` for large positive `x` instead of underflowing, which
/// is what makes the Gaussian template integral computable at any offset. For
/// negative arguments it grows as `2e^{x²}` and overflows to `+∞` past
/// `x ≈ −26.6`.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    if x < 0.0 {
        // No cancellation: erfcx(−x) ≤ 1 while 2e^{x²} ≥ 2.
        return 2.0 * (x * x).exp() - erfcx(-x);
    }
    if x < 1.25 {
        return (x * x).exp() * erfc(x);
    }
    if x < 28.0 {
        // erfc = e^{−x²}·e^{−0.5625 + R/S}/x in this regime; scaling by e^{x²}
        // simply removes the first factor.
        return (-0.5625 + tail_rational(x)).exp() / x;
    }
    if x.is_infinite() {
        return 0.0;
    }
    // Asymptotic series erfcx(x) ~ 1/(x√π)·Σ (−1)^k (2k−1)!!/(2x²)^k; eight
    // terms bring the truncation error below 1e-17 for x ≥ 28.
    let z = 0.5 / (x * x);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=8u32 {
        term *= -((2 * k - 1) as f64) * z;
        sum += term;
    }
    INV_SQRT_PI / x * sum
}

// ---------------------------------------------------------------------------
// Template integrals.
// ---------------------------------------------------------------------------

/// Below `A < V_LINEAR_FALLBACK·max(1, B²)` the quadratic term of the
/// Gaussian template integral is numerically invisible next to the linear
/// one, and the evaluation falls back to the exponential template.
pub const V_LINEAR_FALLBACK: f64 = 1e-12;

/// `∫_a^b e^{−(c+1)x} dx` for `0 ≤ a ≤ b ≤ ∞`.
///
/// `b` may be `+∞`, in which case `c > −1` is required for convergence.
/// Finite ranges accept any `c`; the `c = −1` limit degenerates to `b − a`.
pub fn u_fn(a: f64, b: f64, c: f64) -> Result<f64> {
    u_weighted(0.0, a, b, c)
}

/// `e^w · u_fn(a, b, c)` with the weight folded into the exponent, so that
/// huge `e^w` against tiny integrals (and vice versa) never over/underflows
/// prematurely.
pub(crate) fn u_weighted(w: f64, a: f64, b: f64, c: f64) -> Result<f64> {
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::Domain(format!("lower limit must be finite and >= 0 (got {a})")));
    }
    if b.is_nan() || b < a {
        return Err(Error::Domain(format!("upper limit must satisfy b >= a (got a = {a}, b = {b})")));
    }
    if !c.is_finite() || !w.is_finite() {
        return Err(Error::Domain("exponent parameters must be finite".into()));
    }
    let k = c + 1.0;
    if b.is_infinite() {
        if k <= 0.0 {
            return Err(Error::Domain(format!(
                "integral over [{a}, inf) diverges for c = {c} (needs c > -1)"
            )));
        }
        return Ok((w - a * k).exp() / k);
    }
    if k == 0.0 {
        return Ok(w.exp() * (b - a));
    }
    // −e^{w−ak}·(e^{−(b−a)k} − 1)/k: exact as (b−a)k → 0, stable for k < 0.
    Ok(-(w - a * k).exp() * f64::exp_m1(-(b - a) * k) / k)
}

/// `∫_a^b e^{−(A·x² + B·x)} dx` for `0 ≤ a ≤ b ≤ ∞`, `A ≥ 0`.
///
/// Note the argument order: the *upper* limit comes first, matching how the
/// expression appears in the outage derivations (`b` is usually `∞` or a
/// window edge, `a` the running threshold).
///
/// Evaluated through `erfcx` so the result is finite whenever the true value
/// is: completing the square naively produces `e^{B²/4A}` factors that
/// overflow even for mid-range parameters (e.g. `A = 1e-4`, `B = 3`).
pub fn v_fn(b: f64, a: f64, big_a: f64, big_b: f64) -> Result<f64> {
    v_weighted(0.0, b, a, big_a, big_b)
}

/// `e^w · v_fn(b, a, A, B)` with the weight folded into the exponents.
pub(crate) fn v_weighted(w: f64, b: f64, a: f64, big_a: f64, big_b: f64) -> Result<f64> {
    if !(a.is_finite() && a >= 0.0) {
        return Err(Error::Domain(format!("lower limit must be finite and >= 0 (got {a})")));
    }
    if b.is_nan() || b < a {
        return Err(Error::Domain(format!("upper limit must satisfy b >= a (got a = {a}, b = {b})")));
    }
    if !(big_a.is_finite() && big_a >= 0.0) {
        return Err(Error::Domain(format!("quadratic coefficient must be finite and >= 0 (got {big_a})")));
    }
    if !big_b.is_finite() || !w.is_finite() {
        return Err(Error::Domain("exponent parameters must be finite".into()));
    }
    if big_a < V_LINEAR_FALLBACK * big_b.powi(2).max(1.0) {
        // Degenerate quadratic: e^{−(Ax²+Bx)} ≈ e^{−Bx} to working precision.
        // (For b = ∞ this requires B > 0, as the limit integral does.)
        return u_weighted(w, a, b, big_b - 1.0);
    }
    Ok(v_core(w, b, a, big_a, big_b))
}

/// Core Gaussian template on a validated range, written entirely in terms of
/// `e^{w−q(x)}·erfcx(±y(x))` with `q(x) = x(Ax+B)` and `y(x) = √A·x + B/(2√A)`:
/// every factor is bounded by `e^{w−q}` ≤ the integrand scale, so the result
/// overflows only if the integral itself does.
fn v_core(w: f64, b: f64, a: f64, big_a: f64, big_b: f64) -> f64 {
    let s = big_a.sqrt();
    let q = |x: f64| x * (big_a * x + big_b);
    let y = |x: f64| s * x + big_b / (2.0 * s);
    let ya = y(a);
    let yb = if b.is_infinite() { f64::INFINITY } else { y(b) };
    let front = 0.5 * SQRT_PI / s;
    if ya >= 0.0 {
        // Both endpoints on the decaying side of the Gaussian.
        let ta = (w - q(a)).exp() * erfcx(ya);
        let tb = if b.is_infinite() { 0.0 } else { (w - q(b)).exp() * erfcx(yb) };
        front * (ta - tb)
    } else if yb <= 0.0 {
        // Mirror image: reflect through the vertex.
        let ta = (w - q(a)).exp() * erfcx(-ya);
        let tb = (w - q(b)).exp() * erfcx(-yb);
        front * (tb - ta)
    } else {
        // Range straddles the vertex −B/(2A); split there, evaluating each
        // half one-sided. At the vertex y = 0 and erfcx(0) = 1, so the split
        // point contributes the plain vertex value e^{w−q(xv)} to both halves
        // (that value is the true scale of the integrand — if it overflows,
        // the integral genuinely does too).
        let xv = -big_b / (2.0 * big_a);
        let tv = (w - q(xv)).exp();
        let ta = (w - q(a)).exp() * erfcx(-ya);
        let tb = if b.is_infinite() { 0.0 } else { (w - q(b)).exp() * erfcx(yb) };
        front * ((tv - ta) + (tv - tb))
    }
}
