//! Minimal double-double arithmetic.
//!
//! A `Dd` stores a value as an unevaluated sum `hi + lo` of two `f64`s with
//! `|lo| ≤ ulp(hi)/2`, giving roughly 32 significant decimal digits. The
//! outage expressions in this crate are alternating binomial sums whose terms
//! can exceed the final value by fifteen orders of magnitude at high SNR;
//! plain `f64` (even with compensated summation) loses every significant
//! digit there because the *individual terms* are only accurate to 1 ulp.
//! Carrying ~106 bits through the exponentials and the sum keeps the final
//! relative error around 1e-13 in the worst supported corner.
//!
//! Only the handful of operations the analytic module needs are implemented:
//! field arithmetic, integer powers, `exp` and `exp_m1`. The algorithms are
//! the classical error-free transformations (Dekker/Knuth two-sum, FMA-based
//! two-product) and the standard double-double `exp` (argument reduction by
//! `ln 2` and a 512-fold halving, short Taylor series, nine re-squarings).

use std::sync::OnceLock;

/// `ln 2` to double-double precision.
const LN2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.319046813846299558e-17 };

/// Sum `a + b` with exact error term; requires nothing about the magnitudes.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Sum `a + b` with exact error term; assumes `|a| ≥ |b|` or either is zero.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Product `a · b` with exact error term (relies on hardware FMA).
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Double-double value `hi + lo`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Renormalises an arbitrary `hi`/`lo` pair.
    #[inline]
    fn norm(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[cfg(test)]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            self.neg()
        } else {
            self
        }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s1, e1) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, e1 + t1);
        Dd::norm(s1, s2 + t2)
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Dd {
        let (s1, e1) = two_sum(self.hi, b);
        Dd::norm(s1, e1 + self.lo)
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        Dd::norm(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::norm(p, e + self.lo * b)
    }

    /// Exact scaling by a power of two.
    #[inline]
    fn scale2(self, k: f64) -> Dd {
        Dd { hi: self.hi * k, lo: self.lo * k }
    }

    pub fn div(self, o: Dd) -> Dd {
        // Long division with three correction steps.
        let q1 = self.hi / o.hi;
        let mut r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        r = r.sub(o.mul_f64(q2));
        let q3 = r.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd::norm(s, e).add_f64(q3)
    }

    pub fn powi(self, n: u32) -> Dd {
        let mut base = self;
        let mut n = n;
        let mut acc = Dd::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(base);
            }
        }
        acc
    }

    /// `e^self − 1` for `|self| ≤ ln2/2`, i.e. arguments needing no `ln 2`
    /// reduction. The squaring ladder works on `s = e^x − 1` throughout
    /// (`(1+s)² = 1 + (2s + s²)`), so the result carries full *relative*
    /// accuracy down to arbitrarily small arguments — nothing is ever
    /// subtracted from 1.
    fn exp_reduced_m1(self) -> Dd {
        let r = self.scale2(1.0 / 512.0);

        // Taylor for e^r − 1 on the halved argument, |r| ≤ 6.8e-4.
        let inv_fact = inv_factorials();
        let mut p = r.mul(r);
        let mut s = r.add(p.scale2(0.5));
        p = p.mul(r);
        for f in inv_fact {
            let t = p.mul(*f);
            s = s.add(t);
            if t.hi.abs() < 1e-37 {
                break;
            }
            p = p.mul(r);
        }

        // Undo the halvings: s ← 2s + s², nine times.
        for _ in 0..9 {
            s = s.scale2(2.0).add(s.mul(s));
        }
        s
    }

    /// `e^self` to roughly 1e-30 relative accuracy.
    pub fn exp(self) -> Dd {
        // Out-of-range magnitudes degrade to f64 behaviour (0 / subnormal /
        // inf); all precision-critical uses sit far inside the range.
        if self.hi <= -700.0 {
            return Dd::from_f64(self.hi.exp());
        }
        if self.hi >= 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        // Reduce: self = m·ln2 + r with |r| ≤ ln2/2.
        let m = (self.hi / LN2.hi).round();
        let r = self.sub(LN2.mul_f64(m));
        let s = r.exp_reduced_m1().add_f64(1.0);

        // Undo the ln2 reduction with an exact power of two.
        s.scale2(2f64.powi(m as i32))
    }

    /// `e^self − 1`, accurate for arguments of any magnitude.
    pub fn exp_m1(self) -> Dd {
        // Inside the reduction-free range the ladder already *is* e^x − 1;
        // using it directly avoids the subtraction that would otherwise cost
        // ~|log10 x| digits for small arguments. Outside it, e^x − 1 is
        // bounded away from zero and the subtraction is harmless.
        if self.hi.abs() <= 0.34 {
            self.exp_reduced_m1()
        } else {
            self.exp().add_f64(-1.0)
        }
    }
}

/// `1/k!` for `k = 3, 4, …, 12`, computed once by exact double-double division.
fn inv_factorials() -> &'static [Dd; 10] {
    static TABLE: OnceLock<[Dd; 10]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = [Dd::ZERO; 10];
        let mut fact = Dd::from_f64(2.0);
        for (k, slot) in out.iter_mut().enumerate() {
            // k = 0 corresponds to 3!.
            fact = fact.mul_f64((k + 3) as f64);
            *slot = Dd::ONE.div(fact);
        }
        out
    })
}
