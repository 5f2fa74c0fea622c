//! Scenario configuration and derived analysis constants.
//!
//! A scenario is one primary (licensed) uplink user plus `M` secondary users
//! contending for admission on the same resource block. Transmit powers are
//! noise-normalised (linear scale), so "SNR in dB" elsewhere in the crate
//! means `10·log10(P)`. Target rates are in bits per channel use.
//!
//! All closed-form and numerical machinery consumes the same five derived
//! constants, collected in [`Constants`]:
//!
//! * `epsilon0 = 2^R0 − 1`, `epsilon_s = 2^Rs − 1` — SINR thresholds of the
//!   primary and secondary target rates;
//! * `alpha0 = epsilon0 / P0` — the primary outage threshold on the primary's
//!   own channel gain;
//! * `alpha_s = epsilon_s / Ps` — the interference-free secondary threshold;
//! * `alpha1 = (1 + epsilon_s) · alpha0` — the primary-gain level above which
//!   the admission window saturates.

use crate::error::{Error, Result};

/// Largest supported number of secondary users.
///
/// Exact binomial sums are separately capped much lower (see
/// [`crate::analytic::SERIES_CAP_M`]); this bound keeps channel draws and
/// Monte Carlo kernels to a sane size.
pub const MAX_USERS: u32 = 64;

/// Validated scenario parameters.
///
/// Construct with [`SystemConfig::new`] (linear powers) or
/// [`SystemConfig::from_snr_db`] (secondary budget expressed relative to the
/// primary in dB). Fields are private so every constructed value satisfies:
/// `1 ≤ m ≤ MAX_USERS`, `p0 > 0`, `ps > 0`, `r0 > 0`, `rs ≥ 0`, all finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    m: u32,
    p0: f64,
    ps: f64,
    r0: f64,
    rs: f64,
    // Cached at construction: the Monte Carlo kernels read these per draw.
    consts: Constants,
}

impl SystemConfig {
    /// Builds a configuration from linear (noise-normalised) powers.
    pub fn new(m: u32, p0: f64, ps: f64, r0: f64, rs: f64) -> Result<Self> {
        if !(1..=MAX_USERS).contains(&m) {
            return Err(Error::InvalidConfig(format!(
                "secondary user count must satisfy 1 <= M <= {MAX_USERS} (got {m})"
            )));
        }
        for (name, v) in [("P0", p0), ("Ps", ps), ("R0", r0), ("Rs", rs)] {
            if !v.is_finite() {
                return Err(Error::InvalidConfig(format!("{name} must be finite (got {v})")));
            }
        }
        if p0 <= 0.0 || ps <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "powers must be positive (got P0 = {p0}, Ps = {ps})"
            )));
        }
        if r0 <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "primary target rate must be positive (got R0 = {r0})"
            )));
        }
        if rs < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "secondary target rate must be non-negative (got Rs = {rs})"
            )));
        }
        let epsilon0 = f64::exp_m1(r0 * std::f64::consts::LN_2);
        let epsilon_s = f64::exp_m1(rs * std::f64::consts::LN_2);
        let alpha0 = epsilon0 / p0;
        let alpha_s = epsilon_s / ps;
        let alpha1 = (1.0 + epsilon_s) * alpha0;
        let consts = Constants { epsilon0, epsilon_s, alpha0, alpha_s, alpha1 };
        Ok(Self { m, p0, ps, r0, rs, consts })
    }

    /// Builds a configuration from a primary SNR in dB and a secondary power
    /// ratio `rho = Ps / P0`.
    pub fn from_snr_db(m: u32, snr_db: f64, rho: f64, r0: f64, rs: f64) -> Result<Self> {
        if !snr_db.is_finite() {
            return Err(Error::InvalidConfig(format!("SNR must be finite (got {snr_db} dB)")));
        }
        if !(rho.is_finite() && rho > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "power ratio rho must be positive and finite (got {rho})"
            )));
        }
        let p0 = 10f64.powf(snr_db / 10.0);
        Self::new(m, p0, rho * p0, r0, rs)
    }

    /// Number of secondary users `M`.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Primary transmit power (linear, noise-normalised).
    pub fn p0(&self) -> f64 {
        self.p0
    }

    /// Secondary transmit power (linear, noise-normalised).
    pub fn ps(&self) -> f64 {
        self.ps
    }

    /// Primary target rate in bits per channel use.
    pub fn r0(&self) -> f64 {
        self.r0
    }

    /// Secondary target rate in bits per channel use.
    pub fn rs(&self) -> f64 {
        self.rs
    }

    /// The threshold constants used by every analysis path.
    pub fn constants(&self) -> Constants {
        self.consts
    }
}

/// Threshold constants derived from a [`SystemConfig`].
///
/// These are plain data: every probability formula, quadrature integrand and
/// Monte Carlo kernel in the crate is written in terms of them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    /// `2^R0 − 1`.
    pub epsilon0: f64,
    /// `2^Rs − 1`.
    pub epsilon_s: f64,
    /// `epsilon0 / P0`: the primary's outage threshold on its own gain.
    pub alpha0: f64,
    /// `epsilon_s / Ps`: the interference-free secondary gain threshold.
    pub alpha_s: f64,
    /// `(1 + epsilon_s) · alpha0`: saturation point of the admission window.
    pub alpha1: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_reasonable_parameters() {
        let cfg = SystemConfig::new(4, 100.0, 50.0, 1.0, 0.5).unwrap();
        assert_eq!(cfg.m(), 4);
        assert_eq!(cfg.p0(), 100.0);
        assert_eq!(cfg.ps(), 50.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(SystemConfig::new(0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(SystemConfig::new(MAX_USERS + 1, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(SystemConfig::new(1, 0.0, 1.0, 1.0, 1.0).is_err());
        assert!(SystemConfig::new(1, 1.0, -2.0, 1.0, 1.0).is_err());
        assert!(SystemConfig::new(1, 1.0, 1.0, 0.0, 1.0).is_err());
        assert!(SystemConfig::new(1, 1.0, 1.0, 1.0, -0.1).is_err());
        assert!(SystemConfig::new(1, f64::NAN, 1.0, 1.0, 1.0).is_err());
        assert!(SystemConfig::new(1, f64::INFINITY, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn snr_construction_matches_linear() {
        let a = SystemConfig::from_snr_db(2, 20.0, 0.5, 1.0, 1.0).unwrap();
        let b = SystemConfig::new(2, 100.0, 50.0, 1.0, 1.0).unwrap();
        assert!((a.p0() - b.p0()).abs() < 1e-12 * b.p0());
        assert!((a.ps() - b.ps()).abs() < 1e-12 * b.ps());
        assert!(SystemConfig::from_snr_db(2, 20.0, 0.0, 1.0, 1.0).is_err());
        assert!(SystemConfig::from_snr_db(2, f64::NAN, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn constants_match_hand_values() {
        // P0 = Ps = 10, R0 = Rs = 1: eps = 1, alpha0 = alpha_s = 0.1, alpha1 = 0.2.
        let c = SystemConfig::new(1, 10.0, 10.0, 1.0, 1.0).unwrap().constants();
        assert!((c.epsilon0 - 1.0).abs() < 1e-15);
        assert!((c.epsilon_s - 1.0).abs() < 1e-15);
        assert!((c.alpha0 - 0.1).abs() < 1e-16);
        assert!((c.alpha_s - 0.1).abs() < 1e-16);
        assert!((c.alpha1 - 0.2).abs() < 1e-16);

        // Fractional rate: eps = 2^1.5 − 1.
        let c = SystemConfig::new(1, 10.0, 5.0, 1.5, 0.8).unwrap().constants();
        assert!((c.epsilon0 - (2f64.powf(1.5) - 1.0)).abs() < 1e-15);
        assert!((c.epsilon_s - (2f64.powf(0.8) - 1.0)).abs() < 1e-15);
        assert!((c.alpha1 - (1.0 + c.epsilon_s) * c.alpha0).abs() < 1e-16);
    }

    #[test]
    fn zero_secondary_rate_is_allowed_in_config() {
        let c = SystemConfig::new(3, 10.0, 10.0, 1.0, 0.0).unwrap().constants();
        assert_eq!(c.epsilon_s, 0.0);
        assert_eq!(c.alpha_s, 0.0);
        assert_eq!(c.alpha1, c.alpha0);
    }
}
