//! Seeded, parallel Monte Carlo estimators.
//!
//! Every estimator draws fading realisations with the kernel from
//! [`crate::channel`] and reduces them to a mean and a standard error. Three
//! properties are guaranteed:
//!
//! * **Reproducibility** — a (seed, metric) pair fully determines the draws.
//!   Trials are split over 256 fixed chunks, each running its own
//!   counter-based ChaCha stream (`stream id = metric-tag·2⁴⁰ + chunk`), and
//!   chunk results are combined in chunk order. The estimate is therefore
//!   bit-identical regardless of how many worker threads Rayon uses.
//! * **Common random numbers** — the stream id does not involve the scheme,
//!   and each trial consumes exactly `1 + M` uniforms for every scheme, so
//!   comparing schemes at the same seed compares them on the *same* channel
//!   realisations. Differences between schemes are then never masked by
//!   sampling noise.
//! * **Honest uncertainty** — `stderr` is the sample standard deviation
//!   (with Bessel's correction) divided by `√n`, and conditional estimators
//!   report the conditioning count as their `n`.

use crate::channel::{exp1, served_decision, Scheme, UserType};
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Number of independent substreams a run is split into.
pub const CHUNKS: u64 = 256;

/// What a Monte Carlo run (or a sweep row) measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    /// Probability that the served secondary user misses its target rate.
    Outage,
    /// Mean achievable rate of the served secondary user (bits/channel use).
    ErgodicRate,
    /// Mean transmit-power scale of the served secondary user.
    AvgBeta,
    /// Probability that the served secondary user is type II.
    PType2,
    /// P(power adaptation beats full power | served user is type II).
    PBetter,
    /// P(power adaptation loses to full power | served user is type II).
    PWorse,
}

impl Metric {
    /// All metrics, in canonical presentation order.
    pub const ALL: [Metric; 6] = [
        Metric::Outage,
        Metric::ErgodicRate,
        Metric::AvgBeta,
        Metric::PType2,
        Metric::PBetter,
        Metric::PWorse,
    ];

    /// Stable identifier used by the CLI and file formats.
    pub fn name(&self) -> &'static str {
        match self {
            Metric::Outage => "outage",
            Metric::ErgodicRate => "ergodic-rate",
            Metric::AvgBeta => "avg-beta",
            Metric::PType2 => "p-type2",
            Metric::PBetter => "p-better",
            Metric::PWorse => "p-worse",
        }
    }

    /// Whether the metric depends on the admission scheme at all. The
    /// type-II and better/worse probabilities are functions of the channel
    /// thresholds only.
    pub fn scheme_dependent(&self) -> bool {
        matches!(self, Metric::Outage | Metric::ErgodicRate | Metric::AvgBeta)
    }

    /// Substream tag; `PBetter`/`PWorse` share draws by design (they are two
    /// sides of one conditional experiment).
    fn tag(&self) -> u64 {
        match self {
            Metric::Outage => 1,
            Metric::ErgodicRate => 2,
            Metric::AvgBeta => 3,
            Metric::PType2 => 4,
            Metric::PBetter | Metric::PWorse => 5,
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "outage" => Ok(Metric::Outage),
            "ergodic-rate" => Ok(Metric::ErgodicRate),
            "avg-beta" => Ok(Metric::AvgBeta),
            "p-type2" => Ok(Metric::PType2),
            "p-better" => Ok(Metric::PBetter),
            "p-worse" => Ok(Metric::PWorse),
            other => Err(Error::InvalidConfig(format!(
                "unknown metric {other:?} (expected one of outage, ergodic-rate, avg-beta, p-type2, p-better, p-worse)"
            ))),
        }
    }
}

/// Result of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    /// Sample mean.
    pub mean: f64,
    /// Standard error of the mean (sample sd / √n, Bessel-corrected).
    pub stderr: f64,
    /// Number of trials the estimate is based on; for conditional metrics
    /// this is the count of trials satisfying the condition.
    pub n: u64,
    /// Seed the run was keyed with.
    pub seed: u64,
    pub metric: Metric,
}

/// Which population an average-β estimate runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaPopulation {
    /// Average over every trial (type-I trials contribute β = 1).
    AllTrials,
    /// Average only over trials whose served user is type II.
    Type2Only,
}

// ---------------------------------------------------------------------------
// Sampling kernel.
// ---------------------------------------------------------------------------

/// Per-trial channel summary: the primary gain plus the two order statistics
/// every estimator needs. Exactly `1 + M` uniforms are consumed per trial no
/// matter which metric or scheme consumes the result.
#[derive(Debug, Clone, Copy)]
struct Extremes {
    g2: f64,
    h_max: f64,
    /// Largest secondary gain that fits under the interference threshold;
    /// `-∞` when every user exceeds it.
    best_type1: f64,
    /// Full-power interference threshold `tau/Ps` in gain units.
    t1: f64,
}

impl Extremes {
    fn best_type1_opt(&self) -> Option<f64> {
        if self.best_type1.is_finite() {
            Some(self.best_type1)
        } else {
            None
        }
    }
}

#[inline]
fn draw_extremes(rng: &mut ChaCha8Rng, m: u32, alpha0: f64, ps: f64) -> Extremes {
    let g2 = exp1(rng);
    let t1 = ((g2 / alpha0 - 1.0) / ps).max(0.0);
    let mut h_max = f64::NEG_INFINITY;
    let mut best_type1 = f64::NEG_INFINITY;
    for _ in 0..m {
        let h = exp1(rng);
        if h > h_max {
            h_max = h;
        }
        if h <= t1 && h > best_type1 {
            best_type1 = h;
        }
    }
    Extremes { g2, h_max, best_type1, t1 }
}

/// Runs `per_chunk` over the 256 substreams in parallel and returns the
/// results in chunk order.
fn chunked<T, F>(trials: u64, seed: u64, tag: u64, per_chunk: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
{
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let result = (0..CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let n = trials / CHUNKS + u64::from(chunk < trials % CHUNKS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream((tag << 40) | chunk);
            per_chunk(&mut rng, n)
        })
        .collect();
    Ok(result)
}

/// Estimate from an integer success count (exact combination across chunks).
fn bernoulli_estimate(successes: u64, n: u64, seed: u64, metric: Metric) -> McEstimate {
    let mean = successes as f64 / n as f64;
    let stderr = if n > 1 {
        (mean * (1.0 - mean) / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    McEstimate { mean, stderr, n, seed, metric }
}

/// Estimate from running sums of a real-valued statistic.
fn mean_estimate(sum: f64, sumsq: f64, n: u64, seed: u64, metric: Metric) -> McEstimate {
    let mean = sum / n as f64;
    let stderr = if n > 1 {
        let var = ((sumsq - sum * sum / n as f64) / (n - 1) as f64).max(0.0);
        (var / n as f64).sqrt()
    } else {
        0.0
    };
    McEstimate { mean, stderr, n, seed, metric }
}

// ---------------------------------------------------------------------------
// Estimators.
// ---------------------------------------------------------------------------

/// Outage probability of the served secondary user under `scheme`.
pub fn estimate_outage(
    scheme: Scheme,
    config: &SystemConfig,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    let cfg = *config;
    let (m, alpha0, ps, rs) = (cfg.m(), cfg.constants().alpha0, cfg.ps(), cfg.rs());
    let counts = chunked(trials, seed, Metric::Outage.tag(), move |rng, n| {
        let mut k = 0u64;
        for _ in 0..n {
            let e = draw_extremes(rng, m, alpha0, ps);
            let d = served_decision(scheme, e.g2, e.h_max, e.best_type1_opt(), &cfg);
            if d.rate < rs {
                k += 1;
            }
        }
        k
    })?;
    Ok(bernoulli_estimate(counts.iter().sum(), trials, seed, Metric::Outage))
}

/// Mean achievable rate of the served secondary user under `scheme`.
pub fn estimate_ergodic_rate(
    scheme: Scheme,
    config: &SystemConfig,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    let cfg = *config;
    let (m, alpha0, ps) = (cfg.m(), cfg.constants().alpha0, cfg.ps());
    let parts = chunked(trials, seed, Metric::ErgodicRate.tag(), move |rng, n| {
        let (mut s, mut s2) = (0.0f64, 0.0f64);
        for _ in 0..n {
            let e = draw_extremes(rng, m, alpha0, ps);
            let d = served_decision(scheme, e.g2, e.h_max, e.best_type1_opt(), &cfg);
            s += d.rate;
            s2 += d.rate * d.rate;
        }
        (s, s2)
    })?;
    let (sum, sumsq) = parts.iter().fold((0.0, 0.0), |(a, b), (s, s2)| (a + s, b + s2));
    Ok(mean_estimate(sum, sumsq, trials, seed, Metric::ErgodicRate))
}

/// Mean transmit-power scale β of the served secondary user under `scheme`.
///
/// Without power adaptation β is identically 1, so for that scheme the
/// estimate is returned as the constant with zero standard error (no
/// sampling is performed). The `population` flag selects whether type-I
/// trials (β = 1 by definition) are included in the average.
pub fn estimate_avg_beta(
    scheme: Scheme,
    config: &SystemConfig,
    trials: u64,
    seed: u64,
    population: BetaPopulation,
) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    if scheme == Scheme::HsicNpa {
        return Ok(McEstimate { mean: 1.0, stderr: 0.0, n: trials, seed, metric: Metric::AvgBeta });
    }
    let cfg = *config;
    let (m, alpha0, ps) = (cfg.m(), cfg.constants().alpha0, cfg.ps());
    let parts = chunked(trials, seed, Metric::AvgBeta.tag(), move |rng, n| {
        let (mut cnt, mut s, mut s2) = (0u64, 0.0f64, 0.0f64);
        for _ in 0..n {
            let e = draw_extremes(rng, m, alpha0, ps);
            let d = served_decision(scheme, e.g2, e.h_max, e.best_type1_opt(), &cfg);
            if population == BetaPopulation::Type2Only && d.user_type != UserType::TypeII {
                continue;
            }
            cnt += 1;
            s += d.beta;
            s2 += d.beta * d.beta;
        }
        (cnt, s, s2)
    })?;
    let (n, sum, sumsq) =
        parts.iter().fold((0u64, 0.0, 0.0), |(a, b, c), (k, s, s2)| (a + k, b + s, c + s2));
    if n == 0 {
        return Err(Error::Degenerate("no trial satisfied the type-II condition".into()));
    }
    Ok(mean_estimate(sum, sumsq, n, seed, Metric::AvgBeta))
}

/// Probability that the served secondary user is type II. Scheme-independent:
/// the classification depends only on the gains and the thresholds.
pub fn estimate_p_type2(config: &SystemConfig, trials: u64, seed: u64) -> Result<McEstimate> {
    let (m, alpha0, ps) = (config.m(), config.constants().alpha0, config.ps());
    let counts = chunked(trials, seed, Metric::PType2.tag(), move |rng, n| {
        let mut k = 0u64;
        for _ in 0..n {
            let e = draw_extremes(rng, m, alpha0, ps);
            if e.h_max > e.t1 {
                k += 1;
            }
        }
        k
    })?;
    Ok(bernoulli_estimate(counts.iter().sum(), trials, seed, Metric::PType2))
}

/// Joint estimate of the better/worse conditional probabilities: given that
/// the served user is type II, does the adapted second stage beat full-power
/// first-stage decoding? Both come from one pass over shared draws, so the
/// two means add to 1 exactly (up to the null-measure tie event).
///
/// Errors with [`Error::Degenerate`] if no trial lands in the conditioning
/// event.
pub fn estimate_better_worse(
    config: &SystemConfig,
    trials: u64,
    seed: u64,
) -> Result<(McEstimate, McEstimate)> {
    let (m, alpha0, ps, p0) = (config.m(), config.constants().alpha0, config.ps(), config.p0());
    let parts = chunked(trials, seed, Metric::PBetter.tag(), move |rng, n| {
        let (mut t2, mut better, mut worse) = (0u64, 0u64, 0u64);
        for _ in 0..n {
            let e = draw_extremes(rng, m, alpha0, ps);
            if e.h_max <= e.t1 {
                continue;
            }
            t2 += 1;
            let hbar2 = e.t1 * (p0 * e.g2 + 1.0);
            if e.h_max < hbar2 {
                better += 1;
            } else if e.h_max > hbar2 {
                worse += 1;
            }
        }
        (t2, better, worse)
    })?;
    let (t2, better, worse) = parts
        .iter()
        .fold((0u64, 0u64, 0u64), |(a, b, c), (t, x, y)| (a + t, b + x, c + y));
    if t2 == 0 {
        return Err(Error::Degenerate("no trial had a type-II served user".into()));
    }
    Ok((
        bernoulli_estimate(better, t2, seed, Metric::PBetter),
        bernoulli_estimate(worse, t2, seed, Metric::PWorse),
    ))
}

/// z statistic of an estimate against an exact value.
///
/// For the Bernoulli-valued metrics the standard error is computed under the
/// null hypothesis, `sqrt(p(1-p)/n)` with `p` the exact value — this stays
/// well-defined when the empirical count is 0 (deep outage tails), where the
/// sample standard error would be 0 and any nonzero deviation would look
/// infinitely significant. Other metrics fall back to the sample standard
/// error.
pub fn z_score(estimate: &McEstimate, exact: f64) -> f64 {
    let se = match estimate.metric {
        Metric::Outage | Metric::PType2 | Metric::PBetter | Metric::PWorse => {
            (exact * (1.0 - exact) / estimate.n as f64).sqrt()
        }
        Metric::ErgodicRate | Metric::AvgBeta => estimate.stderr,
    };
    (estimate.mean - exact).abs() / se.max(1e-300)
}
