//! Parameter sweeps, figure presets, output formats and the validation
//! battery.
//!
//! A [`SweepSpec`] names a parameter grid (user counts × target rates × an
//! SNR axis), the metrics to evaluate, and the sources to evaluate them with:
//! closed form, high-SNR approximation, quadrature oracle, or Monte Carlo.
//! [`run_sweep`] walks the grid in parallel and produces one [`SweepRecord`]
//! per (point, metric, scheme, source) cell, in a deterministic order.
//!
//! Determinism is end to end: Monte Carlo cells derive their seed from the
//! master seed and the point index (never from thread scheduling), so a
//! repeated run — and therefore a repeated CSV — is byte-identical. Cells a
//! source cannot provide (no closed form without power adaptation, no
//! analytic ergodic rate, …) become *error rows* with an empty value rather
//! than aborting a long sweep; re-run the single point through the library
//! API to see the underlying error.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic;
use crate::channel::Scheme;
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::mc::{self, BetaPopulation, Metric};
use crate::oracle;

/// Default Monte Carlo trial count for presets and the CLI.
pub const DEFAULT_TRIALS: u64 = 1_000_000;
/// Default master seed for presets and the CLI.
pub const DEFAULT_SEED: u64 = 12345;

/// Absolute closed-form-vs-oracle tolerance the validation battery enforces.
pub const VALIDATION_TOL: f64 = 1e-8;
/// Largest Monte Carlo z-score the validation battery accepts.
pub const VALIDATION_Z_MAX: f64 = 4.0;

/// How a value was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Exact closed-form expression.
    Analytic,
    /// High-SNR approximation (refined form where one exists).
    Approx,
    /// Adaptive-quadrature oracle.
    Oracle,
    /// Seeded Monte Carlo.
    Mc,
}

impl Source {
    pub const ALL: [Source; 4] = [Source::Analytic, Source::Approx, Source::Oracle, Source::Mc];

    /// Stable identifier used by the CLI and file formats.
    pub fn name(&self) -> &'static str {
        match self {
            Source::Analytic => "analytic",
            Source::Approx => "approx",
            Source::Oracle => "oracle",
            Source::Mc => "mc",
        }
    }
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "analytic" => Ok(Source::Analytic),
            "approx" => Ok(Source::Approx),
            "oracle" => Ok(Source::Oracle),
            "mc" => Ok(Source::Mc),
            other => Err(Error::InvalidConfig(format!(
                "unknown source {other:?} (expected analytic, approx, oracle or mc)"
            ))),
        }
    }
}

/// Inclusive dB axis `start, start+step, …, ≤ stop`, applied to the primary
/// power; the secondary follows through the `ρ = Ps/P0` ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnrAxis {
    pub start_db: f64,
    pub stop_db: f64,
    pub step_db: f64,
}

impl SnrAxis {
    pub fn new(start_db: f64, stop_db: f64, step_db: f64) -> Result<SnrAxis> {
        let axis = SnrAxis { start_db, stop_db, step_db };
        axis.validate()?;
        Ok(axis)
    }

    fn validate(&self) -> Result<()> {
        if !(self.start_db.is_finite() && self.stop_db.is_finite() && self.step_db.is_finite()) {
            return Err(Error::InvalidConfig("SNR axis must be finite".into()));
        }
        if self.step_db <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "SNR step must be > 0 (got {})",
                self.step_db
            )));
        }
        if self.stop_db < self.start_db {
            return Err(Error::InvalidConfig(format!(
                "SNR stop {} is below start {}",
                self.stop_db, self.start_db
            )));
        }
        Ok(())
    }

    /// Grid values, generated multiplicatively so accumulation error cannot
    /// drop or duplicate the final point.
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop_db - self.start_db) / self.step_db + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.start_db + i as f64 * self.step_db).collect()
    }
}

impl std::fmt::Display for SnrAxis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.start_db, self.stop_db, self.step_db)
    }
}

impl std::str::FromStr for SnrAxis {
    type Err = Error;

    /// `"A:B:S"` (start:stop:step) or a bare `"A"` for a single point.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidConfig(format!("bad SNR axis component {p:?}")))
        };
        match parts.as_slice() {
            [single] => {
                let v = num(single)?;
                SnrAxis::new(v, v, 1.0)
            }
            [a, b, st] => SnrAxis::new(num(a)?, num(b)?, num(st)?),
            _ => Err(Error::InvalidConfig(format!(
                "SNR axis must be START:STOP:STEP or a single value (got {s:?})"
            ))),
        }
    }
}

/// Everything a sweep needs; serializes to/from JSON for config files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Schemes evaluated for scheme-dependent metrics; may be empty when only
    /// selection probabilities are requested.
    #[serde(default)]
    pub schemes: Vec<Scheme>,
    pub m_list: Vec<u32>,
    pub r0_list: Vec<f64>,
    pub rs_list: Vec<f64>,
    pub snr_db: SnrAxis,
    /// Power ratio `Ps/P0`.
    #[serde(default = "default_rho")]
    pub rho: f64,
    pub metrics: Vec<Metric>,
    pub sources: Vec<Source>,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_rho() -> f64 {
    1.0
}
fn default_trials() -> u64 {
    DEFAULT_TRIALS
}
fn default_seed() -> u64 {
    DEFAULT_SEED
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.metrics.is_empty() {
            return Err(Error::InvalidConfig("at least one metric is required".into()));
        }
        if self.sources.is_empty() {
            return Err(Error::InvalidConfig("at least one source is required".into()));
        }
        if self.m_list.is_empty() || self.r0_list.is_empty() || self.rs_list.is_empty() {
            return Err(Error::InvalidConfig(
                "user-count and rate lists must be non-empty".into(),
            ));
        }
        if !(self.rho.is_finite() && self.rho > 0.0) {
            return Err(Error::InvalidConfig(format!("power ratio must be > 0 (got {})", self.rho)));
        }
        self.snr_db.validate()?;
        if self.metrics.iter().any(Metric::scheme_dependent) && self.schemes.is_empty() {
            return Err(Error::InvalidConfig(
                "scheme-dependent metrics requested but no schemes listed".into(),
            ));
        }
        if self.sources.contains(&Source::Mc) && self.trials == 0 {
            return Err(Error::InvalidConfig("mc source requested with zero trials".into()));
        }
        // Probe every (M, R0, Rs) combination once so bad values fail fast
        // with a construction error instead of a grid full of error rows.
        for &m in &self.m_list {
            for &r0 in &self.r0_list {
                for &rs in &self.rs_list {
                    SystemConfig::new(m, 1.0, self.rho, r0, rs)?;
                }
            }
        }
        Ok(())
    }
}

/// One output row: a single evaluated (or failed) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    /// `None` for scheme-independent metrics (shown as `-` in CSV).
    pub scheme: Option<Scheme>,
    pub m: u32,
    pub r0: f64,
    pub rs: f64,
    pub p0_db: f64,
    pub ps_db: f64,
    pub metric: Metric,
    pub source: Source,
    /// `None` marks an error row: the source cannot produce this cell.
    pub value: Option<f64>,
    /// Present iff the source is Monte Carlo.
    pub stderr: Option<f64>,
    pub n: Option<u64>,
    pub seed: Option<u64>,
}

// ---------------------------------------------------------------------------
// Seeding.
// ---------------------------------------------------------------------------

/// SplitMix64 finalizer: bijective on `u64` with strong avalanche behaviour.
fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for grid point `index` under `master`: the SplitMix64 output stream,
/// so nearby indices get unrelated seeds.
pub fn point_seed(master: u64, index: u64) -> u64 {
    splitmix64(master.wrapping_add((index + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

// ---------------------------------------------------------------------------
// Sweep execution.
// ---------------------------------------------------------------------------

/// Evaluates the full grid. Rows come back ordered by (M, R0, Rs, SNR) point,
/// then metric, then scheme, then source — independent of thread scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    let snrs = spec.snr_db.values();
    let mut points = Vec::new();
    for &m in &spec.m_list {
        for &r0 in &spec.r0_list {
            for &rs in &spec.rs_list {
                for &snr in &snrs {
                    points.push((m, r0, rs, snr));
                }
            }
        }
    }
    let nested: Vec<Vec<SweepRecord>> = points
        .into_par_iter()
        .enumerate()
        .map(|(idx, (m, r0, rs, snr_db))| {
            point_records(spec, m, r0, rs, snr_db, point_seed(spec.seed, idx as u64))
        })
        .collect();
    Ok(nested.into_iter().flatten().collect())
}

fn point_records(
    spec: &SweepSpec,
    m: u32,
    r0: f64,
    rs: f64,
    snr_db: f64,
    seed: u64,
) -> Vec<SweepRecord> {
    let ps_db = snr_db + 10.0 * spec.rho.log10();
    let config = SystemConfig::from_snr_db(m, snr_db, spec.rho, r0, rs);
    let mut out = Vec::new();
    for &metric in &spec.metrics {
        let slots: Vec<Option<Scheme>> = if metric.scheme_dependent() {
            spec.schemes.iter().map(|&s| Some(s)).collect()
        } else {
            vec![None]
        };
        for &scheme in &slots {
            for &source in &spec.sources {
                let cell = config
                    .as_ref()
                    .map_err(|_| ())
                    .and_then(|c| {
                        eval_cell(metric, source, scheme, c, spec.trials, seed).map_err(|_| ())
                    });
                let (value, stderr, n, cell_seed) = cell.unwrap_or_default();
                out.push(SweepRecord {
                    scheme,
                    m,
                    r0,
                    rs,
                    p0_db: snr_db,
                    ps_db,
                    metric,
                    source,
                    value,
                    stderr,
                    n,
                    seed: cell_seed,
                });
            }
        }
    }
    out
}

type CellParts = (Option<f64>, Option<f64>, Option<u64>, Option<u64>);

fn eval_cell(
    metric: Metric,
    source: Source,
    scheme: Option<Scheme>,
    config: &SystemConfig,
    trials: u64,
    seed: u64,
) -> Result<CellParts> {
    // Scheme slots are built from `Metric::scheme_dependent`, so a dependent
    // metric always arrives with a scheme attached.
    let need_scheme = || scheme.expect("scheme-dependent metric evaluated without a scheme");
    let plain = |v: f64| Ok((Some(v), None, None, None));
    match source {
        Source::Mc => {
            let est = match metric {
                Metric::Outage => mc::estimate_outage(need_scheme(), config, trials, seed)?,
                Metric::ErgodicRate => {
                    mc::estimate_ergodic_rate(need_scheme(), config, trials, seed)?
                }
                Metric::AvgBeta => mc::estimate_avg_beta(
                    need_scheme(),
                    config,
                    trials,
                    seed,
                    BetaPopulation::AllTrials,
                )?,
                Metric::PType2 => mc::estimate_p_type2(config, trials, seed)?,
                Metric::PBetter => mc::estimate_better_worse(config, trials, seed)?.0,
                Metric::PWorse => mc::estimate_better_worse(config, trials, seed)?.1,
            };
            Ok((Some(est.mean), Some(est.stderr), Some(est.n), Some(est.seed)))
        }
        Source::Analytic => match metric {
            Metric::Outage => match need_scheme() {
                Scheme::HsicPa => plain(analytic::outage_hsic_pa_exact(config)?.value),
                Scheme::FsicPa => plain(analytic::outage_fsic_pa_exact(config)?.value),
                Scheme::HsicNpa => Err(Error::Unsupported(
                    "no closed-form outage without power adaptation; use oracle or mc".into(),
                )),
            },
            Metric::PType2 => plain(analytic::p_type2(config)?.value),
            Metric::PBetter => plain(analytic::p_better(config)?.value),
            Metric::PWorse => plain(analytic::p_worse_fsic(config)?.value),
            Metric::ErgodicRate | Metric::AvgBeta => Err(Error::Unsupported(format!(
                "no closed form for {metric}; use the mc source"
            ))),
        },
        Source::Approx => match metric {
            Metric::Outage => match need_scheme() {
                Scheme::HsicPa => plain(analytic::outage_hsic_pa_approx1(config)?.value),
                Scheme::FsicPa => plain(analytic::outage_fsic_pa_approx(config)?.value),
                Scheme::HsicNpa => Err(Error::Unsupported(
                    "no high-SNR approximation without power adaptation".into(),
                )),
            },
            _ => Err(Error::Unsupported(format!("no high-SNR approximation for {metric}"))),
        },
        Source::Oracle => match metric {
            Metric::Outage => plain(oracle::outage_numeric(need_scheme(), config)?),
            Metric::PType2 => plain(oracle::p_better_numeric(config)?.1),
            Metric::PBetter => plain(oracle::p_better_numeric(config)?.2),
            Metric::PWorse => plain(1.0 - oracle::p_better_numeric(config)?.2),
            Metric::ErgodicRate | Metric::AvgBeta => Err(Error::Unsupported(format!(
                "the oracle integrates outage-style probabilities only, not {metric}"
            ))),
        },
    }
}

// ---------------------------------------------------------------------------
// Figure presets.
// ---------------------------------------------------------------------------

/// Identifiers accepted by [`figure_preset`].
pub const FIGURE_IDS: [&str; 7] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"];

/// Canned sweeps reproducing the standard experiment set:
///
/// | id   | what                                            | grid                 |
/// |------|-------------------------------------------------|----------------------|
/// | fig1 | hybrid-PA outage vs SNR                         | M ∈ {1,2,4}, ρ = 1   |
/// | fig2 | fixed-PA outage vs SNR                          | M ∈ {1,2,4}, ρ = 0.1 |
/// | fig3 | all-scheme outage, incl. the no-PA error floor  | M = 4, R0 ∈ {1,4}    |
/// | fig4 | ergodic rate of the served user, all schemes    | M = 4                |
/// | fig5 | probability the served user is type II          | M = 4                |
/// | fig6 | better/worse conditional probabilities          | M = 4                |
/// | fig7 | average transmit-power scale β, all schemes     | M = 4                |
///
/// Rates default to 1 BPCU where not pinned by the figure. Axes run 0–60 dB
/// for the outage figures and 0–50 dB otherwise, in 2 dB steps; trials and
/// seed sit at the crate defaults. All fields are plain data — override
/// freely before running.
pub fn figure_preset(id: &str) -> Result<SweepSpec> {
    let spec = |schemes: &[Scheme],
                m_list: &[u32],
                r0_list: &[f64],
                stop_db: f64,
                rho: f64,
                metrics: &[Metric],
                sources: &[Source]| {
        SweepSpec {
            schemes: schemes.to_vec(),
            m_list: m_list.to_vec(),
            r0_list: r0_list.to_vec(),
            rs_list: vec![1.0],
            snr_db: SnrAxis { start_db: 0.0, stop_db, step_db: 2.0 },
            rho,
            metrics: metrics.to_vec(),
            sources: sources.to_vec(),
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
        }
    };
    use Metric::*;
    use Scheme::*;
    use Source::*;
    match id {
        "fig1" => Ok(spec(&[HsicPa], &[1, 2, 4], &[1.0], 60.0, 1.0, &[Outage], &[Analytic, Mc])),
        "fig2" => Ok(spec(&[FsicPa], &[1, 2, 4], &[1.0], 60.0, 0.1, &[Outage], &[Analytic, Mc])),
        "fig3" => Ok(spec(
            &[HsicPa, FsicPa, HsicNpa],
            &[4],
            &[1.0, 4.0],
            60.0,
            1.0,
            &[Outage],
            &[Analytic, Mc],
        )),
        "fig4" => Ok(spec(
            &[HsicPa, FsicPa, HsicNpa],
            &[4],
            &[1.0],
            50.0,
            1.0,
            &[ErgodicRate],
            &[Mc],
        )),
        "fig5" => Ok(spec(&[], &[4], &[1.0], 50.0, 1.0, &[PType2], &[Analytic, Mc])),
        "fig6" => Ok(spec(&[], &[4], &[1.0], 50.0, 1.0, &[PBetter, PWorse], &[Analytic, Mc])),
        "fig7" => Ok(spec(
            &[HsicPa, FsicPa, HsicNpa],
            &[4],
            &[1.0],
            50.0,
            1.0,
            &[AvgBeta],
            &[Mc],
        )),
        other => Err(Error::Unsupported(format!(
            "unknown figure {other:?} (expected one of {})",
            FIGURE_IDS.join(", ")
        ))),
    }
}

// ---------------------------------------------------------------------------
// Emission: CSV, JSON, SVG.
// ---------------------------------------------------------------------------

/// Fixed CSV column order; matches the [`SweepRecord`] fields.
pub const CSV_HEADER: &str = "scheme,M,R0,Rs,P0_dB,Ps_dB,metric,source,value,stderr,n,seed";

/// 17-significant-digit float (round-trippable through `f64` parsing).
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt_f64(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn fmt_opt_u64(x: Option<u64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Whole-file CSV: header plus one line per record, LF endings, UTF-8.
pub fn csv_string(records: &[SweepRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(Error::InvalidConfig("no records to emit".into()));
    }
    let mut out = String::with_capacity(records.len() * 128);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let scheme = r.scheme.map(|s| s.name()).unwrap_or("-");
        let _ = writeln!(
            out,
            "{scheme},{},{},{},{},{},{},{},{},{},{},{}",
            r.m,
            fmt_f64(r.r0),
            fmt_f64(r.rs),
            fmt_f64(r.p0_db),
            fmt_f64(r.ps_db),
            r.metric.name(),
            r.source.name(),
            fmt_opt_f64(r.value),
            fmt_opt_f64(r.stderr),
            fmt_opt_u64(r.n),
            fmt_opt_u64(r.seed),
        );
    }
    Ok(out)
}

/// Pretty-printed JSON array of records.
pub fn json_string(records: &[SweepRecord]) -> Result<String> {
    if records.is_empty() {
        return Err(Error::InvalidConfig("no records to emit".into()));
    }
    Ok(serde_json::to_string_pretty(records)?)
}

/// Parses what [`json_string`] wrote.
pub fn records_from_json(text: &str) -> Result<Vec<SweepRecord>> {
    Ok(serde_json::from_str(text)?)
}

/// Probability-valued metrics get a log₁₀ y-axis in plots.
fn log_scale_metric(metric: Metric) -> bool {
    matches!(metric, Metric::Outage | Metric::PType2 | Metric::PBetter | Metric::PWorse)
}

/// Renders value-vs-SNR line series, one per (metric, scheme, M, R0, Rs,
/// source), as a standalone SVG. The y-axis is log₁₀ when every plotted
/// metric is a probability (declared via the root `data-y-scale` attribute);
/// error rows and non-positive values on a log axis are skipped.
pub fn svg_string(records: &[SweepRecord]) -> Result<String> {
    // Series keyed by a human-readable label; BTreeMap fixes the draw order.
    let mut series: BTreeMap<String, Vec<(f64, f64)>> = BTreeMap::new();
    let mut mc_series: std::collections::BTreeSet<String> = Default::default();
    let mut metrics: Vec<Metric> = Vec::new();
    for r in records {
        let Some(value) = r.value else { continue };
        if !metrics.contains(&r.metric) {
            metrics.push(r.metric);
        }
        let mut label = format!("{}", r.metric);
        if let Some(s) = r.scheme {
            let _ = write!(label, " {s}");
        }
        let _ = write!(label, " M={}", r.m);
        let _ = write!(label, " R0={} Rs={}", r.r0, r.rs);
        let _ = write!(label, " [{}]", r.source);
        if r.source == Source::Mc {
            mc_series.insert(label.clone());
        }
        series.entry(label).or_default().push((r.p0_db, value));
    }
    if series.is_empty() {
        return Err(Error::InvalidConfig("no plottable records (all rows empty?)".into()));
    }
    let log_y = metrics.iter().all(|&m| log_scale_metric(m));

    // Transform and collect ranges.
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    let mut tseries: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for (label, pts) in series {
        let tpts: Vec<(f64, f64)> = pts
            .into_iter()
            .filter_map(|(x, y)| {
                let ty = if log_y {
                    if y > 0.0 {
                        y.log10()
                    } else {
                        return None;
                    }
                } else {
                    y
                };
                Some((x, ty))
            })
            .collect();
        for &(x, y) in &tpts {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
        if !tpts.is_empty() {
            tseries.push((label, tpts));
        }
    }
    if tseries.is_empty() {
        return Err(Error::InvalidConfig("no plottable records after axis transform".into()));
    }
    if xmax - xmin < 1e-12 {
        xmin -= 1.0;
        xmax += 1.0;
    }
    if ymax - ymin < 1e-12 {
        ymin -= 1.0;
        ymax += 1.0;
    }
    let pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const W: f64 = 900.0;
    const H: f64 = 560.0;
    const L: f64 = 72.0;
    const R: f64 = 300.0;
    const T: f64 = 42.0;
    const B: f64 = 56.0;
    let pw = W - L - R;
    let ph = H - T - B;
    let px = |x: f64| L + (x - xmin) / (xmax - xmin) * pw;
    let py = |y: f64| T + (ymax - y) / (ymax - ymin) * ph;

    const PALETTE: [&str; 8] = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
    ];

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\" data-y-scale=\"{}\">",
        if log_y { "log10" } else { "linear" }
    );
    let _ = writeln!(svg, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    let title: Vec<&str> = metrics.iter().map(|m| m.name()).collect();
    let _ = writeln!(
        svg,
        "<text x=\"{:.1}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">{} vs SNR</text>",
        L + pw / 2.0,
        title.join(", ")
    );

    // Axes and ticks.
    let _ = writeln!(
        svg,
        "<rect x=\"{L}\" y=\"{T}\" width=\"{pw:.1}\" height=\"{ph:.1}\" fill=\"none\" \
         stroke=\"black\"/>"
    );
    let x_step = if xmax - xmin >= 30.0 { 10.0 } else { 5.0 };
    let mut xt = (xmin / x_step).ceil() * x_step;
    while xt <= xmax + 1e-9 {
        let x = px(xt);
        let _ = writeln!(
            svg,
            "<line x1=\"{x:.1}\" y1=\"{T}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"#ddd\"/>\
             <text x=\"{x:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\">{xt}</text>",
            T + ph,
            T + ph + 18.0
        );
        xt += x_step;
    }
    if log_y {
        let mut d = ymin.ceil() as i64;
        while (d as f64) <= ymax + 1e-9 {
            let y = py(d as f64);
            let _ = writeln!(
                svg,
                "<line x1=\"{L}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"#ddd\"/>\
                 <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
                 text-anchor=\"end\">1e{d}</text>",
                L + pw,
                L - 6.0,
                y + 4.0
            );
            d += 1;
        }
    } else {
        for i in 0..=5 {
            let v = ymin + (ymax - ymin) * i as f64 / 5.0;
            let y = py(v);
            let _ = writeln!(
                svg,
                "<line x1=\"{L}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"#ddd\"/>\
                 <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
                 text-anchor=\"end\">{v:.3}</text>",
                L + pw,
                L - 6.0,
                y + 4.0
            );
        }
    }
    let _ = writeln!(
        svg,
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\">P0 [dB]</text>",
        L + pw / 2.0,
        H - 14.0
    );

    // Series.
    for (i, (label, pts)) in tseries.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let is_mc = mc_series.contains(label);
        let path: Vec<String> =
            pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let dash = if is_mc { " stroke-dasharray=\"1 3\"" } else { "" };
        let _ = writeln!(
            svg,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"{dash}/>",
            path.join(" ")
        );
        if is_mc {
            for &(x, y) in pts {
                let _ = writeln!(
                    svg,
                    "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"none\" stroke=\"{color}\"/>",
                    px(x),
                    py(y)
                );
            }
        }
        // Legend entry in the right margin.
        let ly = T + 14.0 + i as f64 * 18.0;
        let _ = writeln!(
            svg,
            "<line x1=\"{:.1}\" y1=\"{ly:.1}\" x2=\"{:.1}\" y2=\"{ly:.1}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\
             <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\">{label}\
             </text>",
            L + pw + 10.0,
            L + pw + 34.0,
            L + pw + 40.0,
            ly + 4.0
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

// ---------------------------------------------------------------------------
// Validation battery.
// ---------------------------------------------------------------------------

/// One named pass/fail comparison.
#[derive(Debug, Clone)]
pub struct ValidationCheck {
    pub label: String,
    pub detail: String,
    pub pass: bool,
}

/// Everything the `validate` subcommand ran.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Cross-checks closed forms against the oracle (absolute tolerance
/// [`VALIDATION_TOL`]) and against Monte Carlo (z ≤ [`VALIDATION_Z_MAX`])
/// over a fixed grid of representative configurations.
pub fn run_validation(trials: u64, seed: u64) -> Result<ValidationReport> {
    let grid: [(u32, f64, f64, f64, f64); 8] = [
        (1, 10.0, 1.0, 1.0, 1.0),
        (2, 20.0, 1.0, 1.0, 1.0),
        (4, 30.0, 1.0, 1.0, 1.0),
        (2, 20.0, 0.1, 1.0, 1.0),
        (4, 25.0, 1.0, 2.0, 0.5),
        (1, 0.0, 1.0, 0.5, 2.0),
        (8, 40.0, 1.0, 1.0, 1.0),
        (2, 50.0, 1.0, 1.0, 4.0),
    ];
    let mut report = ValidationReport::default();
    for (i, &(m, snr, rho, r0, rs)) in grid.iter().enumerate() {
        let c = SystemConfig::from_snr_db(m, snr, rho, r0, rs)?;
        let at = format!("M={m} {snr}dB rho={rho} R0={r0} Rs={rs}");
        let mut abs_check = |label: &str, a: f64, b: f64| {
            let diff = (a - b).abs();
            report.checks.push(ValidationCheck {
                label: format!("{label} @ {at}"),
                detail: format!("|{a:.6e} - {b:.6e}| = {diff:.2e} (tol {VALIDATION_TOL:.0e})"),
                pass: diff <= VALIDATION_TOL,
            });
        };
        let th1 = analytic::outage_hsic_pa_exact(&c)?.value;
        let th2 = analytic::outage_fsic_pa_exact(&c)?.value;
        let q2 = analytic::p_type2(&c)?.value;
        let better = analytic::p_better(&c)?.value;
        abs_check("hsic-pa outage vs oracle", th1, oracle::outage_numeric(Scheme::HsicPa, &c)?);
        abs_check("fsic-pa outage vs oracle", th2, oracle::outage_numeric(Scheme::FsicPa, &c)?);
        let (_, q_d, ratio) = oracle::p_better_numeric(&c)?;
        abs_check("p-type2 vs oracle", q2, q_d);
        abs_check("p-better vs oracle", better, ratio);

        let seed_i = point_seed(seed, i as u64);
        let mut z_check = |label: &str, est: &mc::McEstimate, exact: f64| {
            let z = mc::z_score(est, exact);
            report.checks.push(ValidationCheck {
                label: format!("{label} @ {at}"),
                detail: format!(
                    "mc {:.6e} vs exact {exact:.6e}, z = {z:.2} (max {VALIDATION_Z_MAX})",
                    est.mean
                ),
                pass: z <= VALIDATION_Z_MAX,
            });
        };
        z_check("hsic-pa outage mc", &mc::estimate_outage(Scheme::HsicPa, &c, trials, seed_i)?, th1);
        z_check("fsic-pa outage mc", &mc::estimate_outage(Scheme::FsicPa, &c, trials, seed_i)?, th2);
        z_check("p-type2 mc", &mc::estimate_p_type2(&c, trials, seed_i)?, q2);
        let (b_est, w_est) = mc::estimate_better_worse(&c, trials, seed_i)?;
        z_check("p-better mc", &b_est, better);
        z_check("p-worse mc", &w_est, 1.0 - better);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_point_spec(sources: &[Source]) -> SweepSpec {
        SweepSpec {
            schemes: vec![Scheme::HsicPa],
            m_list: vec![2],
            r0_list: vec![1.0],
            rs_list: vec![1.0],
            snr_db: SnrAxis { start_db: 10.0, stop_db: 10.0, step_db: 1.0 },
            rho: 1.0,
            metrics: vec![Metric::Outage],
            sources: sources.to_vec(),
            trials: 20_000,
            seed: 9,
        }
    }

    #[test]
    fn snr_axis_parses_and_enumerates() {
        let axis: SnrAxis = "0:60:2".parse().unwrap();
        assert_eq!(axis.values().len(), 31);
        assert_eq!(axis.values()[30], 60.0);
        let single: SnrAxis = "20".parse().unwrap();
        assert_eq!(single.values(), vec![20.0]);
        let frac = SnrAxis::new(0.0, 1.0, 0.3).unwrap();
        assert_eq!(frac.values().len(), 4);
        assert!("1:2".parse::<SnrAxis>().is_err());
        assert!("5:1:1".parse::<SnrAxis>().is_err());
        assert!("0:10:0".parse::<SnrAxis>().is_err());
        assert_eq!(axis.to_string(), "0:60:2");
    }

    #[test]
    fn spec_validation_catches_bad_inputs() {
        let mut s = one_point_spec(&[Source::Analytic]);
        s.sources.clear();
        assert!(matches!(s.validate(), Err(Error::InvalidConfig(_))));

        let mut s = one_point_spec(&[Source::Analytic]);
        s.schemes.clear();
        assert!(s.validate().is_err(), "outage needs a scheme");

        let mut s = one_point_spec(&[Source::Mc]);
        s.trials = 0;
        assert!(s.validate().is_err());

        let mut s = one_point_spec(&[Source::Analytic]);
        s.rho = 0.0;
        assert!(s.validate().is_err());

        let mut s = one_point_spec(&[Source::Analytic]);
        s.m_list = vec![70];
        assert!(s.validate().is_err(), "user count beyond the library cap");

        // Selection metrics work without any scheme.
        let mut s = one_point_spec(&[Source::Analytic]);
        s.schemes.clear();
        s.metrics = vec![Metric::PType2];
        assert!(s.validate().is_ok());
    }

    #[test]
    fn row_cardinality_matches_the_grid() {
        let mut s = one_point_spec(&[Source::Analytic]);
        s.snr_db = SnrAxis { start_db: 0.0, stop_db: 20.0, step_db: 2.0 };
        let records = run_sweep(&s).unwrap();
        assert_eq!(records.len(), 11, "11 SNR points, 1 scheme, 1 metric, 1 source");
        let csv = csv_string(&records).unwrap();
        assert_eq!(csv.lines().count(), 12, "header + one line per record");
        assert!(csv.starts_with(CSV_HEADER));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn analytic_and_oracle_rows_agree() {
        let records = run_sweep(&one_point_spec(&[Source::Analytic, Source::Oracle])).unwrap();
        assert_eq!(records.len(), 2);
        let a = records[0].value.unwrap();
        let o = records[1].value.unwrap();
        assert!((a - o).abs() < 1e-8, "analytic {a} vs oracle {o}");
    }

    #[test]
    fn unsupported_cells_become_error_rows() {
        let mut s = one_point_spec(&[Source::Analytic, Source::Mc]);
        s.schemes = vec![Scheme::HsicNpa];
        let records = run_sweep(&s).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].source, Source::Analytic);
        assert_eq!(records[0].value, None, "no closed form without PA");
        assert!(records[1].value.is_some(), "mc covers it");
        // Error rows still render in CSV, with empty numeric fields.
        let csv = csv_string(&records).unwrap();
        let row = csv.lines().nth(1).unwrap();
        assert!(row.contains("hsic-npa,"), "row: {row}");
        assert!(row.ends_with("analytic,,,,"), "row: {row}");
    }

    #[test]
    fn scheme_independent_metrics_emit_once_per_point() {
        let mut s = one_point_spec(&[Source::Analytic]);
        s.schemes = vec![Scheme::HsicPa, Scheme::FsicPa, Scheme::HsicNpa];
        s.metrics = vec![Metric::PType2, Metric::PBetter];
        let records = run_sweep(&s).unwrap();
        assert_eq!(records.len(), 2, "one row per metric, not per scheme");
        assert!(records.iter().all(|r| r.scheme.is_none()));
        let csv = csv_string(&records).unwrap();
        assert!(csv.lines().nth(1).unwrap().starts_with("-,"));
    }

    #[test]
    fn mc_rows_carry_uncertainty_and_seed_metadata() {
        let records = run_sweep(&one_point_spec(&[Source::Mc])).unwrap();
        let r = &records[0];
        assert!(r.stderr.unwrap() > 0.0);
        assert_eq!(r.n, Some(20_000));
        assert_eq!(r.seed, Some(point_seed(9, 0)));
        // Non-MC rows leave those columns empty.
        let records = run_sweep(&one_point_spec(&[Source::Analytic])).unwrap();
        assert_eq!(records[0].stderr, None);
        assert_eq!(records[0].n, None);
        assert_eq!(records[0].seed, None);
    }

    #[test]
    fn repeated_sweeps_are_byte_identical() {
        let mut s = one_point_spec(&[Source::Analytic, Source::Mc]);
        s.snr_db = SnrAxis { start_db: 10.0, stop_db: 20.0, step_db: 5.0 };
        s.metrics = vec![Metric::Outage, Metric::PType2];
        let a = csv_string(&run_sweep(&s).unwrap()).unwrap();
        let b = csv_string(&run_sweep(&s).unwrap()).unwrap();
        assert_eq!(a, b);
        // And a different master seed changes the MC digits.
        s.seed = 10;
        let c = csv_string(&run_sweep(&s).unwrap()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn json_round_trips_exactly() {
        let mut s = one_point_spec(&[Source::Analytic, Source::Mc]);
        s.schemes = vec![Scheme::HsicNpa]; // include an error row
        let records = run_sweep(&s).unwrap();
        let parsed = records_from_json(&json_string(&records).unwrap()).unwrap();
        assert_eq!(records, parsed);
        // The `SweepSpec` round-trips too (config-file support).
        let spec2: SweepSpec = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(s, spec2);
    }

    #[test]
    fn spec_json_accepts_terse_config_files() {
        let spec: SweepSpec = serde_json::from_str(
            r#"{
                "schemes": ["hsic-pa"],
                "m_list": [2],
                "r0_list": [1.0],
                "rs_list": [1.0],
                "snr_db": {"start_db": 0.0, "stop_db": 10.0, "step_db": 5.0},
                "metrics": ["outage"],
                "sources": ["analytic"]
            }"#,
        )
        .unwrap();
        assert_eq!(spec.rho, 1.0);
        assert_eq!(spec.trials, DEFAULT_TRIALS);
        assert_eq!(spec.seed, DEFAULT_SEED);
    }

    #[test]
    fn figure_presets_match_their_captions() {
        for id in FIGURE_IDS {
            let spec = figure_preset(id).unwrap();
            spec.validate().unwrap();
        }
        assert_eq!(figure_preset("fig1").unwrap().m_list, vec![1, 2, 4]);
        assert_eq!(figure_preset("fig2").unwrap().rho, 0.1);
        let fig3 = figure_preset("fig3").unwrap();
        assert_eq!(fig3.m_list, vec![4]);
        assert_eq!(fig3.r0_list, vec![1.0, 4.0]);
        assert_eq!(fig3.schemes.len(), 3);
        assert_eq!(fig3.rs_list, vec![1.0]);
        assert!(figure_preset("fig8").is_err());
    }

    #[test]
    fn point_seeds_are_pairwise_distinct() {
        let mut seen = std::collections::HashSet::new();
        for i in 0..1000 {
            assert!(seen.insert(point_seed(42, i)));
        }
        assert_ne!(point_seed(42, 0), point_seed(43, 0));
    }

    #[test]
    fn svg_marks_probability_axes_logarithmic() {
        let mut s = one_point_spec(&[Source::Analytic]);
        s.snr_db = SnrAxis { start_db: 0.0, stop_db: 30.0, step_db: 10.0 };
        let svg = svg_string(&run_sweep(&s).unwrap()).unwrap();
        assert!(svg.starts_with("<svg "));
        assert!(svg.contains("data-y-scale=\"log10\""));
        assert!(svg.contains("outage hsic-pa M=2"));
        assert!(svg.contains("</svg>"));

        s.metrics = vec![Metric::ErgodicRate];
        s.sources = vec![Source::Mc];
        let svg = svg_string(&run_sweep(&s).unwrap()).unwrap();
        assert!(svg.contains("data-y-scale=\"linear\""));

        assert!(svg_string(&[]).is_err());
    }

    #[test]
    fn validation_battery_passes_on_the_reference_grid() {
        let report = run_validation(25_000, 3).unwrap();
        assert_eq!(report.checks.len(), 8 * 9);
        for c in &report.checks {
            assert!(c.pass, "{}: {}", c.label, c.detail);
        }
        assert!(report.all_pass());
    }
}
