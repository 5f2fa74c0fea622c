//! Command-line front end.
//!
//! Single-point inspection (`analytic`, `oracle`, `simulate`), grid sweeps
//! (`sweep`, with flags or a JSON spec file), canned figure reproductions
//! (`figure fig1..fig7`) and a three-way cross-validation battery
//! (`validate`). Sweep output renders as CSV, JSON or SVG.
//!
//! Exit codes: 0 on success, 1 when a computation or validation fails, 2 on
//! usage errors (bad flags, malformed config files, unknown figure ids).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use cr_noma::analytic::{self, AnalyticResult, Kind};
use cr_noma::mc::{self, BetaPopulation};
use cr_noma::oracle;
use cr_noma::sweep::{self, SnrAxis, Source, SweepSpec};
use cr_noma::{Metric, Scheme, SystemConfig};

/// Errors that should exit with the usage code (2) instead of the runtime
/// failure code (1).
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage_err(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

#[derive(Parser)]
#[command(
    name = "cr-noma",
    version,
    about = "Outage analytics and simulation for secondary-user admission in \
             uplink cognitive-radio NOMA",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form probabilities (exact and high-SNR) at grid points.
    Analytic(PointArgs),
    /// Quadrature-oracle probabilities; independent of the closed forms.
    Oracle(OracleArgs),
    /// Seeded Monte Carlo estimates with standard errors.
    Simulate(SimulateArgs),
    /// Parameter sweep over (scheme, metric, source) cells.
    Sweep(SweepArgs),
    /// Canned sweep reproducing one of the standard figures (fig1..fig7).
    Figure(FigureArgs),
    /// Cross-check analytic vs oracle vs Monte Carlo; nonzero exit on any miss.
    Validate(ValidateArgs),
}

/// Scalar configuration shared by the single-point subcommands.
#[derive(Args)]
struct GridPoint {
    /// Number of secondary users.
    #[arg(long, default_value_t = 4)]
    m: u32,
    /// Primary SNR in dB: START:STOP:STEP or a single value.
    #[arg(long = "snr-db", default_value = "20", value_parser = parse_axis)]
    snr_db: SnrAxis,
    /// Secondary-to-primary power ratio Ps/P0.
    #[arg(long, default_value_t = 1.0)]
    rho: f64,
    /// Primary user target rate in bits per channel use.
    #[arg(long, default_value_t = 1.0)]
    r0: f64,
    /// Secondary user target rate in bits per channel use.
    #[arg(long, default_value_t = 1.0)]
    rs: f64,
}

impl GridPoint {
    fn config_at(&self, snr_db: f64) -> anyhow::Result<SystemConfig> {
        SystemConfig::from_snr_db(self.m, snr_db, self.rho, self.r0, self.rs)
            .map_err(|e| usage_err(e.to_string()))
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
    format: OutFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
    Svg,
}

/// Format pair for the single-point subcommands (tables or JSON).
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PointFormat {
    Text,
    Json,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    point: GridPoint,
    #[arg(long, value_enum, default_value_t = PointFormat::Text)]
    format: PointFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    inner: PointArgs,
    /// Also print the per-region decomposition of each outage integral.
    #[arg(long)]
    terms: bool,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    point: GridPoint,
    /// Schemes to simulate.
    #[arg(long, value_delimiter = ',', value_parser = parse_scheme,
          default_value = "hsic-pa,fsic-pa,hsic-npa")]
    schemes: Vec<Scheme>,
    /// Metrics to estimate (default: all).
    #[arg(long, value_delimiter = ',', value_parser = parse_metric)]
    metrics: Vec<Metric>,
    /// Monte Carlo trials per estimate.
    #[arg(long, default_value_t = sweep::DEFAULT_TRIALS)]
    trials: u64,
    /// Master seed; per-point seeds derive from it deterministically.
    #[arg(long, default_value_t = sweep::DEFAULT_SEED)]
    seed: u64,
    /// Average β over stage-two (type-II-served) trials only, instead of all
    /// trials.
    #[arg(long)]
    beta_type2_only: bool,
    #[arg(long, value_enum, default_value_t = PointFormat::Text)]
    format: PointFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON sweep spec (same shape the other flags describe); mutually
    /// exclusive with the grid flags.
    #[arg(long, conflicts_with_all = ["schemes", "m", "r0", "rs", "snr_db",
          "rho", "metrics", "sources", "trials", "seed"])]
    config: Option<PathBuf>,
    /// Schemes for scheme-dependent metrics.
    #[arg(long, value_delimiter = ',', value_parser = parse_scheme)]
    schemes: Vec<Scheme>,
    /// User counts to sweep.
    #[arg(long, value_delimiter = ',')]
    m: Vec<u32>,
    /// Primary target rates to sweep.
    #[arg(long, value_delimiter = ',')]
    r0: Vec<f64>,
    /// Secondary target rates to sweep.
    #[arg(long, value_delimiter = ',')]
    rs: Vec<f64>,
    /// Primary SNR axis in dB: START:STOP:STEP.
    #[arg(long = "snr-db", value_parser = parse_axis)]
    snr_db: Option<SnrAxis>,
    /// Secondary-to-primary power ratio Ps/P0.
    #[arg(long)]
    rho: Option<f64>,
    /// Metrics to evaluate.
    #[arg(long, value_delimiter = ',', value_parser = parse_metric)]
    metrics: Vec<Metric>,
    /// Computation sources: analytic, approx, oracle, mc.
    #[arg(long, value_delimiter = ',', value_parser = parse_source)]
    sources: Vec<Source>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FigureArgs {
    /// Figure id: fig1..fig7.
    id: String,
    /// Override the preset's user counts.
    #[arg(long, value_delimiter = ',')]
    m: Vec<u32>,
    /// Override the preset's SNR axis.
    #[arg(long = "snr-db", value_parser = parse_axis)]
    snr_db: Option<SnrAxis>,
    /// Override the preset's sources.
    #[arg(long, value_delimiter = ',', value_parser = parse_source)]
    sources: Vec<Source>,
    /// Override the preset's trial count.
    #[arg(long)]
    trials: Option<u64>,
    /// Override the preset's master seed.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ValidateArgs {
    /// Monte Carlo trials per z-score check.
    #[arg(long, default_value_t = 200_000)]
    trials: u64,
    #[arg(long, default_value_t = sweep::DEFAULT_SEED)]
    seed: u64,
}

fn parse_axis(s: &str) -> Result<SnrAxis, String> {
    s.parse().map_err(|e: cr_noma::Error| e.to_string())
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse().map_err(|e: cr_noma::Error| e.to_string())
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    s.parse().map_err(|e: cr_noma::Error| e.to_string())
}

fn parse_source(s: &str) -> Result<Source, String> {
    s.parse().map_err(|e: cr_noma::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Analytic(args) => run_analytic(args),
        Command::Oracle(args) => run_oracle(args),
        Command::Simulate(args) => run_simulate(args),
        Command::Sweep(args) => run_sweep_cmd(args),
        Command::Figure(args) => run_figure(args),
        Command::Validate(args) => run_validate(args),
    }
}

// ---------------------------------------------------------------------------
// Single-point output rows.
// ---------------------------------------------------------------------------

/// One printed quantity; doubles as the JSON schema for the single-point
/// subcommands.
#[derive(serde::Serialize)]
struct PointRow {
    p0_db: f64,
    quantity: String,
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stderr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

impl PointRow {
    fn ok(p0_db: f64, quantity: impl Into<String>, kind: &'static str, value: f64) -> PointRow {
        PointRow {
            p0_db,
            quantity: quantity.into(),
            kind,
            value: Some(value),
            stderr: None,
            n: None,
            seed: None,
            note: None,
        }
    }

    fn failed(p0_db: f64, quantity: impl Into<String>, err: &cr_noma::Error) -> PointRow {
        PointRow {
            p0_db,
            quantity: quantity.into(),
            kind: "error",
            value: None,
            stderr: None,
            n: None,
            seed: None,
            note: Some(err.to_string()),
        }
    }
}

fn kind_label(kind: Kind) -> &'static str {
    match kind {
        Kind::Exact => "exact",
        Kind::Approx => "approx",
    }
}

fn render_point_rows(
    title: &str,
    point: &GridPoint,
    rows: &[PointRow],
    format: PointFormat,
) -> anyhow::Result<String> {
    match format {
        PointFormat::Json => Ok(serde_json::to_string_pretty(rows)?),
        PointFormat::Text => {
            let mut out = format!(
                "# {title}: M={} rho={} R0={} Rs={}\n{:>7}  {:<36}{:<8}{}\n",
                point.m, point.rho, point.r0, point.rs, "P0_dB", "quantity", "kind", "value"
            );
            for r in rows {
                let value = match r.value {
                    Some(v) => format!("{v:.16e}"),
                    None => "-".to_string(),
                };
                let mut tail = String::new();
                if let Some(se) = r.stderr {
                    tail.push_str(&format!("  ± {se:.3e}"));
                }
                if let Some(n) = r.n {
                    tail.push_str(&format!("  n={n}"));
                }
                if let Some(seed) = r.seed {
                    tail.push_str(&format!("  seed={seed}"));
                }
                if let Some(note) = &r.note {
                    tail.push_str(&format!("  ({note})"));
                }
                out.push_str(&format!(
                    "{:>7.1}  {:<36}{:<8}{value}{tail}\n",
                    r.p0_db, r.quantity, r.kind
                ));
            }
            Ok(out)
        }
    }
}

fn write_output(out: &Option<PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{content}"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Subcommand bodies.
// ---------------------------------------------------------------------------

fn run_analytic(args: PointArgs) -> anyhow::Result<ExitCode> {
    let mut rows = Vec::new();
    for snr in args.point.snr_db.values() {
        let c = args.point.config_at(snr)?;
        let quantities: [(&str, cr_noma::Result<AnalyticResult>); 8] = [
            ("hsic-pa outage", analytic::outage_hsic_pa_exact(&c)),
            ("hsic-pa outage", analytic::outage_hsic_pa_approx1(&c)),
            ("hsic-pa outage", analytic::outage_hsic_pa_approx2(&c)),
            ("fsic-pa outage", analytic::outage_fsic_pa_exact(&c)),
            ("fsic-pa outage", analytic::outage_fsic_pa_approx(&c)),
            ("p-type2", analytic::p_type2(&c)),
            ("p-better", analytic::p_better(&c)),
            ("p-worse", analytic::p_worse_fsic(&c)),
        ];
        for (name, result) in quantities {
            rows.push(match result {
                Ok(r) => {
                    // The two hybrid approximations share a metric name;
                    // disambiguate with the formula label.
                    let mut row = PointRow::ok(snr, name, kind_label(r.kind), r.value);
                    if r.kind == Kind::Approx {
                        row.quantity = r.source.label().to_string();
                    }
                    row
                }
                Err(e) => PointRow::failed(snr, name, &e),
            });
        }
    }
    let text = render_point_rows("closed forms", &args.point, &rows, args.format)?;
    write_output(&args.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_oracle(args: OracleArgs) -> anyhow::Result<ExitCode> {
    let point = &args.inner.point;
    let mut rows = Vec::new();
    for snr in point.snr_db.values() {
        let c = point.config_at(snr)?;
        for scheme in Scheme::ALL {
            let name = format!("{scheme} outage");
            rows.push(match oracle::outage_numeric(scheme, &c) {
                Ok(v) => PointRow::ok(snr, name, "oracle", v),
                Err(e) => PointRow::failed(snr, name, &e),
            });
        }
        match oracle::p_better_numeric(&c) {
            Ok((_, q_d, ratio)) => {
                rows.push(PointRow::ok(snr, "p-type2", "oracle", q_d));
                rows.push(PointRow::ok(snr, "p-better", "oracle", ratio));
                rows.push(PointRow::ok(snr, "p-worse", "oracle", 1.0 - ratio));
            }
            Err(e) => {
                for name in ["p-type2", "p-better", "p-worse"] {
                    rows.push(PointRow::failed(snr, name, &e));
                }
            }
        }
        if args.terms {
            for scheme in [Scheme::HsicPa, Scheme::FsicPa] {
                match oracle::decomposition_terms(scheme, &c) {
                    Ok(terms) => {
                        for t in terms {
                            rows.push(PointRow::ok(
                                snr,
                                format!("{scheme} region {}", t.name),
                                "oracle",
                                t.value,
                            ));
                        }
                    }
                    Err(e) => rows.push(PointRow::failed(snr, format!("{scheme} regions"), &e)),
                }
            }
        }
    }
    let text = render_point_rows("quadrature oracle", point, &rows, args.inner.format)?;
    write_output(&args.inner.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_simulate(args: SimulateArgs) -> anyhow::Result<ExitCode> {
    let metrics = if args.metrics.is_empty() { Metric::ALL.to_vec() } else { args.metrics.clone() };
    let population =
        if args.beta_type2_only { BetaPopulation::Type2Only } else { BetaPopulation::AllTrials };
    let mut rows = Vec::new();
    for (idx, snr) in args.point.snr_db.values().into_iter().enumerate() {
        let c = args.point.config_at(snr)?;
        let seed = sweep::point_seed(args.seed, idx as u64);
        let mut push = |name: String, res: cr_noma::Result<mc::McEstimate>| {
            rows.push(match res {
                Ok(est) => PointRow {
                    stderr: Some(est.stderr),
                    n: Some(est.n),
                    seed: Some(est.seed),
                    ..PointRow::ok(snr, name, "mc", est.mean)
                },
                Err(e) => PointRow::failed(snr, name, &e),
            });
        };
        for &metric in &metrics {
            match metric {
                Metric::Outage => {
                    for &s in &args.schemes {
                        push(
                            format!("{s} outage"),
                            mc::estimate_outage(s, &c, args.trials, seed),
                        );
                    }
                }
                Metric::ErgodicRate => {
                    for &s in &args.schemes {
                        push(
                            format!("{s} ergodic-rate"),
                            mc::estimate_ergodic_rate(s, &c, args.trials, seed),
                        );
                    }
                }
                Metric::AvgBeta => {
                    for &s in &args.schemes {
                        push(
                            format!("{s} avg-beta"),
                            mc::estimate_avg_beta(s, &c, args.trials, seed, population),
                        );
                    }
                }
                Metric::PType2 => {
                    push("p-type2".into(), mc::estimate_p_type2(&c, args.trials, seed));
                }
                Metric::PBetter => push(
                    "p-better".into(),
                    mc::estimate_better_worse(&c, args.trials, seed).map(|(b, _)| b),
                ),
                Metric::PWorse => push(
                    "p-worse".into(),
                    mc::estimate_better_worse(&c, args.trials, seed).map(|(_, w)| w),
                ),
            }
        }
    }
    let text = render_point_rows("monte carlo", &args.point, &rows, args.format)?;
    write_output(&args.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn load_spec(path: &PathBuf) -> anyhow::Result<SweepSpec> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage_err(format!("cannot read {}: {e}", path.display())))?;
    let spec: SweepSpec = serde_json::from_str(&text)
        .map_err(|e| usage_err(format!("bad sweep spec {}: {e}", path.display())))?;
    Ok(spec)
}

fn run_sweep_cmd(args: SweepArgs) -> anyhow::Result<ExitCode> {
    let spec = match &args.config {
        Some(path) => load_spec(path)?,
        None => SweepSpec {
            schemes: if args.schemes.is_empty() {
                vec![Scheme::HsicPa, Scheme::FsicPa]
            } else {
                args.schemes.clone()
            },
            m_list: if args.m.is_empty() { vec![4] } else { args.m.clone() },
            r0_list: if args.r0.is_empty() { vec![1.0] } else { args.r0.clone() },
            rs_list: if args.rs.is_empty() { vec![1.0] } else { args.rs.clone() },
            snr_db: args
                .snr_db
                .unwrap_or(SnrAxis { start_db: 0.0, stop_db: 60.0, step_db: 2.0 }),
            rho: args.rho.unwrap_or(1.0),
            metrics: if args.metrics.is_empty() { vec![Metric::Outage] } else { args.metrics.clone() },
            sources: if args.sources.is_empty() {
                vec![Source::Analytic, Source::Mc]
            } else {
                args.sources.clone()
            },
            trials: args.trials.unwrap_or(sweep::DEFAULT_TRIALS),
            seed: args.seed.unwrap_or(sweep::DEFAULT_SEED),
        },
    };
    emit_sweep(&spec, &args.output)
}

fn run_figure(args: FigureArgs) -> anyhow::Result<ExitCode> {
    let mut spec = sweep::figure_preset(&args.id).map_err(|e| usage_err(e.to_string()))?;
    if !args.m.is_empty() {
        spec.m_list = args.m.clone();
    }
    if let Some(axis) = args.snr_db {
        spec.snr_db = axis;
    }
    if !args.sources.is_empty() {
        spec.sources = args.sources.clone();
    }
    if let Some(trials) = args.trials {
        spec.trials = trials;
    }
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    emit_sweep(&spec, &args.output)
}

fn emit_sweep(spec: &SweepSpec, output: &OutputArgs) -> anyhow::Result<ExitCode> {
    spec.validate().map_err(|e| usage_err(e.to_string()))?;
    let records = sweep::run_sweep(spec)?;
    let content = match output.format {
        OutFormat::Csv => sweep::csv_string(&records)?,
        OutFormat::Json => sweep::json_string(&records)?,
        OutFormat::Svg => sweep::svg_string(&records)?,
    };
    write_output(&output.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn run_validate(args: ValidateArgs) -> anyhow::Result<ExitCode> {
    let report = sweep::run_validation(args.trials, args.seed)?;
    let mut failed = 0usize;
    for check in &report.checks {
        let tag = if check.pass {
            "PASS"
        } else {
            failed += 1;
            "FAIL"
        };
        println!("[{tag}] {}: {}", check.label, check.detail);
    }
    println!(
        "validation: {} checks, {} passed, {failed} failed",
        report.checks.len(),
        report.checks.len() - failed
    );
    if failed == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
