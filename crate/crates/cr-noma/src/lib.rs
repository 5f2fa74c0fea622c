//! Analytics and simulation for secondary-user admission in uplink
//! cognitive-radio NOMA.
//!
//! A primary user holds an uplink channel; up to `M` secondary users compete
//! to be admitted onto the same resource under a hard constraint on the
//! interference the primary can absorb. The crate models three admission
//! schemes — hybrid SIC ordering with and without transmit-power adaptation,
//! and a fixed SIC ordering with power adaptation — and answers the standard
//! performance questions about them three independent ways:
//!
//! * [`analytic`] — closed-form outage probabilities, their high-SNR
//!   approximations, and the selection probabilities (type-II service,
//!   better/worse conditionals), evaluated carefully enough to survive the
//!   deep cancellation that shows up at high SNR.
//! * [`oracle`] — the same quantities by adaptive numerical integration of
//!   the conditional outage against the channel density. The oracle shares
//!   no code with the closed forms, so agreement between the two is evidence
//!   rather than tautology.
//! * [`mc`] — seeded, parallel Monte Carlo on the literal decision rules
//!   from [`channel`], with common random numbers across schemes.
//!
//! [`sweep`] drives all three over parameter grids and renders CSV, JSON and
//! SVG; the `cr-noma` binary wraps that in a command-line interface.
//!
//! # Quick start
//!
//! ```
//! use cr_noma::{analytic, mc, oracle, Scheme, SystemConfig};
//!
//! // M = 1 secondary user, 10 dB primary SNR, equal powers, 1 bit/s/Hz each.
//! let config = SystemConfig::from_snr_db(1, 10.0, 1.0, 1.0, 1.0)?;
//!
//! let exact = analytic::outage_hsic_pa_exact(&config)?.value;
//! let numeric = oracle::outage_numeric(Scheme::HsicPa, &config)?;
//! assert!((exact - numeric).abs() < 1e-8);
//!
//! // Seeded Monte Carlo on the literal decision rules; bit-reproducible.
//! let est = mc::estimate_outage(Scheme::HsicPa, &config, 100_000, 7)?;
//! assert!((est.mean - exact).abs() < 5.0 * est.stderr);
//! # Ok::<(), cr_noma::Error>(())
//! ```

// Coefficient tables and frozen reference values keep every digit of the
// computation that produced them, beyond what f64 round-trips need.
#![allow(clippy::excessive_precision)]

pub mod analytic;
pub mod channel;
pub mod config;
mod dd;
pub mod error;
pub mod mc;
pub mod oracle;
pub mod special;
pub mod sweep;

pub use channel::{ChannelDraw, Scheme, ServedOutcome, SicStage, UserType};
pub use config::{Constants, SystemConfig, MAX_USERS};
pub use error::{Error, Result};
pub use mc::{BetaPopulation, McEstimate, Metric};
pub use sweep::{SnrAxis, Source, SweepRecord, SweepSpec};
