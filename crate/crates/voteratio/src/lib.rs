//! Election forensics built on a ratio-of-normals test.
//!
//! The core idea: pick two election indicators that a falsifier is unlikely
//! to coordinate — turnout and the share of against-all votes — and
//! normalize each against a reference population of constituencies outside
//! the suspect regions. If the data is clean, both z-scores are roughly
//! standard normal and their per-constituency ratio follows a Cauchy law
//! with location 0 and scale 1. The toolkit estimates those two parameters
//! from the suspect constituencies by arctangent regression on trimmed
//! order statistics and quantifies how implausible the estimates are via
//! Cauchy interval probabilities.
//!
//! # Modules
//!
//! - [`cauchy`] — density, CDF, quantile, interval probabilities
//! - [`estimator`] — arctangent regression, trimming, rejection sweeps,
//!   and a median/half-IQR cross-check oracle
//! - [`pipeline`] — reference statistics, normalization, ratio series,
//!   the full analysis, turnout histograms
//! - [`simulator`] — synthetic corpora with fraud injection and power
//!   studies against known ground truth
//! - [`csv_io`], [`report`], [`svg`] — ingestion and deterministic output
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run -p voteratio --example cauchy_basics
//! cargo run -p voteratio --example estimate_from_ratios
//! cargo run -p voteratio --example analyze_returns
//! cargo run -p voteratio --example turnout_histogram
//! cargo run -p voteratio --example simulate_and_detect
//! cargo run -p voteratio --example power_study
//! ```
//!
//! A thin `voteratio` binary wraps the same pipeline with `analyze`,
//! `histogram` and `simulate` subcommands.

pub mod cauchy;
pub mod csv_io;
pub mod error;
pub mod estimator;
pub mod pipeline;
pub mod report;
pub mod simulator;
pub mod svg;

pub use cauchy::CauchyParams;
pub use error::{Error, Result};
pub use estimator::{EstimateRow, RatioSample};
pub use pipeline::{analyze, AnalysisReport, AnalyzeOptions, ConstituencyRecord, ReferenceStats};
pub use simulator::{FraudMode, ScenarioConfig};
