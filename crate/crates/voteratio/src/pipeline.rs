//! Election analysis pipeline: reference statistics with region exclusion,
//! indicator normalization, ratio series, rejection-sweep estimates,
//! interval probabilities, and turnout histograms.
//!
//! The chain mirrors how the method is applied to real returns: compute the
//! mean and spread of each indicator over the constituencies *outside* the
//! suspect regions, normalize the suspect constituencies against those
//! statistics, take the per-constituency ratio of the two z-scores, and fit
//! a Cauchy law to the sorted ratios. Under clean data the two indicators
//! are approximately independent normals, so the ratios are approximately
//! standard Cauchy; estimates far from (0, 1) want explaining.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cauchy::location_interval_prob;
use crate::error::{Error, Result};
use crate::estimator::{rejection_sweep, EstimateRow};

/// Normalized denominators closer to zero than this are flagged and
/// excluded rather than allowed to produce near-infinite ratios.
pub const DEGENERATE_DENOMINATOR_EPS: f64 = 1e-9;

/// One constituency's raw election returns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstituencyRecord {
    pub region: String,
    pub constituency_id: String,
    pub registered_voters: u64,
    pub ballots_cast: u64,
    pub votes_against_all: u64,
    pub invalid_ballots: u64,
    /// Per-candidate vote counts keyed by candidate label.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub candidate_votes: BTreeMap<String, u64>,
}

impl ConstituencyRecord {
    /// Check the structural invariants. Turnout above 100% is legal input
    /// (it occurs in falsified real-world data) and is flagged downstream,
    /// never rejected here.
    pub fn validate(&self) -> Result<()> {
        if self.region.trim().is_empty() || self.constituency_id.trim().is_empty() {
            return Err(Error::Data(
                "region and constituency_id must be non-empty".into(),
            ));
        }
        if self.registered_voters == 0 {
            return Err(Error::Data(format!(
                "{}: registered_voters must be positive",
                self.label()
            )));
        }
        if self.ballots_cast < self.votes_against_all + self.invalid_ballots {
            return Err(Error::Data(format!(
                "{}: ballots_cast ({}) is less than votes_against_all ({}) + invalid_ballots ({})",
                self.label(),
                self.ballots_cast,
                self.votes_against_all,
                self.invalid_ballots
            )));
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.region, self.constituency_id)
    }

    /// Ballots cast per registered voter, as a percentage. May exceed 100.
    pub fn turnout_pct(&self) -> f64 {
        100.0 * self.ballots_cast as f64 / self.registered_voters as f64
    }

    /// Against-all votes as a percentage of the configured basis.
    pub fn against_all_pct(&self, basis: AgainstAllBasis) -> f64 {
        let denom = match basis {
            AgainstAllBasis::BallotsCast => self.ballots_cast,
            AgainstAllBasis::RegisteredVoters => self.registered_voters,
        };
        if denom == 0 {
            return 0.0;
        }
        100.0 * self.votes_against_all as f64 / denom as f64
    }

    /// True when turnout exceeds 100% (exact integer comparison).
    pub fn turnout_over_100(&self) -> bool {
        self.ballots_cast > self.registered_voters
    }
}

/// Denominator used for the against-all percentage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgainstAllBasis {
    /// Share of ballots cast (the convention in published CEC returns).
    #[default]
    BallotsCast,
    RegisteredVoters,
}

/// Divisor convention for the reference variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarianceDivisor {
    /// Sample variance, n−1.
    #[default]
    SampleNMinus1,
    /// Population variance, n; available for exact-reproduction attempts
    /// against published tables whose convention is unknown.
    PopulationN,
}

/// Statistical conventions the source tables leave open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StatsConfig {
    pub variance_divisor: VarianceDivisor,
    pub against_all_basis: AgainstAllBasis,
}

/// Mean, variance and standard deviation of one indicator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndicatorStats {
    pub mean: f64,
    pub variance: f64,
    pub sigma: f64,
}

/// Reference-population statistics for both indicators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceStats {
    pub turnout: IndicatorStats,
    pub against_all: IndicatorStats,
    pub excluded_regions: Vec<String>,
    pub n_used: usize,
}

/// A data-quality warning attached to the analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataFlag {
    pub code: FlagCode,
    /// `region/constituency_id` of the offending record, when applicable.
    pub constituency: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FlagCode {
    #[serde(rename = "turnout_gt_100")]
    TurnoutOver100,
    #[serde(rename = "degenerate_denominator")]
    DegenerateDenominator,
    #[serde(rename = "clamped_draw")]
    ClampedDraw,
}

/// Interval probability for the location parameter at one (interval, scale)
/// pair, per the sample-mean device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalProbability {
    pub interval: [f64; 2],
    pub scale: f64,
    pub probability: f64,
}

/// Everything the analysis produces: reference statistics, the sorted ratio
/// sample, sweep estimates, the untrimmed sample mean, interval
/// probabilities, and data-quality flags.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub reference: ReferenceStats,
    /// Sorted ascending; the estimator input before any trimming.
    pub ratios: Vec<f64>,
    pub sweep: Vec<EstimateRow>,
    /// Mean of the untrimmed ratio series.
    pub sample_mean: f64,
    pub probabilities: Vec<IntervalProbability>,
    pub flags: Vec<DataFlag>,
}

/// Options for [`analyze`].
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeOptions {
    /// Regions whose constituencies are under suspicion; these supply the
    /// ratio sample and are always excluded from the reference statistics.
    pub suspect_regions: Vec<String>,
    /// Additional regions excluded from the reference statistics (data
    /// defects, foreign districts, ...).
    pub excluded_regions: Vec<String>,
    pub rejection_levels: Vec<usize>,
    /// Location intervals for the probability device.
    pub prob_intervals: Vec<(f64, f64)>,
    /// Scale values assumed known for the probability device.
    pub scales: Vec<f64>,
    pub stats: StatsConfig,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            suspect_regions: Vec::new(),
            excluded_regions: Vec::new(),
            rejection_levels: vec![1, 3, 7, 9],
            prob_intervals: vec![(-0.1, 0.1)],
            scales: vec![1.0],
            stats: StatsConfig::default(),
        }
    }
}

/// Unweighted mean and variance of each indicator over every constituency
/// outside the excluded regions. Each constituency counts once regardless
/// of its size.
pub fn compute_reference_stats(
    records: &[ConstituencyRecord],
    excluded_regions: &[String],
    config: StatsConfig,
) -> Result<ReferenceStats> {
    let excluded: BTreeSet<&str> = excluded_regions.iter().map(|s| s.as_str()).collect();
    let included: Vec<&ConstituencyRecord> = records
        .iter()
        .filter(|r| !excluded.contains(r.region.as_str()))
        .collect();
    if included.len() < 2 {
        return Err(Error::Data(format!(
            "reference statistics need at least 2 constituencies after exclusion, got {}",
            included.len()
        )));
    }
    let turnout: Vec<f64> = included.iter().map(|r| r.turnout_pct()).collect();
    let against: Vec<f64> = included
        .iter()
        .map(|r| r.against_all_pct(config.against_all_basis))
        .collect();
    Ok(ReferenceStats {
        turnout: indicator_stats(&turnout, config.variance_divisor),
        against_all: indicator_stats(&against, config.variance_divisor),
        excluded_regions: excluded.iter().map(|s| s.to_string()).collect(),
        n_used: included.len(),
    })
}

fn indicator_stats(values: &[f64], divisor: VarianceDivisor) -> IndicatorStats {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    let variance = match divisor {
        VarianceDivisor::SampleNMinus1 => ss / (n - 1.0),
        VarianceDivisor::PopulationN => ss / n,
    };
    IndicatorStats {
        mean,
        variance,
        sigma: variance.sqrt(),
    }
}

/// Center and scale a raw indicator value: `(value − mean)/σ`.
pub fn normalize_indicator(value: f64, stats: &IndicatorStats) -> Result<f64> {
    if stats.sigma <= 0.0 || stats.sigma.is_nan() {
        return Err(Error::Domain(
            "degenerate reference: indicator sigma is zero".into(),
        ));
    }
    Ok((value - stats.mean) / stats.sigma)
}

/// Per-record ratio of normalized turnout to normalized against-all share,
/// in input order. Records whose normalized denominator is closer to zero
/// than [`DEGENERATE_DENOMINATOR_EPS`] are flagged and excluded.
pub fn ratio_series(
    records: &[ConstituencyRecord],
    stats: &ReferenceStats,
    config: StatsConfig,
) -> Result<(Vec<f64>, Vec<DataFlag>)> {
    if records.is_empty() {
        return Err(Error::Data("ratio series needs at least one record".into()));
    }
    let mut ratios = Vec::with_capacity(records.len());
    let mut flags = Vec::new();
    for record in records {
        let z_turnout = normalize_indicator(record.turnout_pct(), &stats.turnout)?;
        let z_against = normalize_indicator(
            record.against_all_pct(config.against_all_basis),
            &stats.against_all,
        )?;
        if z_against.abs() < DEGENERATE_DENOMINATOR_EPS {
            flags.push(DataFlag {
                code: FlagCode::DegenerateDenominator,
                constituency: Some(record.label()),
                detail: format!(
                    "normalized against-all {z_against:e} is too close to zero; record excluded from the ratio sample"
                ),
            });
        } else {
            ratios.push(z_turnout / z_against);
        }
    }
    if ratios.is_empty() {
        return Err(Error::Data(
            "every record has a degenerate normalized denominator; ratio series is empty".into(),
        ));
    }
    Ok((ratios, flags))
}

/// Run the whole pipeline: reference statistics on non-suspect records,
/// normalization and ratios for the suspect records, rejection-sweep
/// estimates, the untrimmed sample mean, and interval probabilities for
/// every (interval, scale) pair.
pub fn analyze(records: &[ConstituencyRecord], opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    if opts.suspect_regions.is_empty() {
        return Err(Error::Config("no suspect regions given".into()));
    }
    let known: BTreeSet<&str> = records.iter().map(|r| r.region.as_str()).collect();
    for suspect in &opts.suspect_regions {
        if !known.contains(suspect.as_str()) {
            let mut known: Vec<&str> = known.into_iter().collect();
            known.sort_unstable();
            return Err(Error::Config(format!(
                "suspect region '{suspect}' matches no record; known regions: {}",
                known.join(", ")
            )));
        }
    }

    // Remark-style exclusion: the reference never sees the suspect regions.
    let mut reference_excluded: Vec<String> = opts
        .suspect_regions
        .iter()
        .chain(opts.excluded_regions.iter())
        .cloned()
        .collect();
    reference_excluded.sort_unstable();
    reference_excluded.dedup();

    let stats = compute_reference_stats(records, &reference_excluded, opts.stats)
        .map_err(|e| e.at_stage("reference stats"))?;

    let suspect_set: BTreeSet<&str> = opts.suspect_regions.iter().map(|s| s.as_str()).collect();
    let suspects: Vec<ConstituencyRecord> = records
        .iter()
        .filter(|r| suspect_set.contains(r.region.as_str()))
        .cloned()
        .collect();

    let (ratios, mut flags) =
        ratio_series(&suspects, &stats, opts.stats).map_err(|e| e.at_stage("ratio series"))?;

    let mut turnout_flags: Vec<DataFlag> = records
        .iter()
        .filter(|r| r.turnout_over_100())
        .map(|r| DataFlag {
            code: FlagCode::TurnoutOver100,
            constituency: Some(r.label()),
            detail: format!("turnout {:.3}% exceeds 100%", r.turnout_pct()),
        })
        .collect();
    turnout_flags.append(&mut flags);
    let flags = turnout_flags;

    let mut sorted = ratios.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("ratios are finite"));

    let sweep = rejection_sweep(&sorted, &opts.rejection_levels)
        .map_err(|e| e.at_stage("rejection sweep"))?;

    // The probability device uses the mean of the untrimmed ratio series.
    let sample_mean = ratios.iter().sum::<f64>() / ratios.len() as f64;

    let mut probabilities = Vec::with_capacity(opts.prob_intervals.len() * opts.scales.len());
    for &(lo, hi) in &opts.prob_intervals {
        for &scale in &opts.scales {
            let probability = location_interval_prob(lo, hi, sample_mean, scale)
                .map_err(|e| e.at_stage("interval probability"))?;
            probabilities.push(IntervalProbability {
                interval: [lo, hi],
                scale,
                probability,
            });
        }
    }

    Ok(AnalysisReport {
        reference: stats,
        ratios: sorted,
        sweep,
        sample_mean,
        probabilities,
        flags,
    })
}

/// A turnout histogram with left-closed right-open bins anchored at 0% and
/// an open-ended overflow bin for turnout strictly above 100%.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TurnoutHistogram {
    pub bin_width: f64,
    /// Non-empty bins, ascending by lower edge.
    pub bins: Vec<HistogramBin>,
    /// Records with ballots_cast > registered_voters.
    pub overflow_count: usize,
    pub total: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistogramBin {
    pub low: f64,
    pub count: usize,
}

/// Bin turnout percentages. The overflow membership test is exact (integer
/// ballots vs. registered), so a turnout of exactly 100% stays in its
/// regular bin.
pub fn turnout_histogram(
    records: &[ConstituencyRecord],
    bin_width: f64,
) -> Result<TurnoutHistogram> {
    if bin_width <= 0.0 || !bin_width.is_finite() {
        return Err(Error::Domain(format!(
            "bin width must be positive and finite, got {bin_width}"
        )));
    }
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    let mut overflow = 0usize;
    for record in records {
        if record.turnout_over_100() {
            overflow += 1;
        } else {
            let idx = (record.turnout_pct() / bin_width).floor() as u64;
            *counts.entry(idx).or_insert(0) += 1;
        }
    }
    Ok(TurnoutHistogram {
        bin_width,
        bins: counts
            .into_iter()
            .map(|(idx, count)| HistogramBin {
                low: idx as f64 * bin_width,
                count,
            })
            .collect(),
        overflow_count: overflow,
        total: records.len(),
    })
}
