//! Cauchy distribution mathematics: density, CDF, quantile, and interval
//! probabilities for the location parameter.
//!
//! The Cauchy law is the null model for ratios of normalized election
//! indicators: the ratio of two independent standard normal variables is
//! Cauchy with location 0 and scale 1. The distribution has no moments, so
//! everything here is quantile- and CDF-based.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Location/scale parameter pair of a Cauchy law.
///
/// `location` is the median and mode; `scale` is the half-width at half
/// maximum and equals half the interquartile range. Under the no-fraud null
/// the theoretical values are (0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyParams {
    location: f64,
    scale: f64,
}

impl CauchyParams {
    /// The standard Cauchy law (location 0, scale 1).
    pub const STANDARD: CauchyParams = CauchyParams {
        location: 0.0,
        scale: 1.0,
    };

    pub fn new(location: f64, scale: f64) -> Result<Self> {
        if !location.is_finite() {
            return Err(Error::Domain(format!(
                "location must be finite, got {location}"
            )));
        }
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::Domain(format!(
                "scale must be finite and positive, got {scale}"
            )));
        }
        Ok(Self { location, scale })
    }

    pub fn location(&self) -> f64 {
        self.location
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
}

/// Probability density `(1/π)·γ/((x−α)² + γ²)`.
///
/// Strictly positive everywhere; the maximum is `1/(πγ)` at `x = α`.
pub fn pdf(x: f64, p: CauchyParams) -> f64 {
    let d = x - p.location;
    p.scale / (PI * (d * d + p.scale * p.scale))
}

/// Cumulative distribution `1/2 + (1/π)·arctan((x−α)/γ)`.
pub fn cdf(x: f64, p: CauchyParams) -> f64 {
    0.5 + ((x - p.location) / p.scale).atan() / PI
}

/// Quantile `α + γ·tan(π(u − 1/2))`, the analytic inverse of [`cdf`].
///
/// `u` must lie strictly inside (0, 1); the endpoints are tangent poles.
pub fn quantile(u: f64, p: CauchyParams) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::Domain(format!(
            "quantile level must lie strictly in (0,1), got {u}"
        )));
    }
    Ok(p.location + p.scale * (PI * (u - 0.5)).tan())
}

/// Probability that the location parameter lies in `[lo, hi]`, given an
/// observed sample mean and a known scale.
///
/// The sample mean of Cauchy observations is itself Cauchy with the parent's
/// parameters, so `α − mean` is Cauchy(0, scale) and the interval mass is a
/// plain CDF difference around the observed mean.
pub fn location_interval_prob(lo: f64, hi: f64, sample_mean: f64, scale: f64) -> Result<f64> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Domain(format!(
            "interval bounds must be finite, got [{lo}, {hi}]"
        )));
    }
    if lo >= hi {
        return Err(Error::Domain(format!(
            "interval must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    let p =
        CauchyParams::new(sample_mean, scale).map_err(|e| e.at_stage("location_interval_prob"))?;
    Ok(cdf(hi, p) - cdf(lo, p))
}
