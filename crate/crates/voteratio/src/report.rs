//! Deterministic report rendering: JSON with fixed-precision floats and a
//! human-readable text summary.

use std::io;

use serde::Serialize;

use crate::error::Result;
use crate::pipeline::AnalysisReport;

/// Serialize as compact JSON with every float rendered at six decimal
/// places. Identical inputs produce identical bytes regardless of locale.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SixDecimalFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json emits valid UTF-8"))
}

struct SixDecimalFormatter;

impl serde_json::ser::Formatter for SixDecimalFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.6}")
    }
}

/// Plain-text summary of an analysis report.
pub fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    let r = &report.reference;
    out.push_str(&format!(
        "reference population: {} constituencies (excluded regions: {})\n",
        r.n_used,
        if r.excluded_regions.is_empty() {
            "none".to_string()
        } else {
            r.excluded_regions.join(", ")
        }
    ));
    out.push_str(&format!(
        "  turnout      mean {:>8.3}%  variance {:>9.3}  sigma {:>7.3}\n",
        r.turnout.mean, r.turnout.variance, r.turnout.sigma
    ));
    out.push_str(&format!(
        "  against-all  mean {:>8.3}%  variance {:>9.3}  sigma {:>7.3}\n",
        r.against_all.mean, r.against_all.variance, r.against_all.sigma
    ));
    out.push_str(&format!(
        "ratio sample: {} values, untrimmed mean {:.6}\n",
        report.ratios.len(),
        report.sample_mean
    ));
    out.push_str("estimates by rejection level (null expects location 0, scale 1):\n");
    out.push_str("  reject   location      scale\n");
    for row in &report.sweep {
        out.push_str(&format!(
            "  {:>6}   {:>8.4}   {:>8.4}\n",
            row.rejected_total, row.location_hat, row.scale_hat
        ));
    }
    out.push_str("location interval probabilities (sample-mean device):\n");
    for p in &report.probabilities {
        out.push_str(&format!(
            "  [{:>8.4}, {:>8.4}]  scale {:>6.3}  p = {:.6}\n",
            p.interval[0], p.interval[1], p.scale, p.probability
        ));
    }
    if report.flags.is_empty() {
        out.push_str("flags: none\n");
    } else {
        out.push_str(&format!("flags: {}\n", report.flags.len()));
        for f in &report.flags {
            out.push_str(&format!(
                "  [{}] {}{}\n",
                flag_code_name(f.code),
                f.constituency
                    .as_deref()
                    .map(|c| format!("{c}: "))
                    .unwrap_or_default(),
                f.detail
            ));
        }
    }
    out
}

fn flag_code_name(code: crate::pipeline::FlagCode) -> &'static str {
    match code {
        crate::pipeline::FlagCode::TurnoutOver100 => "turnout_gt_100",
        crate::pipeline::FlagCode::DegenerateDenominator => "degenerate_denominator",
        crate::pipeline::FlagCode::ClampedDraw => "clamped_draw",
    }
}
