//! Run the full analysis pipeline on a returns CSV: reference statistics
//! over the non-suspect regions, normalized-indicator ratios for the
//! suspect constituencies, trimmed Cauchy estimates, and interval
//! probabilities.
//!
//! ```bash
//! cargo run -p voteratio --example analyze_returns
//! ```

use std::path::Path;

use voteratio::csv_io::ingest;
use voteratio::pipeline::{analyze, AnalyzeOptions};
use voteratio::report;

fn main() -> voteratio::Result<()> {
    let data = format!(
        "{}/tests/fixtures/demo_returns.csv",
        env!("CARGO_MANIFEST_DIR")
    );
    let outcome = ingest(Path::new(&data), false)?;
    println!(
        "loaded {} constituencies from {data}\n",
        outcome.records.len()
    );

    let opts = AnalyzeOptions {
        suspect_regions: vec!["suspect".to_string()],
        rejection_levels: vec![1, 3, 7, 9],
        prob_intervals: vec![(-0.1, 0.1)],
        scales: vec![1.0],
        ..AnalyzeOptions::default()
    };
    let analysis = analyze(&outcome.records, &opts)?;

    print!("{}", report::render_text(&analysis));
    println!("\nJSON report (what `voteratio analyze --json` emits):");
    println!("{}", report::to_json(&analysis)?);
    Ok(())
}
