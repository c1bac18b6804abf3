//! Build a turnout histogram from a returns CSV and render it as SVG.
//! Turnout above 100% — the signature of stuffed ballot boxes — lands in a
//! visually distinct overflow bin.
//!
//! ```bash
//! cargo run -p voteratio --example turnout_histogram
//! ```

use std::path::Path;

use voteratio::csv_io::ingest;
use voteratio::pipeline::turnout_histogram;
use voteratio::svg::render_histogram_svg;

fn main() -> voteratio::Result<()> {
    let data = format!(
        "{}/tests/fixtures/demo_returns.csv",
        env!("CARGO_MANIFEST_DIR")
    );
    let outcome = ingest(Path::new(&data), false)?;
    let hist = turnout_histogram(&outcome.records, 2.5)?;

    println!(
        "turnout distribution ({} constituencies, 2.5% bins):",
        hist.total
    );
    let max = hist.bins.iter().map(|b| b.count).max().unwrap_or(1);
    for bin in &hist.bins {
        println!(
            "  [{:>5.1}, {:>5.1})  {:<30} {}",
            bin.low,
            bin.low + hist.bin_width,
            "#".repeat(bin.count * 30 / max),
            bin.count
        );
    }
    if hist.overflow_count > 0 {
        println!("  [100.0,   ∞ )  {} over 100%", hist.overflow_count);
    }

    let out = std::env::temp_dir().join("voteratio_turnout.svg");
    std::fs::write(&out, render_histogram_svg(&hist))?;
    println!("\nwrote {}", out.display());
    Ok(())
}
