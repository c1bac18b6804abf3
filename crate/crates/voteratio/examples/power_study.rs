//! Measure detection power against known ground truth: how often does the
//! detector fire as the injected turnout shift grows from 0σ to 3σ?
//!
//! ```bash
//! cargo run --release -p voteratio --example power_study
//! ```

use voteratio::simulator::{power_study, FraudMode, ScenarioConfig};

fn main() -> voteratio::Result<()> {
    let base = ScenarioConfig {
        n_suspect: 35,
        fraud_mode: FraudMode::TurnoutShift,
        seed: 2_000,
        ..ScenarioConfig::default()
    };
    let n_seeds = 100;
    println!(
        "turnout-shift power study: {} reference + {} suspect constituencies, {n_seeds} seeds per magnitude\n",
        base.n_reference, base.n_suspect
    );
    println!("magnitude  mean_location  detection_rate");
    for row in power_study(&base, &[0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0], n_seeds)? {
        println!(
            "  {:>4.1}σ      {:>8.4}        {:>6.2}%",
            row.magnitude,
            row.mean_location_hat,
            100.0 * row.detection_rate
        );
    }
    println!("\na pure turnout shift leaves the ratio sample symmetric (location ~0)");
    println!("but blows up its scale, which is what the detector picks up.");
    Ok(())
}
