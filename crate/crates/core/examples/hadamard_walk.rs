//! Hadamard walk on the line: coin triality over time, ballistic spreading,
//! and the long-run average of coin coherence.
//!
//! ```bash
//! cargo run --example hadamard_walk -- 2000
//! ```

use coherence_triality::qwalk::{walk_triality_trace, window_averages, WalkConfig};
use coherence_triality::MeasureKind;

fn main() -> coherence_triality::Result<()> {
    let steps: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1000);
    let trace = walk_triality_trace(&WalkConfig::hadamard(steps), &MeasureKind::L1Normalized)?;

    for row in trace.iter().step_by((steps / 10).max(1)) {
        let spread = if row.t > 0 {
            row.var_x / (row.t * row.t) as f64
        } else {
            0.0
        };
        println!(
            "t={:>5} C={:.4} D={:.4} M={:.4} position l1={:.4} var/t^2={spread:.4}",
            row.t, row.coin.wave, row.coin.particle, row.coin.mixedness, row.position_l1
        );
    }

    let wave: Vec<f64> = trace.iter().map(|r| r.coin.wave).collect();
    let window = (steps / 10).max(1);
    println!("windowed C averages from t = {}:", steps / 2);
    for (k, avg) in window_averages(&wave, steps / 2, window).iter().enumerate() {
        println!(
            "  [{}, {}) {avg:.6}",
            steps / 2 + k * window,
            steps / 2 + (k + 1) * window
        );
    }
    Ok(())
}
