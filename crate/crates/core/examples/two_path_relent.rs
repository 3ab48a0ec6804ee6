//! The same two-path sweep under relative-entropy coherence, with the Bloch
//! radius of the path qubit alongside.
//!
//! ```bash
//! cargo run --example two_path_relent
//! ```

use coherence_triality::triality::{relent_sweep, two_path_bloch_radius};

fn main() -> coherence_triality::Result<()> {
    let overlap = 2.0 / 3.0;
    println!("{:>5} {:>8} {:>8} {:>8} {:>8}", "p", "C", "D", "M", "r");
    for r in relent_sweep(overlap, 11)? {
        println!(
            "{:>5.2} {:>8.5} {:>8.5} {:>8.5} {:>8.5}",
            r.p,
            r.wave,
            r.particle,
            r.mixedness,
            r.bloch_radius.unwrap_or(f64::NAN)
        );
    }
    // eigenvalues (1 +- r) / 2 at p = 1/2 are 5/6 and 1/6
    let r = two_path_bloch_radius(0.5, overlap);
    println!(
        "r(1/2) = {r:.6}, eigenvalues {:.6} and {:.6}",
        (1.0 + r) / 2.0,
        (1.0 - r) / 2.0
    );
    Ok(())
}
