//! Interference visibility of a qubit path state, read off by sweeping the
//! relative phase, compared with its l1 coherence.

use coherence_triality::states::{interferometer_state, InterferometerConfig};
use coherence_triality::triality::fringe_visibility;
use coherence_triality::{coherence, MeasureKind};
use num_complex::Complex64;

fn main() -> coherence_triality::Result<()> {
    for (p, overlap) in [(0.5, 1.0), (0.5, 0.6), (0.2, 0.9), (0.5, 0.0)] {
        let cfg = InterferometerConfig::two_path(p, Complex64::from_polar(overlap, 0.4))?;
        let rho = interferometer_state(&cfg)?;
        let v = fringe_visibility(&rho, 256)?;
        let c = coherence(&rho, MeasureKind::L1Normalized)?;
        println!("p={p:.1} |overlap|={overlap:.1}  visibility {v:.5}  l1 coherence {c:.5}");
    }
    Ok(())
}
