//! Three-path interferometer built from explicit detector states, saved as
//! JSON and read back the way the `wpd triality` command does.

use coherence_triality::states::{interferometer_state, state_from_json, DensityMatrixFile, InterferometerConfig};
use coherence_triality::{triality, MeasureKind};
use num_complex::Complex64;

fn main() -> coherence_triality::Result<()> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let h = 0.5f64.sqrt();
    // the first two paths share a detector state, the third is half distinguishable
    let detectors = vec![
        vec![c(1.0, 0.0), c(0.0, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 0.0)],
        vec![c(h, 0.0), c(0.0, h)],
    ];
    let cfg = InterferometerConfig::from_detector_states(vec![0.5, 0.3, 0.2], &detectors)?;
    let rho = interferometer_state(&cfg)?;

    let json = serde_json::to_string(&DensityMatrixFile::from_state(&rho))?;
    println!("{json}");
    let back = state_from_json(&json)?;

    for m in MeasureKind::NORMALIZED {
        let r = triality(&back, &m)?;
        println!(
            "{:<6} C={:.5} D={:.5} M={:.5}",
            m.as_str(),
            r.wave,
            r.particle,
            r.mixedness
        );
    }
    Ok(())
}
