//! C, D and M of random mixed states in several dimensions, under both
//! normalized measures. The lift never has less coherence than the state.

use coherence_triality::states::{lift, random_density};
use coherence_triality::{coherence, triality, MeasureKind};

fn main() -> coherence_triality::Result<()> {
    for d in 2..=5 {
        for rank in 1..=d {
            let rho = random_density(d, rank, rank as u64)?;
            for m in MeasureKind::NORMALIZED {
                let r = triality(&rho, &m)?;
                let gap = coherence(&lift(&rho), m)? - coherence(&rho, m)?;
                println!(
                    "d={d} rank={rank} {:<6} C={:.4} D={:.4} M={:.4} sum-1={:+.1e} lift gap={gap:.4}",
                    m.as_str(),
                    r.wave,
                    r.particle,
                    r.mixedness,
                    r.sum - 1.0
                );
            }
        }
    }
    Ok(())
}
