//! Random incoherent channels: every Kraus operator sends basis states to
//! basis states (up to scale), so coherence can only go down, on average
//! even after the outcome is read.

use coherence_triality::channels::random_incoherent_channel;
use coherence_triality::states::random_density;
use coherence_triality::{coherence, MeasureKind};

fn main() -> coherence_triality::Result<()> {
    let rho = random_density(3, 2, 42)?;
    let channel = random_incoherent_channel(3, 3, 7)?;
    println!(
        "{} Kraus operators, completeness error {:.1e}, incoherent: {}",
        channel.kraus_ops().len(),
        channel.completeness_error(),
        channel.is_incoherent(1e-12)
    );
    for m in MeasureKind::ALL {
        let before = coherence(&rho, m)?;
        let after = coherence(&channel.apply(&rho)?, m)?;
        let mut branch_average = 0.0;
        for (p, branch) in channel.selective_apply(&rho)? {
            branch_average += p * coherence(&branch, m)?;
        }
        println!("{m:<10} before {before:.5}  after {after:.5}  branch average {branch_average:.5}");
    }
    Ok(())
}
