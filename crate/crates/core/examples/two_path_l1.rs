//! Wave, particle and mixedness of a two-path interferometer under
//! normalized l1 coherence, swept over the prior of the first path.
//!
//! ```bash
//! cargo run --example two_path_l1 > sweep.csv
//! ```

use coherence_triality::triality::{l1_sweep, l1_two_path_closed_form, write_sweep_csv};

fn main() -> coherence_triality::Result<()> {
    let overlap = 1.0 / 3.0;
    let rows = l1_sweep(overlap, 21)?;

    eprintln!("{:>5} {:>8} {:>8} {:>8}", "p", "C", "D", "M");
    for r in &rows {
        eprintln!("{:>5.2} {:>8.5} {:>8.5} {:>8.5}", r.p, r.wave, r.particle, r.mixedness);
    }
    // equal priors: no predictability, the lost coherence is all mixedness
    let [c, d, m] = l1_two_path_closed_form(0.5, overlap);
    eprintln!("closed form at p = 0.5: C = {c:.6}, D = {d:.6}, M = {m:.6}");

    write_sweep_csv(&mut std::io::stdout().lock(), &rows)?;
    Ok(())
}
