//! Path information stored in the detector: optimal guessing probability,
//! accessible information, and how each pairs with coherence.

use coherence_triality::discrimination::{
    accessible_info, bagan_l1, bagan_relent, helstrom_success, DEFAULT_SEARCH_TOL,
};

fn main() -> coherence_triality::Result<()> {
    let p = 0.5;
    println!(
        "{:>7} {:>8} {:>8} {:>10} {:>10}",
        "overlap", "P_s", "Acc", "l1 rel.", "relent rel."
    );
    for k in 0..=10 {
        let s = k as f64 / 10.0;
        println!(
            "{s:>7.2} {:>8.5} {:>8.5} {:>10.6} {:>10.6}",
            helstrom_success(p, s)?,
            accessible_info(p, s, DEFAULT_SEARCH_TOL)?,
            bagan_l1(p, s)?,
            bagan_relent(p, s)?
        );
    }
    Ok(())
}
