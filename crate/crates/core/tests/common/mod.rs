use coherence_triality::numerics::ComplexMatrix;
use coherence_triality::states::PureState;
use num_complex::Complex64;

/// Dense `S (I (x) C)` on sites `-n..=n`, basis index `2 (x + n) + coin`,
/// coin index 0 moving right and 1 moving left. Amplitude leaving the box
/// is dropped, so callers keep `n` above the step count.
pub fn dense_walk_operator(coin: &ComplexMatrix, n: i64) -> ComplexMatrix {
    let sites = (2 * n + 1) as usize;
    let mut u = ComplexMatrix::zeros(2 * sites, 2 * sites);
    for s in 0..sites {
        for k in 0..2 {
            let target = if k == 0 { s + 1 } else { s.wrapping_sub(1) };
            if target >= sites {
                continue;
            }
            for j in 0..2 {
                u[(2 * target + k, 2 * s + j)] = coin[(k, j)];
            }
        }
    }
    u
}

/// `|0> (x) coin` in the dense basis of [`dense_walk_operator`].
pub fn dense_localized(coin: &PureState, n: i64) -> Vec<Complex64> {
    let mut psi = vec![Complex64::new(0.0, 0.0); (2 * (2 * n + 1)) as usize];
    psi[(2 * n) as usize] = coin.amplitudes()[0];
    psi[(2 * n + 1) as usize] = coin.amplitudes()[1];
    psi
}
