//! Kraus channels, incoherent operations and a randomized check of the
//! coherence-measure axioms.
//!
//! A Kraus operator is treated as incoherent when every column holds at most
//! one entry above tolerance, so it maps each basis state to a multiple of a
//! basis state.

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::coherence::CoherenceMeasure;
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::states::{dephase, random_density_with, seeded_rng, stream_rng, DensityMatrix};

const COMPLETENESS_TOL: f64 = 1e-10;
const OUTCOME_CUTOFF: f64 = 1e-12;

/// Trace-preserving channel `rho -> sum_l K_l rho K_l†`.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    dim: usize,
    ops: Vec<ComplexMatrix>,
}

impl KrausChannel {
    /// Requires square operators of one dimension with
    /// `sum_l K_l† K_l = I` within `1e-10`.
    pub fn new(ops: Vec<ComplexMatrix>) -> Result<Self> {
        let first = ops
            .first()
            .ok_or_else(|| Error::invalid("kraus_ops", "empty operator list"))?;
        let dim = first.rows();
        for (l, k) in ops.iter().enumerate() {
            if !k.is_square() {
                return Err(Error::invalid(
                    format!("kraus_ops[{l}]"),
                    format!("shape {}x{} is not square", k.rows(), k.cols()),
                ));
            }
            if k.rows() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: k.rows(),
                });
            }
        }
        let channel = KrausChannel { dim, ops };
        let err = channel.completeness_error();
        if err > COMPLETENESS_TOL {
            return Err(Error::invalid(
                "kraus_ops",
                format!("sum K_l^dagger K_l deviates from I by {err:e}"),
            ));
        }
        Ok(channel)
    }

    pub fn identity(dim: usize) -> Self {
        KrausChannel {
            dim,
            ops: vec![ComplexMatrix::identity(dim)],
        }
    }

    /// Complete dephasing, `K_i = |i><i|`.
    pub fn dephasing(dim: usize) -> Self {
        let ops = (0..dim)
            .map(|i| {
                let mut k = ComplexMatrix::zeros(dim, dim);
                k[(i, i)] = Complex64::new(1.0, 0.0);
                k
            })
            .collect();
        KrausChannel { dim, ops }
    }

    pub fn unitary(u: ComplexMatrix) -> Result<Self> {
        let err = u.unitarity_error();
        if err > COMPLETENESS_TOL {
            return Err(Error::invalid(
                "unitary",
                format!("U^dagger U deviates from I by {err:e}"),
            ));
        }
        Ok(KrausChannel {
            dim: u.rows(),
            ops: vec![u],
        })
    }

    /// The unitary sending `|j>` to `|perm[j]>`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let d = perm.len();
        let mut seen = vec![false; d];
        for &p in perm {
            if p >= d || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid("permutation", format!("{perm:?} is not a permutation")));
            }
        }
        let u = ComplexMatrix::from_fn(d, d, |i, j| {
            if perm[j] == i {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Ok(KrausChannel { dim: d, ops: vec![u] })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    /// Frobenius deviation of `sum_l K_l† K_l` from the identity.
    pub fn completeness_error(&self) -> f64 {
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.ops {
            acc = &acc + &(&k.adjoint() * k);
        }
        (&acc - &ComplexMatrix::identity(self.dim)).frobenius_norm()
    }

    fn check_input(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        Ok(())
    }

    fn branch(k: &ComplexMatrix, rho: &DensityMatrix) -> ComplexMatrix {
        &(k * rho.matrix()) * &k.adjoint()
    }

    /// `Phi(rho)`, revalidated as a state.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.check_input(rho)?;
        let mut acc = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.ops {
            acc = &acc + &Self::branch(k, rho);
        }
        DensityMatrix::new(acc)
    }

    /// Outcomes `(p_l, K_l rho K_l† / p_l)` of the selective measurement,
    /// dropping outcomes with `p_l < 1e-12`.
    pub fn selective_apply(&self, rho: &DensityMatrix) -> Result<Vec<(f64, DensityMatrix)>> {
        self.check_input(rho)?;
        let mut outcomes = Vec::with_capacity(self.ops.len());
        for k in &self.ops {
            let b = Self::branch(k, rho);
            let p = b.trace().re;
            if p < OUTCOME_CUTOFF {
                continue;
            }
            outcomes.push((p, DensityMatrix::new(b.scale(Complex64::new(1.0 / p, 0.0)))?));
        }
        Ok(outcomes)
    }

    /// Every Kraus operator has at most one entry of magnitude above `tol`
    /// in each column.
    pub fn is_incoherent(&self, tol: f64) -> bool {
        self.ops
            .iter()
            .all(|k| (0..k.cols()).all(|j| (0..k.rows()).filter(|&i| k[(i, j)].norm() > tol).count() <= 1))
    }
}

/// Samples an incoherent channel with `n_kraus` operators.
///
/// The columns are split into random groups of at most `n_kraus` columns.
/// Operator `l` sends every column of a group to one row, with distinct
/// groups going to distinct rows (a fresh random injection per operator).
/// The amplitudes of a group's columns across the `n_kraus` operators are
/// the columns of a random `n_kraus x |group|` isometry, which makes
/// `sum_l K_l† K_l = I`. Singleton groups give permutation-with-weights
/// operators; larger groups merge paths the way a measure-and-prepare step
/// does.
pub fn random_incoherent_channel_with<R: Rng + ?Sized>(
    dim: usize,
    n_kraus: usize,
    rng: &mut R,
) -> Result<KrausChannel> {
    if dim == 0 {
        return Err(Error::invalid("dim", "must be positive"));
    }
    if n_kraus == 0 {
        return Err(Error::invalid("n_kraus", "must be at least 1"));
    }
    let mut cols: Vec<usize> = (0..dim).collect();
    cols.shuffle(rng);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut rest = &cols[..];
    while !rest.is_empty() {
        let size = rng.random_range(1..=n_kraus.min(rest.len()));
        groups.push(rest[..size].to_vec());
        rest = &rest[size..];
    }

    let mut ops = vec![ComplexMatrix::zeros(dim, dim); n_kraus];
    let targets: Vec<Vec<usize>> = (0..n_kraus)
        .map(|_| {
            let mut rows: Vec<usize> = (0..dim).collect();
            rows.shuffle(rng);
            rows
        })
        .collect();
    for (g, group) in groups.iter().enumerate() {
        let amps = random_isometry(n_kraus, group.len(), rng);
        for (l, op) in ops.iter_mut().enumerate() {
            let row = targets[l][g];
            for (c, &col) in group.iter().enumerate() {
                op[(row, col)] = amps[(l, c)];
            }
        }
    }
    KrausChannel::new(ops)
}

pub fn random_incoherent_channel(dim: usize, n_kraus: usize, seed: u64) -> Result<KrausChannel> {
    random_incoherent_channel_with(dim, n_kraus, &mut seeded_rng(seed))
}

/// `rows x cols` matrix with orthonormal columns (Gaussian + Gram-Schmidt).
fn random_isometry<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    debug_assert!(cols <= rows);
    let mut m = ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    for j in 0..cols {
        // two passes keep the columns orthogonal to machine precision
        for _ in 0..2 {
            for k in 0..j {
                let dot: Complex64 = (0..rows).map(|i| m[(i, k)].conj() * m[(i, j)]).sum();
                for i in 0..rows {
                    let v = m[(i, k)];
                    m[(i, j)] -= dot * v;
                }
            }
        }
        let norm = (0..rows).map(|i| m[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..rows {
            m[(i, j)] /= norm;
        }
    }
    m
}

/// Worst violation margins of the coherence axioms over random trials.
///
/// A margin is positive when the axiom is violated; negative maxima are
/// reported as zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub measure: String,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    /// `C(dephase(rho))`.
    pub worst_c1: f64,
    /// `C(Phi(rho)) - C(rho)`.
    pub worst_c2a: f64,
    /// `sum_l p_l C(rho_l) - C(rho)`.
    pub worst_c2b: f64,
    /// `C(sum_k q_k rho_k) - sum_k q_k C(rho_k)`.
    pub worst_c3: f64,
    /// Trial index (the sub-stream of `seed`) attaining each worst margin.
    pub worst_trial_c1: u64,
    pub worst_trial_c2a: u64,
    pub worst_trial_c2b: u64,
    pub worst_trial_c3: u64,
}

impl AxiomReport {
    pub fn worst_margin(&self) -> f64 {
        self.worst_c1.max(self.worst_c2a).max(self.worst_c2b).max(self.worst_c3)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.worst_margin() <= tol
    }
}

#[derive(Clone, Copy)]
struct Worst {
    margin: f64,
    trial: u64,
}

impl Worst {
    fn new() -> Self {
        Worst {
            margin: f64::NEG_INFINITY,
            trial: 0,
        }
    }

    fn update(&mut self, margin: f64, trial: u64) {
        if margin > self.margin {
            *self = Worst { margin, trial };
        }
    }
}

/// Draws `trials` random `(state, incoherent channel, mixture)` samples in
/// dimension `dim` and records the worst margin for each axiom.
///
/// Trial `t` draws from sub-stream `t` of `seed`, so a reported worst case
/// can be replayed alone.
pub fn check_axioms<M: CoherenceMeasure + ?Sized>(m: &M, dim: usize, trials: usize, seed: u64) -> Result<AxiomReport> {
    if trials == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    if dim < 2 {
        return Err(Error::invalid("dim", format!("{dim} is below 2")));
    }
    let mut worst = [Worst::new(); 4];
    for t in 0..trials as u64 {
        let margins = axiom_trial(m, dim, &mut stream_rng(seed, t))?;
        for (w, margin) in worst.iter_mut().zip(margins) {
            w.update(margin, t);
        }
    }
    Ok(AxiomReport {
        measure: m.name(),
        dim,
        trials,
        seed,
        worst_c1: worst[0].margin.max(0.0),
        worst_c2a: worst[1].margin.max(0.0),
        worst_c2b: worst[2].margin.max(0.0),
        worst_c3: worst[3].margin.max(0.0),
        worst_trial_c1: worst[0].trial,
        worst_trial_c2a: worst[1].trial,
        worst_trial_c2b: worst[2].trial,
        worst_trial_c3: worst[3].trial,
    })
}

fn axiom_trial<M: CoherenceMeasure + ?Sized, R: Rng + ?Sized>(m: &M, dim: usize, rng: &mut R) -> Result<[f64; 4]> {
    let rank = rng.random_range(1..=dim);
    let rho = random_density_with(dim, rank, rng)?;
    let n_kraus = rng.random_range(1..=dim + 1);
    let channel = random_incoherent_channel_with(dim, n_kraus, rng)?;
    let c_rho = m.evaluate(&rho)?;

    let c1 = m.evaluate(&dephase(&rho))?;
    let c2a = m.evaluate(&channel.apply(&rho)?)? - c_rho;
    let mut averaged = 0.0;
    for (p, branch) in channel.selective_apply(&rho)? {
        averaged += p * m.evaluate(&branch)?;
    }
    let c2b = averaged - c_rho;

    let parts = (0..3)
        .map(|_| {
            let r = rng.random_range(1..=dim);
            random_density_with(dim, r, rng)
        })
        .collect::<Result<Vec<_>>>()?;
    let raw: Vec<f64> = (0..3).map(|_| rng.random_range(0.01..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    let mix = DensityMatrix::mixture(&weights.iter().copied().zip(parts.iter()).collect::<Vec<_>>())?;
    let mut convex = 0.0;
    for (w, part) in weights.iter().zip(&parts) {
        convex += w * m.evaluate(part)?;
    }
    let c3 = m.evaluate(&mix)? - convex;
    Ok([c1, c2a, c2b, c3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherence::{coherence, MeasureKind};
    use crate::states::{random_density, PureState};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn identity_and_dephasing() {
        let rho = random_density(3, 3, 4).unwrap();
        let out = KrausChannel::identity(3).apply(&rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-15);
        let out = KrausChannel::dephasing(3).apply(&rho).unwrap();
        assert!(out.matrix().max_abs_diff(dephase(&rho).matrix()) < 1e-15);
    }

    #[test]
    fn permutation_preserves_coherence() {
        let rho = random_density(4, 2, 8).unwrap();
        let ch = KrausChannel::permutation(&[2, 0, 3, 1]).unwrap();
        let out = ch.apply(&rho).unwrap();
        for m in MeasureKind::ALL {
            assert!((coherence(&out, m).unwrap() - coherence(&rho, m).unwrap()).abs() < 1e-12);
        }
        assert!(KrausChannel::permutation(&[0, 0]).is_err());
    }

    #[test]
    fn selective_outcomes() {
        let out = KrausChannel::dephasing(2)
            .selective_apply(&DensityMatrix::maximally_mixed(2))
            .unwrap();
        assert_eq!(out.len(), 2);
        for (i, (p, r)) in out.iter().enumerate() {
            assert!((p - 0.5).abs() < 1e-15);
            assert!((r.get(i, i).re - 1.0).abs() < 1e-15);
        }
        let h = ComplexMatrix::from_row_major(2, 2, vec![c(1.), c(1.), c(1.), c(-1.)])
            .unwrap()
            .scale(c(0.5f64.sqrt()));
        let out = KrausChannel::unitary(h)
            .unwrap()
            .selective_apply(&random_density(2, 2, 1).unwrap())
            .unwrap();
        assert_eq!(out.len(), 1);
        assert!((out[0].0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn selective_resums_to_apply() {
        for seed in 0..50 {
            let ch = random_incoherent_channel(4, 3, seed).unwrap();
            let rho = random_density(4, 3, 1000 + seed).unwrap();
            let outcomes = ch.selective_apply(&rho).unwrap();
            let total: f64 = outcomes.iter().map(|(p, _)| p).sum();
            assert!((total - 1.0).abs() < 1e-10);
            let mut acc = ComplexMatrix::zeros(4, 4);
            for (p, r) in &outcomes {
                acc = &acc + &r.matrix().scale(c(*p));
            }
            assert!(acc.max_abs_diff(ch.apply(&rho).unwrap().matrix()) < 1e-10);
        }
    }

    #[test]
    fn incoherence_check() {
        assert!(KrausChannel::dephasing(3).is_incoherent(1e-12));
        assert!(KrausChannel::permutation(&[1, 2, 0]).unwrap().is_incoherent(1e-12));
        let h = ComplexMatrix::from_row_major(2, 2, vec![c(1.), c(1.), c(1.), c(-1.)])
            .unwrap()
            .scale(c(0.5f64.sqrt()));
        assert!(!KrausChannel::unitary(h).unwrap().is_incoherent(1e-12));
    }

    #[test]
    fn sampled_channels_are_complete_and_incoherent() {
        for seed in 0..200 {
            let d = 2 + (seed as usize % 4);
            let n = 1 + (seed as usize % 5);
            let ch = random_incoherent_channel(d, n, seed).unwrap();
            assert_eq!(ch.kraus_ops().len(), n);
            assert!(ch.completeness_error() < 1e-12);
            assert!(ch.is_incoherent(1e-12));
        }
        let a = random_incoherent_channel(3, 2, 5).unwrap();
        let b = random_incoherent_channel(3, 2, 5).unwrap();
        assert_eq!(a.kraus_ops(), b.kraus_ops());
    }

    #[test]
    fn sampled_channels_keep_diagonal_states_diagonal() {
        for seed in 0..100 {
            let ch = random_incoherent_channel(4, 3, seed).unwrap();
            let rho = dephase(&random_density(4, 4, seed + 500).unwrap());
            let out = ch.apply(&rho).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        assert!(out.get(i, j).norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn sampler_reaches_path_merging_operators() {
        // some operator must send two columns to the same row
        let merged = (0..50).any(|seed| {
            random_incoherent_channel(3, 3, seed)
                .unwrap()
                .kraus_ops()
                .iter()
                .any(|k| (0..3).any(|i| (0..3).filter(|&j| k[(i, j)].norm() > 1e-12).count() > 1))
        });
        assert!(merged);
    }

    #[test]
    fn apply_validates() {
        let bad = vec![ComplexMatrix::identity(2).scale(c(0.5))];
        assert!(KrausChannel::new(bad).is_err());
        assert!(KrausChannel::new(vec![]).is_err());
        assert!(KrausChannel::identity(2)
            .apply(&PureState::uniform(3).to_density())
            .is_err());
    }

    #[test]
    fn l1_axioms_hold_small_run() {
        let r = check_axioms(&MeasureKind::L1Normalized, 3, 100, 1).unwrap();
        assert!(r.passes(1e-9), "{r:?}");
        assert_eq!(r.trials, 100);
    }
}
