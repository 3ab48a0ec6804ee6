//! Quantum states in a fixed path basis `|1>, ..., |d>`.
//!
//! [`DensityMatrix`] is validated on construction (Hermitian, unit trace,
//! positive semidefinite up to `1e-10`) and keeps its eigendecomposition.
//! Random ensembles draw from [`ChaCha8Rng`], a portable generator whose
//! output stream is fixed for a given `u64` seed on every platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{self, eig_hermitian, ComplexMatrix, Spectrum, EIGEN_CLAMP};

const TRACE_TOL: f64 = 1e-10;
const PURE_NORM_TOL: f64 = 1e-12;
/// Negative eigenvalues above this are treated as rounding noise.
const ROUNDING_NEGATIVE: f64 = 1e-14;

/// Seeded generator used for every random ensemble in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent sub-stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A `d x d` density matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    spectrum: Spectrum,
}

impl DensityMatrix {
    /// Validates `matrix` as a state.
    ///
    /// The Hermitian part is kept. Eigenvalues in `[-1e-10, 0)` are clamped to
    /// zero and the trace renormalized; anything further out is rejected.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        matrix.check_hermitian()?;
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::invalid(
                "density matrix",
                format!("trace is {trace}, expected 1"),
            ));
        }
        let herm = matrix.hermitian_part();
        let spectrum = eig_hermitian(&herm)?;
        let min = spectrum.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -EIGEN_CLAMP {
            return Err(Error::invalid(
                "density matrix",
                format!("eigenvalue {min:e} is negative beyond 1e-10"),
            ));
        }
        if min >= 0.0 {
            return Ok(DensityMatrix { matrix: herm, spectrum });
        }
        if min >= -ROUNDING_NEGATIVE {
            // rounding noise: fix the spectrum but leave the entries alone
            let eigenvalues = spectrum.eigenvalues.iter().map(|l| l.max(0.0)).collect();
            return Ok(DensityMatrix {
                matrix: herm,
                spectrum: Spectrum {
                    eigenvalues,
                    eigenvectors: spectrum.eigenvectors,
                },
            });
        }
        let clamped: Vec<f64> = spectrum.eigenvalues.iter().map(|l| l.max(0.0)).collect();
        let total: f64 = clamped.iter().sum();
        let eigenvalues: Vec<f64> = clamped.iter().map(|l| l / total).collect();
        let spectrum = Spectrum {
            eigenvalues,
            eigenvectors: spectrum.eigenvectors,
        };
        Ok(DensityMatrix {
            matrix: spectrum.reconstruct().hermitian_part(),
            spectrum,
        })
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let a = psi.amplitudes();
        DensityMatrix::new(ComplexMatrix::outer(a, a)).expect("projector onto a unit vector is a state")
    }

    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        numerics::check_probability_vector("diagonal", probs)?;
        DensityMatrix::new(ComplexMatrix::from_real_diagonal(probs))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix::from_diagonal(&vec![1.0 / dim as f64; dim]).expect("uniform distribution")
    }

    /// Convex combination `sum_k w_k rho_k`.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let weights: Vec<f64> = parts.iter().map(|(w, _)| *w).collect();
        numerics::check_probability_vector("mixture weights", &weights)?;
        let dim = parts[0].1.dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (w, rho) in parts {
            if rho.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: rho.dim(),
                });
            }
            acc = &acc + &rho.matrix.scale(Complex64::new(*w, 0.0));
        }
        DensityMatrix::new(acc)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    /// Populations `rho_ii`.
    pub fn diagonal(&self) -> Vec<f64> {
        self.matrix.diagonal().iter().map(|z| z.re).collect()
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn purity(&self) -> f64 {
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Number of eigenvalues above `1e-10`.
    pub fn rank(&self) -> usize {
        self.spectrum.eigenvalues.iter().filter(|&&l| l > 1e-10).count()
    }

    /// `U rho U†` for a unitary `U`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.rows() != self.dim() || !u.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.rows(),
            });
        }
        DensityMatrix::new(&(u * &self.matrix) * &u.adjoint())
    }
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Requires unit norm within `1e-12`.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::invalid("amplitudes", "empty"));
        }
        let norm2: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm2.is_finite() || (norm2 - 1.0).abs() > PURE_NORM_TOL {
            return Err(Error::invalid(
                "amplitudes",
                format!("squared norm is {norm2}, expected 1"),
            ));
        }
        Ok(PureState { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::invalid("amplitudes", "vector has zero or non-finite norm"));
        }
        Ok(PureState {
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut a = vec![Complex64::new(0.0, 0.0); dim];
        a[index] = Complex64::new(1.0, 0.0);
        PureState { amplitudes: a }
    }

    /// `sum_i |i> / sqrt(d)`.
    pub fn uniform(dim: usize) -> Self {
        PureState {
            amplitudes: vec![Complex64::new(1.0 / (dim as f64).sqrt(), 0.0); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }
}

/// Path probabilities and detector overlaps of a `d`-path interferometer.
///
/// `detector_gram[(i, j)]` is `<eta_i|eta_j>`.
#[derive(Debug, Clone)]
pub struct InterferometerConfig {
    path_probs: Vec<f64>,
    detector_gram: ComplexMatrix,
}

impl InterferometerConfig {
    pub fn new(path_probs: Vec<f64>, detector_gram: ComplexMatrix) -> Result<Self> {
        numerics::check_probability_vector("path_probs", &path_probs)?;
        let d = path_probs.len();
        if detector_gram.rows() != d || detector_gram.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: detector_gram.rows(),
            });
        }
        detector_gram.check_hermitian()?;
        for i in 0..d {
            let g = detector_gram[(i, i)];
            if (g - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
                return Err(Error::invalid(
                    format!("detector_gram[{i}][{i}]"),
                    format!("diagonal entry {g} is not 1"),
                ));
            }
        }
        let spectrum = eig_hermitian(&detector_gram)?;
        if let Some(&min) = spectrum.eigenvalues.last() {
            if min < -1e-10 {
                return Err(Error::invalid(
                    "detector_gram",
                    format!("not positive semidefinite (eigenvalue {min:e})"),
                ));
            }
        }
        Ok(InterferometerConfig {
            path_probs,
            detector_gram: detector_gram.hermitian_part(),
        })
    }

    /// Builds the Gram matrix from explicit detector vectors, each normalized.
    pub fn from_detector_states(path_probs: Vec<f64>, detectors: &[Vec<Complex64>]) -> Result<Self> {
        if detectors.len() != path_probs.len() {
            return Err(Error::DimensionMismatch {
                expected: path_probs.len(),
                found: detectors.len(),
            });
        }
        let states = detectors
            .iter()
            .map(|v| PureState::new(v.clone()))
            .collect::<Result<Vec<_>>>()?;
        if let Some(s) = states.iter().find(|s| s.dim() != states[0].dim()) {
            return Err(Error::DimensionMismatch {
                expected: states[0].dim(),
                found: s.dim(),
            });
        }
        let d = states.len();
        let gram = ComplexMatrix::from_fn(d, d, |i, j| {
            states[i]
                .amplitudes()
                .iter()
                .zip(states[j].amplitudes())
                .map(|(a, b)| a.conj() * b)
                .sum()
        });
        InterferometerConfig::new(path_probs, gram)
    }

    /// Two paths with priors `(p, 1-p)` and `<eta_1|eta_2> = overlap`.
    pub fn two_path(p: f64, overlap: Complex64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid("prior", format!("{p} outside [0, 1]")));
        }
        if overlap.norm().is_nan() || overlap.norm() > 1.0 + 1e-12 {
            return Err(Error::invalid("overlap", format!("|{overlap}| exceeds 1")));
        }
        let one = Complex64::new(1.0, 0.0);
        let gram = ComplexMatrix::from_row_major(2, 2, vec![one, overlap, overlap.conj(), one])?;
        InterferometerConfig::new(vec![p, 1.0 - p], gram)
    }

    pub fn dim(&self) -> usize {
        self.path_probs.len()
    }

    pub fn path_probs(&self) -> &[f64] {
        &self.path_probs
    }

    pub fn detector_gram(&self) -> &ComplexMatrix {
        &self.detector_gram
    }
}

/// Reduced path state after the detector is traced out:
/// `rho_ij = sqrt(p_i p_j) <eta_j|eta_i>`.
pub fn interferometer_state(cfg: &InterferometerConfig) -> Result<DensityMatrix> {
    let p = cfg.path_probs();
    let g = cfg.detector_gram();
    let m = ComplexMatrix::from_fn(cfg.dim(), cfg.dim(), |i, j| g[(j, i)] * (p[i] * p[j]).sqrt());
    DensityMatrix::new(m)
}

/// The pure state `sum_i sqrt(rho_ii) |i>` sharing the diagonal of `rho`.
pub fn diagonal_pure_state(rho: &DensityMatrix) -> PureState {
    let amps: Vec<Complex64> = rho
        .diagonal()
        .iter()
        .map(|&x| Complex64::new(x.max(0.0).sqrt(), 0.0))
        .collect();
    // populations of a validated state sum to 1 up to roundoff
    PureState::normalized(amps).expect("populations of a state are not all zero")
}

/// `|rho><rho|` for the diagonal pure state of `rho`.
pub fn lift(rho: &DensityMatrix) -> DensityMatrix {
    diagonal_pure_state(rho).to_density()
}

/// Removes all off-diagonal entries.
pub fn dephase(rho: &DensityMatrix) -> DensityMatrix {
    // populations may carry roundoff of order 1e-17 below zero
    let diag: Vec<f64> = rho.diagonal().iter().map(|x| x.max(0.0)).collect();
    DensityMatrix::new(ComplexMatrix::from_real_diagonal(&diag)).expect("diagonal of a state is a distribution")
}

/// Real Bloch vector of a qubit, `rho = (I + r . sigma) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl BlochVector {
    pub fn new(r1: f64, r2: f64, r3: f64) -> Result<Self> {
        let b = BlochVector { r1, r2, r3 };
        if b.length().is_nan() || b.length() > 1.0 + 1e-10 {
            return Err(Error::invalid(
                "bloch vector",
                format!("length {} exceeds 1", b.length()),
            ));
        }
        Ok(b)
    }

    pub fn length(&self) -> f64 {
        (self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3).sqrt()
    }
}

pub fn from_bloch(b: &BlochVector) -> DensityMatrix {
    let half = |re: f64, im: f64| Complex64::new(re / 2.0, im / 2.0);
    let m = ComplexMatrix::from_row_major(
        2,
        2,
        vec![
            half(1.0 + b.r3, 0.0),
            half(b.r1, -b.r2),
            half(b.r1, b.r2),
            half(1.0 - b.r3, 0.0),
        ],
    )
    .expect("finite entries");
    DensityMatrix::new(m).expect("Bloch vectors of length <= 1 give states")
}

/// `r_k = Tr(rho sigma_k)`.
pub fn to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rho.dim(),
        });
    }
    // rho_21 = (r1 + i r2) / 2
    let off = rho.get(1, 0);
    Ok(BlochVector {
        r1: 2.0 * off.re,
        r2: 2.0 * off.im,
        r3: rho.get(0, 0).re - rho.get(1, 1).re,
    })
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `G G† / Tr(G G†)` with `G` a `d x rank` complex Gaussian matrix.
pub fn random_density_with<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> Result<DensityMatrix> {
    if dim == 0 {
        return Err(Error::invalid("dim", "must be positive"));
    }
    if rank == 0 || rank > dim {
        return Err(Error::invalid("rank", format!("{rank} outside 1..={dim}")));
    }
    let g = ComplexMatrix::from_fn(dim, rank, |_, _| complex_gaussian(rng));
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    DensityMatrix::new(w.scale(Complex64::new(1.0 / tr, 0.0)))
}

pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_with(dim, rank, &mut seeded_rng(seed))
}

/// Haar-random pure state from a normalized complex Gaussian vector.
pub fn random_pure_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<PureState> {
    if dim == 0 {
        return Err(Error::invalid("dim", "must be positive"));
    }
    PureState::normalized((0..dim).map(|_| complex_gaussian(rng)).collect())
}

pub fn random_pure(dim: usize, seed: u64) -> Result<PureState> {
    random_pure_with(dim, &mut seeded_rng(seed))
}

/// `{"dim": d, "re": [[...]], "im": [[...]]}`; `im` defaults to zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityMatrixFile {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

/// `{"probs": [...], "gram_re": [[...]], "gram_im": [[...]]}`; `gram_im`
/// defaults to zero.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InterferometerFile {
    pub probs: Vec<f64>,
    pub gram_re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram_im: Option<Vec<Vec<f64>>>,
}

fn assemble(name: &str, dim: usize, re: &[Vec<f64>], im: Option<&[Vec<f64>]>) -> Result<ComplexMatrix> {
    let check = |part: &str, m: &[Vec<f64>]| -> Result<()> {
        if m.len() != dim {
            return Err(Error::invalid(
                format!("{name}.{part}"),
                format!("has {} rows, expected {dim}", m.len()),
            ));
        }
        for (i, row) in m.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::invalid(
                    format!("{name}.{part} row {i}"),
                    format!("has {} columns, expected {dim}", row.len()),
                ));
            }
            if let Some(j) = row.iter().position(|x| !x.is_finite()) {
                return Err(Error::invalid(
                    format!("{name}.{part} row {i} column {j}"),
                    "not a finite number",
                ));
            }
        }
        Ok(())
    };
    check("re", re)?;
    if let Some(im) = im {
        check("im", im)?;
    }
    Ok(ComplexMatrix::from_fn(dim, dim, |i, j| {
        Complex64::new(re[i][j], im.map_or(0.0, |m| m[i][j]))
    }))
}

impl DensityMatrixFile {
    pub fn to_state(&self) -> Result<DensityMatrix> {
        if self.dim == 0 {
            return Err(Error::invalid("dim", "must be positive"));
        }
        DensityMatrix::new(assemble("state", self.dim, &self.re, self.im.as_deref())?)
    }

    pub fn from_state(rho: &DensityMatrix) -> Self {
        let d = rho.dim();
        let part = |f: fn(Complex64) -> f64| (0..d).map(|i| (0..d).map(|j| f(rho.get(i, j))).collect()).collect();
        DensityMatrixFile {
            dim: d,
            re: part(|z| z.re),
            im: Some(part(|z| z.im)),
        }
    }
}

impl InterferometerFile {
    pub fn to_config(&self) -> Result<InterferometerConfig> {
        let d = self.probs.len();
        if d == 0 {
            return Err(Error::invalid("probs", "empty"));
        }
        let gram = assemble("gram", d, &self.gram_re, self.gram_im.as_deref())?;
        InterferometerConfig::new(self.probs.clone(), gram)
    }
}

/// Reads either file format and returns the path state.
pub fn state_from_json(text: &str) -> Result<DensityMatrix> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("probs").is_some() {
        let file: InterferometerFile = serde_json::from_value(value)?;
        interferometer_state(&file.to_config()?)
    } else {
        let file: DensityMatrixFile = serde_json::from_value(value)?;
        file.to_state()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn indistinguishable_detectors_keep_full_coherence() {
        let cfg = InterferometerConfig::two_path(0.5, c(1.0, 0.0)).unwrap();
        let rho = interferometer_state(&cfg).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((rho.get(i, j) - c(0.5, 0.0)).norm() < 1e-15);
            }
        }
        assert_eq!(rho.rank(), 1);
    }

    #[test]
    fn orthogonal_detectors_decohere() {
        let cfg = InterferometerConfig::two_path(0.5, c(0.0, 0.0)).unwrap();
        let rho = interferometer_state(&cfg).unwrap();
        assert!(rho.get(0, 1).norm() < 1e-15);
        assert!((rho.get(0, 0).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn partial_overlap_off_diagonal() {
        let cfg = InterferometerConfig::two_path(0.5, c(1.0 / 3.0, 0.0)).unwrap();
        let rho = interferometer_state(&cfg).unwrap();
        assert!((rho.get(0, 1).norm() - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn index_order_follows_ket_bra() {
        // rho_12 = sqrt(p1 p2) <eta_2|eta_1> = conj(gram_12) * sqrt(p1 p2)
        let cfg = InterferometerConfig::two_path(0.5, c(0.0, 0.5)).unwrap();
        let rho = interferometer_state(&cfg).unwrap();
        assert!((rho.get(0, 1) - c(0.0, -0.25)).norm() < 1e-15);
    }

    #[test]
    fn detector_vectors_give_gram() {
        let s = 0.5f64.sqrt();
        let cfg = InterferometerConfig::from_detector_states(
            vec![0.5, 0.5],
            &[vec![c(1., 0.), c(0., 0.)], vec![c(s, 0.), c(0., s)]],
        )
        .unwrap();
        assert!((cfg.detector_gram()[(0, 1)] - c(s, 0.0)).norm() < 1e-15);
        assert!((cfg.detector_gram()[(1, 0)] - c(s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn config_validation() {
        let one = c(1., 0.);
        let bad_diag = ComplexMatrix::from_row_major(2, 2, vec![c(0.9, 0.), c(0., 0.), c(0., 0.), one]).unwrap();
        assert!(InterferometerConfig::new(vec![0.5, 0.5], bad_diag).is_err());
        let not_psd = ComplexMatrix::from_row_major(2, 2, vec![one, c(2., 0.), c(2., 0.), one]).unwrap();
        assert!(InterferometerConfig::new(vec![0.5, 0.5], not_psd).is_err());
        assert!(InterferometerConfig::new(vec![0.7, 0.7], ComplexMatrix::identity(2)).is_err());
    }

    #[test]
    fn diagonal_pure_state_cases() {
        let s = diagonal_pure_state(&DensityMatrix::maximally_mixed(2));
        for a in s.amplitudes() {
            assert!((a - c(0.5f64.sqrt(), 0.0)).norm() < 1e-15);
        }
        let s = diagonal_pure_state(&DensityMatrix::from_diagonal(&[1.0, 0.0, 0.0]).unwrap());
        assert_eq!(s, PureState::basis(3, 0));
        let cfg = InterferometerConfig::two_path(0.3, c(0.2, 0.1)).unwrap();
        let s = diagonal_pure_state(&interferometer_state(&cfg).unwrap());
        assert!((s.amplitudes()[0].re - 0.3f64.sqrt()).abs() < 1e-14);
        assert!((s.amplitudes()[1].re - 0.7f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn dephase_cases() {
        let pure = PureState::uniform(2).to_density();
        let dep = dephase(&pure);
        assert!(dep.get(0, 1).norm() == 0.0);
        assert!((dep.get(0, 0).re - 0.5).abs() < 1e-15);
        let rho = random_density(4, 3, 5).unwrap();
        let once = dephase(&rho);
        assert!(dephase(&once).matrix().max_abs_diff(once.matrix()) == 0.0);
        let diag = DensityMatrix::from_diagonal(&[0.2, 0.3, 0.5]).unwrap();
        assert!(dephase(&diag).matrix().max_abs_diff(diag.matrix()) == 0.0);
    }

    #[test]
    fn bloch_cases() {
        let mixed = from_bloch(&BlochVector::new(0., 0., 0.).unwrap());
        assert!(mixed.matrix().max_abs_diff(DensityMatrix::maximally_mixed(2).matrix()) < 1e-15);
        let up = from_bloch(&BlochVector::new(0., 0., 1.).unwrap());
        assert!((up.get(0, 0).re - 1.0).abs() < 1e-15 && up.get(1, 1).norm() < 1e-15);

        // p = 1/2, real overlap 2/3: r1 = 2 sqrt(1/4) 2/3 = 2/3, r3 = 0
        let cfg = InterferometerConfig::two_path(0.5, c(2.0 / 3.0, 0.0)).unwrap();
        let rho = interferometer_state(&cfg).unwrap();
        let b = to_bloch(&rho).unwrap();
        assert!((b.r1 - 2.0 / 3.0).abs() < 1e-15 && b.r2.abs() < 1e-15 && b.r3.abs() < 1e-15);
        assert!((rho.get(0, 1).re - 1.0 / 3.0).abs() < 1e-15);
        let ev = &rho.spectrum().eigenvalues;
        assert!((ev[0] - 5.0 / 6.0).abs() < 1e-14 && (ev[1] - 1.0 / 6.0).abs() < 1e-14);

        assert!(to_bloch(&DensityMatrix::maximally_mixed(3)).is_err());
        assert!(BlochVector::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn random_density_properties() {
        assert_eq!(
            random_density(3, 2, 42).unwrap().matrix(),
            random_density(3, 2, 42).unwrap().matrix()
        );
        let pure = random_density(4, 1, 9).unwrap();
        assert!((pure.purity() - 1.0).abs() < 1e-10);
        for seed in 0..100 {
            let rho = random_density(4, 4, seed).unwrap();
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-10);
            assert!(rho.matrix().hermitian_asymmetry() < 1e-10);
            assert!(rho.spectrum().eigenvalues[3] >= 0.0);
            assert_eq!(rho.rank(), 4);
        }
        assert_eq!(random_density(5, 2, 1).unwrap().rank(), 2);
        assert!(random_density(3, 0, 1).is_err());
        assert!(random_density(3, 4, 1).is_err());
    }

    #[test]
    fn random_pure_properties() {
        for seed in 0..100 {
            let s = random_pure(5, seed).unwrap();
            let n: f64 = s.amplitudes().iter().map(|a| a.norm_sqr()).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
        assert_eq!(random_pure(3, 8).unwrap(), random_pure(3, 8).unwrap());
        let mut rng = seeded_rng(2024);
        let n = 10_000;
        let mean = (0..n)
            .map(|_| random_pure_with(2, &mut rng).unwrap().amplitudes()[0].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn density_validation_rejects_bad_input() {
        let m = ComplexMatrix::from_real_diagonal(&[0.6, 0.6]);
        assert!(DensityMatrix::new(m).is_err());
        let m = ComplexMatrix::from_real_diagonal(&[1.1, -0.1]);
        assert!(DensityMatrix::new(m).is_err());
        // clamp tiny negative eigenvalue
        let m = ComplexMatrix::from_real_diagonal(&[1.0 + 5e-11, -5e-11]);
        let rho = DensityMatrix::new(m).unwrap();
        assert!(rho.spectrum().eigenvalues[1] == 0.0);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn json_parsing_reports_positions() {
        let ok = r#"{"dim": 2, "re": [[0.5, 0.25], [0.25, 0.5]], "im": [[0, 0], [0, 0]]}"#;
        assert!((state_from_json(ok).unwrap().get(0, 1).re - 0.25).abs() < 1e-15);
        let short = r#"{"dim": 2, "re": [[0.5, 0.25], [0.25]]}"#;
        let err = state_from_json(short).unwrap_err().to_string();
        assert!(err.contains("row 1"), "{err}");
        let cfg = r#"{"probs": [0.5, 0.5], "gram_re": [[1, 0.5], [0.5, 1]]}"#;
        assert!((state_from_json(cfg).unwrap().get(0, 1).re - 0.25).abs() < 1e-15);
        assert!(matches!(state_from_json("{nope"), Err(Error::Json(_))));
    }
}
