//! Path information from two pure detector states: the optimal guessing
//! probability, the accessible information, and the two known duality
//! relations that pair them with l1 and relative-entropy coherence.
//!
//! The detectors are realized in the plane as `|eta_1> = (1, 0)` and
//! `|eta_2> = (s, sqrt(1 - s^2))` with `s = |<eta_1|eta_2>|`; all quantities
//! depend on the overlap modulus only.

use std::f64::consts::PI;
use std::io::{self, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherence::{coherence, golden_section_min, MeasureKind};
use crate::csv::write_table;
use crate::error::{Error, Result};
use crate::numerics::{shannon_entropy, trace_norm, ComplexMatrix};
use crate::states::{interferometer_state, InterferometerConfig};

/// Bracket scan resolution before the golden-section refinement.
const SCAN_POINTS: usize = 64;
pub const DEFAULT_SEARCH_TOL: f64 = 1e-10;

fn check_inputs(p: f64, overlap: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid("prior", format!("{p} outside [0, 1]")));
    }
    if !(0.0..=1.0).contains(&overlap) {
        return Err(Error::invalid("overlap", format!("{overlap} outside [0, 1]")));
    }
    Ok(())
}

fn detector_states(overlap: f64) -> [[Complex64; 2]; 2] {
    let c = |x: f64| Complex64::new(x, 0.0);
    [
        [c(1.0), c(0.0)],
        [c(overlap), c((1.0 - overlap * overlap).max(0.0).sqrt())],
    ]
}

/// Optimal success probability for guessing the path from the detector,
/// `(1 + || p |eta_1><eta_1| - (1-p) |eta_2><eta_2| ||_1) / 2`.
pub fn helstrom_success(p: f64, overlap: f64) -> Result<f64> {
    check_inputs(p, overlap)?;
    let [e1, e2] = detector_states(overlap);
    let diff = &ComplexMatrix::outer(&e1, &e1).scale(Complex64::new(p, 0.0))
        - &ComplexMatrix::outer(&e2, &e2).scale(Complex64::new(1.0 - p, 0.0));
    Ok(0.5 * (1.0 + trace_norm(&diff)?))
}

/// Mutual information `H({p_i}) + H({q_i}) - H({p_ij})` of the projective
/// measurement `{|m><m|, 1 - |m><m|}` with `|m> = (cos theta, sin theta)`.
pub fn measurement_information(p: f64, overlap: f64, theta: f64) -> f64 {
    let [e1, e2] = detector_states(overlap);
    let m = [theta.cos(), theta.sin()];
    let hit = |e: &[Complex64; 2]| (m[0] * e[0] + m[1] * e[1]).norm_sqr().min(1.0);
    let (h1, h2) = (hit(&e1), hit(&e2));
    // joint p_ij = tr(Pi_i |eta_j><eta_j|) p_j
    let joint = [p * h1, (1.0 - p) * h2, p * (1.0 - h1), (1.0 - p) * (1.0 - h2)];
    let q = [joint[0] + joint[1], joint[2] + joint[3]];
    let h = |v: &[f64]| -> f64 { v.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum() };
    h(&[p, 1.0 - p]) + h(&q) - h(&joint)
}

/// Accessible information of the two-state detector ensemble, in bits.
///
/// Maximizes [`measurement_information`] over `theta in [0, pi)`: a
/// 64-point scan brackets the best angle and golden-section search refines
/// it to `search_tol`. The returned value is attained by an explicit
/// measurement, so it is a lower bound on the true optimum.
pub fn accessible_info(p: f64, overlap: f64, search_tol: f64) -> Result<f64> {
    check_inputs(p, overlap)?;
    if !(search_tol > 0.0 && search_tol <= 1e-8) {
        return Err(Error::invalid("search_tol", format!("{search_tol} outside (0, 1e-8]")));
    }
    let info = |t: f64| measurement_information(p, overlap, t);
    let h = PI / SCAN_POINTS as f64;
    let best = (0..SCAN_POINTS)
        .map(|k| k as f64 * h)
        .max_by(|a, b| info(*a).total_cmp(&info(*b)))
        .expect("nonempty scan");
    let theta = golden_section_min(|t| -info(t), best - h, best + h, search_tol);
    Ok(info(theta).max(info(best)).max(0.0))
}

/// `C_l1(rho)^2 + (2 P_s - 1)^2` for the two-path state.
pub fn bagan_l1(p: f64, overlap: f64) -> Result<f64> {
    check_inputs(p, overlap)?;
    let rho = interferometer_state(&InterferometerConfig::two_path(p, Complex64::new(overlap, 0.0))?)?;
    let wave = coherence(&rho, MeasureKind::L1Normalized)?;
    let guess = 2.0 * helstrom_success(p, overlap)? - 1.0;
    Ok(wave * wave + guess * guess)
}

/// `(C_Re(rho) + Acc) / H(p, 1-p)` for the two-path state.
pub fn bagan_relent(p: f64, overlap: f64) -> Result<f64> {
    check_inputs(p, overlap)?;
    if p <= 0.0 || p >= 1.0 {
        return Err(Error::invalid("prior", format!("{p} makes the path entropy zero")));
    }
    let rho = interferometer_state(&InterferometerConfig::two_path(p, Complex64::new(overlap, 0.0))?)?;
    let wave = coherence(&rho, MeasureKind::RelEntropy)?;
    let acc = accessible_info(p, overlap, DEFAULT_SEARCH_TOL)?;
    Ok((wave + acc) / shannon_entropy(&[p, 1.0 - p])?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscriminationReport {
    pub prior_p: f64,
    pub overlap: f64,
    pub p_success: f64,
    pub acc_bits: f64,
    pub eq16_lhs: f64,
    /// `None` when `p` is 0 or 1.
    pub eq17_lhs: Option<f64>,
    pub shannon_h: f64,
}

pub fn discrimination_report(p: f64, overlap: f64) -> Result<DiscriminationReport> {
    check_inputs(p, overlap)?;
    let eq17_lhs = if p > 0.0 && p < 1.0 {
        Some(bagan_relent(p, overlap)?)
    } else {
        None
    };
    Ok(DiscriminationReport {
        prior_p: p,
        overlap,
        p_success: helstrom_success(p, overlap)?,
        acc_bits: accessible_info(p, overlap, DEFAULT_SEARCH_TOL)?,
        eq16_lhs: bagan_l1(p, overlap)?,
        eq17_lhs,
        shannon_h: shannon_entropy(&[p, 1.0 - p])?,
    })
}

/// Reports on the `n x n` grid `p, overlap in {k / (n - 1)}`, `p` outermost.
pub fn discrimination_grid(n: usize) -> Result<Vec<DiscriminationReport>> {
    if n < 2 {
        return Err(Error::invalid("grid", format!("{n} is below 2")));
    }
    let at = |k: usize| k as f64 / (n - 1) as f64;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(discrimination_report(at(i), at(j))?);
        }
    }
    Ok(out)
}

/// Writes `p,overlap,P_s,Acc,eq16_lhs,eq17_lhs`; an undefined `eq17_lhs`
/// is written as `nan`.
pub fn write_grid_csv<W: Write + ?Sized>(out: &mut W, rows: &[DiscriminationReport]) -> io::Result<()> {
    let table: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            vec![
                r.prior_p,
                r.overlap,
                r.p_success,
                r.acc_bits,
                r.eq16_lhs,
                r.eq17_lhs.unwrap_or(f64::NAN),
            ]
        })
        .collect();
    write_table(out, &["p", "overlap", "P_s", "Acc", "eq16_lhs", "eq17_lhs"], &table)
}
