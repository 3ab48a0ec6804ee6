//! Coherence measures in the path basis and the particle/mixedness
//! quantifiers derived from them.
//!
//! The particle quantifier of a state is read off its diagonal pure state
//! `|rho> = sum_i sqrt(rho_ii) |i>`: `D = 1 - C(|rho><rho|)`, and the
//! mixedness is the coherence gap `M = C(|rho><rho|) - C(rho)`. Any
//! [`CoherenceMeasure`] with range `[0, 1]` can drive them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{relative_entropy, von_neumann_entropy};
use crate::states::{dephase, lift, DensityMatrix};

/// Anything that assigns a coherence value to a state.
///
/// Implement this to plug a new measure into [`particle`], [`mixedness`],
/// the triality report and the axiom harness.
pub trait CoherenceMeasure {
    fn name(&self) -> String;

    /// Whether the range is `[0, 1]` with the maximum on the uniform
    /// superposition.
    fn is_normalized(&self) -> bool;

    fn evaluate(&self, rho: &DensityMatrix) -> Result<f64>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasureKind {
    /// Sum of off-diagonal magnitudes.
    L1,
    /// `L1 / (d - 1)`.
    L1Normalized,
    /// `S(dephase(rho)) - S(rho)` in bits.
    RelEntropy,
    /// `RelEntropy / log2 d`.
    RelEntropyNormalized,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 4] = [
        MeasureKind::L1,
        MeasureKind::L1Normalized,
        MeasureKind::RelEntropy,
        MeasureKind::RelEntropyNormalized,
    ];

    pub const NORMALIZED: [MeasureKind; 2] = [MeasureKind::L1Normalized, MeasureKind::RelEntropyNormalized];

    pub fn as_str(self) -> &'static str {
        match self {
            MeasureKind::L1 => "l1-raw",
            MeasureKind::L1Normalized => "l1",
            MeasureKind::RelEntropy => "relent-raw",
            MeasureKind::RelEntropyNormalized => "relent",
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l1" | "l1-normalized" => Ok(MeasureKind::L1Normalized),
            "l1-raw" => Ok(MeasureKind::L1),
            "relent" | "relent-normalized" => Ok(MeasureKind::RelEntropyNormalized),
            "relent-raw" => Ok(MeasureKind::RelEntropy),
            other => Err(Error::invalid(
                "measure",
                format!("unknown measure '{other}' (expected l1, l1-raw, relent, relent-raw)"),
            )),
        }
    }
}

impl CoherenceMeasure for MeasureKind {
    fn name(&self) -> String {
        self.as_str().to_string()
    }

    fn is_normalized(&self) -> bool {
        matches!(self, MeasureKind::L1Normalized | MeasureKind::RelEntropyNormalized)
    }

    fn evaluate(&self, rho: &DensityMatrix) -> Result<f64> {
        coherence(rho, *self)
    }
}

fn l1_norm(rho: &DensityMatrix) -> f64 {
    let d = rho.dim();
    let mut s = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                s += rho.get(i, j).norm();
            }
        }
    }
    s
}

fn relent_closed_form(rho: &DensityMatrix) -> f64 {
    von_neumann_entropy(&dephase(rho)) - von_neumann_entropy(rho)
}

/// Coherence of `rho` under measure `m`.
///
/// Values down to `-1e-12` (roundoff) are clamped to zero, and normalized
/// values just above 1 are clamped to 1.
pub fn coherence(rho: &DensityMatrix, m: MeasureKind) -> Result<f64> {
    let d = rho.dim();
    let raw = match m {
        MeasureKind::L1 => l1_norm(rho),
        MeasureKind::RelEntropy => relent_closed_form(rho),
        MeasureKind::L1Normalized | MeasureKind::RelEntropyNormalized if d < 2 => {
            return Err(Error::DegenerateDimension {
                measure: m.name(),
                dim: d,
            })
        }
        MeasureKind::L1Normalized => l1_norm(rho) / (d - 1) as f64,
        MeasureKind::RelEntropyNormalized => relent_closed_form(rho) / (d as f64).log2(),
    };
    debug_assert!(raw >= -1e-12, "coherence {raw} below roundoff floor");
    if m.is_normalized() {
        debug_assert!(raw <= 1.0 + 1e-12, "normalized coherence {raw} above 1");
        return Ok(raw.clamp(0.0, 1.0));
    }
    Ok(raw.max(0.0))
}

/// Result of the direct minimization of `S(rho||sigma)` over diagonal `sigma`.
#[derive(Debug, Clone)]
pub struct RelEntropyMinimum {
    pub value: f64,
    /// Diagonal of the best `sigma` found.
    pub minimizer: Vec<f64>,
}

/// Minimizes `S(rho||sigma)` over incoherent `sigma` without using the
/// closed form: scan the probability simplex at resolution `1/grid`, then
/// run one pass of pairwise coordinate descent from the best grid point.
///
/// Only `d` of 2 or 3 are supported; the grid grows like `grid^(d-1)`.
pub fn relent_bruteforce(rho: &DensityMatrix, grid: usize) -> Result<RelEntropyMinimum> {
    let d = rho.dim();
    if !(2..=3).contains(&d) {
        return Err(Error::UnsupportedDimension { dim: d, max: 3 });
    }
    if grid < 10 {
        return Err(Error::invalid("grid", format!("{grid} is below 10")));
    }
    let objective = |sigma: &[f64]| -> f64 {
        match DensityMatrix::from_diagonal(sigma) {
            Ok(s) => relative_entropy(rho, &s).unwrap_or(f64::INFINITY),
            Err(_) => f64::INFINITY,
        }
    };

    let step = 1.0 / grid as f64;
    let mut best = (f64::INFINITY, vec![1.0 / d as f64; d]);
    let mut consider = |sigma: Vec<f64>| {
        let v = objective(&sigma);
        if v < best.0 {
            best = (v, sigma);
        }
    };
    if d == 2 {
        for i in 0..=grid {
            let a = i as f64 * step;
            consider(vec![a, 1.0 - a]);
        }
    } else {
        for i in 0..=grid {
            for j in 0..=(grid - i) {
                let (a, b) = (i as f64 * step, j as f64 * step);
                consider(vec![a, b, (1.0 - a - b).max(0.0)]);
            }
        }
    }

    let (mut value, mut sigma) = best;
    for i in 0..d {
        for j in (i + 1)..d {
            // move mass t from j to i; t in [-sigma_i, sigma_j]
            let base = sigma.clone();
            let shifted = |t: f64| {
                let mut s = base.clone();
                s[i] += t;
                s[j] -= t;
                s
            };
            let t = golden_section_min(|t| objective(&shifted(t)), -base[i], base[j], 1e-13);
            let candidate = shifted(t);
            let v = objective(&candidate);
            if v < value {
                value = v;
                sigma = candidate;
            }
        }
    }
    Ok(RelEntropyMinimum {
        value,
        minimizer: sigma,
    })
}

/// Minimum of a unimodal function on `[lo, hi]`.
pub(crate) fn golden_section_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

fn require_normalized<M: CoherenceMeasure + ?Sized>(m: &M) -> Result<()> {
    if m.is_normalized() {
        Ok(())
    } else {
        Err(Error::MeasureNotNormalized(m.name()))
    }
}

/// `D(rho) = 1 - C(|rho><rho|)`.
pub fn particle<M: CoherenceMeasure + ?Sized>(rho: &DensityMatrix, m: &M) -> Result<f64> {
    require_normalized(m)?;
    Ok(1.0 - m.evaluate(&lift(rho))?)
}

/// `M(rho) = C(|rho><rho|) - C(rho)`.
pub fn mixedness<M: CoherenceMeasure + ?Sized>(rho: &DensityMatrix, m: &M) -> Result<f64> {
    require_normalized(m)?;
    Ok(m.evaluate(&lift(rho))? - m.evaluate(rho)?)
}
