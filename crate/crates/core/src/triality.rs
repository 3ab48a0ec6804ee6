//! Wave-particle-mixedness triality `C + D + M = 1`, the two-path parameter
//! sweeps and the fringe visibility of a two-path state.

use std::f64::consts::PI;
use std::io::{self, Write};
use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherence::{CoherenceMeasure, MeasureKind};
use crate::csv::write_table;
use crate::error::{Error, Result};
use crate::states::{interferometer_state, lift, DensityMatrix, InterferometerConfig};

/// Overlap `|<eta_1|eta_2>|` used for the l1 sweep by default.
pub const L1_SWEEP_OVERLAP: f64 = 1.0 / 3.0;
/// Real overlap `<eta_1|eta_2>` used for the relative-entropy sweep by default.
pub const RELENT_SWEEP_OVERLAP: f64 = 2.0 / 3.0;
pub const DEFAULT_SWEEP_STEPS: usize = 201;

const SUM_TOL: f64 = 1e-12;
const NEGATIVE_TOL: f64 = 1e-9;

static REPORTS_CHECKED: AtomicU64 = AtomicU64::new(0);

/// Number of [`TrialityReport`]s that have passed their invariant check in
/// this process.
pub fn reports_checked() -> u64 {
    REPORTS_CHECKED.load(Ordering::Relaxed)
}

/// Wave `C`, particle `D` and mixedness `M` of one state under one measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialityReport {
    pub measure: String,
    #[serde(rename = "C")]
    pub wave: f64,
    #[serde(rename = "D")]
    pub particle: f64,
    #[serde(rename = "M")]
    pub mixedness: f64,
    pub sum: f64,
}

impl TrialityReport {
    /// Assembles a report, failing if the sum leaves `1 +- 1e-12` or a
    /// component is below `-1e-9`.
    pub fn new(measure: String, wave: f64, particle: f64, mixedness: f64) -> Result<Self> {
        let sum = wave + particle + mixedness;
        if sum.is_nan() || (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::Invariant(format!("C + D + M = {sum} under {measure}")));
        }
        for (name, v) in [("C", wave), ("D", particle), ("M", mixedness)] {
            if v.is_nan() || v < -NEGATIVE_TOL {
                return Err(Error::Invariant(format!("{name} = {v:e} is negative under {measure}")));
            }
        }
        REPORTS_CHECKED.fetch_add(1, Ordering::Relaxed);
        Ok(TrialityReport {
            measure,
            wave,
            particle,
            mixedness,
            sum,
        })
    }
}

/// Evaluates `C(rho)`, `D(rho) = 1 - C(|rho><rho|)` and
/// `M(rho) = C(|rho><rho|) - C(rho)`.
pub fn triality<M: CoherenceMeasure + ?Sized>(rho: &DensityMatrix, m: &M) -> Result<TrialityReport> {
    if !m.is_normalized() {
        return Err(Error::MeasureNotNormalized(m.name()));
    }
    let wave = m.evaluate(rho)?;
    let lifted = m.evaluate(&lift(rho))?;
    TrialityReport::new(m.name(), wave, 1.0 - lifted, lifted - wave)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub wave: f64,
    pub particle: f64,
    pub mixedness: f64,
    /// Bloch radius; only filled by [`relent_sweep`].
    pub bloch_radius: Option<f64>,
}

fn check_sweep_args(overlap: f64, steps: usize) -> Result<()> {
    if !(0.0..=1.0).contains(&overlap) {
        return Err(Error::invalid("overlap", format!("{overlap} outside [0, 1]")));
    }
    if steps < 2 {
        return Err(Error::invalid("steps", format!("{steps} is below 2")));
    }
    Ok(())
}

fn grid_point(k: usize, steps: usize) -> f64 {
    k as f64 / (steps - 1) as f64
}

fn agree(what: &str, p: f64, engine: &TrialityReport, formula: [f64; 3], tol: f64) -> Result<()> {
    let got = [engine.wave, engine.particle, engine.mixedness];
    for (name, (g, f)) in ["C", "D", "M"].iter().zip(got.iter().zip(formula)) {
        if (g - f).abs() > tol {
            return Err(Error::Invariant(format!(
                "{what} at p = {p}: engine {name} = {g} vs closed form {f}"
            )));
        }
    }
    Ok(())
}

/// Closed-form `(C, D, M)` of a two-path state under normalized l1
/// coherence: with `s = 2 sqrt(p(1-p))`, `C = s |overlap|`, `D = 1 - s`,
/// `M = s (1 - |overlap|)`.
pub fn l1_two_path_closed_form(p: f64, overlap: f64) -> [f64; 3] {
    let s = 2.0 * (p * (1.0 - p)).sqrt();
    [s * overlap, 1.0 - s, s * (1.0 - overlap)]
}

/// Sweeps the prior `p` over `k / (steps - 1)` for a two-path state with
/// detector overlap `overlap` under normalized l1 coherence.
///
/// Each row is computed end to end from the interferometer state and
/// checked against [`l1_two_path_closed_form`] to `1e-12`.
pub fn l1_sweep(overlap: f64, steps: usize) -> Result<Vec<SweepRow>> {
    check_sweep_args(overlap, steps)?;
    (0..steps)
        .map(|k| {
            let p = grid_point(k, steps);
            let rho = interferometer_state(&InterferometerConfig::two_path(p, Complex64::new(overlap, 0.0))?)?;
            let report = triality(&rho, &MeasureKind::L1Normalized)?;
            agree("l1 sweep", p, &report, l1_two_path_closed_form(p, overlap), 1e-12)?;
            Ok(SweepRow {
                p,
                wave: report.wave,
                particle: report.particle,
                mixedness: report.mixedness,
                bloch_radius: None,
            })
        })
        .collect()
}

fn h2(x: f64) -> f64 {
    let t = |v: f64| if v <= 0.0 { 0.0 } else { -v * v.log2() };
    t(x) + t(1.0 - x)
}

/// Bloch radius `sqrt(4 p (1-p) overlap^2 + (2p - 1)^2)` of a two-path state.
pub fn two_path_bloch_radius(p: f64, overlap: f64) -> f64 {
    (4.0 * p * (1.0 - p) * overlap * overlap + (2.0 * p - 1.0).powi(2)).sqrt()
}

/// Closed-form `(C, D, M)` of a two-path state under relative-entropy
/// coherence, via its eigenvalues `(1 +- r)/2`.
pub fn relent_two_path_closed_form(p: f64, overlap: f64) -> [f64; 3] {
    let r = two_path_bloch_radius(p, overlap).min(1.0);
    let wave = h2(p) - h2(0.5 * (1.0 + r));
    let particle = 1.0 - h2(p);
    [wave, particle, 1.0 - wave - particle]
}

/// Same sweep as [`l1_sweep`] under normalized relative-entropy coherence,
/// with the Bloch radius in each row. Engine and closed form agree to `1e-9`.
pub fn relent_sweep(overlap: f64, steps: usize) -> Result<Vec<SweepRow>> {
    check_sweep_args(overlap, steps)?;
    (0..steps)
        .map(|k| {
            let p = grid_point(k, steps);
            let rho = interferometer_state(&InterferometerConfig::two_path(p, Complex64::new(overlap, 0.0))?)?;
            let report = triality(&rho, &MeasureKind::RelEntropyNormalized)?;
            agree(
                "relent sweep",
                p,
                &report,
                relent_two_path_closed_form(p, overlap),
                1e-9,
            )?;
            Ok(SweepRow {
                p,
                wave: report.wave,
                particle: report.particle,
                mixedness: report.mixedness,
                bloch_radius: Some(two_path_bloch_radius(p, overlap)),
            })
        })
        .collect()
}

/// Writes `p,C,D,M` (plus `r` when rows carry a Bloch radius).
pub fn write_sweep_csv<W: Write + ?Sized>(out: &mut W, rows: &[SweepRow]) -> io::Result<()> {
    let with_r = rows.first().is_some_and(|r| r.bloch_radius.is_some());
    let header: &[&str] = if with_r {
        &["p", "C", "D", "M", "r"]
    } else {
        &["p", "C", "D", "M"]
    };
    let table: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![r.p, r.wave, r.particle, r.mixedness];
            if with_r {
                v.push(r.bloch_radius.unwrap_or(f64::NAN));
            }
            v
        })
        .collect();
    write_table(out, header, &table)
}

/// Interference visibility `(I_max - I_min) / (I_max + I_min)` of a qubit
/// path state, with `I(phi) = <+_phi|rho|+_phi>` for
/// `|+_phi> = (|1> + e^{i phi}|2>) / sqrt(2)` sampled at `phase_steps`
/// equally spaced phases in `[0, 2 pi)`.
pub fn fringe_visibility(rho: &DensityMatrix, phase_steps: usize) -> Result<f64> {
    if rho.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rho.dim(),
        });
    }
    if phase_steps < 64 {
        return Err(Error::invalid("phase_steps", format!("{phase_steps} is below 64")));
    }
    let amp = 0.5f64.sqrt();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..phase_steps {
        let phi = 2.0 * PI * k as f64 / phase_steps as f64;
        let v = [Complex64::new(amp, 0.0), Complex64::from_polar(amp, phi)];
        let intensity = rho.matrix().expectation(&v).re;
        lo = lo.min(intensity);
        hi = hi.max(intensity);
    }
    Ok(((hi - lo) / (hi + lo)).clamp(0.0, 1.0))
}
