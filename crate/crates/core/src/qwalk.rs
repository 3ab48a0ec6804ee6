//! Discrete-time quantum walk on the line with a two-level coin.
//!
//! A step applies the coin on every site and then shifts the `R` component
//! one site right and the `L` component one site left. The lattice grows by
//! one site on each side per step, so nothing ever wraps around.

use std::io::{self, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coherence::CoherenceMeasure;
use crate::csv::write_table;
use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::states::{DensityMatrix, PureState};
use crate::triality::{triality, TrialityReport};

/// Amplitudes `(a_x, b_x)` on `(R, L)` for a contiguous range of sites.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkState {
    offset: i64,
    amps: Vec<[Complex64; 2]>,
}

impl WalkState {
    /// `|position> (x) coin`.
    pub fn localized(position: i64, coin: &PureState) -> Result<Self> {
        if coin.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: coin.dim(),
            });
        }
        let a = coin.amplitudes();
        Ok(WalkState {
            offset: position,
            amps: vec![[a[0], a[1]]],
        })
    }

    /// Leftmost stored site.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn sites(&self) -> usize {
        self.amps.len()
    }

    pub fn positions(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.amps.len() as i64).map(move |s| self.offset + s)
    }

    /// `(a_x, b_x)`, zero outside the stored range.
    pub fn amplitude(&self, x: i64) -> [Complex64; 2] {
        let s = x - self.offset;
        if s < 0 || s >= self.amps.len() as i64 {
            [Complex64::new(0.0, 0.0); 2]
        } else {
            self.amps[s as usize]
        }
    }

    pub fn amplitudes(&self) -> &[[Complex64; 2]] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|[a, b]| a.norm_sqr() + b.norm_sqr()).sum()
    }
}

/// Validated walk parameters.
#[derive(Debug, Clone)]
pub struct WalkConfig {
    pub steps: usize,
    coin: ComplexMatrix,
    pub initial_position: i64,
    initial_coin: PureState,
}

pub fn hadamard_coin() -> ComplexMatrix {
    let h = Complex64::new(0.5f64.sqrt(), 0.0);
    ComplexMatrix::from_row_major(2, 2, vec![h, h, h, -h]).expect("finite")
}

/// `(|R> + i|L>) / sqrt(2)`, which gives a mirror-symmetric Hadamard walk.
pub fn symmetric_coin_state() -> PureState {
    let h = 0.5f64.sqrt();
    PureState::new(vec![Complex64::new(h, 0.0), Complex64::new(0.0, h)]).expect("unit vector")
}

impl WalkConfig {
    pub fn new(steps: usize, coin: ComplexMatrix, initial_position: i64, initial_coin: PureState) -> Result<Self> {
        if coin.rows() != 2 || coin.cols() != 2 {
            return Err(Error::invalid(
                "coin",
                format!("shape {}x{} is not 2x2", coin.rows(), coin.cols()),
            ));
        }
        let err = coin.unitarity_error();
        if err > 1e-10 {
            return Err(Error::invalid("coin", format!("not unitary (deviation {err:e})")));
        }
        if initial_coin.dim() != 2 {
            return Err(Error::invalid(
                "initial_coin",
                format!("dimension {} is not 2", initial_coin.dim()),
            ));
        }
        Ok(WalkConfig {
            steps,
            coin,
            initial_position,
            initial_coin,
        })
    }

    /// Hadamard coin, walker at 0 with the symmetric coin state.
    pub fn hadamard(steps: usize) -> Self {
        WalkConfig::new(steps, hadamard_coin(), 0, symmetric_coin_state()).expect("valid defaults")
    }

    pub fn coin(&self) -> &ComplexMatrix {
        &self.coin
    }

    pub fn initial_coin(&self) -> &PureState {
        &self.initial_coin
    }

    pub fn initial_state(&self) -> WalkState {
        WalkState::localized(self.initial_position, &self.initial_coin).expect("validated coin state")
    }
}

/// JSON form of [`WalkConfig`]. Omitted fields take the Hadamard defaults;
/// the initial coin is normalized on load.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct WalkConfigFile {
    pub steps: usize,
    #[serde(default)]
    pub coin_re: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub coin_im: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub initial_position: i64,
    #[serde(default)]
    pub initial_coin_re: Option<Vec<f64>>,
    #[serde(default)]
    pub initial_coin_im: Option<Vec<f64>>,
}

impl WalkConfigFile {
    pub fn to_config(&self) -> Result<WalkConfig> {
        let coin = match (&self.coin_re, &self.coin_im) {
            (None, None) => hadamard_coin(),
            (re, im) => {
                let zero = vec![vec![0.0; 2]; 2];
                let re = re.as_ref().unwrap_or(&zero);
                let im = im.as_ref().unwrap_or(&zero);
                for (name, m) in [("coin_re", re), ("coin_im", im)] {
                    if m.len() != 2 {
                        return Err(Error::invalid(name, format!("has {} rows, expected 2", m.len())));
                    }
                    if let Some((i, row)) = m.iter().enumerate().find(|(_, r)| r.len() != 2) {
                        return Err(Error::invalid(
                            format!("{name} row {i}"),
                            format!("has {} columns, expected 2", row.len()),
                        ));
                    }
                }
                ComplexMatrix::from_row_major(
                    2,
                    2,
                    (0..4)
                        .map(|k| Complex64::new(re[k / 2][k % 2], im[k / 2][k % 2]))
                        .collect(),
                )?
            }
        };
        let initial_coin = match (&self.initial_coin_re, &self.initial_coin_im) {
            (None, None) => symmetric_coin_state(),
            (re, im) => {
                let zero = vec![0.0; 2];
                let re = re.as_ref().unwrap_or(&zero);
                let im = im.as_ref().unwrap_or(&zero);
                if re.len() != 2 || im.len() != 2 {
                    return Err(Error::invalid("initial_coin", "needs exactly 2 components"));
                }
                PureState::normalized(vec![Complex64::new(re[0], im[0]), Complex64::new(re[1], im[1])])?
            }
        };
        WalkConfig::new(self.steps, coin, self.initial_position, initial_coin)
    }
}

/// One application of `S (I (x) C)`.
pub fn step(s: &WalkState, coin: &ComplexMatrix) -> WalkState {
    let n = s.amps.len();
    let zero = Complex64::new(0.0, 0.0);
    let mut next = vec![[zero; 2]; n + 2];
    let (c00, c01, c10, c11) = (coin[(0, 0)], coin[(0, 1)], coin[(1, 0)], coin[(1, 1)]);
    for (k, [a, b]) in s.amps.iter().enumerate() {
        // site k of the old lattice is site k + 1 of the new one
        next[k + 2][0] = c00 * a + c01 * b;
        next[k][1] = c10 * a + c11 * b;
    }
    WalkState {
        offset: s.offset - 1,
        amps: next,
    }
}

/// Iterator over `|Psi(0)>, |Psi(1)>, ..., |Psi(steps)>`.
pub struct Trajectory {
    coin: ComplexMatrix,
    next: Option<WalkState>,
    remaining: usize,
}

impl Iterator for Trajectory {
    type Item = WalkState;

    fn next(&mut self) -> Option<WalkState> {
        let current = self.next.take()?;
        if self.remaining > 0 {
            self.remaining -= 1;
            self.next = Some(step(&current, &self.coin));
        }
        Some(current)
    }
}

pub fn trajectory(cfg: &WalkConfig) -> Trajectory {
    Trajectory {
        coin: cfg.coin.clone(),
        next: Some(cfg.initial_state()),
        remaining: cfg.steps,
    }
}

/// All states for `t = 0..=steps`.
pub fn evolve(cfg: &WalkConfig) -> Vec<WalkState> {
    trajectory(cfg).collect()
}

/// Coin state with the position traced out.
pub fn coin_reduced(s: &WalkState) -> Result<DensityMatrix> {
    let mut m = ComplexMatrix::zeros(2, 2);
    for amp in &s.amps {
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] += amp[i] * amp[j].conj();
            }
        }
    }
    DensityMatrix::new(m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PositionDistribution {
    pub offset: i64,
    pub probs: Vec<f64>,
}

impl PositionDistribution {
    pub fn prob(&self, x: i64) -> f64 {
        let s = x - self.offset;
        if s < 0 || s >= self.probs.len() as i64 {
            0.0
        } else {
            self.probs[s as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(s, &p)| (self.offset + s as i64, p))
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(x, p)| x as f64 * p).sum()
    }

    pub fn second_moment(&self) -> f64 {
        self.iter().map(|(x, p)| (x as f64).powi(2) * p).sum()
    }

    pub fn variance(&self) -> f64 {
        self.second_moment() - self.mean().powi(2)
    }
}

/// `P(x) = |a_x|^2 + |b_x|^2`.
pub fn position_distribution(s: &WalkState) -> PositionDistribution {
    PositionDistribution {
        offset: s.offset,
        probs: s.amps.iter().map(|[a, b]| a.norm_sqr() + b.norm_sqr()).collect(),
    }
}

/// Normalized l1 coherence of the position state (coin traced out).
///
/// Only sites of the parity reachable from the start can be occupied; for
/// a walk started at one site that is `t + 1` sites at time `t`, and the
/// sum of off-diagonal magnitudes is divided by `t`. Returns 0 at `t = 0`.
pub fn position_l1_coherence(s: &WalkState) -> f64 {
    // lattice after t steps has 2t + 1 sites; reachable ones sit at even indices
    let reachable: Vec<&[Complex64; 2]> = s.amps.iter().step_by(2).collect();
    let n = reachable.len();
    if n < 2 {
        return 0.0;
    }
    let mut total = 0.0;
    for i in 0..n {
        let [ai, bi] = reachable[i];
        for [aj, bj] in &reachable[i + 1..] {
            total += (ai * aj.conj() + bi * bj.conj()).norm();
        }
    }
    2.0 * total / (n - 1) as f64
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkTraceRow {
    pub t: usize,
    pub coin: TrialityReport,
    pub position_l1: f64,
    pub mean_x: f64,
    pub var_x: f64,
}

/// Triality of the coin state and position-basis coherence at every step.
pub fn walk_triality_trace<M: CoherenceMeasure + ?Sized>(cfg: &WalkConfig, m: &M) -> Result<Vec<WalkTraceRow>> {
    trajectory(cfg)
        .enumerate()
        .map(|(t, s)| {
            let dist = position_distribution(&s);
            Ok(WalkTraceRow {
                t,
                coin: triality(&coin_reduced(&s)?, m)?,
                position_l1: position_l1_coherence(&s),
                mean_x: dist.mean(),
                var_x: dist.variance(),
            })
        })
        .collect()
}

/// Means of `values[start..]` over consecutive windows of `window` entries;
/// a trailing partial window is dropped.
pub fn window_averages(values: &[f64], start: usize, window: usize) -> Vec<f64> {
    if window == 0 || start >= values.len() {
        return Vec::new();
    }
    values[start..]
        .chunks_exact(window)
        .map(|w| w.iter().sum::<f64>() / window as f64)
        .collect()
}

/// Writes `t,C_coin,D_coin,M_coin,C_pos_l1,mean_x,var_x`.
pub fn write_trace_csv<W: Write + ?Sized>(out: &mut W, rows: &[WalkTraceRow]) -> io::Result<()> {
    let table: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            vec![
                r.t as f64,
                r.coin.wave,
                r.coin.particle,
                r.coin.mixedness,
                r.position_l1,
                r.mean_x,
                r.var_x,
            ]
        })
        .collect();
    write_table(
        out,
        &["t", "C_coin", "D_coin", "M_coin", "C_pos_l1", "mean_x", "var_x"],
        &table,
    )
}
