//! Coherence-based wave, particle and mixedness quantifiers for states of
//! `d`-path interferometers.
//!
//! For a path state `rho` and a normalized coherence measure `C`, the wave
//! feature is `C(rho)`, the particle feature is `D = 1 - C(|rho><rho|)` with
//! `|rho> = sum_i sqrt(rho_ii) |i>`, and the mixedness is
//! `M = C(|rho><rho|) - C(rho)`, so that `C + D + M = 1` and `C + D <= 1`.
//!
//! Modules:
//!
//! - [`numerics`]: small dense complex linear algebra and entropies.
//! - [`states`]: density matrices, interferometer states, random ensembles.
//! - [`coherence`]: l1 and relative-entropy coherence, `D` and `M`.
//! - [`triality`]: reports, two-path sweeps, fringe visibility.
//! - [`channels`]: Kraus channels and the randomized axiom check.
//! - [`discrimination`]: two-path guessing probability and accessible information.
//! - [`qwalk`]: discrete-time quantum walk on the line.
//! - [`cli`]: the `wpd` command-line front end.

pub mod channels;
pub mod cli;
pub mod coherence;
pub mod csv;
pub mod discrimination;
pub mod error;
pub mod numerics;
pub mod qwalk;
pub mod states;
pub mod triality;

pub use coherence::{coherence, mixedness, particle, CoherenceMeasure, MeasureKind};
pub use error::{Error, Result};
pub use numerics::ComplexMatrix;
pub use states::{DensityMatrix, InterferometerConfig, PureState};
pub use triality::{triality, TrialityReport};
