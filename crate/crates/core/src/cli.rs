//! Command-line front end behind the `wpd` binary.
//!
//! Every subcommand writes its artifact to `--output` (default stdout).
//! Output depends only on the arguments, so identical invocations produce
//! identical bytes.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::channels::{check_axioms, AxiomReport};
use crate::coherence::{coherence, MeasureKind};
use crate::csv::write_table;
use crate::discrimination::{discrimination_grid, write_grid_csv};
use crate::error::{Error, Result};
use crate::qwalk::{walk_triality_trace, write_trace_csv, WalkConfig, WalkConfigFile};
use crate::states::state_from_json;
use crate::triality::{
    fringe_visibility, l1_sweep, relent_sweep, triality, write_sweep_csv, DEFAULT_SWEEP_STEPS, L1_SWEEP_OVERLAP,
    RELENT_SWEEP_OVERLAP,
};

#[derive(Debug, Parser)]
#[command(
    name = "wpd",
    version,
    about = "Wave-particle-mixedness quantifiers from path coherence"
)]
pub struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

fn parse_measure(s: &str) -> std::result::Result<MeasureKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print C, D and M of a state read from JSON.
    Triality {
        /// Density-matrix or interferometer JSON file.
        #[arg(long)]
        input: PathBuf,
        /// l1 or relent (normalized measures only).
        #[arg(long, default_value = "l1", value_parser = parse_measure)]
        measure: MeasureKind,
    },
    /// Two-path sweep over the prior under normalized l1 coherence (CSV).
    Example1 {
        #[arg(long, default_value_t = L1_SWEEP_OVERLAP)]
        overlap: f64,
        #[arg(long, default_value_t = DEFAULT_SWEEP_STEPS)]
        steps: usize,
    },
    /// Two-path sweep under normalized relative-entropy coherence (CSV).
    Example2 {
        #[arg(long, default_value_t = RELENT_SWEEP_OVERLAP)]
        overlap: f64,
        #[arg(long, default_value_t = DEFAULT_SWEEP_STEPS)]
        steps: usize,
    },
    /// Randomized check of the coherence axioms (JSON, one report per dimension).
    Axioms {
        #[arg(long, default_value = "l1", value_parser = parse_measure)]
        measure: MeasureKind,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Single dimension; default runs 2, 3 and 4.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Two-path discrimination grid with both duality relations (CSV).
    Bagan {
        #[arg(long, default_value_t = 50)]
        grid: usize,
    },
    /// Quantum walk trace of coin triality and position coherence (CSV).
    Walk {
        /// Walk configuration JSON; defaults to the symmetric Hadamard walk.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Number of steps when no input file is given.
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, default_value = "l1", value_parser = parse_measure)]
        measure: MeasureKind,
    },
    /// Fringe visibility of a qubit path state next to its l1 coherence (CSV).
    Visibility {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 256)]
        phase_steps: usize,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::invalid("input", format!("{}: {e}", path.display())))
}

fn write_json<W: Write + ?Sized, T: Serialize + ?Sized>(out: &mut W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Runs one subcommand, writing its artifact to `out`.
pub fn run<W: Write + ?Sized>(command: &Command, out: &mut W) -> Result<()> {
    match command {
        Command::Triality { input, measure } => {
            let rho = state_from_json(&read(input)?)?;
            write_json(out, &triality(&rho, measure)?)
        }
        Command::Example1 { overlap, steps } => {
            write_sweep_csv(out, &l1_sweep(*overlap, *steps)?)?;
            Ok(())
        }
        Command::Example2 { overlap, steps } => {
            write_sweep_csv(out, &relent_sweep(*overlap, *steps)?)?;
            Ok(())
        }
        Command::Axioms {
            measure,
            trials,
            seed,
            dim,
        } => {
            let dims = dim.map_or_else(|| vec![2, 3, 4], |d| vec![d]);
            let reports = dims
                .iter()
                .map(|&d| check_axioms(measure, d, *trials, *seed))
                .collect::<Result<Vec<AxiomReport>>>()?;
            write_json(out, &reports)
        }
        Command::Bagan { grid } => {
            write_grid_csv(out, &discrimination_grid(*grid)?)?;
            Ok(())
        }
        Command::Walk { input, steps, measure } => {
            let cfg = match input {
                Some(path) => serde_json::from_str::<WalkConfigFile>(&read(path)?)?.to_config()?,
                None => WalkConfig::hadamard(*steps),
            };
            write_trace_csv(out, &walk_triality_trace(&cfg, measure)?)?;
            Ok(())
        }
        Command::Visibility { input, phase_steps } => {
            let rho = state_from_json(&read(input)?)?;
            let v = fringe_visibility(&rho, *phase_steps)?;
            let c = coherence(&rho, MeasureKind::L1Normalized)?;
            write_table(out, &["visibility", "C_l1"], &[vec![v, c]])?;
            Ok(())
        }
    }
}

/// Process exit status for a finished run: 0 on success, 2 for bad input,
/// 1 for an internal invariant breach.
pub fn exit_code(result: &Result<()>) -> i32 {
    match result {
        Ok(()) => 0,
        Err(e) if e.is_validation() => 2,
        Err(_) => 1,
    }
}

/// Runs the parsed command, writing to `--output` when given and to
/// `stdout` otherwise.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    match &cli.output {
        Some(path) => {
            let mut buf = Vec::new();
            run(&cli.command, &mut buf)?;
            fs::write(path, buf)?;
            Ok(())
        }
        None => run(&cli.command, stdout),
    }
}
