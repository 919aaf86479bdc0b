mod commands;

use clap::{Parser, Subcommand, ValueEnum};
use commands::{Outcome, RunError};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(
    name = "hypermirror",
    version,
    about = "Exact mirror maps, Yukawa couplings and their differential identities"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    #[value(name = "z_of_q")]
    ZOfQ,
    #[value(name = "q_of_z")]
    QOfZ,
    #[value(name = "f0_tilde")]
    F0Tilde,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    All,
    /// Schwarzian equation for the s = 3, 4 mirror maps.
    #[value(name = "eq9", alias = "schwarzian")]
    Schwarzian,
    /// The second-order equation for the quintic z(q) with log K terms.
    #[value(name = "eq16", alias = "z-equation")]
    ZEquation,
    /// The Q~ equation relating z(q) and K.
    #[value(name = "eq25", alias = "q-tilde-equation")]
    QTildeEquation,
    Pandharipande,
    Hodge,
    Golden,
    Integrality,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    P1,
    P2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mirror map series for the operator with parameter s.
    Mirror {
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 64)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Emit::ZOfQ)]
        emit: Emit,
    },
    /// The Yukawa coupling K(q) of the quintic.
    Yukawa {
        #[arg(long, default_value_t = 64)]
        order: usize,
    },
    /// Instanton numbers n_1..n_L and the prepotential coefficients N_m.
    Instantons {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// The prepotential (5/6)t³ + Σ N_m q^m.
    Prepotential {
        #[arg(long, default_value_t = 24)]
        order: usize,
    },
    /// Run identity checks; exit 1 if any residual is nonzero.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long, default_value_t = 24)]
        order: usize,
    },
    /// Evaluate the truncated F₀ at a real t < 0.
    EvalF0 {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Wronskian of the functions listed in a JSON file.
    Wronskian {
        #[arg(long)]
        input: PathBuf,
    },
    /// Search for a quasi-homogeneous relation between A₂, A₄ or B₂, B₄.
    SearchRelation {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 12)]
        weight_bound: i64,
        #[arg(long, default_value_t = 16)]
        order: usize,
        #[arg(long, default_value_t = 4)]
        trials: usize,
    },
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), RunError> {
    let mut body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("values serialize"),
        Format::Text => outcome.text.trim_end().to_string(),
    };
    body.push('\n');
    match &cli.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| RunError::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = commands::run(&cli).and_then(|o| emit(&cli, &o).map(|_| o));
    match result {
        Ok(o) if o.ok => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
