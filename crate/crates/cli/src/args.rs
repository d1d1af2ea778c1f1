use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "xxchain",
    version,
    about = "End-to-end entanglement and teleportation in open XX spin chains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// End-to-end correlation, concurrence, fidelity and gap of one chain.
    Correlation {
        #[command(flatten)]
        chain: ChainArgs,
        /// Temperature T/J; 0 selects the exact ground state.
        #[arg(long, default_value = "0", conflicts_with = "t_grid", allow_negative_numbers = true)]
        temperature: f64,
        /// Temperature grid start:stop:step, one output row per value.
        #[arg(long)]
        t_grid: Option<String>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Data behind one figure, or all of them with `all`.
    Figure {
        /// scaling, conc-dimer, conc-endbond, x-comparison, gaps, fidelity-T or all.
        id: String,
        /// Override the dimerization grid (comma list).
        #[arg(long, value_delimiter = ',')]
        delta: Option<Vec<f64>>,
        /// Override the end-bond grid (comma list).
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<f64>>,
        /// Override the lengths: comma list or start:stop:step.
        #[arg(long)]
        l_list: Option<String>,
        /// Override the temperature grid start:stop:step.
        #[arg(long, conflicts_with = "temperature")]
        t_grid: Option<String>,
        /// Override the temperatures (comma list).
        #[arg(long, value_delimiter = ',')]
        temperature: Option<Vec<f64>>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Numeric lowest gap against its analytic law over a list of lengths.
    GapScan {
        #[arg(long, value_enum)]
        pattern: PatternArg,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        /// Comma list or start:stop:step.
        #[arg(long)]
        l_list: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare the free-fermion pipeline with exact diagonalization.
    OracleCheck {
        /// Largest chain length checked (at most 12).
        #[arg(long, default_value_t = 10)]
        max_length: usize,
        /// Temperatures checked against hard tolerances (comma list).
        #[arg(long, value_delimiter = ',', default_value = "0,0.01")]
        temperatures: Vec<f64>,
        /// Temperatures reported in the deviation table only (comma list).
        #[arg(long, value_delimiter = ',', default_value = "0.2,0.5")]
        report_temperatures: Vec<f64>,
        #[arg(long, hide = true)]
        inject_sign_fault: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// One-body spectrum with parity labels.
    Spectrum {
        #[command(flatten)]
        chain: ChainArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PatternArg {
    Uniform,
    Dimer,
    #[value(name = "end_bond", alias = "end-bond")]
    EndBond,
    Custom,
}

#[derive(Debug, Args)]
pub struct ChainArgs {
    #[arg(long, value_enum, default_value = "uniform")]
    pub pattern: PatternArg,
    /// Number of sites (even, at least 4).
    #[arg(long)]
    pub length: Option<usize>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Couplings J_i/J for the custom pattern (comma list).
    #[arg(long, value_delimiter = ',')]
    pub couplings: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file (a directory for `figure all`) instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Worker threads for sweeps; defaults to all cores.
    #[arg(long)]
    pub workers: Option<usize>,
}

/// `start:stop:step` with inclusive stop.
pub fn parse_real_grid(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("expected start:stop:step, got '{s}'"));
    };
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| format!("bad number '{t}' in '{s}': {e}"))
    };
    xxchain::sweep::linear_grid(num(a)?, num(b)?, num(c)?).map_err(|e| e.to_string())
}

/// Comma list or `start:stop:step` of lengths.
pub fn parse_lengths(s: &str) -> Result<Vec<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad length '{t}' in '{s}': {e}"))
    };
    let out: Vec<usize> = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(format!("expected start:stop:step, got '{s}'"));
        };
        let (a, b, c) = (num(a)?, num(b)?, num(c)?);
        if c == 0 || b < a {
            return Err(format!("length range '{s}' needs start <= stop and a positive step"));
        }
        (a..=b).step_by(c).collect()
    } else {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(num)
            .collect::<Result<_, _>>()?
    };
    if out.is_empty() {
        return Err("length list is empty".into());
    }
    Ok(out)
}
