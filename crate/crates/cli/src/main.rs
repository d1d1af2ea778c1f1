mod args;

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::Parser;
use serde_json::{json, Map, Value};
use xxchain::datasets::{self, FigureId, FigureOverrides, GapModel};
use xxchain::validation::{run_oracle_check, Fault, OracleGrid};
use xxchain::{ChainSpec, SweepResult};

use args::{parse_lengths, parse_real_grid, ChainArgs, Cli, Command, Format, OutputArgs, PatternArg};

const EXIT_VALIDATION: u8 = 1;
const EXIT_PARAMETER: u8 = 2;

/// Rejected input, reported with exit code 2.
#[derive(Debug)]
struct ParameterError(String);

impl std::fmt::Display for ParameterError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParameterError {}

fn param(msg: impl Into<String>) -> anyhow::Error {
    ParameterError(msg.into()).into()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<xxchain::Error>() {
            return if e.is_numerical_fault() {
                EXIT_VALIDATION
            } else {
                EXIT_PARAMETER
            };
        }
    }
    EXIT_PARAMETER
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Correlation {
            chain,
            temperature,
            t_grid,
            out,
        } => {
            let spec = build_spec(&chain)?;
            let temps = match t_grid {
                Some(g) => parse_real_grid(&g).map_err(param)?,
                None => vec![temperature],
            };
            emit(&datasets::correlation_table(&spec, &temps)?, &out)?;
        }
        Command::Figure {
            id,
            delta,
            lambda,
            l_list,
            t_grid,
            temperature,
            out,
        } => {
            let over = FigureOverrides {
                deltas: delta,
                lambdas: lambda,
                lengths: l_list.as_deref().map(parse_lengths).transpose().map_err(param)?,
                temperatures: match t_grid {
                    Some(g) => Some(parse_real_grid(&g).map_err(param)?),
                    None => temperature,
                },
            };
            if id == "all" {
                let dir = out
                    .output
                    .as_deref()
                    .ok_or_else(|| param("`figure all` needs --output DIR"))?;
                fs::create_dir_all(dir).map_err(|e| param(format!("cannot create {}: {e}", dir.display())))?;
                for fid in FigureId::ALL {
                    let table = datasets::generate_figure(fid, &over, out.workers)?;
                    let ext = match out.format {
                        Format::Csv => "csv",
                        Format::Json => "json",
                    };
                    write_to(&dir.join(format!("{fid}.{ext}")), &render(&table, out.format)?)?;
                }
            } else {
                let fid: FigureId = id.parse()?;
                emit(&datasets::generate_figure(fid, &over, out.workers)?, &out)?;
            }
        }
        Command::GapScan {
            pattern,
            delta,
            lambda,
            l_list,
            out,
        } => {
            let model = match (pattern, delta, lambda) {
                (PatternArg::Dimer, Some(delta), None) => GapModel::Dimer { delta },
                (PatternArg::EndBond, None, Some(lambda)) => GapModel::EndBond { lambda },
                (PatternArg::Dimer, _, _) => {
                    return Err(param("gap-scan --pattern dimer needs --delta and no --lambda"))
                }
                (PatternArg::EndBond, _, _) => {
                    return Err(param("gap-scan --pattern end_bond needs --lambda and no --delta"))
                }
                _ => return Err(param("gap-scan supports --pattern dimer or end_bond")),
            };
            let lengths = parse_lengths(&l_list).map_err(param)?;
            emit(&datasets::gap_scan(model, &lengths, out.workers)?, &out)?;
        }
        Command::OracleCheck {
            max_length,
            temperatures,
            report_temperatures,
            inject_sign_fault,
            out,
        } => {
            let grid = OracleGrid {
                temperatures,
                report_temperatures,
                ..OracleGrid::with_max_length(max_length)?
            };
            let fault = if inject_sign_fault {
                Fault::FlipSign
            } else {
                Fault::None
            };
            let report = run_oracle_check(&grid, fault, out.workers)?;
            let text = match out.format {
                Format::Json => serde_json::to_string_pretty(&report)? + "\n",
                Format::Csv => {
                    let mut s = format!(
                        "# oracle check: {} checks, {} failures\n",
                        report.checks,
                        report.failures.len()
                    );
                    for f in &report.failures {
                        s.push_str(&format!("# FAIL {f}\n"));
                    }
                    s.push_str("# string-phase deviation table (informational)\n");
                    s + &report.deviation_table()
                }
            };
            write_output(&text, &out)?;
            if !report.passed() {
                for f in &report.failures {
                    eprintln!("FAIL {f}");
                }
                eprintln!(
                    "oracle check failed: {} of {} checks",
                    report.failures.len(),
                    report.checks
                );
                return Ok(ExitCode::from(EXIT_VALIDATION));
            }
        }
        Command::Spectrum { chain, out } => {
            let spec = build_spec(&chain)?;
            emit(&datasets::spectrum_table(&spec)?, &out)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn build_spec(chain: &ChainArgs) -> anyhow::Result<ChainSpec> {
    let needs_length = || {
        chain
            .length
            .ok_or_else(|| param("--length is required for this pattern"))
    };
    let spec = match chain.pattern {
        PatternArg::Uniform => {
            if chain.delta.is_some() || chain.lambda.is_some() {
                bail!(param("--pattern uniform takes neither --delta nor --lambda"));
            }
            ChainSpec::uniform(needs_length()?, 1.0)?
        }
        PatternArg::Dimer => {
            if chain.lambda.is_some() {
                bail!(param("--pattern dimer takes --delta, not --lambda"));
            }
            let delta = chain.delta.ok_or_else(|| param("--pattern dimer requires --delta"))?;
            ChainSpec::dimer(needs_length()?, delta, 1.0)?
        }
        PatternArg::EndBond => {
            if chain.delta.is_some() {
                bail!(param("--pattern end_bond takes --lambda, not --delta"));
            }
            let lambda = chain
                .lambda
                .ok_or_else(|| param("--pattern end_bond requires --lambda"))?;
            ChainSpec::end_bond(needs_length()?, lambda, 1.0)?
        }
        PatternArg::Custom => {
            let couplings = chain
                .couplings
                .clone()
                .ok_or_else(|| param("--pattern custom requires --couplings"))?;
            if let Some(l) = chain.length {
                if l != couplings.len() + 1 {
                    bail!(param(format!(
                        "--length {l} does not match {} couplings",
                        couplings.len()
                    )));
                }
            }
            ChainSpec::custom(couplings, 1.0)?
        }
    };
    if chain.couplings.is_some() && chain.pattern != PatternArg::Custom {
        bail!(param("--couplings is only valid with --pattern custom"));
    }
    Ok(spec)
}

/// Metadata plus one object per row, keyed by column name.
fn to_json(table: &SweepResult) -> Value {
    let records: Vec<Value> = table
        .rows()
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = table
                .header()
                .iter()
                .zip(row)
                .map(|(k, v)| {
                    (
                        k.clone(),
                        serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
                    )
                })
                .collect();
            Value::Object(obj)
        })
        .collect();
    json!({ "metadata": table.metadata(), "columns": table.header(), "records": records })
}

fn render(table: &SweepResult, format: Format) -> anyhow::Result<String> {
    Ok(match format {
        Format::Csv => table.to_csv(),
        Format::Json => serde_json::to_string_pretty(&to_json(table))? + "\n",
    })
}

fn emit(table: &SweepResult, out: &OutputArgs) -> anyhow::Result<()> {
    write_output(&render(table, out.format)?, out)
}

fn write_output(text: &str, out: &OutputArgs) -> anyhow::Result<()> {
    match &out.output {
        Some(path) => write_to(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).context("writing to stdout")?;
            stdout.flush().context("writing to stdout")
        }
    }
}

fn write_to(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).map_err(|e| anyhow!(ParameterError(format!("cannot write {}: {e}", path.display()))))
}
