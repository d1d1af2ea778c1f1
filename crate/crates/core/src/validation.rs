//! Equivalence suites between the free-fermion pipeline and the many-body
//! oracle.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::ChainSpec;
use crate::observables::{concurrence_from_x, end_to_end_correlation, ThermalContext};
use crate::oracle::{
    dense_hamiltonian, gibbs_state, oracle_end_correlators, reduce_to_endpoints, wootters_concurrence, Beta,
    MAX_ORACLE_LENGTH,
};
use crate::spectral::endpoint_spectrum;
use crate::sweep::ordered_map;

pub const ZERO_T_TOL: f64 = 1e-9;
pub const LOW_T_TOL: f64 = 1e-6;
pub const MAGNETIZATION_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct OracleGrid {
    pub lengths: Vec<usize>,
    pub deltas: Vec<f64>,
    pub lambdas: Vec<f64>,
    /// Temperatures (units of `J`) checked against hard tolerances.
    pub temperatures: Vec<f64>,
    /// Temperatures where only the deviation is recorded.
    pub report_temperatures: Vec<f64>,
}

impl Default for OracleGrid {
    fn default() -> Self {
        Self {
            lengths: vec![4, 6, 8, 10],
            deltas: vec![0.2, 0.5, 0.8],
            lambdas: vec![0.1, 0.5, 1.0],
            temperatures: vec![0.0, 0.01],
            report_temperatures: vec![0.2, 0.5],
        }
    }
}

impl OracleGrid {
    pub fn with_max_length(max_length: usize) -> Result<Self> {
        if max_length > MAX_ORACLE_LENGTH {
            return Err(Error::OracleTooLarge(max_length));
        }
        if max_length < 4 {
            return Err(Error::InvalidLength(max_length));
        }
        Ok(Self {
            lengths: (4..=max_length).step_by(2).collect(),
            ..Self::default()
        })
    }

    pub fn specs(&self) -> Result<Vec<(String, ChainSpec<f64>)>> {
        let mut out = Vec::new();
        for &l in &self.lengths {
            if l > MAX_ORACLE_LENGTH {
                return Err(Error::OracleTooLarge(l));
            }
            out.push((format!("uniform L={l}"), ChainSpec::uniform(l, 1.0)?));
            for &d in &self.deltas {
                out.push((format!("dimer L={l} delta={d}"), ChainSpec::dimer(l, d, 1.0)?));
            }
            for &lam in &self.lambdas {
                out.push((
                    format!("end_bond L={l} lambda={lam}"),
                    ChainSpec::end_bond(l, lam, 1.0)?,
                ));
            }
        }
        Ok(out)
    }
}

/// Fault injected into the fermionic side to prove the checks can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Reverses the sign of every fermionic `x`.
    FlipSign,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub spec: String,
    pub temperature: f64,
    pub quantity: &'static str,
    pub got: f64,
    pub want: f64,
    pub tol: f64,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} T={} {}: got {:.12e} want {:.12e} (|diff| {:.3e} > tol {:.1e})",
            self.spec,
            self.temperature,
            self.quantity,
            self.got,
            self.want,
            (self.got - self.want).abs(),
            self.tol
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deviation {
    pub spec: String,
    pub temperature: f64,
    pub x_fermionic: f64,
    pub x_inferred: f64,
    pub abs_diff: f64,
}

/// One fermionic-vs-oracle comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub spec: String,
    pub temperature: f64,
    pub x_fermionic: f64,
    pub x_inferred: f64,
    pub c_formula: f64,
    pub c_wootters: f64,
    pub max_magnetization: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct OracleReport {
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub deviations: Vec<Deviation>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Plain-text deviation table.
    pub fn deviation_table(&self) -> String {
        let mut out = String::from("spec,T,x_fermionic,x_inferred,abs_diff\n");
        for d in &self.deviations {
            out.push_str(&format!(
                "{},{},{:.12e},{:.12e},{:.3e}\n",
                d.spec, d.temperature, d.x_fermionic, d.x_inferred, d.abs_diff
            ));
        }
        out
    }
}

/// Runs both pipelines for one chain at each temperature.
pub fn compare(name: &str, spec: &ChainSpec<f64>, temperatures: &[f64], fault: Fault) -> Result<Vec<Comparison>> {
    let modes = endpoint_spectrum(&spec.adjacency())?;
    let h = dense_hamiltonian(spec)?;
    temperatures
        .iter()
        .map(|&t| {
            let mut x = end_to_end_correlation(&modes, ThermalContext::new(t)?);
            if fault == Fault::FlipSign {
                x = -x;
            }
            let rho = gibbs_state(&h, Beta::from_temperature(t)?);
            let corr = oracle_end_correlators(&rho);
            let c_wootters = wootters_concurrence(&reduce_to_endpoints(&rho))?;
            let max_magnetization = rho.site_magnetization().iter().fold(0.0f64, |m, v| m.max(v.abs()));
            Ok(Comparison {
                spec: name.to_string(),
                temperature: t,
                x_fermionic: x,
                x_inferred: corr.x_inferred,
                c_formula: concurrence_from_x(x),
                c_wootters,
                max_magnetization,
            })
        })
        .collect()
}

fn tolerance(t: f64) -> f64 {
    if t == 0.0 {
        ZERO_T_TOL
    } else {
        LOW_T_TOL
    }
}

/// Hard checks at `grid.temperatures`, deviation records at
/// `grid.report_temperatures`.
pub fn run_oracle_check(grid: &OracleGrid, fault: Fault, workers: Option<usize>) -> Result<OracleReport> {
    let specs = grid.specs()?;
    let mut temps = grid.temperatures.clone();
    temps.extend(grid.report_temperatures.iter().copied());
    let results = ordered_map(&specs, workers, |(name, spec)| compare(name, spec, &temps, fault))?;
    let mut report = OracleReport::default();
    for comparisons in results {
        for (i, c) in comparisons.into_iter().enumerate() {
            if i >= grid.temperatures.len() {
                report.deviations.push(Deviation {
                    abs_diff: (c.x_fermionic - c.x_inferred).abs(),
                    spec: c.spec,
                    temperature: c.temperature,
                    x_fermionic: c.x_fermionic,
                    x_inferred: c.x_inferred,
                });
                continue;
            }
            let tol = tolerance(c.temperature);
            let checks = [
                ("x", c.x_fermionic, c.x_inferred, tol),
                ("concurrence", c.c_formula, c.c_wootters, tol),
                ("max|<S^z_i>|", c.max_magnetization, 0.0, MAGNETIZATION_TOL),
            ];
            for (quantity, got, want, tol) in checks {
                report.checks += 1;
                if !((got - want).abs() <= tol) {
                    report.failures.push(Failure {
                        spec: c.spec.clone(),
                        temperature: c.temperature,
                        quantity,
                        got,
                        want,
                        tol,
                    });
                }
            }
        }
    }
    Ok(report)
}
