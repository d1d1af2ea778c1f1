//! Figure-ready tables and the other sweeps exposed on the command line.

use std::fmt;
use std::str::FromStr;

use crate::analytics::{
    dimer_concurrence_fidelity, dimer_gap_asymptotic, dimer_ratio, endbond_gap_approx, endbond_x_interpolated,
    endbond_x_largelambda, endbond_x_smalllambda, fit_surface_order,
};
use crate::error::{Error, Result};
use crate::model::{ChainSpec, Pattern};
use crate::observables::{
    concurrence_from_x, end_to_end_correlation, energy_gap, fidelity_from_x, fully_entangled_fraction, ThermalContext,
};
use crate::spectral::{endpoint_spectrum, smallest_magnitude_eigenvalue, EndpointModes};
use crate::sweep::{linear_grid, ordered_map, SweepResult};

/// Default grids for each figure.
pub mod manifest {
    pub const SCALING_DELTAS: [f64; 3] = [0.15, 0.2, 0.3];
    pub const SCALING_LENGTHS: (usize, usize, usize) = (16, 64, 2);
    pub const CONC_DIMER_LENGTH: usize = 400;
    pub const CONC_DIMER_DELTAS: (f64, f64, f64) = (0.0, 0.998, 0.002);
    pub const CONC_ENDBOND_LENGTHS: [usize; 5] = [26, 50, 100, 200, 400];
    pub const CONC_ENDBOND_LAMBDAS: (f64, f64, f64) = (0.001, 0.5, 0.001);
    pub const X_COMPARISON_LENGTH: usize = 100;
    pub const X_COMPARISON_LAMBDAS: (f64, f64, f64) = (0.01, 1.0, 0.01);
    pub const GAPS_LAMBDAS: [f64; 3] = [0.2, 0.5, 1.0];
    pub const GAPS_LENGTHS: (usize, usize, usize) = (100, 1000, 50);
    pub const FIDELITY_LENGTH: usize = 50;
    pub const FIDELITY_LAMBDAS: [f64; 3] = [0.1, 0.2, 0.4];
    pub const FIDELITY_TEMPERATURES: (f64, f64, f64) = (0.0, 0.02, 0.0002);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureId {
    Scaling,
    ConcDimer,
    ConcEndbond,
    XComparison,
    Gaps,
    FidelityT,
}

impl FigureId {
    pub const ALL: [FigureId; 6] = [
        FigureId::Scaling,
        FigureId::ConcDimer,
        FigureId::ConcEndbond,
        FigureId::XComparison,
        FigureId::Gaps,
        FigureId::FidelityT,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Scaling => "scaling",
            FigureId::ConcDimer => "conc-dimer",
            FigureId::ConcEndbond => "conc-endbond",
            FigureId::XComparison => "x-comparison",
            FigureId::Gaps => "gaps",
            FigureId::FidelityT => "fidelity-T",
        }
    }
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown figure id '{s}'")))
    }
}

/// Grid overrides; `None` keeps the manifest default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FigureOverrides {
    pub deltas: Option<Vec<f64>>,
    pub lambdas: Option<Vec<f64>>,
    pub lengths: Option<Vec<usize>>,
    pub temperatures: Option<Vec<f64>>,
}

fn int_grid((start, stop, step): (usize, usize, usize)) -> Vec<usize> {
    (start..=stop).step_by(step).collect()
}

fn grid(g: (f64, f64, f64)) -> Vec<f64> {
    linear_grid(g.0, g.1, g.2).expect("manifest grids are valid")
}

fn single_length(over: &FigureOverrides, default: usize) -> Result<usize> {
    match over.lengths.as_deref() {
        None => Ok(default),
        Some([l]) => Ok(*l),
        Some(_) => Err(Error::Parameter("this figure takes a single length".into())),
    }
}

fn zero_t_x(spec: &ChainSpec<f64>) -> Result<f64> {
    let modes = endpoint_spectrum(&spec.adjacency())?;
    Ok(end_to_end_correlation(&modes, ThermalContext::ground()))
}

fn fmt_list<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn generate_figure(id: FigureId, over: &FigureOverrides, workers: Option<usize>) -> Result<SweepResult> {
    let table = match id {
        FigureId::Scaling => scaling(over, workers)?,
        FigureId::ConcDimer => conc_dimer(over, workers)?,
        FigureId::ConcEndbond => conc_endbond(over, workers)?,
        FigureId::XComparison => x_comparison(over, workers)?,
        FigureId::Gaps => gaps(over, workers)?,
        FigureId::FidelityT => fidelity_t(over, workers)?,
    };
    Ok(table.with_meta("figure", id))
}

fn scaling(over: &FigureOverrides, workers: Option<usize>) -> Result<SweepResult> {
    let deltas = over.deltas.clone().unwrap_or(manifest::SCALING_DELTAS.to_vec());
    let lengths = over.lengths.clone().unwrap_or(int_grid(manifest::SCALING_LENGTHS));
    let mut table = SweepResult::new([
        "delta",
        "L",
        "abs_x",
        "x_inf",
        "residual",
        "log_scaled_residual",
        "log_scaled_fit",
    ])
    .with_meta("deltas", fmt_list(&deltas))
    .with_meta("lengths", fmt_list(&lengths));
    for &delta in &deltas {
        let xs = ordered_map(&lengths, workers, |&l| zero_t_x(&ChainSpec::dimer(l, delta, 1.0)?))?;
        let pairs: Vec<(usize, f64)> = lengths.iter().copied().zip(xs.iter().copied()).collect();
        let fit = fit_surface_order(delta, &pairs)?;
        for (&l, &x) in lengths.iter().zip(&xs) {
            let lf = l as f64;
            let residual = fit.x_inf - x.abs();
            table.push_row(vec![
                delta,
                lf,
                x.abs(),
                fit.x_inf,
                residual,
                (residual / (lf * lf)).ln(),
                fit.intercept + fit.slope * lf,
            ])?;
        }
    }
    Ok(table)
}

fn conc_dimer(over: &FigureOverrides, workers: Option<usize>) -> Result<SweepResult> {
    let length = single_length(over, manifest::CONC_DIMER_LENGTH)?;
    let deltas = over.deltas.clone().unwrap_or(grid(manifest::CONC_DIMER_DELTAS));
    let numeric_col = format!("C_numeric_L{length}");
    let mut table = SweepResult::new(["delta", "C_asymptotic", numeric_col.as_str()]).with_meta("length", length);
    let rows = ordered_map(&deltas, workers, |&delta| {
        let x = zero_t_x(&ChainSpec::dimer(length, delta, 1.0)?)?;
        Ok(vec![
            delta,
            dimer_concurrence_fidelity(dimer_ratio(delta)).0,
            concurrence_from_x(x),
        ])
    })?;
    for row in rows {
        table.push_row(row)?;
    }
    Ok(table)
}

fn conc_endbond(over: &FigureOverrides, workers: Option<usize>) -> Result<SweepResult> {
    let lengths = over.lengths.clone().unwrap_or(manifest::CONC_ENDBOND_LENGTHS.to_vec());
    let lambdas = over.lambdas.clone().unwrap_or(grid(manifest::CONC_ENDBOND_LAMBDAS));
    let points: Vec<(usize, f64)> = lengths
        .iter()
        .flat_map(|&l| lambdas.iter().map(move |&lam| (l, lam)))
        .collect();
    let mut table = SweepResult::new(["L", "lambda", "x", "concurrence"]).with_meta("lengths", fmt_list(&lengths));
    let rows = ordered_map(&points, workers, |&(l, lam)| {
        let x = zero_t_x(&ChainSpec::end_bond(l, lam, 1.0)?)?;
        Ok(vec![l as f64, lam, x, concurrence_from_x(x)])
    })?;
    for row in rows {
        table.push_row(row)?;
    }
    Ok(table)
}

fn x_comparison(over: &FigureOverrides, workers: Option<usize>) -> Result<SweepResult> {
    let length = single_length(over, manifest::X_COMPARISON_LENGTH)?;
    let lambdas = over.lambdas.clone().unwrap_or(grid(manifest::X_COMPARISON_LAMBDAS));
    let mut table = SweepResult::new([
        "lambda",
        "x_numeric",
        "x_smalllambda",
        "x_largelambda",
        "x_interpolated",
    ])
    .with_meta("length", length);
    let rows = ordered_map(&lambdas, workers, |&lam| {
        let x = zero_t_x(&ChainSpec::end_bond(length, lam, 1.0)?)?;
        Ok(vec![
            lam,
            x,
            endbond_x_smalllambda(length, lam),
            endbond_x_largelambda(length, lam),
            endbond_x_interpolated(length, lam),
        ])
    })?;
    for row in rows {
        table.push_row(row)?;
    }
    Ok(table)
}

fn gaps(over: &FigureOverrides, workers: Option<usize>) -> Result<SweepResult> {
    let lambdas = over.lambdas.clone().unwrap_or(manifest::GAPS_LAMBDAS.to_vec());
    let lengths = over.lengths.clone().unwrap_or(int_grid(manifest::GAPS_LENGTHS));
    let points: Vec<(f64, usize)> = lambdas
        .iter()
        .flat_map(|&lam| lengths.iter().map(move |&l| (lam, l)))
        .collect();
    let mut table = SweepResult::new(["lambda", "L", "gap_numeric", "gap_approx"]);
    let rows = ordered_map(&points, workers, |&(lam, l)| {
        let gap = smallest_magnitude_eigenvalue(&ChainSpec::end_bond(l, lam, 1.0)?.adjacency())?;
        Ok(vec![lam, l as f64, gap, endbond_gap_approx(l, lam)])
    })?;
    for row in rows {
        table.push_row(row)?;
    }
    Ok(table)
}

fn fidelity_t(over: &FigureOverrides, workers: Option<usize>) -> Result<SweepResult> {
    let length = single_length(over, manifest::FIDELITY_LENGTH)?;
    let lambdas = over.lambdas.clone().unwrap_or(manifest::FIDELITY_LAMBDAS.to_vec());
    let temperatures = over
        .temperatures
        .clone()
        .unwrap_or(grid(manifest::FIDELITY_TEMPERATURES));
    let mut table = SweepResult::new(["lambda", "T", "x", "fidelity"]).with_meta("length", length);
    for &lam in &lambdas {
        let modes = endpoint_spectrum(&ChainSpec::end_bond(length, lam, 1.0)?.adjacency())?;
        let rows = ordered_map(&temperatures, workers, |&t| {
            let x = end_to_end_correlation(&modes, ThermalContext::new(t)?);
            Ok(vec![lam, t, x, fidelity_from_x(x)])
        })?;
        for row in rows {
            table.push_row(row)?;
        }
    }
    Ok(table)
}

/// Parameter of a gap scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GapModel {
    Dimer { delta: f64 },
    EndBond { lambda: f64 },
}

/// Numeric lowest gap against the exponential (dimer) or algebraic
/// (end-bond) law.
pub fn gap_scan(model: GapModel, lengths: &[usize], workers: Option<usize>) -> Result<SweepResult> {
    if lengths.is_empty() {
        return Err(Error::Parameter("gap scan needs at least one length".into()));
    }
    let (name, value) = match model {
        GapModel::Dimer { delta } => ("dimer", delta),
        GapModel::EndBond { lambda } => ("end_bond", lambda),
    };
    let mut table = SweepResult::new(["L", "gap_numeric", "gap_model"])
        .with_meta("pattern", name)
        .with_meta("parameter", value);
    let rows = ordered_map(lengths, workers, |&l| {
        let (spec, law) = match model {
            GapModel::Dimer { delta } => (ChainSpec::dimer(l, delta, 1.0)?, dimer_gap_asymptotic(l, delta)),
            GapModel::EndBond { lambda } => (ChainSpec::end_bond(l, lambda, 1.0)?, endbond_gap_approx(l, lambda)),
        };
        Ok(vec![l as f64, smallest_magnitude_eigenvalue(&spec.adjacency())?, law])
    })?;
    for row in rows {
        table.push_row(row)?;
    }
    Ok(table)
}

/// Eigenvalues in units of `J` with parity `+1`/`-1`, or `0` when the chain
/// has no reflection symmetry.
pub fn spectrum_table(spec: &ChainSpec<f64>) -> Result<SweepResult> {
    let modes = endpoint_spectrum(&spec.adjacency())?;
    let mut table = SweepResult::new(["index", "lambda_over_J", "parity"])
        .with_meta("pattern", spec.pattern().name())
        .with_meta("length", spec.length());
    let parities = modes.parities();
    for (k, e) in EndpointModes::eigenvalues(&modes).iter().enumerate() {
        let parity = parities.map_or(0.0, |p| f64::from(p[k].as_i8()));
        table.push_row(vec![k as f64, e / spec.scale(), parity])?;
    }
    Ok(table)
}

/// Single `(x, C, F, f, gap)` record at temperature `T/J`.
pub fn correlation_record(spec: &ChainSpec<f64>, t_over_j: f64) -> Result<SweepResult> {
    correlation_table(spec, &[t_over_j])
}

/// One `(x, C, F, f, gap)` row per temperature `T/J`, sharing a single
/// diagonalization.
pub fn correlation_table(spec: &ChainSpec<f64>, temperatures: &[f64]) -> Result<SweepResult> {
    if temperatures.is_empty() {
        return Err(Error::Parameter("at least one temperature is required".into()));
    }
    let modes = endpoint_spectrum(&spec.adjacency())?;
    let gap = energy_gap(&modes) / spec.scale();
    let mut table =
        SweepResult::new(["L", "T", "x", "C", "F_full", "f", "gap"]).with_meta("pattern", spec.pattern().name());
    table = match spec.pattern() {
        Pattern::Dimer { delta } => table.with_meta("delta", delta),
        Pattern::EndBond { lambda } => table.with_meta("lambda", lambda),
        _ => table,
    };
    for &t_over_j in temperatures {
        let ctx = ThermalContext::new(t_over_j * spec.scale())?;
        let x = end_to_end_correlation(&modes, ctx);
        table.push_row(vec![
            spec.length() as f64,
            t_over_j,
            x,
            concurrence_from_x(x),
            fully_entangled_fraction(x),
            fidelity_from_x(x),
            gap,
        ])?;
    }
    Ok(table)
}

/// Index of the first grid point where `f` drops to or below `2/3`.
pub fn threshold_crossings(fidelity: &[f64]) -> Vec<usize> {
    let third = 2.0 / 3.0;
    fidelity
        .windows(2)
        .enumerate()
        .filter(|(_, w)| (w[0] > third) != (w[1] > third))
        .map(|(i, _)| i + 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_ids_round_trip() {
        for id in FigureId::ALL {
            assert_eq!(id.name().parse::<FigureId>().unwrap(), id);
        }
        assert!("fig7".parse::<FigureId>().is_err());
    }

    #[test]
    fn dimer_concurrence_onset() {
        let over = FigureOverrides {
            deltas: Some(linear_grid(0.12, 0.15, 0.002).unwrap()),
            ..Default::default()
        };
        let t = generate_figure(FigureId::ConcDimer, &over, None).unwrap();
        let deltas = t.column("delta").unwrap();
        let c = t.column("C_numeric_L400").unwrap();
        let first = deltas.iter().zip(&c).find(|(_, c)| **c > 0.0).unwrap().0;
        assert!(*first > 0.132 && *first <= 0.134 + 1e-12, "{first}");
    }

    #[test]
    fn gap_scan_columns() {
        let t = gap_scan(GapModel::EndBond { lambda: 0.5 }, &[100, 200], Some(2)).unwrap();
        assert_eq!(t.header(), ["L", "gap_numeric", "gap_model"]);
        assert_eq!(t.rows().len(), 2);
        assert!(gap_scan(GapModel::Dimer { delta: 0.5 }, &[], None).is_err());
    }

    #[test]
    fn spectrum_table_parities() {
        let t = spectrum_table(&ChainSpec::uniform(4, 1.0).unwrap()).unwrap();
        assert_eq!(t.column("parity").unwrap(), vec![-1.0, 1.0, -1.0, 1.0]);
        let t = spectrum_table(&ChainSpec::custom(vec![1.0, 0.2, 0.7], 1.0).unwrap()).unwrap();
        assert!(t.column("parity").unwrap().iter().all(|p| *p == 0.0));
    }

    #[test]
    fn correlation_record_uses_units_of_j() {
        let a = correlation_record(&ChainSpec::uniform(4, 1.0).unwrap(), 0.3).unwrap();
        let b = correlation_record(&ChainSpec::uniform(4, 2.5).unwrap(), 0.3).unwrap();
        for (x, y) in a.rows()[0].iter().zip(&b.rows()[0]) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn crossings() {
        assert_eq!(threshold_crossings(&[0.9, 0.8, 0.6, 0.5]), vec![2]);
        assert!(threshold_crossings(&[0.6, 0.5]).is_empty());
    }

    #[test]
    fn figures_are_deterministic_under_parallelism() {
        let over = FigureOverrides {
            lambdas: Some(vec![0.1, 0.2]),
            temperatures: Some(vec![0.0, 0.001, 0.01]),
            ..Default::default()
        };
        let a = generate_figure(FigureId::FidelityT, &over, Some(1)).unwrap().to_csv();
        let b = generate_figure(FigureId::FidelityT, &over, Some(4)).unwrap().to_csv();
        assert_eq!(a, b);
    }
}
