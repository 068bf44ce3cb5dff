//! Parameter sweeps emitted as CSV.

use sensmgmt::{
    gospa_closed_form_decision, gospa_component_cost, optimal_action, Metric, MetricParams, MultiBernoulli,
    SensingCost, SensorModel,
};

use crate::format::{fmt_num, Csv};
use crate::CliError;

/// Values of one swept variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    values: Vec<f64>,
}

impl Grid {
    /// `min, min + step, ...` up to `max`; `max` is included when it lies on
    /// the grid up to rounding.
    pub fn range(min: f64, max: f64, step: f64) -> Result<Self, CliError> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(CliError::Invalid(format!("grid step {step} must be positive")));
        }
        if !(min.is_finite() && max.is_finite() && min <= max) {
            return Err(CliError::Invalid(format!("grid bounds {min}..{max} are invalid")));
        }
        let span = (max - min) / step;
        let count = (span + 1e-9).floor() as usize;
        let values = (0..=count).map(|k| (min + k as f64 * step).min(max)).collect();
        Ok(Self { values })
    }

    pub fn list(values: Vec<f64>) -> Result<Self, CliError> {
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Err(CliError::Invalid("grid needs at least one finite value".into()));
        }
        Ok(Self { values })
    }

    /// Parses `min:max:step` or a comma-separated list.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Invalid(format!("'{t}' is not a number in grid '{text}'")))
        };
        let parts: Vec<&str> = text.split(':').collect();
        match parts.len() {
            3 => Self::range(num(parts[0])?, num(parts[1])?, num(parts[2])?),
            1 => Self::list(text.split(',').map(num).collect::<Result<_, _>>()?),
            _ => Err(CliError::Invalid(format!("grid '{text}' must be min:max:step or a list"))),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn check_probabilities(&self, name: &str) -> Result<(), CliError> {
        match self.values.iter().find(|&&v| !(0.0..=1.0).contains(&v)) {
            Some(v) => Err(CliError::Invalid(format!("{name} value {v} outside [0, 1]"))),
            None => Ok(()),
        }
    }
}

/// Fixed model parameters shared by the sweeps.
#[derive(Debug, Clone, Copy)]
pub struct Model {
    pub cutoff: f64,
    pub sensor: SensorModel<f64>,
}

impl Model {
    pub fn new(cutoff: f64, detection_probability: f64) -> Result<Self, CliError> {
        MetricParams::squared(cutoff)?;
        Ok(Self {
            cutoff,
            sensor: SensorModel::new(detection_probability)?,
        })
    }

    fn belief(&self, existences: &[f64]) -> Result<MultiBernoulli<f64>, CliError> {
        Ok(MultiBernoulli::on_grid(existences, &MetricParams::squared(self.cutoff)?)?)
    }
}

fn bit(b: bool) -> String {
    if b { "1" } else { "0" }.to_string()
}

/// `r,s,cost_a0,cost_a1` from the closed-form single-target GOSPA costs.
pub fn cost_curve(model: &Model, sensing_costs: &Grid, r_grid: &Grid) -> Result<String, CliError> {
    r_grid.check_probabilities("r")?;
    let mut csv = Csv::with_header(&["r", "s", "cost_a0", "cost_a1"]);
    for &s in sensing_costs.values() {
        let sensing = SensingCost::new(s)?;
        for &r in r_grid.values() {
            let c0 = gospa_component_cost(r, &model.sensor, model.cutoff, &sensing, false)?;
            let c1 = gospa_component_cost(r, &model.sensor, model.cutoff, &sensing, true)?;
            csv.row([fmt_num(r), fmt_num(s), fmt_num(c0), fmt_num(c1)]);
        }
    }
    Ok(csv.into_string())
}

/// `r,s,optimal_a` from the closed-form GOSPA decision rule.
pub fn region1(model: &Model, r_grid: &Grid, s_grid: &Grid) -> Result<String, CliError> {
    r_grid.check_probabilities("r")?;
    let mut csv = Csv::with_header(&["r", "s", "optimal_a"]);
    for &s in s_grid.values() {
        let sensing = SensingCost::new(s)?;
        for &r in r_grid.values() {
            let a = gospa_closed_form_decision(r, &model.sensor, model.cutoff, &sensing);
            csv.row([fmt_num(r), fmt_num(s), bit(a)]);
        }
    }
    Ok(csv.into_string())
}

/// `r1,r2,metric,a1,a2`: optimal joint action for two components.
pub fn region2(
    model: &Model,
    sensing_cost: f64,
    r1_grid: &Grid,
    r2_grid: &Grid,
    metrics: &[Metric],
) -> Result<String, CliError> {
    r1_grid.check_probabilities("r1")?;
    r2_grid.check_probabilities("r2")?;
    let sensing = SensingCost::new(sensing_cost)?;
    let mut csv = Csv::with_header(&["r1", "r2", "metric", "a1", "a2"]);
    for &metric in metrics {
        for &r1 in r1_grid.values() {
            for &r2 in r2_grid.values() {
                let d = optimal_action(&model.belief(&[r1, r2])?, &model.sensor, model.cutoff, &sensing, metric)?;
                let a = d.optimal_action.bits();
                csv.row([fmt_num(r1), fmt_num(r2), metric.to_string(), bit(a[0]), bit(a[1])]);
            }
        }
    }
    Ok(csv.into_string())
}

/// `r1,metric,a1,a2`: optimal joint action along `r1` with `r2` fixed.
pub fn slice(model: &Model, sensing_cost: f64, r2: f64, r1_grid: &Grid, metrics: &[Metric]) -> Result<String, CliError> {
    r1_grid.check_probabilities("r1")?;
    Grid::list(vec![r2])?.check_probabilities("r2")?;
    let sensing = SensingCost::new(sensing_cost)?;
    let mut csv = Csv::with_header(&["r1", "metric", "a1", "a2"]);
    for &metric in metrics {
        for &r1 in r1_grid.values() {
            let d = optimal_action(&model.belief(&[r1, r2])?, &model.sensor, model.cutoff, &sensing, metric)?;
            let a = d.optimal_action.bits();
            csv.row([fmt_num(r1), metric.to_string(), bit(a[0]), bit(a[1])]);
        }
    }
    Ok(csv.into_string())
}
