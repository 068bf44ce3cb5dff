//! Myopic sensor management: expected cost of each action and the optimal
//! joint action.
//!
//! The cost of an action is the expected minimum mean-square metric error
//! after the measurement plus the sensing cost. Under GOSPA the cost is a
//! sum of per-component terms with a closed form; under OSPA and UOSPA the
//! components interact and the cost is computed by enumerating detection
//! outcomes.

use crate::bernoulli::{
    outcome_probability, posterior_existence, Action, DetectionOutcome, MultiBernoulli, Outcome,
    SensingCost, SensorModel,
};
use crate::error::{Error, Result};
use crate::estimation::{optimal_mask_with_limit, DEFAULT_MASK_LIMIT};
use crate::metrics::Metric;
use crate::scalar::{approx_tied, Scalar};

/// Largest number of components for which all `2^N` actions are enumerated.
pub const DEFAULT_ACTION_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct ActionCost<T> {
    pub action: Action,
    pub expected_ms_error: T,
    pub sensing_cost: T,
    pub total: T,
}

impl<T: Scalar> ActionCost<T> {
    fn new(action: Action, expected_ms_error: T, sensing_cost: T) -> Self {
        Self {
            action,
            expected_ms_error,
            sensing_cost,
            total: expected_ms_error + sensing_cost,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecisionSummary<T> {
    pub costs: Vec<ActionCost<T>>,
    pub optimal_action: Action,
}

impl<T: Scalar> DecisionSummary<T> {
    pub fn optimal_cost(&self) -> &ActionCost<T> {
        self.costs
            .iter()
            .find(|c| c.action == self.optimal_action)
            .expect("optimal action is among the evaluated actions")
    }
}

/// Preference among actions whose totals tie.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Fewer active sensors, then lexicographically smallest.
    #[default]
    PreferIdle,
    /// More active sensors, then lexicographically largest.
    PreferSensing,
}

/// `min(r, 1 - r)`.
pub fn t_fn<T: Scalar>(r: T) -> Result<T> {
    if !(r >= T::zero() && r <= T::one()) {
        return Err(Error::InvalidProbability {
            name: "existence",
            value: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(if r < T::lit(0.5) { r } else { T::one() - r })
}

/// Closed-form GOSPA cost of one Bernoulli component for action bit `observe`.
pub fn gospa_component_cost<T: Scalar>(
    existence: T,
    sensor: &SensorModel<T>,
    cutoff: T,
    sensing: &SensingCost<T>,
    observe: bool,
) -> Result<T> {
    let half = cutoff * cutoff / T::lit(2.0);
    if !observe {
        return Ok(half * t_fn(existence)?);
    }
    let pd = sensor.detection_probability();
    let miss = T::one() - existence * pd;
    let error = if miss <= T::zero() {
        T::zero()
    } else {
        half * t_fn(posterior_existence(existence, sensor, true, Outcome::Empty)?)? * miss
    };
    Ok(error + sensing.per_sensor_cost())
}

fn check_action<T: Scalar>(belief: &MultiBernoulli<T>, action: &Action) -> Result<()> {
    if belief.len() == action.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: belief.len(),
            found: action.len(),
        })
    }
}

/// Additive closed-form GOSPA cost of a joint action.
pub fn gospa_action_cost<T: Scalar>(
    belief: &MultiBernoulli<T>,
    sensor: &SensorModel<T>,
    cutoff: T,
    sensing: &SensingCost<T>,
    action: &Action,
) -> Result<ActionCost<T>> {
    check_action(belief, action)?;
    let free = SensingCost::new(T::zero())?;
    let mut error = T::zero();
    for (component, &observe) in belief.components().iter().zip(action.bits()) {
        error = error + gospa_component_cost(component.existence(), sensor, cutoff, &free, observe)?;
    }
    Ok(ActionCost::new(action.clone(), error, sensing.of(action)))
}

/// Measure-band edges `(2s / (c^2 p_D), (c^2/2 - s) / (c^2 (1 - p_D/2)))`.
///
/// The band is non-empty iff `s < c^2 p_D / 4`.
pub fn gospa_measure_band<T: Scalar>(sensor: &SensorModel<T>, cutoff: T, sensing: &SensingCost<T>) -> (T, T) {
    let c2 = cutoff * cutoff;
    let pd = sensor.detection_probability();
    let s = sensing.per_sensor_cost();
    let two = T::lit(2.0);
    let lower = two * s / (c2 * pd);
    let upper = (c2 / two - s) / (c2 * (T::one() - pd / two));
    (lower, upper)
}

/// `1 / (2 - p_D)`: above this existence probability both actions report
/// the target whatever is measured.
pub fn gospa_equal_cost_onset<T: Scalar>(sensor: &SensorModel<T>) -> T {
    (T::lit(2.0) - sensor.detection_probability()).recip()
}

/// Optimal single-component GOSPA action from the closed-form band.
///
/// With `s > 0` the target is observed iff its existence lies strictly inside
/// the measure band and `s < c^2 p_D / 4`. With `s = 0`, observing is
/// strictly better iff `0 < r < 1 / (2 - p_D)` and `p_D > 0`; elsewhere the
/// costs tie and the idle action is returned.
pub fn gospa_closed_form_decision<T: Scalar>(
    existence: T,
    sensor: &SensorModel<T>,
    cutoff: T,
    sensing: &SensingCost<T>,
) -> bool {
    let pd = sensor.detection_probability();
    let s = sensing.per_sensor_cost();
    if s == T::zero() {
        return pd > T::zero() && existence > T::zero() && existence < gospa_equal_cost_onset(sensor);
    }
    if s >= cutoff * cutoff * pd / T::lit(4.0) {
        return false;
    }
    let (lower, upper) = gospa_measure_band(sensor, cutoff, sensing);
    lower < existence && existence < upper
}

/// Expected cost of `action` under `metric` by enumerating the detection
/// outcomes of the observed components.
pub fn metric_action_cost<T: Scalar>(
    belief: &MultiBernoulli<T>,
    sensor: &SensorModel<T>,
    cutoff: T,
    sensing: &SensingCost<T>,
    action: &Action,
    metric: Metric,
) -> Result<ActionCost<T>> {
    check_action(belief, action)?;
    if belief.len() > DEFAULT_MASK_LIMIT {
        return Err(Error::EnumerationLimit {
            n: belief.len(),
            limit: DEFAULT_MASK_LIMIT,
        });
    }
    let prior = belief.existences();
    let mut expected = T::zero();
    for outcome in DetectionOutcome::enumerate(action) {
        let mut probability = T::one();
        let mut posterior = prior.clone();
        for (i, &tag) in outcome.tags().iter().enumerate() {
            let observed = action.is_active(i);
            probability = probability * outcome_probability(prior[i], observed, sensor, tag)?;
            if probability == T::zero() {
                break;
            }
            posterior[i] = posterior_existence(prior[i], sensor, observed, tag)?;
        }
        if probability == T::zero() {
            continue;
        }
        let best = optimal_mask_with_limit(&posterior, metric, cutoff, DEFAULT_MASK_LIMIT)?;
        expected = expected + probability * best.mmse;
    }
    Ok(ActionCost::new(action.clone(), expected, sensing.of(action)))
}

/// All actions over `n` sensors in tie-break order.
pub fn all_actions(n: usize, tie_break: TieBreak) -> Vec<Action> {
    let mut actions: Vec<Action> = (0..1usize << n)
        .map(|code| Action::new((0..n).map(|i| code >> (n - 1 - i) & 1 == 1).collect()))
        .collect();
    actions.sort_by(|a, b| a.active_count().cmp(&b.active_count()).then_with(|| a.cmp(b)));
    if tie_break == TieBreak::PreferSensing {
        actions.reverse();
    }
    actions
}

pub fn optimal_action<T: Scalar>(
    belief: &MultiBernoulli<T>,
    sensor: &SensorModel<T>,
    cutoff: T,
    sensing: &SensingCost<T>,
    metric: Metric,
) -> Result<DecisionSummary<T>> {
    optimal_action_with(belief, sensor, cutoff, sensing, metric, TieBreak::default())
}

/// Enumerates every joint action; totals within the tie tolerance of the
/// minimum are resolved by `tie_break`.
pub fn optimal_action_with<T: Scalar>(
    belief: &MultiBernoulli<T>,
    sensor: &SensorModel<T>,
    cutoff: T,
    sensing: &SensingCost<T>,
    metric: Metric,
    tie_break: TieBreak,
) -> Result<DecisionSummary<T>> {
    if belief.len() > DEFAULT_ACTION_LIMIT {
        return Err(Error::EnumerationLimit {
            n: belief.len(),
            limit: DEFAULT_ACTION_LIMIT,
        });
    }
    let costs = all_actions(belief.len(), tie_break)
        .into_iter()
        .map(|a| metric_action_cost(belief, sensor, cutoff, sensing, &a, metric))
        .collect::<Result<Vec<_>>>()?;
    let best = costs.iter().map(|c| c.total).fold(T::infinity(), T::min);
    let optimal_action = costs
        .iter()
        .find(|c| approx_tied(c.total, best))
        .map(|c| c.action.clone())
        .expect("at least one action");
    Ok(DecisionSummary { costs, optimal_action })
}
