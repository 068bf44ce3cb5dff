//! Seeded Monte-Carlo estimates of expected action costs.
//!
//! Each trial draws target existence and detections, forms the posterior,
//! applies the optimal estimator and scores the realised squared metric
//! error with the set metrics directly. Trial `k` uses its own ChaCha
//! stream derived from `(seed, k)`, so results do not depend on how trials
//! are scheduled across threads.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bernoulli::{posterior_existence, Action, MultiBernoulli, Outcome, SensingCost, SensorModel};
use crate::error::{Error, Result};
use crate::estimation::optimal_mask;
use crate::metrics::{Metric, MetricParams, PointSet};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub num_trials: usize,
    pub seed: u64,
}

impl McConfig {
    pub fn new(num_trials: usize, seed: u64) -> Result<Self> {
        if num_trials == 0 {
            return Err(Error::InvalidParams("num_trials must be at least 1".into()));
        }
        Ok(Self { num_trials, seed })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McResult<T> {
    pub mean: T,
    pub std_error: T,
    pub num_trials: usize,
}

impl<T: Scalar> McResult<T> {
    /// `|mean - expected|` in units of the standard error.
    pub fn within_sigmas(&self, expected: T, sigmas: T) -> bool {
        // Rounding floor for zero-variance scenarios.
        let floor = T::tie_tolerance() * expected.abs().max(T::one());
        (self.mean - expected).abs() <= sigmas * self.std_error + floor
    }
}

/// RNG for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn bernoulli_draw<R: Rng + ?Sized, T: Scalar>(rng: &mut R, probability: T) -> bool {
    let p = probability.to_f64().expect("probability converts to f64");
    rng.gen::<f64>() < p
}

/// One realisation of the squared metric error after taking `action`.
///
/// Component `i` is realised at `2 c i` on the real line.
pub fn simulate_trial<T: Scalar, R: Rng + ?Sized>(
    belief: &MultiBernoulli<T>,
    sensor: &SensorModel<T>,
    cutoff: T,
    action: &Action,
    metric: Metric,
    rng: &mut R,
) -> Result<T> {
    if action.len() != belief.len() {
        return Err(Error::LengthMismatch {
            expected: belief.len(),
            found: action.len(),
        });
    }
    let params = MetricParams::squared(cutoff)?;
    let spacing = cutoff * T::lit(2.0);
    let mut truth = Vec::new();
    let mut posterior = Vec::with_capacity(belief.len());
    for (i, component) in belief.components().iter().enumerate() {
        let r = component.existence();
        let exists = bernoulli_draw(rng, r);
        if exists {
            truth.push(vec![spacing * T::from_count(i)]);
        }
        let observed = action.is_active(i);
        let outcome = if observed && exists && bernoulli_draw(rng, sensor.detection_probability()) {
            Outcome::Detected
        } else {
            Outcome::Empty
        };
        posterior.push(posterior_existence(r, sensor, observed, outcome)?);
    }
    let estimate = optimal_mask(&posterior, metric, cutoff)?;
    let locations: Vec<Vec<T>> = (0..belief.len()).map(|i| vec![spacing * T::from_count(i)]).collect();
    let truth = PointSet::new(truth)?;
    let d = metric.distance(&truth, &estimate.mask.estimated_set(&locations), &params)?;
    Ok(d * d)
}

/// Monte-Carlo estimate of the total cost of `action`.
pub fn mc_expected_cost<T: Scalar>(
    belief: &MultiBernoulli<T>,
    sensor: &SensorModel<T>,
    cutoff: T,
    sensing: &SensingCost<T>,
    action: &Action,
    metric: Metric,
    cfg: &McConfig,
) -> Result<McResult<T>> {
    let samples = (0..cfg.num_trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = trial_rng(cfg.seed, k as u64);
            simulate_trial(belief, sensor, cutoff, action, metric, &mut rng)
        })
        .collect::<Result<Vec<T>>>()?;

    let n = T::from_count(samples.len());
    let mean = samples.iter().copied().sum::<T>() / n;
    let std_error = if samples.len() > 1 {
        let ss = samples.iter().map(|&x| (x - mean) * (x - mean)).sum::<T>();
        (ss / (n - T::one())).sqrt() / n.sqrt()
    } else {
        T::zero()
    };
    Ok(McResult {
        mean: mean + sensing.of(action),
        std_error,
        num_trials: samples.len(),
    })
}
