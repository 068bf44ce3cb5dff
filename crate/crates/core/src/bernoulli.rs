//! Point-mass Bernoulli and multi-Bernoulli beliefs under a clutter-free,
//! detection-only sensor.
//!
//! Each sensor covers the region of one component, so a measurement set
//! reduces to a per-component tag: nothing was received, or the target was
//! detected. The spatial likelihood of a detection integrates out of every
//! expected cost and is not represented.

use std::fmt;

use crate::error::{Error, Result};
use crate::metrics::{base_distance, MetricParams};
use crate::scalar::Scalar;

fn check_probability<T: Scalar>(name: &'static str, value: T) -> Result<()> {
    if value >= T::zero() && value <= T::one() {
        Ok(())
    } else {
        Err(Error::InvalidProbability {
            name,
            value: value.to_f64().unwrap_or(f64::NAN),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliComponent<T> {
    existence: T,
    location: Vec<T>,
}

impl<T: Scalar> BernoulliComponent<T> {
    pub fn new(existence: T, location: Vec<T>) -> Result<Self> {
        check_probability("existence", existence)?;
        if location.is_empty() {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { existence, location })
    }

    pub fn existence(&self) -> T {
        self.existence
    }

    pub fn location(&self) -> &[T] {
        &self.location
    }
}

/// Independent Bernoulli components whose locations are pairwise farther
/// apart than the metric cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiBernoulli<T> {
    components: Vec<BernoulliComponent<T>>,
}

impl<T: Scalar> MultiBernoulli<T> {
    /// Validates the separation `d(x_i, x_j) > c` against `params`.
    pub fn new(components: Vec<BernoulliComponent<T>>, params: &MetricParams<T>) -> Result<Self> {
        for i in 0..components.len() {
            for j in (i + 1)..components.len() {
                let d = base_distance(&components[i].location, &components[j].location)?;
                if d <= params.cutoff() {
                    return Err(Error::InsufficientSeparation {
                        first: i,
                        second: j,
                        distance: d.to_f64().unwrap_or(f64::NAN),
                        cutoff: params.cutoff().to_f64().unwrap_or(f64::NAN),
                    });
                }
            }
        }
        Ok(Self { components })
    }

    /// Places component `i` at `2 c i` on the real line.
    pub fn on_grid(existences: &[T], params: &MetricParams<T>) -> Result<Self> {
        let spacing = params.cutoff() * T::lit(2.0);
        let components = existences
            .iter()
            .enumerate()
            .map(|(i, &r)| BernoulliComponent::new(r, vec![spacing * T::from_count(i)]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(components, params)
    }

    pub fn components(&self) -> &[BernoulliComponent<T>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn existences(&self) -> Vec<T> {
        self.components.iter().map(|c| c.existence).collect()
    }

    pub fn locations(&self) -> Vec<Vec<T>> {
        self.components.iter().map(|c| c.location.clone()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensorModel<T> {
    detection_probability: T,
}

impl<T: Scalar> SensorModel<T> {
    pub fn new(detection_probability: T) -> Result<Self> {
        check_probability("detection probability", detection_probability)?;
        Ok(Self { detection_probability })
    }

    pub fn detection_probability(&self) -> T {
        self.detection_probability
    }
}

/// Additive sensing cost: `s` per active sensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensingCost<T> {
    per_sensor_cost: T,
}

impl<T: Scalar> SensingCost<T> {
    pub fn new(per_sensor_cost: T) -> Result<Self> {
        if per_sensor_cost >= T::zero() && per_sensor_cost.is_finite() {
            Ok(Self { per_sensor_cost })
        } else {
            Err(Error::InvalidSensingCost(per_sensor_cost.to_f64().unwrap_or(f64::NAN)))
        }
    }

    pub fn per_sensor_cost(&self) -> T {
        self.per_sensor_cost
    }

    pub fn of(&self, action: &Action) -> T {
        self.per_sensor_cost * T::from_count(action.active_count())
    }
}

/// Which sensors observe their region this step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Action {
    bits: Vec<bool>,
}

impl Action {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn idle(n: usize) -> Self {
        Self { bits: vec![false; n] }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Self {
            bits: bits.iter().map(|&b| b != 0).collect(),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_active(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn active_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn active_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, &b) in self.bits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if b { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Empty,
    Detected,
}

/// Per-component measurement tags for one sensing step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectionOutcome {
    tags: Vec<Outcome>,
}

impl DetectionOutcome {
    pub fn new(tags: Vec<Outcome>, action: &Action) -> Result<Self> {
        if tags.len() != action.len() {
            return Err(Error::LengthMismatch {
                expected: action.len(),
                found: tags.len(),
            });
        }
        if tags
            .iter()
            .zip(action.bits())
            .any(|(&t, &a)| t == Outcome::Detected && !a)
        {
            return Err(Error::DetectionWithoutObservation);
        }
        Ok(Self { tags })
    }

    pub fn tags(&self) -> &[Outcome] {
        &self.tags
    }

    /// All `2^k` outcomes of an action with `k` active sensors, with
    /// detections enumerated as binary counters over the active indices.
    pub fn enumerate(action: &Action) -> Vec<DetectionOutcome> {
        let active: Vec<usize> = action.active_indices().collect();
        (0..1usize << active.len())
            .map(|code| {
                let mut tags = vec![Outcome::Empty; action.len()];
                for (k, &i) in active.iter().enumerate() {
                    if code >> (active.len() - 1 - k) & 1 == 1 {
                        tags[i] = Outcome::Detected;
                    }
                }
                DetectionOutcome { tags }
            })
            .collect()
    }
}

/// Probability of the measurement tag for one component.
pub fn outcome_probability<T: Scalar>(
    existence: T,
    observed: bool,
    sensor: &SensorModel<T>,
    outcome: Outcome,
) -> Result<T> {
    check_probability("existence", existence)?;
    let detect = existence * sensor.detection_probability;
    match (observed, outcome) {
        (false, Outcome::Empty) => Ok(T::one()),
        (false, Outcome::Detected) => Err(Error::DetectionWithoutObservation),
        (true, Outcome::Empty) => Ok(T::one() - detect),
        (true, Outcome::Detected) => Ok(detect),
    }
}

/// Bayes update of the existence probability after one sensing step.
pub fn posterior_existence<T: Scalar>(
    existence: T,
    sensor: &SensorModel<T>,
    observed: bool,
    outcome: Outcome,
) -> Result<T> {
    check_probability("existence", existence)?;
    let pd = sensor.detection_probability;
    match (observed, outcome) {
        (false, Outcome::Empty) => Ok(existence),
        (false, Outcome::Detected) => Err(Error::DetectionWithoutObservation),
        (true, Outcome::Detected) => {
            if existence * pd == T::zero() {
                Err(Error::ImpossibleOutcome {
                    existence: existence.to_f64().unwrap_or(f64::NAN),
                    detection_probability: pd.to_f64().unwrap_or(f64::NAN),
                })
            } else {
                Ok(T::one())
            }
        }
        (true, Outcome::Empty) => {
            let miss = T::one() - existence * pd;
            if miss <= T::zero() {
                Err(Error::ImpossibleOutcome {
                    existence: existence.to_f64().unwrap_or(f64::NAN),
                    detection_probability: pd.to_f64().unwrap_or(f64::NAN),
                })
            } else {
                Ok((existence * (T::one() - pd) / miss).min(T::one()))
            }
        }
    }
}

/// Distribution of the number of existing targets: the convolution of the
/// component Bernoulli laws. Entry `n` is the probability of `n` targets.
pub fn cardinality_distribution<T: Scalar>(existences: &[T]) -> Vec<T> {
    let mut rho = Vec::with_capacity(existences.len() + 1);
    rho.push(T::one());
    for &r in existences {
        rho.push(T::zero());
        for n in (0..rho.len()).rev() {
            let stay = rho[n] * (T::one() - r);
            let grow = if n > 0 { rho[n - 1] * r } else { T::zero() };
            rho[n] = stay + grow;
        }
    }
    rho
}

/// Cardinality distribution with component `index` removed.
pub fn leave_one_out_cardinality<T: Scalar>(existences: &[T], index: usize) -> Result<Vec<T>> {
    if index >= existences.len() {
        return Err(Error::IndexOutOfRange {
            index,
            len: existences.len(),
        });
    }
    let rest: Vec<T> = existences
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index)
        .map(|(_, &r)| r)
        .collect();
    Ok(cardinality_distribution(&rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sensor(pd: f64) -> SensorModel<f64> {
        SensorModel::new(pd).unwrap()
    }

    #[test]
    fn outcome_probabilities() {
        let s = sensor(0.7);
        assert_abs_diff_eq!(outcome_probability(0.5, true, &s, Outcome::Detected).unwrap(), 0.35, epsilon = 1e-15);
        assert_abs_diff_eq!(outcome_probability(0.5, true, &s, Outcome::Empty).unwrap(), 0.65, epsilon = 1e-15);
        assert_eq!(outcome_probability(0.123, false, &s, Outcome::Empty).unwrap(), 1.0);
        assert_eq!(
            outcome_probability(0.5, false, &s, Outcome::Detected),
            Err(Error::DetectionWithoutObservation)
        );
    }

    #[test]
    fn posterior_examples() {
        let s = sensor(0.7);
        assert_abs_diff_eq!(
            posterior_existence(0.5, &s, true, Outcome::Empty).unwrap(),
            0.15 / 0.65,
            epsilon = 1e-15
        );
        assert_eq!(posterior_existence(0.5, &s, true, Outcome::Detected).unwrap(), 1.0);
        assert_eq!(posterior_existence(0.3, &s, false, Outcome::Empty).unwrap(), 0.3);
    }

    #[test]
    fn impossible_outcomes() {
        let certain = sensor(1.0);
        assert!(matches!(
            posterior_existence(1.0, &certain, true, Outcome::Empty),
            Err(Error::ImpossibleOutcome { .. })
        ));
        assert!(matches!(
            posterior_existence(0.0, &certain, true, Outcome::Detected),
            Err(Error::ImpossibleOutcome { .. })
        ));
        assert_eq!(posterior_existence(0.4, &certain, true, Outcome::Empty).unwrap(), 0.0);
    }

    #[test]
    fn cardinality_examples() {
        assert_eq!(cardinality_distribution::<f64>(&[]), vec![1.0]);
        assert_eq!(cardinality_distribution(&[0.6]), vec![0.4, 0.6]);
        let rho = cardinality_distribution(&[0.6, 0.6]);
        for (got, want) in rho.iter().zip([0.16, 0.48, 0.36]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn leave_one_out_examples() {
        assert_eq!(leave_one_out_cardinality(&[0.6, 0.6], 0).unwrap(), vec![0.4, 0.6]);
        assert_eq!(leave_one_out_cardinality(&[0.3], 0).unwrap(), vec![1.0]);
        let rho = leave_one_out_cardinality(&[0.2, 0.5, 0.9], 1).unwrap();
        for (got, want) in rho.iter().zip([0.08, 0.74, 0.18]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-15);
        }
        assert_eq!(
            leave_one_out_cardinality(&[0.2], 1),
            Err(Error::IndexOutOfRange { index: 1, len: 1 })
        );
    }

    #[test]
    fn separation_enforced() {
        let p = MetricParams::squared(10.0).unwrap();
        let near = vec![
            BernoulliComponent::new(0.5, vec![0.0]).unwrap(),
            BernoulliComponent::new(0.5, vec![10.0]).unwrap(),
        ];
        assert!(matches!(
            MultiBernoulli::new(near, &p),
            Err(Error::InsufficientSeparation { first: 0, second: 1, .. })
        ));
        let grid = MultiBernoulli::on_grid(&[0.1, 0.2, 0.3], &p).unwrap();
        assert_eq!(grid.locations(), vec![vec![0.0], vec![20.0], vec![40.0]]);
    }

    #[test]
    fn probability_ranges_enforced() {
        assert!(BernoulliComponent::new(1.5, vec![0.0]).is_err());
        assert!(BernoulliComponent::new(0.5, vec![]).is_err());
        assert!(SensorModel::new(-0.1).is_err());
        assert!(SensingCost::new(-1.0).is_err());
    }

    #[test]
    fn outcome_enumeration() {
        let a = Action::from_bits(&[1, 0, 1]);
        let all = DetectionOutcome::enumerate(&a);
        assert_eq!(all.len(), 4);
        assert_eq!(all[0].tags(), &[Outcome::Empty; 3]);
        assert_eq!(all[3].tags(), &[Outcome::Detected, Outcome::Empty, Outcome::Detected]);
        assert_eq!(DetectionOutcome::enumerate(&Action::idle(2)).len(), 1);
        assert!(DetectionOutcome::new(vec![Outcome::Detected, Outcome::Empty], &Action::from_bits(&[0, 1])).is_err());
    }

    #[test]
    fn action_display() {
        assert_eq!(Action::from_bits(&[1, 0]).to_string(), "[1,0]");
        assert_eq!(SensingCost::new(10.0).unwrap().of(&Action::from_bits(&[1, 1, 0])), 20.0);
    }
}
