//! Mean-square metric errors of detection estimates for point-mass
//! multi-Bernoulli beliefs, and their minimisers.
//!
//! An estimate reports a subset of the known component locations, encoded
//! as a mask. Because components are farther apart than the cutoff, every
//! mismatch between the true and estimated sets costs a full cardinality
//! penalty, and the expected squared errors (order 2) have closed forms in
//! the existence probabilities alone.

use std::fmt;

use crate::bernoulli::{cardinality_distribution, leave_one_out_cardinality};
use crate::error::{Error, Result};
use crate::metrics::{Metric, MetricParams, PointSet};
use crate::scalar::{approx_tied, Scalar};

pub const DEFAULT_MASK_LIMIT: usize = 16;
pub const ORACLE_LIMIT: usize = 20;

/// Bit `i` set means component `i` is reported at its location.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EstimateMask {
    bits: Vec<bool>,
}

impl EstimateMask {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Self::new(bits.iter().map(|&b| b != 0).collect())
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

    /// Number of reported targets.
    pub fn reported(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Locations of the reported targets.
    pub fn estimated_set<T: Scalar>(&self, locations: &[Vec<T>]) -> PointSet<T> {
        subset(locations, &self.bits)
    }

    /// All `2^n` masks ordered by reported count, then lexicographically.
    pub fn all(n: usize) -> Vec<EstimateMask> {
        let mut masks: Vec<EstimateMask> = (0..1usize << n)
            .map(|code| EstimateMask::new((0..n).map(|i| code >> (n - 1 - i) & 1 == 1).collect()))
            .collect();
        masks.sort_by(|a, b| a.reported().cmp(&b.reported()).then_with(|| a.cmp(b)));
        masks
    }
}

impl fmt::Display for EstimateMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: Vec<&str> = self.bits.iter().map(|&b| if b { "1" } else { "0" }).collect();
        write!(f, "[{}]", bits.join(","))
    }
}

fn subset<T: Scalar>(locations: &[Vec<T>], bits: &[bool]) -> PointSet<T> {
    let points = locations
        .iter()
        .zip(bits)
        .filter(|(_, &b)| b)
        .map(|(x, _)| x.clone())
        .collect();
    PointSet::new(points).expect("locations share a dimension")
}

fn check_len<T>(existences: &[T], mask: &EstimateMask) -> Result<()> {
    if existences.len() == mask.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: existences.len(),
            found: mask.len(),
        })
    }
}

/// Mean-square GOSPA error: `(c^2/2) sum_i [r_i (1 - e_i) + (1 - r_i) e_i]`.
pub fn msgospa<T: Scalar>(existences: &[T], mask: &EstimateMask, cutoff: T) -> Result<T> {
    check_len(existences, mask)?;
    let half = cutoff * cutoff / T::lit(2.0);
    let sum = existences
        .iter()
        .zip(mask.bits())
        .map(|(&r, &e)| if e { T::one() - r } else { r })
        .sum::<T>();
    Ok(half * sum)
}

/// Mean-square OSPA error.
pub fn msospa<T: Scalar>(existences: &[T], mask: &EstimateMask, cutoff: T) -> Result<T> {
    check_len(existences, mask)?;
    let c2 = cutoff * cutoff;
    let reported = mask.reported();
    if reported == 0 {
        return Ok(c2 * (T::one() - cardinality_distribution(existences)[0]));
    }
    let mut matched = T::zero();
    for (i, (&r, &e)) in existences.iter().zip(mask.bits()).enumerate() {
        if !e {
            continue;
        }
        let rho = leave_one_out_cardinality(existences, i)?;
        let inner = rho
            .iter()
            .enumerate()
            .map(|(n, &p)| p / T::from_count((n + 1).max(reported)))
            .sum::<T>();
        matched = matched + r * inner;
    }
    Ok((c2 * (T::one() - matched)).max(T::zero()))
}

/// Mean-square unnormalised OSPA error:
/// `c^2 (sum_n rho(n) max(n, n_hat) - sum_i e_i r_i)`.
pub fn msuospa<T: Scalar>(existences: &[T], mask: &EstimateMask, cutoff: T) -> Result<T> {
    check_len(existences, mask)?;
    let reported = mask.reported();
    let expected_max = cardinality_distribution(existences)
        .iter()
        .enumerate()
        .map(|(n, &p)| p * T::from_count(n.max(reported)))
        .sum::<T>();
    let matched = existences
        .iter()
        .zip(mask.bits())
        .filter(|(_, &e)| e)
        .map(|(&r, _)| r)
        .sum::<T>();
    Ok((cutoff * cutoff * (expected_max - matched)).max(T::zero()))
}

/// Mean-square error of `mask` under `metric`, by closed form.
pub fn mean_square_error<T: Scalar>(
    existences: &[T],
    mask: &EstimateMask,
    metric: Metric,
    cutoff: T,
) -> Result<T> {
    match metric {
        Metric::Gospa => msgospa(existences, mask, cutoff),
        Metric::Ospa => msospa(existences, mask, cutoff),
        Metric::Uospa => msuospa(existences, mask, cutoff),
    }
}

/// Report target `i` iff `r_i > 0.5`.
pub fn optimal_mask_gospa<T: Scalar>(existences: &[T]) -> EstimateMask {
    EstimateMask::new(existences.iter().map(|&r| r > T::lit(0.5)).collect())
}

/// Minimum mean-square error estimate found by enumerating every mask.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalEstimate<T> {
    pub mask: EstimateMask,
    pub mmse: T,
}

pub fn optimal_mask<T: Scalar>(existences: &[T], metric: Metric, cutoff: T) -> Result<OptimalEstimate<T>> {
    optimal_mask_with_limit(existences, metric, cutoff, DEFAULT_MASK_LIMIT)
}

/// Ties within the scalar tie tolerance go to fewer reported targets, then
/// to the lexicographically smallest mask.
pub fn optimal_mask_with_limit<T: Scalar>(
    existences: &[T],
    metric: Metric,
    cutoff: T,
    limit: usize,
) -> Result<OptimalEstimate<T>> {
    if existences.len() > limit {
        return Err(Error::EnumerationLimit {
            n: existences.len(),
            limit,
        });
    }
    let scored = EstimateMask::all(existences.len())
        .into_iter()
        .map(|mask| mean_square_error(existences, &mask, metric, cutoff).map(|v| (mask, v)))
        .collect::<Result<Vec<_>>>()?;
    let best = scored
        .iter()
        .map(|(_, v)| *v)
        .fold(T::infinity(), T::min);
    let (mask, mmse) = scored
        .into_iter()
        .find(|(_, v)| approx_tied(*v, best))
        .expect("at least one mask");
    Ok(OptimalEstimate { mask, mmse })
}

/// Expected squared metric error by enumerating all `2^N` existence
/// configurations and evaluating the set metric directly.
pub fn brute_force_ms<T: Scalar>(
    existences: &[T],
    locations: &[Vec<T>],
    mask: &EstimateMask,
    metric: Metric,
    params: &MetricParams<T>,
) -> Result<T> {
    check_len(existences, mask)?;
    if locations.len() != existences.len() {
        return Err(Error::LengthMismatch {
            expected: existences.len(),
            found: locations.len(),
        });
    }
    let n = existences.len();
    if n > ORACLE_LIMIT {
        return Err(Error::EnumerationLimit { n, limit: ORACLE_LIMIT });
    }
    let estimate = mask.estimated_set(locations);
    let mut total = T::zero();
    for code in 0..1usize << n {
        let exists: Vec<bool> = (0..n).map(|i| code >> i & 1 == 1).collect();
        let weight = existences
            .iter()
            .zip(&exists)
            .map(|(&r, &e)| if e { r } else { T::one() - r })
            .fold(T::one(), |acc, w| acc * w);
        if weight == T::zero() {
            continue;
        }
        let truth = subset(locations, &exists);
        let d = metric.distance(&truth, &estimate, params)?;
        total = total + weight * d * d;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const C: f64 = 10.0;

    fn m(bits: &[u8]) -> EstimateMask {
        EstimateMask::from_bits(bits)
    }

    #[test]
    fn msgospa_examples() {
        assert_abs_diff_eq!(msgospa(&[0.3], &m(&[0]), C).unwrap(), 15.0, epsilon = 1e-12);
        assert_eq!(msgospa(&[1.0], &m(&[1]), C).unwrap(), 0.0);
        assert_abs_diff_eq!(msgospa(&[0.6, 0.6], &m(&[1, 1]), C).unwrap(), 40.0, epsilon = 1e-12);
    }

    #[test]
    fn msospa_examples() {
        let r = [0.6, 0.6];
        assert_abs_diff_eq!(msospa(&r, &m(&[0, 0]), C).unwrap(), 84.0, epsilon = 1e-12);
        assert_abs_diff_eq!(msospa(&r, &m(&[1, 0]), C).unwrap(), 58.0, epsilon = 1e-12);
        assert_abs_diff_eq!(msospa(&r, &m(&[0, 1]), C).unwrap(), 58.0, epsilon = 1e-12);
        assert_abs_diff_eq!(msospa(&r, &m(&[1, 1]), C).unwrap(), 40.0, epsilon = 1e-12);
    }

    #[test]
    fn msuospa_examples() {
        assert_abs_diff_eq!(msuospa(&[0.6, 0.6], &m(&[1, 0]), C).unwrap(), 76.0, epsilon = 1e-12);
        assert_eq!(msuospa(&[1.0], &m(&[1]), C).unwrap(), 0.0);
        assert_abs_diff_eq!(msuospa(&[0.3], &m(&[0]), C).unwrap(), 30.0, epsilon = 1e-12);
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(
            msgospa(&[0.3, 0.2], &m(&[0]), C),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn gospa_threshold() {
        assert_eq!(optimal_mask_gospa(&[0.49, 0.51]), m(&[0, 1]));
        assert_eq!(optimal_mask_gospa(&[0.5]), m(&[0]));
        assert_eq!(optimal_mask_gospa(&[1.0, 0.0]), m(&[1, 0]));
        // Both choices at the tie have the same error.
        assert_eq!(
            msgospa(&[0.5], &m(&[0]), C).unwrap(),
            msgospa(&[0.5], &m(&[1]), C).unwrap()
        );
    }

    #[test]
    fn optimal_mask_examples() {
        let ospa = optimal_mask(&[0.6, 0.6], Metric::Ospa, C).unwrap();
        assert_eq!(ospa.mask, m(&[1, 1]));
        assert_abs_diff_eq!(ospa.mmse, 40.0, epsilon = 1e-12);

        let gospa = optimal_mask(&[0.3], Metric::Gospa, C).unwrap();
        assert_eq!(gospa.mask, m(&[0]));
        assert_abs_diff_eq!(gospa.mmse, 15.0, epsilon = 1e-12);

        for metric in Metric::ALL {
            let empty = optimal_mask::<f64>(&[], metric, C).unwrap();
            assert!(empty.mask.is_empty());
            assert_eq!(empty.mmse, 0.0);
        }
    }

    #[test]
    fn optimal_mask_tie_prefers_fewer_targets() {
        let tie = optimal_mask(&[0.5], Metric::Gospa, C).unwrap();
        assert_eq!(tie.mask, m(&[0]));
        // All four masks tie at 50.
        let best = optimal_mask(&[0.5, 0.5], Metric::Gospa, C).unwrap();
        assert_eq!(best.mask, m(&[0, 0]));
        // Only the single-target masks tie; [0,1] sorts before [1,0].
        let single = optimal_mask(&[0.5, 1.0, 0.5], Metric::Gospa, C).unwrap();
        assert_eq!(single.mask, m(&[0, 1, 0]));
    }

    #[test]
    fn enumeration_limit() {
        let r = vec![0.5; 5];
        assert_eq!(
            optimal_mask_with_limit(&r, Metric::Ospa, C, 4),
            Err(Error::EnumerationLimit { n: 5, limit: 4 })
        );
    }

    #[test]
    fn mask_ordering() {
        let all = EstimateMask::all(2);
        assert_eq!(all, vec![m(&[0, 0]), m(&[0, 1]), m(&[1, 0]), m(&[1, 1])]);
    }

    #[test]
    fn brute_force_examples() {
        let p = MetricParams::squared(C).unwrap();
        let locs = vec![vec![0.0], vec![20.0]];
        assert_abs_diff_eq!(
            brute_force_ms(&[0.6, 0.6], &locs, &m(&[1, 0]), Metric::Ospa, &p).unwrap(),
            58.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            brute_force_ms(&[0.6, 0.6], &locs, &m(&[1, 0]), Metric::Gospa, &p).unwrap(),
            50.0,
            epsilon = 1e-12
        );
        for metric in Metric::ALL {
            assert_eq!(brute_force_ms(&[0.0], &[vec![0.0]], &m(&[0]), metric, &p).unwrap(), 0.0);
        }
    }
}
