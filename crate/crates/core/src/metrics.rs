//! OSPA, unnormalised OSPA and GOSPA (alpha = 2) between finite point sets.

use std::fmt;
use std::str::FromStr;

use crate::assignment::{solve_assignment, Assignment, CostMatrix};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Cutoff `c > 0` and order `1 <= p < inf` shared by all three set metrics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricParams<T> {
    cutoff: T,
    order: T,
}

impl<T: Scalar> MetricParams<T> {
    pub fn new(cutoff: T, order: T) -> Result<Self> {
        if !(cutoff > T::zero() && cutoff.is_finite()) {
            return Err(Error::InvalidParams(format!("cutoff {cutoff} must be positive")));
        }
        if !(order >= T::one() && order.is_finite()) {
            return Err(Error::InvalidParams(format!("order {order} must satisfy 1 <= p < inf")));
        }
        Ok(Self { cutoff, order })
    }

    /// Order `p = 2`, the setting used throughout sensor management.
    pub fn squared(cutoff: T) -> Result<Self> {
        Self::new(cutoff, T::lit(2.0))
    }

    pub fn cutoff(&self) -> T {
        self.cutoff
    }

    pub fn order(&self) -> T {
        self.order
    }

    fn cutoff_pow(&self) -> T {
        self.cutoff.powf(self.order)
    }
}

/// A finite set of single-target states of a common dimension.
///
/// Storage order is irrelevant to every metric value.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointSet<T> {
    points: Vec<Vec<T>>,
}

impl<T: Scalar> PointSet<T> {
    pub fn new(points: Vec<Vec<T>>) -> Result<Self> {
        if let Some(first) = points.first() {
            if first.is_empty() {
                return Err(Error::ZeroDimension);
            }
            if let Some(bad) = points.iter().find(|x| x.len() != first.len()) {
                return Err(Error::DimensionMismatch {
                    expected: first.len(),
                    found: bad.len(),
                });
            }
        }
        Ok(Self { points })
    }

    pub fn empty() -> Self {
        Self { points: Vec::new() }
    }

    /// Points on the real line.
    pub fn scalar_points(values: &[T]) -> Self {
        Self {
            points: values.iter().map(|&x| vec![x]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Dimension of the points, `None` for the empty set.
    pub fn dimension(&self) -> Option<usize> {
        self.points.first().map(Vec::len)
    }

    pub fn points(&self) -> &[Vec<T>] {
        &self.points
    }
}

/// Which set metric to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    Gospa,
    Ospa,
    Uospa,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Gospa, Metric::Ospa, Metric::Uospa];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Gospa => "gospa",
            Metric::Ospa => "ospa",
            Metric::Uospa => "uospa",
        }
    }

    /// Distance between `x` and `y` under this metric with Euclidean base distance.
    pub fn distance<T: Scalar>(
        self,
        x: &PointSet<T>,
        y: &PointSet<T>,
        params: &MetricParams<T>,
    ) -> Result<T> {
        match self {
            Metric::Gospa => gospa2(x, y, params).map(|d| d.total),
            Metric::Ospa => ospa(x, y, params),
            Metric::Uospa => uospa(x, y, params),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gospa" => Ok(Metric::Gospa),
            "ospa" => Ok(Metric::Ospa),
            "uospa" => Ok(Metric::Uospa),
            other => Err(Error::InvalidParams(format!("unknown metric '{other}'"))),
        }
    }
}

/// GOSPA value split into its localisation, missed-target and false-target
/// parts, each raised to the power `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct GospaDecomposition<T> {
    pub localisation_cost: T,
    pub missed_cost: T,
    pub false_cost: T,
    pub total: T,
    pub assignment: Assignment,
}

impl<T: Scalar> GospaDecomposition<T> {
    /// `total^p`, the sum of the three cost parts.
    pub fn total_pow(&self) -> T {
        self.localisation_cost + self.missed_cost + self.false_cost
    }
}

/// Euclidean distance.
pub fn base_distance<T: Scalar>(x: &[T], y: &[T]) -> Result<T> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(euclidean(x, y))
}

fn euclidean<T: Scalar>(x: &[T], y: &[T]) -> T {
    x.iter()
        .zip(y)
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum::<T>()
        .sqrt()
}

fn check_dimensions<T: Scalar>(x: &PointSet<T>, y: &PointSet<T>) -> Result<()> {
    match (x.dimension(), y.dimension()) {
        (Some(a), Some(b)) if a != b => Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        }),
        _ => Ok(()),
    }
}

pub fn ospa<T: Scalar>(x: &PointSet<T>, y: &PointSet<T>, params: &MetricParams<T>) -> Result<T> {
    ospa_with(x, y, params, euclidean)
}

pub fn uospa<T: Scalar>(x: &PointSet<T>, y: &PointSet<T>, params: &MetricParams<T>) -> Result<T> {
    uospa_with(x, y, params, euclidean)
}

pub fn gospa2<T: Scalar>(
    x: &PointSet<T>,
    y: &PointSet<T>,
    params: &MetricParams<T>,
) -> Result<GospaDecomposition<T>> {
    gospa2_with(x, y, params, euclidean)
}

/// Sum of cut-off costs over the optimal assignment plus the cardinality
/// penalty, before normalisation and root. Arguments are swapped so that
/// the first set is never the larger one.
fn ospa_pow_sum<T, D>(
    x: &PointSet<T>,
    y: &PointSet<T>,
    params: &MetricParams<T>,
    dist: D,
) -> Result<(T, usize)>
where
    T: Scalar,
    D: Fn(&[T], &[T]) -> T,
{
    check_dimensions(x, y)?;
    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let p = params.order;
    let cp = params.cutoff_pow();
    let costs = CostMatrix::from_fn(small.len(), large.len(), |i, j| {
        dist(&small.points[i], &large.points[j]).min(params.cutoff).powf(p)
    });
    let assignment = solve_assignment(&costs)?;
    let unmatched = T::from_count(large.len() - small.len());
    Ok((assignment.cost(&costs) + cp * unmatched, large.len()))
}

/// OSPA with a caller-supplied base distance.
pub fn ospa_with<T, D>(x: &PointSet<T>, y: &PointSet<T>, params: &MetricParams<T>, dist: D) -> Result<T>
where
    T: Scalar,
    D: Fn(&[T], &[T]) -> T,
{
    let (sum, n) = ospa_pow_sum(x, y, params, dist)?;
    if n == 0 {
        return Ok(T::zero());
    }
    let value = (sum / T::from_count(n)).powf(params.order.recip());
    Ok(value.min(params.cutoff))
}

/// Unnormalised OSPA with a caller-supplied base distance.
pub fn uospa_with<T, D>(x: &PointSet<T>, y: &PointSet<T>, params: &MetricParams<T>, dist: D) -> Result<T>
where
    T: Scalar,
    D: Fn(&[T], &[T]) -> T,
{
    let (sum, _) = ospa_pow_sum(x, y, params, dist)?;
    Ok(sum.powf(params.order.recip()))
}

/// GOSPA (alpha = 2) with a caller-supplied base distance.
///
/// Costs are clipped at `c^p` for the assignment; pairs at distance `>= c`
/// are then dropped, since assigning them costs the same as leaving both
/// points unassigned.
pub fn gospa2_with<T, D>(
    x: &PointSet<T>,
    y: &PointSet<T>,
    params: &MetricParams<T>,
    dist: D,
) -> Result<GospaDecomposition<T>>
where
    T: Scalar,
    D: Fn(&[T], &[T]) -> T,
{
    check_dimensions(x, y)?;
    let p = params.order;
    let cp = params.cutoff_pow();
    let distances = CostMatrix::from_fn(x.len(), y.len(), |i, j| dist(&x.points[i], &y.points[j]));
    let costs = CostMatrix::from_fn(x.len(), y.len(), |i, j| distances.get(i, j).powf(p).min(cp));
    let mut assignment = solve_assignment(&costs)?;
    assignment.retain(|&(i, j)| distances.get(i, j) < params.cutoff);

    let half = cp / T::lit(2.0);
    let assigned = assignment.len();
    let localisation_cost = assignment
        .pairs()
        .iter()
        .map(|&(i, j)| distances.get(i, j).powf(p))
        .sum::<T>();
    let missed_cost = half * T::from_count(x.len() - assigned);
    let false_cost = half * T::from_count(y.len() - assigned);
    let total = (localisation_cost + missed_cost + false_cost).powf(p.recip());
    Ok(GospaDecomposition {
        localisation_cost,
        missed_cost,
        false_cost,
        total,
        assignment,
    })
}
