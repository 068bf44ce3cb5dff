//! Set metrics and metric-driven myopic sensor management.
//!
//! The crate computes OSPA, unnormalised OSPA (UOSPA) and GOSPA (alpha = 2)
//! distances between finite point sets, and uses their mean-square forms
//! to choose which of `N` sensors to activate when each sensor watches one
//! potential target of a multi-Bernoulli belief with known locations.
//!
//! ```
//! use sensmgmt::{optimal_action, Metric, MetricParams64, MultiBernoulli64, SensingCost, SensorModel};
//!
//! let params = MetricParams64::squared(10.0).unwrap();
//! let belief = MultiBernoulli64::on_grid(&[0.5, 0.9], &params).unwrap();
//! let sensor = SensorModel::new(0.6).unwrap();
//! let cost = SensingCost::new(10.0).unwrap();
//! let decision = optimal_action(&belief, &sensor, 10.0, &cost, Metric::Gospa).unwrap();
//! assert_eq!(decision.optimal_action.to_string(), "[1,0]");
//! ```
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` and `*32` aliases below fix the scalar type.

pub mod assignment;
pub mod bernoulli;
pub mod error;
pub mod estimation;
pub mod management;
pub mod metrics;
pub mod scalar;
pub mod simulation;

pub use assignment::{solve_assignment, Assignment, CostMatrix};
pub use bernoulli::{
    cardinality_distribution, leave_one_out_cardinality, outcome_probability, posterior_existence, Action,
    BernoulliComponent, DetectionOutcome, MultiBernoulli, Outcome, SensingCost, SensorModel,
};
pub use error::{Error, Result};
pub use estimation::{
    brute_force_ms, mean_square_error, msgospa, msospa, msuospa, optimal_mask, optimal_mask_gospa,
    optimal_mask_with_limit, EstimateMask, OptimalEstimate,
};
pub use management::{
    all_actions, gospa_action_cost, gospa_closed_form_decision, gospa_component_cost, gospa_equal_cost_onset,
    gospa_measure_band, metric_action_cost, optimal_action, optimal_action_with, t_fn, ActionCost,
    DecisionSummary, TieBreak,
};
pub use metrics::{
    base_distance, gospa2, gospa2_with, ospa, ospa_with, uospa, uospa_with, GospaDecomposition, Metric,
    MetricParams, PointSet,
};
pub use scalar::Scalar;
pub use simulation::{mc_expected_cost, simulate_trial, trial_rng, McConfig, McResult};

pub type MetricParams64 = MetricParams<f64>;
pub type PointSet64 = PointSet<f64>;
pub type GospaDecomposition64 = GospaDecomposition<f64>;
pub type MultiBernoulli64 = MultiBernoulli<f64>;
pub type SensorModel64 = SensorModel<f64>;
pub type SensingCost64 = SensingCost<f64>;
pub type ActionCost64 = ActionCost<f64>;
pub type DecisionSummary64 = DecisionSummary<f64>;
pub type McResult64 = McResult<f64>;

pub type MetricParams32 = MetricParams<f32>;
pub type PointSet32 = PointSet<f32>;
pub type GospaDecomposition32 = GospaDecomposition<f32>;
pub type MultiBernoulli32 = MultiBernoulli<f32>;
pub type SensorModel32 = SensorModel<f32>;
pub type SensingCost32 = SensingCost<f32>;
pub type ActionCost32 = ActionCost<f32>;
pub type DecisionSummary32 = DecisionSummary<f32>;
pub type McResult32 = McResult<f32>;
