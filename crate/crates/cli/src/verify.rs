//! Self-check suite behind the `verify` subcommand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sensmgmt::{
    all_actions, brute_force_ms, gospa_action_cost, gospa_closed_form_decision, mc_expected_cost, mean_square_error,
    metric_action_cost, msospa, optimal_action, Action, BernoulliComponent, EstimateMask, McConfig, Metric,
    MetricParams, MultiBernoulli, SensingCost, SensorModel, TieBreak,
};

use crate::format::fmt_num;
use crate::scenario::Scenario;
use crate::CliError;

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    /// Monte-Carlo acceptance band in standard errors.
    pub mc_sigmas: f64,
    /// Absolute tolerance for closed-form versus enumeration checks.
    pub tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            trials: 100_000,
            seed: 1,
            mc_sigmas: 4.0,
            tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{verdict} {}: {}\n", c.name, c.detail));
        }
        let failed = self.failed().count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }
}

/// Deterministic generator for the random instances, distinct from the
/// Monte-Carlo trial streams.
fn instance_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    rng
}

fn grid_belief(existences: &[f64], cutoff: f64) -> Result<MultiBernoulli<f64>, CliError> {
    Ok(MultiBernoulli::on_grid(existences, &MetricParams::squared(cutoff)?)?)
}

fn oracle_gap(belief: &MultiBernoulli<f64>, cutoff: f64) -> Result<(usize, f64), CliError> {
    let params = MetricParams::squared(cutoff)?;
    let r = belief.existences();
    let locations = belief.locations();
    let mut count = 0;
    let mut worst = 0.0f64;
    for mask in EstimateMask::all(r.len()) {
        for metric in Metric::ALL {
            let closed = mean_square_error(&r, &mask, metric, cutoff)?;
            let oracle = brute_force_ms(&r, &locations, &mask, metric, &params)?;
            worst = worst.max((closed - oracle).abs());
            count += 1;
        }
    }
    Ok((count, worst))
}

fn check_oracle_equivalence(report: &mut Report, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<(), CliError> {
    let mut count = 0;
    let mut worst = 0.0f64;
    for n in 1..=4 {
        for _ in 0..200 {
            let r: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            let (k, gap) = oracle_gap(&grid_belief(&r, 10.0)?, 10.0)?;
            count += k;
            worst = worst.max(gap);
        }
    }
    report.push(
        "oracle_equivalence",
        worst <= cfg.tolerance,
        format!("{count} (mask, metric) pairs, max |closed - enumerated| = {worst:e}"),
    );
    Ok(())
}

fn mmsospa(r1: f64, r2: f64, cutoff: f64) -> Result<f64, CliError> {
    let mut best = f64::INFINITY;
    for mask in EstimateMask::all(2) {
        best = best.min(msospa(&[r1, r2], &mask, cutoff)?);
    }
    Ok(best)
}

/// OSPA action costs for two components written out term by term.
pub fn two_component_ospa_costs(r1: f64, r2: f64, pd: f64, s: f64, cutoff: f64) -> Result<[f64; 4], CliError> {
    let miss = |r: f64| 1.0 - r * pd;
    let updated = |r: f64| if miss(r) > 0.0 { r * (1.0 - pd) / miss(r) } else { 0.0 };
    let mm = |a: f64, b: f64| mmsospa(a, b, cutoff);
    let (q1, q2) = (updated(r1), updated(r2));
    let idle = mm(r1, r2)?;
    let first = miss(r1) * mm(q1, r2)? + r1 * pd * mm(1.0, r2)?;
    let second = miss(r2) * mm(r1, q2)? + r2 * pd * mm(r1, 1.0)?;
    let both = miss(r1) * miss(r2) * mm(q1, q2)?
        + r1 * pd * miss(r2) * mm(1.0, q2)?
        + r2 * pd * miss(r1) * mm(q1, 1.0)?
        + r1 * pd * r2 * pd * mm(1.0, 1.0)?;
    Ok([idle, first + s, second + s, both + 2.0 * s])
}

fn check_two_component_ospa(report: &mut Report, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<(), CliError> {
    let cutoff = 10.0;
    let actions = [[0u8, 0], [1, 0], [0, 1], [1, 1]].map(|b| Action::from_bits(&b));
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (r1, r2, pd, s) = (rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>(), rng.gen_range(0.0..20.0));
        let belief = grid_belief(&[r1, r2], cutoff)?;
        let sensor = SensorModel::new(pd)?;
        let sensing = SensingCost::new(s)?;
        let direct = two_component_ospa_costs(r1, r2, pd, s, cutoff)?;
        for (a, want) in actions.iter().zip(direct) {
            let got = metric_action_cost(&belief, &sensor, cutoff, &sensing, a, Metric::Ospa)?.total;
            worst = worst.max((got - want).abs());
        }
    }
    let double_detection = mmsospa(1.0, 1.0, cutoff)?;
    report.push(
        "two_component_ospa_costs",
        worst <= cfg.tolerance && double_detection.abs() <= cfg.tolerance,
        format!(
            "100 draws x 4 actions, max |enumerated - direct| = {worst:e}, double-detection error = {}",
            fmt_num(double_detection)
        ),
    );
    Ok(())
}

fn separability_mismatches(
    belief: &MultiBernoulli<f64>,
    sensor: &SensorModel<f64>,
    cutoff: f64,
    sensing: &SensingCost<f64>,
) -> Result<(bool, f64), CliError> {
    let decision = optimal_action(belief, sensor, cutoff, sensing, Metric::Gospa)?;
    let per_component = Action::new(
        belief
            .existences()
            .iter()
            .map(|&r| gospa_closed_form_decision(r, sensor, cutoff, sensing))
            .collect(),
    );
    let mut worst = 0.0f64;
    for a in all_actions(belief.len(), TieBreak::PreferIdle) {
        let closed = gospa_action_cost(belief, sensor, cutoff, sensing, &a)?.total;
        let enumerated = metric_action_cost(belief, sensor, cutoff, sensing, &a, Metric::Gospa)?.total;
        worst = worst.max((closed - enumerated).abs());
    }
    Ok((decision.optimal_action == per_component, worst))
}

fn check_separability(report: &mut Report, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<(), CliError> {
    let cutoff = 10.0;
    let mut disagreements = 0;
    let mut worst = 0.0f64;
    for n in 2..=4 {
        for _ in 0..100 {
            let r: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
            let sensor = SensorModel::new(rng.gen_range(0.05..1.0))?;
            let sensing = SensingCost::new(rng.gen_range(0.5..20.0))?;
            let (agree, gap) = separability_mismatches(&grid_belief(&r, cutoff)?, &sensor, cutoff, &sensing)?;
            disagreements += usize::from(!agree);
            worst = worst.max(gap);
        }
    }
    report.push(
        "gospa_separability",
        disagreements == 0 && worst <= cfg.tolerance,
        format!("300 beliefs, {disagreements} decision mismatches, max |additive - enumerated| = {worst:e}"),
    );
    Ok(())
}

/// Optimal `(a1, a2)` along `r1 = 0, 0.01, ..., 1` with `r2` fixed.
pub fn r1_sweep(metric: Metric, r2: f64, pd: f64, s: f64, cutoff: f64) -> Result<Vec<(bool, bool)>, CliError> {
    let sensor = SensorModel::new(pd)?;
    let sensing = SensingCost::new(s)?;
    (0..=100)
        .map(|k| {
            let belief = grid_belief(&[k as f64 / 100.0, r2], cutoff)?;
            let a = optimal_action(&belief, &sensor, cutoff, &sensing, metric)?.optimal_action;
            Ok((a.is_active(0), a.is_active(1)))
        })
        .collect()
}

fn transitions(seq: &[bool]) -> usize {
    seq.windows(2).filter(|w| w[0] != w[1]).count()
}

fn check_entanglement(report: &mut Report) -> Result<(), CliError> {
    let mut a2_transitions = Vec::new();
    let mut ospa_start = (false, false);
    for metric in Metric::ALL {
        let sweep = r1_sweep(metric, 0.6, 0.6, 10.0, 10.0)?;
        let a2: Vec<bool> = sweep.iter().map(|a| a.1).collect();
        if metric == Metric::Ospa {
            ospa_start = sweep[0];
        }
        a2_transitions.push((metric, transitions(&a2)));
    }
    let count = |m: Metric| a2_transitions.iter().find(|(x, _)| *x == m).map(|(_, t)| *t).unwrap_or(0);
    let passed = count(Metric::Gospa) == 0
        && count(Metric::Ospa) >= 2
        && count(Metric::Uospa) >= 1
        && ospa_start == (false, true);
    report.push(
        "entanglement",
        passed,
        format!(
            "a2 transitions over r1 with r2 = 0.6: gospa {}, ospa {}, uospa {}; ospa action at r1 = 0: ({}, {})",
            count(Metric::Gospa),
            count(Metric::Ospa),
            count(Metric::Uospa),
            u8::from(ospa_start.0),
            u8::from(ospa_start.1)
        ),
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn check_monte_carlo(
    report: &mut Report,
    cfg: &VerifyConfig,
    belief: &MultiBernoulli<f64>,
    sensor: &SensorModel<f64>,
    cutoff: f64,
    sensing: &SensingCost<f64>,
    action: &Action,
    metric: Metric,
) -> Result<(), CliError> {
    let analytic = metric_action_cost(belief, sensor, cutoff, sensing, action, metric)?.total;
    let mc = mc_expected_cost(belief, sensor, cutoff, sensing, action, metric, &McConfig::new(cfg.trials, cfg.seed)?)?;
    let sigmas = if mc.std_error > 0.0 {
        (mc.mean - analytic).abs() / mc.std_error
    } else {
        0.0
    };
    report.push(
        format!("monte_carlo[{metric} r={:?} a={action}]", belief.existences()),
        mc.within_sigmas(analytic, cfg.mc_sigmas),
        format!(
            "analytic {}, estimate {} +/- {} ({} trials, {} sigma)",
            fmt_num(analytic),
            fmt_num(mc.mean),
            fmt_num(mc.std_error),
            mc.num_trials,
            fmt_num((sigmas * 100.0).round() / 100.0)
        ),
    );
    Ok(())
}

/// Built-in suite: closed forms against enumeration, the two-component OSPA
/// costs, GOSPA separability, entanglement under OSPA/UOSPA, and Monte Carlo.
pub fn default_suite(cfg: &VerifyConfig) -> Result<Report, CliError> {
    let mut report = Report::default();
    let mut rng = instance_rng(cfg.seed);
    check_oracle_equivalence(&mut report, cfg, &mut rng)?;
    check_two_component_ospa(&mut report, cfg, &mut rng)?;
    check_separability(&mut report, cfg, &mut rng)?;
    check_entanglement(&mut report)?;

    let cutoff = 10.0;
    let single = grid_belief(&[0.5], cutoff)?;
    let pair = grid_belief(&[0.6, 0.6], cutoff)?;
    let scenarios = [
        (&single, 0.7, 0.0, Action::from_bits(&[0])),
        (&single, 0.7, 0.0, Action::from_bits(&[1])),
        (&pair, 0.6, 10.0, Action::from_bits(&[1, 1])),
        (&pair, 0.6, 10.0, Action::from_bits(&[1, 0])),
    ];
    for metric in [Metric::Gospa, Metric::Ospa] {
        for (belief, pd, s, action) in &scenarios {
            let sensor = SensorModel::new(*pd)?;
            let sensing = SensingCost::new(*s)?;
            check_monte_carlo(&mut report, cfg, belief, &sensor, cutoff, &sensing, action, metric)?;
        }
    }
    Ok(report)
}

/// Checks a user-supplied belief: closed forms against enumeration, GOSPA
/// separability and Monte Carlo for its actions under every metric.
pub fn scenario_suite(scenario: &Scenario, cfg: &VerifyConfig) -> Result<Report, CliError> {
    let require = |v: Option<f64>, key: &str| v.ok_or_else(|| CliError::Parse(format!("scenario is missing 'param {key}'")));
    let cutoff = scenario.cutoff.unwrap_or(10.0);
    let pd = require(scenario.detection_probability, "pd")?;
    let s = require(scenario.sensing_cost, "s")?;
    if scenario.components.is_empty() {
        return Err(CliError::Parse("scenario has no 'component' lines".into()));
    }
    let params = MetricParams::squared(cutoff)?;
    let components = scenario
        .components
        .iter()
        .map(|(r, x)| BernoulliComponent::new(*r, x.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let belief = MultiBernoulli::new(components, &params)?;
    let sensor = SensorModel::new(pd)?;
    let sensing = SensingCost::new(s)?;

    let mut report = Report::default();
    let (count, worst) = oracle_gap(&belief, cutoff)?;
    report.push(
        "oracle_equivalence",
        worst <= cfg.tolerance,
        format!("{count} (mask, metric) pairs, max |closed - enumerated| = {worst:e}"),
    );

    let (agree, gap) = separability_mismatches(&belief, &sensor, cutoff, &sensing)?;
    report.push(
        "gospa_separability",
        agree && gap <= cfg.tolerance,
        format!("decisions agree: {agree}, max |additive - enumerated| = {gap:e}"),
    );

    let actions = if belief.len() <= 3 {
        all_actions(belief.len(), TieBreak::PreferIdle)
    } else {
        vec![Action::idle(belief.len()), Action::new(vec![true; belief.len()])]
    };
    for metric in Metric::ALL {
        for action in &actions {
            check_monte_carlo(&mut report, cfg, &belief, &sensor, cutoff, &sensing, action, metric)?;
        }
    }
    Ok(report)
}
