use proptest::prelude::*;
use sensmgmt::{
    all_actions, gospa_action_cost, gospa_closed_form_decision, gospa_component_cost, gospa_measure_band,
    metric_action_cost, optimal_action, Action, Metric, MetricParams, MultiBernoulli, SensingCost, SensorModel,
    TieBreak,
};

const C: f64 = 10.0;

fn belief(r: &[f64]) -> MultiBernoulli<f64> {
    MultiBernoulli::on_grid(r, &MetricParams::squared(C).unwrap()).unwrap()
}

fn cost_pair(r: f64, pd: f64, s: f64) -> (f64, f64) {
    let sensor = SensorModel::new(pd).unwrap();
    let sensing = SensingCost::new(s).unwrap();
    (
        gospa_component_cost(r, &sensor, C, &sensing, false).unwrap(),
        gospa_component_cost(r, &sensor, C, &sensing, true).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gospa_separability(
        r in prop::collection::vec(0.0f64..=1.0, 2..=4),
        pd in 0.05f64..=1.0,
        s in 0.5f64..20.0,
    ) {
        let b = belief(&r);
        let sensor = SensorModel::new(pd).unwrap();
        let sensing = SensingCost::new(s).unwrap();
        let decision = optimal_action(&b, &sensor, C, &sensing, Metric::Gospa).unwrap();
        let per_component = Action::new(r.iter().map(|&ri| gospa_closed_form_decision(ri, &sensor, C, &sensing)).collect());
        prop_assert_eq!(&decision.optimal_action, &per_component);
        for a in all_actions(r.len(), TieBreak::PreferIdle) {
            let closed = gospa_action_cost(&b, &sensor, C, &sensing, &a).unwrap().total;
            let enumerated = metric_action_cost(&b, &sensor, C, &sensing, &a, Metric::Gospa).unwrap().total;
            prop_assert!((closed - enumerated).abs() <= 1e-10);
        }
    }

    #[test]
    fn closed_form_decision_is_cost_argmin(r in 0.0f64..=1.0, pd in 0.0f64..=1.0, s in 0.0f64..30.0) {
        let (c0, c1) = cost_pair(r, pd, s);
        let decision = gospa_closed_form_decision(r, &SensorModel::new(pd).unwrap(), C, &SensingCost::new(s).unwrap());
        // Away from boundaries the argmin is unambiguous.
        if (c0 - c1).abs() > 1e-9 {
            prop_assert_eq!(decision, c1 < c0, "r={} pd={} s={} c0={} c1={}", r, pd, s, c0, c1);
        }
    }

    #[test]
    fn band_empty_iff_cost_exceeds_quarter(pd in 0.01f64..=1.0, s in 0.01f64..30.0) {
        let sensor = SensorModel::new(pd).unwrap();
        let sensing = SensingCost::new(s).unwrap();
        let (lo, hi) = gospa_measure_band(&sensor, C, &sensing);
        prop_assert!((lo - 2.0 * s / (C * C * pd)).abs() < 1e-12);
        prop_assert!((hi - (C * C / 2.0 - s) / (C * C * (1.0 - pd / 2.0))).abs() < 1e-12);
        prop_assert_eq!(lo < hi, s < C * C * pd / 4.0);
    }

    #[test]
    fn observing_cost_non_increasing_in_pd(r in 0.0f64..=1.0, pd in 0.0f64..1.0, step in 0.0f64..1.0, s in 0.0f64..20.0) {
        let better = pd + (1.0 - pd) * step;
        let (_, worse_cost) = cost_pair(r, pd, s);
        let (_, better_cost) = cost_pair(r, better, s);
        prop_assert!(better_cost <= worse_cost + 1e-12);

        let b = belief(&[r, 0.5]);
        let sensing = SensingCost::new(s).unwrap();
        let ones = Action::from_bits(&[1, 1]);
        for metric in Metric::ALL {
            let lo = metric_action_cost(&b, &SensorModel::new(pd).unwrap(), C, &sensing, &ones, metric).unwrap().total;
            let hi = metric_action_cost(&b, &SensorModel::new(better).unwrap(), C, &sensing, &ones, metric).unwrap().total;
            prop_assert!(hi <= lo + 1e-9, "{metric}: {hi} > {lo}");
        }
    }
}

#[test]
fn three_region_structure() {
    let sensor = SensorModel::new(0.7).unwrap();
    for s in [1.0, 5.0, 10.0, 15.0] {
        let sensing = SensingCost::new(s).unwrap();
        let decisions: Vec<bool> = (0..=1000)
            .map(|k| gospa_closed_form_decision(k as f64 / 1000.0, &sensor, C, &sensing))
            .collect();
        let transitions = decisions.windows(2).filter(|w| w[0] != w[1]).count();
        assert_eq!(transitions, 2, "s={s}: expected 0/1/0 pattern");
        assert!(!decisions[0] && !decisions[1000]);
        let onset = 1.0 / (2.0 - 0.7);
        for (k, &measure) in decisions.iter().enumerate() {
            if k as f64 / 1000.0 >= onset {
                assert!(!measure);
            }
        }
    }
}

#[test]
fn entanglement_witness() {
    let sensor = SensorModel::new(0.6).unwrap();
    let sensing = SensingCost::new(10.0).unwrap();
    for metric in Metric::ALL {
        let a2: Vec<bool> = (0..=100)
            .map(|k| {
                let d = optimal_action(&belief(&[k as f64 / 100.0, 0.6]), &sensor, C, &sensing, metric).unwrap();
                d.optimal_action.is_active(1)
            })
            .collect();
        let constant = a2.iter().all(|&b| b == a2[0]);
        assert_eq!(constant, metric == Metric::Gospa, "{metric}");
    }
}

#[test]
fn length_mismatch_reported() {
    let b = belief(&[0.5, 0.5]);
    let sensor = SensorModel::new(0.6).unwrap();
    let sensing = SensingCost::new(1.0).unwrap();
    assert!(metric_action_cost(&b, &sensor, C, &sensing, &Action::idle(3), Metric::Ospa).is_err());
}

#[test]
fn action_limit_reported() {
    let b = belief(&[0.5; 9]);
    let sensor = SensorModel::new(0.6).unwrap();
    let sensing = SensingCost::new(1.0).unwrap();
    assert!(matches!(
        optimal_action(&b, &sensor, C, &sensing, Metric::Gospa),
        Err(sensmgmt::Error::EnumerationLimit { n: 9, .. })
    ));
}

#[test]
fn f32_decision_agrees_with_f64() {
    let b32 = MultiBernoulli::on_grid(&[0.5f32, 0.9], &MetricParams::squared(10.0f32).unwrap()).unwrap();
    let d = optimal_action(&b32, &SensorModel::new(0.6f32).unwrap(), 10.0, &SensingCost::new(10.0f32).unwrap(), Metric::Ospa).unwrap();
    let d64 = optimal_action(&belief(&[0.5, 0.9]), &SensorModel::new(0.6).unwrap(), C, &SensingCost::new(10.0).unwrap(), Metric::Ospa).unwrap();
    assert_eq!(d.optimal_action, d64.optimal_action);
}
