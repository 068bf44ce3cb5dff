use proptest::prelude::*;
use sensmgmt::{
    brute_force_ms, cardinality_distribution, leave_one_out_cardinality, mean_square_error, msgospa, optimal_mask,
    optimal_mask_gospa, outcome_probability, posterior_existence, EstimateMask, Metric, MetricParams, Outcome,
    SensorModel,
};

const C: f64 = 10.0;

fn grid(n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|i| vec![2.0 * C * i as f64]).collect()
}

fn existences(max: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(
        prop_oneof![4 => 0.0f64..=1.0, 1 => prop::sample::select(vec![0.0, 0.5, 1.0])],
        1..=max,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_forms_match_enumeration(r in existences(4)) {
        let params = MetricParams::squared(C).unwrap();
        let locs = grid(r.len());
        for mask in EstimateMask::all(r.len()) {
            for metric in Metric::ALL {
                let closed = mean_square_error(&r, &mask, metric, C).unwrap();
                let oracle = brute_force_ms(&r, &locs, &mask, metric, &params).unwrap();
                prop_assert!((closed - oracle).abs() <= 1e-10, "{metric} {mask}: {closed} vs {oracle}");
            }
        }
    }

    #[test]
    fn msgospa_is_separable(r in existences(5), bits in prop::collection::vec(any::<bool>(), 5)) {
        let mask = EstimateMask::new(bits[..r.len()].to_vec());
        let whole = msgospa(&r, &mask, C).unwrap();
        let parts: f64 = r
            .iter()
            .zip(mask.bits())
            .map(|(&ri, &b)| msgospa(&[ri], &EstimateMask::new(vec![b]), C).unwrap())
            .sum();
        prop_assert!((whole - parts).abs() <= 1e-10);
    }

    #[test]
    fn gospa_threshold_attains_enumerated_minimum(r in existences(5)) {
        let best = optimal_mask(&r, Metric::Gospa, C).unwrap();
        let threshold = msgospa(&r, &optimal_mask_gospa(&r), C).unwrap();
        prop_assert!((best.mmse - threshold).abs() <= 1e-10);
        let differing: Vec<usize> = (0..r.len()).filter(|&i| best.mask.bits()[i] != optimal_mask_gospa(&r).bits()[i]).collect();
        for i in differing {
            prop_assert_eq!(r[i], 0.5);
        }
    }

    #[test]
    fn msgospa_all_ones_non_increasing(r in existences(4), i in 0usize..4, bump in 0.0f64..1.0) {
        let i = i % r.len();
        let ones = EstimateMask::new(vec![true; r.len()]);
        let mut higher = r.clone();
        higher[i] = r[i] + (1.0 - r[i]) * bump;
        prop_assert!(msgospa(&higher, &ones, C).unwrap() <= msgospa(&r, &ones, C).unwrap() + 1e-12);
    }

    #[test]
    fn cardinality_is_a_distribution(r in existences(6)) {
        let rho = cardinality_distribution(&r);
        prop_assert_eq!(rho.len(), r.len() + 1);
        prop_assert!((rho.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        prop_assert!(rho.iter().all(|&p| p >= -1e-15));
        for (i, &ri) in r.iter().enumerate() {
            let minus = leave_one_out_cardinality(&r, i).unwrap();
            for n in 0..rho.len() {
                let up = if n > 0 { ri * minus[n - 1] } else { 0.0 };
                let stay = if n < minus.len() { (1.0 - ri) * minus[n] } else { 0.0 };
                prop_assert!((rho[n] - up - stay).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn bayes_update_is_consistent(r in 0.0f64..=1.0, pd in 0.0f64..=1.0, observed in any::<bool>()) {
        let sensor = SensorModel::new(pd).unwrap();
        let outcomes: &[Outcome] = if observed { &[Outcome::Empty, Outcome::Detected] } else { &[Outcome::Empty] };
        let mut total = 0.0;
        let mut mean_posterior = 0.0;
        for &o in outcomes {
            let p = outcome_probability(r, observed, &sensor, o).unwrap();
            total += p;
            if p > 0.0 {
                mean_posterior += p * posterior_existence(r, &sensor, observed, o).unwrap();
            }
        }
        prop_assert!((total - 1.0).abs() <= 1e-12);
        prop_assert!((mean_posterior - r).abs() <= 1e-12);
    }
}

#[test]
fn spot_values_at_point_six() {
    let r = [0.6, 0.6];
    let expected = [84.0, 58.0, 58.0, 40.0];
    for (mask, want) in EstimateMask::all(2).iter().zip(expected) {
        let got = mean_square_error(&r, mask, Metric::Ospa, C).unwrap();
        assert!((got - want).abs() < 1e-12, "{mask}: {got}");
    }
    let u = mean_square_error(&r, &EstimateMask::from_bits(&[1, 0]), Metric::Uospa, C).unwrap();
    assert!((u - 76.0).abs() < 1e-12);
}

#[test]
fn oracle_rejects_oversized_input() {
    let r = vec![0.5; 21];
    let params = MetricParams::squared(C).unwrap();
    let mask = EstimateMask::new(vec![false; 21]);
    assert!(matches!(
        brute_force_ms(&r, &grid(21), &mask, Metric::Gospa, &params),
        Err(sensmgmt::Error::EnumerationLimit { n: 21, limit: 20 })
    ));
}

#[test]
fn ospa_estimate_depends_on_far_component() {
    // The reported set for target 1 changes with the existence of target 2.
    let lone = optimal_mask(&[0.35, 0.0], Metric::Ospa, C).unwrap();
    let crowded = optimal_mask(&[0.35, 0.42], Metric::Ospa, C).unwrap();
    assert_ne!(lone.mask.bits()[0], crowded.mask.bits()[0]);
    let g_lone = optimal_mask(&[0.35, 0.0], Metric::Gospa, C).unwrap();
    let g_crowded = optimal_mask(&[0.35, 0.42], Metric::Gospa, C).unwrap();
    assert_eq!(g_lone.mask.bits()[0], g_crowded.mask.bits()[0]);
}
