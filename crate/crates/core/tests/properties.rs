use minorforge::generate::{gnp, random_regular};
use minorforge::graph::{parse_edge_list, write_edge_list};
use minorforge::model::MinorModel;
use minorforge::oracle::{has_minor_bruteforce, OracleBudget, OracleOutcome};
use minorforge::pipeline::{run_driver, DriverError, HeartConfig, Theorem};
use minorforge::rational::dec;
use minorforge::validate_model;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_driver_model_validates(
        n in 20usize..90,
        p in 0.5f64..1.0,
        t in 1usize..7,
        q in 0.0f64..1.0,
        seed in any::<u64>(),
    ) {
        let g = gnp(n, p, seed).unwrap();
        let h = gnp(t, q, seed ^ 0x5eed).unwrap();
        let config = HeartConfig { epsilon: dec("0.3"), ..HeartConfig::default() };
        for theorem in Theorem::ALL {
            match run_driver(theorem, &g, &h, seed, &config) {
                Ok(r) => {
                    if let Some(m) = r.model() {
                        prop_assert_eq!(validate_model(&h, &g, m), Ok(()), "{}", theorem);
                    }
                    prop_assert_eq!(r.exit_code() == 0, r.model().is_some());
                }
                Err(DriverError::Rejected(_)) => {}
                Err(e) => prop_assert!(false, "{theorem}: {e}"),
            }
        }
    }

    #[test]
    fn drivers_never_beat_the_oracle(n in 1usize..=7, p in 0.0f64..=1.0, t in 1usize..=4, q in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = gnp(n, p, seed).unwrap();
        let h = gnp(t, q, seed.wrapping_add(1)).unwrap();
        let exists = matches!(has_minor_bruteforce(&g, &h, &OracleBudget::default()).unwrap(), OracleOutcome::Model(_));
        for theorem in Theorem::ALL {
            if let Ok(r) = run_driver(theorem, &g, &h, seed, &HeartConfig::default()) {
                prop_assert!(r.model().is_none() || exists, "{theorem} found a model the oracle rules out");
            }
        }
    }

    #[test]
    fn edge_lists_round_trip(n in 0usize..40, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = gnp(n, p, seed).unwrap();
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn model_text_round_trips(sets in prop::collection::vec(prop::collection::btree_set(0usize..50, 1..5), 0..8)) {
        let m = MinorModel::new(sets);
        prop_assert_eq!(MinorModel::from_text(&m.to_text()).unwrap(), m);
    }
}

#[test]
fn heart_on_dense_hosts_reports_models_or_named_failures() {
    let h = random_regular(8, 4, 11).unwrap();
    for seed in 0..6 {
        let g = gnp(150, 0.85, seed).unwrap();
        let r = run_driver(Theorem::Heart, &g, &h, seed, &HeartConfig::default()).unwrap();
        match r.failure() {
            Some(f) => assert!(!f.violated.is_empty()),
            None => assert!(
                r.model().is_some_and(|m| validate_model(&h, &g, m).is_ok()) || r.exit_code() == 1
            ),
        }
    }
}
