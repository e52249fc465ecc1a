//! Every catalog scenario must deliver exactly the verdicts it advertises.

use moddiv::divisibility::{divide, is_seemingly_divisible, oracle_divide, NotDivisibleReason};
use moddiv::gallery::{
    build_scenario, classify_finite_ring, probe_ring, restrict_to_factor, ProbeOptions,
    SCENARIO_NAMES,
};
use moddiv::Budget;

#[test]
fn scenario_expectations_hold() {
    let budget = Budget::default();
    for name in SCENARIO_NAMES {
        let s = build_scenario(name).unwrap();
        let e = &s.expected;

        if let (Some(f), Some(r)) = (s.homs.first(), s.r.as_ref()) {
            if let Some(want) = e.seeming {
                let got = is_seemingly_divisible(f, r).unwrap().verdict();
                assert_eq!(got, want, "{name}: seeming verdict");
            }
            if let Some(want) = e.divisible {
                let got = divide(f, r).unwrap().is_divisible();
                assert_eq!(got, want, "{name}: divisibility verdict");
            }
            if let Some(want) = e.counterexample {
                let seeming = is_seemingly_divisible(f, r).unwrap().verdict();
                let divisible = divide(f, r).unwrap().is_divisible();
                assert_eq!(seeming && !divisible, want, "{name}: counterexample status");
            }
            if let Some(count) = e.oracle_hom_count {
                match oracle_divide(f, r, &budget).unwrap() {
                    moddiv::divisibility::DivisionCertificate::NotDivisible {
                        reason: NotDivisibleReason::OracleExhausted { count: got },
                    } => assert_eq!(got, count, "{name}: oracle hom count"),
                    other => panic!("{name}: expected oracle exhaustion, got {other:?}"),
                }
            }
        }

        if let Some(want) = e.predicted_sp {
            let c = classify_finite_ring(&s.ring, &budget).unwrap();
            assert_eq!(c.predicted_sp, want, "{name}: predictedSP");
        }
        if let Some(clean) = e.probe_clean {
            let opts = ProbeOptions {
                trials: 100,
                seed: 1,
                ..ProbeOptions::default()
            };
            let verdict = probe_ring(&s.ring, &opts, &budget).unwrap();
            assert_eq!(
                verdict.counterexample.is_none(),
                clean,
                "{name}: probe cleanliness"
            );
        }
        if let Some(factor_idx) = e.counterexample_factor {
            let c = classify_finite_ring(&s.ring, &budget).unwrap();
            let opts = ProbeOptions {
                trials: 5,
                seed: 1,
                ..ProbeOptions::default()
            };
            let verdict = probe_ring(&s.ring, &opts, &budget).unwrap();
            let rec = verdict
                .counterexample
                .unwrap_or_else(|| panic!("{name}: expected a counterexample"));
            for (i, factor) in c.factors.iter().enumerate() {
                let hit = restrict_to_factor(&rec, factor).unwrap();
                assert_eq!(
                    hit,
                    i == factor_idx,
                    "{name}: factor {i} restriction verdict"
                );
            }
        }
    }
}
