use ::gppt::numkern::ToleranceConfig;
use ::gppt::verify::{
    check_theorem, constraint_verdict, generate_with, lemma_counterexample, paper_fixtures, replay, run_campaign,
    run_default_campaign, Classification, Constraint, Field, GeneratorSpec, THEOREM_IDS,
};
use proptest::prelude::*;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

/// Constraint sets that the generator supports together.
const COMBINATIONS: &[&[Constraint]] = &[
    &[Constraint::NullAInC, Constraint::NullAstarInBstar],
    &[Constraint::NullDInB, Constraint::NullDstarInCstar],
    &[Constraint::RangeBInA, Constraint::RangeCInD],
    &[Constraint::RangeBInA, Constraint::RangeCtInAt],
    &[Constraint::AEp, Constraint::BplusCstarInRangeA],
    &[Constraint::DEp, Constraint::CplusBstarInRangeD],
    &[
        Constraint::NullAInC,
        Constraint::NullAstarInBstar,
        Constraint::RangeCInF,
        Constraint::RangeBtInFt,
    ],
    &[
        Constraint::NullDInB,
        Constraint::NullDstarInCstar,
        Constraint::RangeBInG,
        Constraint::RangeCtInGt,
    ],
    &[Constraint::RangeCInD, Constraint::RangeBtInDt],
];

fn sizes() -> impl Strategy<Value = (usize, usize)> {
    prop::sample::select(vec![(2, 1), (3, 1), (4, 2), (5, 2), (6, 3), (8, 4)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn generated_instances_satisfy_constraints(
        seed in any::<u64>(),
        (n, k) in sizes(),
        idx in 0..COMBINATIONS.len(),
        complex in any::<bool>(),
    ) {
        let f = if complex { Field::Complex } else { Field::Real };
        let spec = GeneratorSpec::new(n, k, f, seed).with(COMBINATIONS[idx]);
        let pm = generate_with(&spec, &cfg()).unwrap();
        prop_assert_eq!(pm.n(), n);
        prop_assert_eq!(pm.split(), k);
        prop_assert!(complex || pm.is_real());
        for &c in COMBINATIONS[idx] {
            let v = constraint_verdict(c, &pm, &cfg()).unwrap();
            prop_assert!(v.holds, "{c}: {:e}", v.residual);
        }
    }

    #[test]
    fn counterexample_iff_hypotheses_without_conclusion(seed in any::<u64>(), (n, k) in sizes(), id in 0..THEOREM_IDS.len()) {
        let (id, _) = THEOREM_IDS[id];
        let pm = generate_with(&GeneratorSpec::new(n.min(5), k.min(2), Field::Real, seed), &cfg()).unwrap();
        let r = check_theorem(id, &pm, &cfg()).unwrap();
        prop_assert_eq!(
            r.classification == Classification::Counterexample,
            r.hypotheses_satisfied && !r.conclusion_holds
        );
        prop_assert_eq!(r.classification == Classification::HypothesisViolated, !r.hypotheses_satisfied);
    }
}

#[test]
fn campaigns_are_reproducible() {
    let spec = GeneratorSpec::new(4, 2, Field::Complex, 17).with(&[Constraint::AEp, Constraint::BplusCstarInRangeA]);
    let a = run_campaign("T_RANK_A", &spec, 30, &cfg()).unwrap();
    let b = run_campaign("T_RANK_A", &spec, 30, &cfg()).unwrap();
    assert_eq!(a, b);
    let c = run_default_campaign("T32_INVOLUTION", 25, 9, &cfg()).unwrap();
    let d = run_default_campaign("T32_INVOLUTION", 25, 9, &cfg()).unwrap();
    assert_eq!(c, d);
}

#[test]
fn constrained_campaigns_find_no_counterexamples() {
    for (id, _) in THEOREM_IDS {
        if matches!(*id, "L34_FACTORS" | "REFUTED_DAGGER") {
            continue;
        }
        let r = run_default_campaign(id, 60, 4, &cfg()).unwrap();
        assert_eq!(r.counterexamples, 0, "{id}: {:?}", r.counterexample_seeds);
    }
}

#[test]
fn false_statements_are_caught() {
    for id in ["L34_FACTORS", "REFUTED_DAGGER"] {
        let r = run_default_campaign(id, 60, 4, &cfg()).unwrap();
        assert!(r.counterexamples > 0, "{id}");
    }
}

#[test]
fn every_fixture_fact_replays() {
    let mut fixtures = paper_fixtures();
    fixtures.push(lemma_counterexample());
    for f in &fixtures {
        for o in replay(f, &cfg()).unwrap() {
            assert!(o.passed, "{}: {:?} observed {:?}", f.name, o.fact, o.observed);
        }
    }
}
