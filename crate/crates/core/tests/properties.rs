use std::collections::BTreeSet;

use proptest::prelude::*;

use subsetlab::boxprocess::{
    estimate_pmf, exact_pmf, family_box, rational_grid, FamilyRule, InputBox,
};
use subsetlab::inputsearch::{group_by_distribution, sample_input_sets};
use subsetlab::solvers::{solve, worst_case_steps};
use subsetlab::trace::{build_chains, validate_chain, validate_trace, EventKind};
use subsetlab::{enumerate_masks, AlgorithmId, InputSet, Property, SubsetMask, Trace};

fn distinct_set(max_n: usize) -> impl Strategy<Value = InputSet> {
    prop::collection::btree_set(-40i64..=40, 1..=max_n)
        .prop_map(|s| s.into_iter().collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| InputSet::new(v).unwrap())
}

fn oracle(input: &InputSet) -> BTreeSet<SubsetMask> {
    enumerate_masks(input.len())
        .unwrap()
        .filter(|m| input.is_solution(*m).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solvers_agree_with_oracle(input in distinct_set(9)) {
        let truth = oracle(&input);
        for alg in AlgorithmId::ALL {
            if input.len() < alg.min_n() {
                continue;
            }
            let t = solve(alg, &input, None).unwrap();
            prop_assert_eq!(t.solution_exists(), !truth.is_empty(), "{}", alg.name());
            prop_assert!(t.solutions().iter().all(|m| truth.contains(m)));
            if alg != AlgorithmId::DynamicProgramming {
                prop_assert_eq!(t.solutions(), truth.clone());
            }
        }
    }

    #[test]
    fn padded_traces_are_valid_p1(input in distinct_set(8)) {
        for alg in AlgorithmId::ALL {
            if input.len() < alg.min_n() {
                continue;
            }
            let t = solve(alg, &input, None).unwrap();
            prop_assert!(validate_trace(&t).passed());
            prop_assert_eq!(t.property(), Property::P1);
            let bound = (alg == AlgorithmId::DynamicProgramming).then(|| input.max_abs());
            prop_assert_eq!(u64::from(t.step_count), worst_case_steps(alg, input.len(), bound).unwrap());
        }
    }

    #[test]
    fn trace_json_round_trips(input in distinct_set(6)) {
        for alg in AlgorithmId::ALL {
            if input.len() < alg.min_n() {
                continue;
            }
            let t = solve(alg, &input, None).unwrap();
            prop_assert_eq!(Trace::from_json(&t.to_json()).unwrap(), t);
        }
    }

    #[test]
    fn families_hit_q(max_den in 1u32..40) {
        for q in rational_grid(max_den).unwrap() {
            for rule in [FamilyRule::Const, FamilyRule::PaperF, FamilyRule::JumpAt(q)] {
                let b = family_box(&rule, q).unwrap();
                prop_assert_eq!(subsetlab::boxprocess::probability_of_A(&b), q);
            }
        }
    }

    #[test]
    fn estimates_are_seed_deterministic(a in 0u64..20, extra in 1u64..20, seed: u64) {
        let b = InputBox::two_type(a, a + extra).unwrap();
        let e1 = estimate_pmf(&b, 5000, seed).unwrap();
        prop_assert_eq!(&e1, &estimate_pmf(&b, 5000, seed).unwrap());
        prop_assert_eq!(e1.counts.iter().sum::<u64>(), 5000);
        prop_assert!(exact_pmf(&b).total() == num_rational::Ratio::from_integer(1));
    }
}

#[test]
fn chains_end_at_their_target_and_start_checked() {
    let input = InputSet::new(vec![7, -3, 12, -4, 1, -9]).unwrap();
    for alg in AlgorithmId::ALL {
        let t = solve(alg, &input, None).unwrap();
        for e in t.events.iter().filter(|e| e.kind == EventKind::Collateral) {
            let chains = build_chains(&t, e.id).unwrap();
            assert!(!chains.is_empty());
            for ch in chains {
                assert_eq!(ch.nodes.last().unwrap().event, e.id);
                assert!(validate_chain(&ch, input.len()).is_empty());
            }
        }
    }
}

#[test]
fn class_split_for_dp_but_not_brute_force() {
    let inputs = sample_input_sets(4, 15, 40, 3).unwrap();
    let brute = group_by_distribution(AlgorithmId::BruteForce, &inputs, None).unwrap();
    assert_eq!(brute.len(), 1);
    let dp = group_by_distribution(AlgorithmId::DynamicProgramming, &inputs, Some(15)).unwrap();
    assert!(dp.len() > 1);
}

#[test]
fn dp_bound_controls_step_count() {
    let input = InputSet::new(vec![2, -5, 3]).unwrap();
    let tight = solve(AlgorithmId::DynamicProgramming, &input, None).unwrap();
    let loose = solve(AlgorithmId::DynamicProgramming, &input, Some(20)).unwrap();
    assert_eq!(tight.step_count, 3 * (2 * 3 * 5 + 1));
    assert_eq!(loose.step_count, 3 * (2 * 3 * 20 + 1));
    assert_eq!(tight.main_steps().len(), loose.main_steps().len());
    assert!(solve(AlgorithmId::DynamicProgramming, &input, Some(4)).is_err());
}
