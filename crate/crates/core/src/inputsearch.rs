//! Input classes: sampling input sets, grouping them by padded
//! distribution, and finding the S/T pair for a main step.

use std::collections::BTreeMap;

use rand::seq::index;
use serde::Serialize;

use crate::rng;
use crate::set::InputSet;
use crate::solvers::{solve, AlgorithmId};
use crate::trace::{Distribution, EventKind, Trace};
use crate::{Error, Result};

/// Largest value bound the sampler accepts.
pub const MAX_BOUND: u64 = 1 << 40;

/// Identifies an input class: all inputs of size `n` whose padded
/// distribution is `distribution`. The value bound only takes part for the
/// dynamic program, whose step count depends on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct InputClassKey {
    pub algorithm: AlgorithmId,
    pub n: usize,
    pub bound: Option<u64>,
    pub distribution: Distribution,
}

/// Two members of one input class: `s_input` has a subset-solution
/// checked at `step`, `t_input` does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StPair {
    pub key: InputClassKey,
    pub step: u32,
    pub s_input: InputSet,
    pub t_input: InputSet,
    /// Subsets checked at `step` (1 for one-check-per-step algorithms).
    pub places: u32,
}

#[derive(Serialize)]
struct StPairJson<'a> {
    algorithm: AlgorithmId,
    n: usize,
    #[serde(rename = "M")]
    bound: u64,
    step: u32,
    #[serde(rename = "S")]
    s: &'a InputSet,
    #[serde(rename = "T")]
    t: &'a InputSet,
    distribution: &'a Distribution,
}

impl StPair {
    /// `{algorithm, n, M, step, S, T, distribution}`.
    pub fn to_json(&self, bound: u64) -> String {
        serde_json::to_string(&StPairJson {
            algorithm: self.key.algorithm,
            n: self.key.n,
            bound,
            step: self.step,
            s: &self.s_input,
            t: &self.t_input,
            distribution: &self.key.distribution,
        })
        .expect("pair serializes")
    }
}

/// `count` input sets of `n` distinct integers drawn from `[-M, M]`.
///
/// Set `k` is drawn from its own stream of `seed`, so any prefix or
/// partition of the batch reproduces the same sets.
pub fn sample_input_sets(n: usize, bound: u64, count: usize, seed: u64) -> Result<Vec<InputSet>> {
    check_sampling(n, bound)?;
    if count == 0 {
        return Err(Error::Infeasible("count must be at least 1".into()));
    }
    (0..count as u64)
        .map(|k| sample_one(n, bound, seed, k))
        .collect()
}

fn check_sampling(n: usize, bound: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if bound > MAX_BOUND {
        return Err(Error::Capacity {
            what: "value bound",
            limit: MAX_BOUND,
            got: bound,
        });
    }
    if 2 * bound + 1 < n as u64 {
        return Err(Error::Infeasible(format!(
            "only {} distinct values in [-{bound}, {bound}] for n = {n}",
            2 * bound + 1
        )));
    }
    Ok(())
}

fn sample_one(n: usize, bound: u64, seed: u64, k: u64) -> Result<InputSet> {
    let span = 2 * bound + 1;
    let mut rng = rng::stream(seed, k);
    let elements = index::sample(&mut rng, span as usize, n)
        .into_iter()
        .map(|v| v as i64 - bound as i64)
        .collect();
    InputSet::new(elements)
}

fn class_key(alg: AlgorithmId, bound: Option<u64>, trace: &Trace) -> InputClassKey {
    InputClassKey {
        algorithm: alg,
        n: trace.n(),
        bound,
        distribution: trace.distribution(),
    }
}

fn dp_bound(alg: AlgorithmId, bound: Option<u64>) -> Result<Option<u64>> {
    match (alg, bound) {
        (AlgorithmId::DynamicProgramming, None) => Err(Error::MixedKeys(
            "dp input classes need a value bound".into(),
        )),
        (AlgorithmId::DynamicProgramming, b) => Ok(b),
        _ => Ok(None),
    }
}

/// Groups inputs by the padded distribution `alg` produces on them.
///
/// Grouping always recomputes the trace. All inputs must share one size;
/// for the dynamic program they must also respect the value bound.
pub fn group_by_distribution(
    alg: AlgorithmId,
    inputs: &[InputSet],
    bound: Option<u64>,
) -> Result<BTreeMap<InputClassKey, Vec<InputSet>>> {
    let bound = dp_bound(alg, bound)?;
    let mut out: BTreeMap<InputClassKey, Vec<InputSet>> = BTreeMap::new();
    let Some(first) = inputs.first() else {
        return Ok(out);
    };
    for s in inputs {
        if s.len() != first.len() {
            return Err(Error::MixedKeys(format!(
                "sizes {} and {}",
                first.len(),
                s.len()
            )));
        }
        if let Some(m) = bound {
            if s.max_abs() > m {
                return Err(Error::MixedKeys(format!("{s} exceeds value bound {m}")));
            }
        }
        let trace = solve(alg, s, bound)?;
        out.entry(class_key(alg, bound, &trace))
            .or_default()
            .push(s.clone());
    }
    Ok(out)
}

/// Whether a subset-solution is checked at `step`.
pub fn solution_checked_at(trace: &Trace, step: u32) -> bool {
    trace
        .checked_in_step(step)
        .any(|e| e.kind == EventKind::Checked && e.solution.witness().is_some())
}

#[derive(Default)]
struct ClassProgress {
    s_role: Option<InputSet>,
    t_role: Option<InputSet>,
    places: u32,
}

/// Rejection-samples up to `budget` inputs until one input class holds
/// both an S-role and a T-role input for the main step `step`.
pub fn find_s_t(
    alg: AlgorithmId,
    n: usize,
    bound: u64,
    step: u32,
    budget: u64,
    seed: u64,
) -> Result<StPair> {
    check_sampling(n, bound)?;
    let key_bound = dp_bound(alg, Some(bound))?;
    let mut classes: BTreeMap<InputClassKey, ClassProgress> = BTreeMap::new();
    let mut any_main = false;

    for k in 0..budget {
        let s = sample_one(n, bound, seed, k)?;
        let trace = solve(alg, &s, Some(bound))?;
        let key = class_key(alg, key_bound, &trace);
        let places = key.distribution.at(step);
        if places == 0 {
            classes.entry(key).or_default();
            continue;
        }
        any_main = true;
        let progress = classes.entry(key.clone()).or_default();
        progress.places = places;
        if solution_checked_at(&trace, step) {
            progress.s_role.get_or_insert(s);
        } else {
            progress.t_role.get_or_insert(s);
        }
        if let (Some(s_input), Some(t_input)) = (&progress.s_role, &progress.t_role) {
            return Ok(StPair {
                key,
                step,
                s_input: s_input.clone(),
                t_input: t_input.clone(),
                places: progress.places,
            });
        }
    }
    if !classes.is_empty() && !any_main {
        Err(Error::NotMainStep(step))
    } else {
        Err(Error::SearchExhausted { budget })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_shape_and_determinism() {
        let sets = sample_input_sets(3, 10, 5, 42).unwrap();
        assert_eq!(sets.len(), 5);
        for s in &sets {
            assert_eq!(s.len(), 3);
            assert!(s.elements().iter().all(|x| (-10..=10).contains(x)));
        }
        assert_eq!(sets, sample_input_sets(3, 10, 5, 42).unwrap());
        assert_eq!(sets[..2], sample_input_sets(3, 10, 2, 42).unwrap()[..]);
        assert_ne!(sets, sample_input_sets(3, 10, 5, 43).unwrap());
    }

    #[test]
    fn sampling_feasibility() {
        let s = &sample_input_sets(2, 1, 1, 9).unwrap()[0];
        assert!(s.elements().iter().all(|x| (-1..=1).contains(x)));
        let mut full = sample_input_sets(3, 1, 1, 9).unwrap()[0]
            .elements()
            .to_vec();
        full.sort();
        assert_eq!(full, vec![-1, 0, 1]);
        assert!(matches!(
            sample_input_sets(4, 1, 1, 9),
            Err(Error::Infeasible(_))
        ));
        assert!(matches!(
            sample_input_sets(3, 5, 0, 9),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn brute_force_has_one_class() {
        let inputs = sample_input_sets(4, 20, 30, 1).unwrap();
        let groups = group_by_distribution(AlgorithmId::BruteForce, &inputs, None).unwrap();
        assert_eq!(groups.len(), 1);
        assert_eq!(groups.values().next().unwrap().len(), 30);
    }

    #[test]
    fn horowitz_sahni_splits_classes() {
        // {3, -3 | 1, 2}: the first couple hits zero and both pointers move,
        // so the scan ends earlier than for {1, 2 | 4, 8}.
        let early = InputSet::new(vec![3, -3, 1, 2]).unwrap();
        let plain = InputSet::new(vec![1, 2, 4, 8]).unwrap();
        let groups = group_by_distribution(
            AlgorithmId::HorowitzSahni,
            &[early.clone(), plain.clone()],
            None,
        )
        .unwrap();
        assert_eq!(groups.len(), 2);
        for (key, members) in &groups {
            for m in members {
                let t = solve(AlgorithmId::HorowitzSahni, m, None).unwrap();
                assert_eq!(t.distribution(), key.distribution);
            }
        }
    }

    #[test]
    fn grouping_errors() {
        assert!(group_by_distribution(AlgorithmId::BruteForce, &[], None)
            .unwrap()
            .is_empty());
        let a = InputSet::new(vec![1, 2]).unwrap();
        let b = InputSet::new(vec![1, 2, 3]).unwrap();
        assert!(matches!(
            group_by_distribution(AlgorithmId::BruteForce, &[a.clone(), b], None),
            Err(Error::MixedKeys(_))
        ));
        assert!(matches!(
            group_by_distribution(
                AlgorithmId::DynamicProgramming,
                std::slice::from_ref(&a),
                None
            ),
            Err(Error::MixedKeys(_))
        ));
        assert!(matches!(
            group_by_distribution(AlgorithmId::DynamicProgramming, &[a], Some(1)),
            Err(Error::MixedKeys(_))
        ));
    }

    #[test]
    fn find_pair_at_final_brute_step() {
        let pair = find_s_t(AlgorithmId::BruteForce, 3, 10, 8, 10_000, 3).unwrap();
        let s = solve(AlgorithmId::BruteForce, &pair.s_input, None).unwrap();
        let t = solve(AlgorithmId::BruteForce, &pair.t_input, None).unwrap();
        assert!(solution_checked_at(&s, 8));
        assert!(!solution_checked_at(&t, 8));
        assert_eq!(pair.places, 1);
        assert_eq!(pair.s_input.subset_sum(pair.s_input.full_mask()), 0);
    }

    #[test]
    fn named_pair_behaves_at_step_eight() {
        let s = solve(
            AlgorithmId::BruteForce,
            &InputSet::new(vec![1, -3, 2]).unwrap(),
            None,
        )
        .unwrap();
        let t = solve(
            AlgorithmId::BruteForce,
            &InputSet::new(vec![1, 2, 4]).unwrap(),
            None,
        )
        .unwrap();
        assert!(solution_checked_at(&s, 8));
        assert!(!solution_checked_at(&t, 8));
        assert_eq!(s.distribution(), t.distribution());
    }

    #[test]
    fn procedural_step_is_rejected() {
        // n = 3: step 7 is the first addition for {x1, x2, x3}.
        assert_eq!(
            find_s_t(AlgorithmId::BruteForce, 3, 10, 7, 100, 0),
            Err(Error::NotMainStep(7))
        );
    }

    #[test]
    fn zero_budget_exhausts() {
        assert_eq!(
            find_s_t(AlgorithmId::BruteForce, 3, 10, 8, 0, 0),
            Err(Error::SearchExhausted { budget: 0 })
        );
    }

    #[test]
    fn pair_json_shape() {
        let pair = find_s_t(AlgorithmId::BruteForce, 2, 3, 1, 1000, 5).unwrap();
        let v: serde_json::Value = serde_json::from_str(&pair.to_json(3)).unwrap();
        assert_eq!(v["algorithm"], "brute");
        assert_eq!(v["M"], 3);
        assert_eq!(v["step"], 1);
        assert_eq!(v["S"].as_array().unwrap().len(), 2);
        assert_eq!(v["distribution"], serde_json::json!([1, 1, 1]));
    }
}
