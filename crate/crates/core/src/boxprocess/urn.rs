use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use rand::Rng;
use serde::Serialize;

use super::RationalQ;
use crate::rng;
use crate::{Error, Result};

/// Trials drawn from one random stream in Monte Carlo estimation.
pub const CHUNK_TRIALS: u64 = 4096;

/// Which place of the observed step held a checked subset-solution;
/// 0 means none did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OutcomeLabel(pub u32);

/// A multiset of labeled instances. Drawing one uniformly realizes the
/// event "a subset-solution is checked in the observed step" exactly when
/// the label is non-zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InputBox {
    /// Instance count per place `0..=ell`.
    counts: Vec<u64>,
    total: u64,
}

impl InputBox {
    /// `B_{a/b}`: `a` solution instances and `b - a` others, one place.
    pub fn two_type(a: u64, b: u64) -> Result<Self> {
        if a > b {
            return Err(Error::Infeasible(format!("a = {a} exceeds b = {b}")));
        }
        make_box(&[(0, b - a), (1, a)], 1)
    }

    /// `B'_{a1,a2/b}`: two places, `b - a1 - a2` instances with neither.
    pub fn three_type(a1: u64, a2: u64, b: u64) -> Result<Self> {
        let a = a1.checked_add(a2).ok_or(Error::Overflow)?;
        if a > b {
            return Err(Error::Infeasible(format!("a1 + a2 = {a} exceeds b = {b}")));
        }
        make_box(&[(0, b - a), (1, a1), (2, a2)], 2)
    }

    /// Number of labeled places, `ell`.
    pub fn places(&self) -> u32 {
        self.counts.len() as u32 - 1
    }

    pub fn count(&self, place: u32) -> u64 {
        self.counts.get(place as usize).copied().unwrap_or(0)
    }

    /// Cardinality `b`.
    pub fn total(&self) -> u64 {
        self.total
    }

    fn label_of(&self, index: u64) -> OutcomeLabel {
        let mut rest = index;
        for (place, &c) in self.counts.iter().enumerate() {
            if rest < c {
                return OutcomeLabel(place as u32);
            }
            rest -= c;
        }
        unreachable!("index below total")
    }
}

impl fmt::Display for InputBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hits: Vec<String> = self.counts[1..].iter().map(u64::to_string).collect();
        write!(f, "B'[{}/{}]", hits.join(","), self.total)
    }
}

/// Builds a box from `(place, count)` pairs with `ell` places.
pub fn make_box(counts: &[(u32, u64)], ell: u32) -> Result<InputBox> {
    let mut per_place = vec![0u64; ell as usize + 1];
    for &(place, c) in counts {
        if place > ell {
            return Err(Error::PlaceOutOfRange { place, ell });
        }
        let slot = &mut per_place[place as usize];
        *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
    }
    let total = per_place
        .iter()
        .try_fold(0u64, |acc, c| acc.checked_add(*c))
        .ok_or(Error::Overflow)?;
    if total == 0 {
        return Err(Error::EmptyBox);
    }
    if total > i64::MAX as u64 {
        return Err(Error::Overflow);
    }
    Ok(InputBox {
        counts: per_place,
        total,
    })
}

fn frac(num: u64, den: u64) -> RationalQ {
    RationalQ::from_ratio(Ratio::new(num as i64, den as i64)).expect("count never exceeds total")
}

/// `P(A) = a / b`: the share of instances with a non-zero place.
#[allow(non_snake_case)]
pub fn probability_of_A(b: &InputBox) -> RationalQ {
    frac(b.total - b.counts[0], b.total)
}

/// Exact outcome probabilities, place `k` having `count_k / b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pmf {
    probs: Vec<RationalQ>,
}

impl Pmf {
    pub fn get(&self, place: u32) -> RationalQ {
        self.probs
            .get(place as usize)
            .copied()
            .unwrap_or(RationalQ::ZERO)
    }

    pub fn places(&self) -> u32 {
        self.probs.len() as u32 - 1
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, RationalQ)> + '_ {
        self.probs.iter().enumerate().map(|(k, p)| (k as u32, *p))
    }

    /// Exact sum of all probabilities.
    pub fn total(&self) -> Ratio<i64> {
        self.probs.iter().map(|p| p.ratio()).sum()
    }
}

pub fn exact_pmf(b: &InputBox) -> Pmf {
    Pmf {
        probs: b.counts.iter().map(|&c| frac(c, b.total)).collect(),
    }
}

/// One uniform draw from the box.
pub fn sample_box(b: &InputBox, seed: u64) -> OutcomeLabel {
    let mut rng = rng::stream(seed, 0);
    b.label_of(rng.random_range(0..b.total))
}

/// Outcome counts from repeated draws.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmpiricalPmf {
    pub trials: u64,
    pub counts: Vec<u64>,
}

impl EmpiricalPmf {
    fn empty(places: u32) -> Self {
        EmpiricalPmf {
            trials: 0,
            counts: vec![0; places as usize + 1],
        }
    }

    /// Associative, so per-worker partial results can be combined in any order.
    pub fn merge(mut self, other: &EmpiricalPmf) -> Self {
        self.trials += other.trials;
        for (c, o) in self.counts.iter_mut().zip(&other.counts) {
            *c += o;
        }
        self
    }

    pub fn frequency(&self, place: u32) -> f64 {
        let c = self.counts.get(place as usize).copied().unwrap_or(0);
        c as f64 / self.trials as f64
    }

    /// `{place: frequency}` as JSON.
    pub fn to_json(&self) -> String {
        let map: BTreeMap<String, f64> = (0..self.counts.len() as u32)
            .map(|k| (k.to_string(), self.frequency(k)))
            .collect();
        serde_json::to_string(&map).expect("frequencies serialize")
    }
}

fn chunk_count(trials: u64) -> u64 {
    trials.div_ceil(CHUNK_TRIALS)
}

/// Draws the trials of chunk `chunk` from stream `(seed, chunk)`.
fn run_chunk(b: &InputBox, trials: u64, seed: u64, chunk: u64) -> EmpiricalPmf {
    let start = chunk * CHUNK_TRIALS;
    let len = CHUNK_TRIALS.min(trials - start);
    let mut rng = rng::stream(seed, chunk);
    let mut out = EmpiricalPmf::empty(b.places());
    for _ in 0..len {
        out.counts[b.label_of(rng.random_range(0..b.total)).0 as usize] += 1;
    }
    out.trials = len;
    out
}

/// Monte Carlo frequencies from `trials` draws, single-threaded.
///
/// The trial range is cut into fixed chunks of [`CHUNK_TRIALS`], each with
/// its own stream, so the result does not depend on how chunks are
/// scheduled; see [`estimate_pmf_parallel`].
pub fn estimate_pmf(b: &InputBox, trials: u64, seed: u64) -> Result<EmpiricalPmf> {
    if trials == 0 {
        return Err(Error::Infeasible("need at least one trial".into()));
    }
    Ok((0..chunk_count(trials))
        .map(|c| run_chunk(b, trials, seed, c))
        .fold(EmpiricalPmf::empty(b.places()), |acc, part| {
            acc.merge(&part)
        }))
}

/// Same result as [`estimate_pmf`], spread over `workers` threads.
pub fn estimate_pmf_parallel(
    b: &InputBox,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<EmpiricalPmf> {
    if trials == 0 {
        return Err(Error::Infeasible("need at least one trial".into()));
    }
    let workers = workers.max(1) as u64;
    let chunks = chunk_count(trials);
    let parts: Vec<EmpiricalPmf> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                scope.spawn(move || {
                    (w..chunks)
                        .step_by(workers as usize)
                        .map(|c| run_chunk(b, trials, seed, c))
                        .fold(EmpiricalPmf::empty(b.places()), |acc, p| acc.merge(&p))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    Ok(parts
        .iter()
        .fold(EmpiricalPmf::empty(b.places()), |acc, p| acc.merge(p)))
}
