//! Instrumented subset-sum solvers.
//!
//! Step granularity is one addition, comparison or table cell per step, and
//! each sort counts as a single step. Every solver emits a [`Trace`].

mod brute;
mod dp;
mod hs;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::set::{check_enum_n, InputSet};
use crate::trace::Trace;
use crate::{Error, Result};

pub use brute::solve_brute_force;
pub use dp::{solve_dp, DpTable, DP_CELL_CAP};
pub use hs::solve_horowitz_sahni;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgorithmId {
    #[serde(rename = "brute")]
    BruteForce,
    #[serde(rename = "hs")]
    HorowitzSahni,
    #[serde(rename = "dp")]
    DynamicProgramming,
}

impl AlgorithmId {
    pub const ALL: [AlgorithmId; 3] = [
        AlgorithmId::BruteForce,
        AlgorithmId::HorowitzSahni,
        AlgorithmId::DynamicProgramming,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmId::BruteForce => "brute",
            AlgorithmId::HorowitzSahni => "hs",
            AlgorithmId::DynamicProgramming => "dp",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            AlgorithmId::HorowitzSahni => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(AlgorithmId::BruteForce),
            "hs" => Ok(AlgorithmId::HorowitzSahni),
            "dp" => Ok(AlgorithmId::DynamicProgramming),
            _ => Err(Error::Parse(format!(
                "unknown algorithm {s:?} (brute, hs, dp)"
            ))),
        }
    }
}

/// Steps the brute-force solver spends on all subsets of `n` elements:
/// `sum_m C(n, m) * max(1, m - 1)`.
pub(crate) fn brute_force_steps(n: usize) -> u64 {
    let mut binom: u64 = 1;
    let mut total = 0;
    for m in 1..=n as u64 {
        binom = binom * (n as u64 - m + 1) / m;
        total += binom * (m.saturating_sub(1)).max(1);
    }
    total
}

/// Worst-case step count for inputs of size `n`.
///
/// The dynamic program's running time depends on element values, so it
/// needs the value bound `M` (all `|x_i| <= M`); it returns `n (2nM + 1)`.
/// The other algorithms ignore `bound`.
pub fn worst_case_steps(alg: AlgorithmId, n: usize, bound: Option<u64>) -> Result<u64> {
    check_enum_n(n)?;
    if n < alg.min_n() {
        return Err(Error::UnsupportedSize(format!(
            "{alg} needs n >= {}",
            alg.min_n()
        )));
    }
    Ok(match alg {
        AlgorithmId::BruteForce => brute_force_steps(n),
        AlgorithmId::HorowitzSahni => {
            let (h1, h2) = hs::halves(n);
            let (l1, l2) = (1u64 << h1, 1u64 << h2);
            brute_force_steps(h1) + brute_force_steps(h2) + 2 + (l1 + l2 - 1) + 1
        }
        AlgorithmId::DynamicProgramming => {
            let m = bound.ok_or_else(|| {
                Error::UnsupportedSize("dp worst case needs a value bound".into())
            })?;
            let n = n as u64;
            (2 * n)
                .checked_mul(m)
                .and_then(|v| v.checked_add(1))
                .and_then(|v| v.checked_mul(n))
                .ok_or(Error::Overflow)?
        }
    })
}

/// Appends event-free steps until the trace has `target` steps.
pub fn pad_trace(trace: &Trace, target: u32) -> Result<Trace> {
    if target < trace.step_count {
        return Err(Error::Shrink {
            current: trace.step_count,
            target,
        });
    }
    let mut out = trace.clone();
    out.procedural_steps.extend(trace.step_count + 1..=target);
    out.step_count = target;
    Ok(out)
}

/// Runs `alg` on `input` and pads the trace to the worst case for its
/// input class. For the dynamic program, `bound` defaults to `max |x_i|`.
pub fn solve(alg: AlgorithmId, input: &InputSet, bound: Option<u64>) -> Result<Trace> {
    let raw = match alg {
        AlgorithmId::BruteForce => solve_brute_force(input)?,
        AlgorithmId::HorowitzSahni => solve_horowitz_sahni(input)?,
        AlgorithmId::DynamicProgramming => solve_dp(input)?,
    };
    let bound = match alg {
        AlgorithmId::DynamicProgramming => {
            let m = bound.unwrap_or_else(|| input.max_abs());
            if m < input.max_abs() {
                return Err(Error::Infeasible(format!(
                    "value bound {m} below max |x_i| = {}",
                    input.max_abs()
                )));
            }
            Some(m)
        }
        _ => bound,
    };
    let target = worst_case_steps(alg, input.len(), bound)?;
    let target = u32::try_from(target).map_err(|_| Error::Capacity {
        what: "trace step count",
        limit: u64::from(u32::MAX),
        got: target,
    })?;
    pad_trace(&raw, target)
}
