//! The pseudo-polynomial dynamic program over `F(i, s)`.

use super::AlgorithmId;
use crate::set::{check_enum_n, InputSet, SubsetMask};
use crate::trace::{EventId, Family, SolutionInfo, Subject, Trace, TraceBuilder, TraceSource};
use crate::{Error, Result};

/// Largest table the solver will fill.
pub const DP_CELL_CAP: u64 = 1_000_000;

/// `F(i, s)`: whether some non-empty subset of `x_1..x_i` sums to `s`,
/// for `1 <= i <= n` and `B <= s <= A`, with a witness mask per true cell.
#[derive(Debug, Clone)]
pub struct DpTable {
    n: usize,
    pos_sum: i64,
    neg_sum: i64,
    // Row-major; 0 marks a false cell since witnesses are never empty.
    witness: Vec<u64>,
}

impl DpTable {
    pub fn fill(input: &InputSet) -> Result<Self> {
        let n = input.len();
        check_enum_n(n)?;
        let pos_sum: i64 = input.elements().iter().filter(|x| **x > 0).sum();
        let neg_sum: i64 = input.elements().iter().filter(|x| **x < 0).sum();
        let width = (pos_sum - neg_sum + 1) as u64;
        let cells = width.saturating_mul(n as u64);
        if cells > DP_CELL_CAP {
            return Err(Error::Capacity {
                what: "dp table cells",
                limit: DP_CELL_CAP,
                got: cells,
            });
        }
        let mut table = DpTable {
            n,
            pos_sum,
            neg_sum,
            witness: vec![0; cells as usize],
        };
        for i in 1..=n {
            let x = input.element(i);
            let single = SubsetMask::singleton(i);
            for s in neg_sum..=pos_sum {
                let w = if i == 1 {
                    (x == s).then_some(single)
                } else if let Some(w) = table.witness(i - 1, s) {
                    Some(w)
                } else if x == s {
                    Some(single)
                } else {
                    table.witness(i - 1, s - x).map(|w| w.union(single))
                };
                if let Some(w) = w {
                    let k = table.index(i, s).expect("s within [B, A]");
                    table.witness[k] = w.bits();
                }
            }
        }
        Ok(table)
    }

    /// `A`, the sum of the positive elements.
    pub fn pos_sum(&self) -> i64 {
        self.pos_sum
    }

    /// `B`, the sum of the negative elements.
    pub fn neg_sum(&self) -> i64 {
        self.neg_sum
    }

    pub fn width(&self) -> u64 {
        (self.pos_sum - self.neg_sum + 1) as u64
    }

    pub fn cells(&self) -> u64 {
        self.width() * self.n as u64
    }

    fn index(&self, i: usize, s: i64) -> Option<usize> {
        if i == 0 || i > self.n || s < self.neg_sum || s > self.pos_sum {
            None
        } else {
            Some((i - 1) * self.width() as usize + (s - self.neg_sum) as usize)
        }
    }

    /// `F(i, s)`; false outside `[B, A]`.
    pub fn value(&self, i: usize, s: i64) -> bool {
        self.witness(i, s).is_some()
    }

    /// A subset of `x_1..x_i` summing to `s`, when one exists.
    pub fn witness(&self, i: usize, s: i64) -> Option<SubsetMask> {
        let k = self.index(i, s)?;
        match self.witness[k] {
            0 => None,
            bits => Some(SubsetMask::from_bits(bits)),
        }
    }
}

/// Fills the table one cell per step, row by row with `s` ascending.
///
/// Each `F(i, 0)` step is a main step: `{x_i}` is checked through the test
/// `x_i = 0`, and for `i >= 2` the family `C_i \ {x_i}` is a collateral
/// gain depending on the events that determined `C_{i-1} \ {x_{i-1}}` and
/// `{x_{i-1}}`. Cells with `s != 0` are procedural steps. The trace is not
/// padded; see [`super::solve`].
pub fn solve_dp(input: &InputSet) -> Result<Trace> {
    let table = DpTable::fill(input)?;
    let mut b = TraceBuilder::new();
    let before_zero = (-table.neg_sum()) as u32;
    let after_zero = table.pos_sum() as u32;

    let mut prev_single: Option<EventId> = None;
    let mut prev_family: Option<EventId> = None;
    for i in 1..=input.len() {
        let x = input.element(i);
        let single = SubsetMask::singleton(i);
        b.skip(before_zero);
        b.step();
        let single_info = if x == 0 {
            SolutionInfo::IsSolution { witness: single }
        } else {
            SolutionInfo::NotSolution
        };
        let single_ev = b.checked(Subject::Mask(single), 1, single_info);

        if i >= 2 {
            let family_witness = table
                .witness(i - 1, 0)
                .or_else(|| table.witness(i - 1, -x).map(|w| w.union(single)));
            let info = match family_witness {
                Some(witness) => SolutionInfo::FamilyContainsSolution { witness },
                None => SolutionInfo::FamilyContainsNoSolution,
            };
            let deps: Vec<EventId> = prev_family.into_iter().chain(prev_single).collect();
            let family = Subject::Family(Family::PrefixExceptSingleton(i));
            prev_family = Some(b.collateral(family, info, deps));
        }
        prev_single = Some(single_ev);
        b.skip(after_zero);
    }
    debug_assert_eq!(u64::from(b.current_step()), table.cells());
    Ok(b.finish(
        TraceSource::Solver(AlgorithmId::DynamicProgramming),
        input.clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::{validate_trace, EventKind};

    fn set(xs: &[i64]) -> InputSet {
        InputSet::new(xs.to_vec()).unwrap()
    }

    /// Hand-filled table for {1, -3, 2}: rows i = 1..3, columns s = -3..3.
    #[test]
    fn hand_filled_table() {
        let t = DpTable::fill(&set(&[1, -3, 2])).unwrap();
        assert_eq!((t.pos_sum(), t.neg_sum(), t.cells()), (3, -3, 21));
        let rows: [[bool; 7]; 3] = [
            [false, false, false, false, true, false, false],
            [true, true, false, false, true, false, false],
            [true, true, true, true, true, true, true],
        ];
        for (i, row) in rows.iter().enumerate() {
            for (k, want) in row.iter().enumerate() {
                assert_eq!(
                    t.value(i + 1, k as i64 - 3),
                    *want,
                    "F({}, {})",
                    i + 1,
                    k as i64 - 3
                );
            }
        }
        assert_eq!(t.witness(3, 0), Some(SubsetMask::full(3)));
        assert!(!t.value(3, 4));
        assert!(!t.value(3, -4));
    }

    #[test]
    fn trace_for_zero_sum_triple() {
        let s = set(&[1, -3, 2]);
        let tr = solve_dp(&s).unwrap();
        assert_eq!(tr.step_count, 21);
        assert_eq!(tr.main_steps(), vec![4, 11, 18]);
        assert_eq!(
            tr.solutions().into_iter().collect::<Vec<_>>(),
            vec![SubsetMask::full(3)]
        );
        assert!(validate_trace(&tr).passed());
    }

    #[test]
    fn no_solution_pair() {
        let s = set(&[1, 2]);
        let table = DpTable::fill(&s).unwrap();
        assert!(!table.value(2, 0));
        let tr = solve_dp(&s).unwrap();
        assert_eq!(tr.main_steps().len(), 2);
        assert!(!tr.solution_exists());
    }

    #[test]
    fn zero_element() {
        let s = set(&[0]);
        let table = DpTable::fill(&s).unwrap();
        assert_eq!(table.witness(1, 0), Some(SubsetMask::singleton(1)));
        assert!(solve_dp(&s).unwrap().solution_exists());
    }

    #[test]
    fn family_dependencies() {
        let tr = solve_dp(&set(&[4, -1, 7, -6])).unwrap();
        let fams: Vec<_> = tr
            .events
            .iter()
            .filter(|e| e.kind == EventKind::Collateral)
            .collect();
        assert_eq!(fams.len(), 3);
        // C2 depends on {x1} only; later families on the previous family and singleton.
        assert_eq!(fams[0].deps.len(), 1);
        for f in &fams[1..] {
            let kinds: Vec<_> = f.deps.iter().map(|d| tr.event(*d).unwrap().kind).collect();
            assert_eq!(kinds, vec![EventKind::Collateral, EventKind::Checked]);
        }
    }

    #[test]
    fn table_cap() {
        let s = set(&[400_000, -400_000, 300_000]);
        assert!(matches!(solve_dp(&s), Err(Error::Capacity { .. })));
    }
}
