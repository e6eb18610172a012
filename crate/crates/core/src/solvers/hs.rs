//! Horowitz–Sahni meet-in-the-middle.
//!
//! Each half's subset sums go into a list that also holds the empty half
//! (sum 0), so every non-empty subset is exactly one couple. The scan walks
//! the first list from its largest sum down and the second from its
//! smallest up. The current couple is checked; the couples it dominates are
//! emitted in the same step as collateral gains that depend on it.

use super::brute::{emit_subsets, status};
use super::{worst_case_steps, AlgorithmId};
use crate::set::{check_enum_n, InputSet, SubsetMask};
use crate::trace::{EventId, SolutionInfo, Subject, Trace, TraceBuilder, TraceSource};
use crate::{Error, Result};

/// Index counts of the two halves; the first takes the extra element.
pub(crate) fn halves(n: usize) -> (usize, usize) {
    (n.div_ceil(2), n / 2)
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    sum: i64,
    mask: SubsetMask,
}

fn half_list(input: &InputSet, offset: usize, size: usize) -> Vec<Entry> {
    let mut list: Vec<Entry> = (0..1u64 << size)
        .map(|local| {
            let mask = SubsetMask::from_bits(local << offset);
            Entry {
                sum: input.subset_sum(mask),
                mask,
            }
        })
        .collect();
    list.sort_by_key(|e| (e.sum, e.mask));
    list
}

pub fn solve_horowitz_sahni(input: &InputSet) -> Result<Trace> {
    let n = input.len();
    check_enum_n(n)?;
    if n < 2 {
        return Err(Error::UnsupportedSize("horowitz-sahni needs n >= 2".into()));
    }
    let (h1, h2) = halves(n);
    let mut b = TraceBuilder::new();

    // List building, brute-force style on each half.
    let first_half = (1..1u64 << h1).map(SubsetMask::from_bits);
    emit_subsets(&mut b, input, first_half);
    let second_half = (1..1u64 << h2).map(|local| SubsetMask::from_bits(local << h1));
    emit_subsets(&mut b, input, second_half);

    let first = half_list(input, 0, h1);
    b.step();
    let second = half_list(input, h1, h2);
    b.step();

    let mut i = first.len();
    let mut j = 0;
    while i > 0 && j < second.len() {
        let (a, c) = (first[i - 1], second[j]);
        b.step();
        if a.mask.is_empty() && c.mask.is_empty() {
            j += 1;
            continue;
        }
        let couple = a.mask.union(c.mask);
        let sum = a.sum + c.sum;
        let checked = b.checked(Subject::Mask(couple), 1, status(input, couple));
        if sum >= 0 {
            // Row sweep: this first-list entry with every later second-list entry.
            for later in &second[j + 1..] {
                sweep(&mut b, checked, a, *later);
            }
        }
        if sum <= 0 {
            // Column sweep: this second-list entry with every smaller first-list entry.
            for smaller in first[..i - 1].iter().rev() {
                sweep(&mut b, checked, *smaller, c);
            }
        }
        if sum >= 0 {
            i -= 1;
        }
        if sum <= 0 {
            j += 1;
        }
    }

    let trace = b.finish(
        TraceSource::Solver(AlgorithmId::HorowitzSahni),
        input.clone(),
    );
    let target = worst_case_steps(AlgorithmId::HorowitzSahni, n, None)? as u32;
    super::pad_trace(&trace, target)
}

/// Emits one dominated couple as a collateral gain of `couple_event`.
///
/// Its status follows from the known couple sum and the sorted order:
/// dominated couples sum to at least (or at most) the checked one, and
/// they reach zero exactly when the checked couple did and the swept list
/// entry ties it.
fn sweep(b: &mut TraceBuilder, couple_event: EventId, x: Entry, y: Entry) {
    let mask = x.mask.union(y.mask);
    if mask.is_empty() {
        return;
    }
    let info = if x.sum + y.sum == 0 {
        SolutionInfo::IsSolution { witness: mask }
    } else {
        SolutionInfo::NotSolution
    };
    b.collateral(Subject::Mask(mask), info, vec![couple_event]);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::enumerate_masks;
    use crate::trace::{validate_trace, EventKind, Property};

    fn set(xs: &[i64]) -> InputSet {
        InputSet::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn first_couple_is_a_solution() {
        let s = set(&[1, 2, -3, 5]);
        let t = solve_horowitz_sahni(&s).unwrap();
        // Build: 3 + 3 steps, sorts at 7 and 8, first couple at step 9.
        let first_scan = t.checked_in_step(9).next().unwrap();
        assert_eq!(
            first_scan.subject,
            Subject::Mask(SubsetMask::from_bits(0b0111))
        );
        assert_eq!(
            first_scan.solution,
            SolutionInfo::IsSolution {
                witness: SubsetMask::from_bits(0b0111)
            }
        );
        assert_eq!(s.pick(SubsetMask::from_bits(0b0111)), vec![1, 2, -3]);
        assert_eq!(t.step_count, 16);
        assert!(validate_trace(&t).passed());
    }

    #[test]
    fn two_element_scan() {
        let s = set(&[1, 2]);
        let t = solve_horowitz_sahni(&s).unwrap();
        let scan: Vec<_> = t.events.iter().filter(|e| e.step > 4).collect();
        assert_eq!(scan.len(), 3);
        assert_eq!((scan[0].step, scan[0].kind), (5, EventKind::Checked));
        assert_eq!(scan[0].subject, Subject::Mask(SubsetMask::from_bits(0b01)));
        assert_eq!((scan[1].step, scan[1].kind), (5, EventKind::Collateral));
        assert_eq!(scan[1].subject, Subject::Mask(SubsetMask::from_bits(0b11)));
        assert_eq!(scan[1].deps, vec![scan[0].id]);
        // Step 6 is the skipped empty couple.
        assert!(t.procedural_steps.contains(&6));
        assert_eq!((scan[2].step, scan[2].kind), (7, EventKind::Checked));
        assert_eq!(scan[2].subject, Subject::Mask(SubsetMask::from_bits(0b10)));
        assert_eq!(t.step_count, 8);
        assert!(!t.solution_exists());
        assert!(validate_trace(&t).passed());
    }

    #[test]
    fn every_mask_is_one_couple() {
        for n in 2..=9 {
            let (h1, _) = halves(n);
            let low = (1u64 << h1) - 1;
            let mut seen = std::collections::HashSet::new();
            for m in enumerate_masks(n).unwrap() {
                assert!(seen.insert((m.bits() & low, m.bits() & !low)));
            }
        }
    }

    #[test]
    fn tied_sums_report_every_solution() {
        // Second half {5, 2, 3} has {5} and {2, 3} tied at 5.
        let s = set(&[-5, 1, -1, 5, 2, 3]);
        let t = solve_horowitz_sahni(&s).unwrap();
        let expected: std::collections::BTreeSet<_> = enumerate_masks(6)
            .unwrap()
            .filter(|m| s.subset_sum(*m) == 0)
            .collect();
        assert_eq!(t.solutions(), expected);
        assert!(validate_trace(&t).passed());
        assert_eq!(t.property(), Property::P1);
    }

    #[test]
    fn collateral_depends_on_one_same_step_couple() {
        let s = set(&[7, -2, 4, -9, 1, 3, -5]);
        let t = solve_horowitz_sahni(&s).unwrap();
        for e in t.events.iter().filter(|e| e.kind == EventKind::Collateral) {
            assert_eq!(e.deps.len(), 1);
            let dep = t.event(e.deps[0]).unwrap();
            assert_eq!((dep.kind, dep.step), (EventKind::Checked, e.step));
        }
    }

    #[test]
    fn rejects_singleton() {
        assert!(matches!(
            solve_horowitz_sahni(&set(&[3])),
            Err(Error::UnsupportedSize(_))
        ));
    }
}
