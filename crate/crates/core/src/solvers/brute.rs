use crate::set::{enumerate_masks, InputSet, SubsetMask};
use crate::solvers::AlgorithmId;
use crate::trace::{SolutionInfo, Subject, Trace, TraceBuilder, TraceSource};
use crate::Result;

/// Checks every non-empty subset in ascending mask order.
///
/// A subset of `m` elements costs `max(1, m - 1)` steps: the partial
/// additions are procedural and the final addition (or, for a singleton,
/// the comparison) is the main step where the subset is checked.
pub fn solve_brute_force(input: &InputSet) -> Result<Trace> {
    let mut b = TraceBuilder::new();
    emit_subsets(&mut b, input, enumerate_masks(input.len())?);
    Ok(b.finish(TraceSource::Solver(AlgorithmId::BruteForce), input.clone()))
}

/// Brute-force style checking of `masks`, shared with the list-building
/// phase of the meet-in-the-middle solver.
pub(crate) fn emit_subsets(
    b: &mut TraceBuilder,
    input: &InputSet,
    masks: impl Iterator<Item = SubsetMask>,
) {
    for m in masks {
        let size = m.count();
        if size > 2 {
            b.skip(size - 2);
        }
        b.step();
        b.checked(Subject::Mask(m), 1, status(input, m));
    }
}

pub(crate) fn status(input: &InputSet, m: SubsetMask) -> SolutionInfo {
    if input.subset_sum(m) == 0 {
        SolutionInfo::IsSolution { witness: m }
    } else {
        SolutionInfo::NotSolution
    }
}
