use rand::seq::SliceRandom;

use super::{SolutionInfo, Subject, Trace, TraceBuilder, TraceSource};
use crate::rng;
use crate::set::{enumerate_masks, InputSet};
use crate::{Error, Result};

/// Places per step in the mock trace.
const PLACES: u32 = 2;

/// A mock multi-check trace: every subset is checked, two per step, in a
/// seed-determined order. No known algorithm behaves like this; the trace
/// exists to exercise the analyzers on the other side of the classification.
pub fn synthesize_p2_trace(input: &InputSet, seed: u64) -> Result<Trace> {
    if input.len() < 2 {
        return Err(Error::CannotSynthesize("need at least two elements".into()));
    }
    let mut masks: Vec<_> = enumerate_masks(input.len())?.collect();
    masks.shuffle(&mut rng::stream(seed, 0));

    let mut b = TraceBuilder::new();
    for pair in masks.chunks(PLACES as usize) {
        b.step();
        for (place, &m) in (1..).zip(pair) {
            let info = if input.subset_sum(m) == 0 {
                SolutionInfo::IsSolution { witness: m }
            } else {
                SolutionInfo::NotSolution
            };
            b.checked(Subject::Mask(m), place, info);
        }
    }
    Ok(b.finish(TraceSource::SyntheticP2, input.clone()))
}
