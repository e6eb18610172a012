use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use super::{EventId, EventKind, SolutionInfo, Subject, Trace};
use crate::set::MAX_ENUM_N;

/// How many missing masks a coverage violation lists explicitly.
const MISSING_SAMPLE: usize = 16;

/// One problem found while auditing a trace or chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// A checked event lists dependencies.
    CheckedWithDependencies {
        event: EventId,
    },
    /// A collateral event lists none.
    CollateralWithoutDependencies {
        event: EventId,
    },
    /// A dependency names an event emitted later.
    ForwardDependency {
        event: EventId,
        dependency: EventId,
    },
    /// An event depends on its own node.
    SelfDependency {
        event: EventId,
    },
    UnknownDependency {
        event: EventId,
        dependency: EventId,
    },
    DuplicateEventId {
        event: EventId,
    },
    /// Event ids do not increase in emission order.
    EventOrder {
        event: EventId,
    },
    StepOutOfRange {
        event: EventId,
        step: u32,
    },
    /// Steps go backwards in emission order.
    StepOrder {
        event: EventId,
    },
    PlaceInvalid {
        event: EventId,
        place: u32,
    },
    InvalidSubject {
        event: EventId,
        reason: String,
    },
    /// Non-empty subsets never determined by any event.
    MissingSubsets {
        count: u64,
        sample: Vec<crate::SubsetMask>,
    },
    /// Coverage cannot be enumerated for this input size.
    CoverageUnchecked {
        n: usize,
    },
    SolutionMismatch {
        event: EventId,
        reason: String,
    },
    ProceduralStepsMismatch,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CheckedWithDependencies { event } => {
                write!(f, "{event}: checked event has dependencies")
            }
            Violation::CollateralWithoutDependencies { event } => {
                write!(f, "{event}: collateral event has no dependencies")
            }
            Violation::ForwardDependency { event, dependency } => {
                write!(f, "{event}: depends on later event {dependency}")
            }
            Violation::SelfDependency { event } => write!(f, "{event}: depends on itself"),
            Violation::UnknownDependency { event, dependency } => {
                write!(f, "{event}: depends on unknown event {dependency}")
            }
            Violation::DuplicateEventId { event } => write!(f, "{event}: duplicate id"),
            Violation::EventOrder { event } => write!(f, "{event}: ids out of emission order"),
            Violation::StepOutOfRange { event, step } => {
                write!(f, "{event}: step {step} outside the trace")
            }
            Violation::StepOrder { event } => write!(f, "{event}: step goes backwards"),
            Violation::PlaceInvalid { event, place } => write!(f, "{event}: bad place {place}"),
            Violation::InvalidSubject { event, reason } => write!(f, "{event}: {reason}"),
            Violation::MissingSubsets { count, sample } => {
                write!(f, "{count} subsets never determined, e.g. ")?;
                for (k, m) in sample.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{m}")?;
                }
                Ok(())
            }
            Violation::CoverageUnchecked { n } => {
                write!(f, "coverage not checked for n = {n} (limit {MAX_ENUM_N})")
            }
            Violation::SolutionMismatch { event, reason } => write!(f, "{event}: {reason}"),
            Violation::ProceduralStepsMismatch => {
                f.write_str("procedural_steps does not match the event-free steps")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn any(&self, pred: impl Fn(&Violation) -> bool) -> bool {
        self.violations.iter().any(pred)
    }
}

/// Audits a trace: the checked/collateral partition, dependency ordering,
/// node identity, coverage of every non-empty subset and the consistency
/// of every reported solution status.
pub fn validate_trace(trace: &Trace) -> ValidationReport {
    let mut out = Vec::new();
    let n = trace.n();

    let mut position: HashMap<EventId, usize> = HashMap::with_capacity(trace.events.len());
    let mut last_id: Option<EventId> = None;
    let mut last_step = 0;
    let mut places: HashSet<(u32, u32)> = HashSet::new();

    for (pos, e) in trace.events.iter().enumerate() {
        if position.insert(e.id, pos).is_some() {
            out.push(Violation::DuplicateEventId { event: e.id });
        }
        if last_id.is_some_and(|prev| e.id <= prev) {
            out.push(Violation::EventOrder { event: e.id });
        }
        last_id = Some(e.id);

        if e.step == 0 || e.step > trace.step_count {
            out.push(Violation::StepOutOfRange {
                event: e.id,
                step: e.step,
            });
        }
        if e.step < last_step {
            out.push(Violation::StepOrder { event: e.id });
        }
        last_step = last_step.max(e.step);

        match e.kind {
            EventKind::Checked => {
                if !e.deps.is_empty() {
                    out.push(Violation::CheckedWithDependencies { event: e.id });
                }
                if e.place == 0 || !places.insert((e.step, e.place)) {
                    out.push(Violation::PlaceInvalid {
                        event: e.id,
                        place: e.place,
                    });
                }
            }
            EventKind::Collateral => {
                if e.deps.is_empty() {
                    out.push(Violation::CollateralWithoutDependencies { event: e.id });
                }
                if e.place != 0 {
                    out.push(Violation::PlaceInvalid {
                        event: e.id,
                        place: e.place,
                    });
                }
            }
        }

        if let Some(reason) = e.subject.problem(n) {
            out.push(Violation::InvalidSubject {
                event: e.id,
                reason,
            });
        } else if let Some(reason) = solution_problem(trace, &e.subject, e.solution) {
            out.push(Violation::SolutionMismatch {
                event: e.id,
                reason,
            });
        }
    }

    for e in &trace.events {
        for &dep in &e.deps {
            if dep == e.id {
                out.push(Violation::SelfDependency { event: e.id });
            } else if !position.contains_key(&dep) {
                out.push(Violation::UnknownDependency {
                    event: e.id,
                    dependency: dep,
                });
            } else if dep > e.id {
                out.push(Violation::ForwardDependency {
                    event: e.id,
                    dependency: dep,
                });
            }
        }
    }

    if n > MAX_ENUM_N {
        out.push(Violation::CoverageUnchecked { n });
    } else {
        let mut seen = vec![false; 1 << n];
        for e in &trace.events {
            if e.subject.problem(n).is_none() {
                for m in e.subject.members() {
                    seen[m.bits() as usize] = true;
                }
            }
        }
        let missing: Vec<u64> = (1..seen.len() as u64)
            .filter(|&b| !seen[b as usize])
            .collect();
        if !missing.is_empty() {
            out.push(Violation::MissingSubsets {
                count: missing.len() as u64,
                sample: missing
                    .iter()
                    .take(MISSING_SAMPLE)
                    .map(|&b| crate::SubsetMask::from_bits(b))
                    .collect(),
            });
        }
    }

    let busy: BTreeSet<u32> = trace.events.iter().map(|e| e.step).collect();
    let expected: Vec<u32> = (1..=trace.step_count)
        .filter(|s| !busy.contains(s))
        .collect();
    if expected != trace.procedural_steps {
        out.push(Violation::ProceduralStepsMismatch);
    }

    ValidationReport { violations: out }
}

fn solution_problem(trace: &Trace, subject: &Subject, info: SolutionInfo) -> Option<String> {
    let s = &trace.input;
    match (subject, info) {
        (Subject::Mask(m), SolutionInfo::IsSolution { witness }) => {
            if witness != *m {
                Some(format!("witness {witness} differs from subject {m}"))
            } else if s.subset_sum(*m) != 0 {
                Some(format!(
                    "{m} reported as a solution but sums to {}",
                    s.subset_sum(*m)
                ))
            } else {
                None
            }
        }
        (Subject::Mask(m), SolutionInfo::NotSolution) => {
            (s.subset_sum(*m) == 0).then(|| format!("{m} sums to zero but reported as none"))
        }
        (Subject::Family(f), SolutionInfo::FamilyContainsSolution { witness }) => {
            if !f.contains(witness) {
                Some(format!("witness {witness} not in family"))
            } else if !witness.fits(s.len()) || s.subset_sum(witness) != 0 {
                Some(format!("witness {witness} does not sum to zero"))
            } else {
                None
            }
        }
        (Subject::Family(f), SolutionInfo::FamilyContainsNoSolution) => f
            .members()
            .find(|m| s.subset_sum(*m) == 0)
            .map(|m| format!("family member {m} sums to zero but family reported none")),
        (Subject::Mask(_), _) => Some("family status on a single subset".into()),
        (Subject::Family(_), _) => Some("single-subset status on a family".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::{InputSet, SubsetMask};
    use crate::trace::{DeterminationEvent, TraceSource};

    fn checked(id: u32, step: u32, bits: u64, s: &InputSet) -> DeterminationEvent {
        let m = SubsetMask::from_bits(bits);
        DeterminationEvent {
            id: EventId(id),
            step,
            kind: EventKind::Checked,
            subject: Subject::Mask(m),
            place: 1,
            solution: if s.subset_sum(m) == 0 {
                SolutionInfo::IsSolution { witness: m }
            } else {
                SolutionInfo::NotSolution
            },
            deps: vec![],
        }
    }

    fn small_trace() -> Trace {
        let s = InputSet::new(vec![1, -3, 2]).unwrap();
        let events = (1..=7)
            .map(|b| checked(b as u32 - 1, b as u32, b, &s))
            .collect();
        Trace::from_events(TraceSource::SyntheticP2, s, 7, events)
    }

    #[test]
    fn well_formed_trace_passes() {
        let r = validate_trace(&small_trace());
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn wrong_solution_status_is_flagged() {
        let mut t = small_trace();
        t.events[6].solution = SolutionInfo::NotSolution;
        let r = validate_trace(&t);
        assert!(r.any(
            |v| matches!(v, Violation::SolutionMismatch { event, .. } if *event == EventId(6))
        ));
    }

    #[test]
    fn checked_with_deps_and_bad_place() {
        let mut t = small_trace();
        t.events[3].deps = vec![EventId(0)];
        t.events[4].place = 0;
        let r = validate_trace(&t);
        assert!(r.any(|v| matches!(v, Violation::CheckedWithDependencies { .. })));
        assert!(r.any(|v| matches!(v, Violation::PlaceInvalid { place: 0, .. })));
    }

    #[test]
    fn stale_procedural_steps_flagged() {
        let mut t = small_trace();
        t.procedural_steps.push(3);
        assert!(validate_trace(&t).any(|v| *v == Violation::ProceduralStepsMismatch));
    }
}
