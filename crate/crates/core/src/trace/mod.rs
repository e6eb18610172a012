//! Determination traces and their analyzers.
//!
//! A trace records, step by step, every subset an algorithm determines.
//! Each [`DeterminationEvent`] is either *checked* (determined on its own,
//! no dependencies) or *collateral* (derived from earlier events). The
//! identity of a determined subject is the id of the event that determined
//! it, so two events over equal subsets are still different nodes.

mod chains;
mod synth;
mod validate;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::set::{InputSet, SubsetMask};
use crate::solvers::AlgorithmId;
use crate::{Error, Result};

pub use chains::{build_chains, validate_chain, Chain, ChainNode, ChainViolation};
pub use synth::synthesize_p2_trace;
pub use validate::{validate_trace, ValidationReport, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EventId(pub u32);

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventKind {
    Checked,
    Collateral,
}

/// A symbolic family of subsets, determined as one node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// All non-empty subsets of `x_1..x_i` except `{x_i}`.
    #[serde(rename = "prefix_except_singleton")]
    PrefixExceptSingleton(usize),
    #[serde(rename = "explicit")]
    Explicit(Vec<SubsetMask>),
}

impl Family {
    /// Members in ascending mask order. Iterated lazily, never collected.
    pub fn members(&self) -> Box<dyn Iterator<Item = SubsetMask> + '_> {
        match *self {
            Family::PrefixExceptSingleton(i) => {
                let skip = SubsetMask::singleton(i);
                Box::new(
                    (1..=SubsetMask::full(i).bits())
                        .map(SubsetMask::from_bits)
                        .filter(move |m| *m != skip),
                )
            }
            Family::Explicit(ref list) => Box::new(list.iter().copied()),
        }
    }

    pub fn contains(&self, mask: SubsetMask) -> bool {
        match *self {
            Family::PrefixExceptSingleton(i) => {
                !mask.is_empty() && mask.fits(i) && mask != SubsetMask::singleton(i)
            }
            Family::Explicit(ref list) => list.contains(&mask),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subject {
    #[serde(rename = "mask")]
    Mask(SubsetMask),
    #[serde(rename = "family")]
    Family(Family),
}

impl Subject {
    pub fn members(&self) -> Box<dyn Iterator<Item = SubsetMask> + '_> {
        match self {
            Subject::Mask(m) => Box::new(std::iter::once(*m)),
            Subject::Family(f) => f.members(),
        }
    }

    /// Why this subject is not well-formed for an input of size `n`.
    pub(crate) fn problem(&self, n: usize) -> Option<String> {
        match self {
            Subject::Mask(m) if m.is_empty() => Some("empty mask".into()),
            Subject::Mask(m) if !m.fits(n) => Some(format!("{m} wider than n = {n}")),
            Subject::Mask(_) => None,
            Subject::Family(Family::PrefixExceptSingleton(i)) if *i < 2 || *i > n => {
                Some(format!("prefix family index {i} outside 2..={n}"))
            }
            Subject::Family(Family::PrefixExceptSingleton(_)) => None,
            Subject::Family(Family::Explicit(list)) => {
                if list.is_empty() {
                    return Some("empty explicit family".into());
                }
                list.iter()
                    .find(|m| m.is_empty() || !m.fits(n))
                    .map(|m| format!("family member {m} invalid for n = {n}"))
            }
        }
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Mask(m) => write!(f, "{m}"),
            Subject::Family(Family::PrefixExceptSingleton(i)) => write!(f, "C{i}\\{{x{i}}}"),
            Subject::Family(Family::Explicit(list)) => write!(f, "family[{}]", list.len()),
        }
    }
}

/// What the determination revealed about subset-solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SolutionInfo {
    IsSolution { witness: SubsetMask },
    NotSolution,
    FamilyContainsSolution { witness: SubsetMask },
    FamilyContainsNoSolution,
}

impl SolutionInfo {
    pub fn witness(self) -> Option<SubsetMask> {
        match self {
            SolutionInfo::IsSolution { witness }
            | SolutionInfo::FamilyContainsSolution { witness } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminationEvent {
    pub id: EventId,
    /// 1-based step index.
    pub step: u32,
    pub kind: EventKind,
    pub subject: Subject,
    /// Labeled place within the step for checked events; 0 for collateral.
    pub place: u32,
    pub solution: SolutionInfo,
    pub deps: Vec<EventId>,
}

/// Which procedure produced a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TraceSource {
    Solver(AlgorithmId),
    SyntheticP2,
}

impl TraceSource {
    pub fn name(self) -> &'static str {
        match self {
            TraceSource::Solver(alg) => alg.name(),
            TraceSource::SyntheticP2 => "synthetic-p2",
        }
    }
}

impl fmt::Display for TraceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TraceSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "synthetic-p2" {
            Ok(TraceSource::SyntheticP2)
        } else {
            s.parse().map(TraceSource::Solver)
        }
    }
}

impl Serialize for TraceSource {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for TraceSource {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The full event log of one run, padded to a common step count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub algorithm: TraceSource,
    pub input: InputSet,
    pub step_count: u32,
    /// Steps (1-based) that carry no events, padding included.
    pub procedural_steps: Vec<u32>,
    pub events: Vec<DeterminationEvent>,
}

impl Trace {
    /// Builds a trace, deriving `procedural_steps` from the events.
    pub fn from_events(
        algorithm: TraceSource,
        input: InputSet,
        step_count: u32,
        events: Vec<DeterminationEvent>,
    ) -> Self {
        let procedural_steps = empty_steps(step_count, &events);
        Trace {
            algorithm,
            input,
            step_count,
            procedural_steps,
            events,
        }
    }

    pub fn n(&self) -> usize {
        self.input.len()
    }

    pub fn event(&self, id: EventId) -> Option<&DeterminationEvent> {
        // Solver traces use dense ids; handcrafted ones may not.
        match self.events.get(id.0 as usize) {
            Some(e) if e.id == id => Some(e),
            _ => self.events.iter().find(|e| e.id == id),
        }
    }

    pub fn distribution(&self) -> Distribution {
        extract_distribution(self)
    }

    pub fn property(&self) -> Property {
        classify_property(&self.distribution())
    }

    pub fn checked_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| e.kind == EventKind::Checked)
            .count()
    }

    pub fn collateral_count(&self) -> usize {
        self.events.len() - self.checked_count()
    }

    /// Steps holding at least one checked event.
    pub fn main_steps(&self) -> Vec<u32> {
        let steps: BTreeSet<u32> = self
            .events
            .iter()
            .filter(|e| e.kind == EventKind::Checked)
            .map(|e| e.step)
            .collect();
        steps.into_iter().collect()
    }

    /// Every subset the run reported as a subset-solution.
    pub fn solutions(&self) -> BTreeSet<SubsetMask> {
        self.events
            .iter()
            .filter_map(|e| e.solution.witness())
            .collect()
    }

    pub fn solution_exists(&self) -> bool {
        self.events.iter().any(|e| e.solution.witness().is_some())
    }

    /// Checked events in `step`, in emission order.
    pub fn checked_in_step(&self, step: u32) -> impl Iterator<Item = &DeterminationEvent> {
        self.events
            .iter()
            .filter(move |e| e.step == step && e.kind == EventKind::Checked)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn empty_steps(step_count: u32, events: &[DeterminationEvent]) -> Vec<u32> {
    let busy: BTreeSet<u32> = events.iter().map(|e| e.step).collect();
    (1..=step_count).filter(|s| !busy.contains(s)).collect()
}

/// Incremental trace construction used by the solvers.
///
/// Ids are handed out densely in emission order, and dependencies must
/// name events that were already emitted.
#[derive(Debug, Default)]
pub(crate) struct TraceBuilder {
    events: Vec<DeterminationEvent>,
    step: u32,
}

impl TraceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Opens the next step and returns its index.
    pub fn step(&mut self) -> u32 {
        self.step += 1;
        self.step
    }

    /// Opens `count` steps with no events.
    pub fn skip(&mut self, count: u32) {
        self.step += count;
    }

    pub fn current_step(&self) -> u32 {
        self.step
    }

    fn push(
        &mut self,
        kind: EventKind,
        subject: Subject,
        place: u32,
        solution: SolutionInfo,
        deps: Vec<EventId>,
    ) -> EventId {
        assert!(self.step > 0, "event emitted before the first step");
        let id = EventId(self.events.len() as u32);
        assert!(deps.iter().all(|d| *d < id), "dependency on a future event");
        self.events.push(DeterminationEvent {
            id,
            step: self.step,
            kind,
            subject,
            place,
            solution,
            deps,
        });
        id
    }

    pub fn checked(&mut self, subject: Subject, place: u32, solution: SolutionInfo) -> EventId {
        self.push(EventKind::Checked, subject, place, solution, Vec::new())
    }

    pub fn collateral(
        &mut self,
        subject: Subject,
        solution: SolutionInfo,
        deps: Vec<EventId>,
    ) -> EventId {
        assert!(!deps.is_empty(), "collateral event without dependencies");
        self.push(EventKind::Collateral, subject, 0, solution, deps)
    }

    pub fn finish(self, source: TraceSource, input: InputSet) -> Trace {
        Trace::from_events(source, input, self.step, self.events)
    }
}

/// Checked-subset counts per step, `(d_1, ..., d_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Distribution(pub Vec<u32>);

impl Distribution {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `d_j` for the 1-based step `j`; 0 beyond the end.
    pub fn at(&self, step: u32) -> u32 {
        step.checked_sub(1)
            .and_then(|j| self.0.get(j as usize))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&d| u64::from(d)).sum()
    }

    /// 1-based indices of steps with at least one checked subset.
    pub fn main_steps(&self) -> impl Iterator<Item = u32> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, d)| **d > 0)
            .map(|(j, _)| j as u32 + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Property {
    /// At most one checked subset in every step.
    P1,
    /// Some step checks more than one subset.
    P2,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::P1 => "P1",
            Property::P2 => "P2",
        })
    }
}

pub fn extract_distribution(trace: &Trace) -> Distribution {
    let mut counts = vec![0u32; trace.step_count as usize];
    for e in trace.events.iter().filter(|e| e.kind == EventKind::Checked) {
        if let Some(slot) = e
            .step
            .checked_sub(1)
            .and_then(|j| counts.get_mut(j as usize))
        {
            *slot += 1;
        }
    }
    Distribution(counts)
}

pub fn classify_property(d: &Distribution) -> Property {
    if d.0.iter().any(|&c| c > 1) {
        Property::P2
    } else {
        Property::P1
    }
}
