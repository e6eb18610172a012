//! Dependency chains `r_m -> ... -> r_0` ending at a determined subject.

use std::collections::HashSet;

use serde::Serialize;

use super::{EventId, EventKind, Subject, Trace};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainNode {
    pub event: EventId,
    pub kind: EventKind,
    pub subject: Subject,
}

/// A dependency path, starting node first and target last.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub nodes: Vec<ChainNode>,
}

impl Chain {
    /// Number of arrows.
    pub fn len(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    /// True for the degenerate chain `r -> r` of a checked subject.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn events(&self) -> Vec<EventId> {
        self.nodes.iter().map(|n| n.event).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainViolation {
    EmptyChain,
    StartNotChecked { event: EventId },
    InnerNotCollateral { event: EventId },
    AdjacentIdentical { event: EventId },
    RepeatedNode { event: EventId },
    TooLong { length: u64, bound: u64 },
}

/// Every maximal dependency path ending at `target`.
///
/// A checked target yields the single length-0 chain. Paths are listed in
/// depth-first order following each event's dependency list.
pub fn build_chains(trace: &Trace, target: EventId) -> Result<Vec<Chain>> {
    trace.event(target).ok_or(Error::UnknownEvent(target))?;
    let mut out = Vec::new();
    let mut path = vec![target];
    let mut on_path: HashSet<EventId> = HashSet::from([target]);
    walk(trace, &mut path, &mut on_path, &mut out)?;
    Ok(out)
}

// `path` runs from the target backwards.
fn walk(
    trace: &Trace,
    path: &mut Vec<EventId>,
    on_path: &mut HashSet<EventId>,
    out: &mut Vec<Chain>,
) -> Result<()> {
    let head = *path.last().expect("path never empty");
    let event = trace.event(head).ok_or(Error::UnknownEvent(head))?;
    if event.kind == EventKind::Checked || event.deps.is_empty() {
        let nodes = path
            .iter()
            .rev()
            .map(|id| {
                let e = trace.event(*id).expect("visited events exist");
                ChainNode {
                    event: e.id,
                    kind: e.kind,
                    subject: e.subject.clone(),
                }
            })
            .collect();
        out.push(Chain { nodes });
        return Ok(());
    }
    for &dep in &event.deps {
        if !on_path.insert(dep) {
            let start = path.iter().position(|id| *id == dep).unwrap_or(0);
            let mut cycle: Vec<EventId> = path[start..].to_vec();
            cycle.reverse();
            return Err(Error::InfiniteChain { cycle });
        }
        path.push(dep);
        walk(trace, path, on_path, out)?;
        path.pop();
        on_path.remove(&dep);
    }
    Ok(())
}

/// Checks a chain against an input of size `n`: checked start, collateral
/// interior, distinct adjacent and overall node identities, and the
/// pigeonhole bound `length <= 2^n - 1`.
pub fn validate_chain(chain: &Chain, n: usize) -> Vec<ChainViolation> {
    let mut out = Vec::new();
    let Some(first) = chain.nodes.first() else {
        return vec![ChainViolation::EmptyChain];
    };
    if first.kind != EventKind::Checked {
        out.push(ChainViolation::StartNotChecked { event: first.event });
    }
    for node in &chain.nodes[1..] {
        if node.kind != EventKind::Collateral {
            out.push(ChainViolation::InnerNotCollateral { event: node.event });
        }
    }
    for pair in chain.nodes.windows(2) {
        if pair[0].event == pair[1].event {
            out.push(ChainViolation::AdjacentIdentical {
                event: pair[1].event,
            });
        }
    }
    let mut seen = HashSet::new();
    for node in &chain.nodes {
        if !seen.insert(node.event) {
            out.push(ChainViolation::RepeatedNode { event: node.event });
        }
    }
    let bound = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let length = chain.len() as u64;
    if length > bound {
        out.push(ChainViolation::TooLong { length, bound });
    }
    out
}
