use thiserror::Error;

use crate::trace::EventId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input set must contain at least one element")]
    EmptyInput,
    #[error("duplicate element {0} in input set")]
    DuplicateElement(i64),
    #[error("input set too large for subset sums to fit in 62 bits")]
    Overflow,
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("{what}: {got} exceeds the supported limit of {limit}")]
    Capacity {
        what: &'static str,
        limit: u64,
        got: u64,
    },
    #[error("{0}")]
    UnsupportedSize(String),
    #[error("cannot synthesize a multi-check trace: {0}")]
    CannotSynthesize(String),
    #[error("dependency cycle through events {cycle:?} (infinite chain)")]
    InfiniteChain { cycle: Vec<EventId> },
    #[error("no event with id {0}")]
    UnknownEvent(EventId),
    #[error("cannot shrink a trace of {current} steps to {target}")]
    Shrink { current: u32, target: u32 },
    #[error("infeasible request: {0}")]
    Infeasible(String),
    #[error("input sets have mixed sizes or value bounds: {0}")]
    MixedKeys(String),
    #[error("step {0} is not a main step of any discovered input class")]
    NotMainStep(u32),
    #[error("search exhausted after {budget} samples")]
    SearchExhausted { budget: u64 },
    #[error("box must contain at least one instance")]
    EmptyBox,
    #[error("place {place} exceeds box capacity {ell}")]
    PlaceOutOfRange { place: u32, ell: u32 },
    #[error("family rule is undefined at q = {0}")]
    UndefinedPoint(String),
    #[error("value outside [0, 1]: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Capacity-style failures: the request is well-formed but too large
    /// or the bounded search ran out.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::SearchExhausted { .. })
    }
}
