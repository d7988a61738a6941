use thiserror::Error;

use crate::convex::Segment;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("segment ({a},{b}) is invalid for n = {n}: need 1 <= a < b <= n")]
    InvalidSegment { a: u32, b: u32, n: u32 },

    #[error("a segment is never compared with itself: ({0})")]
    SameSegment(Segment),

    #[error("edge set is not a convex thrackle: {0} and {1} are disjoint")]
    NotThrackle(Segment, Segment),

    #[error("convex thrackle on {n} points is not maximal: {missing} can be added")]
    NotMaximal { n: u32, missing: Segment },

    #[error("cycles share vertex {0}; a common edge is only guaranteed for vertex-disjoint cycles")]
    CyclesIntersect(u32),

    #[error("no path P_{0} exists ({0} is triangular or below 2)")]
    NoSuchPath(u64),

    #[error("proof obligation failed: {0}")]
    ProofObligation(String),

    #[error("union of {k} thrackles on {n} points has {count} edges, above the bound {bound}")]
    BoundViolated { n: u32, k: usize, count: usize, bound: u64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("graph with {0} vertices exceeds the 64-vertex bitset limit")]
    GraphTooLarge(usize),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
