use thiserror::Error;

use crate::conjugacy::ConjugacySet;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("strand count must be at least 2, got {0}")]
    StrandCount(usize),
    #[error("generator index {index} out of range 1..={max}")]
    GeneratorRange { index: i64, max: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("cannot parse braid word: {0}")]
    WordSyntax(String),
    #[error("the identity braid has no starting or finishing set")]
    IdentityHasNoDescents,
    #[error("operation requires canonical length >= 1")]
    TrivialCanonicalLength,
    #[error("braid is not rigid")]
    NotRigid,
    #[error("{0} is not a super summit element")]
    NotSuperSummit(&'static str),
    #[error("transport result is not simple")]
    TransportNotSimple,
    #[error("enumeration exceeded the cap of {cap} members")]
    MemberCapExceeded {
        cap: usize,
        /// Everything collected before the cap was hit.
        partial: Box<ConjugacySet>,
    },
    #[error("cyclic sliding did not recur within {0} steps")]
    SlidingCapExceeded(usize),
    #[error("family parameter k must be at least 2, got {0}")]
    FamilyParameter(usize),
    #[error("bit sequence must have length {expected} with entries in {{1, 2}}")]
    MalformedBits { expected: usize },
    #[error("no essential round curve encloses punctures {p}..{q} on {n} strands")]
    InvalidCurve { n: usize, p: usize, q: usize },
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
