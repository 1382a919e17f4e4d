use thiserror::Error;

use crate::cartan::RootVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("Cartan data p={p}, q={q} rejected: need p >= 1, q >= 1 and pq >= 4")]
    InvalidCartan { p: i64, q: i64 },
    #[error("closed form for a_n needs pq > 4 (pq = {pq})")]
    DegenerateClosedForm { pq: i64 },
    #[error("root {0} lies on neither orbit of a simple root")]
    NotOnOrbit(RootVector),
    #[error("unknown orbit case {0} (expected 1..=4)")]
    UnknownCase(u8),
    #[error("index n must be >= 1 (got {0})")]
    InvalidIndex(usize),
    #[error("m must be >= 1 (got {0})")]
    InvalidMultiplicity(u32),
    #[error("case {case}, n = {n}: no letter to the left of the centre, change of variable undefined")]
    NoLeftOfCenter { case: u8, n: usize },
    #[error("grade ({k1},{k2}) exceeds grade cap {cap}")]
    GradeCapExceeded { k1: u32, k2: u32, cap: u32 },
    #[error("grade mismatch: expected ({0},{1}), found ({2},{3})")]
    GradeMismatch(u32, u32, u32, u32),
    #[error("sl2-like target needs p >= 2 and q >= 2 (p={p}, q={q})")]
    TargetUnavailable { p: i64, q: i64 },
    #[error("block {block} of the case {case} product has negative length {count}")]
    NegativeFactorCount { case: u8, block: usize, count: i64 },
    #[error("trailing exponent {exponent} of the case {case} product is negative")]
    NegativeTrailing { case: u8, exponent: i64 },
    #[error("both elements are zero")]
    BothZero,
    #[error("orbit coordinates overflow i64 at n = {0}")]
    Overflow(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
