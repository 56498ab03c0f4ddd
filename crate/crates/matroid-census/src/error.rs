use crate::matroid::ExchangeViolation;

/// Errors produced by construction, enumeration, and file I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("element {element} out of range for ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("subset must be strictly increasing (no duplicates, ascending order)")]
    NotStrictlyIncreasing,

    #[error("rank {rank} out of range: C({n},{r}) = {count}")]
    RankOutOfRange {
        n: usize,
        r: usize,
        rank: usize,
        count: usize,
    },

    #[error("subset has {got} elements, expected {expected}")]
    WrongSubsetSize { expected: usize, got: usize },

    #[error("ground set size {n} exceeds the supported maximum of 64")]
    GroundSetTooLarge { n: usize },

    #[error("C({n},{r}) exceeds the {max} coordinates a basis family can hold", max = crate::matroid::MAX_COORDINATES)]
    TooManyCoordinates { n: usize, r: usize },

    #[error("bit vector has bits set beyond coordinate {coordinates}")]
    BitsOutOfRange { coordinates: usize },

    #[error("contraction set has {t} elements but the family has rank {r}")]
    ContractionTooLarge { t: usize, r: usize },

    #[error("operation requires rank 2, family has rank {r}")]
    RankNotTwo { r: usize },

    #[error("family violates the base exchange axiom: {0}")]
    AxiomViolation(ExchangeViolation),

    #[error("blocks and loops do not partition the ground set of size {n}")]
    MalformedDecomposition { n: usize },

    #[error("blocks must be disjoint, non-empty, and cover the universe")]
    MalformedPartition,

    #[error("naive enumeration refused: C({n},{r}) = {count} coordinates exceeds the cutoff of {cutoff}")]
    NaiveInfeasible {
        n: usize,
        r: usize,
        count: usize,
        cutoff: usize,
    },

    #[error("counting budget exceeded: max_n = {max_n} is above the supported {budget}")]
    BudgetExceeded { max_n: usize, budget: usize },

    #[error("missing count for (n={n}, r={r})")]
    MissingCount { n: usize, r: usize },

    #[error("distribution is empty")]
    EmptyDistribution,

    #[error("contraction size {t} out of range for rank {r}")]
    ProjectionOutOfRange { t: usize, r: usize },

    #[error("C({n},{t}) = {count} contraction classes exceed the limit of {limit}")]
    TooManyProjections {
        n: usize,
        t: usize,
        count: u128,
        limit: u128,
    },

    #[error("the entropy-chain bound requires r >= 2 and m >= 1, got r = {r}, m(n={n},r) = {m}")]
    BoundOutOfDomain { n: usize, r: usize, m: String },

    #[error("the half-rank lower bound is undefined at n = 0")]
    LowerBoundUndefined,

    #[error("line {line}: {message}")]
    CensusFormat { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
