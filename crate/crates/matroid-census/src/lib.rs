//! Exhaustive enumeration of matroids on small labeled ground sets, and
//! exact verification of the counting bounds their censuses satisfy.
//!
//! A matroid on `{0,..,n-1}` of rank r is identified with its set of bases:
//! a non-empty family of r-subsets satisfying the base exchange axiom. Each
//! family is a bit vector over the C(n,r) r-subsets in colexicographic
//! order, so a census of all of them is a sorted list of integers and two
//! censuses can be compared byte for byte.
//!
//! The crate deliberately keeps two independent routes to every important
//! quantity:
//!
//! * censuses come from both a naive scan of all 2^C(n,r) bit vectors
//!   ([`enumerate_naive`]) and a pruned depth-first search
//!   ([`enumerate_dfs`]), which share no code;
//! * rank-2 counts come from both enumeration and the loop/parallel-class
//!   correspondence with set partitions ([`decompose_rank2`],
//!   [`enumerate_partitions`]);
//! * the covering inequality is checked numerically on census entropy
//!   ([`shearer_check`]) while the bounds it implies are checked in exact
//!   integer arithmetic ([`full_report`]).
//!
//! Agreement between routes is the correctness argument, not any single
//! implementation.

mod bounds;
mod census;
mod combinatorics;
mod dfs;
mod entropy;
mod error;
mod matroid;

pub use bounds::{
    asymptotic_report, full_report, full_report_from, verify_final_count, verify_knuth_lower,
    verify_lemma2, verify_lemma4, verify_theorem_bound, AsymptoticRow, BoundReport, BoundRow,
    Relation,
};
pub use census::{
    count_all, count_all_with_workers, enumerate_naive, parse_census, parse_census_from,
    read_census, write_census, write_census_to, Census, CountTable, Method, COUNT_BUDGET_MAX_N,
    NAIVE_CUTOFF,
};
pub use combinatorics::{
    bell_number, binomial, colex_rank, colex_unrank, enumerate_partitions, Partitions,
    SetPartition, SubsetCode,
};
pub use dfs::{enumerate_dfs, enumerate_dfs_with_workers};
pub use entropy::{
    basis_cover, project_distribution, shearer_check, uniform_census_variable, CoverClass,
    CoverFamily, FiniteDistribution, ShearerCheck, ENTROPY_TOLERANCE, PROJECTION_LIMIT,
};
pub use error::{Error, Result};
pub use matroid::{
    compose_rank2, decompose_rank2, BasisFamily, ExchangeViolation, Rank2Decomposition,
    MAX_COORDINATES, MAX_ELEMENTS,
};
