//! Shannon entropy of census-valued random variables, contraction as
//! coordinate projection, and the covering inequality connecting them.
//!
//! A census row drawn uniformly at random is a bit-vector random variable
//! X = (x_S) indexed by the r-subsets S. For a t-subset T, the coordinates
//! {S : S contains T} of X determine exactly the contraction X/T, and each
//! coordinate S lies in C(r,t) of the C(n,t) classes A(T). The covering
//! inequality then bounds H(X) by the normalized sum of the projection
//! entropies:
//!
//!   C(r,t) * H(X)  <=  sum over T of H(X/T).
//!
//! Outcome probabilities are kept as exact counts and only converted to
//! floating point inside the entropy sum; comparisons use a pinned absolute
//! tolerance. The inequalities that admit integer exponentiation are
//! verified exactly in the bounds module instead.

use std::collections::BTreeMap;

use crate::census::Census;
use crate::combinatorics::{check_subset, colex_unrank, SubsetCode};
use crate::error::{Error, Result};
use crate::matroid::{
    binom64, coordinate_count, elements_to_mask, mask_to_rank, rank_to_mask, strip_and_renumber,
};

/// Absolute tolerance for entropy comparisons, in bits.
pub const ENTROPY_TOLERANCE: f64 = 1e-9;

/// Largest number of projection classes C(n,t) a check will enumerate.
pub const PROJECTION_LIMIT: u64 = 1 << 20;

/// A distribution over u128-keyed outcomes, stored as exact counts. The
/// probability of an outcome is its count over the total, so the weights sum
/// to 1 by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteDistribution {
    counts: BTreeMap<u128, u64>,
    total: u64,
}

impl FiniteDistribution {
    /// Builds a distribution from (outcome, count) pairs. Duplicate outcomes
    /// accumulate, zero counts are dropped, and an all-zero collection is
    /// rejected.
    pub fn from_counts(counts: impl IntoIterator<Item = (u128, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (outcome, count) in counts {
            if count > 0 {
                *map.entry(outcome).or_insert(0u64) += count;
            }
        }
        let total = map.values().sum();
        if total == 0 {
            return Err(Error::EmptyDistribution);
        }
        Ok(FiniteDistribution { counts: map, total })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn support_size(&self) -> usize {
        self.counts.len()
    }

    /// Exact outcome counts in ascending key order.
    pub fn counts(&self) -> impl Iterator<Item = (u128, u64)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k, c))
    }

    /// Outcome probabilities count/total, in ascending key order.
    pub fn probabilities(&self) -> impl Iterator<Item = (u128, f64)> + '_ {
        let total = self.total as f64;
        self.counts.iter().map(move |(&k, &c)| (k, c as f64 / total))
    }

    /// Shannon entropy in bits: log2(N) - (sum of c*log2(c)) / N over the
    /// counts c with total N. Uniform counts give exactly log2(support).
    pub fn entropy_bits(&self) -> f64 {
        let n = self.total as f64;
        let weighted: f64 = self
            .counts
            .values()
            .map(|&c| (c as f64) * (c as f64).log2())
            .sum();
        (n.log2() - weighted / n).max(0.0)
    }
}

/// The uniform distribution over the rows of a census: the random variable
/// whose entropy is log2 of the census size.
pub fn uniform_census_variable(census: &Census) -> Result<FiniteDistribution> {
    FiniteDistribution::from_counts(census.bit_vectors().iter().map(|&bits| (bits, 1)))
}

/// The distribution of the projection X/T when X is uniform over the census
/// rows: each row is restricted to the coordinates whose r-subsets contain
/// `t_set`, re-indexed to contracted colex coordinates, and equal images
/// accumulate.
///
/// The projection is table-driven over coordinates, independently of
/// [`crate::matroid::BasisFamily::contract`], so the two can cross-check
/// each other.
pub fn project_distribution(census: &Census, t_set: &[usize]) -> Result<FiniteDistribution> {
    let n = census.ground_set_size();
    let r = census.rank();
    check_subset(t_set, n)?;
    if t_set.len() > r {
        return Err(Error::ContractionTooLarge { t: t_set.len(), r });
    }
    let t_mask = elements_to_mask(t_set);
    let projected: Vec<Option<u32>> = (0..census.coordinates())
        .map(|s| {
            let mask = rank_to_mask(s, n, r);
            (mask & t_mask == t_mask)
                .then(|| mask_to_rank(strip_and_renumber(mask, t_mask)) as u32)
        })
        .collect();
    let mut counts: BTreeMap<u128, u64> = BTreeMap::new();
    for &row in census.bit_vectors() {
        let mut image = 0u128;
        let mut bits = row;
        while bits != 0 {
            let s = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if let Some(q) = projected[s] {
                image |= 1u128 << q;
            }
        }
        *counts.entry(image).or_insert(0) += 1;
    }
    FiniteDistribution::from_counts(counts)
}

/// One class A(T) of the covering family: a t-subset T together with the
/// coordinates (colex ranks of r-subsets) containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverClass {
    pub t_set: Vec<usize>,
    pub coordinates: Vec<usize>,
}

/// The covering family over the C(n,r) coordinates: one class A(T) per
/// t-subset T. Every coordinate lies in exactly C(r,t) classes, which is the
/// multiplicity the covering inequality divides by.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverFamily {
    universe_size: usize,
    multiplicity: u64,
    classes: Vec<CoverClass>,
}

impl CoverFamily {
    /// p = C(n,r), the number of covered coordinates.
    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    /// k = C(r,t), how often each coordinate is covered.
    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn classes(&self) -> &[CoverClass] {
        &self.classes
    }

    /// How many classes contain each coordinate, by direct counting.
    pub fn coordinate_multiplicities(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.universe_size];
        for class in &self.classes {
            for &s in &class.coordinates {
                out[s] += 1;
            }
        }
        out
    }

    /// Whether direct counting confirms the claimed multiplicity everywhere.
    pub fn multiplicity_verified(&self) -> bool {
        self.coordinate_multiplicities()
            .iter()
            .all(|&m| m == self.multiplicity)
    }
}

/// Builds the covering family of the (n, r) coordinates by t-subsets.
pub fn basis_cover(n: usize, r: usize, t: usize) -> Result<CoverFamily> {
    let p = coordinate_count(n, r)?;
    if t > r {
        return Err(Error::ProjectionOutOfRange { t, r });
    }
    let class_count = binom64(n, t);
    if class_count > PROJECTION_LIMIT {
        return Err(Error::TooManyProjections {
            n,
            t,
            count: class_count as u128,
            limit: PROJECTION_LIMIT as u128,
        });
    }
    let mut classes = Vec::with_capacity(class_count as usize);
    for t_rank in 0..class_count as usize {
        let t_set = colex_unrank(&SubsetCode { n, r: t, rank: t_rank })?;
        let t_mask = elements_to_mask(&t_set);
        let coordinates = (0..p)
            .filter(|&s| rank_to_mask(s, n, r) & t_mask == t_mask)
            .collect();
        classes.push(CoverClass { t_set, coordinates });
    }
    Ok(CoverFamily {
        universe_size: p,
        multiplicity: binom64(r, t),
        classes,
    })
}

/// The two sides of the covering inequality for a census and a class size t.
#[derive(Debug, Clone, PartialEq)]
pub struct ShearerCheck {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    /// H(X), the entropy of a uniformly random census row.
    pub lhs_bits: f64,
    /// The normalized sum of projection entropies: sum over T of H(X/T),
    /// divided by the multiplicity C(r,t).
    pub rhs_bits: f64,
    /// C(r,t), re-verified by direct counting before use.
    pub multiplicity: u64,
    /// C(n,t), the number of classes.
    pub class_count: u64,
    pub tolerance: f64,
    /// lhs <= rhs + tolerance.
    pub holds: bool,
}

/// Verifies the covering inequality numerically on a census: H(X) must not
/// exceed the multiplicity-normalized sum of projection entropies. The
/// multiplicity C(r,t) is re-verified on the cover by direct counting before
/// it divides anything.
pub fn shearer_check(census: &Census, t: usize) -> Result<ShearerCheck> {
    let n = census.ground_set_size();
    let r = census.rank();
    if t > r {
        return Err(Error::ProjectionOutOfRange { t, r });
    }
    let cover = basis_cover(n, r, t)?;
    assert!(
        cover.multiplicity_verified(),
        "cover multiplicity C({r},{t}) failed direct re-counting"
    );
    let multiplicity = cover.multiplicity();
    let lhs_bits = uniform_census_variable(census)?.entropy_bits();
    let mut projection_sum = 0.0f64;
    for class in cover.classes() {
        projection_sum += project_distribution(census, &class.t_set)?.entropy_bits();
    }
    let rhs_bits = projection_sum / multiplicity as f64;
    Ok(ShearerCheck {
        n,
        r,
        t,
        lhs_bits,
        rhs_bits,
        multiplicity,
        class_count: cover.classes().len() as u64,
        tolerance: ENTROPY_TOLERANCE,
        holds: lhs_bits <= rhs_bits + ENTROPY_TOLERANCE,
    })
}
