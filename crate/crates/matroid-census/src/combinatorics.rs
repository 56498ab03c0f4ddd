//! Exact combinatorial primitives: binomial coefficients, colexicographic
//! ranking and unranking of fixed-size subsets, Bell numbers, and set-partition
//! enumeration.
//!
//! The ground set is always `{0, ..., n-1}`. Subsets are represented as
//! strictly increasing element lists. All counts are arbitrary-precision.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient C(n, k), exactly. Returns 0 when k > n.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Pascal-triangle table of C(i, j) for i <= max_n, j <= max_k, in u64.
///
/// Exact for max_n <= 64 (the largest entry, C(63, 31), fits in a u64);
/// construction panics on overflow rather than wrapping.
#[derive(Debug, Clone)]
pub(crate) struct BinomialTable {
    max_k: usize,
    rows: Vec<u64>,
}

impl BinomialTable {
    pub(crate) fn new(max_n: usize, max_k: usize) -> Self {
        let mut rows = vec![0u64; (max_n + 1) * (max_k + 1)];
        for i in 0..=max_n {
            rows[i * (max_k + 1)] = 1;
            for j in 1..=max_k.min(i) {
                let above = rows[(i - 1) * (max_k + 1) + j];
                let diag = rows[(i - 1) * (max_k + 1) + j - 1];
                rows[i * (max_k + 1) + j] = above
                    .checked_add(diag)
                    .expect("binomial table overflow: ground set too large");
            }
        }
        BinomialTable { max_k, rows }
    }

    #[inline]
    pub(crate) fn get(&self, n: usize, k: usize) -> u64 {
        if k > n {
            return 0;
        }
        self.rows[n * (self.max_k + 1) + k]
    }
}

/// A subset of `{0, .., n-1}` of size `r`, identified by its colexicographic
/// rank among all r-subsets.
///
/// Colex order compares the largest differing element; the rank of
/// `s_1 < ... < s_r` is `sum C(s_i, i)`, which does not depend on `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetCode {
    pub n: usize,
    pub r: usize,
    pub rank: usize,
}

pub(crate) fn check_subset(subset: &[usize], n: usize) -> Result<()> {
    for (i, &s) in subset.iter().enumerate() {
        if s >= n {
            return Err(Error::ElementOutOfRange { element: s, n });
        }
        if i > 0 && subset[i - 1] >= s {
            return Err(Error::NotStrictlyIncreasing);
        }
    }
    Ok(())
}

/// Colexicographic rank of a strictly increasing r-subset of `{0,..,n-1}`.
pub fn colex_rank(subset: &[usize], n: usize) -> Result<SubsetCode> {
    check_subset(subset, n)?;
    let r = subset.len();
    let mut rank = BigUint::zero();
    for (i, &s) in subset.iter().enumerate() {
        rank += binomial(s, i + 1);
    }
    let rank = rank.to_usize().ok_or(Error::RankOutOfRange {
        n,
        r,
        rank: usize::MAX,
        count: usize::MAX,
    })?;
    Ok(SubsetCode { n, r, rank })
}

/// Inverse of [`colex_rank`]: the strictly increasing subset at a given rank.
pub fn colex_unrank(code: &SubsetCode) -> Result<Vec<usize>> {
    let count = binomial(code.n, code.r)
        .to_usize()
        .ok_or(Error::TooManyCoordinates {
            n: code.n,
            r: code.r,
        })?;
    if code.rank >= count {
        return Err(Error::RankOutOfRange {
            n: code.n,
            r: code.r,
            rank: code.rank,
            count,
        });
    }
    let table = BinomialTable::new(code.n.max(1) - 1 + 1, code.r);
    let mut out = vec![0usize; code.r];
    let mut remaining = code.rank as u64;
    let mut hi = code.n;
    // Greedily pick the largest element first: s_i is the largest s < hi
    // with C(s, i) <= remaining.
    for i in (1..=code.r).rev() {
        let mut s = i - 1;
        for cand in (i - 1..hi).rev() {
            if table.get(cand, i) <= remaining {
                s = cand;
                break;
            }
        }
        remaining -= table.get(s, i);
        out[i - 1] = s;
        hi = s;
    }
    debug_assert_eq!(remaining, 0);
    Ok(out)
}

/// Bell number B_n: the number of unordered partitions of an n-set.
///
/// Computed by the Bell-triangle recurrence, exactly.
pub fn bell_number(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for entry in &row {
            let sum = next.last().unwrap() + entry;
            next.push(sum);
        }
        row = next;
    }
    row[0].clone()
}

/// An unordered partition of a finite element set into non-empty blocks.
///
/// Blocks are kept sorted internally (ascending elements, blocks ordered by
/// smallest element), so equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
    universe: Vec<usize>,
}

impl SetPartition {
    /// Builds a partition, validating that the blocks are non-empty,
    /// pairwise disjoint, and cover exactly `universe`.
    pub fn new(blocks: Vec<Vec<usize>>, universe: Vec<usize>) -> Result<Self> {
        let mut universe = universe;
        universe.sort_unstable();
        universe.dedup();
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        let mut seen = Vec::new();
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::MalformedPartition);
            }
            seen.extend_from_slice(block);
        }
        let mut sorted = seen.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != seen.len() || sorted != universe {
            return Err(Error::MalformedPartition);
        }
        Ok(SetPartition { blocks, universe })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn universe(&self) -> &[usize] {
        &self.universe
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

/// Iterator over every partition of `universe`, each yielded exactly once.
///
/// Internally walks restricted growth strings: element i is assigned a block
/// index at most one above the largest index used so far. The number of
/// partitions yielded equals `bell_number(universe.len())`.
pub fn enumerate_partitions(universe: &[usize]) -> Partitions {
    let mut elements = universe.to_vec();
    elements.sort_unstable();
    elements.dedup();
    Partitions {
        elements,
        assignment: None,
        done: false,
    }
}

pub struct Partitions {
    elements: Vec<usize>,
    assignment: Option<Vec<usize>>,
    done: bool,
}

impl Partitions {
    fn materialize(&self, assignment: &[usize]) -> SetPartition {
        let block_count = assignment.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); block_count];
        for (i, &b) in assignment.iter().enumerate() {
            blocks[b].push(self.elements[i]);
        }
        SetPartition {
            blocks,
            universe: self.elements.clone(),
        }
    }
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        match &mut self.assignment {
            None => {
                let assignment = vec![0usize; self.elements.len()];
                let partition = self.materialize(&assignment);
                if self.elements.is_empty() {
                    self.done = true;
                } else {
                    self.assignment = Some(assignment);
                }
                Some(partition)
            }
            Some(assignment) => {
                // Successor in restricted-growth-string order: bump the last
                // position that can still grow, reset everything after it.
                let n = assignment.len();
                let mut i = n;
                loop {
                    if i == 0 {
                        self.done = true;
                        return None;
                    }
                    i -= 1;
                    let cap = assignment[..i].iter().copied().max().map_or(0, |m| m + 1);
                    if assignment[i] <= cap.min(n - 1) && assignment[i] < cap {
                        assignment[i] += 1;
                        assignment[i + 1..].fill(0);
                        break;
                    }
                }
                let assignment = assignment.clone();
                Some(self.materialize(&assignment))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(7, 0), BigUint::one());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(3, 5), BigUint::zero());
    }

    #[test]
    fn binomial_pascal_identity() {
        for n in 1..=64usize {
            for k in 1..=n {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "Pascal fails at ({n},{k})"
                );
            }
        }
    }

    #[test]
    fn binomial_product_identity() {
        // C(n,t) * C(n-t,r-t) = C(n,r) * C(r,t)
        for n in 0..=30usize {
            for r in 0..=n {
                for t in 0..=r {
                    assert_eq!(
                        binomial(n, t) * binomial(n - t, r - t),
                        binomial(n, r) * binomial(r, t),
                        "identity fails at ({n},{r},{t})"
                    );
                }
            }
        }
    }

    #[test]
    fn table_matches_bigint() {
        let table = BinomialTable::new(64, 32);
        for n in 0..=64usize {
            for k in 0..=32usize {
                assert_eq!(BigUint::from(table.get(n, k)), binomial(n, k));
            }
        }
    }

    #[test]
    fn colex_rank_examples() {
        assert_eq!(colex_rank(&[0, 1], 4).unwrap().rank, 0);
        assert_eq!(colex_rank(&[2, 3], 4).unwrap().rank, 5);
        // C(1,1) + C(2,2) = 2
        assert_eq!(colex_rank(&[1, 2], 4).unwrap().rank, 2);
    }

    #[test]
    fn colex_unrank_examples() {
        let code = SubsetCode { n: 4, r: 2, rank: 0 };
        assert_eq!(colex_unrank(&code).unwrap(), vec![0, 1]);
        let code = SubsetCode { n: 4, r: 2, rank: 5 };
        assert_eq!(colex_unrank(&code).unwrap(), vec![2, 3]);
        // colex order of 2-subsets of 3 is {0,1},{0,2},{1,2}
        let code = SubsetCode { n: 3, r: 2, rank: 1 };
        assert_eq!(colex_unrank(&code).unwrap(), vec![0, 2]);
    }

    #[test]
    fn colex_rejects_bad_input() {
        assert!(colex_rank(&[1, 1], 4).is_err());
        assert!(colex_rank(&[2, 1], 4).is_err());
        assert!(colex_rank(&[0, 4], 4).is_err());
        let code = SubsetCode { n: 4, r: 2, rank: 6 };
        assert!(colex_unrank(&code).is_err());
    }

    #[test]
    fn colex_bijection_exhaustive() {
        for n in 0..=12usize {
            for r in 0..=n {
                let count = binomial(n, r).to_usize().unwrap();
                let mut seen = BTreeSet::new();
                for rank in 0..count {
                    let code = SubsetCode { n, r, rank };
                    let subset = colex_unrank(&code).unwrap();
                    assert_eq!(subset.len(), r);
                    assert!(subset.windows(2).all(|w| w[0] < w[1]));
                    assert!(subset.iter().all(|&s| s < n));
                    assert_eq!(colex_rank(&subset, n).unwrap().rank, rank);
                    seen.insert(subset);
                }
                assert_eq!(seen.len(), count);
            }
        }
    }

    #[test]
    fn bell_small_values() {
        let expected: [u64; 10] = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147];
        for (n, &b) in expected.iter().enumerate() {
            assert_eq!(bell_number(n), BigUint::from(b), "B_{n}");
        }
    }

    #[test]
    fn partitions_of_empty_and_singleton() {
        let all: Vec<_> = enumerate_partitions(&[]).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].block_count(), 0);

        let all: Vec<_> = enumerate_partitions(&[0]).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].blocks(), &[vec![0]]);
    }

    #[test]
    fn partitions_of_three() {
        let all: Vec<_> = enumerate_partitions(&[0, 1, 2]).collect();
        assert_eq!(all.len(), 5);
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), 5, "each partition yielded once");
        assert!(set.contains(&SetPartition::new(vec![vec![0, 1, 2]], vec![0, 1, 2]).unwrap()));
        assert!(set
            .contains(&SetPartition::new(vec![vec![0], vec![1], vec![2]], vec![0, 1, 2]).unwrap()));
    }

    #[test]
    fn partition_count_matches_bell() {
        for n in 0..=9usize {
            let universe: Vec<usize> = (0..n).collect();
            let mut seen = BTreeSet::new();
            let mut count = 0usize;
            for p in enumerate_partitions(&universe) {
                assert_eq!(p.universe(), &universe[..]);
                seen.insert(p);
                count += 1;
            }
            assert_eq!(BigUint::from(count), bell_number(n), "count at n={n}");
            assert_eq!(seen.len(), count, "no duplicates at n={n}");
        }
    }

    #[test]
    fn partition_validation() {
        assert!(SetPartition::new(vec![vec![0], vec![0]], vec![0]).is_err());
        assert!(SetPartition::new(vec![vec![]], vec![]).is_err());
        assert!(SetPartition::new(vec![vec![0]], vec![0, 1]).is_err());
        assert!(SetPartition::new(vec![vec![0, 1]], vec![0, 1]).is_ok());
    }
}
