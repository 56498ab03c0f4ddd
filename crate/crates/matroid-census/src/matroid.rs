//! Basis families on a labeled ground set `{0,..,n-1}` and the base exchange
//! axiom.
//!
//! A family of r-subsets is stored as a bit vector over the C(n,r) possible
//! members, indexed by colexicographic rank. A family is a matroid basis
//! family when it satisfies the exchange axiom: for all members B, B' and
//! every e in B \ B' there is an f in B' \ B with B - e + f in the family.
//! The empty family satisfies the axiom vacuously and is always admitted.

use std::fmt;
use std::sync::LazyLock;

use crate::combinatorics::{check_subset, BinomialTable};
use crate::error::{Error, Result};

/// Hard cap on C(n,r): a family's bit vector must fit in a u128.
pub const MAX_COORDINATES: usize = 128;

/// Hard cap on the ground set size: members are u64 element masks.
pub const MAX_ELEMENTS: usize = 64;

static TABLE: LazyLock<BinomialTable> = LazyLock::new(|| BinomialTable::new(64, 64));

/// C(n,k) as u64, exact for n <= 64.
#[inline]
pub(crate) fn binom64(n: usize, k: usize) -> u64 {
    TABLE.get(n, k)
}

/// Number of coordinates C(n,r) of a family on `(n, r)`, after range checks.
pub(crate) fn coordinate_count(n: usize, r: usize) -> Result<usize> {
    if n > MAX_ELEMENTS {
        return Err(Error::GroundSetTooLarge { n });
    }
    let count = binom64(n, r);
    if count > MAX_COORDINATES as u64 {
        return Err(Error::TooManyCoordinates { n, r });
    }
    Ok(count as usize)
}

/// Colex rank of the subset given as a u64 element mask.
#[inline]
pub(crate) fn mask_to_rank(mask: u64) -> usize {
    let mut rank = 0u64;
    let mut i = 0usize;
    let mut bits = mask;
    while bits != 0 {
        let s = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        i += 1;
        rank += TABLE.get(s, i);
    }
    rank as usize
}

/// Element mask of the r-subset of `{0,..,n-1}` at the given colex rank.
pub(crate) fn rank_to_mask(rank: usize, n: usize, r: usize) -> u64 {
    let mut remaining = rank as u64;
    let mut mask = 0u64;
    let mut hi = n;
    for i in (1..=r).rev() {
        // Largest s < hi with C(s,i) <= remaining.
        let mut s = i - 1;
        for cand in (i - 1..hi).rev() {
            if TABLE.get(cand, i) <= remaining {
                s = cand;
                break;
            }
        }
        remaining -= TABLE.get(s, i);
        mask |= 1u64 << s;
        hi = s;
    }
    debug_assert_eq!(remaining, 0);
    mask
}

/// Removes t_mask from a superset mask and renumbers the surviving elements
/// downward past the removed ones, preserving order.
pub(crate) fn strip_and_renumber(mask: u64, t_mask: u64) -> u64 {
    debug_assert_eq!(mask & t_mask, t_mask);
    let mut renumbered = 0u64;
    let mut rem = mask & !t_mask;
    while rem != 0 {
        let s = rem.trailing_zeros() as usize;
        rem &= rem - 1;
        let below = (t_mask & ((1u64 << s) - 1)).count_ones() as usize;
        renumbered |= 1u64 << (s - below);
    }
    renumbered
}

fn mask_to_elements(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut bits = mask;
    while bits != 0 {
        out.push(bits.trailing_zeros() as usize);
        bits &= bits - 1;
    }
    out
}

pub(crate) fn elements_to_mask(subset: &[usize]) -> u64 {
    subset.iter().fold(0u64, |m, &s| m | (1u64 << s))
}

/// A pair of members and a removed element that admit no exchange, i.e. a
/// concrete refutation of the base exchange axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeViolation {
    /// The member B the element is removed from.
    pub base: Vec<usize>,
    /// The member B' that offers the replacement candidates.
    pub other: Vec<usize>,
    /// The element e in B \ B' with no f in B' \ B making B - e + f a member.
    pub removed: usize,
}

fn write_set(f: &mut fmt::Formatter<'_>, set: &[usize]) -> fmt::Result {
    write!(f, "{{")?;
    for (i, e) in set.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{e}")?;
    }
    write!(f, "}}")
}

impl fmt::Display for ExchangeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B = ")?;
        write_set(f, &self.base)?;
        write!(f, ", B' = ")?;
        write_set(f, &self.other)?;
        write!(
            f,
            ", e = {}: no f in B' \\ B with B - e + f in the family",
            self.removed
        )
    }
}

/// A family of r-subsets of `{0,..,n-1}`, as a bit vector indexed by colex
/// rank. Bit i set means the subset of rank i is a member.
///
/// The type does not require the exchange axiom to hold, so arbitrary
/// families can be built, checked, and diagnosed; [`BasisFamily::is_base_exchange`]
/// decides membership in the matroid census.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisFamily {
    n: usize,
    r: usize,
    bits: u128,
}

impl BasisFamily {
    /// Builds a family from its bit vector, rejecting bits beyond C(n,r).
    pub fn new(n: usize, r: usize, bits: u128) -> Result<Self> {
        let coordinates = coordinate_count(n, r)?;
        if coordinates < 128 && bits >> coordinates != 0 {
            return Err(Error::BitsOutOfRange { coordinates });
        }
        Ok(BasisFamily { n, r, bits })
    }

    /// The family with no members.
    pub fn empty(n: usize, r: usize) -> Result<Self> {
        coordinate_count(n, r)?;
        Ok(BasisFamily { n, r, bits: 0 })
    }

    /// Builds a family from explicit members, each a strictly increasing
    /// r-subset of `{0,..,n-1}`. Duplicate members collapse.
    pub fn from_members(n: usize, r: usize, members: &[Vec<usize>]) -> Result<Self> {
        let mut family = BasisFamily::empty(n, r)?;
        for member in members {
            if member.len() != r {
                return Err(Error::WrongSubsetSize {
                    expected: r,
                    got: member.len(),
                });
            }
            check_subset(member, n)?;
            family.bits |= 1u128 << mask_to_rank(elements_to_mask(member));
        }
        Ok(family)
    }

    pub fn ground_set_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// The raw bit vector; bit i corresponds to colex rank i.
    pub fn bits(&self) -> u128 {
        self.bits
    }

    /// Number of coordinates C(n,r) the bit vector ranges over.
    pub fn coordinates(&self) -> usize {
        binom64(self.n, self.r) as usize
    }

    pub fn member_count(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// Whether the given r-subset is a member.
    pub fn contains(&self, subset: &[usize]) -> Result<bool> {
        if subset.len() != self.r {
            return Err(Error::WrongSubsetSize {
                expected: self.r,
                got: subset.len(),
            });
        }
        check_subset(subset, self.n)?;
        let rank = mask_to_rank(elements_to_mask(subset));
        Ok(self.bits >> rank & 1 == 1)
    }

    /// Members in ascending colex order, as element lists.
    pub fn members(&self) -> Vec<Vec<usize>> {
        self.member_masks()
            .into_iter()
            .map(mask_to_elements)
            .collect()
    }

    /// Members in ascending colex order, as u64 element masks.
    fn member_masks(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.member_count());
        let mut bits = self.bits;
        while bits != 0 {
            let rank = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out.push(rank_to_mask(rank, self.n, self.r));
        }
        out
    }

    #[inline]
    fn contains_mask(&self, mask: u64) -> bool {
        self.bits >> mask_to_rank(mask) & 1 == 1
    }

    /// Decides the base exchange axiom by direct transcription: every
    /// (B, B', e) with e in B \ B' must admit an f in B' \ B with
    /// B - e + f a member. Empty and singleton families pass vacuously.
    pub fn is_base_exchange(&self) -> bool {
        let members = self.member_masks();
        for &b in &members {
            for &bp in &members {
                let mut es = b & !bp;
                while es != 0 {
                    let e = es & es.wrapping_neg();
                    es &= es - 1;
                    let mut fs = bp & !b;
                    let mut repaired = false;
                    while fs != 0 {
                        let f = fs & fs.wrapping_neg();
                        fs &= fs - 1;
                        if self.contains_mask((b ^ e) | f) {
                            repaired = true;
                            break;
                        }
                    }
                    if !repaired {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The smallest axiom violation, or None if the axiom holds.
    ///
    /// Violations are ordered by (colex rank of B, colex rank of B', e), so
    /// the witness is deterministic.
    pub fn exchange_witness(&self) -> Option<ExchangeViolation> {
        let members = self.member_masks();
        for &b in &members {
            for &bp in &members {
                let mut es = b & !bp;
                while es != 0 {
                    let e = es & es.wrapping_neg();
                    es &= es - 1;
                    let mut fs = bp & !b;
                    let mut repaired = false;
                    while fs != 0 {
                        let f = fs & fs.wrapping_neg();
                        fs &= fs - 1;
                        if self.contains_mask((b ^ e) | f) {
                            repaired = true;
                            break;
                        }
                    }
                    if !repaired {
                        return Some(ExchangeViolation {
                            base: mask_to_elements(b),
                            other: mask_to_elements(bp),
                            removed: e.trailing_zeros() as usize,
                        });
                    }
                }
            }
        }
        None
    }

    /// Contraction by a subset T of the ground set with |T| <= r: keeps the
    /// members containing T, strips T from them, and renumbers the surviving
    /// elements of the ground set to `{0,..,n-|T|-1}` preserving order.
    pub fn contract(&self, t_set: &[usize]) -> Result<BasisFamily> {
        check_subset(t_set, self.n)?;
        let t = t_set.len();
        if t > self.r {
            return Err(Error::ContractionTooLarge { t, r: self.r });
        }
        let t_mask = elements_to_mask(t_set);
        let new_n = self.n - t;
        let new_r = self.r - t;
        let mut bits = 0u128;
        for b in self.member_masks() {
            if b & t_mask != t_mask {
                continue;
            }
            bits |= 1u128 << mask_to_rank(strip_and_renumber(b, t_mask));
        }
        // C(n-t, r-t) <= C(n,r), so the contraction always fits.
        BasisFamily::new(new_n, new_r, bits)
    }
}

/// The structure of a rank-2 basis family: loop elements (in no member) and
/// a partition of the remaining elements; members are exactly the pairs
/// meeting two distinct blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank2Decomposition {
    /// Elements in no member, ascending.
    pub loops: Vec<usize>,
    /// Partition blocks of the non-loop elements, each ascending, ordered by
    /// smallest element. Never exactly one block.
    pub blocks: Vec<Vec<usize>>,
}

/// Decomposes a rank-2 family satisfying the exchange axiom into loops and
/// partition blocks: non-loop elements e, f fall in the same block exactly
/// when {e,f} is not a member.
pub fn decompose_rank2(family: &BasisFamily) -> Result<Rank2Decomposition> {
    if family.rank() != 2 {
        return Err(Error::RankNotTwo { r: family.rank() });
    }
    if let Some(violation) = family.exchange_witness() {
        return Err(Error::AxiomViolation(violation));
    }
    let n = family.ground_set_size();
    let mut in_some_member = 0u64;
    for mask in family.member_masks() {
        in_some_member |= mask;
    }
    // r = 2 forces C(n,2) <= 128, so n <= 16 and the shift is safe.
    let loops = mask_to_elements(!in_some_member & ((1u64 << n) - 1));
    // Union non-loop pairs that are NOT members; under the axiom the
    // resulting relation is an equivalence.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    let support = mask_to_elements(in_some_member);
    for (i, &e) in support.iter().enumerate() {
        for &f in &support[i + 1..] {
            if !family.contains(&[e, f])? {
                let re = find(&mut parent, e);
                let rf = find(&mut parent, f);
                parent[re.max(rf)] = re.min(rf);
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_block = std::collections::BTreeMap::new();
    for &e in &support {
        let root = find(&mut parent, e);
        let idx = *root_block.entry(root).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[idx].push(e);
    }
    blocks.sort();
    Ok(Rank2Decomposition { loops, blocks })
}

/// Rebuilds the rank-2 family whose members are the pairs meeting two
/// distinct blocks. Loops and blocks must partition `{0,..,n-1}`.
pub fn compose_rank2(n: usize, decomposition: &Rank2Decomposition) -> Result<BasisFamily> {
    coordinate_count(n, 2)?;
    let mut seen = vec![false; n];
    let mut mark = |e: usize| -> Result<()> {
        if e >= n || seen[e] {
            return Err(Error::MalformedDecomposition { n });
        }
        seen[e] = true;
        Ok(())
    };
    for &e in &decomposition.loops {
        mark(e)?;
    }
    for block in &decomposition.blocks {
        if block.is_empty() {
            return Err(Error::MalformedDecomposition { n });
        }
        for &e in block {
            mark(e)?;
        }
    }
    if !seen.into_iter().all(|s| s) {
        return Err(Error::MalformedDecomposition { n });
    }
    let mut bits = 0u128;
    for (i, block) in decomposition.blocks.iter().enumerate() {
        for other in &decomposition.blocks[i + 1..] {
            for &e in block {
                for &f in other {
                    let pair = if e < f { [e, f] } else { [f, e] };
                    bits |= 1u128 << mask_to_rank(elements_to_mask(&pair));
                }
            }
        }
    }
    BasisFamily::new(n, 2, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(n: usize, r: usize, members: &[&[usize]]) -> BasisFamily {
        let members: Vec<Vec<usize>> = members.iter().map(|m| m.to_vec()).collect();
        BasisFamily::from_members(n, r, &members).unwrap()
    }

    #[test]
    fn mask_rank_round_trip() {
        for n in 0..=10usize {
            for r in 0..=n {
                let count = binom64(n, r) as usize;
                for rank in 0..count {
                    let mask = rank_to_mask(rank, n, r);
                    assert_eq!(mask.count_ones() as usize, r);
                    assert_eq!(mask_to_rank(mask), rank);
                }
            }
        }
    }

    #[test]
    fn construction_bounds() {
        assert!(BasisFamily::new(4, 2, 0b111111).is_ok());
        assert!(matches!(
            BasisFamily::new(4, 2, 1 << 6),
            Err(Error::BitsOutOfRange { coordinates: 6 })
        ));
        // C(11,5) = 462 > 128
        assert!(matches!(
            BasisFamily::new(11, 5, 0),
            Err(Error::TooManyCoordinates { n: 11, r: 5 })
        ));
        assert!(matches!(
            BasisFamily::new(65, 1, 0),
            Err(Error::GroundSetTooLarge { n: 65 })
        ));
        // r > n: zero coordinates, only the empty family exists.
        let f = BasisFamily::new(3, 5, 0).unwrap();
        assert_eq!(f.coordinates(), 0);
        assert!(f.is_empty());
        assert!(BasisFamily::new(3, 5, 1).is_err());
    }

    #[test]
    fn members_round_trip() {
        let f = family(4, 2, &[&[0, 3], &[1, 2]]);
        assert_eq!(f.members(), vec![vec![1, 2], vec![0, 3]]);
        assert!(f.contains(&[0, 3]).unwrap());
        assert!(!f.contains(&[0, 1]).unwrap());
        assert!(f.contains(&[0]).is_err());
        assert!(f.contains(&[0, 4]).is_err());
    }

    #[test]
    fn exchange_on_uniform_family() {
        // All r-subsets always satisfy the axiom.
        for n in 0..=6usize {
            for r in 0..=n {
                let count = binom64(n, r) as usize;
                let bits = if count == 128 { u128::MAX } else { (1u128 << count) - 1 };
                let f = BasisFamily::new(n, r, bits).unwrap();
                assert!(f.is_base_exchange(), "uniform ({n},{r})");
            }
        }
    }

    #[test]
    fn exchange_vacuous_cases() {
        assert!(BasisFamily::empty(4, 2).unwrap().is_base_exchange());
        assert!(family(4, 2, &[&[0, 3]]).is_base_exchange());
        assert!(family(4, 2, &[&[0, 3]]).exchange_witness().is_none());
    }

    #[test]
    fn exchange_violation_witness() {
        // {{0,3},{1,2}}: removing 1 from {1,2} cannot be repaired from {0,3}.
        let f = family(4, 2, &[&[0, 3], &[1, 2]]);
        assert!(!f.is_base_exchange());
        let w = f.exchange_witness().unwrap();
        assert_eq!(w.base, vec![1, 2]);
        assert_eq!(w.other, vec![0, 3]);
        assert_eq!(w.removed, 1);
        assert_eq!(
            w.to_string(),
            "B = {1, 2}, B' = {0, 3}, e = 1: no f in B' \\ B with B - e + f in the family"
        );
    }

    #[test]
    fn witness_agrees_with_checker() {
        // Exhaustive over all families on (4,2): 2^6 bit vectors.
        for bits in 0u128..64 {
            let f = BasisFamily::new(4, 2, bits).unwrap();
            assert_eq!(f.is_base_exchange(), f.exchange_witness().is_none());
        }
    }

    #[test]
    fn contract_examples() {
        // Uniform (3,2) contracted by {0}: members {1},{2} renumber to {0},{1}.
        let u32_family = family(3, 2, &[&[0, 1], &[0, 2], &[1, 2]]);
        let c = u32_family.contract(&[0]).unwrap();
        assert_eq!(c.ground_set_size(), 2);
        assert_eq!(c.rank(), 1);
        assert_eq!(c.members(), vec![vec![0], vec![1]]);

        // Contraction by the empty set is the identity.
        let id = u32_family.contract(&[]).unwrap();
        assert_eq!(id, u32_family);

        // Contraction by a full member leaves the rank-0 family {emptyset}.
        let full = u32_family.contract(&[0, 1]).unwrap();
        assert_eq!(full.ground_set_size(), 1);
        assert_eq!(full.rank(), 0);
        assert_eq!(full.bits(), 1);

        // Contraction by a set contained in no member leaves the empty family.
        let f = family(4, 2, &[&[0, 1]]);
        let none = f.contract(&[3]).unwrap();
        assert!(none.is_empty());

        assert!(u32_family.contract(&[0, 1, 2]).is_err());
        assert!(u32_family.contract(&[3]).is_err());
    }

    #[test]
    fn contract_preserves_axiom_spot() {
        let f = family(4, 2, &[&[0, 1], &[0, 2], &[1, 2], &[0, 3], &[1, 3], &[2, 3]]);
        assert!(f.is_base_exchange());
        for e in 0..4 {
            assert!(f.contract(&[e]).unwrap().is_base_exchange());
        }
    }

    #[test]
    fn decompose_rank2_examples() {
        // {{0,1},{0,2}}: 1 and 2 share a block, no loops.
        let f = family(3, 2, &[&[0, 1], &[0, 2]]);
        let d = decompose_rank2(&f).unwrap();
        assert_eq!(d.loops, Vec::<usize>::new());
        assert_eq!(d.blocks, vec![vec![0], vec![1, 2]]);
        assert_eq!(compose_rank2(3, &d).unwrap(), f);

        // Uniform (3,2): three singleton blocks.
        let u = family(3, 2, &[&[0, 1], &[0, 2], &[1, 2]]);
        let d = decompose_rank2(&u).unwrap();
        assert_eq!(d.blocks, vec![vec![0], vec![1], vec![2]]);

        // Empty family: everything is a loop.
        let e = BasisFamily::empty(3, 2).unwrap();
        let d = decompose_rank2(&e).unwrap();
        assert_eq!(d.loops, vec![0, 1, 2]);
        assert!(d.blocks.is_empty());
        assert_eq!(compose_rank2(3, &d).unwrap(), e);
    }

    #[test]
    fn decompose_rank2_rejects() {
        let f = family(3, 1, &[&[0]]);
        assert!(matches!(decompose_rank2(&f), Err(Error::RankNotTwo { r: 1 })));
        let bad = family(4, 2, &[&[0, 3], &[1, 2]]);
        assert!(matches!(
            decompose_rank2(&bad),
            Err(Error::AxiomViolation(_))
        ));
    }

    #[test]
    fn compose_rank2_validates_partition() {
        let d = Rank2Decomposition {
            loops: vec![0],
            blocks: vec![vec![1], vec![1, 2]],
        };
        assert!(compose_rank2(3, &d).is_err());
        let d = Rank2Decomposition {
            loops: vec![],
            blocks: vec![vec![0]],
        };
        assert!(compose_rank2(2, &d).is_err());
        let d = Rank2Decomposition {
            loops: vec![],
            blocks: vec![vec![]],
        };
        assert!(compose_rank2(0, &d).is_err());
    }

    #[test]
    fn compose_decompose_round_trip() {
        // All rank-2 families on 4 elements that satisfy the axiom.
        for bits in 0u128..64 {
            let f = BasisFamily::new(4, 2, bits).unwrap();
            if !f.is_base_exchange() {
                continue;
            }
            let d = decompose_rank2(&f).unwrap();
            assert_eq!(compose_rank2(4, &d).unwrap(), f, "bits {bits:#b}");
        }
    }
}
