//! Pruned depth-first enumeration of the census.
//!
//! Coordinates (colex ranks of r-subsets) are decided in ascending order,
//! include or exclude. Every ordered pair of potential members (B, B') with
//! |B \ B'| >= 2 contributes one clause per e in B \ B': if B and B' are both
//! included, some B - e + f with f in B' \ B must be included. Pairs with
//! |B \ B'| <= 1 need no clause, since the only exchange candidate is B'
//! itself. A branch is abandoned the moment a clause has both members
//! included and all candidates decided out; such a violation cannot be
//! repaired by later decisions, so the surviving leaves are exactly the
//! families satisfying the base exchange axiom.
//!
//! Because decisions follow ascending rank, a clause can first become dead at
//! exactly two moments: when its larger member is included after the last
//! candidate was already excluded, or when its largest candidate is excluded
//! while both members are in. The search therefore keeps, per coordinate,
//! the clauses to re-examine at each of those moments, plus a per-clause
//! count of included candidates that is bumped and unbumped symmetrically as
//! the search walks the tree.

use rayon::prelude::*;

use crate::census::{Census, Method};
use crate::error::Result;
use crate::matroid::{coordinate_count, mask_to_rank, rank_to_mask};

/// All exchange clauses for (n, r), bucketed by the coordinates whose
/// decisions can affect them.
struct ExchangeTable {
    /// Smaller member rank per clause.
    lo: Vec<u32>,
    /// Larger member rank per clause; including it activates the clause.
    hi: Vec<u32>,
    /// Largest candidate rank per clause; excluding it decides the clause.
    max_candidate: Vec<u32>,
    /// Per coordinate: clauses having it among their candidates.
    watch: Vec<Vec<u32>>,
    /// Per coordinate: clauses with hi equal to it.
    activation: Vec<Vec<u32>>,
    /// Per coordinate: clauses with max_candidate equal to it.
    death: Vec<Vec<u32>>,
}

impl ExchangeTable {
    fn new(n: usize, r: usize, coordinates: usize) -> Self {
        let p = coordinates;
        let mut table = ExchangeTable {
            lo: Vec::new(),
            hi: Vec::new(),
            max_candidate: Vec::new(),
            watch: vec![Vec::new(); p],
            activation: vec![Vec::new(); p],
            death: vec![Vec::new(); p],
        };
        let masks: Vec<u64> = (0..p).map(|rank| rank_to_mask(rank, n, r)).collect();
        for b in 0..p {
            for bp in 0..p {
                if b == bp {
                    continue;
                }
                let removable = masks[b] & !masks[bp];
                if removable.count_ones() <= 1 {
                    // The single exchange B - e + f equals B' itself, so the
                    // clause holds whenever it is active.
                    continue;
                }
                let mut es = removable;
                while es != 0 {
                    let e = es & es.wrapping_neg();
                    es &= es - 1;
                    let id = table.lo.len() as u32;
                    let mut max_candidate = 0;
                    let mut fs = masks[bp] & !masks[b];
                    while fs != 0 {
                        let f = fs & fs.wrapping_neg();
                        fs &= fs - 1;
                        let candidate = mask_to_rank((masks[b] ^ e) | f) as u32;
                        table.watch[candidate as usize].push(id);
                        max_candidate = max_candidate.max(candidate);
                    }
                    table.lo.push(b.min(bp) as u32);
                    table.hi.push(b.max(bp) as u32);
                    table.max_candidate.push(max_candidate);
                    table.activation[b.max(bp)].push(id);
                    table.death[max_candidate as usize].push(id);
                }
            }
        }
        table
    }

    fn clause_count(&self) -> usize {
        self.lo.len()
    }
}

struct Search<'a> {
    table: &'a ExchangeTable,
    /// Included candidates per clause; maintained symmetrically on
    /// include/retract, so backtracking needs no trail.
    satisfied: Vec<u32>,
    out: Vec<u128>,
}

impl<'a> Search<'a> {
    fn new(table: &'a ExchangeTable) -> Self {
        Search {
            table,
            satisfied: vec![0; table.clause_count()],
            out: Vec::new(),
        }
    }

    /// May coordinate x be excluded? Excluding it decides every clause whose
    /// largest candidate is x; an active one with no included candidate dies.
    fn exclude_allowed(&self, x: usize, included: u128) -> bool {
        self.table.death[x].iter().all(|&c| {
            let c = c as usize;
            self.satisfied[c] != 0
                || included >> self.table.lo[c] & 1 == 0
                || included >> self.table.hi[c] & 1 == 0
        })
    }

    /// May coordinate x be included? `included` already contains x. A clause
    /// activated by x is dead at birth if all its candidates are already
    /// decided (max_candidate < x) and none made it in.
    fn include_allowed(&self, x: usize, included: u128) -> bool {
        self.table.activation[x].iter().all(|&c| {
            let c = c as usize;
            self.satisfied[c] != 0
                || self.table.max_candidate[c] as usize > x
                || included >> self.table.lo[c] & 1 == 0
        })
    }

    fn bump(&mut self, x: usize) {
        for &c in &self.table.watch[x] {
            self.satisfied[c as usize] += 1;
        }
    }

    fn unbump(&mut self, x: usize) {
        for &c in &self.table.watch[x] {
            self.satisfied[c as usize] -= 1;
        }
    }

    /// Explores decisions for coordinates depth..limit and records every
    /// surviving prefix of length `limit`.
    fn run(&mut self, depth: usize, included: u128, limit: usize) {
        if depth == limit {
            self.out.push(included);
            return;
        }
        if self.exclude_allowed(depth, included) {
            self.run(depth + 1, included, limit);
        }
        self.bump(depth);
        let with = included | 1u128 << depth;
        if self.include_allowed(depth, with) {
            self.run(depth + 1, with, limit);
        }
        self.unbump(depth);
    }

    /// Re-applies the candidate counts of an alive prefix of length `limit`.
    fn replay(&mut self, prefix: u128, limit: usize) {
        for x in 0..limit {
            if prefix >> x & 1 == 1 {
                self.bump(x);
            }
        }
    }
}

/// Enumerates the census by pruned depth-first search, sequentially.
pub fn enumerate_dfs(n: usize, r: usize) -> Result<Census> {
    enumerate_dfs_with_workers(n, r, 1)
}

/// Enumerates the census by pruned depth-first search on the given number of
/// worker threads. The result is identical for every worker count: the tree
/// is split at a shallow depth into alive prefixes, each subtree is searched
/// independently, and the collected rows are sorted.
pub fn enumerate_dfs_with_workers(n: usize, r: usize, workers: usize) -> Result<Census> {
    let coordinates = coordinate_count(n, r)?;
    let table = ExchangeTable::new(n, r, coordinates);
    let mut rows = if workers <= 1 {
        let mut search = Search::new(&table);
        search.run(0, 0, coordinates);
        search.out
    } else {
        let mut split = 0;
        while split < coordinates && split < 16 && (1usize << split) < 8 * workers {
            split += 1;
        }
        let mut prefix_search = Search::new(&table);
        prefix_search.run(0, 0, split);
        let prefixes = prefix_search.out;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to build worker pool");
        let chunks: Vec<Vec<u128>> = pool.install(|| {
            prefixes
                .par_iter()
                .map(|&prefix| {
                    let mut search = Search::new(&table);
                    search.replay(prefix, split);
                    search.run(split, prefix, coordinates);
                    search.out
                })
                .collect()
        });
        chunks.into_iter().flatten().collect()
    };
    rows.sort_unstable();
    Ok(Census::from_sorted_bits(n, r, Method::Dfs, rows))
}
