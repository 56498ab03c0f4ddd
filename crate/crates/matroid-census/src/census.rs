//! Complete censuses of basis families and the counts derived from them.
//!
//! A census for `(n, r)` lists every family of r-subsets of `{0,..,n-1}`
//! satisfying the base exchange axiom, as ascending bit vectors. The empty
//! family always qualifies, so a census has m + 1 rows where m counts the
//! non-empty families.
//!
//! Two independent enumeration routes exist: [`enumerate_naive`] scans all
//! 2^C(n,r) bit vectors against the direct axiom checker, and
//! [`crate::dfs::enumerate_dfs`] prunes a decision tree. They share no logic,
//! so agreement between them is meaningful evidence of correctness.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::dfs::enumerate_dfs_with_workers;
use crate::error::{Error, Result};
use crate::matroid::{binom64, coordinate_count, BasisFamily};

/// Largest C(n,r) the naive 2^C(n,r) scan will attempt.
pub const NAIVE_CUTOFF: usize = 24;

/// Largest ground set `count_all` will enumerate.
pub const COUNT_BUDGET_MAX_N: usize = 7;

/// How a census was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Exhaustive scan of all bit vectors against the axiom checker.
    Naive,
    /// Pruned depth-first search over coordinate decisions.
    Dfs,
    /// Loaded from a census file.
    File,
}

/// All basis families on `(n, r)` satisfying the exchange axiom, as strictly
/// ascending bit vectors. Row 0 is the empty family.
#[derive(Debug, Clone)]
pub struct Census {
    n: usize,
    r: usize,
    method: Method,
    bits: Vec<u128>,
}

/// Censuses compare by content only: a census written to a file and loaded
/// back equals the original even though its method becomes [`Method::File`].
impl PartialEq for Census {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.bits == other.bits
    }
}

impl Eq for Census {}

impl Census {
    pub(crate) fn from_sorted_bits(n: usize, r: usize, method: Method, bits: Vec<u128>) -> Self {
        debug_assert!(bits.windows(2).all(|w| w[0] < w[1]));
        Census { n, r, method, bits }
    }

    pub fn ground_set_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Number of coordinates C(n,r) of each row's bit vector.
    pub fn coordinates(&self) -> usize {
        binom64(self.n, self.r) as usize
    }

    /// Number of rows, counting the empty family.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of non-empty families, i.e. the count m the bounds are about.
    pub fn matroid_count(&self) -> usize {
        self.bits.len().saturating_sub(1)
    }

    /// The raw rows, strictly ascending.
    pub fn bit_vectors(&self) -> &[u128] {
        &self.bits
    }

    /// The i-th family in ascending bit-vector order.
    pub fn family(&self, i: usize) -> BasisFamily {
        BasisFamily::new(self.n, self.r, self.bits[i]).expect("census rows are validated")
    }

    pub fn families(&self) -> impl Iterator<Item = BasisFamily> + '_ {
        self.bits
            .iter()
            .map(|&bits| BasisFamily::new(self.n, self.r, bits).expect("census rows are validated"))
    }

    /// Whether the given bit vector is a row, by binary search.
    pub fn contains_bits(&self, bits: u128) -> bool {
        self.bits.binary_search(&bits).is_ok()
    }
}

/// Enumerates the census by scanning every one of the 2^C(n,r) bit vectors
/// against [`BasisFamily::is_base_exchange`]. Refuses when C(n,r) exceeds
/// [`NAIVE_CUTOFF`]; use the pruned search beyond that.
pub fn enumerate_naive(n: usize, r: usize) -> Result<Census> {
    let coordinates = coordinate_count(n, r)?;
    if coordinates > NAIVE_CUTOFF {
        return Err(Error::NaiveInfeasible {
            n,
            r,
            count: coordinates,
            cutoff: NAIVE_CUTOFF,
        });
    }
    let mut rows = Vec::new();
    for bits in 0..1u128 << coordinates {
        let family = BasisFamily::new(n, r, bits)?;
        if family.is_base_exchange() {
            rows.push(bits);
        }
    }
    Ok(Census::from_sorted_bits(n, r, Method::Naive, rows))
}

/// The counts m(n,r) for all 0 <= r <= n <= max_n, plus the per-n totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    max_n: usize,
    // counts[n][r] = m(n,r) for r <= n
    counts: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// m(n,r): the number of non-empty basis families on (n, r). Zero when
    /// r > n, since no r-subsets exist.
    pub fn rank_count(&self, n: usize, r: usize) -> Result<BigUint> {
        if n > self.max_n {
            return Err(Error::MissingCount { n, r });
        }
        if r > n {
            return Ok(BigUint::zero());
        }
        Ok(self.counts[n][r].clone())
    }

    /// m(n): the total over all ranks 0..=n.
    pub fn total(&self, n: usize) -> Result<BigUint> {
        if n > self.max_n {
            return Err(Error::MissingCount { n, r: 0 });
        }
        Ok(self.counts[n].iter().sum())
    }

    /// The rank maximizing m(n,r) (smallest such rank) and the maximum.
    pub fn max_rank_count(&self, n: usize) -> Result<(usize, BigUint)> {
        if n > self.max_n {
            return Err(Error::MissingCount { n, r: 0 });
        }
        let (r, m) = self.counts[n]
            .iter()
            .enumerate()
            .max_by(|(ri, mi), (rj, mj)| mi.cmp(mj).then(rj.cmp(ri)))
            .expect("rank 0 always present");
        Ok((r, m.clone()))
    }
}

/// Enumerates every (n, r) with r <= n <= max_n by pruned search and tabulates
/// m(n,r). Refuses max_n beyond [`COUNT_BUDGET_MAX_N`]: the census at n = 8
/// is far outside desk scale.
pub fn count_all(max_n: usize) -> Result<CountTable> {
    let workers = std::thread::available_parallelism().map_or(1, |w| w.get());
    count_all_with_workers(max_n, workers)
}

/// [`count_all`] with an explicit worker count. The resulting table is
/// identical for every worker count.
pub fn count_all_with_workers(max_n: usize, workers: usize) -> Result<CountTable> {
    if max_n > COUNT_BUDGET_MAX_N {
        return Err(Error::BudgetExceeded {
            max_n,
            budget: COUNT_BUDGET_MAX_N,
        });
    }
    let mut counts = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let mut row = Vec::with_capacity(n + 1);
        for r in 0..=n {
            let census = enumerate_dfs_with_workers(n, r, workers)?;
            row.push(BigUint::from(census.matroid_count()));
        }
        counts.push(row);
    }
    Ok(CountTable { max_n, counts })
}

fn row_width(coordinates: usize) -> usize {
    coordinates.div_ceil(4)
}

/// Writes a census in the line-oriented interchange format: a header
/// `matroid-census v1 n=<n> r=<r> order=colex count=<k>` followed by one
/// lowercase-hex row per family, zero-padded to ceil(C(n,r)/4) digits,
/// strictly ascending.
pub fn write_census_to<W: Write>(w: &mut W, census: &Census) -> Result<()> {
    let width = row_width(census.coordinates());
    writeln!(
        w,
        "matroid-census v1 n={} r={} order=colex count={}",
        census.n,
        census.r,
        census.len()
    )?;
    for &bits in &census.bits {
        if width == 0 {
            // C(n,r) = 0 (r > n): rows carry zero digits.
            writeln!(w)?;
        } else {
            writeln!(w, "{bits:0width$x}")?;
        }
    }
    Ok(())
}

/// Writes a census file; see [`write_census_to`] for the format.
pub fn write_census(path: impl AsRef<Path>, census: &Census) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_census_to(&mut w, census)?;
    w.flush()?;
    Ok(())
}

fn header_field<'a>(token: Option<&'a str>, key: &str, line: usize) -> Result<&'a str> {
    let token = token.ok_or_else(|| Error::CensusFormat {
        line,
        message: format!("missing header field {key}="),
    })?;
    token.strip_prefix(key).and_then(|t| t.strip_prefix('=')).ok_or_else(|| {
        Error::CensusFormat {
            line,
            message: format!("expected {key}=<value>, found {token:?}"),
        }
    })
}

fn parse_usize(value: &str, what: &str, line: usize) -> Result<usize> {
    value.parse().map_err(|_| Error::CensusFormat {
        line,
        message: format!("invalid {what}: {value:?}"),
    })
}

/// Parses the interchange format, enforcing syntax only: header shape, row
/// width, lowercase hex, in-range bits, strictly ascending rows, row count.
/// Does not check the exchange axiom; [`read_census`] does.
pub fn parse_census_from<R: BufRead>(reader: R) -> Result<Census> {
    let mut lines = reader.lines();
    let header = lines.next().transpose()?.ok_or(Error::CensusFormat {
        line: 1,
        message: "empty file".into(),
    })?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("matroid-census") {
        return Err(Error::CensusFormat {
            line: 1,
            message: "expected header starting with: matroid-census".into(),
        });
    }
    match tokens.next() {
        Some("v1") => {}
        other => {
            return Err(Error::CensusFormat {
                line: 1,
                message: format!("unsupported version {other:?}, expected v1"),
            })
        }
    }
    let n = parse_usize(header_field(tokens.next(), "n", 1)?, "n", 1)?;
    let r = parse_usize(header_field(tokens.next(), "r", 1)?, "r", 1)?;
    let order = header_field(tokens.next(), "order", 1)?;
    if order != "colex" {
        return Err(Error::CensusFormat {
            line: 1,
            message: format!("unsupported order {order:?}, expected colex"),
        });
    }
    let count = parse_usize(header_field(tokens.next(), "count", 1)?, "count", 1)?;
    if let Some(extra) = tokens.next() {
        return Err(Error::CensusFormat {
            line: 1,
            message: format!("unexpected trailing header token {extra:?}"),
        });
    }

    let coordinates = coordinate_count(n, r)?;
    let width = row_width(coordinates);
    let mut rows: Vec<u128> = Vec::with_capacity(count);
    for i in 0..count {
        let line_no = i + 2;
        let row = lines.next().transpose()?.ok_or_else(|| Error::CensusFormat {
            line: line_no,
            message: format!("file ends after {i} of {count} rows"),
        })?;
        if row.len() != width {
            return Err(Error::CensusFormat {
                line: line_no,
                message: format!("row has {} digits, expected {width}", row.len()),
            });
        }
        if !row.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b)) {
            return Err(Error::CensusFormat {
                line: line_no,
                message: format!("row is not lowercase hex: {row:?}"),
            });
        }
        let bits = if width == 0 {
            0
        } else {
            u128::from_str_radix(&row, 16).map_err(|e| Error::CensusFormat {
                line: line_no,
                message: format!("unparseable row: {e}"),
            })?
        };
        if coordinates < 128 && bits >> coordinates != 0 {
            return Err(Error::CensusFormat {
                line: line_no,
                message: format!("bits beyond the {coordinates} coordinates of ({n},{r})"),
            });
        }
        if let Some(&prev) = rows.last() {
            if bits <= prev {
                return Err(Error::CensusFormat {
                    line: line_no,
                    message: "rows must be strictly ascending".into(),
                });
            }
        }
        rows.push(bits);
    }
    if let Some(extra) = lines.next().transpose()? {
        return Err(Error::CensusFormat {
            line: count + 2,
            message: format!("unexpected content after {count} rows: {extra:?}"),
        });
    }
    Ok(Census::from_sorted_bits(n, r, Method::File, rows))
}

/// Parses a census file without checking the axiom; see [`parse_census_from`].
pub fn parse_census(path: impl AsRef<Path>) -> Result<Census> {
    parse_census_from(BufReader::new(File::open(path)?))
}

/// Loads and fully validates a census file: syntax, the empty family as row
/// 0, and the exchange axiom on every row. The first offending row is
/// reported with its line number and an exchange witness.
pub fn read_census(path: impl AsRef<Path>) -> Result<Census> {
    let census = parse_census(path)?;
    match census.bit_vectors().first() {
        Some(0) => {}
        _ => {
            return Err(Error::CensusFormat {
                line: 2,
                message: "census must begin with the empty family (all-zero row)".into(),
            })
        }
    }
    for (i, family) in census.families().enumerate() {
        if let Some(witness) = family.exchange_witness() {
            return Err(Error::CensusFormat {
                line: i + 2,
                message: format!("row violates the base exchange axiom: {witness}"),
            });
        }
    }
    Ok(census)
}
