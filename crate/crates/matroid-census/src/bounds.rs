//! Exact big-integer verification of the counting inequalities.
//!
//! Every bound that the entropy argument proves in the exponent is checked
//! here in exponentiated integer form, so each report row is a concrete
//! inequality between two computed integers with no rounding anywhere:
//!
//! * minor bound: (m(n,r) + 1)^C(n-t,r-t) <= (m(n-t,r-t) + 1)^C(n,r),
//! * rank-2 closed forms: m(n,2) + 1 <= B(n+1) <= (n+1)^(n+1),
//! * the chained bound: m(n,r)^(n+2) <= (n+1)^(2 C(n+2,r)) for r >= 2,
//! * the half-rank lower bound: 2^C(n,floor(n/2)) <= m(n)^n for n >= 1,
//! * totals: m(n) = sum over r, m(n) <= (n+1) max over r, and the total
//!   form of the chained bound.
//!
//! All m values come from a [`CountTable`], i.e. from exhaustive
//! enumeration, so a failing row would falsify either the enumeration or
//! the bound — nothing here assumes what it is checking.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::census::{count_all, CountTable};
use crate::combinatorics::{bell_number, binomial};
use crate::error::{Error, Result};

/// How a row's two sides are asserted to relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// lhs <= rhs.
    Le,
    /// lhs = rhs.
    Eq,
}

/// One verified inequality: two exactly computed integers and the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    /// Which bound family the row instantiates: `lemma2`, `lemma4-bell`,
    /// `lemma4-power`, `theorem`, `knuth`, `final-sum`, `final-max`,
    /// or `final-chain`.
    pub name: &'static str,
    pub n: usize,
    pub r: Option<usize>,
    pub t: Option<usize>,
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub relation: Relation,
    /// Whether lhs relates to rhs as claimed; recomputable from the fields.
    pub holds: bool,
    /// Reading notes, e.g. `floor` on odd-n half-rank rows.
    pub interpretation: Option<&'static str>,
}

impl BoundRow {
    // one parameter per published field
    #[allow(clippy::too_many_arguments)]
    fn new(
        name: &'static str,
        n: usize,
        r: Option<usize>,
        t: Option<usize>,
        lhs: BigUint,
        rhs: BigUint,
        relation: Relation,
        interpretation: Option<&'static str>,
    ) -> Self {
        let holds = match relation {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
        };
        BoundRow {
            name,
            n,
            r,
            t,
            lhs,
            rhs,
            relation,
            holds,
            interpretation,
        }
    }

    /// rhs - lhs; negative exactly when a `<=` row fails.
    pub fn slack(&self) -> BigInt {
        BigInt::from(self.rhs.clone()) - BigInt::from(self.lhs.clone())
    }

    pub fn is_equality(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Exponents here are at most C(max_n + 2, ..) with max_n capped by the
/// enumeration budget, so this never fires at reachable scales.
fn exponent(value: BigUint) -> u32 {
    value
        .to_u32()
        .expect("bound exponents stay far below u32 at enumerable scales")
}

fn binom(n: usize, k: usize) -> BigUint {
    binomial(n, k)
}

/// The minor bound for an admissible triple t <= r <= n:
///
///   (m(n,r) + 1)^C(n-t,r-t)  <=  (m(n-t,r-t) + 1)^C(n,r).
///
/// Equality holds at (3,2,1): both sides are 64.
pub fn verify_lemma2(table: &CountTable, n: usize, r: usize, t: usize) -> Result<BoundRow> {
    if t > r {
        return Err(Error::ContractionTooLarge { t, r });
    }
    let big = table.rank_count(n, r)? + BigUint::one();
    let minor = table.rank_count(n - t, r - t)? + BigUint::one();
    let lhs = big.pow(exponent(binom(n - t, r - t)));
    let rhs = minor.pow(exponent(binom(n, r)));
    Ok(BoundRow::new(
        "lemma2",
        n,
        Some(r),
        Some(t),
        lhs,
        rhs,
        Relation::Le,
        None,
    ))
}

/// The rank-2 closed forms: m(n,2) + 1 is at most the Bell number B(n+1),
/// which in turn is at most (n+1)^(n+1). Two rows, Bell first.
pub fn verify_lemma4(table: &CountTable, n: usize) -> Result<Vec<BoundRow>> {
    let count = table.rank_count(n, 2)? + BigUint::one();
    let bell = bell_number(n + 1);
    let power = BigUint::from(n + 1).pow(exponent(BigUint::from(n + 1)));
    Ok(vec![
        BoundRow::new(
            "lemma4-bell",
            n,
            Some(2),
            None,
            count.clone(),
            bell,
            Relation::Le,
            None,
        ),
        BoundRow::new("lemma4-power", n, Some(2), None, count, power, Relation::Le, None),
    ])
}

/// The chained bound in integer form for r >= 2 and m(n,r) >= 1:
///
///   m(n,r)^(n+2)  <=  (n+1)^(2 C(n+2,r)).
pub fn verify_theorem_bound(table: &CountTable, n: usize, r: usize) -> Result<BoundRow> {
    let m = table.rank_count(n, r)?;
    if r < 2 || m.is_zero() {
        return Err(Error::BoundOutOfDomain { n, r, m: m.to_string() });
    }
    let lhs = m.pow(exponent(BigUint::from(n + 2)));
    let rhs = BigUint::from(n + 1).pow(exponent(BigUint::from(2u32) * binom(n + 2, r)));
    Ok(BoundRow::new(
        "theorem",
        n,
        Some(r),
        None,
        lhs,
        rhs,
        Relation::Le,
        None,
    ))
}

/// The half-rank lower bound on the total count, for n >= 1:
///
///   2^C(n, floor(n/2))  <=  m(n)^n.
///
/// Odd n rounds the middle rank down; those rows carry the `floor`
/// interpretation note. n = 0 is outside the statement's domain.
pub fn verify_knuth_lower(table: &CountTable, n: usize) -> Result<BoundRow> {
    if n == 0 {
        return Err(Error::LowerBoundUndefined);
    }
    let lhs = BigUint::from(2u32).pow(exponent(binom(n, n / 2)));
    let rhs = table.total(n)?.pow(exponent(BigUint::from(n)));
    let interpretation = (n % 2 == 1).then_some("floor");
    Ok(BoundRow::new(
        "knuth",
        n,
        None,
        None,
        lhs,
        rhs,
        Relation::Le,
        interpretation,
    ))
}

/// The total-count rows for one n: the total is the sum over ranks
/// (an equality row), at most (n+1) times the largest per-rank count, and
/// the chained bound in total form,
///
///   m(n)^(n+2)  <=  (n+1)^((n+2) + 2 C(n+2, floor((n+2)/2))).
pub fn verify_final_count(table: &CountTable, n: usize) -> Result<Vec<BoundRow>> {
    let total = table.total(n)?;
    let mut sum = BigUint::zero();
    for r in 0..=n {
        sum += table.rank_count(n, r)?;
    }
    let (_, max) = table.max_rank_count(n)?;
    let chain_exponent =
        BigUint::from(n + 2) + BigUint::from(2u32) * binom(n + 2, (n + 2) / 2);
    let chain_rhs = BigUint::from(n + 1).pow(exponent(chain_exponent));
    Ok(vec![
        BoundRow::new(
            "final-sum",
            n,
            None,
            None,
            total.clone(),
            sum,
            Relation::Eq,
            None,
        ),
        BoundRow::new(
            "final-max",
            n,
            None,
            None,
            total.clone(),
            BigUint::from(n + 1) * max,
            Relation::Le,
            None,
        ),
        BoundRow::new(
            "final-chain",
            n,
            None,
            None,
            total.pow(exponent(BigUint::from(n + 2))),
            chain_rhs,
            Relation::Le,
            None,
        ),
    ])
}

/// Every bound row the table supports, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    max_n: usize,
    rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn rows(&self) -> &[BoundRow] {
        &self.rows
    }

    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|row| row.holds)
    }

    pub fn failing(&self) -> impl Iterator<Item = &BoundRow> {
        self.rows.iter().filter(|row| !row.holds)
    }
}

/// Instantiates every bound over an existing table, grouped by bound and
/// ascending in (n, r, t) within each group:
///
/// * `lemma2` for all t <= r <= n <= max_n,
/// * `lemma4-bell` and `lemma4-power` for all n <= max_n,
/// * `theorem` for all 2 <= r <= n <= max_n,
/// * `knuth` for 1 <= n <= max_n,
/// * the three `final-*` rows for all n <= max_n.
pub fn full_report_from(table: &CountTable) -> Result<BoundReport> {
    let max_n = table.max_n();
    let mut rows = Vec::new();
    for n in 0..=max_n {
        for r in 0..=n {
            for t in 0..=r {
                rows.push(verify_lemma2(table, n, r, t)?);
            }
        }
    }
    for n in 0..=max_n {
        rows.extend(verify_lemma4(table, n)?);
    }
    for n in 2..=max_n {
        for r in 2..=n {
            rows.push(verify_theorem_bound(table, n, r)?);
        }
    }
    for n in 1..=max_n {
        rows.push(verify_knuth_lower(table, n)?);
    }
    for n in 0..=max_n {
        rows.extend(verify_final_count(table, n)?);
    }
    Ok(BoundReport { max_n, rows })
}

/// Enumerates all censuses up to max_n and verifies every bound on them.
pub fn full_report(max_n: usize) -> Result<BoundReport> {
    full_report_from(&count_all(max_n)?)
}

/// One descriptive row comparing the asymptotic shape against an enumerated
/// total: the measured log2 log2 m(n) next to n - (3/2) log2 n + log2 log2 n.
/// No verdict is attached — at enumerable n these numbers say nothing about
/// the limit, and pretending otherwise would be dishonest.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticRow {
    pub n: usize,
    pub total: BigUint,
    /// log2 log2 m(n), measured.
    pub log_log_total: f64,
    /// n - (3/2) log2 n + log2 log2 n, the asymptotic shape.
    pub shape: f64,
}

/// The descriptive comparison for 2 <= n <= max_n. Rows start at n = 2
/// because log2 log2 n diverges below that.
pub fn asymptotic_report(table: &CountTable) -> Result<Vec<AsymptoticRow>> {
    let mut rows = Vec::new();
    for n in 2..=table.max_n() {
        let total = table.total(n)?;
        let m = total.to_f64().expect("desk-scale totals fit in f64");
        let nf = n as f64;
        rows.push(AsymptoticRow {
            n,
            total,
            log_log_total: m.log2().log2(),
            shape: nf - 1.5 * nf.log2() + nf.log2().log2(),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::count_all_with_workers;
    use std::sync::LazyLock;

    static TABLE: LazyLock<CountTable> =
        LazyLock::new(|| count_all_with_workers(4, 2).expect("n <= 4 enumerates in millis"));

    fn big(v: u128) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn lemma2_equality_at_3_2_1() {
        let row = verify_lemma2(&TABLE, 3, 2, 1).unwrap();
        assert_eq!(row.lhs, big(64));
        assert_eq!(row.rhs, big(64));
        assert!(row.holds);
        assert!(row.is_equality());
        assert_eq!(row.slack(), BigInt::from(0));
    }

    #[test]
    fn lemma2_strict_at_4_2_1() {
        // 37^3 = 50653 against 8^6 = 262144.
        let row = verify_lemma2(&TABLE, 4, 2, 1).unwrap();
        assert_eq!(row.lhs, big(50653));
        assert_eq!(row.rhs, big(262144));
        assert!(row.holds);
        assert_eq!(row.slack(), BigInt::from(262144 - 50653));
    }

    #[test]
    fn lemma2_degenerate_t() {
        // t = 0 compares a quantity with itself.
        let row = verify_lemma2(&TABLE, 4, 2, 0).unwrap();
        assert!(row.is_equality());
        // t = r reduces to m + 1 <= 2^C(n,r).
        let row = verify_lemma2(&TABLE, 4, 2, 2).unwrap();
        assert_eq!(row.lhs, big(37));
        assert_eq!(row.rhs, big(64));
        assert!(verify_lemma2(&TABLE, 4, 2, 3).is_err());
        assert!(verify_lemma2(&TABLE, 5, 2, 1).is_err());
    }

    #[test]
    fn lemma4_rows() {
        let rows = verify_lemma4(&TABLE, 3).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].name, "lemma4-bell");
        assert_eq!((rows[0].lhs.clone(), rows[0].rhs.clone()), (big(8), big(15)));
        assert_eq!(rows[1].name, "lemma4-power");
        assert_eq!((rows[1].lhs.clone(), rows[1].rhs.clone()), (big(8), big(256)));
        assert!(rows.iter().all(|row| row.holds));

        let rows = verify_lemma4(&TABLE, 4).unwrap();
        assert_eq!((rows[0].lhs.clone(), rows[0].rhs.clone()), (big(37), big(52)));
        assert_eq!(rows[1].rhs, big(3125));
    }

    #[test]
    fn theorem_examples() {
        // 7^5 = 16807 against 4^20.
        let row = verify_theorem_bound(&TABLE, 3, 2).unwrap();
        assert_eq!(row.lhs, big(16807));
        assert_eq!(row.rhs, big(4u128).pow(20));
        assert!(row.holds);
        // 36^6 against 5^30.
        let row = verify_theorem_bound(&TABLE, 4, 2).unwrap();
        assert_eq!(row.lhs, big(36u128).pow(6));
        assert_eq!(row.rhs, big(5u128).pow(30));
        assert!(row.holds);
    }

    #[test]
    fn theorem_domain() {
        assert!(matches!(
            verify_theorem_bound(&TABLE, 3, 1),
            Err(Error::BoundOutOfDomain { n: 3, r: 1, .. })
        ));
        // r > n has m = 0.
        assert!(matches!(
            verify_theorem_bound(&TABLE, 2, 3),
            Err(Error::BoundOutOfDomain { .. })
        ));
    }

    #[test]
    fn knuth_rows() {
        // Even n reads literally: 2^C(4,2) = 64 against 68^4.
        let row = verify_knuth_lower(&TABLE, 4).unwrap();
        assert_eq!(row.lhs, big(64));
        assert_eq!(row.rhs, big(68u128).pow(4));
        assert!(row.holds);
        assert_eq!(row.interpretation, None);
        // Odd n takes the floor of n/2 and says so.
        let row = verify_knuth_lower(&TABLE, 3).unwrap();
        assert_eq!(row.lhs, big(8));
        assert_eq!(row.rhs, big(16u128).pow(3));
        assert_eq!(row.interpretation, Some("floor"));
        // Equality at n = 1: 2^1 = 2 = m(1)^1.
        let row = verify_knuth_lower(&TABLE, 1).unwrap();
        assert!(row.is_equality());
        assert!(matches!(
            verify_knuth_lower(&TABLE, 0),
            Err(Error::LowerBoundUndefined)
        ));
    }

    #[test]
    fn final_rows_at_4() {
        let rows = verify_final_count(&TABLE, 4).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].name, "final-sum");
        assert_eq!(rows[0].relation, Relation::Eq);
        assert_eq!((rows[0].lhs.clone(), rows[0].rhs.clone()), (big(68), big(68)));
        assert_eq!(rows[1].name, "final-max");
        assert_eq!((rows[1].lhs.clone(), rows[1].rhs.clone()), (big(68), big(180)));
        assert_eq!(rows[2].name, "final-chain");
        assert_eq!(rows[2].lhs, big(68u128).pow(6));
        // exponent 6 + 2 C(6,3) = 46
        assert_eq!(rows[2].rhs, big(5u128).pow(46));
        assert!(rows.iter().all(|row| row.holds));
    }

    #[test]
    fn full_report_row_counts() {
        // (N+1)(N+2)(N+3)/6 + 2(N+1) + N(N-1)/2 + N + 3(N+1)
        let report = full_report_from(&TABLE).unwrap();
        assert_eq!(report.max_n(), 4);
        assert_eq!(report.rows().len(), 70);
        assert!(report.all_hold());
        assert_eq!(report.failing().count(), 0);

        let table2 = count_all_with_workers(2, 1).unwrap();
        let report2 = full_report_from(&table2).unwrap();
        assert_eq!(report2.rows().len(), 28);
        assert!(report2.all_hold());
    }

    #[test]
    fn full_report_group_order() {
        let report = full_report_from(&TABLE).unwrap();
        let names: Vec<&str> = report.rows().iter().map(|row| row.name).collect();
        // lemma2 block first, then lemma4 pairs, theorem, knuth, final triples.
        assert_eq!(names[0], "lemma2");
        assert_eq!(names[34], "lemma2");
        assert_eq!(names[35], "lemma4-bell");
        assert_eq!(names[36], "lemma4-power");
        assert_eq!(names[45], "theorem");
        let knuth: Vec<usize> = report
            .rows()
            .iter()
            .filter(|row| row.name == "knuth")
            .map(|row| row.n)
            .collect();
        assert_eq!(knuth, vec![1, 2, 3, 4]);
        assert_eq!(names[67..70], ["final-sum", "final-max", "final-chain"]);
    }

    #[test]
    fn asymptotic_rows_are_descriptive() {
        let rows = asymptotic_report(&TABLE).unwrap();
        assert_eq!(rows.len(), 3); // n = 2, 3, 4
        assert_eq!(rows[0].n, 2);
        assert_eq!(rows[0].total, big(5));
        // log2 log2 5 and 2 - 1.5 log2 2 + log2 log2 2 = 0.5 + 0 = 0.5
        assert!((rows[0].log_log_total - (5f64).log2().log2()).abs() < 1e-12);
        assert!((rows[0].shape - 0.5).abs() < 1e-12);
        // Finite numbers, nothing more is claimed.
        assert!(rows.iter().all(|row| row.log_log_total.is_finite() && row.shape.is_finite()));
    }
}
