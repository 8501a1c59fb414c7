//! Closed-form counts of fully commutative elements, involutions and their
//! Kostant positive subsets, with brute-force and recursive cross-checks and
//! the finite-n ratio tables.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kostant::is_kostant;
use crate::perm::{enumerate_fc, Tableau};

/// Default rank cap for [`counts_by_bruteforce`].
pub const BRUTE_FORCE_CAP: usize = 8;

/// A polynomial in `x` with integer coefficients, stored without zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn one() -> Self {
        IntPoly::monomial(0, 1)
    }

    pub fn x() -> Self {
        IntPoly::monomial(1, 1)
    }

    pub fn monomial(exponent: u32, coefficient: impl Into<BigInt>) -> Self {
        IntPoly::from_pairs([(exponent, coefficient)])
    }

    pub fn from_pairs<C: Into<BigInt>>(pairs: impl IntoIterator<Item = (u32, C)>) -> Self {
        let mut p = IntPoly::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, e: u32, c: BigInt) {
        let entry = self.coeffs.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coefficient(&self, e: u32) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().map(|(&e, c)| c * x.pow(e)).sum()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &other.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let negative = c.sign() == num_bigint::Sign::Minus;
            let mag = c.magnitude();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() || e == 0 {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    /// `[[exponent, "coefficient"], ...]` in increasing exponent order.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(u32, String)> = self.coeffs.iter().map(|(&e, c)| (e, c.to_string())).collect();
        pairs.serialize(s)
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// `n choose k`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// `(2n)! / (n! (n+1)!)`.
pub fn catalan(n: usize) -> BigUint {
    factorial(2 * n) / (factorial(n) * factorial(n + 1))
}

/// `F_0 = 1`, `F_1 = x`, `F_n = x F_{n-1} + F_{n-2}`.
pub fn fibonacci_polynomial(n: usize) -> IntPoly {
    let (mut prev, mut cur) = (IntPoly::one(), IntPoly::x());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = IntPoly::x().mul(&cur).add(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Number of standard Young tableaux of a partition, by the hook length
/// formula.
pub fn hook_length_count(shape: &[usize]) -> BigUint {
    let n: usize = shape.iter().sum();
    let conjugate = |c: usize| shape.iter().filter(|&&r| r > c).count();
    let hooks: BigUint = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c, len)))
        .map(|(r, c, len)| BigUint::from(len - c + conjugate(c) - r - 1))
        .product();
    factorial(n) / hooks
}

/// The two-row specialization `n! (n-2a+1)! / (a! (n-2a)! (n-a+1)!)`.
pub fn two_row_syt_formula(n: usize, a: usize) -> BigUint {
    if 2 * a > n {
        return BigUint::zero();
    }
    factorial(n) * factorial(n - 2 * a + 1) / (factorial(a) * factorial(n - 2 * a) * factorial(n - a + 1))
}

/// All standard Young tableaux of a shape, built by placing `1, 2, ...` at
/// every admissible position.
pub fn standard_tableaux(shape: &[usize]) -> Vec<Tableau> {
    fn fill(shape: &[usize], rows: &mut Vec<Vec<u32>>, next: u32, total: u32, out: &mut Vec<Tableau>) {
        if next > total {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for r in 0..shape.len() {
            let len = rows[r].len();
            if len < shape[r] && (r == 0 || rows[r - 1].len() > len) {
                rows[r].push(next);
                fill(shape, rows, next + 1, total, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); shape.len()];
    fill(shape, &mut rows, 1, shape.iter().sum::<usize>() as u32, &mut out);
    out
}

mod decimal_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

mod fraction_string {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::fraction(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// `p/q` in lowest terms, always with a denominator.
pub fn fraction(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `(ki, mi, k, m)` for one a-value or for a whole rank.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    #[serde(with = "decimal_string")]
    pub ki: BigUint,
    #[serde(with = "decimal_string")]
    pub mi: BigUint,
    #[serde(with = "decimal_string")]
    pub k: BigUint,
    #[serde(with = "decimal_string")]
    pub m: BigUint,
}

impl Counts {
    fn add(&mut self, other: &Counts) {
        self.ki += &other.ki;
        self.mi += &other.mi;
        self.k += &other.k;
        self.m += &other.m;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub n: usize,
    pub by_a: BTreeMap<usize, Counts>,
    pub totals: Counts,
}

impl CountTable {
    fn from_rows(n: usize, by_a: BTreeMap<usize, Counts>) -> Self {
        let mut totals = Counts::default();
        for c in by_a.values() {
            totals.add(c);
        }
        CountTable { n, by_a, totals }
    }
}

fn require_rank(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::OutOfRange("rank must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `ki_n^a = C(n-a, a)`.
pub fn ki_formula(n: usize, a: usize) -> BigUint {
    if 2 * a > n {
        BigUint::zero()
    } else {
        binomial(n - a, a)
    }
}

/// `k_n^a = C(n-a, a) n! (n-2a+1)! / (a! (n-2a)! (n-a+1)!)`.
pub fn k_formula(n: usize, a: usize) -> BigUint {
    ki_formula(n, a) * two_row_syt_formula(n, a)
}

pub fn counts_by_formula(n: usize) -> Result<CountTable> {
    require_rank(n)?;
    let by_a = (0..=n / 2)
        .map(|a| {
            let mi = two_row_syt_formula(n, a);
            let counts = Counts { ki: ki_formula(n, a), k: k_formula(n, a), m: &mi * &mi, mi };
            (a, counts)
        })
        .collect();
    Ok(CountTable::from_rows(n, by_a))
}

/// Classifies every fully commutative element of `S_n` and buckets by
/// a-value. Refuses ranks above `cap`.
pub fn counts_by_bruteforce(n: usize, cap: usize) -> Result<CountTable> {
    require_rank(n)?;
    if n > cap {
        return Err(Error::OutOfRange(format!("brute-force counting is capped at n = {cap}, got {n}")));
    }
    let classified: Vec<(usize, bool, bool)> = enumerate_fc(n, false)
        .par_iter()
        .map(|w| (w.a_value().unwrap(), w.is_involution(), is_kostant(w).unwrap().positive))
        .collect();
    let mut by_a: BTreeMap<usize, Counts> = (0..=n / 2).map(|a| (a, Counts::default())).collect();
    for (a, involution, positive) in classified {
        let c = by_a.get_mut(&a).expect("a-value is at most n/2");
        c.m += 1u32;
        if positive {
            c.k += 1u32;
        }
        if involution {
            c.mi += 1u32;
            if positive {
                c.ki += 1u32;
            }
        }
    }
    Ok(CountTable::from_rows(n, by_a))
}

/// `(ki_n^a, mi_n^a)` by classifying the fully commutative involutions only.
pub fn involution_counts_by_bruteforce(n: usize) -> Result<BTreeMap<usize, (u64, u64)>> {
    require_rank(n)?;
    let mut out: BTreeMap<usize, (u64, u64)> = (0..=n / 2).map(|a| (a, (0, 0))).collect();
    for d in enumerate_fc(n, true) {
        let entry = out.get_mut(&d.a_value()?).expect("a-value is at most n/2");
        entry.1 += 1;
        if is_kostant(&d)?.positive {
            entry.0 += 1;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub n: usize,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionReport {
    pub n_max: usize,
    pub checks: Vec<IdentityCheck>,
}

impl RecursionReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

fn check<T: PartialEq + fmt::Display>(identity: &str, n: usize, lhs: T, rhs: T) -> IdentityCheck {
    IdentityCheck { identity: identity.into(), n, holds: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string() }
}

/// `mi_n` as the total of the two-row tableau counts, with `mi_0 = 1`.
fn mi_total(n: usize) -> BigUint {
    (0..=n / 2).map(|a| two_row_syt_formula(n, a)).sum()
}

/// Checks the `ki` recursion, the `mi` recursion, the closed form of `mi_n`
/// and the Fibonacci polynomial identity for every `n <= n_max`.
pub fn recursion_checks(n_max: usize) -> Result<RecursionReport> {
    if n_max < 3 {
        return Err(Error::OutOfRange(format!("n_max must be at least 3, got {n_max}")));
    }
    let mut checks = Vec::new();
    for n in 0..=n_max {
        if n >= 2 {
            for a in 0..=n / 2 + 1 {
                let rhs = ki_formula(n - 1, a) + if a == 0 { BigUint::zero() } else { ki_formula(n - 2, a - 1) };
                checks.push(check(&format!("ki[n,{a}] = ki[n-1,{a}] + ki[n-2,{}]", a as i64 - 1), n, ki_formula(n, a), rhs));
            }
        }
        if n >= 1 {
            let rhs: BigUint = mi_total(n - 1)
                + (1..=n / 2).map(|i| catalan(i - 1) * mi_total(n - 2 * i)).sum::<BigUint>();
            checks.push(check("mi[n] = mi[n-1] + sum C[i-1] mi[n-2i]", n, mi_total(n), rhs));
        }
        checks.push(check("mi[n] = C(n, n/2)", n, mi_total(n), binomial(n, n / 2)));
        let generating = IntPoly::from_pairs(
            (0..=n / 2).map(|a| ((n - 2 * a) as u32, BigInt::from(ki_formula(n, a)))),
        );
        checks.push(check("sum ki[n,a] x^(n-2a) = F_n(x)", n, generating, fibonacci_polynomial(n)));
    }
    Ok(RecursionReport { n_max, checks })
}

fn ratio(p: &BigUint, q: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(p.clone()), BigInt::from(q.clone()))
}

/// `k_n / m_n` from the summand
/// `(n+1) C(n-a,a)^2 C(n,a) / (C(n-a+1,a) C(2n,n))`.
pub fn k_over_m_summand_formula(n: usize) -> BigRational {
    (0..=n / 2)
        .map(|a| {
            let num = BigUint::from(n + 1) * binomial(n - a, a).pow(2) * binomial(n, a);
            let den = binomial(n - a + 1, a) * binomial(2 * n, n);
            ratio(&num, &den)
        })
        .sum()
}

/// `(n-a+1)(n-a)...(n-2a+2) / (n(n-1)...(n-a+1))`.
pub fn fixed_a_ratio_product(n: usize, a: usize) -> BigRational {
    let num: BigUint = (0..a).map(|t| BigUint::from(n - a + 1 - t)).product();
    let den: BigUint = (0..a).map(|t| BigUint::from(n - t)).product();
    ratio(&num, &den)
}

/// The fixed-a values tabulated by [`ratio_report`].
pub const TRACKED_A: [usize; 3] = [1, 2, 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioRow {
    pub n: usize,
    #[serde(with = "fraction_string")]
    pub ki_over_mi: BigRational,
    #[serde(with = "fraction_string")]
    pub k_over_m: BigRational,
    /// `ki_n^a / mi_n^a` for tracked `a <= n/2`, as reduced fractions.
    pub per_a: BTreeMap<usize, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrendFlags {
    /// Smallest `n0` with `ki_n/mi_n` strictly decreasing on `[n0, n_max]`.
    pub ki_over_mi_decreasing_from: usize,
    /// Same for `k_n/m_n`.
    pub k_over_m_decreasing_from: usize,
    /// First `n` with `ki_n/mi_n < 1/10`.
    pub ki_over_mi_below_tenth_at: Option<usize>,
    /// Per tracked `a`: smallest `n0` with the ratio nondecreasing on `[n0, n_max]`.
    pub per_a_nondecreasing_from: BTreeMap<usize, usize>,
    /// Per tracked `a`: first `n` with ratio `> 9/10`.
    pub per_a_above_nine_tenths_at: BTreeMap<usize, Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioReport {
    pub n_max: usize,
    pub rows: Vec<RatioRow>,
    pub flags: TrendFlags,
}

/// Smallest start of a suffix of `(n, value)` on which `holds(prev, next)`
/// for all consecutive entries.
fn trend_start(values: &[(usize, BigRational)], holds: impl Fn(&BigRational, &BigRational) -> bool) -> usize {
    let mut start = values.last().map_or(0, |v| v.0);
    for w in values.windows(2).rev() {
        if !holds(&w[0].1, &w[1].1) {
            break;
        }
        start = w[0].0;
    }
    start
}

/// Exact ratio table for `1 <= n <= n_max` with trend flags.
pub fn ratio_report(n_max: usize) -> Result<RatioReport> {
    if n_max < 2 {
        return Err(Error::OutOfRange(format!("n_max must be at least 2, got {n_max}")));
    }
    let tenth = BigRational::new(1.into(), 10.into());
    let nine_tenths = BigRational::new(9.into(), 10.into());
    let mut rows = Vec::new();
    let mut totals = Vec::new();
    let mut km = Vec::new();
    let mut per_a: BTreeMap<usize, Vec<(usize, BigRational)>> = TRACKED_A.iter().map(|&a| (a, Vec::new())).collect();
    for n in 1..=n_max {
        let table = counts_by_formula(n)?;
        let ki_over_mi = ratio(&table.totals.ki, &table.totals.mi);
        let k_over_m = k_over_m_summand_formula(n);
        let mut row_a = BTreeMap::new();
        for &a in &TRACKED_A {
            if let Some(c) = table.by_a.get(&a) {
                let r = ratio(&c.ki, &c.mi);
                row_a.insert(a, fraction(&r));
                per_a.get_mut(&a).unwrap().push((n, r));
            }
        }
        totals.push((n, ki_over_mi.clone()));
        km.push((n, k_over_m.clone()));
        rows.push(RatioRow { n, ki_over_mi, k_over_m, per_a: row_a });
    }
    let flags = TrendFlags {
        ki_over_mi_decreasing_from: trend_start(&totals, |a, b| b < a),
        k_over_m_decreasing_from: trend_start(&km, |a, b| b < a),
        ki_over_mi_below_tenth_at: totals.iter().find(|(_, r)| r < &tenth).map(|(n, _)| *n),
        per_a_nondecreasing_from: per_a.iter().map(|(&a, v)| (a, trend_start(v, |x, y| y >= x))).collect(),
        per_a_above_nine_tenths_at: per_a
            .iter()
            .map(|(&a, v)| (a, v.iter().find(|(_, r)| r > &nine_tenths).map(|(n, _)| *n)))
            .collect(),
    };
    Ok(RatioReport { n_max, rows, flags })
}

/// Decimal approximation for display.
pub fn decimal(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// CSV with columns `n,a,ki,mi,k,m,ki_over_mi,ki_over_mi_decimal`. The row
/// with `a` empty carries the totals.
pub fn write_counts_csv<W: Write>(out: W, tables: &[CountTable]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "a", "ki", "mi", "k", "m", "ki_over_mi", "ki_over_mi_decimal"])?;
    for t in tables {
        let rows = t.by_a.iter().map(|(a, c)| (a.to_string(), c)).chain([(String::new(), &t.totals)]);
        for (a, c) in rows {
            let r = ratio(&c.ki, &c.mi);
            w.write_record([
                t.n.to_string(),
                a,
                c.ki.to_string(),
                c.mi.to_string(),
                c.k.to_string(),
                c.m.to_string(),
                fraction(&r),
                format!("{:.6}", decimal(&r)),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// CSV with columns `n,ki_over_mi,ki_over_mi_decimal,k_over_m,k_over_m_decimal`
/// followed by one `a<k>` column per tracked a-value.
pub fn write_ratios_csv<W: Write>(out: W, report: &RatioReport) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> =
        ["n", "ki_over_mi", "ki_over_mi_decimal", "k_over_m", "k_over_m_decimal"].map(String::from).to_vec();
    header.extend(TRACKED_A.iter().map(|a| format!("a{a}")));
    w.write_record(&header)?;
    for row in &report.rows {
        let mut record = vec![
            row.n.to_string(),
            fraction(&row.ki_over_mi),
            format!("{:.6}", decimal(&row.ki_over_mi)),
            fraction(&row.k_over_m),
            format!("{:.6}", decimal(&row.k_over_m)),
        ];
        record.extend(TRACKED_A.iter().map(|a| row.per_a.get(a).cloned().unwrap_or_default()));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn catalan_numbers() {
        let expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430];
        for (n, &c) in expected.iter().enumerate() {
            assert_eq!(catalan(n), big(c));
        }
        assert_eq!(catalan(10), big(16796));
    }

    #[test]
    fn fibonacci_polynomials() {
        assert_eq!(fibonacci_polynomial(0), IntPoly::one());
        assert_eq!(fibonacci_polynomial(1), IntPoly::x());
        assert_eq!(fibonacci_polynomial(2).to_string(), "x^2 + 1");
        assert_eq!(fibonacci_polynomial(4).to_string(), "x^4 + 3x^2 + 1");
        assert_eq!(fibonacci_polynomial(4).evaluate(&BigInt::one()), BigInt::from(5));
        let fib: Vec<i64> = (0..=10).map(|n| fibonacci_polynomial(n).evaluate(&BigInt::one()).try_into().unwrap()).collect();
        assert_eq!(fib, [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]);
        assert_eq!(serde_json::to_string(&fibonacci_polynomial(2)).unwrap(), r#"[[0,"1"],[2,"1"]]"#);
    }

    #[test]
    fn hook_formula() {
        assert_eq!(hook_length_count(&[4, 1]), big(4));
        assert_eq!(hook_length_count(&[3, 2]), big(5));
        assert_eq!(hook_length_count(&[3, 2, 1]), big(16));
        assert_eq!(standard_tableaux(&[3, 2, 1]).len(), 16);
        for n in 1..=8 {
            for a in 0..=n / 2 {
                let shape = [n - a, a];
                let shape = if a == 0 { &shape[..1] } else { &shape[..] };
                let tableaux = standard_tableaux(shape);
                assert!(tableaux.iter().all(Tableau::is_standard));
                assert_eq!(big(tableaux.len() as u64), two_row_syt_formula(n, a));
                assert_eq!(hook_length_count(shape), two_row_syt_formula(n, a));
            }
        }
    }

    #[test]
    fn formula_tables() {
        let t = counts_by_formula(4).unwrap();
        assert_eq!(
            (t.totals.ki.clone(), t.totals.mi.clone(), t.totals.k.clone(), t.totals.m.clone()),
            (big(5), big(6), big(12), big(14))
        );
        let t5 = counts_by_formula(5).unwrap();
        assert_eq!((t5.by_a[&1].ki.clone(), t5.by_a[&1].mi.clone()), (big(4), big(4)));
        assert_eq!(t5.by_a[&2].mi, big(5));
        assert_eq!((t5.totals.k.clone(), t5.totals.m.clone()), (big(32), big(42)));
        let t6 = counts_by_formula(6).unwrap();
        assert_eq!((t6.totals.ki.clone(), t6.totals.mi.clone(), t6.totals.k.clone()), (big(13), big(20), big(85)));
        let t1 = counts_by_formula(1).unwrap();
        assert_eq!(t1.totals, Counts { ki: big(1), mi: big(1), k: big(1), m: big(1) });
        assert!(counts_by_formula(0).is_err());
        assert_eq!(ki_formula(5, 3), BigUint::zero());
    }

    #[test]
    fn brute_force_matches_formula() {
        for n in 1..=6 {
            assert_eq!(counts_by_bruteforce(n, BRUTE_FORCE_CAP).unwrap(), counts_by_formula(n).unwrap(), "n = {n}");
        }
        assert!(counts_by_bruteforce(9, BRUTE_FORCE_CAP).is_err());
        let inv = involution_counts_by_bruteforce(6).unwrap();
        assert_eq!(inv.values().map(|c| c.0).sum::<u64>(), 13);
    }

    #[test]
    fn recursions() {
        let r = recursion_checks(12).unwrap();
        assert!(r.all_hold(), "{:?}", r.violations().collect::<Vec<_>>());
        assert!(recursion_checks(2).is_err());
        let mi6 = mi_total(5) + catalan(0) * mi_total(4) + catalan(1) * mi_total(2) + catalan(2) * mi_total(0);
        assert_eq!(mi6, big(20));
    }

    #[test]
    fn ratios() {
        let r = ratio_report(40).unwrap();
        assert_eq!(fraction(&r.rows[3].ki_over_mi), "5/6");
        for row in &r.rows {
            if row.n >= 2 {
                assert_eq!(row.per_a[&1], "1/1");
            }
            let t = counts_by_formula(row.n).unwrap();
            assert_eq!(row.k_over_m, ratio(&t.totals.k, &t.totals.m));
            for (&a, c) in &t.by_a {
                if a >= 1 {
                    assert_eq!(ratio(&c.ki, &c.mi), fixed_a_ratio_product(row.n, a));
                }
            }
        }
        assert_eq!(r.flags.ki_over_mi_below_tenth_at, Some(18));
        assert!(r.flags.ki_over_mi_decreasing_from <= 4);
        assert!(r.flags.k_over_m_decreasing_from <= 3);
        assert!(decimal(&k_over_m_summand_formula(30)) < 0.01);
    }

    #[test]
    fn csv_output() {
        let mut buf = Vec::new();
        write_counts_csv(&mut buf, &[counts_by_formula(4).unwrap()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,a,ki,mi,k,m,ki_over_mi,ki_over_mi_decimal");
        assert_eq!(lines[2], "4,1,3,3,9,9,1/1,1.000000");
        assert_eq!(lines[4], "4,,5,6,12,14,5/6,0.833333");
    }

    #[test]
    fn json_round_trip() {
        let t = counts_by_formula(7).unwrap();
        let text = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<CountTable>(&text).unwrap(), t);
        let r = ratio_report(6).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<RatioReport>(&text).unwrap(), r);
    }
}
