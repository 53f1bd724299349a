//! Boros-Moll coefficient rows `d_0(m), ..., d_m(m)`.
//!
//! Three independent constructions are provided: the single binomial sum,
//! the double sum expanded in powers of `a`, and the first-order recurrence
//! in `m`. The recurrence is what sweeps use; the two sums serve as oracles.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{binom, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("rows are not consecutive: expected m = {expected}, found m = {found}")]
    NonConsecutive { expected: u64, found: u64 },
    #[error("index i = {i} out of range for m = {m}")]
    IndexOutOfRange { m: u64, i: i64 },
    #[error("engine mismatch at m = {m}, i = {i}")]
    EngineMismatch { m: u64, i: usize },
    #[error("2^(2m)·d_{i}({m}) is not an integer")]
    NonIntegral { m: u64, i: usize },
}

/// Coefficients of `P_m(a)`; out-of-range indices read as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BorosMollRow {
    m: u64,
    d: Vec<Rational>,
    zero: Rational,
}

impl BorosMollRow {
    pub fn new(m: u64, d: Vec<Rational>) -> Self {
        assert_eq!(d.len() as u64, m + 1, "row for m must have m+1 entries");
        BorosMollRow {
            m,
            d,
            zero: Rational::zero(),
        }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn values(&self) -> &[Rational] {
        &self.d
    }

    /// `d_i(m)`, zero for `i < 0` or `i > m`.
    pub fn get(&self, i: i64) -> &Rational {
        if i < 0 || i as u64 > self.m {
            &self.zero
        } else {
            &self.d[i as usize]
        }
    }

    /// Replaces one entry; used for fault injection.
    pub fn with_entry(&self, i: usize, value: Rational) -> Self {
        let mut d = self.d.clone();
        d[i] = value;
        BorosMollRow::new(self.m, d)
    }

    /// The integers `2^(2m)·d_i(m)`.
    pub fn scaled(&self) -> Result<Vec<BigInt>, CoeffError> {
        let scale = Rational::from_integer(BigInt::one() << (2 * self.m as usize));
        self.d
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let s = v * &scale;
                if s.is_integer() {
                    Ok(s.to_integer())
                } else {
                    Err(CoeffError::NonIntegral { m: self.m, i })
                }
            })
            .collect()
    }

    /// `{"m": .., "den_pow2": 2m, "scaled": [..]}` with exact integers.
    pub fn export_json(&self) -> Result<String, CoeffError> {
        let scaled = self.scaled()?;
        let body: Vec<String> = scaled.iter().map(|v| v.to_string()).collect();
        Ok(format!(
            "{{\"m\":{},\"den_pow2\":{},\"scaled\":[{}]}}",
            self.m,
            2 * self.m,
            body.join(",")
        ))
    }

    pub fn is_positive(&self) -> bool {
        self.d.iter().all(|v| v.is_positive())
    }

    /// Strictly increasing up to `⌊m/2⌋`, strictly decreasing after it.
    pub fn is_unimodal_at_middle(&self) -> bool {
        let peak = (self.m / 2) as usize;
        self.d[..=peak].windows(2).all(|w| w[0] < w[1])
            && self.d[peak..].windows(2).all(|w| w[0] > w[1])
    }
}

/// `d_i(m) = 2^(-2m) Σ_{k=i}^{m} 2^k C(2m-2k, m-k) C(m+k, k) C(k, i)`.
pub fn row_single_sum(m: u64) -> BorosMollRow {
    let mi = m as i64;
    let weights: Vec<BigInt> = (0..=mi)
        .map(|k| (BigInt::one() << k as usize) * binom(2 * (m - k as u64), mi - k) * binom(m + k as u64, k))
        .collect();
    let den = BigInt::one() << (2 * m as usize);
    let d = (0..=mi)
        .map(|i| {
            let num: BigInt = (i..=mi)
                .map(|k| &weights[k as usize] * binom(k as u64, i))
                .sum();
            Rational::new(num, den.clone())
        })
        .collect();
    BorosMollRow::new(m, d)
}

fn binomial_expansion(n: u64, sign: i64) -> Vec<BigInt> {
    // coefficients of (a + sign)^n, ascending in a
    (0..=n as i64)
        .map(|t| {
            let c = binom(n, t);
            if sign < 0 && (n as i64 - t) % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (x, av) in a.iter().enumerate() {
        if av.is_zero() {
            continue;
        }
        for (y, bv) in b.iter().enumerate() {
            out[x + y] += av * bv;
        }
    }
    out
}

/// Expands `Σ_{j,k} C(2m+1,2j) C(m-j,k) C(2k+2j,k+j) (a+1)^j (a-1)^k / 2^(3(k+j))`
/// into its coefficient vector in `a`.
pub fn row_double_sum(m: u64) -> BorosMollRow {
    let plus: Vec<Vec<BigInt>> = (0..=m).map(|j| binomial_expansion(j, 1)).collect();
    let minus: Vec<Vec<BigInt>> = (0..=m).map(|k| binomial_expansion(k, -1)).collect();
    // accumulate with common denominator 2^(3m)
    let mut acc = vec![BigInt::zero(); m as usize + 1];
    for j in 0..=m {
        for k in 0..=(m - j) {
            let w = binom(2 * m + 1, 2 * j as i64)
                * binom(m - j, k as i64)
                * binom(2 * (k + j), (k + j) as i64)
                * (BigInt::one() << (3 * (m - k - j) as usize));
            for (t, c) in convolve(&plus[j as usize], &minus[k as usize]).into_iter().enumerate() {
                acc[t] += &w * c;
            }
        }
    }
    let den = BigInt::one() << (3 * m as usize);
    let d = acc.into_iter().map(|v| Rational::new(v, den.clone())).collect();
    BorosMollRow::new(m, d)
}

/// One step of `d_i(m+1) = (m+i)/(m+1)·d_{i-1}(m) + (4m+2i+3)/(2(m+1))·d_i(m)`.
pub fn row_next(row: &BorosMollRow) -> BorosMollRow {
    let m = row.m as i64;
    let d = (0..=m + 1)
        .map(|i| {
            let a = Rational::new(BigInt::from(m + i), BigInt::from(m + 1));
            let b = Rational::new(BigInt::from(4 * m + 2 * i + 3), BigInt::from(2 * (m + 1)));
            a * row.get(i - 1) + b * row.get(i)
        })
        .collect();
    BorosMollRow::new(row.m + 1, d)
}

/// Rows `0..=m_max` by iterating [`row_next`].
pub fn rows_by_recurrence(m_max: u64) -> Vec<BorosMollRow> {
    let mut rows = Vec::with_capacity(m_max as usize + 1);
    let mut cur = BorosMollRow::new(0, vec![Rational::one()]);
    for _ in 0..m_max {
        let next = row_next(&cur);
        rows.push(cur);
        cur = next;
    }
    rows.push(cur);
    rows
}

/// Residuals of the three recurrences not used to build rows. All entries
/// are zero for genuine Boros-Moll rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceResiduals {
    pub m: u64,
    /// `d_i(m+1)` from `d_i(m)` and `d_{i+1}(m)`, for `0 <= i <= m`.
    pub diagonal: Vec<Rational>,
    /// `d_i(m+2)` from `d_i(m+1)` and `d_i(m)`, for `0 <= i <= m+1`.
    pub two_step: Vec<Rational>,
    /// Three-term relation in `i` on each of the rows `m, m+1, m+2`,
    /// each for `0 <= i <= row_m + 1`.
    pub in_row: [Vec<Rational>; 3],
}

impl RecurrenceResiduals {
    /// `(recurrence, row m, i)` for every nonzero residual.
    pub fn nonzero(&self) -> Vec<(&'static str, u64, i64)> {
        let mut out = Vec::new();
        let mut scan = |name: &'static str, m: u64, v: &[Rational]| {
            for (i, r) in v.iter().enumerate() {
                if !r.is_zero() {
                    out.push((name, m, i as i64));
                }
            }
        };
        scan("diagonal", self.m, &self.diagonal);
        scan("two_step", self.m, &self.two_step);
        for (k, v) in self.in_row.iter().enumerate() {
            scan("in_row", self.m + k as u64, v);
        }
        out
    }

    pub fn all_zero(&self) -> bool {
        self.nonzero().is_empty()
    }
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn in_row_residuals(row: &BorosMollRow) -> Vec<Rational> {
    let m = row.m as i64;
    (0..=m + 1)
        .map(|i| {
            int((m + 2 - i) * (m + i - 1)) * row.get(i - 2) - int((i - 1) * (2 * m + 1)) * row.get(i - 1)
                + int(i * (i - 1)) * row.get(i)
        })
        .collect()
}

pub fn check_recurrences(
    r0: &BorosMollRow,
    r1: &BorosMollRow,
    r2: &BorosMollRow,
) -> Result<RecurrenceResiduals, CoeffError> {
    for (expected, row) in [(r0.m + 1, r1), (r0.m + 2, r2)] {
        if row.m != expected {
            return Err(CoeffError::NonConsecutive {
                expected,
                found: row.m,
            });
        }
    }
    let m = r0.m as i64;
    let diagonal = (0..=m)
        .map(|i| {
            let a = q((4 * m - 2 * i + 3) * (m + i + 1), 2 * (m + 1) * (m + 1 - i));
            let b = q(i * (i + 1), (m + 1) * (m + 1 - i));
            r1.get(i) - (a * r0.get(i) - b * r0.get(i + 1))
        })
        .collect();
    let two_step = (0..=m + 1)
        .map(|i| {
            let a = q(-4 * i * i + 8 * m * m + 24 * m + 19, 2 * (m + 2 - i) * (m + 2));
            let b = q(
                (m + i + 1) * (4 * m + 3) * (4 * m + 5),
                4 * (m + 2 - i) * (m + 1) * (m + 2),
            );
            r2.get(i) - (a * r1.get(i) - b * r0.get(i))
        })
        .collect();
    Ok(RecurrenceResiduals {
        m: r0.m,
        diagonal,
        two_step,
        in_row: [in_row_residuals(r0), in_row_residuals(r1), in_row_residuals(r2)],
    })
}

/// `d_i(m+1) / d_i(m)` from a pair of consecutive rows.
pub fn ratio(cur: &BorosMollRow, next: &BorosMollRow, i: i64) -> Result<Rational, CoeffError> {
    if next.m != cur.m + 1 {
        return Err(CoeffError::NonConsecutive {
            expected: cur.m + 1,
            found: next.m,
        });
    }
    if i < 0 || i as u64 > cur.m {
        return Err(CoeffError::IndexOutOfRange { m: cur.m, i });
    }
    Ok(next.get(i) / cur.get(i))
}

/// `d_i(m+1) / d_i(m)` computed from scratch.
pub fn ratio_at(m: u64, i: i64) -> Result<Rational, CoeffError> {
    if i < 0 || i as u64 > m {
        return Err(CoeffError::IndexOutOfRange { m, i });
    }
    let rows = rows_by_recurrence(m + 1);
    ratio(&rows[m as usize], &rows[m as usize + 1], i)
}

/// Recurrence-built rows `0..=m_max`, cross-checked against the single sum
/// every `check_every`-th row (and at the last row).
#[derive(Debug, Clone)]
pub struct RowTable {
    rows: Vec<BorosMollRow>,
}

pub const DEFAULT_CROSS_CHECK_PERIOD: u64 = 25;

impl RowTable {
    pub fn build(m_max: u64) -> Result<Self, CoeffError> {
        Self::build_checked(m_max, DEFAULT_CROSS_CHECK_PERIOD)
    }

    pub fn build_checked(m_max: u64, check_every: u64) -> Result<Self, CoeffError> {
        let rows = rows_by_recurrence(m_max);
        let period = check_every.max(1);
        for row in rows.iter().filter(|r| r.m % period == 0 || r.m == m_max) {
            let oracle = row_single_sum(row.m);
            if let Some(i) = (0..=row.m as usize).find(|&i| oracle.d[i] != row.d[i]) {
                return Err(CoeffError::EngineMismatch { m: row.m, i });
            }
        }
        Ok(RowTable { rows })
    }

    pub fn m_max(&self) -> u64 {
        self.rows.len() as u64 - 1
    }

    pub fn row(&self, m: u64) -> &BorosMollRow {
        &self.rows[m as usize]
    }

    pub fn rows(&self) -> &[BorosMollRow] {
        &self.rows
    }
}

/// `C(2m, m)^2 · m(m+1) / 2^(2m)`, the smallest entry of the Moll sequence.
pub fn moll_min_closed_form(m: u64) -> Rational {
    let c = binom(2 * m, m as i64);
    Rational::new(&c * &c * BigInt::from(m * (m + 1)), BigInt::one() << (2 * m as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::frac;

    fn row_of(v: &[(i64, i64)]) -> Vec<Rational> {
        v.iter().map(|&(n, d)| frac(n, d)).collect()
    }

    #[test]
    fn single_sum_small_rows() {
        assert_eq!(row_single_sum(0).values(), &row_of(&[(1, 1)])[..]);
        assert_eq!(row_single_sum(1).values(), &row_of(&[(3, 2), (1, 1)])[..]);
        assert_eq!(
            row_single_sum(2).values(),
            &row_of(&[(21, 8), (15, 4), (3, 2)])[..]
        );
    }

    #[test]
    fn double_sum_small_rows() {
        assert_eq!(row_double_sum(0).values(), &row_of(&[(1, 1)])[..]);
        assert_eq!(row_double_sum(1).values(), &row_of(&[(3, 2), (1, 1)])[..]);
        assert_eq!(
            row_double_sum(2).values(),
            &row_of(&[(21, 8), (15, 4), (3, 2)])[..]
        );
    }

    #[test]
    fn recurrence_steps() {
        let r0 = BorosMollRow::new(0, vec![int(1)]);
        let r1 = row_next(&r0);
        assert_eq!(r1.values(), &row_of(&[(3, 2), (1, 1)])[..]);
        let r2 = row_next(&r1);
        assert_eq!(r2.values(), &row_of(&[(21, 8), (15, 4), (3, 2)])[..]);
        let r3 = row_next(&r2);
        assert_eq!(
            r3.values(),
            &row_of(&[(77, 16), (43, 4), (35, 4), (5, 2)])[..]
        );
    }

    #[test]
    fn out_of_range_reads_zero() {
        let r = row_single_sum(3);
        assert!(r.get(-1).is_zero());
        assert!(r.get(4).is_zero());
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(ratio_at(2, 1).unwrap(), frac(43, 15));
        assert_eq!(ratio_at(1, 0).unwrap(), frac(7, 4));
        // d_2(3) = 35/4, d_2(2) = 3/2
        assert_eq!(ratio_at(2, 2).unwrap(), frac(35, 6));
        assert_eq!(
            ratio_at(2, 3),
            Err(CoeffError::IndexOutOfRange { m: 2, i: 3 })
        );
    }

    #[test]
    fn recurrences_vanish_on_small_rows() {
        let rows = rows_by_recurrence(8);
        for start in [1usize, 5] {
            let res = check_recurrences(&rows[start], &rows[start + 1], &rows[start + 2]).unwrap();
            assert!(res.all_zero(), "{:?}", res.nonzero());
            assert_eq!(res.diagonal.len(), start + 1);
            assert_eq!(res.two_step.len(), start + 2);
        }
    }

    #[test]
    fn corrupted_entry_is_caught() {
        let rows = rows_by_recurrence(7);
        let bad = rows[6].with_entry(3, rows[6].get(3) + int(1));
        let res = check_recurrences(&rows[5], &bad, &rows[7]).unwrap();
        let hits = res.nonzero();
        assert!(!hits.is_empty());
        assert!(hits.iter().any(|&(name, m, i)| name == "in_row" && m == 6 && (3..=5).contains(&i)));
        assert!(hits.iter().any(|&(name, _, i)| name == "two_step" && i == 3));
    }

    #[test]
    fn nonconsecutive_rows_rejected() {
        let rows = rows_by_recurrence(5);
        assert_eq!(
            check_recurrences(&rows[1], &rows[2], &rows[4]).unwrap_err(),
            CoeffError::NonConsecutive {
                expected: 3,
                found: 4
            }
        );
    }

    #[test]
    fn export_is_exact() {
        assert_eq!(
            row_single_sum(2).export_json().unwrap(),
            "{\"m\":2,\"den_pow2\":4,\"scaled\":[42,60,24]}"
        );
    }

    #[test]
    fn table_cross_checks() {
        let t = RowTable::build_checked(30, 7).unwrap();
        assert_eq!(t.m_max(), 30);
        assert_eq!(t.row(17), &row_single_sum(17));
    }

    #[test]
    fn moll_min_closed_form_small() {
        assert_eq!(moll_min_closed_form(2), frac(27, 2));
        assert_eq!(moll_min_closed_form(3), int(75));
    }
}
