//! The `L` operator `a_i ↦ a_i² - a_{i-1}a_{i+1}`, bounded k-log-concavity
//! probing, and the 2-log-concavity and Moll-minimum checks on rows.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::coefficients::{moll_min_closed_form, BorosMollRow};
use crate::exactnum::{fmt_rational, int, Rational};
use crate::report::{VerificationReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LcError {
    #[error("row m = {0} too short; need m >= {1}")]
    RowTooShort(u64, u64),
    #[error("L-value at i = {i} is not positive ({value}) for m = {m}")]
    NonPositiveLValue { m: u64, i: usize, value: String },
}

/// Finite sequence `a_0..a_n` with `a_{-1} = a_{n+1} = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatSequence {
    values: Vec<Rational>,
    zero: Rational,
}

impl RatSequence {
    pub fn new(values: Vec<Rational>) -> Self {
        RatSequence {
            values,
            zero: Rational::zero(),
        }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| int(v)).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: i64) -> &Rational {
        if i < 0 || i as usize >= self.values.len() {
            &self.zero
        } else {
            &self.values[i as usize]
        }
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.values.iter().rev().cloned().collect())
    }
}

impl From<&BorosMollRow> for RatSequence {
    fn from(row: &BorosMollRow) -> Self {
        RatSequence::new(row.values().to_vec())
    }
}

pub fn l_operator(s: &RatSequence) -> RatSequence {
    let n = s.len() as i64;
    RatSequence::new(
        (0..n)
            .map(|i| s.get(i) * s.get(i) - s.get(i - 1) * s.get(i + 1))
            .collect(),
    )
}

/// `(true, None)` iff `a_i² >= a_{i-1}a_{i+1}` for `1 <= i <= n`; otherwise
/// the first failing index.
pub fn is_log_concave(s: &RatSequence) -> (bool, Option<usize>) {
    let n = s.len() as i64;
    for i in 1..n {
        if s.get(i) * s.get(i) < s.get(i - 1) * s.get(i + 1) {
            return (false, Some(i as usize));
        }
    }
    (true, None)
}

/// Largest `k <= max_k` with `L^j(s)` log-concave for all `j < k`.
pub fn klc_depth(s: &RatSequence, max_k: u32) -> u32 {
    let mut cur = s.clone();
    for k in 0..max_k {
        if !is_log_concave(&cur).0 {
            return k;
        }
        if k + 1 < max_k {
            cur = l_operator(&cur);
        }
    }
    max_k
}

/// L-values `l_0..l_m` of a row, all required to be positive.
fn positive_l_values(row: &BorosMollRow) -> Result<Vec<Rational>, LcError> {
    let l = l_operator(&RatSequence::from(row)).values;
    if let Some((i, v)) = l.iter().enumerate().find(|(_, v)| !v.is_positive()) {
        return Err(LcError::NonPositiveLValue {
            m: row.m(),
            i,
            value: fmt_rational(v),
        });
    }
    Ok(l)
}

/// Strict `l_{i-1}/l_i < l_i/l_{i+1}` for `1 <= i <= m-1`, where `l = L(d)`.
///
/// Denominators are checked positive first, then each inequality is decided
/// as `l_{i-1}·l_{i+1} < l_i²`. Full-range log-concavity of `d` and `L(d)`
/// (boundary zeros included) is also evaluated and any disagreement with the
/// strict check is noted in the report.
pub fn check_2lc(row: &BorosMollRow) -> Result<VerificationReport, LcError> {
    let m = row.m();
    if m < 2 {
        return Err(LcError::RowTooShort(m, 2));
    }
    let l = positive_l_values(row)?;
    let mut report = VerificationReport::new("2lc", m);
    for i in 1..m as usize {
        let ok = &l[i - 1] * &l[i + 1] < &l[i] * &l[i];
        report.record(ok, || {
            Violation::rational(i as i64, &(&l[i - 1] / &l[i]), &(&l[i] / &l[i + 1]))
        });
    }
    let seq = RatSequence::from(row);
    let full = is_log_concave(&seq).0 && is_log_concave(&l_operator(&seq)).0;
    if full != report.pass {
        report.note(format!(
            "boundary discrepancy: strict interior check {} but full-range log-concavity of d and L(d) {}",
            report.pass, full
        ));
    }
    Ok(report)
}

/// `e_i = i(i+1)(d_i² - d_{i-1}d_{i+1})` for `1 <= i <= m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MollMinSequence {
    pub m: u64,
    /// `e[k]` holds `e_{k+1}`.
    pub e: Vec<Rational>,
}

impl MollMinSequence {
    pub fn build(row: &BorosMollRow) -> Self {
        let seq = RatSequence::from(row);
        let l = l_operator(&seq);
        let m = row.m() as i64;
        let e = (1..=m).map(|i| int(i * (i + 1)) * l.get(i)).collect();
        MollMinSequence { m: row.m(), e }
    }

    pub fn get(&self, i: u64) -> &Rational {
        &self.e[i as usize - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MollMinVerdict {
    pub strict_min_at_m: bool,
    pub closed_form_matches: bool,
    pub log_concave: bool,
}

impl MollMinVerdict {
    pub fn all(&self) -> bool {
        self.strict_min_at_m && self.closed_form_matches && self.log_concave
    }
}

pub fn moll_min(row: &BorosMollRow) -> Result<(MollMinSequence, MollMinVerdict), LcError> {
    let m = row.m();
    if m < 2 {
        return Err(LcError::RowTooShort(m, 2));
    }
    let seq = MollMinSequence::build(row);
    let last = seq.get(m);
    let strict_min_at_m = seq.e[..seq.e.len() - 1].iter().all(|v| v > last);
    let closed_form_matches = *last == moll_min_closed_form(m);
    let log_concave = is_log_concave(&RatSequence::new(seq.e.clone())).0;
    Ok((
        seq,
        MollMinVerdict {
            strict_min_at_m,
            closed_form_matches,
            log_concave,
        },
    ))
}

pub fn moll_min_report(row: &BorosMollRow) -> Result<VerificationReport, LcError> {
    let (seq, verdict) = moll_min(row)?;
    let m = row.m();
    let mut report = VerificationReport::new("moll_min", m);
    let last = seq.get(m).clone();
    report.record(verdict.strict_min_at_m, || {
        let (k, v) = seq.e[..seq.e.len() - 1]
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .expect("m >= 2");
        Violation::rational(k as i64 + 1, v, &last)
    });
    report.record(verdict.closed_form_matches, || {
        Violation::rational(m as i64, &last, &moll_min_closed_form(m))
    });
    report.record(verdict.log_concave, || {
        let (_, at) = is_log_concave(&RatSequence::new(seq.e.clone()));
        let i = at.unwrap_or(0) as i64 + 1;
        Violation::text(i, "e_i^2", "e_{i-1} e_{i+1}")
    });
    Ok(report)
}

fn ratio_of(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The three inequality chains leading from 2-log-concavity to the
/// log-concavity of `i(i+1)·l_i`.
pub fn theorem17_chain(row: &BorosMollRow) -> Result<VerificationReport, LcError> {
    let m = row.m();
    if m < 3 {
        return Err(LcError::RowTooShort(m, 3));
    }
    let l = positive_l_values(row)?;
    let q = |i: i64| -> Rational { &l[i as usize] / &l[i as usize + 1] };
    let mi = m as i64;
    let mut report = VerificationReport::new("thm17_chain", m);
    for i in 2..mi {
        let lhs = q(i - 1);
        let rhs = ratio_of(i * (i + 1), (i - 1) * (i + 2)) * q(i);
        report.record(lhs < rhs, || Violation::rational(i, &lhs, &rhs));
    }
    for i in 1..=mi - 2 {
        let lhs = q(i);
        let rhs = ratio_of((i + 1) * (i + 2), i * (i + 3)) * q(i + 1);
        report.record(lhs < rhs, || Violation::rational(i, &lhs, &rhs));
        let e = |k: i64| int(k * (k + 1)) * &l[k as usize];
        let lhs = e(i) / e(i + 1);
        let rhs = e(i + 1) / e(i + 2);
        report.record(lhs < rhs, || Violation::rational(i, &lhs, &rhs));
    }
    Ok(report)
}
