//! Real-root counting by Sturm sequences, for `Q_m`, `R_m` and `P_m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::coefficients::{row_single_sum, BorosMollRow};
use crate::exactnum::{factorial, fmt_rational, sign_of, Rational};
use crate::report::{VerificationReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("the zero polynomial has no root count")]
    ZeroPolynomial,
}

/// Polynomial with rational coefficients, ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            for (b, y) in other.coeffs.iter().enumerate() {
                out[a + b] += x * y;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Remainder of division by a nonzero `d`.
    pub fn rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().expect("nonzero").clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let factor = r.last().expect("nonempty") / &lead;
            for (k, c) in d.coeffs.iter().enumerate() {
                r[shift + k] -= &factor * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Positive multiple with coprime integer coefficients.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Self::new(ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Sign as `x -> +inf` (`positive`) or `x -> -inf`.
    fn sign_at_infinity(&self, positive: bool) -> i8 {
        let s = self.leading().map(sign_of).unwrap_or(0);
        match self.degree() {
            Some(d) if !positive && d % 2 == 1 => -s,
            _ => s,
        }
    }

    pub fn render(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_rational).collect()
    }
}

/// `p, p', -rem(p, p'), ...`, each member reduced to its primitive part.
#[derive(Debug, Clone)]
pub struct SturmChain {
    members: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Result<Self, RootError> {
        if p.is_zero() {
            return Err(RootError::ZeroPolynomial);
        }
        let mut members = vec![p.primitive()];
        let d = p.derivative().primitive();
        if !d.is_zero() {
            members.push(d);
        }
        while members.len() >= 2 {
            let n = members.len();
            let r = members[n - 2].rem(&members[n - 1]);
            if r.is_zero() {
                break;
            }
            members.push(r.scale(&-Rational::one()).primitive());
        }
        Ok(SturmChain { members })
    }

    pub fn members(&self) -> &[UniPoly] {
        &self.members
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let nz: Vec<i8> = signs.filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.members.iter().map(|p| p.sign_at_infinity(positive)))
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.members.iter().map(|p| sign_of(&p.eval(x))))
    }

    /// Distinct real roots.
    pub fn real_root_count(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Last member, a greatest common divisor of `p` and `p'`.
    pub fn gcd(&self) -> &UniPoly {
        self.members.last().expect("nonempty")
    }
}

/// `(distinct real roots, degree of the squarefree part)`.
pub fn count_real_roots(p: &UniPoly) -> Result<(usize, usize), RootError> {
    let chain = SturmChain::new(p)?;
    let deg = p.degree().expect("nonzero");
    let g = chain.gcd().degree().expect("nonzero");
    Ok((chain.real_root_count(), deg - g))
}

pub fn is_real_rooted(p: &UniPoly) -> Result<bool, RootError> {
    let (roots, sqfree) = count_real_roots(p)?;
    Ok(roots == sqfree)
}

/// `sum d_i(m) x^i / i!`.
pub fn build_q(row: &BorosMollRow) -> UniPoly {
    weighted(row, 0)
}

/// `sum d_i(m) x^i / (i+2)!`.
pub fn build_r(row: &BorosMollRow) -> UniPoly {
    weighted(row, 2)
}

/// `sum d_i(m) a^i`.
pub fn build_p(row: &BorosMollRow) -> UniPoly {
    UniPoly::new(row.values().to_vec())
}

fn weighted(row: &BorosMollRow, offset: u64) -> UniPoly {
    UniPoly::new(
        row.values()
            .iter()
            .enumerate()
            .map(|(i, d)| d / Rational::from_integer(factorial(i as u64 + offset)))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    Q,
    R,
    P,
}

impl Family {
    pub fn build(self, row: &BorosMollRow) -> UniPoly {
        match self {
            Family::Q => build_q(row),
            Family::R => build_r(row),
            Family::P => build_p(row),
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "Q" | "q" => Some(Family::Q),
            "R" | "r" => Some(Family::R),
            "P" | "p" => Some(Family::P),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootRecord {
    pub poly: Family,
    pub m: u64,
    pub real_roots: usize,
    pub sqfree_deg: usize,
    pub real_rooted: bool,
}

pub fn root_record(which: Family, row: &BorosMollRow) -> RootRecord {
    let p = which.build(row);
    let (real_roots, sqfree_deg) = if p.degree() == Some(0) {
        (0, 0)
    } else {
        count_real_roots(&p).expect("rows are nonzero")
    };
    RootRecord {
        poly: which,
        m: row.m(),
        real_roots,
        sqfree_deg,
        real_rooted: real_roots == sqfree_deg,
    }
}

/// One `m` of a sweep: the record for `which` and, for `Q`, whether `R_m`
/// is real-rooted too.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepItem {
    pub record: RootRecord,
    pub r_real_rooted: Option<bool>,
}

pub fn sweep_item(which: Family, row: &BorosMollRow) -> SweepItem {
    let record = root_record(which, row);
    let r_real_rooted = (which == Family::Q).then(|| root_record(Family::R, row).real_rooted);
    SweepItem { record, r_real_rooted }
}

fn sweep_name(which: Family) -> &'static str {
    match which {
        Family::Q => "conjecture_q",
        Family::R => "conjecture_r",
        Family::P => "p_not_real_rooted",
    }
}

/// Verdict over a sweep, items in increasing `m`.
///
/// For `Q` and `R` the report passes when every polynomial is real-rooted
/// and, for `Q`, whenever `R_m` is real-rooted so is `Q_m`. For `P` it
/// passes when some `P_m` fails to be real-rooted.
pub fn sweep_verdict(which: Family, m_max: u64, items: &[SweepItem]) -> VerificationReport {
    let mut report = VerificationReport::new(sweep_name(which), m_max);
    for item in items {
        let rec = &item.record;
        let m = rec.m as i64;
        match which {
            Family::Q | Family::R => {
                report.record(rec.real_rooted, || {
                    Violation::text(m, rec.real_roots.to_string(), rec.sqfree_deg.to_string())
                });
            }
            Family::P => report.checked += 1,
        }
        if item.r_real_rooted == Some(true) {
            report.record(rec.real_rooted, || Violation::text(m, "R real-rooted", "Q not"));
        }
    }
    if which == Family::P {
        let failing: Vec<u64> = items.iter().filter(|it| !it.record.real_rooted).map(|it| it.record.m).collect();
        if failing.is_empty() {
            report.fail(Violation::text(0, "every P_m real-rooted", "some P_m not real-rooted"));
        } else {
            report.note(format!("not real-rooted for m in {failing:?}"));
        }
    }
    report
}

/// Per-`m` records for `1 <= m <= m_max` and the verdict.
pub fn conjecture_sweep(which: Family, m_max: u64) -> (Vec<RootRecord>, VerificationReport) {
    let items: Vec<SweepItem> = (1..=m_max).map(|m| sweep_item(which, &row_single_sum(m))).collect();
    let report = sweep_verdict(which, m_max, &items);
    (items.into_iter().map(|it| it.record).collect(), report)
}
