//! Exact scalars: arbitrary-precision rationals, binomial coefficients and
//! quadratic surds `p + q·√s`.
//!
//! Nothing in this crate touches floating point. Every inequality is decided
//! by an exact sign computation, and the only irrational values that ever
//! appear are single square roots, which [`SurdExpr`] handles by squaring
//! with explicit sign bookkeeping.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("binomial coefficient requested with negative n = {0}")]
    NegativeBinomialTop(i64),
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("radicands differ: {0} vs {1}")]
    RadicandMismatch(BigInt, BigInt),
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn big(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// `num / den` as a reduced rational. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `"p/q"` (always with an explicit denominator).
pub fn fmt_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` or `"p"`.
/// Serde adapter writing a rational as its `p/q` string.
pub fn serialize_rational<S: serde::Serializer>(r: &Rational, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&fmt_rational(r))
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn sign_of(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// `C(n, k)`; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Result<BigInt, ExactError> {
    if n < 0 {
        return Err(ExactError::NegativeBinomialTop(n));
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    Ok(acc)
}

/// Binomial for indices already known to be nonnegative.
pub(crate) fn binom(n: u64, k: i64) -> BigInt {
    binomial(n as i64, k).expect("nonnegative top index")
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * j)
}

/// Exact real number `p + q·√s` with rational `p`, `q` and integer `s >= 0`.
///
/// Construction normalizes rational radicands (`√(a/b) = √(ab)/b`), folds
/// perfect-square radicands into `p`, and clears `s` whenever `q = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdExpr {
    p: Rational,
    q: Rational,
    s: BigInt,
}

impl SurdExpr {
    pub fn new(p: Rational, q: Rational, radicand: Rational) -> Result<Self, ExactError> {
        if radicand.is_negative() {
            return Err(ExactError::NegativeRadicand(fmt_rational(&radicand)));
        }
        let (a, b) = (radicand.numer().clone(), radicand.denom().clone());
        let q = q / Rational::from_integer(b.clone());
        Ok(Self::from_parts(p, q, a * b))
    }

    pub fn from_int_radicand(p: Rational, q: Rational, s: BigInt) -> Result<Self, ExactError> {
        if s.is_negative() {
            return Err(ExactError::NegativeRadicand(s.to_string()));
        }
        Ok(Self::from_parts(p, q, s))
    }

    fn from_parts(mut p: Rational, mut q: Rational, mut s: BigInt) -> Self {
        if q.is_zero() || s.is_zero() {
            return SurdExpr {
                p,
                q: Rational::zero(),
                s: BigInt::zero(),
            };
        }
        let r = s.sqrt();
        if &r * &r == s {
            p += q * Rational::from_integer(r);
            q = Rational::zero();
            s = BigInt::zero();
        }
        SurdExpr { p, q, s }
    }

    pub fn rational(p: Rational) -> Self {
        SurdExpr {
            p,
            q: Rational::zero(),
            s: BigInt::zero(),
        }
    }

    /// `√radicand` on its own.
    pub fn sqrt(radicand: Rational) -> Result<Self, ExactError> {
        Self::new(Rational::zero(), Rational::one(), radicand)
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn s(&self) -> &BigInt {
        &self.s
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn neg(&self) -> Self {
        SurdExpr {
            p: -self.p.clone(),
            q: -self.q.clone(),
            s: self.s.clone(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_parts(&self.p * k, &self.q * k, self.s.clone())
    }

    pub fn add_rational(&self, k: &Rational) -> Self {
        SurdExpr {
            p: &self.p + k,
            q: self.q.clone(),
            s: self.s.clone(),
        }
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt, ExactError> {
        if self.q.is_zero() {
            return Ok(other.s.clone());
        }
        if other.q.is_zero() || self.s == other.s {
            return Ok(self.s.clone());
        }
        Err(ExactError::RadicandMismatch(self.s.clone(), other.s.clone()))
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        let s = self.common_radicand(other)?;
        Ok(Self::from_parts(&self.p + &other.p, &self.q + &other.q, s))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        let s = self.common_radicand(other)?;
        let sr = Rational::from_integer(s.clone());
        let p = &self.p * &other.p + &self.q * &other.q * sr;
        let q = &self.p * &other.q + &self.q * &other.p;
        Ok(Self::from_parts(p, q, s))
    }

    pub fn sign(&self) -> i8 {
        surd_sign(self)
    }
}

impl fmt::Display for SurdExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", fmt_rational(&self.p))
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                fmt_rational(&self.p),
                fmt_rational(&self.q),
                self.s
            )
        }
    }
}

/// Sign of `p + q·√s`.
pub fn surd_sign(e: &SurdExpr) -> i8 {
    let sp = sign_of(&e.p);
    if e.q.is_zero() || e.s.is_zero() {
        return sp;
    }
    let sq = sign_of(&e.q);
    if sp == 0 || sp == sq {
        return if sp == 0 { sq } else { sp };
    }
    // p and q·√s have opposite signs; the larger magnitude wins.
    let lhs = &e.p * &e.p;
    let rhs = &e.q * &e.q * Rational::from_integer(e.s.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => 0,
    }
}

/// Sign of `a - b`, radicands allowed to differ.
pub fn surd_compare(a: &SurdExpr, b: &SurdExpr) -> i8 {
    if let Ok(d) = a.sub(b) {
        return surd_sign(&d);
    }
    // a - b = x - y with x = (pa - pb) + qa·√sa and y = qb·√sb.
    let x = SurdExpr::from_parts(&a.p - &b.p, a.q.clone(), a.s.clone());
    let sx = surd_sign(&x);
    let sy = sign_of(&b.q);
    if sx != sy || sx == 0 {
        return match sx.cmp(&sy) {
            Ordering::Greater => 1,
            Ordering::Less => -1,
            Ordering::Equal => 0,
        };
    }
    // Same nonzero sign: compare squares, x² - y² = (px² + qx²·sx - qb²·sb) + 2·px·qx·√sx.
    let sa = Rational::from_integer(x.s.clone());
    let sb = Rational::from_integer(b.s.clone());
    let rat = &x.p * &x.p + &x.q * &x.q * sa - &b.q * &b.q * sb;
    let irr = int(2) * &x.p * &x.q;
    let diff_sq = SurdExpr::from_parts(rat, irr, x.s.clone());
    sx * surd_sign(&diff_sq)
}
