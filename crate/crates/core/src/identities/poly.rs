//! Sparse bivariate integer polynomials in `(m, i)` and the named table
//! loaded from `data/polynomials.txt`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::scalar::{Point, Scalar};
use crate::exactnum::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("checksum mismatch: expected {expected}, found {found}")]
    Checksum { expected: String, found: String },
    #[error("unknown polynomial {0}")]
    Unknown(String),
}

/// Map from exponent pair `(e_m, e_i)` to a nonzero integer coefficient.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: (u32, u32), coeff: BigInt) {
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: (u32, u32)) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_m(&self) -> u32 {
        self.terms.keys().map(|e| e.0).max().unwrap_or(0)
    }

    pub fn degree_i(&self) -> u32 {
        self.terms.keys().map(|e| e.1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.0 + e.1).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term((ea.0 + eb.0, ea.1 + eb.1), ca * cb);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn eval<S: Scalar>(&self, pt: &Point<S>) -> S {
        let mp = powers(&pt.m, self.degree_m());
        let ip = powers(&pt.i, self.degree_i());
        let mut acc: Option<S> = None;
        for ((a, b), c) in &self.terms {
            let t = S::constant(c) * mp[*a as usize].clone() * ip[*b as usize].clone();
            acc = Some(match acc {
                None => t,
                Some(s) => s + t,
            });
        }
        acc.unwrap_or_else(|| S::int(0))
    }

    pub fn eval_at(&self, m: i64, i: i64) -> Rational {
        self.eval(&Point::<Rational>::at(m, i))
    }

    /// Serializes as `NAME e_m e_i coefficient` lines.
    pub fn to_lines(&self, name: &str) -> String {
        let mut out = String::new();
        for ((a, b), c) in self.terms.iter().rev() {
            let _ = writeln!(out, "{name} {a} {b} {c}");
        }
        out
    }
}

fn powers<S: Scalar>(x: &S, n: u32) -> Vec<S> {
    let mut v = Vec::with_capacity(n as usize + 1);
    v.push(S::int(1));
    for k in 0..n as usize {
        let next = v[k].clone() * x.clone();
        v.push(next);
    }
    v
}

/// SHA-256 of the shipped data file, pinned at transcription time.
pub const BUILTIN_CHECKSUM: &str =
    "7f40edff635a1a656c50bfbcca35f27120611abbe3234f641dfcd1fae9a0dd94";

const BUILTIN_TEXT: &str = include_str!("../../data/polynomials.txt");

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

/// Named polynomials, keyed by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyTable {
    polys: BTreeMap<String, BivarPoly>,
}

impl PolyTable {
    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let mut polys: BTreeMap<String, BivarPoly> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: &str| PolyError::Parse {
                line: idx + 1,
                reason: reason.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(err("expected NAME e_m e_i coefficient"));
            }
            let em: u32 = fields[1].parse().map_err(|_| err("bad e_m"))?;
            let ei: u32 = fields[2].parse().map_err(|_| err("bad e_i"))?;
            let c: BigInt = fields[3].parse().map_err(|_| err("bad coefficient"))?;
            polys
                .entry(fields[0].to_string())
                .or_default()
                .add_term((em, ei), c);
        }
        Ok(PolyTable { polys })
    }

    pub fn parse_checked(text: &str, expected: &str) -> Result<Self, PolyError> {
        let found = sha256_hex(text);
        if found != expected {
            return Err(PolyError::Checksum {
                expected: expected.to_string(),
                found,
            });
        }
        Self::parse(text)
    }

    /// The shipped table, checksum-verified.
    pub fn builtin() -> Self {
        Self::parse_checked(BUILTIN_TEXT, BUILTIN_CHECKSUM).expect("shipped polynomial table is intact")
    }

    pub fn builtin_text() -> &'static str {
        BUILTIN_TEXT
    }

    pub fn get(&self, name: &str) -> Result<&BivarPoly, PolyError> {
        self.polys
            .get(name)
            .ok_or_else(|| PolyError::Unknown(name.to_string()))
    }

    /// Panicking lookup for names the evaluators rely on.
    pub(crate) fn poly(&self, name: &str) -> &BivarPoly {
        self.polys
            .get(name)
            .unwrap_or_else(|| panic!("polynomial {name} missing from table"))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.polys.keys().map(String::as_str)
    }

    pub fn to_text(&self) -> String {
        self.polys
            .iter()
            .map(|(name, p)| p.to_lines(name))
            .collect()
    }

    /// Copy with `delta` added to one coefficient.
    pub fn with_perturbation(&self, name: &str, exp: (u32, u32), delta: BigInt) -> Result<Self, PolyError> {
        let mut out = self.clone();
        out.polys
            .get_mut(name)
            .ok_or_else(|| PolyError::Unknown(name.to_string()))?
            .add_term(exp, delta);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::int;

    #[test]
    fn builtin_loads_and_checksum_guards() {
        let t = PolyTable::builtin();
        assert!(t.get("X").is_ok());
        assert!(t.get("nope").is_err());
        let tampered = PolyTable::builtin_text().replacen("X 0 11 16", "X 0 11 17", 1);
        assert!(matches!(
            PolyTable::parse_checked(&tampered, BUILTIN_CHECKSUM),
            Err(PolyError::Checksum { .. })
        ));
    }

    #[test]
    fn degree_table() {
        // (total, in m, in i, number of terms)
        let expected: &[(&str, u32, u32, u32, usize)] = &[
            ("D", 4, 3, 4, 12),
            ("E", 6, 5, 6, 25),
            ("F", 8, 7, 6, 38),
            ("G", 8, 6, 8, 13),
            ("H", 7, 7, 7, 33),
            ("K", 9, 7, 9, 46),
            ("L_RAT", 8, 6, 7, 38),
            ("L_SURD", 7, 6, 6, 32),
            ("L_SQDIFF", 7, 7, 6, 35),
            ("R", 4, 3, 4, 12),
            ("S", 7, 6, 7, 32),
            ("T", 8, 7, 6, 39),
            ("X", 11, 8, 11, 64),
            ("R1", 4, 3, 4, 12),
            ("S1", 7, 5, 7, 28),
            ("M1", 4, 3, 4, 12),
            ("N1", 11, 10, 10, 71),
            ("P", 6, 5, 6, 23),
            ("G1", 4, 3, 4, 12),
            ("H1", 7, 6, 7, 29),
            ("Y5", 6, 5, 6, 25),
            ("Y6", 11, 9, 9, 68),
            ("g", 12, 12, 0, 13),
            ("f", 11, 11, 0, 12),
            ("DN3_RATIO_NUM", 6, 6, 0, 7),
            ("DN3_RATIO_DEN", 5, 5, 0, 6),
            ("DN3_ROOT_RAT", 7, 7, 0, 8),
            ("DN3_ROOT_DEN", 6, 6, 0, 7),
        ];
        let t = PolyTable::builtin();
        assert_eq!(t.names().count(), expected.len());
        for &(name, tot, dm, di, n) in expected {
            let p = t.get(name).unwrap();
            assert_eq!(
                (p.total_degree(), p.degree_m(), p.degree_i(), p.term_count()),
                (tot, dm, di, n),
                "{name}"
            );
        }
    }

    #[test]
    fn evaluation_matches_hand_values() {
        let t = PolyTable::builtin();
        // coefficient sum
        assert_eq!(t.poly("D").eval_at(1, 1), int(118));
        // these quartics coincide
        for name in ["R", "R1", "M1", "G1"] {
            assert_eq!(t.poly(name), t.poly("D"), "{name}");
        }
        assert_eq!(t.poly("g").eval_at(0, 5), int(-2430));
    }

    #[test]
    fn perturbation_changes_one_coefficient() {
        let t = PolyTable::builtin();
        let p = t.with_perturbation("K", (0, 0), BigInt::from(1)).unwrap();
        assert_eq!(p.poly("K").coeff((0, 0)), BigInt::from(1));
        assert_ne!(p, t);
        assert!(t.with_perturbation("nope", (0, 0), BigInt::from(1)).is_err());
    }

    #[test]
    fn arithmetic() {
        let x = BivarPoly::from_terms([((1, 0), BigInt::from(1)), ((0, 1), BigInt::from(-1))]);
        let y = BivarPoly::from_terms([((1, 0), BigInt::from(1)), ((0, 1), BigInt::from(1))]);
        let prod = x.mul(&y);
        assert_eq!(prod.term_count(), 2);
        assert_eq!(prod.coeff((2, 0)), BigInt::from(1));
        assert_eq!(prod.coeff((0, 2)), BigInt::from(-1));
        assert!(x.add(&BivarPoly::from_terms([((1, 0), BigInt::from(-1)), ((0, 1), BigInt::from(1))])).is_zero());
    }
}
