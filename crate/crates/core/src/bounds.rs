//! Ratio bounds for `d_i(m+1)/d_i(m)`, the quadratic forms built from the
//! printed polynomials, and the root-interval checks.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::coefficients::BorosMollRow;
use crate::exactnum::{fmt_rational, frac, int, serialize_rational, surd_compare, Rational, SurdExpr};
use crate::identities::{Forms, Point};
use crate::report::{VerificationReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("{what} needs {range}, got (m, i) = ({m}, {i})")]
    OutOfRange {
        what: &'static str,
        range: &'static str,
        m: i64,
        i: i64,
    },
    #[error("{what}: the two routes disagree at (m, i) = ({m}, {i}): {lhs} vs {rhs}")]
    RouteMismatch {
        what: &'static str,
        m: i64,
        i: i64,
        lhs: String,
        rhs: String,
    },
    #[error("rows {0} and {1} are not consecutive")]
    NonConsecutive(u64, u64),
}

fn out_of_range(what: &'static str, range: &'static str, m: i64, i: i64) -> BoundsError {
    BoundsError::OutOfRange { what, range, m, i }
}

fn ratio_of_ints(num: i64, den: i64) -> Rational {
    frac(num, den)
}

/// `(i+1)(i+2)(m+i+3)^2 / ((m+1-i)(m+2-i)(m+i+2)^2)`.
pub fn f_intermediate(m: i64, i: i64) -> Result<Rational, BoundsError> {
    if !(0 <= i && i <= m) {
        return Err(out_of_range("f_intermediate", "0 <= i <= m", m, i));
    }
    let num = int((i + 1) * (i + 2)) * int((m + i + 3).pow(2));
    let den = int((m + 1 - i) * (m + 2 - i)) * int((m + i + 2).pow(2));
    Ok(num / den)
}

/// Lower bound `(4m^2+7m+i+3) / (2(m+1-i)(m+1))`.
pub fn kp_lower(m: i64, i: i64) -> Result<Rational, BoundsError> {
    if !(0 < i && i < m) {
        return Err(out_of_range("kp_lower", "0 < i < m", m, i));
    }
    Ok(ratio_of_ints(4 * m * m + 7 * m + i + 3, 2 * (m + 1 - i) * (m + 1)))
}

/// Upper bound `(4m^2+7m+3-2i^2 + i sqrt(4m+4i^2+1)) / (2(m+1)(m+1-i))`.
pub fn cg_upper(m: i64, i: i64) -> Result<SurdExpr, BoundsError> {
    if !(0 <= i && i <= m) {
        return Err(out_of_range("cg_upper", "0 <= i <= m", m, i));
    }
    let den = int(2 * (m + 1) * (m + 1 - i));
    let p = int(4 * m * m + 7 * m + 3 - 2 * i * i) / &den;
    let q = int(i) / &den;
    Ok(SurdExpr::from_int_radicand(p, q, BigInt::from(4 * m + 4 * i * i + 1)).expect("positive radicand"))
}

fn consecutive(cur: &BorosMollRow, next: &BorosMollRow) -> Result<(), BoundsError> {
    if next.m() != cur.m() + 1 {
        return Err(BoundsError::NonConsecutive(cur.m(), next.m()));
    }
    Ok(())
}

fn row_ratio(cur: &BorosMollRow, next: &BorosMollRow, i: i64) -> Rational {
    next.get(i) / cur.get(i)
}

/// `kp_lower <= d_i(m+1)/d_i(m) <= cg_upper` for every `0 < i < m`.
pub fn check_ratio_bounds(cur: &BorosMollRow, next: &BorosMollRow) -> Result<VerificationReport, BoundsError> {
    consecutive(cur, next)?;
    let m = cur.m() as i64;
    let mut report = VerificationReport::new("ratio_bounds", cur.m());
    for i in 1..m {
        let r = row_ratio(cur, next, i);
        let lo = kp_lower(m, i)?;
        report.record(lo <= r, || Violation::rational(i, &lo, &r));
        let hi = cg_upper(m, i)?;
        let ok = surd_compare(&SurdExpr::rational(r.clone()), &hi) <= 0;
        report.record(ok, || Violation::text(i, fmt_rational(&r), hi.to_string()));
    }
    Ok(report)
}

// ------------------------------------------------------------- quadratic forms

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadFormABC {
    #[serde(serialize_with = "serialize_rational")]
    pub a_coef: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub b_coef: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub c_coef: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadFormUVW {
    #[serde(serialize_with = "serialize_rational")]
    pub u_coef: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub v_coef: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub w_coef: Rational,
}

fn interior(what: &'static str, m: i64, i: i64) -> Result<Point<Rational>, BoundsError> {
    if !(1 <= i && i < m) {
        return Err(out_of_range(what, "1 <= i <= m-1", m, i));
    }
    Ok(Point::at(m, i))
}

fn same(what: &'static str, m: i64, i: i64, lhs: Rational, rhs: Rational) -> Result<Rational, BoundsError> {
    if lhs != rhs {
        return Err(BoundsError::RouteMismatch {
            what,
            m,
            i,
            lhs: fmt_rational(&lhs),
            rhs: fmt_rational(&rhs),
        });
    }
    Ok(lhs)
}

pub fn quad_abc(f: &Forms, m: i64, i: i64) -> Result<QuadFormABC, BoundsError> {
    let p = interior("quad_abc", m, i)?;
    Ok(QuadFormABC {
        a_coef: f.a(&p),
        b_coef: f.b(&p),
        c_coef: f.c(&p),
    })
}

/// `B^2 - 4AC`, checked against the closed form.
pub fn delta1(f: &Forms, m: i64, i: i64) -> Result<Rational, BoundsError> {
    let p = interior("delta1", m, i)?;
    same("delta1", m, i, f.delta1(&p), f.delta1_closed(&p))
}

pub fn quad_uvw(f: &Forms, m: i64, i: i64) -> Result<QuadFormUVW, BoundsError> {
    let p = interior("quad_uvw", m, i)?;
    Ok(QuadFormUVW {
        u_coef: f.u(&p),
        v_coef: f.v(&p),
        w_coef: f.w(&p),
    })
}

/// `V^2 - 4UW`, checked against the closed form.
pub fn delta2(f: &Forms, m: i64, i: i64) -> Result<Rational, BoundsError> {
    let p = interior("delta2", m, i)?;
    same("delta2", m, i, f.delta2(&p), f.delta2_closed(&p))
}

/// `(-b + sign * sqrt(disc)) / (2a)` as an exact surd.
fn root(a: &Rational, b: &Rational, disc: &Rational, sign: i64) -> SurdExpr {
    let two_a = int(2) * a;
    SurdExpr::new(-b / &two_a, int(sign) / &two_a, disc.clone()).expect("nonnegative discriminant")
}

// ---------------------------------------------------------------- case split

/// Sign of `i - ((m^2/2)^{1/3} - m^{1/3})`, decided exactly.
///
/// With `t = m^{1/3}`, `i + t` versus `(m^2/2)^{1/3}` is the sign of
/// `3i t^2 + 3i^2 t - c0` where `c0 = m^2/2 - i^3 - m`; for `c0 > 0` that
/// quadratic has one positive root `t*`, and `t` versus `t*` is `m` versus `t*^3`.
pub fn composite_threshold_cmp(m: u64, i: u64) -> Ordering {
    assert!(i >= 1, "threshold comparison needs i >= 1");
    let (mr, ir) = (Rational::from_integer(m.into()), Rational::from_integer(i.into()));
    let c0 = &mr * &mr / int(2) - ir.pow(3) - &mr;
    if !c0.is_positive() {
        return Ordering::Greater;
    }
    let x = -&ir / int(2);
    let y = Rational::one() / (int(6) * &ir);
    let disc = int(9) * ir.pow(4) + int(12) * &ir * &c0;
    // (x + y sqrt(disc))^3
    let cube_p = x.pow(3) + int(3) * &x * &y * &y * &disc;
    let cube_q = int(3) * &x * &x * &y + y.pow(3) * &disc;
    let t_star_cubed = SurdExpr::new(cube_p, cube_q, disc).expect("positive discriminant");
    match surd_compare(&t_star_cubed, &SurdExpr::rational(mr)) {
        1 => Ordering::Less,
        0 => Ordering::Equal,
        _ => Ordering::Greater,
    }
}

/// `i < (m^2/2)^{1/3} - m^{1/3}`.
pub fn below_composite_threshold(m: u64, i: u64) -> bool {
    composite_threshold_cmp(m, i) == Ordering::Less
}

/// `i >= m^{2/3}`.
pub fn cube_at_least_square(m: u64, i: u64) -> bool {
    i.pow(3) >= m * m
}

/// `i <= (m^2/2)^{1/3}`.
pub fn twice_cube_at_most_square(m: u64, i: u64) -> bool {
    2 * i.pow(3) <= m * m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseLabel {
    Case1,
    Case2,
    Case3,
    Case4,
    Case5,
}

/// The five-way split of `1 <= i <= m-1`; Case5 and then Case4 win overlaps.
pub fn classify_case(m: u64, i: u64) -> CaseLabel {
    if i + 3 >= m {
        CaseLabel::Case5
    } else if cube_at_least_square(m, i) {
        CaseLabel::Case4
    } else if below_composite_threshold(m, i) {
        CaseLabel::Case1
    } else if twice_cube_at_most_square(m, i) {
        CaseLabel::Case2
    } else {
        CaseLabel::Case3
    }
}

// ------------------------------------------------------------- root intervals

/// Result of a root-interval test at one point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PointOutcome {
    Holds,
    Fails { ratio: String, bound: String },
    /// Negative discriminant: the form has no real roots and is positive.
    Vacuous,
}

impl PointOutcome {
    fn from_cmp(ok: bool, r: &Rational, bound: &SurdExpr) -> Self {
        if ok {
            PointOutcome::Holds
        } else {
            PointOutcome::Fails {
                ratio: fmt_rational(r),
                bound: bound.to_string(),
            }
        }
    }

    pub fn holds(&self) -> bool {
        !matches!(self, PointOutcome::Fails { .. })
    }
}

fn ratio_at(cur: &BorosMollRow, next: &BorosMollRow, i: i64) -> Result<Rational, BoundsError> {
    consecutive(cur, next)?;
    Ok(row_ratio(cur, next, i))
}

/// Strict interval between the two roots of `A r^2 + B r + C` (with `A < 0`).
pub fn theorem31_check(f: &Forms, cur: &BorosMollRow, next: &BorosMollRow, i: i64) -> Result<PointOutcome, BoundsError> {
    let m = cur.m() as i64;
    let r = ratio_at(cur, next, i)?;
    let q = quad_abc(f, m, i)?;
    let d = delta1(f, m, i)?;
    if !d.is_positive() {
        return Ok(PointOutcome::Fails {
            ratio: fmt_rational(&r),
            bound: format!("Delta1 = {} is not positive", fmt_rational(&d)),
        });
    }
    let lo = root(&q.a_coef, &q.b_coef, &d, 1);
    let hi = root(&q.a_coef, &q.b_coef, &d, -1);
    let rs = SurdExpr::rational(r.clone());
    if surd_compare(&lo, &rs) != -1 {
        return Ok(PointOutcome::from_cmp(false, &r, &lo));
    }
    Ok(PointOutcome::from_cmp(surd_compare(&rs, &hi) == -1, &r, &hi))
}

fn uvw_root_check(
    f: &Forms,
    cur: &BorosMollRow,
    next: &BorosMollRow,
    i: i64,
    upper: bool,
    allow_vacuous: bool,
) -> Result<PointOutcome, BoundsError> {
    let m = cur.m() as i64;
    let r = ratio_at(cur, next, i)?;
    let q = quad_uvw(f, m, i)?;
    let d = delta2(f, m, i)?;
    if d.is_negative() {
        return Ok(if allow_vacuous {
            PointOutcome::Vacuous
        } else {
            PointOutcome::Fails {
                ratio: fmt_rational(&r),
                bound: format!("Delta2 = {} is negative", fmt_rational(&d)),
            }
        });
    }
    let rs = SurdExpr::rational(r.clone());
    if upper {
        let bound = root(&q.u_coef, &q.v_coef, &d, -1);
        Ok(PointOutcome::from_cmp(surd_compare(&rs, &bound) == -1, &r, &bound))
    } else {
        let bound = root(&q.u_coef, &q.v_coef, &d, 1);
        Ok(PointOutcome::from_cmp(surd_compare(&rs, &bound) == 1, &r, &bound))
    }
}

/// `d_i(m+1)/d_i(m) < (-V - sqrt(Delta2))/(2U)` where `Delta2 >= 0`.
pub fn theorem42_check(f: &Forms, cur: &BorosMollRow, next: &BorosMollRow, i: i64) -> Result<PointOutcome, BoundsError> {
    uvw_root_check(f, cur, next, i, true, true)
}

/// `d_i(m+1)/d_i(m) > (-V + sqrt(Delta2))/(2U)` where `Delta2 >= 0`.
pub fn theorem44_check(f: &Forms, cur: &BorosMollRow, next: &BorosMollRow, i: i64) -> Result<PointOutcome, BoundsError> {
    uvw_root_check(f, cur, next, i, false, true)
}

/// As [`theorem44_check`], with a negative `Delta2` counted as a failure.
pub fn theorem45_check(f: &Forms, cur: &BorosMollRow, next: &BorosMollRow, i: i64) -> Result<PointOutcome, BoundsError> {
    uvw_root_check(f, cur, next, i, false, false)
}

/// The i = m-3 step: `d_{n-3}(n+2)/d_{n-3}(n+1)` above the larger root at `(n+1, n-3)`.
pub fn dn3_closing_check(f: &Forms, next: &BorosMollRow, next2: &BorosMollRow) -> Result<PointOutcome, BoundsError> {
    theorem45_check(f, next, next2, next.m() as i64 - 4)
}

fn theorem42_region(m: u64, i: u64) -> bool {
    m >= 15 && composite_threshold_cmp(m, i) != Ordering::Greater
}

fn theorem44_region(m: u64, i: u64) -> bool {
    m >= 2 && 2 * i.pow(3) >= m * m && i.pow(3) <= m * m
}

fn theorem45_region(m: u64, i: u64) -> bool {
    m >= 273 && cube_at_least_square(m, i) && i + 4 <= m
}

/// Which root-interval statement a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootTheorem {
    T31,
    T42,
    T44,
    T45,
}

impl RootTheorem {
    pub const ALL: [RootTheorem; 4] = [RootTheorem::T31, RootTheorem::T42, RootTheorem::T44, RootTheorem::T45];

    pub fn name(self) -> &'static str {
        match self {
            RootTheorem::T31 => "theorem31",
            RootTheorem::T42 => "theorem42",
            RootTheorem::T44 => "theorem44",
            RootTheorem::T45 => "theorem45",
        }
    }

    pub fn in_region(self, m: u64, i: u64) -> bool {
        if !(1 <= i && i < m) {
            return false;
        }
        match self {
            RootTheorem::T31 => m >= 126,
            RootTheorem::T42 => theorem42_region(m, i),
            RootTheorem::T44 => theorem44_region(m, i),
            RootTheorem::T45 => theorem45_region(m, i),
        }
    }

    pub fn check(self, f: &Forms, cur: &BorosMollRow, next: &BorosMollRow, i: i64) -> Result<PointOutcome, BoundsError> {
        match self {
            RootTheorem::T31 => theorem31_check(f, cur, next, i),
            RootTheorem::T42 => theorem42_check(f, cur, next, i),
            RootTheorem::T44 => theorem44_check(f, cur, next, i),
            RootTheorem::T45 => theorem45_check(f, cur, next, i),
        }
    }

    /// Every `i` of the region at row `m = cur.m()`, strided.
    pub fn report(self, f: &Forms, cur: &BorosMollRow, next: &BorosMollRow, i_stride: u64) -> Result<VerificationReport, BoundsError> {
        let m = cur.m();
        let mut report = VerificationReport::new(self.name(), m);
        let stride = i_stride.max(1);
        for (k, i) in (1..m).filter(|&i| self.in_region(m, i)).enumerate() {
            if !(k as u64).is_multiple_of(stride) {
                continue;
            }
            match self.check(f, cur, next, i as i64)? {
                PointOutcome::Holds => report.record(true, || unreachable!()),
                PointOutcome::Vacuous => report.skip_vacuous(),
                PointOutcome::Fails { ratio, bound } => {
                    report.checked += 1;
                    report.fail(Violation::text(i as i64, ratio, bound));
                }
            }
        }
        if report.skipped_vacuous > 0 {
            report.note("vacuous (quadratic has no real roots, form positive by U > 0)");
        }
        Ok(report)
    }
}

// ------------------------------------------------------- L-ratio differences

fn l_value(row: &BorosMollRow, i: i64) -> Rational {
    row.get(i) * row.get(i) - row.get(i - 1) * row.get(i + 1)
}

fn lower_weight(m: i64, i: i64) -> Rational {
    int((m + 1 - i) * (m + 2 - i)) * int((m + i + 2).pow(2))
}

fn upper_weight(m: i64, i: i64) -> Rational {
    int((i + 1) * (i + 2)) * int((m + i + 3).pow(2))
}

/// First ratio difference, from the row and from `A b^2 + B ab + C a^2`.
pub fn theorem14_value(f: &Forms, cur: &BorosMollRow, next: &BorosMollRow, i: i64) -> Result<Rational, BoundsError> {
    consecutive(cur, next)?;
    let m = cur.m() as i64;
    let q = quad_abc(f, m, i)?;
    let direct = lower_weight(m, i) * l_value(cur, i) - upper_weight(m, i) * l_value(cur, i + 1);
    let (a, b) = (cur.get(i), next.get(i));
    let form = q.a_coef * b * b + q.b_coef * a * b + q.c_coef * a * a;
    same("theorem14", m, i, direct, form)
}

/// Second ratio difference, from the row and from `U b^2 + V ab + W a^2`.
pub fn theorem15_value(f: &Forms, cur: &BorosMollRow, next: &BorosMollRow, i: i64) -> Result<Rational, BoundsError> {
    consecutive(cur, next)?;
    let m = cur.m() as i64;
    let q = quad_uvw(f, m, i)?;
    let direct = upper_weight(m, i) * l_value(cur, i) - lower_weight(m, i) * l_value(cur, i - 1);
    let (a, b) = (cur.get(i), next.get(i));
    let form = q.u_coef * b * b + q.v_coef * a * b + q.w_coef * a * a;
    same("theorem15", m, i, direct, form)
}

pub fn theorem14_check(f: &Forms, cur: &BorosMollRow, next: &BorosMollRow, i: i64) -> Result<bool, BoundsError> {
    Ok(theorem14_value(f, cur, next, i)?.is_positive())
}

pub fn theorem15_check(f: &Forms, cur: &BorosMollRow, next: &BorosMollRow, i: i64) -> Result<bool, BoundsError> {
    Ok(theorem15_value(f, cur, next, i)?.is_positive())
}

fn difference_report(
    name: &'static str,
    value: fn(&Forms, &BorosMollRow, &BorosMollRow, i64) -> Result<Rational, BoundsError>,
    f: &Forms,
    cur: &BorosMollRow,
    next: &BorosMollRow,
) -> Result<VerificationReport, BoundsError> {
    let m = cur.m() as i64;
    let mut report = VerificationReport::new(name, cur.m());
    for i in 1..m {
        let v = value(f, cur, next, i)?;
        report.record(v.is_positive(), || Violation::rational(i, &v, &Rational::zero()));
    }
    Ok(report)
}

pub fn theorem14_report(f: &Forms, cur: &BorosMollRow, next: &BorosMollRow) -> Result<VerificationReport, BoundsError> {
    difference_report("theorem14", theorem14_value, f, cur, next)
}

pub fn theorem15_report(f: &Forms, cur: &BorosMollRow, next: &BorosMollRow) -> Result<VerificationReport, BoundsError> {
    difference_report("theorem15", theorem15_value, f, cur, next)
}

/// `L_{i-1}/L_i < f(m,i) < L_i/L_{i+1}` for `1 <= i <= m-1`.
pub fn f_sandwich_report(row: &BorosMollRow) -> VerificationReport {
    let m = row.m() as i64;
    let mut report = VerificationReport::new("f_sandwich", row.m());
    for i in 1..m {
        let f = f_intermediate(m, i).expect("in range");
        let (lp, l, ln) = (l_value(row, i - 1), l_value(row, i), l_value(row, i + 1));
        let ok = lp.is_positive() && l.is_positive() && ln.is_positive();
        report.record(ok && lp < &f * &l, || Violation::rational(i, &lp, &(&f * &l)));
        report.record(ok && &f * &ln < l, || Violation::rational(i, &(&f * &ln), &l));
    }
    report
}
