//! The printed identities and sign claims, and the checkers that run them.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::named::Forms;
use super::scalar::{DegreeBound, Point, Scalar};
use crate::bounds::{below_composite_threshold, cube_at_least_square, twice_cube_at_most_square};
use crate::coefficients::RowTable;
use crate::exactnum::{binomial, int, surd_compare, Rational, SurdExpr};
use crate::report::{VerificationReport, Violation};

/// Rational-function identities certified by grid evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Delta1ClosedForm,
    Delta2ClosedForm,
    Represent1,
    Represent2,
    KDifference,
    LDifference,
    LSquareDifference,
    D1ClosedForm,
    E1Factorization,
    F1Factorization,
    PIdentity,
    G1H1Identity,
    Y3ClosedForm,
    Y4ClosedForm,
    Dn3RootRational,
    Dn3RootRadicand,
}

impl Identity {
    pub const ALL: [Identity; 16] = [
        Identity::Delta1ClosedForm,
        Identity::Delta2ClosedForm,
        Identity::Represent1,
        Identity::Represent2,
        Identity::KDifference,
        Identity::LDifference,
        Identity::LSquareDifference,
        Identity::D1ClosedForm,
        Identity::E1Factorization,
        Identity::F1Factorization,
        Identity::PIdentity,
        Identity::G1H1Identity,
        Identity::Y3ClosedForm,
        Identity::Y4ClosedForm,
        Identity::Dn3RootRational,
        Identity::Dn3RootRadicand,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Delta1ClosedForm => "delta1_closed_form",
            Identity::Delta2ClosedForm => "delta2_closed_form",
            Identity::Represent1 => "represent1",
            Identity::Represent2 => "represent2",
            Identity::KDifference => "k_difference",
            Identity::LDifference => "l_difference",
            Identity::LSquareDifference => "l_square_difference",
            Identity::D1ClosedForm => "d1_closed_form",
            Identity::E1Factorization => "e1_factorization",
            Identity::F1Factorization => "f1_factorization",
            Identity::PIdentity => "p_identity",
            Identity::G1H1Identity => "g1h1_identity",
            Identity::Y3ClosedForm => "y3_closed_form",
            Identity::Y4ClosedForm => "y4_closed_form",
            Identity::Dn3RootRational => "dn3_root_rational",
            Identity::Dn3RootRadicand => "dn3_root_radicand",
        }
    }

    pub fn from_name(name: &str) -> Option<Identity> {
        Self::ALL.into_iter().find(|id| id.name() == name)
    }

    /// Univariate in `n`, evaluated at `(n+1, n-3)`.
    pub fn is_line(self) -> bool {
        matches!(self, Identity::Dn3RootRational | Identity::Dn3RootRadicand)
    }

    /// `(lhs, rhs)` pairs; the identity holds when every pair agrees.
    pub fn sides<S: Scalar>(self, f: &Forms, p: &Point<S>) -> Vec<(S, S)> {
        let zero = || S::int(0);
        match self {
            Identity::Delta1ClosedForm => vec![(f.delta1(p), f.delta1_closed(p))],
            Identity::Delta2ClosedForm => vec![(f.delta2(p), f.delta2_closed(p))],
            Identity::Represent1 => f.represent1_residual(p).into_iter().map(|r| (r, zero())).collect(),
            Identity::Represent2 => f.represent2_residual(p).into_iter().map(|r| (r, zero())).collect(),
            Identity::KDifference => vec![(f.k_lhs(p), f.k_rhs(p))],
            Identity::LDifference => {
                let (l, r) = (f.l_lhs(p), f.l_rhs(p));
                vec![(l.a, r.a), (l.b, r.b)]
            }
            Identity::LSquareDifference => vec![(f.lsq_lhs(p), f.lsq_rhs(p))],
            Identity::D1ClosedForm => vec![(f.d1(p), f.d1_closed(p))],
            Identity::E1Factorization => vec![(f.e1(p), f.e1_closed(p))],
            Identity::F1Factorization => vec![(f.f1(p), f.f1_closed(p))],
            Identity::PIdentity => vec![(f.p_lhs(p), f.p_rhs(p))],
            Identity::G1H1Identity => vec![(f.g1h1_lhs(p), f.g1h1_rhs(p))],
            Identity::Y3ClosedForm => vec![(f.y3(p), f.y3_closed(p))],
            Identity::Y4ClosedForm => vec![(f.y4(p), f.y4_closed(p))],
            Identity::Dn3RootRational => vec![f.dn3_root_rational(p)],
            Identity::Dn3RootRadicand => vec![f.dn3_root_radicand(p)],
        }
    }

    /// Degree bound, per variable, of the numerator of `lhs - rhs`;
    /// `None` when it is identically zero by construction.
    pub fn degree_bound(self, f: &Forms) -> Option<(u32, u32)> {
        let base = Point::<DegreeBound>::symbolic();
        self.sides(f, &base)
            .into_iter()
            .filter_map(|(l, r)| (l - r).numerator_degree())
            .reduce(|a, b| (a.0.max(b.0), a.1.max(b.1)))
    }

    pub fn default_grid(self) -> Grid {
        if self.is_line() {
            Grid::Line { n_lo: 4, n_hi: 40 }
        } else {
            Grid::Triangle { m_lo: 3, m_hi: 40 }
        }
    }
}

/// Evaluation points: a triangle `m_lo <= m <= m_hi, 1 <= i <= m-1`, or a
/// line of `n` values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Grid {
    Triangle { m_lo: i64, m_hi: i64 },
    Line { n_lo: i64, n_hi: i64 },
}

impl Grid {
    pub fn points(&self) -> Vec<(i64, i64)> {
        match *self {
            Grid::Triangle { m_lo, m_hi } => (m_lo..=m_hi)
                .flat_map(|m| (1..m).map(move |i| (m, i)))
                .collect(),
            Grid::Line { n_lo, n_hi } => (n_lo..=n_hi).map(|n| (n, 0)).collect(),
        }
    }

    /// A polynomial with these degrees vanishing on the grid is zero.
    pub fn certifies(&self, deg: (u32, u32)) -> bool {
        let (dm, di) = (i64::from(deg.0), i64::from(deg.1));
        match *self {
            Grid::Triangle { m_lo, m_hi } => {
                let rows = (m_lo..=m_hi).filter(|m| m - 1 > di).count() as i64;
                rows > dm
            }
            Grid::Line { n_lo, n_hi } => n_hi - n_lo + 1 > dm,
        }
    }

    /// Smallest enlargement (upper end only) that certifies `deg`.
    pub fn extended_for(&self, deg: (u32, u32)) -> Grid {
        let mut g = *self;
        while !g.certifies(deg) {
            g = match g {
                Grid::Triangle { m_lo, m_hi } => Grid::Triangle { m_lo, m_hi: m_hi + 1 },
                Grid::Line { n_lo, n_hi } => Grid::Line { n_lo, n_hi: n_hi + 1 },
            };
        }
        g
    }

    fn upper(&self) -> i64 {
        match *self {
            Grid::Triangle { m_hi, .. } => m_hi,
            Grid::Line { n_hi, .. } => n_hi,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub grid: Grid,
}

impl IdentityCheck {
    pub fn new(identity: Identity) -> Self {
        IdentityCheck {
            identity,
            grid: identity.default_grid(),
        }
    }

    pub fn with_grid(identity: Identity, grid: Grid) -> Self {
        IdentityCheck { identity, grid }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    #[serde(flatten)]
    pub report: VerificationReport,
    pub requested_grid: Grid,
    pub grid: Grid,
    pub degree_bound: Option<(u32, u32)>,
    pub certified: bool,
}

/// Exact comparison of both sides at each point.
pub fn verify_identity_at(f: &Forms, identity: Identity, points: &[(i64, i64)]) -> VerificationReport {
    let upper = points.iter().map(|p| p.0).max().unwrap_or(0);
    let mut report = VerificationReport::new(identity.name(), upper.max(0) as u64);
    for &(m, i) in points {
        let pt = Point::at(m, i);
        for (lhs, rhs) in identity.sides(f, &pt) {
            report.record(lhs == rhs, || Violation::rational(i, &lhs, &rhs).at_m(m));
        }
    }
    report
}

/// Runs the check, enlarging the grid first if it is too small to certify.
pub fn verify_identity(f: &Forms, check: &IdentityCheck) -> IdentityReport {
    let deg = check.identity.degree_bound(f);
    let grid = match deg {
        Some(d) => check.grid.extended_for(d),
        None => check.grid,
    };
    let mut report = verify_identity_at(f, check.identity, &grid.points());
    report.m = grid.upper().max(0) as u64;
    if grid != check.grid {
        report.note(format!("grid enlarged to upper end {} to exceed the degree bound", grid.upper()));
    }
    match deg {
        Some((dm, di)) => report.note(format!("numerator degree at most {dm} in m, {di} in i")),
        None => report.note("difference vanishes identically by construction"),
    }
    let certified = report.pass;
    IdentityReport {
        report,
        requested_grid: check.grid,
        grid,
        degree_bound: deg,
        certified,
    }
}

/// Every certified identity on its default grid.
pub fn verify_all_identities(f: &Forms) -> Vec<IdentityReport> {
    Identity::ALL
        .iter()
        .map(|id| verify_identity(f, &IdentityCheck::new(*id)))
        .collect()
}

/// The i = m-3 quadratic form against its closed form, from rows.
pub fn verify_g_identity(f: &Forms, rows: &RowTable, m_lo: u64, m_hi: u64) -> VerificationReport {
    let mut report = VerificationReport::new("g_identity", m_hi);
    for m in m_lo.max(4)..=m_hi.min(rows.m_max().saturating_sub(1)) {
        let mi = m as i64;
        let i = mi - 3;
        let pt = Point::at(mi, i);
        let a = rows.row(m).get(i).clone();
        let b = rows.row(m + 1).get(i).clone();
        let lhs = f.u(&pt) * &b * &b + f.v(&pt) * &a * &b + f.w(&pt) * &a * &a;
        let c = Rational::from_integer(binomial(2 * mi + 2, mi + 1).expect("nonnegative"));
        let four_m = Rational::from_integer(BigInt::from(4).pow(m as u32));
        let den = int(9216) * int((2 * mi + 1).pow(2)) * int((2 * mi - 1).pow(2)) * int((2 * mi - 3).pow(2));
        let rhs = int((mi + 1).pow(2)) * int(mi - 2) * f.table().poly("g").eval_at(mi, 0) / den * &c * &c / four_m;
        report.record(lhs == rhs, || Violation::rational(i, &lhs, &rhs).at_m(mi));
    }
    report
}

/// `d_{n-3}(n+2)/d_{n-3}(n+1)` against its closed form, from rows.
pub fn verify_dn3_ratio(f: &Forms, rows: &RowTable, n_lo: u64, n_hi: u64) -> VerificationReport {
    let mut report = VerificationReport::new("dn3_ratio", n_hi);
    for n in n_lo.max(4)..=n_hi.min(rows.m_max().saturating_sub(2)) {
        let ni = n as i64;
        let lhs = rows.row(n + 2).get(ni - 3) / rows.row(n + 1).get(ni - 3);
        let rhs = f.table().poly("DN3_RATIO_NUM").eval_at(ni, 0) / f.table().poly("DN3_RATIO_DEN").eval_at(ni, 0);
        report.record(lhs == rhs, || Violation::rational(ni - 3, &lhs, &rhs).at_m(ni));
    }
    report
}

// ---------------------------------------------------------------- sign claims

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Positive,
    Negative,
    NonNegative,
}

impl Sign {
    fn holds(self, s: i8) -> bool {
        match self {
            Sign::Positive => s > 0,
            Sign::Negative => s < 0,
            Sign::NonNegative => s >= 0,
        }
    }

    fn relation(self) -> &'static str {
        match self {
            Sign::Positive => "> 0",
            Sign::Negative => "< 0",
            Sign::NonNegative => ">= 0",
        }
    }
}

/// Admissible points at a given `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    /// `1 <= i <= m-1`.
    Interior,
    /// `i < (m^2/2)^{1/3} - m^{1/3}`.
    BelowComposite,
    /// `(m^2/2)^{1/3} - m^{1/3} <= i <= (m^2/2)^{1/3}`.
    CompositeStrip,
    /// `m^2 <= 2 i^3` and `i^3 <= m^2`.
    UpperCubeStrip,
    /// `m^{2/3} <= i <= m-1`.
    CubeAtLeastSquare,
    /// `m^{2/3} <= i <= m-4`.
    CubeAtLeastSquareGap4,
    /// Univariate in `m`.
    Line,
}

impl Region {
    pub fn points(self, m: i64) -> Vec<i64> {
        if self == Region::Line {
            return vec![0];
        }
        (1..m).filter(|&i| self.contains(m, i)).collect()
    }

    pub fn contains(self, m: i64, i: i64) -> bool {
        let (m_u, i_u) = (m as u64, i as u64);
        match self {
            Region::Line => true,
            Region::Interior => 1 <= i && i < m,
            Region::BelowComposite => below_composite_threshold(m_u, i_u),
            Region::CompositeStrip => {
                !below_composite_threshold(m_u, i_u) && twice_cube_at_most_square(m_u, i_u)
            }
            Region::UpperCubeStrip => {
                (2 * i_u.pow(3) >= m_u * m_u) && (i_u.pow(3) <= m_u * m_u) && i < m
            }
            Region::CubeAtLeastSquare => cube_at_least_square(m_u, i_u) && i < m,
            Region::CubeAtLeastSquareGap4 => cube_at_least_square(m_u, i_u) && i <= m - 4,
        }
    }
}

type FamilyEval = fn(&Forms, i64, i64) -> Vec<SurdExpr>;

/// Claims whose quantities come from one evaluation per point.
#[derive(Clone, Copy)]
pub struct ClaimFamily {
    pub name: &'static str,
    pub region: Region,
    pub m_min: i64,
    pub claims: &'static [(&'static str, Sign)],
    eval: FamilyEval,
}

fn rat(x: Rational) -> SurdExpr {
    SurdExpr::rational(x)
}

fn eval_g_delta1(f: &Forms, m: i64, i: i64) -> Vec<SurdExpr> {
    let p = Point::at(m, i);
    vec![rat(f.poly("G", &p)), rat(f.delta1(&p))]
}

fn eval_sec3(f: &Forms, m: i64, i: i64) -> Vec<SurdExpr> {
    let p = Point::at(m, i);
    vec![
        rat(f.a(&p)),
        rat(f.poly("K", &p)),
        l_value(f, m, i),
        rat(f.poly("L_SQDIFF", &p)),
    ]
}

fn eval_sec4(f: &Forms, m: i64, i: i64) -> Vec<SurdExpr> {
    let p = Point::at(m, i);
    vec![
        rat(f.u(&p)),
        rat(f.v(&p)),
        rat(f.y1(&p)),
        rat(f.y2(&p)),
        rat(f.y3(&p)),
        rat(f.y4(&p)),
    ]
}

fn eval_case1(f: &Forms, m: i64, i: i64) -> Vec<SurdExpr> {
    let p = Point::at(m, i);
    vec![rat(f.poly("S1", &p)), rat(f.poly("N1", &p))]
}

fn eval_x(f: &Forms, m: i64, i: i64) -> Vec<SurdExpr> {
    let p = Point::at(m, i);
    vec![rat(f.poly("X", &p)), rat(f.delta2(&p))]
}

fn eval_case3(f: &Forms, m: i64, i: i64) -> Vec<SurdExpr> {
    let p = Point::at(m, i);
    vec![rat(f.poly("P", &p)), rat(f.poly("G1", &p)), rat(f.poly("H1", &p))]
}

fn eval_z(f: &Forms, m: i64, i: i64) -> Vec<SurdExpr> {
    f.z(&Point::at(m, i)).into_iter().map(rat).collect()
}

fn eval_g(f: &Forms, n: i64, _: i64) -> Vec<SurdExpr> {
    vec![rat(f.table().poly("g").eval_at(n, 0))]
}

fn eval_f_radicand(f: &Forms, n: i64, _: i64) -> Vec<SurdExpr> {
    vec![rat(int(n - 3) * f.table().poly("f").eval_at(n, 0))]
}

/// `L(m, i)` as an exact surd.
pub fn l_value(f: &Forms, m: i64, i: i64) -> SurdExpr {
    let p = Point::at(m, i);
    let c1 = f.c1(&p).numer().clone();
    SurdExpr::from_int_radicand(f.poly("L_RAT", &p), f.poly("L_SURD", &p), c1)
        .expect("4i^2+4m+1 is positive")
}

pub const FAMILIES: [ClaimFamily; 10] = [
    ClaimFamily {
        name: "g_delta1",
        region: Region::Interior,
        m_min: 126,
        claims: &[("G", Sign::Positive), ("Delta1", Sign::Positive)],
        eval: eval_g_delta1,
    },
    ClaimFamily {
        name: "abc_forms",
        region: Region::Interior,
        m_min: 2,
        claims: &[
            ("A", Sign::Negative),
            ("K", Sign::Positive),
            ("L", Sign::Positive),
            ("L_SQDIFF", Sign::Positive),
        ],
        eval: eval_sec3,
    },
    ClaimFamily {
        name: "uvw_forms",
        region: Region::Interior,
        m_min: 2,
        claims: &[
            ("U", Sign::Positive),
            ("V", Sign::Negative),
            ("Y1", Sign::Positive),
            ("Y2", Sign::Positive),
            ("Y3", Sign::Positive),
            ("Y4", Sign::Positive),
        ],
        eval: eval_sec4,
    },
    ClaimFamily {
        name: "case1",
        region: Region::BelowComposite,
        m_min: 15,
        claims: &[("S1", Sign::Negative), ("N1", Sign::Negative)],
        eval: eval_case1,
    },
    ClaimFamily {
        name: "case2",
        region: Region::CompositeStrip,
        m_min: 50,
        claims: &[("X_case2", Sign::Negative), ("Delta2_case2", Sign::Negative)],
        eval: eval_x,
    },
    ClaimFamily {
        name: "cube_region",
        region: Region::CubeAtLeastSquare,
        m_min: 19,
        claims: &[("X_cube", Sign::Positive), ("Delta2_cube", Sign::Positive)],
        eval: eval_x,
    },
    ClaimFamily {
        name: "case3",
        region: Region::UpperCubeStrip,
        m_min: 2,
        claims: &[("P", Sign::Positive), ("G1", Sign::Positive), ("H1", Sign::Positive)],
        eval: eval_case3,
    },
    ClaimFamily {
        name: "z_signs",
        region: Region::CubeAtLeastSquareGap4,
        m_min: 273,
        claims: &[
            ("Z1", Sign::Negative),
            ("Z2", Sign::Negative),
            ("Z3", Sign::Negative),
            ("Z4", Sign::Positive),
            ("Z5", Sign::Positive),
            ("Z6", Sign::Positive),
        ],
        eval: eval_z,
    },
    ClaimFamily {
        name: "g_closing",
        region: Region::Line,
        m_min: 273,
        claims: &[("g", Sign::Positive)],
        eval: eval_g,
    },
    ClaimFamily {
        name: "f_radicand",
        region: Region::Line,
        m_min: 273,
        claims: &[("f_radicand", Sign::NonNegative)],
        eval: eval_f_radicand,
    },
];

/// Sampled `m` values and the stride in `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSpec {
    pub ms: Vec<i64>,
    pub i_stride: i64,
}

impl SampleSpec {
    pub fn range(lo: i64, hi: i64) -> Self {
        SampleSpec {
            ms: (lo..=hi).collect(),
            i_stride: 1,
        }
    }

    pub fn list(ms: &[i64]) -> Self {
        SampleSpec {
            ms: ms.to_vec(),
            i_stride: 1,
        }
    }

    pub fn with_stride(mut self, stride: i64) -> Self {
        self.i_stride = stride.max(1);
        self
    }
}

fn abs_surd(x: &SurdExpr) -> SurdExpr {
    if x.sign() < 0 {
        x.neg()
    } else {
        x.clone()
    }
}

impl ClaimFamily {
    pub fn find(claim: &str) -> Option<(ClaimFamily, usize)> {
        FAMILIES.iter().find_map(|fam| {
            fam.claims
                .iter()
                .position(|(n, _)| *n == claim)
                .map(|k| (*fam, k))
        })
    }

    pub fn claim_names() -> impl Iterator<Item = &'static str> {
        FAMILIES.iter().flat_map(|f| f.claims.iter().map(|c| c.0))
    }

    /// One report per claim; `m` values below the region start are ignored.
    pub fn verify(&self, f: &Forms, sample: &SampleSpec) -> Vec<VerificationReport> {
        let ms: Vec<i64> = sample.ms.iter().copied().filter(|&m| m >= self.m_min).collect();
        let top = ms.iter().copied().max().unwrap_or(self.m_min).max(0) as u64;
        let mut reports: Vec<VerificationReport> =
            self.claims.iter().map(|(n, _)| VerificationReport::new(*n, top)).collect();
        let mut witness: Vec<Option<(SurdExpr, i64, i64)>> = vec![None; self.claims.len()];
        for &m in &ms {
            for (k, i) in self.region.points(m).into_iter().enumerate() {
                if k as i64 % sample.i_stride != 0 {
                    continue;
                }
                let values = (self.eval)(f, m, i);
                for (c, ((_, sign), v)) in self.claims.iter().zip(values).enumerate() {
                    reports[c].record(sign.holds(v.sign()), || {
                        Violation::text(i, v.to_string(), sign.relation()).at_m(m)
                    });
                    let mag = abs_surd(&v);
                    let better = witness[c]
                        .as_ref()
                        .is_none_or(|(w, _, _)| surd_compare(&mag, w) == -1);
                    if better {
                        witness[c] = Some((mag, m, i));
                    }
                }
            }
        }
        for (r, w) in reports.iter_mut().zip(witness) {
            if let Some((mag, m, i)) = w {
                r.note(format!("smallest magnitude {mag} at m={m}, i={i}"));
            }
            if let (Some(lo), Some(hi)) = (ms.first(), ms.last()) {
                r.note(format!("finite evidence on sampled m in [{lo}, {hi}], not a proof"));
            }
        }
        reports
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown sign claim {0}")]
pub struct UnknownClaim(pub String);

pub fn verify_sign_claim(f: &Forms, claim: &str, sample: &SampleSpec) -> Result<VerificationReport, UnknownClaim> {
    let (fam, k) = ClaimFamily::find(claim).ok_or_else(|| UnknownClaim(claim.to_string()))?;
    Ok(fam.verify(f, sample).swap_remove(k))
}

/// The term-group inequalities behind `G > 0`, case by case.
pub fn g_case_structure(m: i64) -> VerificationReport {
    let mut report = VerificationReport::new("g_case_structure", m.max(0) as u64);
    let mb = BigInt::from(m);
    let m2 = &mb * &mb;
    for i in 1..m {
        let ib = BigInt::from(i);
        let i3 = ib.pow(3);
        let g1 = &m2 * (BigInt::from(2) * &i3 - &m2).pow(2);
        let g2 = BigInt::from(56) * ib.pow(6) * &mb - BigInt::from(24) * &i3 * mb.pow(3);
        let g3 = BigInt::from(20) * ib.pow(5) * &m2 - BigInt::from(2) * ib.pow(2) * mb.pow(4);
        let m5 = mb.pow(5);
        let m6 = mb.pow(6);
        let checks: Vec<(bool, &str)> = if BigInt::from(7) * &i3 >= BigInt::from(3) * &m2 {
            vec![
                (!g1.is_negative(), "case1: m^2(2i^3-m^2)^2 >= 0"),
                (!g2.is_negative(), "case1: 56i^6m-24i^3m^3 >= 0"),
                (g3.is_positive(), "case1: 20i^5m^2-2i^2m^4 > 0"),
            ]
        } else if BigInt::from(10) * &i3 > m2 {
            vec![
                (BigInt::from(49) * &g1 >= m6, "case2: m^2(2i^3-m^2)^2 >= m^6/49"),
                (BigInt::from(7) * &g2 >= BigInt::from(-18) * &m5, "case2: 56i^6m-24i^3m^3 >= -18m^5/7"),
                (g3.is_positive(), "case2: 20i^5m^2-2i^2m^4 > 0"),
            ]
        } else {
            // g3 > -2 m^{16/3}  <=>  (-g3)^3 < 8 m^16 when g3 < 0
            let third = !g3.is_negative() || (-&g3).pow(3) < BigInt::from(8) * mb.pow(16);
            vec![
                (BigInt::from(25) * &g1 >= BigInt::from(16) * &m6, "case3: m^2(2i^3-m^2)^2 >= 16m^6/25"),
                (BigInt::from(25) * &g2 >= BigInt::from(-46) * &m5, "case3: 56i^6m-24i^3m^3 >= -46m^5/25"),
                (third, "case3: 20i^5m^2-2i^2m^4 > -2m^(16/3)"),
            ]
        };
        for (ok, what) in checks {
            report.record(ok, || Violation::text(i, what, "false").at_m(m));
        }
    }
    // the two closing lower bounds
    let m5 = mb.pow(5);
    let case2_bound = &m5 * (&mb - BigInt::from(126));
    match case2_bound.cmp(&BigInt::zero()) {
        Ordering::Less => report.note("case2 lower bound m^6/49 - 18m^5/7 is negative at this m"),
        Ordering::Equal => report.note("case2 lower bound m^6/49 - 18m^5/7 is exactly 0 at this m; strictness comes from the third group"),
        Ordering::Greater => {}
    }
    if m >= 10 {
        // 16m^6/25 - 46m^5/25 > 2 m^{16/3}  <=>  ((16m^6 - 46m^5)/50)^3 > m^16
        let lhs = Rational::new(BigInt::from(16) * mb.pow(6) - BigInt::from(46) * &m5, BigInt::from(50));
        let ok = lhs.is_positive() && lhs.pow(3) > Rational::from_integer(mb.pow(16));
        report.record(ok, || Violation::text(0, "16m^6/25 - 46m^5/25 - 2m^(16/3)", "> 0 fails").at_m(m));
    }
    report
}
