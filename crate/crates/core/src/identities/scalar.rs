//! Scalar types the named formulas are evaluated over.
//!
//! Every formula is written once against [`Scalar`]. Evaluating over
//! [`Rational`] gives exact values at a point; evaluating over
//! [`DegreeBound`] gives an upper bound on the degrees of the numerator
//! of the rational function the formula computes.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::exactnum::Rational;

pub trait Scalar:
    Clone
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(c: &BigInt) -> Self;

    /// `form` applied to the base coordinates.
    fn from_affine(form: Affine, base_m: &Self, base_i: &Self) -> Self;

    fn int(c: i64) -> Self {
        Self::constant(&BigInt::from(c))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::int(1);
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for Rational {
    fn constant(c: &BigInt) -> Self {
        Rational::from_integer(c.clone())
    }

    fn from_affine(form: Affine, base_m: &Self, base_i: &Self) -> Self {
        Self::int(form.a) * base_m.clone() + Self::int(form.b) * base_i.clone() + Self::int(form.c)
    }
}

/// `a*M + b*I + c` in the base variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Affine {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Affine {
    pub const M: Affine = Affine { a: 1, b: 0, c: 0 };
    pub const I: Affine = Affine { a: 0, b: 1, c: 0 };

    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Affine { a, b, c }
    }

    /// Projective normal form: primitive, leading variable coefficient positive.
    fn normalized(self) -> Option<Affine> {
        if self.a == 0 && self.b == 0 {
            return None;
        }
        let g = self.a.gcd(&self.b).gcd(&self.c);
        let s = if self.a < 0 || (self.a == 0 && self.b < 0) { -g } else { g };
        Some(Affine::new(self.a / s, self.b / s, self.c / s))
    }

    fn degrees(&self) -> (u32, u32) {
        (u32::from(self.a != 0), u32::from(self.b != 0))
    }
}

/// Coordinates `(m, i)` given as affine forms in a base point `(M, I)`.
#[derive(Debug, Clone)]
pub struct Point<S> {
    pub m: S,
    pub i: S,
    m_form: Affine,
    i_form: Affine,
    base_m: S,
    base_i: S,
}

impl<S: Scalar> Point<S> {
    pub fn base(base_m: S, base_i: S) -> Self {
        Point {
            m: S::from_affine(Affine::M, &base_m, &base_i),
            i: S::from_affine(Affine::I, &base_m, &base_i),
            m_form: Affine::M,
            i_form: Affine::I,
            base_m,
            base_i,
        }
    }

    fn compose(&self, a: i64, b: i64, c: i64) -> Affine {
        Affine::new(
            a * self.m_form.a + b * self.i_form.a,
            a * self.m_form.b + b * self.i_form.b,
            a * self.m_form.c + b * self.i_form.c + c,
        )
    }

    /// `a*m + b*i + c`.
    pub fn lin(&self, a: i64, b: i64, c: i64) -> S {
        S::from_affine(self.compose(a, b, c), &self.base_m, &self.base_i)
    }

    /// The point `(a1*m + b1*i + c1, a2*m + b2*i + c2)`.
    pub fn remap(&self, mf: (i64, i64, i64), iform: (i64, i64, i64)) -> Self {
        let m_form = self.compose(mf.0, mf.1, mf.2);
        let i_form = self.compose(iform.0, iform.1, iform.2);
        Point {
            m: S::from_affine(m_form, &self.base_m, &self.base_i),
            i: S::from_affine(i_form, &self.base_m, &self.base_i),
            m_form,
            i_form,
            base_m: self.base_m.clone(),
            base_i: self.base_i.clone(),
        }
    }

    pub fn shift_m(&self, k: i64) -> Self {
        self.remap((1, 0, k), (0, 1, 0))
    }
}

impl Point<Rational> {
    pub fn at(m: i64, i: i64) -> Self {
        Point::base(Rational::from_integer(m.into()), Rational::from_integer(i.into()))
    }
}

impl Point<DegreeBound> {
    pub fn symbolic() -> Self {
        Point::base(DegreeBound::unit(), DegreeBound::unit())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Factored {
    lin: BTreeMap<Affine, u32>,
    rest: (u32, u32),
}

impl Factored {
    fn degree(&self) -> (u32, u32) {
        self.lin.iter().fold(self.rest, |(dm, di), (f, e)| {
            let (fm, fi) = f.degrees();
            (dm + fm * e, di + fi * e)
        })
    }

    fn product(&self, other: &Factored) -> Factored {
        let mut lin = self.lin.clone();
        for (f, e) in &other.lin {
            *lin.entry(*f).or_insert(0) += e;
        }
        Factored {
            lin,
            rest: (self.rest.0 + other.rest.0, self.rest.1 + other.rest.1),
        }
    }

    /// Linear factors of `self` not covered by `cover`, plus the opaque part.
    fn degree_outside(&self, cover: &BTreeMap<Affine, u32>) -> (u32, u32) {
        self.lin.iter().fold(self.rest, |(dm, di), (f, e)| {
            let left = e.saturating_sub(cover.get(f).copied().unwrap_or(0));
            let (fm, fi) = f.degrees();
            (dm + fm * left, di + fi * left)
        })
    }
}

fn cancel(num: &mut Factored, den: &mut Factored) {
    let shared: Vec<(Affine, u32)> = num
        .lin
        .iter()
        .filter_map(|(f, e)| den.lin.get(f).map(|d| (*f, (*e).min(*d))))
        .collect();
    for (f, k) in shared {
        for side in [&mut *num, &mut *den] {
            let slot = side.lin.get_mut(&f).expect("shared factor");
            *slot -= k;
            if *slot == 0 {
                side.lin.remove(&f);
            }
        }
    }
}

/// Degree bookkeeping for a rational function `N/D` in `(M, I)`.
///
/// Linear factors are tracked exactly on both sides so that common
/// denominators and cancellations stay tight; whatever is left of the
/// numerator is an opaque polynomial known only by its degree bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBound {
    zero: bool,
    num: Factored,
    den: Factored,
}

impl DegreeBound {
    pub fn unit() -> Self {
        DegreeBound {
            zero: false,
            num: Factored::default(),
            den: Factored::default(),
        }
    }

    fn zero() -> Self {
        DegreeBound {
            zero: true,
            ..Self::unit()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// Degrees in `(M, I)` of the numerator; `None` for the zero function.
    pub fn numerator_degree(&self) -> Option<(u32, u32)> {
        (!self.zero).then(|| self.num.degree())
    }

    pub fn denominator_degree(&self) -> (u32, u32) {
        self.den.degree()
    }

    fn normalize(mut self) -> Self {
        cancel(&mut self.num, &mut self.den);
        self
    }
}

impl Scalar for DegreeBound {
    fn constant(c: &BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self::unit()
        }
    }

    fn from_affine(form: Affine, _: &Self, _: &Self) -> Self {
        match form.normalized() {
            None if form.c == 0 => Self::zero(),
            None => Self::unit(),
            Some(f) => {
                let mut out = Self::unit();
                out.num.lin.insert(f, 1);
                out
            }
        }
    }
}

impl Add for DegreeBound {
    type Output = Self;
    fn add(self, y: Self) -> Self {
        if self.zero {
            return y;
        }
        if y.zero {
            return self;
        }
        let common: BTreeMap<Affine, u32> = self
            .num
            .lin
            .iter()
            .filter_map(|(f, e)| y.num.lin.get(f).map(|d| (*f, (*e).min(*d))))
            .collect();
        let mut lcd = self.den.lin.clone();
        for (f, e) in &y.den.lin {
            let slot = lcd.entry(*f).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let term = |x: &DegreeBound, other_rest: (u32, u32)| {
            let (nm, ni) = x.num.degree_outside(&common);
            let lift = Factored {
                lin: lcd.clone(),
                rest: other_rest,
            }
            .degree_outside(&x.den.lin);
            (nm + lift.0, ni + lift.1)
        };
        let tx = term(&self, y.den.rest);
        let ty = term(&y, self.den.rest);
        DegreeBound {
            zero: false,
            num: Factored {
                lin: common,
                rest: (tx.0.max(ty.0), tx.1.max(ty.1)),
            },
            den: Factored {
                lin: lcd,
                rest: (self.den.rest.0 + y.den.rest.0, self.den.rest.1 + y.den.rest.1),
            },
        }
        .normalize()
    }
}

impl Neg for DegreeBound {
    type Output = Self;
    fn neg(self) -> Self {
        self
    }
}

impl Sub for DegreeBound {
    type Output = Self;
    fn sub(self, y: Self) -> Self {
        self + (-y)
    }
}

impl Mul for DegreeBound {
    type Output = Self;
    fn mul(self, y: Self) -> Self {
        if self.zero || y.zero {
            return Self::zero();
        }
        DegreeBound {
            zero: false,
            num: self.num.product(&y.num),
            den: self.den.product(&y.den),
        }
        .normalize()
    }
}

impl Div for DegreeBound {
    type Output = Self;
    fn div(self, y: Self) -> Self {
        assert!(!y.zero, "division by the zero function");
        if self.zero {
            return self;
        }
        DegreeBound {
            zero: false,
            num: self.num.product(&y.den),
            den: self.den.product(&y.num),
        }
        .normalize()
    }
}

/// `a + b*sqrt(r)` with the radicand `r` supplied to each product.
#[derive(Debug, Clone)]
pub struct Adjoin<S> {
    pub a: S,
    pub b: S,
}

impl<S: Scalar> Adjoin<S> {
    pub fn new(a: S, b: S) -> Self {
        Adjoin { a, b }
    }

    pub fn rational(a: S) -> Self {
        Adjoin { a, b: S::int(0) }
    }

    pub fn add(&self, o: &Self) -> Self {
        Adjoin::new(self.a.clone() + o.a.clone(), self.b.clone() + o.b.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        Adjoin::new(self.a.clone() - o.a.clone(), self.b.clone() - o.b.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        Adjoin::new(self.a.clone() * c.clone(), self.b.clone() * c.clone())
    }

    pub fn div_scalar(&self, c: &S) -> Self {
        Adjoin::new(self.a.clone() / c.clone(), self.b.clone() / c.clone())
    }

    pub fn mul(&self, o: &Self, r: &S) -> Self {
        Adjoin::new(
            self.a.clone() * o.a.clone() + self.b.clone() * o.b.clone() * r.clone(),
            self.a.clone() * o.b.clone() + self.b.clone() * o.a.clone(),
        )
    }
}
