//! The named rational functions of `(m, i)`, each written once over
//! [`Scalar`] so the same code yields exact values and degree bounds.

use super::poly::PolyTable;
use super::scalar::{Adjoin, Point, Scalar};

fn sq<S: Scalar>(x: S) -> S {
    x.clone() * x
}

fn k<S: Scalar>(c: i64) -> S {
    S::int(c)
}

/// Linear form `ca*a + cb*b` in the unknowns `a = d_i(m)`, `b = d_i(m+1)`.
#[derive(Clone)]
struct Lin2<S> {
    ca: S,
    cb: S,
}

impl<S: Scalar> Lin2<S> {
    fn a() -> Self {
        Lin2 { ca: k(1), cb: k(0) }
    }

    fn scale(&self, c: &S) -> Self {
        Lin2 {
            ca: self.ca.clone() * c.clone(),
            cb: self.cb.clone() * c.clone(),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Lin2 {
            ca: self.ca.clone() - o.ca.clone(),
            cb: self.cb.clone() - o.cb.clone(),
        }
    }

    /// Coefficients of `a^2`, `ab`, `b^2` in the product.
    fn times(&self, o: &Self) -> Quad2<S> {
        Quad2 {
            aa: self.ca.clone() * o.ca.clone(),
            ab: self.ca.clone() * o.cb.clone() + self.cb.clone() * o.ca.clone(),
            bb: self.cb.clone() * o.cb.clone(),
        }
    }
}

/// Quadratic form in `a`, `b`.
#[derive(Clone)]
struct Quad2<S> {
    aa: S,
    ab: S,
    bb: S,
}

impl<S: Scalar> Quad2<S> {
    fn scale(&self, c: &S) -> Self {
        Quad2 {
            aa: self.aa.clone() * c.clone(),
            ab: self.ab.clone() * c.clone(),
            bb: self.bb.clone() * c.clone(),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Quad2 {
            aa: self.aa.clone() - o.aa.clone(),
            ab: self.ab.clone() - o.ab.clone(),
            bb: self.bb.clone() - o.bb.clone(),
        }
    }

    fn into_vec(self) -> Vec<S> {
        vec![self.aa, self.ab, self.bb]
    }
}

/// Evaluators over one polynomial table.
#[derive(Clone, Copy)]
pub struct Forms<'t> {
    table: &'t PolyTable,
}

impl<'t> Forms<'t> {
    pub fn new(table: &'t PolyTable) -> Self {
        Forms { table }
    }

    pub fn table(&self) -> &'t PolyTable {
        self.table
    }

    pub fn poly<S: Scalar>(&self, name: &str, p: &Point<S>) -> S {
        self.table.poly(name).eval(p)
    }

    // quadratic form in d_i(m+1), d_i(m) for the L-ratio lower bound

    pub fn a<S: Scalar>(&self, p: &Point<S>) -> S {
        let i = p.i.clone();
        -(sq(p.lin(1, 0, 1)) * sq(p.lin(1, -1, 1)) * self.poly("D", p))
            / (p.lin(1, 1, 0) * sq(i) * p.lin(0, 1, 1))
    }

    pub fn b<S: Scalar>(&self, p: &Point<S>) -> S {
        let i = p.i.clone();
        p.lin(-1, 1, -1) * p.lin(1, 0, 1) * self.poly("E", p)
            / (p.lin(1, 1, 0) * sq(i) * p.lin(0, 1, 1))
    }

    pub fn c<S: Scalar>(&self, p: &Point<S>) -> S {
        let i = p.i.clone();
        self.poly("F", p) / (k::<S>(4) * p.lin(1, 1, 0) * sq(i) * p.lin(0, 1, 1))
    }

    pub fn delta1<S: Scalar>(&self, p: &Point<S>) -> S {
        sq(self.b(p)) - k::<S>(4) * self.a(p) * self.c(p)
    }

    pub fn delta1_closed<S: Scalar>(&self, p: &Point<S>) -> S {
        let inner = k::<S>(4) * sq(p.lin(1, 1, 0)) * self.poly("G", p) + self.poly("H", p);
        sq(p.lin(1, -1, 1)) * sq(p.lin(1, 0, 1)) * inner
            / (sq(p.i.clone()) * sq(p.lin(1, 1, 0)) * sq(p.lin(0, 1, 1)))
    }

    /// `(4m^2+7m+i+3)/((m+1)(m+1-i))`, twice the lower ratio bound.
    pub fn kp2<S: Scalar>(&self, p: &Point<S>) -> S {
        let m = p.m.clone();
        (k::<S>(4) * m.clone() * m.clone() + k::<S>(7) * m + p.lin(0, 1, 3))
            / (p.lin(1, 0, 1) * p.lin(1, -1, 1))
    }

    pub fn k_lhs<S: Scalar>(&self, p: &Point<S>) -> S {
        self.delta1_closed(p) - sq(self.a(p) * self.kp2(p) + self.b(p))
    }

    pub fn k_rhs<S: Scalar>(&self, p: &Point<S>) -> S {
        sq(p.lin(1, -1, 1)) * sq(p.lin(1, 0, 1)) * self.poly("K", p)
            / (sq(p.i.clone()) * sq(p.lin(1, 1, 0)) * sq(p.lin(0, 1, 1)))
    }

    /// Difference against the upper ratio bound, as `x + y*sqrt(C1)`.
    pub fn l_lhs<S: Scalar>(&self, p: &Point<S>) -> Adjoin<S> {
        let r = self.c1(p);
        let root = Adjoin::new(self.b1(p), p.i.clone())
            .scale(&(self.a(p) / (p.lin(1, 0, 1) * p.lin(1, -1, 1))))
            .add(&Adjoin::rational(self.b(p)));
        Adjoin::rational(self.delta1_closed(p)).sub(&root.mul(&root, &r))
    }

    pub fn l_rhs<S: Scalar>(&self, p: &Point<S>) -> Adjoin<S> {
        let factor = sq(p.lin(1, -1, 1)) * sq(p.lin(1, 0, 1))
            / (sq(p.i.clone()) * p.lin(1, 1, 0) * sq(p.lin(0, 1, 1)));
        Adjoin::new(self.poly("L_RAT", p), self.poly("L_SURD", p)).scale(&factor)
    }

    pub fn lsq_lhs<S: Scalar>(&self, p: &Point<S>) -> S {
        sq(self.poly("L_SURD", p)) * self.c1(p) - sq(self.poly("L_RAT", p))
    }

    pub fn lsq_rhs<S: Scalar>(&self, p: &Point<S>) -> S {
        k::<S>(4) * sq(self.poly("M1", p)) * self.poly("L_SQDIFF", p)
    }

    // quadratic form for the reverse ratio bound

    pub fn u<S: Scalar>(&self, p: &Point<S>) -> S {
        sq(p.lin(1, 0, 1)) * p.lin(1, -1, 1) * self.poly("R", p) / (p.i.clone() * sq(p.lin(1, 1, 0)))
    }

    pub fn v<S: Scalar>(&self, p: &Point<S>) -> S {
        p.lin(1, 0, 1) * self.poly("S", p)
            / (p.i.clone() * p.lin(1, 1, -1) * sq(p.lin(1, 1, 0)))
    }

    pub fn w<S: Scalar>(&self, p: &Point<S>) -> S {
        self.poly("T", p) / (k::<S>(4) * p.i.clone() * p.lin(1, 1, -1) * sq(p.lin(1, 1, 0)))
    }

    pub fn delta2<S: Scalar>(&self, p: &Point<S>) -> S {
        sq(self.v(p)) - k::<S>(4) * self.u(p) * self.w(p)
    }

    pub fn delta2_closed<S: Scalar>(&self, p: &Point<S>) -> S {
        sq(p.lin(1, 0, 1)) * self.poly("X", p)
            / (p.i.clone() * sq(p.lin(1, 1, 0)) * sq(p.lin(1, 1, -1)))
    }

    pub fn a1<S: Scalar>(&self, p: &Point<S>) -> S {
        k::<S>(2) * p.lin(1, 0, 1) * p.lin(1, -1, 1)
    }

    pub fn b1<S: Scalar>(&self, p: &Point<S>) -> S {
        let (m, i) = (p.m.clone(), p.i.clone());
        k::<S>(4) * m.clone() * m.clone() + k::<S>(7) * m + k(3) - k::<S>(2) * i.clone() * i
    }

    pub fn c1<S: Scalar>(&self, p: &Point<S>) -> S {
        k::<S>(4) * sq(p.i.clone()) + p.lin(4, 0, 1)
    }

    pub fn d1<S: Scalar>(&self, p: &Point<S>) -> S {
        -(self.v(p) * self.a1(p)) - k::<S>(2) * self.u(p) * self.b1(p)
    }

    pub fn d1_closed<S: Scalar>(&self, p: &Point<S>) -> S {
        let (m, i) = (p.m.clone(), p.i.clone());
        let quad = i.clone() * i - p.i.clone() + m.clone() + m.clone() * m;
        k::<S>(2) * sq(p.lin(1, 0, 1)) * p.lin(1, -1, 1) * p.lin(2, 0, 1) * quad * sq(p.lin(1, 1, 2))
            / (sq(p.lin(1, 1, 0)) * p.lin(1, 1, -1))
    }

    pub fn e1<S: Scalar>(&self, p: &Point<S>) -> S {
        sq(self.d1(p))
            - sq(self.a1(p)) * self.delta2(p)
            - k::<S>(4) * sq(p.i.clone()) * sq(self.u(p)) * self.c1(p)
    }

    pub fn e1_closed<S: Scalar>(&self, p: &Point<S>) -> S {
        -(k::<S>(8) * sq(p.lin(1, -1, 1)) * sq(sq(p.lin(1, 0, 1))) * self.poly("R1", p) * self.poly("S1", p))
            / (p.i.clone() * p.lin(1, 1, -1) * p.lin(1, 1, 0).pow(3))
    }

    pub fn f1<S: Scalar>(&self, p: &Point<S>) -> S {
        sq(self.e1(p))
            - k::<S>(16) * sq(p.i.clone()) * sq(self.u(p)) * sq(self.a1(p)) * self.delta2(p) * self.c1(p)
    }

    pub fn f1_closed<S: Scalar>(&self, p: &Point<S>) -> S {
        -(k::<S>(256)
            * p.lin(1, -1, 1).pow(4)
            * p.lin(1, 0, 1).pow(8)
            * sq(self.poly("M1", p))
            * self.poly("N1", p))
            / (sq(p.i.clone()) * sq(p.lin(1, 1, -1)) * p.lin(1, 1, 0).pow(6))
    }

    pub fn p_lhs<S: Scalar>(&self, p: &Point<S>) -> S {
        self.u(p) * self.kp2(p) + self.v(p)
    }

    pub fn p_rhs<S: Scalar>(&self, p: &Point<S>) -> S {
        p.lin(1, 0, 1) * self.poly("P", p) / (sq(p.lin(1, 1, 0)) * p.lin(1, 1, -1))
    }

    pub fn g1h1_lhs<S: Scalar>(&self, p: &Point<S>) -> S {
        sq(self.p_lhs(p)) - self.delta2(p)
    }

    pub fn g1h1_rhs<S: Scalar>(&self, p: &Point<S>) -> S {
        k::<S>(4) * sq(p.lin(1, 0, 1)) * self.poly("G1", p) * self.poly("H1", p)
            / (p.lin(1, 1, 0).pow(4) * p.lin(1, 1, -1) * p.i.clone())
    }

    pub fn y1<S: Scalar>(&self, p: &Point<S>) -> S {
        p.lin(1, 1, 1) * p.lin(4, 0, 3) * p.lin(4, 0, 5)
            / (k::<S>(4) * p.lin(1, -1, 2) * p.lin(1, 0, 1) * p.lin(1, 0, 2))
    }

    pub fn y2<S: Scalar>(&self, p: &Point<S>) -> S {
        let (m, i) = (p.m.clone(), p.i.clone());
        (k::<S>(8) * m.clone() * m.clone() + k::<S>(24) * m + k(19) - k::<S>(4) * i.clone() * i)
            / (k::<S>(2) * p.lin(1, -1, 2) * p.lin(1, 0, 2))
    }

    pub fn y3<S: Scalar>(&self, p: &Point<S>) -> S {
        let q = p.shift_m(1);
        k::<S>(2) * self.u(&q) * self.y2(p) + self.v(&q)
    }

    pub fn y3_closed<S: Scalar>(&self, p: &Point<S>) -> S {
        p.lin(1, 0, 2) * self.poly("Y5", p) / (p.lin(1, 1, 0) * p.i.clone() * p.lin(1, 1, 1))
    }

    pub fn y4<S: Scalar>(&self, p: &Point<S>) -> S {
        sq(self.y3(p)) - self.delta2(&p.shift_m(1))
    }

    pub fn y4_closed<S: Scalar>(&self, p: &Point<S>) -> S {
        sq(p.lin(1, 0, 2)) * self.poly("Y6", p)
            / (sq(p.lin(1, 1, 1)) * sq(p.i.clone()) * p.lin(1, 1, 0))
    }

    /// `[Z1, ..., Z6]`.
    pub fn z<S: Scalar>(&self, p: &Point<S>) -> [S; 6] {
        let q = p.shift_m(1);
        let (u, v) = (self.u(p), self.v(p));
        let (d, d1) = (self.delta2(p), self.delta2(&q));
        let y3 = self.y3(p);
        let z1 = k::<S>(4) * u * self.u(&q) * self.y1(p) + v.clone() * y3.clone();
        let dd = d.clone() * d1.clone();
        let z2 = dd.clone() - sq(z1.clone());
        let z3 = sq(y3.clone()) * d.clone() - sq(v.clone()) * d1.clone();
        let z4 = sq(v.clone()) * d1 + sq(y3.clone()) * d - sq(z1.clone()) - dd.clone();
        let z5 = k::<S>(2) * z1.clone() - k::<S>(2) * v * y3;
        let z6 = sq(z5.clone()) * dd - sq(z4.clone());
        [z1, z2, z3, z4, z5, z6]
    }

    /// Recurrence-based neighbours of `a = d_i(m)` as linear forms in `a`, `b = d_i(m+1)`:
    /// `(d_{i-2}, d_{i-1}, d_{i+1}, d_{i+2})`, all at row `m`.
    fn neighbours<S: Scalar>(&self, p: &Point<S>) -> [Lin2<S>; 4] {
        let i = p.i.clone();
        let ip1 = p.lin(0, 1, 1);
        let ip2 = p.lin(0, 1, 2);
        let dip1 = Lin2 {
            ca: p.lin(4, -2, 3) * p.lin(1, 1, 1) / (k::<S>(2) * i.clone() * ip1.clone()),
            cb: -(p.lin(1, -1, 1) * p.lin(1, 0, 1)) / (i.clone() * ip1.clone()),
        };
        let dip2 = dip1
            .scale(&(p.lin(2, 0, 1) / ip2.clone()))
            .sub(&Lin2::a().scale(&(p.lin(1, -1, 0) * p.lin(1, 1, 1) / (ip1 * ip2))));
        let dim1 = Lin2 {
            ca: -(p.lin(4, 2, 3) / (k::<S>(2) * p.lin(1, 1, 0))),
            cb: p.lin(1, 0, 1) / p.lin(1, 1, 0),
        };
        let den = p.lin(1, -1, 2) * p.lin(1, 1, -1);
        let dim2 = dim1
            .scale(&(p.lin(0, 1, -1) * p.lin(2, 0, 1) / den.clone()))
            .sub(&Lin2::a().scale(&(i * p.lin(0, 1, -1) / den)));
        [dim2, dim1, dip1, dip2]
    }

    fn lower_weight<S: Scalar>(&self, p: &Point<S>) -> S {
        p.lin(1, -1, 1) * p.lin(1, -1, 2) * sq(p.lin(1, 1, 2))
    }

    fn upper_weight<S: Scalar>(&self, p: &Point<S>) -> S {
        p.lin(0, 1, 1) * p.lin(0, 1, 2) * sq(p.lin(1, 1, 3))
    }

    /// Coefficients of the first ratio difference minus `A b^2 + B ab + C a^2`.
    pub fn represent1_residual<S: Scalar>(&self, p: &Point<S>) -> Vec<S> {
        let [_, dim1, dip1, dip2] = self.neighbours(p);
        let a = Lin2::a();
        let l_i = a.times(&a).sub(&dim1.times(&dip1));
        let l_next = dip1.times(&dip1).sub(&a.times(&dip2));
        let diff = l_i.scale(&self.lower_weight(p)).sub(&l_next.scale(&self.upper_weight(p)));
        let form = Quad2 {
            aa: self.c(p),
            ab: self.b(p),
            bb: self.a(p),
        };
        diff.sub(&form).into_vec()
    }

    /// Coefficients of the second ratio difference minus `U b^2 + V ab + W a^2`.
    pub fn represent2_residual<S: Scalar>(&self, p: &Point<S>) -> Vec<S> {
        let [dim2, dim1, dip1, _] = self.neighbours(p);
        let a = Lin2::a();
        let l_i = a.times(&a).sub(&dim1.times(&dip1));
        let l_prev = dim1.times(&dim1).sub(&dim2.times(&a));
        let diff = l_i.scale(&self.upper_weight(p)).sub(&l_prev.scale(&self.lower_weight(p)));
        let form = Quad2 {
            aa: self.w(p),
            ab: self.v(p),
            bb: self.u(p),
        };
        diff.sub(&form).into_vec()
    }

    /// `(n+1, n-3)` from a base point whose `m` coordinate is `n`.
    pub fn dn3_point<S: Scalar>(p: &Point<S>) -> Point<S> {
        p.remap((1, 0, 1), (1, 0, -3))
    }

    /// Rational part of the smaller root at `(n+1, n-3)`, both routes.
    pub fn dn3_root_rational<S: Scalar>(&self, p: &Point<S>) -> (S, S) {
        let q = Self::dn3_point(p);
        let lhs = -(self.v(&q) / (k::<S>(2) * self.u(&q)));
        let rhs = self.poly("DN3_ROOT_RAT", p) / self.poly("DN3_ROOT_DEN", p);
        (lhs, rhs)
    }

    /// Square of the surd part of that root, both routes.
    pub fn dn3_root_radicand<S: Scalar>(&self, p: &Point<S>) -> (S, S) {
        let q = Self::dn3_point(p);
        let lhs = self.delta2(&q) / (k::<S>(4) * sq(self.u(&q)));
        let rhs = sq(p.lin(1, 0, -1)) * p.lin(1, 0, -3) * self.poly("f", p)
            / sq(self.poly("DN3_ROOT_DEN", p));
        (lhs, rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{frac, int, Rational};

    fn at(m: i64, i: i64) -> Point<Rational> {
        Point::at(m, i)
    }

    #[test]
    fn kp2_is_twice_lower_bound() {
        let t = PolyTable::builtin();
        let f = Forms::new(&t);
        // lower bound at (2,1) is 17/6
        assert_eq!(f.kp2(&at(2, 1)), frac(17, 3));
    }

    #[test]
    fn d1_closed_at_5_2() {
        let t = PolyTable::builtin();
        let f = Forms::new(&t);
        // 2*36*4*11*(4-2+5+25)*81 / (49*6)
        let expect = Rational::new((2 * 36 * 4 * 11 * 32 * 81).into(), (49 * 6).into());
        assert_eq!(f.d1_closed(&at(5, 2)), expect);
        assert_eq!(f.d1(&at(5, 2)), expect);
    }

    #[test]
    fn c1_and_b1() {
        let t = PolyTable::builtin();
        let f = Forms::new(&t);
        assert_eq!(f.c1(&at(2, 1)), int(13));
        assert_eq!(f.b1(&at(2, 1)), int(31));
        assert_eq!(f.a1(&at(2, 1)), int(12));
    }
}
