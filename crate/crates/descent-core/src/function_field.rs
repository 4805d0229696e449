//! Functions on a Weierstrass curve: elements a(x) + b(x) y of the
//! function field, with multiplication through the curve relation
//! y^2 = T(x) - L(x) y, where T = x^3 + a2 x^2 + a4 x + a6 and
//! L = a1 x + a3.  Conjugation sends y to -y - L, and the norm
//! f * conj(f) = a^2 - a b L - b^2 T lands in K(x).

use crate::curves::{CurvePoint, RawCurve, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::exact::poly::Poly;
use crate::exact::ratfunc::RatFunc;
use crate::exact::Field;

/// L(x) = a1 x + a3 as a polynomial in x.
pub(crate) fn lpoly<K: Field>(raw: &RawCurve<K>) -> Poly<K> {
    let ctx = raw.ctx();
    Poly::from_coeffs(&ctx, vec![raw.a3.clone(), raw.a1.clone()])
}

/// T(x) = x^3 + a2 x^2 + a4 x + a6 as a polynomial in x.
pub(crate) fn tpoly<K: Field>(raw: &RawCurve<K>) -> Poly<K> {
    let ctx = raw.ctx();
    Poly::from_coeffs(
        &ctx,
        vec![raw.a6.clone(), raw.a4.clone(), raw.a2.clone(), K::one(&ctx)],
    )
}

/// Product of two denominator-free functions (A1 + B1 y)(A2 + B2 y),
/// reduced by the curve relation.  This is the one place the relation is
/// spelled out; everything else routes through it.
pub(crate) fn pair_mul<K: Field>(
    raw: &RawCurve<K>,
    (a1, b1): (&Poly<K>, &Poly<K>),
    (a2, b2): (&Poly<K>, &Poly<K>),
) -> (Poly<K>, Poly<K>) {
    let l = lpoly(raw);
    let t = tpoly(raw);
    let cross = b1.mul(b2);
    let a = a1.mul(a2).add(&cross.mul(&t));
    let b = a1.mul(b2).add(&a2.mul(b1)).sub(&cross.mul(&l));
    (a, b)
}

/// Norm of a denominator-free function: (A + By)(A - BL - By) in K[x].
pub(crate) fn pair_norm<K: Field>(
    raw: &RawCurve<K>,
    (a, b): (&Poly<K>, &Poly<K>),
) -> Poly<K> {
    let l = lpoly(raw);
    let t = tpoly(raw);
    a.mul(a).sub(&a.mul(b).mul(&l)).sub(&b.mul(b).mul(&t))
}

/// An element of the function field of a curve over K, written
/// a(x) + b(x) y with a, b in K(x).
#[derive(Clone, PartialEq, Debug)]
pub struct CurveFunction<K: Field> {
    curve: WeierstrassCurve<K>,
    a: RatFunc<K>,
    b: RatFunc<K>,
}

impl<K: Field> CurveFunction<K> {
    pub fn new(curve: WeierstrassCurve<K>, a: RatFunc<K>, b: RatFunc<K>) -> Self {
        CurveFunction { curve, a, b }
    }

    pub fn from_x_part(curve: WeierstrassCurve<K>, a: RatFunc<K>) -> Self {
        let zero = RatFunc::zero(&a.ctx());
        CurveFunction { curve, a, b: zero }
    }

    pub fn constant(curve: WeierstrassCurve<K>, c: K) -> Self {
        let ctx = c.ctx();
        CurveFunction { curve, a: RatFunc::constant(c), b: RatFunc::zero(&ctx) }
    }

    pub fn x(curve: WeierstrassCurve<K>) -> Self {
        let ctx = curve.ctx();
        CurveFunction { curve, a: RatFunc::var(&ctx), b: RatFunc::zero(&ctx) }
    }

    pub fn y(curve: WeierstrassCurve<K>) -> Self {
        let ctx = curve.ctx();
        CurveFunction { curve, a: RatFunc::zero(&ctx), b: RatFunc::one(&ctx) }
    }

    pub fn curve(&self) -> &WeierstrassCurve<K> {
        &self.curve
    }

    pub fn x_part(&self) -> &RatFunc<K> {
        &self.a
    }

    pub fn y_part(&self) -> &RatFunc<K> {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn same_curve(&self, rhs: &Self) -> Result<()> {
        if self.curve == rhs.curve {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_curve(rhs)?;
        Ok(CurveFunction {
            curve: self.curve.clone(),
            a: self.a.add(&rhs.a),
            b: self.b.add(&rhs.b),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.same_curve(rhs)?;
        Ok(CurveFunction {
            curve: self.curve.clone(),
            a: self.a.sub(&rhs.a),
            b: self.b.sub(&rhs.b),
        })
    }

    pub fn neg(&self) -> Self {
        CurveFunction { curve: self.curve.clone(), a: self.a.neg(), b: self.b.neg() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_curve(rhs)?;
        // clear each factor to a common denominator, multiply the
        // numerator pairs through the curve relation, then reduce
        let (n1a, n1b, d1) = self.cleared();
        let (n2a, n2b, d2) = rhs.cleared();
        let (pa, pb) = pair_mul(self.curve.raw(), (&n1a, &n1b), (&n2a, &n2b));
        let den = d1.mul(&d2);
        Ok(CurveFunction {
            curve: self.curve.clone(),
            a: RatFunc::new(pa, den.clone())?,
            b: RatFunc::new(pb, den)?,
        })
    }

    /// Write self as (A + B y)/D with polynomial A, B, D.
    fn cleared(&self) -> (Poly<K>, Poly<K>, Poly<K>) {
        let d = self.a.denom().mul(self.b.denom());
        let na = self.a.numer().mul(self.b.denom());
        let nb = self.b.numer().mul(self.a.denom());
        (na, nb, d)
    }

    /// Galois conjugate: y -> -y - L.
    pub fn conjugate(&self) -> Self {
        let l = RatFunc::from_poly(lpoly(self.curve.raw()));
        CurveFunction {
            curve: self.curve.clone(),
            a: self.a.sub(&self.b.mul(&l)),
            b: self.b.neg(),
        }
    }

    /// Norm to K(x): self * conjugate(self) = a^2 - a b L - b^2 T.
    pub fn norm_to_base(&self) -> RatFunc<K> {
        let l = RatFunc::from_poly(lpoly(self.curve.raw()));
        let t = RatFunc::from_poly(tpoly(self.curve.raw()));
        self.a
            .mul(&self.a)
            .sub(&self.a.mul(&self.b).mul(&l))
            .sub(&self.b.mul(&self.b).mul(&t))
    }

    /// Inverse via conj / norm.  The Weierstrass polynomial is irreducible,
    /// so the norm vanishes only for the zero function.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let nrm = self.norm_to_base();
        debug_assert!(!nrm.is_zero(), "nonzero functions have nonzero norm");
        let conj = self.conjugate();
        let inv = nrm.inv()?;
        Ok(CurveFunction {
            curve: self.curve.clone(),
            a: conj.a.mul(&inv),
            b: conj.b.mul(&inv),
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.mul(&rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = CurveFunction::constant(self.curve.clone(), K::one(&self.curve.ctx()));
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// Evaluate at an affine point of the curve.
    pub fn eval_at(&self, p: &CurvePoint<K>) -> Result<K> {
        let (x, y) = p.xy().ok_or(Error::InfinitePoint)?;
        if !self.curve.contains(p) {
            return Err(Error::PointNotOnCurve);
        }
        let av = self.a.eval(x)?;
        let bv = self.b.eval(x)?;
        Ok(av.add(&bv.mul(y)))
    }
}

/// The line through two affine points of the curve (the tangent when they
/// coincide), as a curve function y - slope*x - intercept.  Signals
/// `VerticalSlope` when the line has no y-term, so callers substitute
/// `vertical_at`.
pub fn line_through<K: Field>(
    curve: &WeierstrassCurve<K>,
    p: &CurvePoint<K>,
    q: &CurvePoint<K>,
) -> Result<CurveFunction<K>> {
    let (x1, y1) = p.xy().ok_or(Error::InfinitePoint)?;
    let (x2, y2) = q.xy().ok_or(Error::InfinitePoint)?;
    if !curve.contains(p) || !curve.contains(q) {
        return Err(Error::PointNotOnCurve);
    }
    let raw = curve.raw();
    let ctx = curve.ctx();
    let lam = if x1 == x2 {
        let neg_y1 = y1.neg().sub(&raw.a1.mul(x1)).sub(&raw.a3);
        if *y2 == neg_y1 {
            // chord through P and -P, or tangent at a 2-torsion point
            return Err(Error::VerticalSlope);
        }
        debug_assert!(y1 == y2, "same x and not negatives means same point");
        let den = y1.add(y1).add(&raw.a1.mul(x1)).add(&raw.a3);
        let num = K::from_int(&ctx, 3)
            .mul(x1)
            .mul(x1)
            .add(&K::from_int(&ctx, 2).mul(&raw.a2).mul(x1))
            .add(&raw.a4)
            .sub(&raw.a1.mul(y1));
        num.div(&den)?
    } else {
        y2.sub(y1).div(&x2.sub(x1))?
    };
    // y - (lam (x - x1) + y1) = (-lam x + lam x1 - y1) + 1*y
    let a = Poly::from_coeffs(&ctx, vec![lam.mul(x1).sub(y1), lam.neg()]);
    Ok(CurveFunction::new(
        curve.clone(),
        RatFunc::from_poly(a),
        RatFunc::one(&ctx),
    ))
}

/// The vertical line x - x(P) through an affine point.
pub fn vertical_at<K: Field>(
    curve: &WeierstrassCurve<K>,
    p: &CurvePoint<K>,
) -> Result<CurveFunction<K>> {
    let (x0, _) = p.xy().ok_or(Error::InfinitePoint)?;
    if !curve.contains(p) {
        return Err(Error::PointNotOnCurve);
    }
    let ctx = curve.ctx();
    let a = Poly::from_coeffs(&ctx, vec![x0.neg(), K::one(&ctx)]);
    Ok(CurveFunction::from_x_part(curve.clone(), RatFunc::from_poly(a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::RawCurve;
    use crate::exact::{qc, Coeff};

    fn curve_11a() -> WeierstrassCurve<Coeff> {
        WeierstrassCurve::new(RawCurve::new(qc(0), qc(-1), qc(1), qc(-10), qc(-20))).unwrap()
    }

    #[test]
    fn y_squared_reduces() {
        let e = curve_11a();
        let y = CurveFunction::y(e.clone());
        let y2 = y.mul(&y).unwrap();
        // y^2 = T - L y with L = 1, T = x^3 - x^2 - 10x - 20
        assert_eq!(y2.x_part(), &RatFunc::from_poly(tpoly(e.raw())));
        assert_eq!(y2.y_part().neg(), RatFunc::from_poly(lpoly(e.raw())));
    }

    #[test]
    fn norm_is_multiplicative() {
        let e = curve_11a();
        let x = CurveFunction::x(e.clone());
        let y = CurveFunction::y(e.clone());
        let f = x.mul(&x).unwrap().sub(&y).unwrap(); // x^2 - y
        let g = y.add(&CurveFunction::constant(e.clone(), qc(3))).unwrap();
        let lhs = f.mul(&g).unwrap().norm_to_base();
        let rhs = f.norm_to_base().mul(&g.norm_to_base());
        assert_eq!(lhs, rhs);
        // conj is an involution and norm = f * conj(f)
        assert_eq!(f.conjugate().conjugate(), f);
        let viaconj = f.mul(&f.conjugate()).unwrap();
        assert!(viaconj.y_part().is_zero());
        assert_eq!(viaconj.x_part(), &f.norm_to_base());
    }

    #[test]
    fn inverse_and_division() {
        let e = curve_11a();
        let x = CurveFunction::x(e.clone());
        let y = CurveFunction::y(e.clone());
        let f = y.sub(&x).unwrap();
        let finv = f.inv().unwrap();
        let prod = f.mul(&finv).unwrap();
        assert!(prod.x_part().is_one());
        assert!(prod.y_part().is_zero());
        assert!(CurveFunction::constant(e, qc(0)).inv().is_err());
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let e = curve_11a();
        let p = CurvePoint::Affine(qc(5), qc(5));
        let x = CurveFunction::x(e.clone());
        let y = CurveFunction::y(e.clone());
        let f = x.mul(&y).unwrap().add(&CurveFunction::constant(e.clone(), qc(2))).unwrap();
        let g = y.sub(&x).unwrap();
        let fg = f.mul(&g).unwrap();
        assert_eq!(
            fg.eval_at(&p).unwrap(),
            f.eval_at(&p).unwrap().mul(&g.eval_at(&p).unwrap())
        );
        assert_eq!(f.eval_at(&CurvePoint::Infinity).unwrap_err(), Error::InfinitePoint);
    }

    #[test]
    fn lines_vanish_at_their_points() {
        let e = curve_11a();
        let p = CurvePoint::Affine(qc(5), qc(5));
        let q = e.scalar_mul(2, &p).unwrap();
        let l = line_through(&e, &p, &q).unwrap();
        assert!(l.eval_at(&p).unwrap().is_zero());
        assert!(l.eval_at(&q).unwrap().is_zero());
        // the line also vanishes at -(P+Q)
        let r = e.neg(&e.add(&p, &q).unwrap());
        assert!(l.eval_at(&r).unwrap().is_zero());
        // tangent
        let t = line_through(&e, &p, &p).unwrap();
        assert!(t.eval_at(&p).unwrap().is_zero());
        let m2 = e.neg(&q);
        assert!(t.eval_at(&m2).unwrap().is_zero());
    }

    #[test]
    fn vertical_cases() {
        let e = curve_11a();
        let p = CurvePoint::Affine(qc(5), qc(5));
        let minus_p = e.neg(&p);
        assert_eq!(line_through(&e, &p, &minus_p).unwrap_err(), Error::VerticalSlope);
        let v = vertical_at(&e, &p).unwrap();
        assert!(v.eval_at(&p).unwrap().is_zero());
        assert!(v.eval_at(&minus_p).unwrap().is_zero());
        // 2-torsion tangent is vertical: use a curve with visible 2-torsion
        let e2 = WeierstrassCurve::new(RawCurve::new(qc(0), qc(0), qc(0), qc(-1), qc(0))).unwrap();
        let t2 = CurvePoint::Affine(qc(1), qc(0));
        assert_eq!(e2.add(&t2, &t2).unwrap(), CurvePoint::Infinity);
        assert_eq!(line_through(&e2, &t2, &t2).unwrap_err(), Error::VerticalSlope);
    }

    #[test]
    fn poles_in_components_are_reported() {
        let e = curve_11a();
        let p = CurvePoint::Affine(qc(5), qc(5));
        let x = CurveFunction::x(e.clone());
        let shift = CurveFunction::constant(e.clone(), qc(-5));
        let f = x.add(&shift).unwrap().inv().unwrap(); // 1/(x-5)
        assert_eq!(f.eval_at(&p).unwrap_err(), Error::PoleAtPoint);
    }
}
