//! Weierstrass curves over an abstract field: invariants, nonsingularity,
//! the chord-and-tangent group law, and Tate's normal form for a curve with
//! a marked point at the origin.

use crate::error::{Error, Result};
use crate::exact::Field;

/// Coefficients [a1, a2, a3, a4, a6] of a long Weierstrass equation
/// y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6, possibly singular.
#[derive(Clone, PartialEq, Debug)]
pub struct RawCurve<K: Field> {
    pub a1: K,
    pub a2: K,
    pub a3: K,
    pub a4: K,
    pub a6: K,
}

/// The standard b-, c-invariants, discriminant, and j-invariant
/// (None when the discriminant vanishes).
#[derive(Clone, PartialEq, Debug)]
pub struct CurveInvariants<K: Field> {
    pub b2: K,
    pub b4: K,
    pub b6: K,
    pub b8: K,
    pub c4: K,
    pub c6: K,
    pub disc: K,
    pub j: Option<K>,
}

impl<K: Field> RawCurve<K> {
    pub fn new(a1: K, a2: K, a3: K, a4: K, a6: K) -> Self {
        RawCurve { a1, a2, a3, a4, a6 }
    }

    /// Tate normal form E(b, c): y^2 + (1-c) x y - b y = x^3 - b x^2,
    /// the universal curve with (0, 0) as the marked point.
    pub fn tate_normal(b: &K, c: &K) -> Self {
        let ctx = b.ctx();
        let one = K::one(&ctx);
        RawCurve {
            a1: one.sub(c),
            a2: b.neg(),
            a3: b.neg(),
            a4: K::zero(&ctx),
            a6: K::zero(&ctx),
        }
    }

    pub fn ctx(&self) -> K::Ctx {
        self.a1.ctx()
    }

    pub fn invariants(&self) -> CurveInvariants<K> {
        let ctx = self.ctx();
        let int = |n: i64| K::from_int(&ctx, n);
        let RawCurve { a1, a2, a3, a4, a6 } = self;
        let b2 = a1.mul(a1).add(&int(4).mul(a2));
        let b4 = int(2).mul(a4).add(&a1.mul(a3));
        let b6 = a3.mul(a3).add(&int(4).mul(a6));
        let b8 = a1
            .mul(a1)
            .mul(a6)
            .add(&int(4).mul(a2).mul(a6))
            .sub(&a1.mul(a3).mul(a4))
            .add(&a2.mul(a3).mul(a3))
            .sub(&a4.mul(a4));
        let c4 = b2.mul(&b2).sub(&int(24).mul(&b4));
        let c6 = b2
            .mul(&b2)
            .mul(&b2)
            .neg()
            .add(&int(36).mul(&b2).mul(&b4))
            .sub(&int(216).mul(&b6));
        let disc = b2
            .mul(&b2)
            .mul(&b8)
            .neg()
            .sub(&int(8).mul(&b4).mul(&b4).mul(&b4))
            .sub(&int(27).mul(&b6).mul(&b6))
            .add(&int(9).mul(&b2).mul(&b4).mul(&b6));
        let j = if disc.is_zero() {
            None
        } else {
            Some(c4.mul(&c4).mul(&c4).div(&disc).expect("nonzero discriminant"))
        };
        CurveInvariants { b2, b4, b6, b8, c4, c6, disc, j }
    }
}

/// A point on a Weierstrass curve.
#[derive(Clone, PartialEq, Debug)]
pub enum CurvePoint<K: Field> {
    Infinity,
    Affine(K, K),
}

impl<K: Field> CurvePoint<K> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn xy(&self) -> Option<(&K, &K)> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(x, y) => Some((x, y)),
        }
    }
}

/// A nonsingular Weierstrass curve; constructing one checks the
/// discriminant.
#[derive(Clone, PartialEq, Debug)]
pub struct WeierstrassCurve<K: Field> {
    raw: RawCurve<K>,
    inv: CurveInvariants<K>,
}

impl<K: Field> WeierstrassCurve<K> {
    pub fn new(raw: RawCurve<K>) -> Result<Self> {
        let inv = raw.invariants();
        if inv.disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(WeierstrassCurve { raw, inv })
    }

    pub fn raw(&self) -> &RawCurve<K> {
        &self.raw
    }

    pub fn invariants(&self) -> &CurveInvariants<K> {
        &self.inv
    }

    pub fn discriminant(&self) -> &K {
        &self.inv.disc
    }

    pub fn ctx(&self) -> K::Ctx {
        self.raw.ctx()
    }

    pub fn contains(&self, p: &CurvePoint<K>) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => {
                let RawCurve { a1, a2, a3, a4, a6 } = &self.raw;
                let lhs = y.mul(y).add(&a1.mul(x).mul(y)).add(&a3.mul(y));
                let rhs = x
                    .mul(x)
                    .mul(x)
                    .add(&a2.mul(x).mul(x))
                    .add(&a4.mul(x))
                    .add(a6);
                lhs == rhs
            }
        }
    }

    pub fn neg(&self, p: &CurvePoint<K>) -> CurvePoint<K> {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => {
                let y2 = y.neg().sub(&self.raw.a1.mul(x)).sub(&self.raw.a3);
                CurvePoint::Affine(x.clone(), y2)
            }
        }
    }

    /// Chord-and-tangent addition.  Both inputs must lie on the curve.
    pub fn add(&self, p: &CurvePoint<K>, q: &CurvePoint<K>) -> Result<CurvePoint<K>> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::PointNotOnCurve);
        }
        Ok(self.add_unchecked(p, q))
    }

    pub(crate) fn add_unchecked(&self, p: &CurvePoint<K>, q: &CurvePoint<K>) -> CurvePoint<K> {
        let (x1, y1) = match p {
            CurvePoint::Infinity => return q.clone(),
            CurvePoint::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            CurvePoint::Infinity => return p.clone(),
            CurvePoint::Affine(x, y) => (x, y),
        };
        let RawCurve { a1, a2, a3, a4, a6 } = &self.raw;
        if x1 == x2 {
            // either Q = -P (vertical chord) or P = Q (tangent)
            let neg_y1 = y1.neg().sub(&a1.mul(x1)).sub(a3);
            if *y2 == neg_y1 {
                return CurvePoint::Infinity;
            }
        }
        let (lam, nu) = if x1 == x2 {
            // tangent at P; the denominator cannot vanish here since
            // 2y + a1 x + a3 = 0 is exactly the Q = -P case handled above
            let den = y1
                .add(y1)
                .add(&a1.mul(x1))
                .add(a3)
                .inv()
                .expect("tangent denominator vanishes only for 2-torsion, handled above");
            let ctx = self.ctx();
            let three = K::from_int(&ctx, 3);
            let two = K::from_int(&ctx, 2);
            let lam_num = three
                .mul(x1)
                .mul(x1)
                .add(&two.mul(a2).mul(x1))
                .add(a4)
                .sub(&a1.mul(y1));
            let nu_num = x1
                .mul(x1)
                .mul(x1)
                .neg()
                .add(&a4.mul(x1))
                .add(&two.mul(a6))
                .sub(&a3.mul(y1));
            (lam_num.mul(&den), nu_num.mul(&den))
        } else {
            let den = x2.sub(x1).inv().expect("distinct x-coordinates");
            let lam = y2.sub(y1).mul(&den);
            let nu = y1.mul(x2).sub(&y2.mul(x1)).mul(&den);
            (lam, nu)
        };
        let x3 = lam
            .mul(&lam)
            .add(&a1.mul(&lam))
            .sub(a2)
            .sub(x1)
            .sub(x2);
        let y3 = lam.add(a1).mul(&x3).neg().sub(&nu).sub(a3);
        debug_assert!(self.contains(&CurvePoint::Affine(x3.clone(), y3.clone())));
        CurvePoint::Affine(x3, y3)
    }

    pub fn sub(&self, p: &CurvePoint<K>, q: &CurvePoint<K>) -> Result<CurvePoint<K>> {
        self.add(p, &self.neg(q))
    }

    pub fn scalar_mul(&self, n: i64, p: &CurvePoint<K>) -> Result<CurvePoint<K>> {
        if !self.contains(p) {
            return Err(Error::PointNotOnCurve);
        }
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &b);
            }
            k >>= 1;
            if k > 0 {
                b = self.add_unchecked(&b, &b);
            }
        }
        Ok(acc)
    }

    /// Smallest k in 1..=bound with kP = O, if any.
    pub fn order_of_point(&self, p: &CurvePoint<K>, bound: u32) -> Result<Option<u32>> {
        if !self.contains(p) {
            return Err(Error::PointNotOnCurve);
        }
        let mut acc = CurvePoint::Infinity;
        for k in 1..=bound {
            acc = self.add_unchecked(&acc, p);
            if acc.is_infinity() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// The multiples P, 2P, ..., upto*P.
    pub fn multiples(&self, p: &CurvePoint<K>, upto: u32) -> Result<Vec<CurvePoint<K>>> {
        if !self.contains(p) {
            return Err(Error::PointNotOnCurve);
        }
        let mut out = Vec::with_capacity(upto as usize);
        let mut acc = p.clone();
        for _ in 0..upto {
            out.push(acc.clone());
            acc = self.add_unchecked(&acc, p);
        }
        Ok(out)
    }
}
