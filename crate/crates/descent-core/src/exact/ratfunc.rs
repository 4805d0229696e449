//! Reduced rational functions over an abstract field, themselves a field.
//!
//! `RatFunc<Coeff>` is the base function field k(la); `RatFunc<RatFunc<Coeff>>`
//! appears as the coefficient field of curve functions in x.

use super::poly::{poly_gcd, Poly};
use super::Field;
use crate::error::{Error, Result};

/// Invariants: `den` is monic and nonzero, gcd(num, den) = 1, and zero is
/// represented as 0/1.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<K: Field> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Field> RatFunc<K> {
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly<K>, den: Poly<K>) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc { num, den: Poly::one(&den.ctx()) };
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc_inv = den.leading_coeff().inv().expect("nonzero denominator");
        den = den.scale(&lc_inv);
        num = num.scale(&lc_inv);
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        let one = Poly::one(&p.ctx());
        RatFunc { num: p, den: one }
    }

    pub fn constant(c: K) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn var(ctx: &K::Ctx) -> Self {
        RatFunc::from_poly(Poly::var(ctx))
    }

    pub fn numer(&self) -> &Poly<K> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<K> {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_constant()
    }

    /// Evaluate at a point of K; errors with `PoleAtPoint` when the reduced
    /// denominator vanishes there.
    pub fn eval(&self, v: &K) -> Result<K> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        self.num.eval(v).div(&d)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs() as u32;
        let mut acc = Self::one(&self.ctx());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }
}

impl<K: Field> Field for RatFunc<K> {
    type Ctx = K::Ctx;

    fn ctx(&self) -> K::Ctx {
        self.den.ctx()
    }

    fn zero(ctx: &K::Ctx) -> Self {
        RatFunc { num: Poly::zero(ctx), den: Poly::one(ctx) }
    }

    fn one(ctx: &K::Ctx) -> Self {
        RatFunc { num: Poly::one(ctx), den: Poly::one(ctx) }
    }

    fn from_int(ctx: &K::Ctx, n: i64) -> Self {
        RatFunc::from_poly(Poly::constant(K::from_int(ctx, n)))
    }

    fn characteristic(ctx: &K::Ctx) -> u64 {
        K::characteristic(ctx)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        Self::reduced(num, den)
    }

    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        // Cross-reduce first so the big multiplication happens on already
        // coprime parts.
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = rhs.den.exact_div(&g1).expect("gcd divides");
        let b = rhs.num.exact_div(&g2).expect("gcd divides");
        let c = self.den.exact_div(&g2).expect("gcd divides");
        Self::reduced(a.mul(&b), c.mul(&d))
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{qc, Coeff, FieldKind};

    type F = RatFunc<Coeff>;

    fn la() -> F {
        F::var(&FieldKind::Q)
    }

    #[test]
    fn reduction_invariants() {
        let ctx = FieldKind::Q;
        // (la^2 - 1) / (2 la - 2) reduces to (la + 1)/2
        let num = Poly::from_int_coeffs(&ctx, &[-1, 0, 1]);
        let den = Poly::from_int_coeffs(&ctx, &[-2, 2]);
        let r = F::new(num, den).unwrap();
        assert_eq!(r.numer(), &Poly::from_coeffs(&ctx, vec![crate::exact::qc_frac(1, 2), crate::exact::qc_frac(1, 2)]));
        assert!(r.denom().is_constant());
        let half = r.eval(&qc(0)).unwrap();
        assert_eq!(half, crate::exact::qc_frac(1, 2));
    }

    #[test]
    fn zero_denominator_rejected() {
        let ctx = FieldKind::Q;
        assert_eq!(
            F::new(Poly::one(&ctx), Poly::zero(&ctx)).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn field_identities() {
        let x = la();
        let a = x.mul(&x).add(&F::from_int(&FieldKind::Q, 3)); // la^2 + 3
        let b = x.sub(&F::from_int(&FieldKind::Q, 1)).inv().unwrap(); // 1/(la-1)
        let prod = a.mul(&b);
        assert_eq!(prod.div(&b).unwrap(), a);
        assert_eq!(a.sub(&a), F::zero(&FieldKind::Q));
        assert!(a.mul(&a.inv().unwrap()).is_one());
    }

    #[test]
    fn poles_are_detected() {
        let x = la();
        let f = x.clone().inv().unwrap(); // 1/la
        assert_eq!(f.eval(&qc(0)).unwrap_err(), Error::PoleAtPoint);
        assert_eq!(f.eval(&qc(2)).unwrap(), crate::exact::qc_frac(1, 2));
        // removable factors must cancel before pole detection
        let g = x.mul(&x).div(&x.clone()).unwrap(); // la^2/la = la
        assert_eq!(g.eval(&qc(0)).unwrap(), qc(0));
    }

    #[test]
    fn negative_powers() {
        let x = la();
        let p = x.pow(-3).unwrap();
        assert!(p.mul(&x.pow(3).unwrap()).is_one());
    }
}
