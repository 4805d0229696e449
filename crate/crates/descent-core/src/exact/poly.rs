//! Dense univariate polynomials over an abstract field.
//!
//! The variable is anonymous: the same type serves as k[la] (coefficients
//! in Q or F_p) and as K[x] for K = k(la).  Printing with a concrete
//! variable name lives in the grammar module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Coeff, Field, FieldKind};
use crate::error::{Error, Result};

/// Invariant: `coeffs` is in ascending order of degree and never has a
/// trailing zero, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<K: Field> {
    ctx: K::Ctx,
    coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn zero(ctx: &K::Ctx) -> Self {
        Poly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &K::Ctx) -> Self {
        Poly::constant(K::one(ctx))
    }

    pub fn constant(c: K) -> Self {
        let ctx = c.ctx();
        let coeffs = if c.is_zero() { Vec::new() } else { vec![c] };
        Poly { ctx, coeffs }
    }

    /// The variable itself.
    pub fn var(ctx: &K::Ctx) -> Self {
        Poly { ctx: ctx.clone(), coeffs: vec![K::zero(ctx), K::one(ctx)] }
    }

    pub fn from_coeffs(ctx: &K::Ctx, coeffs: Vec<K>) -> Self {
        let mut p = Poly { ctx: ctx.clone(), coeffs };
        p.trim();
        p
    }

    pub fn from_int_coeffs(ctx: &K::Ctx, ints: &[i64]) -> Self {
        Poly::from_coeffs(ctx, ints.iter().map(|&n| K::from_int(ctx, n)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> K::Ctx {
        self.ctx.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(|| K::zero(&self.ctx))
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(|| K::zero(&self.ctx))
    }

    pub fn constant_coeff(&self) -> K {
        self.coeff(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&rhs.coeff(i)));
        }
        Poly::from_coeffs(&self.ctx, out)
    }

    pub fn neg(&self) -> Self {
        Poly { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(K::neg).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let mut out = vec![K::zero(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(&self.ctx, out)
    }

    pub fn scale(&self, k: &K) -> Self {
        Poly::from_coeffs(&self.ctx, self.coeffs.iter().map(|c| c.mul(k)).collect())
    }

    /// Multiply by the k-th power of the variable.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![K::zero(&self.ctx); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { ctx: self.ctx.clone(), coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Long division: self = q * rhs + r with deg r < deg rhs.
    pub fn divrem(&self, rhs: &Self) -> Result<(Self, Self)> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = rhs.degree().unwrap();
        let lc_inv = rhs.leading_coeff().inv()?;
        let mut rem = self.clone();
        let mut quot = vec![K::zero(&self.ctx); self.coeffs.len().saturating_sub(d)];
        while let Some(dr) = rem.degree() {
            if dr < d {
                break;
            }
            let factor = rem.leading_coeff().mul(&lc_inv);
            let shift = dr - d;
            quot[shift] = factor.clone();
            // rem -= factor * x^shift * rhs
            for (i, b) in rhs.coeffs.iter().enumerate() {
                let t = factor.mul(b);
                rem.coeffs[shift + i] = rem.coeffs[shift + i].sub(&t);
            }
            rem.trim();
        }
        Ok((Poly::from_coeffs(&self.ctx, quot), rem))
    }

    pub fn rem(&self, rhs: &Self) -> Result<Self> {
        Ok(self.divrem(rhs)?.1)
    }

    /// Division that must be exact; any nonzero remainder is an error.
    pub fn exact_div(&self, rhs: &Self) -> Result<Self> {
        let (q, r) = self.divrem(rhs)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::DivisionByZero)
        }
    }

    /// Multiplicity of `d` in `self` (0 if d does not divide self).
    pub fn valuation_of(&self, d: &Self) -> u32 {
        assert!(!self.is_zero() && !d.is_constant(), "valuation needs nonzero input and nonconstant divisor");
        let mut rest = self.clone();
        let mut v = 0;
        while let Ok(q) = rest.exact_div(d) {
            rest = q;
            v += 1;
        }
        v
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading_coeff().inv().expect("leading coefficient of a nonzero polynomial is invertible");
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.ctx);
        }
        let out: Vec<K> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&K::from_int(&self.ctx, i as i64)))
            .collect();
        Poly::from_coeffs(&self.ctx, out)
    }

    /// Horner evaluation.
    pub fn eval(&self, v: &K) -> K {
        let mut acc = K::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(v).add(c);
        }
        acc
    }

    /// Evaluate into a larger field through an embedding of coefficients.
    pub fn eval_map<L: Field>(&self, v: &L, embed: impl Fn(&K) -> L) -> L {
        let mut acc = L::zero(&v.ctx());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(v).add(&embed(c));
        }
        acc
    }
}

/// Monic Euclidean gcd; correct over any field, used whenever coefficient
/// growth is not a concern.
pub fn monic_euclid_gcd<K: Field>(a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = a.rem(&b).expect("nonzero divisor");
        a = b;
        b = r;
    }
    a.monic()
}

pub fn poly_gcd<K: Field>(a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
    K::poly_gcd(a, b)
}

pub fn poly_lcm<K: Field>(a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(&a.ctx());
    }
    let g = poly_gcd(a, b);
    a.mul(b).exact_div(&g).expect("gcd divides the product").monic()
}

// ---------------------------------------------------------------------------
// Fraction-free gcd over Q via the primitive pseudo-remainder sequence on
// integer polynomials.  Plain monic Euclid over Q produces rational
// coefficients whose numerators and denominators grow multiplicatively per
// step; stripping integer content after each pseudo-remainder keeps every
// intermediate at essentially optimal size.
// ---------------------------------------------------------------------------

type ZPoly = Vec<BigInt>; // ascending, no trailing zeros

fn zp_trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn zp_content(p: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    g
}

/// Primitive part with positive leading coefficient.
fn zp_primitive(mut p: ZPoly) -> ZPoly {
    zp_trim(&mut p);
    if p.is_empty() {
        return p;
    }
    let mut c = zp_content(&p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    for x in &mut p {
        *x = &*x / &c;
    }
    p
}

/// Fraction-free remainder: returns lc(b)^k * (a mod b) for some k >= 0.
/// The scalar multiple is irrelevant because callers re-primitivize.
fn zp_pseudo_rem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = a.clone();
    zp_trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in &mut r {
            *x *= &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * bc;
        }
        zp_trim(&mut r);
    }
    r
}

fn zp_gcd(a: ZPoly, b: ZPoly) -> ZPoly {
    let mut a = zp_primitive(a);
    let mut b = zp_primitive(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = zp_pseudo_rem(&a, &b);
        a = b;
        b = zp_primitive(r);
    }
    a
}

/// Clear denominators: returns (integer coefficients, positive denominator)
/// with the fraction in lowest terms, i.e. gcd(content, den) = 1.
pub(crate) fn q_integer_form(p: &Poly<Coeff>) -> (ZPoly, BigInt) {
    assert_eq!(p.ctx(), FieldKind::Q, "integer form is only defined over Q");
    let mut den = BigInt::one();
    for c in p.coeffs() {
        den = den.lcm(c.as_rational().unwrap().denom());
    }
    let ints: ZPoly = p
        .coeffs()
        .iter()
        .map(|c| {
            let q = c.as_rational().unwrap();
            q.numer() * (&den / q.denom())
        })
        .collect();
    let mut g = zp_content(&ints).gcd(&den);
    if g.is_zero() {
        g = BigInt::one();
    }
    (ints.iter().map(|z| z / &g).collect(), den / g)
}

pub(crate) fn zp_to_poly(z: &[BigInt], ctx: &FieldKind) -> Poly<Coeff> {
    Poly::from_coeffs(ctx, z.iter().map(|n| Coeff::from_big_int(ctx, n)).collect())
}

/// Monic gcd of rational-coefficient polynomials via the integer
/// subresultant route.
pub fn subresultant_gcd_q(a: &Poly<Coeff>, b: &Poly<Coeff>) -> Poly<Coeff> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (za, _) = q_integer_form(a);
    let (zb, _) = q_integer_form(b);
    zp_to_poly(&zp_gcd(za, zb), &FieldKind::Q).monic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qc;

    fn qp(ints: &[i64]) -> Poly<Coeff> {
        Poly::from_int_coeffs(&FieldKind::Q, ints)
    }

    #[test]
    fn ring_basics() {
        let f = qp(&[1, 2, 1]); // (x+1)^2
        let g = qp(&[-1, 1]); // x - 1
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.mul(&g).degree(), Some(3));
        assert_eq!(f.sub(&f), Poly::zero(&FieldKind::Q));
        assert_eq!(f.eval(&qc(2)), qc(9));
        assert_eq!(f.derivative(), qp(&[2, 2]));
        assert!(Poly::<Coeff>::zero(&FieldKind::Q).degree().is_none());
    }

    #[test]
    fn division_and_exactness() {
        let f = qp(&[-1, 0, 0, 0, 1]); // x^4 - 1
        let g = qp(&[-1, 1]);
        let (q, r) = f.divrem(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, qp(&[1, 1, 1, 1]));
        assert_eq!(f.exact_div(&g).unwrap(), q);
        assert!(qp(&[1, 1]).exact_div(&g).is_err());
        let (q2, r2) = qp(&[1, 1]).divrem(&g).unwrap();
        assert_eq!(q2, qp(&[1]));
        assert_eq!(r2, qp(&[2]));
    }

    #[test]
    fn gcd_over_q_uses_integer_route() {
        // gcd((x-1)^2 (x+2), (x-1)(x+3)) = x - 1
        let f = qp(&[-1, 1]).pow(2).mul(&qp(&[2, 1]));
        let g = qp(&[-1, 1]).mul(&qp(&[3, 1]));
        assert_eq!(Coeff::poly_gcd(&f, &g), qp(&[-1, 1]));
        // coprime inputs
        assert_eq!(Coeff::poly_gcd(&qp(&[1, 1]), &qp(&[2, 1])), qp(&[1]));
        // scalar robustness: contents must not leak into the answer
        let f2 = f.scale(&crate::exact::qc_frac(3, 7));
        let g2 = g.scale(&qc(-10));
        assert_eq!(Coeff::poly_gcd(&f2, &g2), qp(&[-1, 1]));
    }

    #[test]
    fn gcd_over_fp() {
        let ctx = FieldKind::Fp(5);
        let f = Poly::from_int_coeffs(&ctx, &[-1, 1]).pow(3);
        let g = Poly::from_int_coeffs(&ctx, &[-1, 0, 1]); // x^2 - 1
        assert_eq!(Coeff::poly_gcd(&f, &g), Poly::from_int_coeffs(&ctx, &[-1, 1]));
    }

    #[test]
    fn valuations() {
        let d = qp(&[0, 1]); // x
        let f = d.pow(3).mul(&qp(&[1, 1]));
        assert_eq!(f.valuation_of(&d), 3);
        assert_eq!(qp(&[1, 1]).valuation_of(&d), 0);
    }

    #[test]
    fn integer_form_examples() {
        // (1/6) x^2 + (1/4) -> (2 x^2 + 3) / 12
        let p = Poly::from_coeffs(
            &FieldKind::Q,
            vec![crate::exact::qc_frac(1, 4), qc(0), crate::exact::qc_frac(1, 6)],
        );
        let (ints, den) = q_integer_form(&p);
        assert_eq!(den, BigInt::from(12));
        assert_eq!(ints, vec![BigInt::from(3), BigInt::zero(), BigInt::from(2)]);
    }
}
