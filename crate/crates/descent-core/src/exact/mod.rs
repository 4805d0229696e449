//! Exact coefficient arithmetic: an abstract field trait together with the
//! two concrete coefficient domains used everywhere in this crate (the
//! rationals and prime fields), dense polynomials, and reduced rational
//! functions.  Stacking these gives every field tower we need:
//! `RatFunc<Coeff>` is k(la), and `Poly<RatFunc<Coeff>>` handles the
//! coordinate ring of a curve over k(la).

pub mod fp;
pub mod integer;
pub mod poly;
pub mod ratfunc;
pub mod squarefree;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use fp::FpElem;
use poly::Poly;

/// Which base field a coefficient lives in.  This is the runtime "context"
/// that travels with every polynomial and rational function so that zero
/// and one can be manufactured without a sample element.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    /// The rational numbers.
    Q,
    /// The prime field with the given (checked) prime order.
    Fp(u64),
}

impl FieldKind {
    pub fn fp(p: u64) -> Result<FieldKind> {
        if fp::is_prime_u64(p) {
            Ok(FieldKind::Fp(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldKind::Q => 0,
            FieldKind::Fp(p) => p,
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Q => write!(f, "Q"),
            FieldKind::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact field.  `Ctx` carries whatever runtime data is needed to build
/// constants (the prime for F_p, nothing for Q, the coefficient context for
/// rational function fields).
///
/// Binary operations require both operands to share a context; mixing
/// contexts is a programming error and panics.  Public entry points that
/// accept user-supplied elements validate contexts up front and report
/// `Error::FieldMismatch` instead.
pub trait Field: Clone + PartialEq + fmt::Debug {
    type Ctx: Clone + PartialEq + fmt::Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;
    fn characteristic(ctx: &Self::Ctx) -> u64;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Result<Self>;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    /// Greatest common divisor of univariate polynomials over this field,
    /// returned monic (or zero).  The default is the monic Euclidean
    /// algorithm; implementations may substitute a fraction-free scheme.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        poly::monic_euclid_gcd(a, b)
    }
}

/// A coefficient in one of the supported base fields.
#[derive(Clone, PartialEq, Debug)]
pub enum Coeff {
    Q(BigRational),
    Fp(FpElem),
}

impl Coeff {
    pub fn from_rational(q: BigRational) -> Coeff {
        Coeff::Q(q)
    }

    pub fn from_big_int(ctx: &FieldKind, n: &BigInt) -> Coeff {
        match ctx {
            FieldKind::Q => Coeff::Q(BigRational::from_integer(n.clone())),
            FieldKind::Fp(p) => {
                let m = BigInt::from(*p);
                let r = ((n % &m) + &m) % &m;
                let (_, digits) = r.to_u64_digits();
                Coeff::Fp(FpElem::from_residue(digits.first().copied().unwrap_or(0), *p))
            }
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Q(q) => Some(q),
            Coeff::Fp(_) => None,
        }
    }

    pub fn as_fp(&self) -> Option<FpElem> {
        match self {
            Coeff::Q(_) => None,
            Coeff::Fp(x) => Some(*x),
        }
    }

    /// Total order used only to make canonical forms deterministic.
    pub fn canonical_cmp(&self, other: &Coeff) -> Ordering {
        match (self, other) {
            (Coeff::Q(a), Coeff::Q(b)) => a.cmp(b),
            (Coeff::Fp(a), Coeff::Fp(b)) => a.residue.cmp(&b.residue),
            (Coeff::Q(_), Coeff::Fp(_)) => Ordering::Less,
            (Coeff::Fp(_), Coeff::Q(_)) => Ordering::Greater,
        }
    }
}

impl Field for Coeff {
    type Ctx = FieldKind;

    fn ctx(&self) -> FieldKind {
        match self {
            Coeff::Q(_) => FieldKind::Q,
            Coeff::Fp(x) => FieldKind::Fp(x.p),
        }
    }

    fn zero(ctx: &FieldKind) -> Coeff {
        match ctx {
            FieldKind::Q => Coeff::Q(BigRational::zero()),
            FieldKind::Fp(p) => Coeff::Fp(FpElem::from_residue(0, *p)),
        }
    }

    fn one(ctx: &FieldKind) -> Coeff {
        match ctx {
            FieldKind::Q => Coeff::Q(BigRational::one()),
            FieldKind::Fp(p) => Coeff::Fp(FpElem::from_residue(1, *p)),
        }
    }

    fn from_int(ctx: &FieldKind, n: i64) -> Coeff {
        match ctx {
            FieldKind::Q => Coeff::Q(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Fp(p) => Coeff::Fp(FpElem::new(n, *p)),
        }
    }

    fn characteristic(ctx: &FieldKind) -> u64 {
        ctx.characteristic()
    }

    fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(q) => q.is_zero(),
            Coeff::Fp(x) => x.is_zero(),
        }
    }

    fn add(&self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a + b),
            (Coeff::Fp(a), Coeff::Fp(b)) => Coeff::Fp(a.add(*b)),
            _ => panic!("mixed coefficient fields: {self:?} + {rhs:?}"),
        }
    }

    fn neg(&self) -> Coeff {
        match self {
            Coeff::Q(a) => Coeff::Q(-a),
            Coeff::Fp(a) => Coeff::Fp(a.neg()),
        }
    }

    fn mul(&self, rhs: &Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a * b),
            (Coeff::Fp(a), Coeff::Fp(b)) => Coeff::Fp(a.mul(*b)),
            _ => panic!("mixed coefficient fields: {self:?} * {rhs:?}"),
        }
    }

    fn inv(&self) -> Result<Coeff> {
        match self {
            Coeff::Q(a) => {
                if a.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Coeff::Q(a.recip()))
                }
            }
            Coeff::Fp(a) => Ok(Coeff::Fp(a.inv()?)),
        }
    }

    fn poly_gcd(a: &Poly<Coeff>, b: &Poly<Coeff>) -> Poly<Coeff> {
        match a.ctx() {
            // Over Q the monic Euclidean remainder sequence suffers severe
            // coefficient blowup; route through the fraction-free
            // subresultant sequence over Z instead.
            FieldKind::Q => poly::subresultant_gcd_q(a, b),
            FieldKind::Fp(_) => poly::monic_euclid_gcd(a, b),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(q) => write!(f, "{q}"),
            Coeff::Fp(x) => write!(f, "{}", x.residue),
        }
    }
}

/// Rational numbers as `Coeff` values, convenience constructors.
pub fn qc(n: i64) -> Coeff {
    Coeff::Q(BigRational::from_integer(BigInt::from(n)))
}

pub fn qc_frac(n: i64, d: i64) -> Coeff {
    Coeff::Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeff_field_axioms_spot() {
        for ctx in [FieldKind::Q, FieldKind::Fp(13)] {
            let a = Coeff::from_int(&ctx, 17);
            let b = Coeff::from_int(&ctx, -5);
            assert_eq!(a.add(&b), Coeff::from_int(&ctx, 12));
            assert_eq!(a.mul(&b), Coeff::from_int(&ctx, -85));
            assert_eq!(a.sub(&a), Coeff::zero(&ctx));
            let inv = b.inv().unwrap();
            assert!(b.mul(&inv).is_one());
            assert!(Coeff::zero(&ctx).inv().is_err());
        }
    }

    #[test]
    fn fp_kind_requires_prime() {
        assert!(FieldKind::fp(7).is_ok());
        assert_eq!(FieldKind::fp(9), Err(Error::NotPrime(9)));
    }
}
