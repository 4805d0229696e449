//! Places of Q, p-adic valuations, quadratic Hilbert symbols, and the
//! constructive side of descent over Q: specializing a family at a rational
//! parameter value and choosing parameters whose coboundary value meets
//! prescribed local conditions (unit valuation mod N at given primes,
//! negative sign at the real place).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::curves::{CurvePoint, RawCurve, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::exact::fp::{is_prime_u64, pow_mod};
use crate::exact::integer::factor_integer;
use crate::exact::{Coeff, FieldKind};
use crate::families::FamilyRegistry;
use crate::grammar::BaseRatFunc;

/// A place of Q: a finite prime or the real embedding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Finite(u64),
    Real,
}

impl Place {
    /// Checked constructor for a finite place.
    pub fn finite(p: u64) -> Result<Place> {
        if is_prime_u64(p) {
            Ok(Place::Finite(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Real => write!(f, "real"),
        }
    }
}

/// v_p of a nonzero integer, with the cofactor n / p^v.
fn vp_int(n: &BigInt, p: u64) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&p);
        if r.is_zero() {
            v += 1;
            rest = q;
        } else {
            return (v, rest);
        }
    }
}

/// v_p(r) = v_p(numerator) - v_p(denominator).
pub fn padic_valuation(r: &BigRational, p: u64) -> Result<i64> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if r.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (vn, _) = vp_int(r.numer(), p);
    let (vd, _) = vp_int(r.denom(), p);
    Ok(vn - vd)
}

/// The p-unit part of r as a residue mod p (p odd prime, or p = 2 with the
/// modulus lifted to 8 for the sign characters).
fn unit_residue(r: &BigRational, p: u64, modulus: u64) -> u64 {
    let (_, nu) = vp_int(r.numer(), p);
    let (_, du) = vp_int(r.denom(), p);
    let m = BigInt::from(modulus);
    let n_res = nu.mod_floor(&m);
    let d_res = du.mod_floor(&m);
    let n_res = u64::try_from(&n_res).expect("residue fits");
    let d_res = u64::try_from(&d_res).expect("residue fits");
    if modulus == 8 {
        // for odd d, d^{-1} = d mod 8
        (n_res * d_res) % 8
    } else {
        let dinv = pow_mod(d_res, modulus - 2, modulus);
        (n_res * dinv) % modulus
    }
}

/// Legendre symbol of a p-unit residue, as +1 / -1.
fn legendre(u: u64, p: u64) -> i32 {
    debug_assert!(p % 2 == 1 && !u.is_multiple_of(p));
    if pow_mod(u, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

fn sign_pow(s: i32, e: i64) -> i32 {
    if e % 2 == 0 {
        1
    } else {
        s
    }
}

/// The quadratic Hilbert symbol (a, b)_v in {+1, -1}: whether
/// z^2 = a x^2 + b y^2 has a nontrivial solution over the completion at v.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(match place {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(2) => {
            let (alpha, beta) = (padic_valuation(a, 2)?, padic_valuation(b, 2)?);
            let (u8v, w8v) = (unit_residue(a, 2, 8), unit_residue(b, 2, 8));
            // eps = (u-1)/2 mod 2 (u mod 4 = 3), omega = (u^2-1)/8 mod 2
            // (u mod 8 in {3, 5})
            let eps = |m: u64| (m % 4 == 3) as i64;
            let omega = |m: u64| (m % 8 == 3 || m % 8 == 5) as i64;
            sign_pow(-1, eps(u8v) * eps(w8v) + alpha * omega(w8v) + beta * omega(u8v))
        }
        Place::Finite(p) => {
            if !is_prime_u64(p) {
                return Err(Error::NotPrime(p));
            }
            let (alpha, beta) = (padic_valuation(a, p)?, padic_valuation(b, p)?);
            let (u, w) = (unit_residue(a, p, p), unit_residue(b, p, p));
            let eps_p = ((p - 1) / 2 % 2) as i64;
            sign_pow(-1, alpha * beta * eps_p)
                * sign_pow(legendre(u, p), beta)
                * sign_pow(legendre(w, p), alpha)
        }
    })
}

/// All places where the quaternion algebra [a, b] ramifies, ascending with
/// the real place last.  The candidate set is finite: 2, the real place,
/// and the primes dividing either numerator or denominator of a or b.
pub fn quaternion_ramification(a: &BigRational, b: &BigRational) -> Result<Vec<Place>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut candidates = vec![Place::Finite(2)];
    for r in [a, b] {
        for part in [r.numer(), r.denom()] {
            if part.is_one() || (-part).is_one() {
                continue;
            }
            for (p, _) in factor_integer(part)?.factors {
                let p = u64::try_from(&p).map_err(|_| {
                    Error::FactorizationTooHard(format!("prime factor {p} exceeds 64 bits"))
                })?;
                candidates.push(Place::Finite(p));
            }
        }
    }
    candidates.push(Place::Real);
    candidates.sort();
    candidates.dedup();
    let mut out = Vec::new();
    for v in candidates {
        if hilbert_symbol(a, b, v)? == -1 {
            out.push(v);
        }
    }
    // product formula: the symbol is +1 at every place outside the
    // candidate set, so the -1 places must pair up
    debug_assert!(out.len() % 2 == 0, "ramification set has odd size");
    Ok(out)
}

/// Whether [a, b] is split (ramified nowhere), with the ramification set.
pub fn quaternion_is_split(a: &BigRational, b: &BigRational) -> Result<(bool, Vec<Place>)> {
    let ram = quaternion_ramification(a, b)?;
    Ok((ram.is_empty(), ram))
}

fn eval_at_lambda(f: &BaseRatFunc, lambda0: &Coeff) -> Result<Coeff> {
    f.eval(lambda0).map_err(|e| match e {
        Error::PoleAtPoint => Error::PoleInCoefficients,
        other => other,
    })
}

/// Specialize the order-n family at la = lambda0: the curve over Q with
/// the marked point, checked nonsingular and of exact order n.
pub fn specialize(
    n: u32,
    lambda0: &BigRational,
) -> Result<(WeierstrassCurve<Coeff>, CurvePoint<Coeff>)> {
    let spec = FamilyRegistry::standard().get(n)?.spec(FieldKind::Q)?;
    let at = Coeff::Q(lambda0.clone());
    let raw = spec.curve.raw();
    let raw0 = RawCurve::new(
        eval_at_lambda(&raw.a1, &at)?,
        eval_at_lambda(&raw.a2, &at)?,
        eval_at_lambda(&raw.a3, &at)?,
        eval_at_lambda(&raw.a4, &at)?,
        eval_at_lambda(&raw.a6, &at)?,
    );
    let curve = WeierstrassCurve::new(raw0).map_err(|e| match e {
        Error::SingularCurve => Error::SingularSpecialization,
        other => other,
    })?;
    let (px, py) = spec.point.xy().expect("marked points are affine");
    let point = CurvePoint::Affine(eval_at_lambda(px, &at)?, eval_at_lambda(py, &at)?);
    if !curve.contains(&point) {
        return Err(Error::PointNotOnCurve);
    }
    if curve.order_of_point(&point, 2 * n)? != Some(n) {
        return Err(Error::NotTorsion(n));
    }
    Ok((curve, point))
}

/// One verified local condition at a place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceCondition {
    /// v_p(delta(P)(lambda0)) mod n, required to be a unit mod n.
    Finite { p: u64, valuation: i64 },
    /// Sign of delta(P)(lambda0), required negative.
    Real { sign: i8 },
}

/// A parameter value together with the verified local behavior of the
/// coboundary value delta(P) at it.
#[derive(Clone, Debug)]
pub struct LambdaCertificate {
    pub n: u32,
    pub lambda: BigRational,
    pub conditions: Vec<PlaceCondition>,
    pub disc_nonzero: bool,
}

impl LambdaCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "N": self.n,
            "lambda": format_rational(&self.lambda),
            "conditions": self
                .conditions
                .iter()
                .map(|c| match c {
                    PlaceCondition::Finite { p, valuation } => {
                        json!({"place": p.to_string(), "valuation": valuation})
                    }
                    PlaceCondition::Real { sign } => json!({"place": "real", "sign": sign}),
                })
                .collect::<Vec<_>>(),
            "disc_nonzero": self.disc_nonzero,
        })
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Orders for which the parameter-choice machinery is available (the
/// descent families with nontrivial local conditions to arrange).
pub const CHOOSABLE_ORDERS: &[u32] = &[6, 7, 8, 9, 10, 12];

fn validate_choice_inputs(n: u32, places: &[Place]) -> Result<()> {
    if !CHOOSABLE_ORDERS.contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    if n % 2 == 1 && places.contains(&Place::Real) {
        return Err(Error::RealPlaceOddN);
    }
    Ok(())
}

/// The coboundary value delta(P)(lambda0) over Q, via the reference class
/// representative of the family.
fn delta_p_at(n: u32, lambda0: &BigRational) -> Result<BigRational> {
    let spec = FamilyRegistry::standard().get(n)?.spec(FieldKind::Q)?;
    let table = spec.fixture_table()?;
    let rep = table.entry(1).expect("tables cover n = 1").representative();
    let value = rep.eval(&Coeff::Q(lambda0.clone()))?;
    match value {
        Coeff::Q(q) if !q.is_zero() => Ok(q),
        Coeff::Q(_) => Err(Error::ZeroInput),
        _ => unreachable!("evaluation over Q stays in Q"),
    }
}

/// Check lambda0 against the place conditions and produce the certificate,
/// or list every violated condition.
pub fn verify_lambda(n: u32, lambda0: &BigRational, places: &[Place]) -> Result<LambdaCertificate> {
    validate_choice_inputs(n, places)?;
    // pole / singularity / torsion screening
    specialize(n, lambda0)?;
    let value = delta_p_at(n, lambda0)?;
    let mut conditions = Vec::new();
    let mut violations = Vec::new();
    for place in places {
        match place {
            Place::Finite(p) => {
                let v = padic_valuation(&value, *p)?;
                let vm = v.rem_euclid(n as i64);
                conditions.push(PlaceCondition::Finite { p: *p, valuation: vm });
                if num_integer::gcd(vm, n as i64) != 1 {
                    violations.push(format!(
                        "v_{p}(delta(P)({})) = {vm} mod {n} is not a unit mod {n}",
                        format_rational(lambda0)
                    ));
                }
            }
            Place::Real => {
                let sign: i8 = if value.is_negative() { -1 } else { 1 };
                conditions.push(PlaceCondition::Real { sign });
                if sign >= 0 {
                    violations.push(format!(
                        "delta(P)({}) = {} is not negative",
                        format_rational(lambda0),
                        format_rational(&value)
                    ));
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(Error::ConditionViolated(violations));
    }
    Ok(LambdaCertificate { n, lambda: lambda0.clone(), conditions, disc_nonzero: true })
}

pub const DEFAULT_CANDIDATE_BUDGET: u32 = 1000;

/// Candidate parameter for sweep index t >= 1, following the
/// weak-approximation recipe: very negative for orders 6 and 8, positive
/// multiples of B for 7, 9, 12, and B t/(B t - 1) (close to 1 from above,
/// with v_p = +1 at each p | B) for order 10.
fn candidate(n: u32, b: &BigInt, t: u32) -> Option<BigRational> {
    let bt = b * BigInt::from(t);
    match n {
        6 | 8 => Some(BigRational::from_integer(-bt)),
        7 | 9 | 12 => Some(BigRational::from_integer(bt)),
        10 => {
            // |lambda0 - 1| = 1/(Bt - 1) < 1/2 needs Bt >= 3
            if bt < BigInt::from(3) {
                None
            } else {
                let den = &bt - BigInt::one();
                Some(BigRational::new(bt, den))
            }
        }
        _ => None,
    }
}

/// Sweep candidates until one passes `verify_lambda`.  The sweep is
/// deterministic (t = 1, 2, ...) and skips t sharing a factor with B, so
/// that v_p(candidate) = 1 at every requested prime.
pub fn choose_lambda(
    n: u32,
    places: &[Place],
    budget: u32,
) -> Result<(BigRational, LambdaCertificate)> {
    validate_choice_inputs(n, places)?;
    let mut b = BigInt::one();
    let mut seen: Vec<u64> = Vec::new();
    for place in places {
        if let Place::Finite(p) = place {
            if !is_prime_u64(*p) {
                return Err(Error::NotPrime(*p));
            }
            if !seen.contains(p) {
                seen.push(*p);
                b *= BigInt::from(*p);
            }
        }
    }
    let mut tried = 0u32;
    let mut t = 0u32;
    while tried < budget {
        t += 1;
        let tb = BigInt::from(t);
        if num_integer::gcd(tb, b.clone()) != BigInt::one() {
            continue;
        }
        let Some(lambda0) = candidate(n, &b, t) else { continue };
        tried += 1;
        if let Ok(cert) = verify_lambda(n, &lambda0, places) {
            return Ok((lambda0, cert));
        }
    }
    Err(Error::SearchExhausted(budget))
}
