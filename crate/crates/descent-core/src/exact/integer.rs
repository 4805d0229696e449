//! Integer factorization (trial division plus Brent's rho) and exact n-th
//! roots of rationals.  Factoring is bounded: a composite cofactor larger
//! than the caller's bound aborts with `FactorizationTooHard` rather than
//! looping forever on a hard semiprime.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use super::fp::{is_prime_u64, mul_mod};
use crate::error::{Error, Result};

/// Sign and sorted prime factorization of a nonzero integer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntFactorization {
    pub negative: bool,
    pub factors: Vec<(BigUint, u32)>,
}

impl IntFactorization {
    pub fn value(&self) -> BigInt {
        let mut v = BigUint::one();
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        let v = BigInt::from(v);
        if self.negative {
            -v
        } else {
            v
        }
    }
}

/// Default bound: give up on composite cofactors that do not fit in 64 bits.
pub static DEFAULT_FACTOR_BOUND: Lazy<BigUint> = Lazy::new(|| BigUint::one() << 64);

const TRIAL_LIMIT: u64 = 100_000;

pub fn factor_integer(n: &BigInt) -> Result<IntFactorization> {
    factor_integer_bounded(n, &DEFAULT_FACTOR_BOUND)
}

pub fn factor_integer_bounded(n: &BigInt, bound: &BigUint) -> Result<IntFactorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let negative = n.is_negative();
    let mut rest = n.magnitude().clone();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let push = |p: BigUint, e: u32, factors: &mut Vec<(BigUint, u32)>| {
        if let Some(last) = factors.iter_mut().find(|(q, _)| *q == p) {
            last.1 += e;
        } else {
            factors.push((p, e));
        }
    };

    for d in std::iter::once(2u64).chain((3..TRIAL_LIMIT).step_by(2)) {
        if rest.is_one() {
            break;
        }
        let db = BigUint::from(d);
        if &db * &db > rest {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&db);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            push(db, e, &mut factors);
        }
    }

    let mut queue = vec![rest];
    while let Some(m) = queue.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(m64) = m.to_u64() {
            if is_prime_u64(m64) {
                push(m, 1, &mut factors);
            } else {
                let d = brent_rho_u64(m64);
                queue.push(BigUint::from(d));
                queue.push(BigUint::from(m64 / d));
            }
        } else if is_probable_prime(&m) {
            push(m, 1, &mut factors);
        } else if &m > bound {
            return Err(Error::FactorizationTooHard(m.to_string()));
        } else {
            match brent_rho_big(&m) {
                Some(d) => {
                    queue.push(&m / &d);
                    queue.push(d);
                }
                None => return Err(Error::FactorizationTooHard(m.to_string())),
            }
        }
    }

    factors.sort_by(|a, b| a.0.cmp(&b.0));
    let fact = IntFactorization { negative, factors };
    debug_assert_eq!(&fact.value(), n);
    Ok(fact)
}

/// Brent's cycle-finding variant of Pollard rho; n must be odd, composite,
/// and free of factors below the trial-division limit, so a nontrivial
/// factor always turns up quickly in the 64-bit range.
fn brent_rho_u64(n: u64) -> u64 {
    debug_assert!(!is_prime_u64(n) && n > 1 && n % 2 == 1);
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = num_integer::gcd(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 22 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
        c += 1;
    }
}

/// Miller-Rabin with fixed bases; deterministic below 2^64 and strongly
/// reliable above it for the sizes this crate meets.
fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(n64) = n.to_u64() {
        return is_prime_u64(n64);
    }
    let one = BigUint::one();
    let two = &one + &one;
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71] {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn brent_rho_big(n: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    for c in 1u64..64 {
        let cb = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &cb) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        for _ in 0..(1u64 << 20) {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            let d = diff.gcd(n);
            if d != one {
                if &d == n {
                    break;
                }
                return Some(d);
            }
        }
    }
    None
}

/// Exact n-th root of a rational, if one exists in Q.
pub fn rational_nth_root(q: &BigRational, n: u32) -> Option<BigRational> {
    assert!(n >= 1, "root index must be positive");
    if q.is_zero() {
        return Some(BigRational::zero());
    }
    if q.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let num = q.numer().magnitude();
    let den = q.denom().magnitude();
    let rn = num.nth_root(n);
    let rd = den.nth_root(n);
    if rn.pow(n) != *num || rd.pow(n) != *den {
        return None;
    }
    let mut root = BigRational::new(BigInt::from(rn), BigInt::from(rd));
    if q.is_negative() {
        root = -root;
    }
    Some(root)
}
