//! Arithmetic in the prime field F_p for machine-word p.

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin for u64.  The listed bases are a proven
/// witness set for every n < 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// One element of F_p.  The residue is always reduced to [0, p).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct FpElem {
    pub residue: u64,
    pub p: u64,
}

// same method names as the Field trait, so the arithmetic reads uniformly
// across every coefficient type
#[allow(clippy::should_implement_trait)]
impl FpElem {
    pub fn new(value: i64, p: u64) -> Self {
        let m = p as i128;
        let r = ((value as i128 % m) + m) % m;
        FpElem { residue: r as u64, p }
    }

    pub fn from_residue(residue: u64, p: u64) -> Self {
        FpElem { residue: residue % p, p }
    }

    pub fn is_zero(self) -> bool {
        self.residue == 0
    }

    fn check(self, rhs: FpElem) {
        assert_eq!(self.p, rhs.p, "mixed prime fields F_{} and F_{}", self.p, rhs.p);
    }

    pub fn add(self, rhs: FpElem) -> FpElem {
        self.check(rhs);
        let mut r = self.residue + rhs.residue;
        if r >= self.p {
            r -= self.p;
        }
        FpElem { residue: r, p: self.p }
    }

    pub fn neg(self) -> FpElem {
        if self.residue == 0 {
            self
        } else {
            FpElem { residue: self.p - self.residue, p: self.p }
        }
    }

    pub fn sub(self, rhs: FpElem) -> FpElem {
        self.add(rhs.neg())
    }

    pub fn mul(self, rhs: FpElem) -> FpElem {
        self.check(rhs);
        FpElem { residue: mul_mod(self.residue, rhs.residue, self.p), p: self.p }
    }

    pub fn inv(self) -> Result<FpElem> {
        if self.residue == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FpElem { residue: pow_mod(self.residue, self.p - 2, self.p), p: self.p })
    }

    pub fn pow(self, e: u64) -> FpElem {
        FpElem { residue: pow_mod(self.residue, e, self.p), p: self.p }
    }
}

/// Smallest generator of the cyclic group F_p^*.
pub fn smallest_generator(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut qs = Vec::new();
    let mut m = p - 1;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            qs.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        qs.push(m);
    }
    'cand: for g in 2..p {
        for &q in &qs {
            if pow_mod(g, (p - 1) / q, p) == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    unreachable!("F_p^* is cyclic, a generator exists")
}

/// Discrete logarithm of `c` to base `gamma` in the quotient group
/// F_p^* / (F_p^*)^n, whose order is g = gcd(n, p-1).
///
/// Both sides are pushed into the subgroup of order g by raising to
/// (p-1)/g; the answer is then found among the g <= n candidates.
pub fn class_exponent(c: u64, gamma: u64, p: u64, g: u64) -> u64 {
    debug_assert!(!c.is_multiple_of(p));
    let proj = |x: u64| pow_mod(x, (p - 1) / g, p);
    let target = proj(c);
    let base = proj(gamma);
    let mut acc = 1u64;
    for e in 0..g {
        if acc == target {
            return e;
        }
        acc = mul_mod(acc, base, p);
    }
    unreachable!("projection of gamma generates the order-g subgroup")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime_u64(18_446_744_073_709_551_555));
    }

    #[test]
    fn field_ops() {
        let p = 13;
        for a in 0..p {
            let x = FpElem::from_residue(a, p);
            if a != 0 {
                assert_eq!(x.mul(x.inv().unwrap()).residue, 1);
            }
            assert_eq!(x.add(x.neg()).residue, 0);
        }
        assert_eq!(FpElem::new(-1, 7).residue, 6);
        assert_eq!(FpElem::new(-15, 7).residue, 6);
    }

    #[test]
    fn generators() {
        assert_eq!(smallest_generator(5), 2);
        assert_eq!(smallest_generator(7), 3);
        assert_eq!(smallest_generator(11), 2);
        assert_eq!(smallest_generator(13), 2);
        assert_eq!(smallest_generator(41), 6);
    }

    #[test]
    fn class_exponent_matches_brute_force() {
        for &(n, p) in &[(5u64, 11u64), (4, 13), (6, 7), (12, 13), (5, 7)] {
            let g = num_integer::gcd(n, p - 1);
            let gamma = smallest_generator(p);
            // brute force: c ~ gamma^e iff c * gamma^{-e} is an n-th power
            let nth_powers: std::collections::HashSet<u64> =
                (1..p).map(|x| pow_mod(x, n, p)).collect();
            for c in 1..p {
                let e = class_exponent(c, gamma, p, g);
                assert!(e < g);
                let ginv = pow_mod(gamma, p - 1 - e % (p - 1), p);
                assert!(
                    nth_powers.contains(&mul_mod(c, ginv, p)),
                    "wrong class exponent for c={c} mod {p}, n={n}"
                );
            }
        }
    }
}
