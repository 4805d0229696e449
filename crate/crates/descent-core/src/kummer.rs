//! Classes in K^x / (K^x)^n for K = Q, F_p, or a rational function field
//! k(la) over one of those, in a canonical form that makes equality a
//! structural comparison.
//!
//! Canonical form of a class over k(la): a unit-part class of k^x/(k^x)^n
//! together with monic squarefree pairwise coprime polynomials, one per
//! exponent in 1..n, where the polynomial attached to exponent e is the
//! product of all monic irreducibles at which the class has valuation e
//! (mod n).  That data is uniquely determined by the class, so two classes
//! are equal iff their canonical forms are identical.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::fp::{class_exponent, pow_mod, smallest_generator};
use crate::exact::integer::factor_integer;
use crate::exact::poly::q_integer_form;
use crate::exact::squarefree::squarefree_decomposition;
use crate::exact::{Coeff, Field, FieldKind};
use crate::grammar::{BasePoly, BaseRatFunc};

/// Class of a scalar in k^x/(k^x)^n.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum UnitClass {
    /// Over Q: a sign (only meaningful for even n) and prime exponents
    /// reduced to 1..n, sorted by prime.
    Rat { negative: bool, primes: Vec<(BigUint, u32)> },
    /// Over F_p: the class is gamma^exponent for the smallest generator
    /// gamma of F_p^x, with the exponent reduced mod gcd(n, p-1).
    Mod { p: u64, exponent: u64 },
}

impl UnitClass {
    fn trivial(field: FieldKind) -> UnitClass {
        match field {
            FieldKind::Q => UnitClass::Rat { negative: false, primes: Vec::new() },
            FieldKind::Fp(p) => UnitClass::Mod { p, exponent: 0 },
        }
    }

    fn is_trivial(&self) -> bool {
        match self {
            UnitClass::Rat { negative, primes } => !negative && primes.is_empty(),
            UnitClass::Mod { exponent, .. } => *exponent == 0,
        }
    }
}

/// A canonical class in K^x/(K^x)^n.  For scalar fields the factor list is
/// empty and only the unit part carries data.
#[derive(Clone, PartialEq, Debug)]
pub struct PowerClass {
    n: u32,
    field: FieldKind,
    unit: UnitClass,
    factors: Vec<(BasePoly, u32)>,
}

impl PowerClass {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn unit(&self) -> &UnitClass {
        &self.unit
    }

    pub fn factors(&self) -> &[(BasePoly, u32)] {
        &self.factors
    }

    pub fn one(n: u32, field: FieldKind) -> PowerClass {
        assert!(n >= 2, "class modulus must be at least 2");
        PowerClass { n, field, unit: UnitClass::trivial(field), factors: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.unit.is_trivial() && self.factors.is_empty()
    }

    /// Class of a nonzero scalar.
    pub fn of_coeff(c: &Coeff, n: u32) -> Result<PowerClass> {
        assert!(n >= 2, "class modulus must be at least 2");
        if c.is_zero() {
            return Err(Error::ZeroInput);
        }
        let field = c.ctx();
        Ok(PowerClass { n, field, unit: canonical_unit(c, n)?, factors: Vec::new() })
    }

    /// Class of a nonzero rational function of la.
    pub fn of_ratfunc(r: &BaseRatFunc, n: u32) -> Result<PowerClass> {
        assert!(n >= 2, "class modulus must be at least 2");
        if r.is_zero() {
            return Err(Error::ZeroInput);
        }
        let field = r.ctx();
        let mut unit = Coeff::one(&field);
        let mut raw: Vec<(BasePoly, i64)> = Vec::new();
        for (poly, sign) in [(r.numer(), 1i64), (r.denom(), -1i64)] {
            if poly.is_constant() {
                let c = poly.constant_coeff();
                unit = if sign > 0 { unit.mul(&c) } else { unit.div(&c)? };
                continue;
            }
            let lc = poly.leading_coeff();
            unit = if sign > 0 { unit.mul(&lc) } else { unit.div(&lc)? };
            for (g, e) in squarefree_decomposition(poly) {
                raw.push((g, sign * e as i64));
            }
        }
        assemble(n, field, &unit, raw)
    }

    pub fn mul(&self, rhs: &PowerClass) -> Result<PowerClass> {
        if self.n != rhs.n {
            return Err(Error::ModulusMismatch(self.n, rhs.n));
        }
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field.to_string(), rhs.field.to_string()));
        }
        let unit = combine_units(&self.unit, &rhs.unit, self.n, 1);
        let mut raw: Vec<(BasePoly, i64)> =
            self.factors.iter().map(|(g, e)| (g.clone(), *e as i64)).collect();
        raw.extend(rhs.factors.iter().map(|(g, e)| (g.clone(), *e as i64)));
        // factors of the two operands need not be coprime to each other
        refine(n_field(self), unit, raw)
    }

    pub fn pow(&self, k: i64) -> PowerClass {
        let unit = combine_units(&UnitClass::trivial(self.field), &self.unit, self.n, k);
        let raw: Vec<(BasePoly, i64)> =
            self.factors.iter().map(|(g, e)| (g.clone(), *e as i64 * k)).collect();
        rebuild(n_field(self), unit, raw).expect("rebuilding an existing class cannot fail")
    }

    pub fn inv(&self) -> PowerClass {
        self.pow(-1)
    }

    pub fn div(&self, rhs: &PowerClass) -> Result<PowerClass> {
        self.mul(&rhs.inv())
    }

    /// A concrete element of the class: unit representative times the
    /// factor polynomials with their exponents.
    pub fn representative(&self) -> BaseRatFunc {
        let mut acc = BaseRatFunc::constant(unit_value(&self.unit, self.field));
        for (g, e) in &self.factors {
            acc = acc.mul(&BaseRatFunc::from_poly(g.pow(*e)));
        }
        acc
    }

    /// Do the two classes generate the same cyclic subgroup?  Returns a
    /// witness k with gcd(k, n) = 1 and self^k = rhs.
    pub fn same_subgroup(&self, rhs: &PowerClass) -> Option<u32> {
        if self.n != rhs.n || self.field != rhs.field {
            return None;
        }
        (1..self.n)
            .filter(|k| num_integer::gcd(*k, self.n) == 1)
            .find(|&k| self.pow(k as i64) == *rhs)
    }

    /// Class of the specialization at la = value (for classes over Q(la) or
    /// F_p(la)); errors if the representative has a zero or pole there.
    pub fn specialize(&self, value: &Coeff) -> Result<PowerClass> {
        let v = self.representative().eval(value)?;
        if v.is_zero() {
            return Err(Error::ZeroInput);
        }
        PowerClass::of_coeff(&v, self.n)
    }
}

fn n_field(c: &PowerClass) -> (u32, FieldKind) {
    (c.n, c.field)
}

/// Fields whose nonzero elements have a canonical power class: the two
/// scalar fields and their rational function fields.  The render methods
/// give the canonical text form used in reports (`atomic_render` says the
/// rendering may be juxtaposed with `*x^k` without parentheses).
pub trait ClassField: Field<Ctx = FieldKind> {
    fn power_class(&self, n: u32) -> Result<PowerClass>;
    fn render(&self) -> String;
    fn atomic_render(&self) -> bool {
        let s = self.render();
        !s[1..].contains(['+', '-', '*', '/'])
    }
}

impl ClassField for Coeff {
    fn power_class(&self, n: u32) -> Result<PowerClass> {
        PowerClass::of_coeff(self, n)
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl ClassField for BaseRatFunc {
    fn power_class(&self, n: u32) -> Result<PowerClass> {
        PowerClass::of_ratfunc(self, n)
    }

    fn render(&self) -> String {
        crate::grammar::emit_ratfunc(self)
    }
}

/// r1 and r2 agree modulo n-th powers.
pub fn equal_mod_nth(r1: &BaseRatFunc, r2: &BaseRatFunc, n: u32) -> Result<bool> {
    Ok(PowerClass::of_ratfunc(r1, n)? == PowerClass::of_ratfunc(r2, n)?)
}

/// r is an exact n-th power in k(la).
pub fn is_nth_power(r: &BaseRatFunc, n: u32) -> Result<bool> {
    Ok(PowerClass::of_ratfunc(r, n)?.is_trivial())
}

// ---------------------------------------------------------------------------
// Canonicalization internals
// ---------------------------------------------------------------------------

fn canonical_unit(c: &Coeff, n: u32) -> Result<UnitClass> {
    match c {
        Coeff::Q(q) => {
            let mut map: BTreeMap<BigUint, i64> = BTreeMap::new();
            let mut negative = false;
            for (z, sign) in [(q.numer(), 1i64), (q.denom(), -1i64)] {
                let f = factor_integer(z)?;
                if f.negative {
                    negative = !negative;
                }
                for (p, e) in f.factors {
                    *map.entry(p).or_insert(0) += sign * e as i64;
                }
            }
            // (-1) is an n-th power for odd n
            if n % 2 == 1 {
                negative = false;
            }
            let primes = map
                .into_iter()
                .filter_map(|(p, e)| {
                    let r = e.rem_euclid(n as i64) as u32;
                    (r != 0).then_some((p, r))
                })
                .collect();
            Ok(UnitClass::Rat { negative, primes })
        }
        Coeff::Fp(x) => {
            if x.is_zero() {
                return Err(Error::ZeroInput);
            }
            let g = num_integer::gcd(n as u64, x.p - 1);
            let gamma = smallest_generator(x.p);
            Ok(UnitClass::Mod { p: x.p, exponent: class_exponent(x.residue, gamma, x.p, g) })
        }
    }
}

fn combine_units(a: &UnitClass, b: &UnitClass, n: u32, k: i64) -> UnitClass {
    match (a, b) {
        (UnitClass::Rat { negative: na, primes: pa }, UnitClass::Rat { negative: nb, primes: pb }) => {
            let mut map: BTreeMap<BigUint, i64> = BTreeMap::new();
            for (p, e) in pa {
                *map.entry(p.clone()).or_insert(0) += *e as i64;
            }
            for (p, e) in pb {
                *map.entry(p.clone()).or_insert(0) += *e as i64 * k;
            }
            let negative = if n % 2 == 1 { false } else { *na ^ (*nb && k % 2 != 0) };
            let primes = map
                .into_iter()
                .filter_map(|(p, e)| {
                    let r = e.rem_euclid(n as i64) as u32;
                    (r != 0).then_some((p, r))
                })
                .collect();
            UnitClass::Rat { negative, primes }
        }
        (UnitClass::Mod { p: p1, exponent: e1 }, UnitClass::Mod { p: p2, exponent: e2 }) => {
            assert_eq!(p1, p2, "unit classes over different prime fields");
            let g = num_integer::gcd(n as u64, p1 - 1) as i64;
            let e = (*e1 as i64 + *e2 as i64 * k).rem_euclid(g) as u64;
            UnitClass::Mod { p: *p1, exponent: e }
        }
        _ => panic!("unit classes over different fields"),
    }
}

fn unit_value(u: &UnitClass, field: FieldKind) -> Coeff {
    match u {
        UnitClass::Rat { negative, primes } => {
            let mut v = BigInt::one();
            for (p, e) in primes {
                v *= BigInt::from(p.clone()).pow(*e);
            }
            if *negative {
                v = -v;
            }
            Coeff::from_big_int(&FieldKind::Q, &v)
        }
        UnitClass::Mod { p, exponent } => {
            let gamma = smallest_generator(*p);
            Coeff::from_big_int(&field, &BigInt::from(pow_mod(gamma, *exponent, *p)))
        }
    }
}

/// Refine raw (squarefree monic, signed exponent) factors into the
/// canonical list.  The factors need not be pairwise coprime on entry.
fn assemble(
    n: u32,
    field: FieldKind,
    unit: &Coeff,
    raw: Vec<(BasePoly, i64)>,
) -> Result<PowerClass> {
    refine((n, field), canonical_unit(unit, n)?, raw)
}

/// Split the raw factors (each squarefree, but not necessarily coprime to
/// one another) into a pairwise-coprime basis, sum exponents per basis
/// element, then hand off to `rebuild`.
fn refine(
    (n, field): (u32, FieldKind),
    unit: UnitClass,
    raw: Vec<(BasePoly, i64)>,
) -> Result<PowerClass> {
    let mut basis: Vec<BasePoly> = Vec::new();
    for (g, _) in &raw {
        insert_coprime_pub(&mut basis, g.clone());
    }
    let refined: Vec<(BasePoly, i64)> = basis
        .into_iter()
        .map(|b| {
            // each g is squarefree, so its valuation at b is 0 or 1
            let e = raw
                .iter()
                .map(|(g, e)| if g.rem(&b).expect("nonzero basis element").is_zero() { *e } else { 0 })
                .sum();
            (b, e)
        })
        .collect();
    rebuild((n, field), unit, refined)
}

/// Reduce exponents mod n, merge factors sharing an exponent, and list the
/// merged factors in ascending exponent order.  Exponents are unique after
/// merging, so that order is total and the form is canonical.  Requires the
/// factor polynomials to be pairwise coprime already.
fn rebuild(
    (n, field): (u32, FieldKind),
    unit: UnitClass,
    raw: Vec<(BasePoly, i64)>,
) -> Result<PowerClass> {
    let mut by_exp: BTreeMap<u32, BasePoly> = BTreeMap::new();
    for (g, e) in raw {
        let r = e.rem_euclid(n as i64) as u32;
        if r == 0 || g.is_constant() {
            continue;
        }
        by_exp
            .entry(r)
            .and_modify(|acc| *acc = acc.mul(&g))
            .or_insert(g);
    }
    let factors: Vec<(BasePoly, u32)> = by_exp.into_iter().map(|(e, g)| (g, e)).collect();
    Ok(PowerClass { n, field, unit, factors })
}

fn insert_coprime_pub(set: &mut Vec<BasePoly>, g: BasePoly) {
    use crate::exact::poly::poly_gcd;
    let mut g = g;
    let mut i = 0;
    while i < set.len() && !g.is_constant() {
        let d = poly_gcd(&g, &set[i]);
        if d.is_constant() {
            i += 1;
            continue;
        }
        if d.degree() < set[i].degree() {
            let rest = set[i].exact_div(&d).expect("gcd divides");
            set[i] = d.clone();
            set.insert(i + 1, rest);
        }
        g = g.exact_div(&d).expect("gcd divides");
        i += 1;
    }
    if !g.is_constant() {
        set.push(g);
    }
}

// ---------------------------------------------------------------------------
// Display
// ---------------------------------------------------------------------------

impl fmt::Display for PowerClass {
    /// Factored emission compatible with the input grammar: an optional
    /// sign and integer unit followed by `*`-joined factor powers.  Monic
    /// factors with rational coefficients are rescaled to primitive integer
    /// polynomials, folding the scale into the unit, so the output never
    /// needs a division.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut unit = self.unit.clone();
        let mut pieces: Vec<String> = Vec::new();
        for (g, e) in &self.factors {
            let (z, den) = match self.field {
                FieldKind::Q => q_integer_form(g),
                FieldKind::Fp(_) => (
                    g.coeffs()
                        .iter()
                        .map(|c| BigInt::from(c.as_fp().expect("Fp coefficients").residue))
                        .collect(),
                    BigInt::one(),
                ),
            };
            if !den.is_one() {
                // g = z/den with z primitive: fold den^{-e} into the unit
                let dc = Coeff::from_big_int(&FieldKind::Q, &den);
                let den_class = canonical_unit(&dc, self.n).expect("nonzero denominator");
                let adjust =
                    combine_units(&UnitClass::trivial(self.field), &den_class, self.n, -(*e as i64));
                unit = combine_units(&unit, &adjust, self.n, 1);
            }
            let gs = crate::grammar::emit_zpoly(&z, "la");
            let needs_parens = gs.contains(['+', '-', '*']);
            let base = if needs_parens { format!("({gs})") } else { gs };
            pieces.push(if *e == 1 { base } else { format!("{base}^{e}") });
        }

        let (neg, unit_str) = match &unit {
            UnitClass::Rat { negative, primes } => {
                let mut v = BigUint::one();
                for (p, e) in primes {
                    v *= p.pow(*e);
                }
                (*negative, if v.is_one() { None } else { Some(v.to_string()) })
            }
            UnitClass::Mod { p, exponent } => {
                let gamma = smallest_generator(*p);
                let r = pow_mod(gamma, *exponent, *p);
                (false, if r == 1 { None } else { Some(r.to_string()) })
            }
        };

        let mut out = String::new();
        if neg {
            out.push('-');
        }
        let mut parts: Vec<String> = Vec::new();
        if let Some(u) = unit_str {
            parts.push(u);
        }
        parts.extend(pieces);
        if parts.is_empty() {
            out.push('1');
        } else {
            out.push_str(&parts.join("*"));
        }
        write!(f, "{out}")
    }
}
