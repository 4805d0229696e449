//! Miller's algorithm for the function f_P with divisor N(P) - N(O), the
//! normalization that makes the Kummer coboundary computable from plain
//! evaluations, and the resulting descent tables.
//!
//! The double-and-add loop never inverts a function: the accumulator is
//! kept as a polynomial pair (A + B y) over a pure-x denominator collecting
//! the vertical lines.  Because the finished f_P is regular away from O,
//! both components are exactly divisible by that denominator at the end,
//! so one exact division replaces all intermediate reductions.

use crate::curves::{CurvePoint, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::exact::poly::Poly;
use crate::exact::ratfunc::RatFunc;
use crate::exact::{Field, FieldKind};
use crate::function_field::{line_through, pair_mul, pair_norm, CurveFunction};
use crate::kummer::{ClassField, PowerClass};

/// Data certifying a computed table: the Miller function itself, the scalar
/// c of its norm identity Norm(f) = c (x - x_P)^N, and the normalization
/// unit u with delta(mP) = class(u * f(mP)).
#[derive(Clone, Debug)]
pub struct MillerCertificate<K: ClassField> {
    pub f: CurveFunction<K>,
    pub norm_constant: K,
    pub unit: K,
}

/// The coboundary table of a point of exact order n: one class per
/// multiple mP, m = 1..n-1.
#[derive(Clone, Debug)]
pub struct DescentTable<K: ClassField> {
    pub n: u32,
    pub field: FieldKind,
    pub entries: Vec<(u32, PowerClass)>,
    pub certificate: Option<MillerCertificate<K>>,
}

impl<K: ClassField> DescentTable<K> {
    pub fn entry(&self, m: u32) -> Option<&PowerClass> {
        self.entries.iter().find(|(k, _)| *k == m).map(|(_, c)| c)
    }

    /// Check that the table is a homomorphism on Z/n: for all a, b,
    /// delta(aP) delta(bP) = delta((a+b mod n) P), with delta(O) trivial.
    pub fn verify_homomorphism(&self) -> Result<Vec<String>> {
        let mut violations = Vec::new();
        let trivial = PowerClass::one(self.n, self.field);
        let get = |m: u32| -> &PowerClass {
            if m == 0 {
                &trivial
            } else {
                self.entry(m).expect("table covers 1..n-1")
            }
        };
        for a in 0..self.n {
            for b in 0..self.n {
                let lhs = get(a).mul(get(b))?;
                let rhs = get((a + b) % self.n);
                if lhs != *rhs {
                    violations.push(format!("delta({a}P) * delta({b}P) != delta({}P)", (a + b) % self.n));
                }
            }
        }
        Ok(violations)
    }
}

/// Extract the polynomial pair of a line function (whose components are
/// polynomials by construction).
fn line_pair<K: Field>(l: &CurveFunction<K>) -> (Poly<K>, Poly<K>) {
    debug_assert!(l.x_part().is_poly() && l.y_part().is_poly());
    (l.x_part().numer().clone(), l.y_part().numer().clone())
}

/// Compute f with divisor n(P) - n(O) for a point P of exact order n >= 4,
/// together with the constant c of the norm certificate
/// Norm(f) = c (x - x_P)^n.  The certificate is verified before returning.
pub fn miller_function<K: ClassField>(
    curve: &WeierstrassCurve<K>,
    p: &CurvePoint<K>,
    n: u32,
) -> Result<(CurveFunction<K>, K)> {
    if n < 4 {
        return Err(Error::UnsupportedN(n));
    }
    let ch = K::characteristic(&curve.ctx());
    if ch != 0 && (n as u64).is_multiple_of(ch) {
        return Err(Error::BadCharacteristic(format!(
            "characteristic {ch} divides the order {n}"
        )));
    }
    let (px, _) = p.xy().ok_or(Error::InfinitePoint)?;
    if curve.order_of_point(p, n)? != Some(n) {
        return Err(Error::NotTorsion(n));
    }

    let ctx = curve.ctx();
    let one = Poly::<K>::one(&ctx);
    let zero = Poly::<K>::zero(&ctx);
    let raw = curve.raw();

    // accumulator: f_m = (fa + fb y) / fden, with fden a product of
    // vertical-line polynomials in x only
    let mut fa = one.clone();
    let mut fb = zero.clone();
    let mut fden = one.clone();
    let mut m_point = p.clone();

    let vertical_poly = |q: &CurvePoint<K>| -> Poly<K> {
        let (x0, _) = q.xy().expect("vertical line at an affine point");
        Poly::from_coeffs(&ctx, vec![x0.neg(), K::one(&ctx)])
    };

    let mul_line = |fa: &mut Poly<K>, fb: &mut Poly<K>, from: &CurvePoint<K>, to: &CurvePoint<K>| -> Result<()> {
        match line_through(curve, from, to) {
            Ok(l) => {
                let (la, lb) = line_pair(&l);
                let (na, nb) = pair_mul(raw, (&*fa, &*fb), (&la, &lb));
                *fa = na;
                *fb = nb;
            }
            Err(Error::VerticalSlope) => {
                // the "line" degenerates to the vertical through the inputs
                let v = vertical_poly(from);
                *fa = fa.mul(&v);
                *fb = fb.mul(&v);
            }
            Err(e) => return Err(e),
        }
        Ok(())
    };

    let bits = (0..32).rev().skip_while(|i| n >> i == 0).collect::<Vec<_>>();
    debug_assert_eq!(n >> bits[0], 1);
    for &i in &bits[1..] {
        // doubling: f <- f^2 * l_{mP,mP} / v_{2mP}
        let (sa, sb) = pair_mul(raw, (&fa, &fb), (&fa, &fb));
        fa = sa;
        fb = sb;
        fden = fden.mul(&fden);
        let doubled = curve.add_unchecked(&m_point, &m_point);
        mul_line(&mut fa, &mut fb, &m_point, &m_point)?;
        if !doubled.is_infinity() {
            fden = fden.mul(&vertical_poly(&doubled));
        }
        m_point = doubled;

        if (n >> i) & 1 == 1 {
            // addition: f <- f * l_{mP,P} / v_{(m+1)P}
            let next = curve.add_unchecked(&m_point, p);
            mul_line(&mut fa, &mut fb, &m_point, p)?;
            if !next.is_infinity() {
                fden = fden.mul(&vertical_poly(&next));
            }
            m_point = next;
        }
    }
    debug_assert!(m_point.is_infinity(), "the loop must exhaust the order");

    // f is regular away from O, so the collected verticals divide both
    // components exactly
    let a = fa.exact_div(&fden).expect("denominator divides the x-component");
    let b = fb.exact_div(&fden).expect("denominator divides the y-component");
    // pole only at O forces these degree bounds
    debug_assert!(a.degree().unwrap_or(0) <= n as usize / 2);
    debug_assert!(b.degree().is_none_or(|d| d <= (n as usize - 3) / 2));
    let f = CurveFunction::new(
        curve.clone(),
        RatFunc::from_poly(a.clone()),
        RatFunc::from_poly(b.clone()),
    );

    // norm certificate: Norm(f) = c (x - x_P)^n exactly
    let nrm = pair_norm(raw, (&a, &b));
    let vanish = Poly::from_coeffs(&ctx, vec![px.neg(), K::one(&ctx)]).pow(n);
    let c = match nrm.exact_div(&vanish) {
        Ok(q) if q.is_constant() && !q.is_zero() => q.constant_coeff(),
        _ => return Err(Error::CertificateFailed),
    };
    Ok((f, c))
}

/// Evaluation-based normalization unit: u = f(aP)^{-A} f(bP)^{-B}.  The
/// pairs (a, A, b, B) make class(u * f(mP)) independent of the scaling of
/// f: (3, 2, 2, -1) for n = 4 and (2, 2, 4, -1) for n >= 5.
pub fn normalization_unit<K: ClassField>(
    f: &CurveFunction<K>,
    multiples: &[CurvePoint<K>],
    n: u32,
) -> Result<K> {
    let (a, aa, b, bb) = fisher_parameters(n)?;
    let va = f.eval_at(&multiples[a as usize - 1])?;
    let vb = f.eval_at(&multiples[b as usize - 1])?;
    Ok(field_pow(&va, -aa)?.mul(&field_pow(&vb, -bb)?))
}

/// (a, A, b, B) with A + B = 1 (so u f(mP) is exactly invariant under
/// rescaling f) and a A + b B = 0 mod n, a, b not in {0, 1} mod n (so the
/// corrected values form a homomorphism).
pub fn fisher_parameters(n: u32) -> Result<(u32, i64, u32, i64)> {
    let (a, aa, b, bb) = match n {
        4 => (3, 2, 2, -1),
        _ if n >= 5 => (2, 2, 4, -1),
        _ => return Err(Error::UnsupportedN(n)),
    };
    debug_assert_eq!(aa + bb, 1);
    debug_assert_eq!((a as i64 * aa + b as i64 * bb).rem_euclid(n as i64), 0);
    debug_assert!(a % n > 1 && b % n > 1);
    Ok((a, aa, b, bb))
}

fn field_pow<K: Field>(v: &K, e: i64) -> Result<K> {
    let base = if e < 0 { v.inv()? } else { v.clone() };
    let mut k = e.unsigned_abs();
    let mut acc = K::one(&v.ctx());
    let mut b = base;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc.mul(&b);
        }
        k >>= 1;
        if k > 0 {
            b = b.mul(&b);
        }
    }
    Ok(acc)
}

/// Full coboundary table for a point of exact order n >= 4:
/// delta(mP) = class(u f(mP)) for m = 2..n-1, and
/// delta(P) = delta(2P) delta((n-1)P).
pub fn delta_table<K: ClassField>(
    curve: &WeierstrassCurve<K>,
    p: &CurvePoint<K>,
    n: u32,
) -> Result<DescentTable<K>> {
    let field = curve.ctx();
    let multiples = curve.multiples(p, n)?;
    for (i, q) in multiples.iter().enumerate() {
        let m = i as u32 + 1;
        if (m < n) != !q.is_infinity() {
            return Err(Error::NotTorsion(n));
        }
    }

    let (f, norm_constant) = miller_function(curve, p, n)?;
    let unit = normalization_unit(&f, &multiples, n)?;

    let mut entries: Vec<(u32, PowerClass)> = Vec::new();
    for m in 2..n {
        let value = unit.mul(&f.eval_at(&multiples[m as usize - 1])?);
        if value.is_zero() {
            return Err(Error::ZeroInput);
        }
        entries.push((m, value.power_class(n)?));
    }
    let d2 = entries[0].1.clone();
    let dlast = entries.last().expect("n >= 4 gives at least two entries").1.clone();
    entries.insert(0, (1, d2.mul(&dlast)?));

    Ok(DescentTable {
        n,
        field,
        entries,
        certificate: Some(MillerCertificate { f, norm_constant, unit }),
    })
}

/// Single table entry: delta(mP) for a point of exact order n.  Builds the
/// whole table; callers needing several entries should keep the table.
pub fn delta_value<K: ClassField>(
    curve: &WeierstrassCurve<K>,
    p: &CurvePoint<K>,
    n: u32,
    m: u32,
) -> Result<PowerClass> {
    if m == 0 || m >= n {
        return Err(Error::NotTorsion(m));
    }
    let table = delta_table(curve, p, n)?;
    Ok(table.entry(m).expect("table covers 1..n-1").clone())
}

/// Render a curve function as "a(x) + (b(x))*y" using canonical coefficient
/// emission.
pub fn render_function<K: ClassField>(f: &CurveFunction<K>) -> String {
    let fmt = |k: &K| k.render();
    let atomic = |k: &K| k.atomic_render();
    let part = |r: &RatFunc<K>| -> String {
        if r.is_poly() {
            crate::grammar::emit_generic_poly(r.numer(), "x", &fmt, &atomic)
        } else {
            format!(
                "({})/({})",
                crate::grammar::emit_generic_poly(r.numer(), "x", &fmt, &atomic),
                crate::grammar::emit_generic_poly(r.denom(), "x", &fmt, &atomic)
            )
        }
    };
    let a = f.x_part();
    let b = f.y_part();
    if b.is_zero() {
        return part(a);
    }
    let bs = part(b);
    let y_term = if bs == "1" {
        "y".to_string()
    } else if bs == "-1" {
        "-y".to_string()
    } else if !bs[1..].contains(['+', '-', '*', '/']) {
        format!("{bs}*y")
    } else {
        format!("({bs})*y")
    };
    if a.is_zero() {
        y_term
    } else if y_term.starts_with('-') {
        format!("{}{}", part(a), y_term)
    } else {
        format!("{}+{}", part(a), y_term)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::RawCurve;
    use crate::exact::{qc, Coeff};

    fn curve_11a() -> (WeierstrassCurve<Coeff>, CurvePoint<Coeff>) {
        let e = WeierstrassCurve::new(RawCurve::new(qc(0), qc(-1), qc(1), qc(-10), qc(-20))).unwrap();
        (e, CurvePoint::Affine(qc(5), qc(5)))
    }

    #[test]
    fn miller_function_divisor_certificate() {
        let (e, p) = curve_11a();
        let (f, c) = miller_function(&e, &p, 5).unwrap();
        // zeros exactly at P (order 5), poles only at O: norm = c (x-5)^5
        let nrm = f.norm_to_base();
        assert!(nrm.is_poly());
        let expected = Poly::from_int_coeffs(&FieldKind::Q, &[-5, 1]).pow(5).scale(&c);
        assert_eq!(nrm.numer(), &expected);
        assert!(!c.is_zero());
        // f vanishes at P and not at other multiples
        assert!(f.eval_at(&p).unwrap().is_zero());
        for m in 2..5 {
            let q = e.scalar_mul(m, &p).unwrap();
            assert!(!f.eval_at(&q).unwrap().is_zero());
        }
    }

    #[test]
    fn wrong_order_is_rejected() {
        let (e, p) = curve_11a();
        assert_eq!(miller_function(&e, &p, 7).unwrap_err(), Error::NotTorsion(7));
        assert_eq!(miller_function(&e, &p, 3).unwrap_err(), Error::UnsupportedN(3));
    }

    #[test]
    fn table_is_a_homomorphism() {
        let (e, p) = curve_11a();
        let table = delta_table(&e, &p, 5).unwrap();
        assert_eq!(table.entries.len(), 4);
        assert!(table.verify_homomorphism().unwrap().is_empty());
        // delta(P) * delta(4P) is trivial (P + 4P = O)
        let prod = table.entry(1).unwrap().mul(table.entry(4).unwrap()).unwrap();
        assert!(prod.is_trivial());
    }

    #[test]
    fn normalization_is_scaling_invariant() {
        let (e, p) = curve_11a();
        let multiples = e.multiples(&p, 5).unwrap();
        let (f, _) = miller_function(&e, &p, 5).unwrap();
        let scaled = f.mul(&CurveFunction::constant(e.clone(), qc_frac_t())).unwrap();
        let u1 = normalization_unit(&f, &multiples, 5).unwrap();
        let u2 = normalization_unit(&scaled, &multiples, 5).unwrap();
        for m in 2..5u32 {
            let q = &multiples[m as usize - 1];
            let w1 = u1.mul(&f.eval_at(q).unwrap());
            let w2 = u2.mul(&scaled.eval_at(q).unwrap());
            assert_eq!(w1, w2, "u * f(mP) must be exactly scaling invariant");
        }
    }

    fn qc_frac_t() -> Coeff {
        crate::exact::qc_frac(-7, 3)
    }
}
