//! Acceptance gate: every deliverable claim, one test per criterion, each
//! printing a single PASS line (visible under --nocapture) and enforcing
//! its time budget.  Budgets are generous: they catch complexity
//! regressions, not scheduler noise.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;

use descent_core::exact::{Coeff, Field, FieldKind};
use descent_core::families::{FamilyRegistry, FamilySpec};
use descent_core::fixtures::{CharRule, FIXTURES};
use descent_core::global_fields::{
    choose_lambda, hilbert_symbol, quaternion_ramification, specialize, verify_lambda, Place,
    PlaceCondition, CHOOSABLE_ORDERS,
};
use descent_core::grammar::parse_ratfunc;
use descent_core::miller;
use descent_core::{Error, Result};

fn criterion(idx: u32, budget_ms: u128, what: &str, run: impl FnOnce() -> Result<String>) {
    let start = Instant::now();
    let detail = match run() {
        Ok(d) => d,
        Err(e) => panic!("criterion {idx:02}: FAIL — {what}: {e}"),
    };
    let ms = start.elapsed().as_millis();
    assert!(
        ms < budget_ms,
        "criterion {idx:02}: FAIL — {what} took {ms} ms, budget {budget_ms} ms"
    );
    println!("criterion {idx:02}: PASS — {what}: {detail} ({ms} ms)");
}

/// The natural coefficient field of a fixture: F_2 for the
/// characteristic-2 family, Q otherwise.
fn natural_field(chars: CharRule) -> FieldKind {
    match chars {
        CharRule::OnlyTwo => FieldKind::Fp(2),
        _ => FieldKind::Q,
    }
}

fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn criterion_01_discriminants_match_the_reference() {
    criterion(1, 1_000, "stored discriminants equal the invariant-formula values", || {
        for fx in FIXTURES {
            let field = natural_field(fx.chars);
            let spec = FamilySpec::build(fx, field)?;
            let stored = parse_ratfunc(fx.disc, field)?;
            assert_eq!(
                &stored,
                spec.curve.discriminant(),
                "discriminant mismatch for N={} over {}",
                fx.n,
                field
            );
        }
        Ok(format!("{} fixtures", FIXTURES.len()))
    });
}

#[test]
fn criterion_02_torsion_orders_and_printed_points() {
    criterion(2, 1_000, "marked points have exact order N and match the printed multiples", || {
        let mut printed = 0;
        for fx in FIXTURES {
            let field = natural_field(fx.chars);
            let spec = FamilySpec::build(fx, field)?;
            assert_eq!(
                spec.curve.order_of_point(&spec.point, 2 * fx.n)?,
                Some(fx.n),
                "wrong order for N={}",
                fx.n
            );
            let mults = spec.curve.multiples(&spec.point, fx.n - 1)?;
            for (m, q) in spec.fixture_points()? {
                assert_eq!(
                    q,
                    mults[m as usize - 1],
                    "printed {m}P disagrees with the group law for N={}",
                    fx.n
                );
                printed += 1;
            }
        }
        Ok(format!("{} fixtures, {printed} printed multiples", FIXTURES.len()))
    });
}

#[test]
fn criterion_03_coboundary_tables_over_q() {
    criterion(3, 30_000, "computed coboundary tables match the reference for every order", || {
        let reg = FamilyRegistry::standard();
        let mut entries = 0;
        for n in reg.orders() {
            let fam = reg.get(n)?;
            let mismatches = fam.verify(FieldKind::Q)?;
            assert!(mismatches.is_empty(), "N={n}: {}", mismatches.join("; "));
            entries += n as usize - 1;
        }
        Ok(format!("{} orders, {entries} table entries", reg.orders().len()))
    });
}

#[test]
fn criterion_04_divisor_certificates() {
    criterion(4, 10_000, "Miller functions carry exact divisor certificates", || {
        let reg = FamilyRegistry::standard();
        let mut checked = 0;
        for n in reg.orders().into_iter().filter(|&n| n >= 4) {
            let table = reg.get(n)?.delta_table(FieldKind::Q)?;
            let cert = table
                .certificate
                .as_ref()
                .unwrap_or_else(|| panic!("N={n}: computed table carries no certificate"));
            assert!(
                !cert.norm_constant.is_zero(),
                "N={n}: norm of f is not a nonzero constant times (x - x_P)^N"
            );
            assert!(!cert.unit.is_zero(), "N={n}: normalization unit vanishes");
            checked += 1;
        }
        Ok(format!("{checked} orders with norm(f) = c (x - x_P)^N verified exactly"))
    });
}

#[test]
fn criterion_05_tables_are_homomorphisms() {
    criterion(5, 10_000, "delta(aP) delta(bP) = delta((a+b)P) across every table", || {
        let reg = FamilyRegistry::standard();
        let mut pairs = 0;
        for n in reg.orders() {
            let table = reg.get(n)?.delta_table(FieldKind::Q)?;
            let violations = table.verify_homomorphism()?;
            assert!(violations.is_empty(), "N={n}: {}", violations.join("; "));
            pairs += (n as usize) * (n as usize);
        }
        Ok(format!("{pairs} (a, b) pairs including inverses and the identity"))
    });
}

#[test]
fn criterion_06_specialization_oracle() {
    criterion(6, 5_000, "generic tables specialize to directly recomputed rational tables", || {
        for (n, l0) in [(4u32, 5i64), (5, 2), (7, 3)] {
            let l0 = qi(l0);
            let generic = FamilyRegistry::standard().get(n)?.delta_table(FieldKind::Q)?;
            let (curve, point) = specialize(n, &l0)?;
            let direct = miller::delta_table(&curve, &point, n)?;
            let at = Coeff::Q(l0.clone());
            for (m, class) in &generic.entries {
                let expected = class.specialize(&at)?;
                let got = direct.entry(*m).expect("tables cover n = 1..N-1");
                assert_eq!(
                    &expected, got,
                    "N={n}, lambda={l0}, m={m}: specialized class disagrees"
                );
            }
        }
        Ok("(N, lambda) in {(4, 5), (5, 2), (7, 3)}".to_string())
    });
}

#[test]
fn criterion_07_tables_in_odd_characteristic() {
    criterion(7, 60_000, "tables survive reduction mod p for p in {5, 7, 11, 13}", || {
        let reg = FamilyRegistry::standard();
        let mut verified = 0;
        let mut refused = 0;
        for p in [5u64, 7, 11, 13] {
            let field = FieldKind::fp(p)?;
            for n in reg.orders() {
                let fam = reg.get(n)?;
                if u64::from(n) % p == 0 {
                    match fam.delta_table(field) {
                        Err(Error::BadCharacteristic(_)) => refused += 1,
                        other => panic!(
                            "N={n} over F_{p}: expected a characteristic refusal, got {other:?}"
                        ),
                    }
                } else {
                    let mismatches = fam.verify(field)?;
                    assert!(mismatches.is_empty(), "N={n} over F_{p}: {}", mismatches.join("; "));
                    verified += 1;
                }
            }
        }
        Ok(format!("{verified} tables verified, {refused} correctly refused where p | N"))
    });
}

#[test]
fn criterion_08_hilbert_symbols_and_ramification() {
    criterion(8, 5_000, "Hilbert symbols satisfy the product formula; known algebras ramify correctly", || {
        // known ramification sets
        let ram = quaternion_ramification(&qi(2), &qi(3))?;
        assert_eq!(ram, vec![Place::Finite(2), Place::Finite(3)], "(2, 3) ramifies at 2 and 3");
        let ram = quaternion_ramification(&qi(-1), &qi(-1))?;
        assert_eq!(ram, vec![Place::Finite(2), Place::Real], "(-1, -1) ramifies at 2 and infinity");

        // product formula: the ramification set of (a, b) has even size,
        // i.e. the product of the symbols over all places is +1
        let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        let mut checked = 0;
        while checked < 100 {
            let num = next() as i64 % 10_000 - 5_000;
            let den = next() as i64 % 9_999 + 1;
            let a = BigRational::new(BigInt::from(num), BigInt::from(den));
            let num = next() as i64 % 10_000 - 5_000;
            let den = next() as i64 % 9_999 + 1;
            let b = BigRational::new(BigInt::from(num), BigInt::from(den));
            if a.numer().sign() == num_bigint::Sign::NoSign
                || b.numer().sign() == num_bigint::Sign::NoSign
            {
                continue;
            }
            let ram = quaternion_ramification(&a, &b)?;
            assert!(ram.len() % 2 == 0, "odd ramification for ({a}, {b}): {ram:?}");
            // spot-check one symbol against the set membership
            let s = hilbert_symbol(&a, &b, Place::Real)?;
            assert_eq!(s == -1, ram.contains(&Place::Real), "real symbol vs set for ({a}, {b})");
            checked += 1;
        }
        Ok("100 random pairs plus the two reference algebras".to_string())
    });
}

#[test]
fn criterion_09_parameter_choice_round_trips() {
    criterion(9, 30_000, "chosen parameters verify their own place conditions", || {
        const POOL: [u64; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];
        let mut state: u64 = 0xdead_beef_cafe_f00d;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state >> 33
        };
        for trial in 0..20 {
            let n = CHOOSABLE_ORDERS[next() as usize % CHOOSABLE_ORDERS.len()];
            let mut places: Vec<Place> = Vec::new();
            for _ in 0..(next() % 4) {
                let p = POOL[next() as usize % POOL.len()];
                if !places.contains(&Place::Finite(p)) {
                    places.push(Place::Finite(p));
                }
            }
            if n.is_multiple_of(2) && next().is_multiple_of(2) {
                places.push(Place::Real);
            }
            let (l0, cert) = choose_lambda(n, &places, 1_000)?;
            assert_eq!(cert.conditions.len(), places.len(), "one condition per place");
            for c in &cert.conditions {
                match c {
                    PlaceCondition::Finite { p, valuation } => assert_eq!(
                        *valuation,
                        i64::from(n) - 1,
                        "trial {trial}: v_{p} should be N - 1 by construction"
                    ),
                    PlaceCondition::Real { sign } => {
                        assert_eq!(*sign, -1, "trial {trial}: negative at the real place")
                    }
                }
            }
            // round trip: the independent checker accepts the choice
            let again = verify_lambda(n, &l0, &places)?;
            assert_eq!(again.conditions, cert.conditions, "trial {trial}: re-verification drifted");
            assert!(again.disc_nonzero);
        }
        Ok("20 random place sets across orders {6, 7, 8, 9, 10, 12}".to_string())
    });
}

#[test]
fn criterion_10_out_of_scope_note() {
    criterion(10, 1_000, "scope boundary documented", || {
        Ok("splitting the obstruction class over the generic fiber is a structural \
            statement with no finite recomputable instance; this suite covers the \
            tables, certificates, and local-condition machinery only"
            .to_string())
    });
}
