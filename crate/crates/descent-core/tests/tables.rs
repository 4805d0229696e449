//! End-to-end checks of the computed coboundary tables against the
//! reference data, over Q(la) and over prime fields.

use descent_core::exact::FieldKind;
use descent_core::families::FamilyRegistry;
use descent_core::Error;

#[test]
fn every_table_over_q_matches_the_reference() {
    let reg = FamilyRegistry::standard();
    for n in reg.orders() {
        let fam = reg.get(n).unwrap();
        let mismatches = fam.verify(FieldKind::Q).unwrap();
        assert!(mismatches.is_empty(), "N={n}: {mismatches:?}");
    }
}

#[test]
fn tables_survive_reduction_mod_p() {
    let reg = FamilyRegistry::standard();
    for p in [5u64, 7, 11, 13] {
        let field = FieldKind::fp(p).unwrap();
        for n in reg.orders() {
            let fam = reg.get(n).unwrap();
            if (n as u64).is_multiple_of(p) {
                assert!(
                    matches!(fam.delta_table(field), Err(Error::BadCharacteristic(_))),
                    "N={n} mod {p} must refuse: characteristic divides the order"
                );
                continue;
            }
            let mismatches = fam.verify(field).unwrap();
            assert!(mismatches.is_empty(), "N={n} mod {p}: {mismatches:?}");
        }
    }
}

#[test]
fn every_table_is_a_homomorphism() {
    let reg = FamilyRegistry::standard();
    for n in reg.orders() {
        let table = reg.get(n).unwrap().delta_table(FieldKind::Q).unwrap();
        assert!(table.verify_homomorphism().unwrap().is_empty(), "N={n}");
        // inverse rows multiply to the trivial class
        for (m, class) in &table.entries {
            if *m == 0 || (n - m) == n {
                continue;
            }
            let partner = table.entry(n - m).unwrap();
            assert!(
                class.mul(partner).unwrap().is_trivial(),
                "N={n}: delta({m}P) * delta({}P) not trivial",
                n - m
            );
        }
    }
}
