//! Groups unipotent symbols by core directly from the removal rules and
//! compares every block size with the relative Weyl group count.

use std::collections::BTreeMap;

use blockcensus_core::bounds::count_irr_g2d2w;
use blockcensus_core::classical::verify_classical_census;
use blockcensus_core::count_multipartitions;
use blockcensus_core::symbol::{
    enumerate_unipotent_symbols, symbol_core_weight, ClassicalType, Removal, Symbol,
};
use num_bigint::BigUint;

fn blocks(ty: ClassicalType, n: u32, kind: Removal) -> BTreeMap<Symbol, (u32, u32)> {
    let mut out = BTreeMap::new();
    for us in enumerate_unipotent_symbols(ty, n) {
        let (core, w) = symbol_core_weight(&us.symbol, kind);
        let e = out.entry(core).or_insert((w, 0));
        assert_eq!(e.0, w);
        e.1 += us.multiplicity;
    }
    out
}

#[test]
fn odd_defect_blocks_are_wreath_counts() {
    for n in 1..=8 {
        let kinds = [1, 3, 5]
            .map(Removal::Hook)
            .into_iter()
            .chain([1, 2].map(Removal::Cohook));
        for kind in kinds {
            for (core, (w, size)) in blocks(ClassicalType::B, n, kind) {
                let expected = count_multipartitions(2 * kind.length(), w);
                assert_eq!(
                    BigUint::from(size),
                    expected,
                    "B_{n} {kind} core {core} w={w}"
                );
            }
        }
    }
}

#[test]
fn even_defect_blocks_with_degenerate_cores() {
    let mut degenerate_seen = 0;
    for ty in [ClassicalType::D, ClassicalType::TwistedD] {
        for n in 2..=8 {
            for kind in [
                Removal::Hook(1),
                Removal::Hook(2),
                Removal::Cohook(1),
                Removal::Cohook(2),
            ] {
                for (core, (w, size)) in blocks(ty, n, kind) {
                    let len = kind.length();
                    let expected = match (w, core.is_degenerate()) {
                        (0, true) => BigUint::from(2u32),
                        (0, false) => BigUint::from(1u32),
                        (_, true) => {
                            degenerate_seen += 1;
                            count_irr_g2d2w(len, w)
                        }
                        (_, false) => count_multipartitions(2 * len, w),
                    };
                    assert_eq!(
                        BigUint::from(size),
                        expected,
                        "{ty}_{n} {kind} core {core} w={w}"
                    );
                }
            }
        }
    }
    assert!(degenerate_seen > 0);
}

#[test]
fn totals() {
    let total = |ty, n| {
        enumerate_unipotent_symbols(ty, n)
            .iter()
            .map(|s| s.multiplicity)
            .sum::<u32>()
    };
    assert_eq!(total(ClassicalType::B, 2), 6);
    assert_eq!(total(ClassicalType::D, 4), 14);
    assert_eq!(total(ClassicalType::B, 3), 12);
    assert_eq!(total(ClassicalType::TwistedD, 4), 10);
}

#[test]
fn census_over_primes() {
    for ty in [
        ClassicalType::B,
        ClassicalType::C,
        ClassicalType::D,
        ClassicalType::TwistedD,
    ] {
        for n in 1..=7 {
            for (q, p) in [
                (2, 3),
                (2, 5),
                (2, 7),
                (3, 5),
                (3, 7),
                (3, 13),
                (4, 5),
                (5, 3),
                (7, 3),
                (8, 3),
            ] {
                let r = verify_classical_census(ty, n, q, p).unwrap();
                assert!(r.is_clean(), "{ty}_{n} q={q} p={p}");
            }
        }
    }
}
