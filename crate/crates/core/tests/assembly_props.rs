mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zn_schottky::assembly::{
    assemble, audit_no_parabolic, certify, coincident_words, in_envelope_union, limit_points, word_count, words,
    Layout, FAITHFUL_TOL,
};
use zn_schottky::epimorphisms::{build_conformal_epi, build_extended_epi, Epimorphism};
use zn_schottky::factors::evaluate;
use zn_schottky::moebius::{classify, MapClass};
use zn_schottky::signature::{AnySignature, ConformalSignature, FactorKind};

fn epi(sig: &AnySignature) -> Epimorphism {
    match sig {
        AnySignature::Conformal(s) => build_conformal_epi(s).unwrap(),
        AnySignature::Extended(s) => build_extended_epi(s).unwrap(),
    }
}

#[test]
fn suite_passes_geometric_checks() {
    for (name, sig) in common::geometric_suite() {
        let asm = assemble(&sig, Layout::default()).unwrap();
        let cert = certify(&asm, 512, 1e-6);
        assert!(cert.passed, "{name}: {:?}", cert.steps.iter().find(|s| !s.passed));
        let list = words(&asm, 6);
        assert_eq!(list.len() as i128, word_count(&sig.factor_kinds(), 6), "{name}");
        assert!(coincident_words(&list, FAITHFUL_TOL).is_empty(), "{name}");
        let audit = audit_no_parabolic(&asm, 6, 1e-6);
        assert!(audit.suspects.is_empty(), "{name}: {:?}", audit.suspects);
        for p in limit_points(&asm, 6) {
            assert!(in_envelope_union(&asm, p, 1e-6), "{name}: {p}");
        }
    }
}

#[test]
fn kernel_words_are_loxodromic() {
    for (name, sig) in common::geometric_suite() {
        let asm = assemble(&sig, Layout::default()).unwrap();
        let phi = epi(&sig);
        for (w, g) in words(&asm, 6) {
            if phi.apply(&w) == 0 {
                assert!(!g.is_reversing(), "{name}");
                assert!(matches!(classify(&g), Ok(MapClass::Loxodromic { .. })), "{name}: {w:?}");
            }
        }
    }
}

#[test]
fn parity_matches_orientation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, sig) in common::geometric_suite() {
        if !sig.is_extended() {
            continue;
        }
        let asm = assemble(&sig, Layout::default()).unwrap();
        let phi = epi(&sig);
        let maps: Vec<_> = asm.generators.iter().map(|(_, g)| *g).collect();
        let k = maps.len() as i32;
        for _ in 0..1000 {
            let len = rng.gen_range(1..=10);
            let w: Vec<i32> = (0..len)
                .map(|_| rng.gen_range(1..=k) * if rng.gen_bool(0.5) { 1 } else { -1 })
                .collect();
            let g = evaluate(&maps, &w);
            assert_eq!(phi.apply(&w) % 2 == 1, g.is_reversing(), "{name}: {w:?}");
        }
    }
}

#[test]
fn certificate_is_monotone_in_spacing() {
    for (name, sig) in common::geometric_suite() {
        let mut passed = false;
        for spacing in [2.5, 4.0, 8.0] {
            let asm = assemble(&sig, Layout { spacing, radius: 1.0 }).unwrap();
            let ok = certify(&asm, 256, 1e-6).passed;
            assert!(ok || !passed, "{name}: spacing {spacing}");
            passed |= ok;
        }
    }
}

fn small_conformal() -> impl Strategy<Value = ConformalSignature> {
    (2..=6u64).prop_flat_map(|n| {
        let ds: Vec<u64> = (2..=n).filter(|k| n % k == 0).collect();
        (Just(n), 0..=2usize, prop::collection::vec(prop::sample::select(ds), 0..=2))
            .prop_filter_map("admissible", |(n, a, ell)| {
                ConformalSignature::new(n, a, ell, vec![]).ok().filter(|s| s.is_admissible())
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn word_counts_match_growth(sig in small_conformal(), len in 1..=5usize) {
        let any = AnySignature::Conformal(sig);
        let asm = assemble(&any, Layout::default()).unwrap();
        let kinds: Vec<FactorKind> = any.factor_kinds();
        prop_assert_eq!(words(&asm, len).len() as i128, word_count(&kinds, len));
    }

    #[test]
    fn assembled_conformal_groups_certify(sig in small_conformal()) {
        let asm = assemble(&AnySignature::Conformal(sig), Layout::default()).unwrap();
        let cert = certify(&asm, 128, 1e-6);
        prop_assert!(cert.passed);
        prop_assert!(audit_no_parabolic(&asm, 4, 1e-6).suspects.is_empty());
    }
}
