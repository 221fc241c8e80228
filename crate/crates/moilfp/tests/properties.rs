//! Randomized structural properties of the core data types.

use moilfp::efficiency::Archive;
use moilfp::model::{
    dominates, fmt_exact, parse_instance, parse_rational, rat, CriterionVector, Point,
    write_instance,
};
use moilfp::generator::{generate, GenSpec};
use proptest::prelude::*;

fn vector(k: usize) -> impl Strategy<Value = CriterionVector> {
    prop::collection::vec((0i64..40, 1i64..8), k)
        .prop_map(|vs| CriterionVector::new(vs.into_iter().map(|(p, q)| rat(p, q)).collect()))
}

proptest! {
    #[test]
    fn dominance_is_irreflexive(z in vector(3)) {
        prop_assert!(!dominates(&z, &z));
    }

    #[test]
    fn dominance_is_asymmetric(a in vector(3), b in vector(3)) {
        prop_assert!(!(dominates(&a, &b) && dominates(&b, &a)));
    }

    #[test]
    fn dominance_is_transitive(a in vector(2), b in vector(2), c in vector(2)) {
        if dominates(&a, &b) && dominates(&b, &c) {
            prop_assert!(dominates(&a, &c));
        }
    }

    #[test]
    fn rational_text_roundtrip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = rat(p, q);
        prop_assert_eq!(parse_rational(&fmt_exact(&r)).unwrap(), r);
    }

    #[test]
    fn archive_stays_mutually_non_dominated(zs in prop::collection::vec(vector(2), 1..60)) {
        let mut archive = Archive::new();
        for z in zs {
            archive.insert(Point::from_ints(&[0]), z);
        }
        let entries = archive.entries();
        for (i, (_, a)) in entries.iter().enumerate() {
            for (j, (_, b)) in entries.iter().enumerate() {
                prop_assert!(i == j || !dominates(a, b));
            }
        }
    }

    #[test]
    fn instance_file_roundtrip(seed in 0u64..500, n in 2usize..8, m in 1usize..5) {
        let spec = GenSpec { n, m, k: 2, seed, count: 1 };
        let inst = generate(&spec).unwrap().pop().unwrap();
        let text = write_instance(&inst);
        let back = parse_instance(&text, &inst.name).unwrap();
        prop_assert_eq!(write_instance(&back), text);
    }
}
