//! Randomized invariants over generated presentations.

use proptest::prelude::*;

use quiver_hh::harness::{random_presentation, RandomSpec, TargetClass};
use quiver_hh::{
    bracket, classify, cup, emit_presentation, parse_presentation, Cochain, Cohomology, Field, MinimalComplex, Variant,
};

fn class() -> impl Strategy<Value = TargetClass> {
    prop_oneof![
        Just(TargetClass::Quadratic),
        Just(TargetClass::QuadraticS3),
        Just(TargetClass::String),
        Just(TargetClass::Gentle),
    ]
}

fn spec() -> impl Strategy<Value = RandomSpec> {
    (class(), 2usize..7, 1usize..7, 0.0f64..=1.0, any::<u64>()).prop_map(|(class, vertices, arrows, density, seed)| {
        let arrows = arrows.min(vertices);
        RandomSpec { class, vertices, arrows, density, seed }
    })
}

fn random_cochain(c: &MinimalComplex, n: usize, coeffs: &[i64]) -> Cochain {
    let f = c.field();
    let v = (0..c.dim(n)).map(|i| f.from_i64(coeffs[i % coeffs.len()])).collect();
    Cochain::from_coefficients(f, n, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn emit_parse_round_trip(s in spec()) {
        let p = random_presentation(&s).unwrap();
        prop_assert_eq!(parse_presentation(&emit_presentation(&p)).unwrap(), p);
    }

    #[test]
    fn class_flags_are_monotone(s in spec()) {
        let r = classify(&random_presentation(&s).unwrap());
        prop_assert!(!r.gentle || r.string);
        prop_assert!(!r.string || (r.s2 && r.s3));
        prop_assert!(r.triangular);
        match s.class {
            TargetClass::Quadratic => {}
            TargetClass::QuadraticS3 => prop_assert!(r.s3),
            TargetClass::String => prop_assert!(r.string),
            TargetClass::Gentle => prop_assert!(r.gentle),
        }
    }

    #[test]
    fn differential_squares_to_zero(s in spec()) {
        let c = MinimalComplex::new(&random_presentation(&s).unwrap());
        for n in 0..=c.top_degree() {
            prop_assert!(c.delta(n + 1).mul(&c.delta(n)).unwrap().is_zero());
        }
    }

    #[test]
    fn euler_characteristic_matches(s in spec()) {
        let h = Cohomology::new(&random_presentation(&s).unwrap());
        prop_assert_eq!(h.euler_from_dims(), h.complex().euler_characteristic());
    }

    #[test]
    fn cohomology_agrees_over_prime_fields(s in spec()) {
        let p = random_presentation(&s).unwrap();
        let q = Cohomology::new(&p);
        let f = Cohomology::new(&p.with_field(Field::Prime(7)));
        for n in 0..=q.top_degree() {
            prop_assert_eq!(q.hh_dim(n), f.hh_dim(n));
        }
    }

    #[test]
    fn bracket_is_graded_antisymmetric(s in spec(), a in prop::collection::vec(-3i64..4, 1..6), b in prop::collection::vec(-3i64..4, 1..6)) {
        let c = MinimalComplex::new(&random_presentation(&s).unwrap());
        let top = c.top_degree();
        for n in 1..=top {
            for m in 1..=top {
                let f = random_cochain(&c, n, &a);
                let g = random_cochain(&c, m, &b);
                for v in Variant::ALL {
                    let fg = bracket(&c, &f, &g, v).unwrap();
                    let gf = bracket(&c, &g, &f, v).unwrap();
                    let sign = c.field().sign((n - 1) * (m - 1) + 1);
                    prop_assert_eq!(fg, gf.scale(&sign));
                }
            }
        }
    }

    #[test]
    fn cup_is_associative_and_unital(s in spec(), a in prop::collection::vec(-3i64..4, 1..6)) {
        let c = MinimalComplex::new(&random_presentation(&s).unwrap());
        let one = c.unit();
        let top = c.top_degree();
        for n in 0..=top {
            let f = random_cochain(&c, n, &a);
            prop_assert_eq!(cup(&c, &one, &f), f.clone());
            for m in 0..=top - n {
                let g = random_cochain(&c, m, &a[1..].iter().chain(&a[..1]).copied().collect::<Vec<_>>());
                for k in 0..=top - n - m {
                    let e = random_cochain(&c, k, &a);
                    prop_assert_eq!(cup(&c, &cup(&c, &f, &g), &e), cup(&c, &f, &cup(&c, &g, &e)));
                }
            }
        }
    }

    #[test]
    fn class_reduction_is_exact(s in spec(), a in prop::collection::vec(-3i64..4, 1..6)) {
        let h = Cohomology::new(&random_presentation(&s).unwrap());
        let c = h.complex();
        for n in 1..=h.top_degree() {
            let x = random_cochain(c, n - 1, &a);
            let mut z = c.apply_delta(&x);
            for (rep, k) in h.representatives(n).iter().zip(&a) {
                z.add_scaled(rep, &c.field().from_i64(*k));
            }
            let r = h.reduce(&z).unwrap();
            let rebuilt = h.canonical_representative(&r.class).add(&c.apply_delta(r.witness.as_ref().unwrap()));
            prop_assert_eq!(rebuilt, z);
        }
    }
}
