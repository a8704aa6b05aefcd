use chisig::assembly::{
    diagnose, edge_defects, euler, signature_l2_route, signature_novikov_route, signature_novikov_route_with,
    validate_assembly, Classification,
};
use chisig::curvature::{curvature_at, model_chart, random_points, selfdual_balance, DEFAULT_STEP, MODEL_NAMES};
use chisig::examples::{branched_cover_invariants, RandomFamily};
use chisig::flat_catalog::{glueable, BoundaryClass, FlatConvention, FlatLetter, Sign};
use chisig::rational::{self, int};
use chisig::sl2_monodromy::{classify_parabolic, SL2Matrix};
use chisig::{Assembly, GeometryTag};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = RandomFamily> {
    prop::sample::select(RandomFamily::ALL.to_vec())
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

fn boundary() -> impl Strategy<Value = BoundaryClass> {
    prop_oneof![
        (prop::sample::select(FlatLetter::ALL.to_vec()), sign()).prop_map(|(l, s)| BoundaryClass::flat(l, s)),
        (-40i64..40).prop_filter("nonzero", |e| *e != 0).prop_map(BoundaryClass::nil_torus),
    ]
}

/// Words in the two elementary generators.
fn sl2() -> impl Strategy<Value = SL2Matrix> {
    prop::collection::vec((any::<bool>(), -3i64..=3), 0..6).prop_map(|word| {
        word.into_iter().fold(SL2Matrix::identity(), |m, (upper, k)| {
            let g = if upper { SL2Matrix::from_entries(1, k, 0, 1) } else { SL2Matrix::from_entries(1, 0, k, 1) };
            m.mul(&g)
        })
    })
}

fn sample(fam: RandomFamily, seed: u64) -> Assembly {
    fam.generate(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn eta_is_odd_under_reversal(b in boundary()) {
        let eta = b.eta().unwrap();
        prop_assert_eq!(b.reverse().eta().unwrap(), -eta);
    }

    #[test]
    fn glueable_is_symmetric_and_reversal_glues(a in boundary(), b in boundary()) {
        prop_assert_eq!(glueable(a, b), glueable(b, a));
        prop_assert!(glueable(a, a.reverse()));
    }

    #[test]
    fn parabolic_class_is_conjugation_invariant(g in sl2(), k in -20i64..=20, s in sign()) {
        prop_assume!(k != 0);
        let p = SL2Matrix::from_entries(1, k, 0, 1);
        let p = if s == Sign::Minus { p.neg() } else { p };
        let class = classify_parabolic(&p.conjugate_by(&g)).unwrap();
        prop_assert_eq!(class.sign, s);
        prop_assert_eq!(class.k_i64().unwrap(), k);
    }

    #[test]
    fn random_assemblies_are_valid(fam in family(), seed in any::<u64>()) {
        let a = sample(fam, seed);
        let v = validate_assembly(&a);
        prop_assert!(v.is_empty(), "{}: {:?}", a.label, v);
    }

    #[test]
    fn routes_agree(fam in family(), seed in any::<u64>()) {
        let a = sample(fam, seed);
        prop_assert_eq!(signature_l2_route(&a).unwrap(), signature_novikov_route(&a).unwrap());
    }

    #[test]
    fn flat_convention_does_not_change_sigma(fam in family(), seed in any::<u64>()) {
        let a = sample(fam, seed);
        prop_assert_eq!(
            signature_novikov_route_with(&a, FlatConvention::Flipped).unwrap(),
            signature_novikov_route(&a).unwrap()
        );
    }

    #[test]
    fn inequality_and_parity(fam in family(), seed in any::<u64>()) {
        let d = diagnose(&sample(fam, seed)).unwrap();
        prop_assert!(d.chi >= 3 * d.sigma.abs());
        prop_assert_eq!((d.chi - d.sigma).rem_euclid(2), 0);
        prop_assert_eq!(d.slack, d.chi - 3 * d.sigma.abs());
        if d.classification == Classification::EqualityCertified {
            prop_assert!(d.certificate.is_some());
            prop_assert_eq!(d.slack, 0);
        }
    }

    #[test]
    fn reversal_negates_sigma(fam in family(), seed in any::<u64>()) {
        let a = sample(fam, seed);
        let r = a.reverse_orientation();
        prop_assert!(validate_assembly(&r).is_empty());
        prop_assert_eq!(euler(&r).unwrap(), euler(&a).unwrap());
        prop_assert_eq!(signature_l2_route(&r).unwrap(), -signature_l2_route(&a).unwrap());
    }

    #[test]
    fn edge_defects_cancel(fam in family(), seed in any::<u64>()) {
        let a = sample(fam, seed);
        for e in edge_defects(&a).unwrap() {
            prop_assert!(e.cancels(), "{:?}", e);
        }
    }

    #[test]
    fn real_and_holzapfel_have_zero_sigma(seed in any::<u64>()) {
        for fam in [RandomFamily::Real, RandomFamily::Holzapfel] {
            prop_assert_eq!(signature_l2_route(&sample(fam, seed)).unwrap(), int(0));
        }
    }

    #[test]
    fn complex_family_is_strict(seed in any::<u64>()) {
        let a = sample(RandomFamily::Complex, seed);
        prop_assert!(a.pieces.iter().all(|p| p.geometry == GeometryTag::ComplexHyperbolic));
        prop_assert!(diagnose(&a).unwrap().slack > 0);
    }

    #[test]
    fn assembly_json_round_trip(fam in family(), seed in any::<u64>()) {
        let a = sample(fam, seed);
        let text = serde_json::to_string(&a).unwrap();
        let b: Assembly = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn branched_cover_is_saturated(half in 1i64..40) {
        let r = branched_cover_invariants(2 * half).unwrap();
        prop_assert!(r.saturated());
        prop_assert_eq!(r.logbmy_defect, r.minus_l_squared);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn curvature_identities(idx in 0usize..MODEL_NAMES.len(), seed in any::<u64>()) {
        let chart = model_chart(MODEL_NAMES[idx]).unwrap();
        let p = random_points(&chart, 1, seed)[0];
        let r = curvature_at(&chart, &p, DEFAULT_STEP).unwrap();
        prop_assert!(r.bianchi_defect() < 1e-6, "bianchi {}", r.bianchi_defect());
        prop_assert!(r.weyl_trace_defect() < 1e-6, "trace {}", r.weyl_trace_defect());
        prop_assert!((r.chi_density_from_riemann() - r.chi_density).abs() < 1e-6);
        prop_assert!((r.delta_plus_density - r.delta_minus_density - 6.0 * r.sigma_density).abs() < 1e-8);
        prop_assert!((r.delta_plus_density + r.delta_minus_density - 2.0 * r.chi_density).abs() < 1e-8);
    }

    #[test]
    fn homogeneous_models_have_constant_invariants(idx in 0usize..MODEL_NAMES.len(), seed in any::<u64>()) {
        let chart = model_chart(MODEL_NAMES[idx]).unwrap();
        let base = curvature_at(&chart, &chart.base_point(), DEFAULT_STEP).unwrap();
        let p = random_points(&chart, 1, seed)[0];
        let r = curvature_at(&chart, &p, DEFAULT_STEP).unwrap();
        for ((name, a), (_, b)) in base.invariants().into_iter().zip(r.invariants()) {
            prop_assert!((a - b).abs() < 1e-5, "{} {} vs {}", name, a, b);
        }
    }

    #[test]
    fn orientation_swap_exchanges_halves(idx in 0usize..MODEL_NAMES.len(), seed in any::<u64>()) {
        let chart = model_chart(MODEL_NAMES[idx]).unwrap();
        let p = random_points(&chart, 1, seed)[0];
        let r = curvature_at(&chart, &p, DEFAULT_STEP).unwrap();
        let s = curvature_at(&chart.reversed(), &p, DEFAULT_STEP).unwrap();
        prop_assert!((r.wplus_norm2 - s.wminus_norm2).abs() < 1e-6);
        prop_assert!((r.wminus_norm2 - s.wplus_norm2).abs() < 1e-6);
        prop_assert!((r.sigma_density + s.sigma_density).abs() < 1e-6);
        prop_assert!((r.chi_density - s.chi_density).abs() < 1e-6);
    }

    #[test]
    fn halving_the_step_is_stable(idx in 0usize..MODEL_NAMES.len(), seed in any::<u64>()) {
        let chart = model_chart(MODEL_NAMES[idx]).unwrap().without_derivative();
        let p = random_points(&chart, 1, seed)[0];
        let a = curvature_at(&chart, &p, 1e-3).unwrap();
        let b = curvature_at(&chart, &p, 5e-4).unwrap();
        for ((name, x), (_, y)) in a.invariants().into_iter().zip(b.invariants()) {
            prop_assert!((x - y).abs() < 1e-4 * (1.0 + x.abs()), "{} {} vs {}", name, x, y);
        }
    }
}

#[test]
fn euclidean_factor_models_are_balanced() {
    for name in ["F4", "H2xE2", "H2xH2", "H3xE1", "H4"] {
        let chart = model_chart(name).unwrap();
        let pts = random_points(&chart, 4, 7);
        assert!(selfdual_balance(&chart, &pts).unwrap() < 1e-6, "{name}");
    }
}

#[test]
fn sigma_is_always_integral_for_mixed() {
    for seed in 0..64 {
        let a = sample(RandomFamily::Mixed, seed);
        assert!(rational::as_i64(&signature_l2_route(&a).unwrap()).is_some());
    }
}
