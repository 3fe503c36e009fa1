//! Randomized invariants over the constructible fan families: projective
//! spaces, Hirzebruch surfaces, del Pezzo surfaces, projectivized bundles,
//! products, and short blow-up chains over them. Each property states a
//! law the engine must satisfy on every member, not a fixed oracle value.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use toric::chow::{Chow, CycleClass};
use toric::construct::{
    del_pezzo_database, hirzebruch, kleinschmidt_bundle, product, projective_space, BundleSpec,
    Kleinschmidt,
};
use toric::fano::{analyze_fan, rank2_closed_forms};
use toric::surface::{ch2_pair, surface_class, surface_class_fast, SurfaceKind};
use toric::{Cone, Fan};

fn arb_bundle_spec() -> impl Strategy<Value = BundleSpec> {
    (2usize..=4, 2usize..=4)
        .prop_flat_map(|(m, n)| {
            (Just(m), Just(n), proptest::collection::vec(0i64..=3, m - 1))
        })
        .prop_map(|(m, n, mut twists)| {
            twists.sort_unstable_by(|a, b| b.cmp(a));
            BundleSpec::new(m, n, twists).expect("sorted non-negative twists are valid")
        })
}

/// A short chain of star subdivisions; each pick indexes into the list of
/// subdividable faces of the fan it reaches.
fn subdivide_chain(seed: Fan, picks: &[usize]) -> Fan {
    let mut fan = seed;
    for &pick in picks {
        if fan.dim() < 2 {
            break;
        }
        let mut faces = fan.faces(2).unwrap();
        if fan.dim() >= 3 {
            faces.extend(fan.faces(3).unwrap());
        }
        let sigma = faces[pick % faces.len()].clone();
        fan = fan.star_subdivision(&sigma).expect("subdividing a face keeps the fan smooth");
    }
    fan
}

fn arb_fan() -> impl Strategy<Value = Fan> {
    let base = prop_oneof![
        (1usize..=4).prop_map(|d| projective_space(d).unwrap()),
        (0i64..=4).prop_map(|a| hirzebruch(a).unwrap()),
        (0usize..5).prop_map(|i| del_pezzo_database().unwrap().swap_remove(i).1),
        arb_bundle_spec().prop_map(|spec| kleinschmidt_bundle(spec).unwrap()),
        ((1usize..=2), (1usize..=3)).prop_map(|(a, b)| {
            product(&projective_space(a).unwrap(), &projective_space(b).unwrap()).unwrap()
        }),
    ];
    (base, proptest::collection::vec(any::<usize>(), 0..=2))
        .prop_map(|(seed, picks)| subdivide_chain(seed, &picks))
}

fn arb_cycle_class() -> impl Strategy<Value = CycleClass> {
    (1usize..=3)
        .prop_flat_map(|degree| {
            let entry = (proptest::collection::vec(0usize..6, degree), -9i64..=9);
            (Just(degree), proptest::collection::vec(entry, 0..6))
        })
        .prop_map(|(degree, entries)| {
            let mut class = CycleClass::new(degree);
            for (mut rays, coeff) in entries {
                rays.sort_unstable();
                class.set(rays, BigInt::from(coeff));
            }
            class
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fan_json_round_trips(fan in arb_fan()) {
        let json = fan.to_json().unwrap();
        let back = Fan::from_parts(json).unwrap();
        prop_assert_eq!(back, fan);
    }

    #[test]
    fn wall_relations_are_lattice_identities(fan in arb_fan()) {
        let mut chow = Chow::new(&fan);
        for wall in fan.walls() {
            let rel = chow.wall_relation(&wall.rays).unwrap();
            let (u, v) = rel.opposite;
            prop_assert_eq!(rel.coefficients.get(&u), Some(&BigInt::from(1)));
            prop_assert_eq!(rel.coefficients.get(&v), Some(&BigInt::from(1)));
            let mut sum = vec![BigInt::zero(); fan.dim()];
            for (&ray, weight) in &rel.coefficients {
                for (k, coord) in fan.ray(ray).iter().enumerate() {
                    sum[k] += coord * weight;
                }
            }
            prop_assert!(sum.iter().all(BigInt::is_zero), "wall {:?}", wall.rays);
        }
    }

    #[test]
    fn intersection_numbers_ignore_divisor_order(
        fan in arb_fan(),
        seed in any::<u64>(),
    ) {
        let mut chow = Chow::new(&fan);
        let sigma = fan.max_cones()[0].clone();
        let divisors = sigma.to_vec();
        let baseline = chow.intersection_number(&divisors, &Cone::zero()).unwrap();
        let mut shuffled = divisors;
        // deterministic permutation driven by the seed
        let n = shuffled.len();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let value = chow.intersection_number(&shuffled, &Cone::zero()).unwrap();
        prop_assert_eq!(value, baseline);
    }

    #[test]
    fn euler_number_counts_maximal_cones(fan in arb_fan()) {
        let report = analyze_fan(&fan, false).unwrap();
        prop_assert_eq!(report.euler, BigInt::from(fan.max_cones().len()));
    }

    #[test]
    fn two_fano_implies_fano_and_filter_pass(fan in arb_fan()) {
        let report = analyze_fan(&fan, false).unwrap();
        if report.is_two_fano {
            prop_assert!(report.is_fano);
            prop_assert!(report.lemma_pass);
        }
        if report.is_fano {
            prop_assert!(report.fano_witness.is_none());
        } else {
            prop_assert!(report.fano_witness.is_some());
        }
    }

    #[test]
    fn fast_surface_classes_match_the_engine(fan in arb_fan()) {
        if fan.dim() < 2 {
            return Ok(());
        }
        let mut chow = Chow::new(&fan);
        for tau in fan.faces(fan.dim() - 2).unwrap() {
            let (kind, class) = surface_class(&mut chow, &tau).unwrap();
            match kind {
                SurfaceKind::Other { .. } => {}
                _ => {
                    let fast = surface_class_fast(&mut chow, &tau).unwrap();
                    let engine = chow.class_polynomial(&tau).unwrap();
                    prop_assert_eq!(&fast, &engine);
                    prop_assert_eq!(&fast, &class);
                }
            }
            if let SurfaceKind::P2 { .. } = kind {
                prop_assert!(!ch2_pair(&class).unwrap().is_negative());
            }
        }
    }

    #[test]
    fn bundle_closed_forms_agree_with_the_engine(spec in arb_bundle_spec()) {
        let record = rank2_closed_forms(&spec).unwrap();
        let k = Kleinschmidt::build(spec.clone()).unwrap();
        let report = analyze_fan(&k.fan, false).unwrap();

        // Fano iff the base degree beats the twists.
        prop_assert_eq!(record.fano, report.is_fano);
        prop_assert_eq!(record.fano, (spec.n as i64) > spec.sum_twists());

        // The middle surface's pairing is half the closed-form integer.
        let mut chow = Chow::new(&k.fan);
        let class = surface_class_fast(&mut chow, &k.s2_cone()).unwrap();
        let doubled = ch2_pair(&class).unwrap() * BigRational::from(BigInt::from(2));
        prop_assert_eq!(doubled, BigRational::from(record.ch2_s2.clone()));

        if record.fano {
            prop_assert_eq!(record.two_fano, report.is_two_fano);
        }
    }

    #[test]
    fn fast_mode_never_changes_a_verdict(fan in arb_fan()) {
        let full = analyze_fan(&fan, false).unwrap();
        let fast = analyze_fan(&fan, true).unwrap();
        prop_assert_eq!(full.is_fano, fast.is_fano);
        prop_assert_eq!(full.lemma_pass, fast.lemma_pass);
        prop_assert_eq!(full.is_two_fano, fast.is_two_fano);
    }

    #[test]
    fn cycle_classes_round_trip_through_json(class in arb_cycle_class()) {
        let json = serde_json::to_string(&class).unwrap();
        let back: CycleClass = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, class);
    }
}
