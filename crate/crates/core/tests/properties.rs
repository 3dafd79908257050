use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nucleus_kit::bitset::Subset;
use nucleus_kit::cases::zp::{zp_hom_bruteforce, zp_hom_count, ZpVector};
use nucleus_kit::context::{nucleus, nucleus_bruteforce, FormalContext};
use nucleus_kit::cxt::{read_cxt, write_cxt};
use nucleus_kit::order::{dm_completion, dm_completion_bruteforce, random_poset, FinPoset};
use nucleus_kit::quantale::{
    other, qderive_down, qderive_up, transfer_value, Quantale, QuantaleMatrix,
};
use nucleus_kit::setcat::Budget;
use nucleus_kit::verify::dm_defect;

fn poset(seed: u64, n: usize, density: f64) -> FinPoset {
    random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, density)
}

fn context() -> impl Strategy<Value = FormalContext> {
    (0usize..=6, 0usize..=6)
        .prop_flat_map(|(m, k)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), k), m)
        })
        .prop_map(|t| FormalContext::from_matrix(t).unwrap())
}

fn unit_value() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), Just(1.0), 0.0f64..=1.0]
}

fn q_matrix() -> impl Strategy<Value = (QuantaleMatrix, Vec<f64>, Vec<f64>)> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(m, k)| {
        (
            proptest::collection::vec(proptest::collection::vec(unit_value(), k), m),
            proptest::collection::vec(unit_value(), m),
            proptest::collection::vec(unit_value(), k),
        )
            .prop_map(|(e, a, b)| (QuantaleMatrix::new(Quantale::UnitProduct, e).unwrap(), a, b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn completion_is_a_lattice_of_cuts(seed in any::<u64>(), n in 0usize..=7, d in 0.0f64..0.8) {
        let p = poset(seed, n, d);
        prop_assert_eq!(dm_defect(&p), None);
        let dm = dm_completion(&p);
        prop_assert_eq!(&dm, &dm_completion_bruteforce(&p));
        for c in &dm.cuts {
            prop_assert_eq!(p.ub(c.lower), c.upper);
            prop_assert_eq!(p.lb(c.upper), c.lower);
        }
        // the embedding is an order embedding
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(p.leq(x, y), dm.leq(dm.embed[x], dm.embed[y]));
            }
        }
    }

    #[test]
    fn concepts_are_exactly_the_fixpoints(c in context()) {
        let l = nucleus(&c);
        let mut a = l.concepts.clone();
        let mut b = nucleus_bruteforce(&c).concepts;
        a.sort();
        b.sort();
        prop_assert_eq!(&a, &b);
        for k in &l.concepts {
            prop_assert_eq!(c.up(k.extent), k.intent);
            prop_assert_eq!(c.down(k.intent), k.extent);
        }
        prop_assert!(l.order_table().is_complete_lattice());
    }

    #[test]
    fn derivation_closure_laws(c in context(), bits in any::<u64>()) {
        let s = Subset(bits & Subset::full(c.num_objects()).bits());
        let cl = |x: Subset| c.down(c.up(x));
        prop_assert!(s.is_subset(cl(s)));
        prop_assert_eq!(cl(cl(s)), cl(s));
        let t = s.intersection(Subset(bits >> 7));
        prop_assert!(cl(t).is_subset(cl(s)));
    }

    #[test]
    fn cxt_round_trip(c in context()) {
        prop_assert_eq!(read_cxt(&write_cxt(&c)).unwrap(), c.clone());
        prop_assert_eq!(FormalContext::from_json(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn poset_json_round_trip(seed in any::<u64>(), n in 0usize..=8) {
        let p = poset(seed, n, 0.4);
        prop_assert_eq!(FinPoset::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn residual_is_adjoint(t in unit_value(), s in unit_value(), r in unit_value()) {
        let q = Quantale::UnitProduct;
        // t ⊗ r ≤ s ⟺ r ≤ (t ⊸ s), up to rounding at the boundary
        let lhs = q.tensor(t, r) <= s + 1e-12;
        let rhs = r <= q.residual(t, s) + 1e-12;
        prop_assert!(lhs == rhs || (q.tensor(t, r) - s).abs() < 1e-9);
    }

    #[test]
    fn transfer_is_invertible(v in unit_value()) {
        let back = transfer_value(other(Quantale::UnitProduct), transfer_value(Quantale::UnitProduct, v));
        prop_assert!((back - v).abs() < 1e-12);
    }

    #[test]
    fn quantale_derivations_form_a_galois_connection((m, alpha, beta) in q_matrix()) {
        let q = m.quantale;
        let up = qderive_up(&m, &alpha).unwrap();
        let down = qderive_down(&m, &beta).unwrap();
        let up_down = qderive_down(&m, &up).unwrap();
        for (a, b) in alpha.iter().zip(&up_down) {
            prop_assert!(q.leq(*a, *b + 1e-12));
        }
        let down_up = qderive_up(&m, &down).unwrap();
        for (a, b) in beta.iter().zip(&down_up) {
            prop_assert!(q.leq(*a, *b + 1e-12));
        }
        // closed after one round trip
        let again = qderive_up(&m, &up_down).unwrap();
        for (a, b) in up.iter().zip(&again) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn zp_formula_matches_enumeration(p in prop_oneof![Just(2usize), Just(3), Just(5)], a in 0usize..=2, b in 0usize..=1, c in 0usize..=2, d in 0usize..=2) {
        let x = ZpVector::new(p, a, b).unwrap();
        let y = ZpVector::new(p, c, d).unwrap();
        let n = zp_hom_bruteforce(&x, &y, &mut Budget::new(10_000_000)).unwrap();
        prop_assert_eq!(zp_hom_count(&x, &y).unwrap(), n.into());
    }
}
