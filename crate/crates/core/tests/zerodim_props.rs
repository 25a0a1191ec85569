use cirigid::linear::PrimeField;
use cirigid::poly::{Monomial, Polynomial};
use cirigid::zerodim::{groebner_basis, is_regular_sequence, projective_dimension, Budget, IdealPresentation};
use proptest::prelude::*;

const N: usize = 4;

fn homogeneous_poly(degree: u32) -> impl Strategy<Value = Polynomial<PrimeField>> {
    let f = PrimeField::new(101).unwrap();
    prop::collection::vec((prop::collection::vec(0u32..N as u32, degree as usize), 0u64..101), 1..4).prop_map(
        move |terms| {
            let terms = terms
                .into_iter()
                .map(|(vars, c)| {
                    let mut e = vec![0u32; N];
                    for v in vars {
                        e[v as usize] += 1;
                    }
                    (Monomial::from_exps(e), c)
                })
                .collect();
            Polynomial::from_terms(&f, N, terms)
        },
    )
}

fn generators() -> impl Strategy<Value = Vec<Polynomial<PrimeField>>> {
    prop::collection::vec((1u32..=2).prop_flat_map(homogeneous_poly), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn groebner_basis_is_order_stable(gens in generators(), rot in 0usize..3) {
        let mut shuffled = gens.clone();
        let len = shuffled.len();
        shuffled.rotate_left(rot % len);
        shuffled.reverse();
        let a = groebner_basis(&IdealPresentation::new(gens).unwrap(), &Budget::default()).unwrap();
        let b = groebner_basis(&IdealPresentation::new(shuffled).unwrap(), &Budget::default()).unwrap();
        prop_assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn basis_contains_generators(gens in generators()) {
        let i = IdealPresentation::new(gens).unwrap();
        let gb = groebner_basis(&i, &Budget::default()).unwrap();
        for g in i.gens() {
            prop_assert!(gb.contains(g));
        }
    }

    #[test]
    fn regular_sequences_have_regular_prefixes(gens in generators()) {
        let b = Budget::default();
        let full = IdealPresentation::new(gens.clone()).unwrap();
        if is_regular_sequence(&full, &b).unwrap() {
            for k in 1..gens.len() {
                let prefix = IdealPresentation::new(gens[..k].to_vec()).unwrap();
                prop_assert!(is_regular_sequence(&prefix, &b).unwrap());
            }
        }
    }

    #[test]
    fn adding_a_generator_drops_dimension_by_at_most_one(gens in generators(), extra in homogeneous_poly(2)) {
        let b = Budget::default();
        let before = projective_dimension(&IdealPresentation::new(gens.clone()).unwrap(), &b).unwrap().proj_dim;
        let mut more = gens;
        more.push(extra);
        let after = projective_dimension(&IdealPresentation::new(more).unwrap(), &b).unwrap().proj_dim;
        prop_assert!(after <= before);
        prop_assert!(after >= before - 1 || after == -1);
    }
}
