mod common;

use cirigid::zerodim::{dimension_by_point_count, projective_dimension, Budget};
use common::{random_binomial_ideals, square_free_monomial_ideals};

#[test]
fn binomial_ideals_over_f7() {
    let budget = Budget::default();
    let mut bad = Vec::new();
    for (k, i) in random_binomial_ideals(100, 2024).iter().enumerate() {
        let g = projective_dimension(i, &budget).unwrap().proj_dim;
        let c = dimension_by_point_count(i, 7, 3, &budget).unwrap();
        if g != c.proj_dim {
            bad.push(format!("{k}: {:?} groebner {g} count {:?}", i.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(), c));
        }
    }
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn square_free_monomial_ideals_agree() {
    let budget = Budget::default();
    let ideals = square_free_monomial_ideals();
    assert!(ideals.len() > 5000);
    for i in &ideals {
        let g = projective_dimension(i, &budget).unwrap().proj_dim;
        let c = dimension_by_point_count(i, 2, 3, &budget).unwrap();
        assert_eq!(g, c.proj_dim, "{:?}", i.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>());
    }
}
