use cirigid::linear::{pencil_min_rank, set_min_rank, Field, Matrix, PrimeField, QuadraticForm};
use proptest::prelude::*;

fn form(f: &PrimeField, n: usize, upper: &[u64]) -> QuadraticForm<PrimeField> {
    let mut it = upper.iter();
    let mut c = vec![vec![0u64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        for v in row.iter_mut().skip(i) {
            *v = *it.next().unwrap() % f.modulus();
        }
    }
    QuadraticForm::from_upper(f, n, |i, j| c[i][j]).unwrap()
}

/// Pairs `(P^T D1 P, P^T D2 P)` with sparse diagonals, so that the pencil
/// degenerates at several rational parameters.
fn degenerate_pair(p: u64) -> impl Strategy<Value = (usize, QuadraticForm<PrimeField>, QuadraticForm<PrimeField>)> {
    (2usize..=6).prop_flat_map(move |n| {
        (
            Just(n),
            prop::collection::vec(0u64..3, n),
            prop::collection::vec(0u64..3, n),
            prop::collection::vec(0u64..p, n * n),
        )
            .prop_map(move |(n, d1, d2, basis)| {
                let f = PrimeField::new(p).unwrap();
                let d = |v: &[u64]| {
                    Matrix::from_fn(&f, n, n, |i, j| if i == j { f.from_i64(v[i] as i64) } else { 0 })
                };
                let b = Matrix::from_fn(&f, n, n, |i, j| basis[i * n + j]);
                let congr = |m: Matrix<PrimeField>| {
                    QuadraticForm::new(b.transpose().mul(&m).unwrap().mul(&b).unwrap()).unwrap()
                };
                (n, congr(d(&d1)), congr(d(&d2)))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_route_matches_enumeration(n in 1usize..=6, a in prop::collection::vec(0u64..7, 21), b in prop::collection::vec(0u64..7, 21)) {
        let f = PrimeField::new(7).unwrap();
        let q1 = form(&f, n, &a);
        let q2 = form(&f, n, &b);
        prop_assert_eq!(pencil_min_rank(&q1, &q2).unwrap(), set_min_rank(&[q1, q2], u64::MAX).unwrap());
    }

    #[test]
    fn smith_route_matches_enumeration_on_degenerate_pencils((_n, q1, q2) in degenerate_pair(5)) {
        prop_assert_eq!(pencil_min_rank(&q1, &q2).unwrap(), set_min_rank(&[q1.clone(), q2.clone()], u64::MAX).unwrap());
        // symmetric in the two forms
        prop_assert_eq!(pencil_min_rank(&q1, &q2).unwrap(), pencil_min_rank(&q2, &q1).unwrap());
    }

    #[test]
    fn min_rank_is_bounded_by_members(n in 1usize..=6, a in prop::collection::vec(0u64..101, 21), b in prop::collection::vec(0u64..101, 21)) {
        let f = PrimeField::new(101).unwrap();
        let q1 = form(&f, n, &a);
        let q2 = form(&f, n, &b);
        let m = pencil_min_rank(&q1, &q2).unwrap();
        prop_assert!(m <= q1.rank() && m <= q2.rank());
        let sum = QuadraticForm::new(q1.gram().add(q2.gram()).unwrap()).unwrap();
        prop_assert!(m <= sum.rank());
    }
}

#[test]
fn fourteen_variable_pencil_is_fast() {
    let f = PrimeField::new(101).unwrap();
    // diag(1..14) and diag with a 2-dimensional common kernel direction shift
    let a: Vec<u64> = (1..=14).collect();
    let b: Vec<u64> = (0..14).map(|i| if i < 2 { 1 } else { (i % 5) as u64 + 1 }).collect();
    let q1 = QuadraticForm::diagonal(&f, &a).unwrap();
    let q2 = QuadraticForm::diagonal(&f, &b).unwrap();
    let start = std::time::Instant::now();
    let m = pencil_min_rank(&q1, &q2).unwrap();
    assert!(start.elapsed().as_secs() < 5);
    assert_eq!(m, set_min_rank(&[q1, q2], u64::MAX).unwrap());
}
