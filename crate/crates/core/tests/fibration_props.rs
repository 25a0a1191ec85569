use cirigid::fibration::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn spec() -> impl Strategy<Value = FibrationSpec> {
    (1i64..12, 2i64..30, 0i64..40, 0i64..40, 0i64..20)
        .prop_map(|(m, d1, extra, l1, l2)| FibrationSpec::new(m, d1, d1 + extra, l1, l2).unwrap())
}

fn class(m: u32, p: u32, seed: &[i64]) -> BigradedClass {
    let mut c = BigradedClass::zero(m, p);
    for (idx, &v) in seed.iter().enumerate() {
        let a = idx as u32 % (m + 1);
        let b = (idx as u32 / (m + 1)) % (p + 1);
        c = c.add(&BigradedClass::monomial(m, p, a, b, v));
    }
    c
}

proptest! {
    #[test]
    fn ring_is_associative_and_commutative(
        m in 1u32..4, p in 1u32..5,
        a in prop::collection::vec(-5i64..6, 1..8),
        b in prop::collection::vec(-5i64..6, 1..8),
        c in prop::collection::vec(-5i64..6, 1..8),
    ) {
        let (x, y, z) = (class(m, p, &a), class(m, p, &b), class(m, p, &c));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert!(x.mul(&BigradedClass::h_s(m, p).pow(m + 1)).is_zero());
        prop_assert!(x.mul(&BigradedClass::h_p(m, p).pow(p + 1)).is_zero());
    }

    #[test]
    fn intersection_number_matches_the_closed_form(s in spec()) {
        let FibrationSpec { m, d1, d2, l1, l2 } = s;
        let expect = d1 * d2 * (m + 1 - l1 - l2) + l1 * d2 + l2 * d1;
        prop_assert_eq!(intersection_criterion(&s).unwrap().number, BigInt::from(expect));
    }

    #[test]
    fn swapping_the_factors_keeps_the_number(s in spec()) {
        let FibrationSpec { m, d1, d2, l1, l2 } = s;
        // built directly: the constructor insists on d1 ≤ d2
        let swapped = FibrationSpec { m, d1: d2, d2: d1, l1: l2, l2: l1 };
        prop_assert_eq!(intersection_criterion(&swapped).unwrap(), intersection_criterion(&s).unwrap());
    }

    #[test]
    fn main_inequality_iff_nonpositive_number(s in spec()) {
        let r = superrigidity_criterion(&s).unwrap();
        prop_assert!(r.equivalence_holds);
        // cleared denominators: Σ l_i (d_i − 1) d_j ≥ (m + 1) d1 d2
        let FibrationSpec { m, d1, d2, l1, l2 } = s;
        let lhs = l1 * (d1 - 1) * d2 + l2 * (d2 - 1) * d1;
        prop_assert_eq!(r.main_inequality, lhs >= (m + 1) * d1 * d2);
    }
}
