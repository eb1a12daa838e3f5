//! Property tests for Laurent polynomial arithmetic, the z-expansion and
//! exact division.

use kgrass::laurent::{Exponent, LaurentPoly};
use proptest::prelude::*;

const N: usize = 3;

fn poly(max_terms: usize, deg: i32) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-deg..=deg, N), -5i64..=5), 0..=max_terms).prop_map(|terms| {
        let mut p = LaurentPoly::zero(N);
        for (e, c) in terms {
            p += &LaurentPoly::monomial(e, c);
        }
        p
    })
}

/// Degree-zero polynomials in the consecutive ratios `t_i / t_{i+1}` with
/// nonnegative partial sums, the image of `z`-polynomials.
fn ratio_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((0i32..=2, 0i32..=2, -4i64..=4), 0..=4).prop_map(|terms| {
        let mut p = LaurentPoly::zero(N);
        for (a, b, c) in terms {
            // (t1/t2)^a (t2/t3)^b
            p += &LaurentPoly::monomial(vec![a, b - a, -b], c);
        }
        p
    })
}

fn nonunit_monomial() -> impl Strategy<Value = Exponent> {
    prop::collection::vec(-2i32..=2, N).prop_filter("m != 1", |e| e.iter().any(|&x| x != 0))
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(4, 2), b in poly(4, 2), c in poly(4, 2)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(N), a.clone());
    }

    #[test]
    fn json_round_trip(a in poly(6, 3)) {
        let back = LaurentPoly::from_json(&a.to_json()).unwrap();
        prop_assert_eq!(back.to_json_string(), a.to_json_string());
        prop_assert_eq!(back, a);
    }

    #[test]
    fn z_expansion_round_trip(a in ratio_poly()) {
        let z = a.z_expand().unwrap();
        prop_assert_eq!(z.to_laurent(), a);
    }

    #[test]
    fn division_inverts_multiplication(q in poly(4, 2), m in nonunit_monomial()) {
        let one_minus = &LaurentPoly::one(N) - &LaurentPoly::monomial(m.clone(), 1);
        let p = &q * &one_minus;
        prop_assert_eq!(p.divide_by_one_minus_monomial(&m).unwrap(), q);
    }

    #[test]
    fn division_detects_remainders(q in poly(3, 2), m in nonunit_monomial(), e in prop::collection::vec(-2i32..=2, N)) {
        let one_minus = &LaurentPoly::one(N) - &LaurentPoly::monomial(m.clone(), 1);
        let p = &(&q * &one_minus) + &LaurentPoly::monomial(e, 1);
        // A single monomial is never divisible by 1 - m.
        prop_assert!(p.divide_by_one_minus_monomial(&m).is_err());
    }

    #[test]
    fn bar_is_an_involutive_ring_map(a in poly(4, 2), b in poly(4, 2)) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }
}
