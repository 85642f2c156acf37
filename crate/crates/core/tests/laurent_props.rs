use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use tap_core::laurent::{gcd2_z, gcd_q, LaurentPoly, PolyMatrix};

fn poly() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(-9i64..=9, 0..6)).prop_map(|(low, cs)| LaurentPoly::from_ints(low, &cs))
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_forgets_units(a in nonzero_poly(), k in -5i64..5, neg in any::<bool>()) {
        let c = a.canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        let moved = if neg { -a.shift(k) } else { a.shift(k) };
        prop_assert_eq!(moved.canonical(), c.clone());
        prop_assert_eq!(c.min_exp(), Some(0));
        prop_assert!(c.leading_coeff() > BigRational::from_integer(BigInt::from(0)));
    }

    #[test]
    fn exact_division_undoes_multiplication(a in poly(), b in nonzero_poly()) {
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        let (q, r) = (&a * &b + LaurentPoly::one()).div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, &a * &b + LaurentPoly::one());
    }

    #[test]
    fn gcds_divide_and_absorb_common_factors(a in nonzero_poly(), b in nonzero_poly(), c in nonzero_poly()) {
        let g = gcd_q(&a, &b);
        prop_assert!(g.divides(&a) && g.divides(&b));
        let gz = gcd2_z(&(&a * &c), &(&b * &c));
        prop_assert!(c.primitive_part().divides(&gz));
        prop_assert!(gz.is_integral());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(), b in poly(), x in 1i64..6) {
        let x = BigRational::from_integer(BigInt::from(x));
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
    }

    #[test]
    fn json_round_trip(a in poly()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn monic_is_multiplicative(a in nonzero_poly(), b in nonzero_poly()) {
        // leading coefficients multiply, and a product of integers is a unit only if both are
        prop_assert_eq!((&a * &b).is_monic(), a.is_monic() && b.is_monic());
        prop_assert_eq!(a.reverse().reverse(), a.clone());
    }

    #[test]
    fn det_product_rule(entries in prop::collection::vec(poly(), 18)) {
        let a = PolyMatrix::from_fn(3, 3, |i, j| entries[3 * i + j].clone());
        let b = PolyMatrix::from_fn(3, 3, |i, j| entries[9 + 3 * i + j].clone());
        prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
        prop_assert_eq!(a.transpose().det().unwrap(), a.det().unwrap());
    }
}
