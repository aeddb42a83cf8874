//! Property tests over randomly generated polynomials and transforms.

use companion_core::fiedler::{fiedler_product, lattice_to_hessenberg, FiedlerPermutation};
use companion_core::hessenberg::{build_frobenius, hessenberg_inverse, unit_sparse_norm_sq};
use companion_core::matrix::{invert, LabeledMatrix};
use companion_core::striped::{build_striped, StripeTuple};
use companion_core::{char_poly, equivalent, parse_rational, rat, MonicPolynomial, Rational};
use companion_core::fiedler::{LatticePath, PathMove};
use proptest::prelude::*;

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(num, den)| rat(num, den))
}

fn monic_strategy(max_degree: usize) -> impl Strategy<Value = MonicPolynomial> {
    proptest::collection::vec(rational_strategy(), 2..=max_degree)
        .prop_map(|coeffs| MonicPolynomial::new(coeffs).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_is_a_companion_matrix(p in monic_strategy(8)) {
        let c = build_frobenius(&p);
        prop_assert_eq!(&char_poly(c.matrix()), &p);
        prop_assert_eq!(c.matrix().frobenius_norm_sq(), unit_sparse_norm_sq(&p));
    }

    #[test]
    fn lattice_forms_are_companion_matrices(
        (p, bits) in monic_strategy(8).prop_flat_map(|p| {
            let n = p.degree();
            (Just(p), proptest::collection::vec(proptest::bool::ANY, n - 1))
        })
    ) {
        let moves = bits
            .into_iter()
            .map(|b| if b { PathMove::Right } else { PathMove::Up })
            .collect();
        let form = lattice_to_hessenberg(&LatticePath::new(moves), &p);
        prop_assert_eq!(&char_poly(form.matrix()), &p);
    }

    #[test]
    fn factor_products_are_companion_matrices(
        (p, seed) in monic_strategy(6).prop_flat_map(|p| (Just(p), any::<u64>()))
    ) {
        let n = p.degree();
        let mut rng = companion_core::sweep::SplitMix64::new(seed);
        let sigma = companion_core::sweep::random_permutation(&mut rng, n);
        let product = fiedler_product(&sigma, &p);
        prop_assert_eq!(&char_poly(&product), &p);
    }

    #[test]
    fn inverse_round_trip_on_companion_forms(p in monic_strategy(7)) {
        prop_assume!(!num_traits::Zero::is_zero(p.constant_term()));
        let c = build_frobenius(&p);
        let inv = invert(c.matrix()).unwrap();
        let product = LabeledMatrix::from_values(c.matrix().mul_values(&inv), "product");
        prop_assert!(product.values_are_identity());
        prop_assert_eq!(hessenberg_inverse(&c).unwrap(), inv);
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric_under_conjugation(
        (p, bits, seed) in monic_strategy(6).prop_flat_map(|p| {
            let n = p.degree();
            (Just(p), proptest::collection::vec(proptest::bool::ANY, n - 1), any::<u64>())
        })
    ) {
        let moves = bits
            .into_iter()
            .map(|b| if b { PathMove::Right } else { PathMove::Up })
            .collect();
        let a = lattice_to_hessenberg(&LatticePath::new(moves), &p);
        prop_assert!(equivalent(a.matrix(), a.matrix()).unwrap());
        let mut rng = companion_core::sweep::SplitMix64::new(seed);
        let perm = companion_core::sweep::random_permutation(&mut rng, p.degree());
        let b = a.matrix().permutation_similarity(perm.order());
        prop_assert!(equivalent(a.matrix(), &b).unwrap());
        prop_assert!(equivalent(&b, a.matrix()).unwrap());
        prop_assert!(equivalent(&b.transpose(), a.matrix()).unwrap());
    }

    #[test]
    fn rational_display_round_trips(r in rational_strategy()) {
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }
}

#[test]
fn striped_tuples_cover_every_composition_shape() {
    // Spot property: every enumerated tuple builds, validates, and matches p.
    let p = MonicPolynomial::from_ints(&[3, -1, 2, 0, 5, 1, -2]).unwrap();
    for tuple in companion_core::all_stripe_tuples(7) {
        let s = build_striped(&p, &tuple).unwrap();
        assert_eq!(&char_poly(s.matrix()), &p);
    }
    assert!(StripeTuple::new(vec![1, 2]).is_err());
}

#[test]
fn identity_permutation_product_is_frobenius_equivalent() {
    let p = MonicPolynomial::from_ints(&[2, -7, 1, 4, -3]).unwrap();
    let product = fiedler_product(&FiedlerPermutation::identity(5), &p);
    assert!(equivalent(&product, build_frobenius(&p).matrix()).unwrap());
}
