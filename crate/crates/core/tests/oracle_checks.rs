//! Cross-checks between closed forms, block formulas, and independent
//! oracles.
//!
//! The characteristic-polynomial oracle here is deliberately primitive:
//! cofactor expansion of det(xI - M) over dense rational polynomials. It
//! shares no code with the library's Faddeev-LeVerrier implementation.

use companion_core::fiedler::{
    all_lattice_paths, all_permutations, fiedler_product, initial_step_size, kappa_fiedler_sq,
    lattice_to_hessenberg, path_with_initial_step, ratio_bound_check,
};
use companion_core::hessenberg::{build_frobenius, census_unit_sparse, hessenberg_inverse};
use companion_core::matrix::{invert, LabeledMatrix};
use companion_core::report::condition_report;
use companion_core::striped::{
    all_stripe_tuples, build_striped, kappa_striped_sq, rank_r_block, stripe_dominance_check,
    structured_ratio, StripeTuple, StructuredPolynomial,
};
use companion_core::sweep::{
    random_lattice_path, random_monic, random_permutation, random_rational,
    random_unit_sparse_hessenberg, ConstantTerm, HessenbergShape, SplitMix64,
};
use companion_core::{
    char_poly, equivalent, rat, rat_int, unit_sparse_norm_sq, MonicPolynomial, Rational,
};
use num_traits::{One, Zero};

/// Dense rational polynomials, ascending coefficients. Test-local on purpose.
mod polyring {
    use super::Rational;
    use num_traits::Zero;

    pub type Poly = Vec<Rational>;

    pub fn add(a: &Poly, b: &Poly) -> Poly {
        let mut out = vec![Rational::zero(); a.len().max(b.len())];
        for (i, v) in a.iter().enumerate() {
            out[i] += v.clone();
        }
        for (i, v) in b.iter().enumerate() {
            out[i] += v.clone();
        }
        out
    }

    pub fn mul(a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, av) in a.iter().enumerate() {
            if av.is_zero() {
                continue;
            }
            for (j, bv) in b.iter().enumerate() {
                out[i + j] += av.clone() * bv;
            }
        }
        out
    }

    pub fn neg(a: &Poly) -> Poly {
        a.iter().map(|v| -v.clone()).collect()
    }

    /// Determinant by Laplace expansion along the first row.
    pub fn det(m: &[Vec<Poly>]) -> Poly {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut total: Poly = Vec::new();
        for j in 0..n {
            let minor: Vec<Vec<Poly>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&col| col != j)
                        .map(|col| m[i][col].clone())
                        .collect()
                })
                .collect();
            let mut term = mul(&m[0][j], &det(&minor));
            if j % 2 == 1 {
                term = neg(&term);
            }
            total = add(&total, &term);
        }
        total
    }
}

/// char poly of M through the cofactor oracle, as ascending coefficients
/// including the leading term.
fn char_poly_cofactor(m: &LabeledMatrix) -> Vec<Rational> {
    let n = m.dim();
    let grid: Vec<Vec<polyring::Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        vec![-m.value(i, j).clone(), Rational::one()]
                    } else {
                        vec![-m.value(i, j).clone()]
                    }
                })
                .collect()
        })
        .collect();
    let mut det = polyring::det(&grid);
    det.resize(n + 1, Rational::zero());
    det
}

fn assert_char_poly_matches_oracle(m: &LabeledMatrix, p: &MonicPolynomial) {
    let oracle = char_poly_cofactor(m);
    assert!(oracle[p.degree()].is_one(), "oracle determinant is not monic");
    assert_eq!(&oracle[..p.degree()], p.coeffs(), "cofactor oracle disagrees");
    assert_eq!(&char_poly(m), p, "char_poly disagrees with p");
}

#[test]
fn frobenius_char_poly_against_cofactor_oracle() {
    let p = MonicPolynomial::from_ints(&[5, 4, 3, 2]).unwrap();
    let c = build_frobenius(&p);
    assert_char_poly_matches_oracle(c.matrix(), &p);
}

#[test]
fn char_poly_matches_cofactor_oracle_on_random_matrices() {
    // Arbitrary dense matrices, not just companion forms.
    let mut rng = SplitMix64::new(101);
    for trial in 0..40 {
        let n = 2 + trial % 4;
        let values: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| random_rational(&mut rng, 4, 2)).collect())
            .collect();
        let m = LabeledMatrix::from_values(values, "random");
        let oracle = char_poly_cofactor(&m);
        let fast = char_poly(&m);
        assert!(oracle[n].is_one());
        assert_eq!(&oracle[..n], fast.coeffs());
    }
}

#[test]
fn every_family_produces_a_companion_matrix() {
    let mut rng = SplitMix64::new(2024);
    for n in 2..=6 {
        let p = random_monic(&mut rng, n, ConstantTerm::Any);
        assert_eq!(&char_poly(build_frobenius(&p).matrix()), &p);
        for _ in 0..10 {
            let path = random_lattice_path(&mut rng, n);
            assert_eq!(&char_poly(lattice_to_hessenberg(&path, &p).matrix()), &p);
            let sigma = random_permutation(&mut rng, n);
            assert_eq!(&char_poly(&fiedler_product(&sigma, &p)), &p);
        }
        for tuple in all_stripe_tuples(n) {
            assert_eq!(&char_poly(build_striped(&p, &tuple).unwrap().matrix()), &p);
        }
    }
}

#[test]
fn hundred_random_polynomials_up_to_degree_ten() {
    let mut rng = SplitMix64::new(77);
    for trial in 0..100 {
        let n = 2 + trial % 9;
        let p = random_monic(&mut rng, n, ConstantTerm::Any);
        assert_eq!(&char_poly(build_frobenius(&p).matrix()), &p);
    }
    for trial in 0..100 {
        let n = 5 + trial % 6;
        let p = random_monic(&mut rng, n, ConstantTerm::Any);
        let ell = 3 + rng.below(n - 4);
        let a = random_rational(&mut rng, 9, 3);
        let spec = companion_core::generalized::MSpec::new(a, ell);
        assert!(companion_core::m_char_poly_check(&p, &spec).unwrap());
    }
}

#[test]
fn frobenius_kappa_of_small_example() {
    // Oracle measurement of the classical form at c = [5,4,3,2].
    let p = MonicPolynomial::from_ints(&[5, 4, 3, 2]).unwrap();
    let report = condition_report(build_frobenius(&p).matrix()).unwrap();
    assert_eq!(report.norm_sq, rat_int(57));
    assert_eq!(report.inv_norm_sq, rat(21, 5));
    assert_eq!(report.kappa_sq, rat(1197, 5));
}

#[test]
fn fiedler_kappa_closed_form_equals_oracle() {
    let mut rng = SplitMix64::new(5);
    for trial in 0..60 {
        let n = 2 + trial % 7;
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let t = 1 + rng.below(n - 1);
        let form = lattice_to_hessenberg(&path_with_initial_step(n, t).unwrap(), &p);
        let oracle = condition_report(form.matrix()).unwrap();
        assert_eq!(kappa_fiedler_sq(&p, t).unwrap(), oracle.kappa_sq);
        assert_eq!(unit_sparse_norm_sq(&p), oracle.norm_sq);
    }
}

#[test]
fn striped_kappa_closed_form_equals_oracle() {
    let mut rng = SplitMix64::new(6);
    let shapes: [(usize, usize); 7] =
        [(2, 1), (2, 2), (3, 1), (2, 3), (4, 1), (3, 2), (5, 1)];
    for trial in 0..60 {
        let (k, m) = shapes[trial % shapes.len()];
        let n = k * (m + 1);
        let p = random_monic(&mut rng, n, ConstantTerm::One);
        let s = build_striped(&p, &StripeTuple::equal(k, m + 1).unwrap()).unwrap();
        let oracle = condition_report(s.matrix()).unwrap();
        assert_eq!(kappa_striped_sq(&p, k, m).unwrap(), oracle.kappa_sq);
    }
}

#[test]
fn hessenberg_block_inverse_equals_oracle_on_random_forms() {
    let mut rng = SplitMix64::new(7);
    for trial in 0..100 {
        let n = 2 + trial % 9;
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let c = random_unit_sparse_hessenberg(&mut rng, &p, HessenbergShape::Free);
        let block = hessenberg_inverse(&c).unwrap();
        assert_eq!(block, invert(c.matrix()).unwrap());
        let product = LabeledMatrix::from_values(c.matrix().mul_values(&block), "product");
        assert!(product.values_are_identity());
    }
}

#[test]
fn two_stripe_inverse_top_row() {
    // S_4(2,2) at c = [5,4,3,2]: the inverse's top row is y/c_0, 0, -1/c_0.
    let p = MonicPolynomial::from_ints(&[5, 4, 3, 2]).unwrap();
    let s = build_striped(&p, &StripeTuple::new(vec![2, 2]).unwrap()).unwrap();
    let inv = hessenberg_inverse(&s).unwrap();
    let expect = [rat(-4, 5), rat_int(0), rat_int(0), rat(-1, 5)];
    for (j, v) in expect.iter().enumerate() {
        assert_eq!(inv.value(0, j), v);
    }
    assert_eq!(inv, invert(s.matrix()).unwrap());
}

#[test]
fn fiedler_inverse_entry_census_at_generic_coefficients() {
    // At c_i = i-th odd prime, the inverse of a step-t Fiedler form holds
    // exactly n-1 ones, -1/c_0 with -c_1/c_0 ... -c_t/c_0, the plain
    // c_{t+1} ... c_{n-1}, and zeros elsewhere.
    let primes = [3i64, 5, 7, 11, 13, 17, 19];
    for n in 2..=6usize {
        let p = MonicPolynomial::new((0..n).map(|i| rat_int(primes[i])).collect()).unwrap();
        for path in all_lattice_paths(n) {
            let t = path.initial_run();
            let form = lattice_to_hessenberg(&path, &p);
            let inv = invert(form.matrix()).unwrap();
            let mut ones = 0usize;
            let mut others: Vec<Rational> = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let v = inv.value(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    if v.is_one() {
                        ones += 1;
                    } else {
                        others.push(v.clone());
                    }
                }
            }
            assert_eq!(ones, n - 1, "path {}", path);
            let c0 = p.coeff(0).clone();
            let mut expected: Vec<Rational> = vec![-Rational::one() / c0.clone()];
            for i in 1..=t {
                expected.push(-p.coeff(i).clone() / c0.clone());
            }
            for i in t + 1..n {
                expected.push(p.coeff(i).clone());
            }
            others.sort();
            expected.sort();
            assert_eq!(others, expected, "path {}", path);
        }
    }
}

#[test]
fn step_size_is_invariant_under_equivalence_transforms() {
    let mut rng = SplitMix64::new(9);
    for trial in 0..40 {
        let n = 2 + trial % 6;
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let form = lattice_to_hessenberg(&random_lattice_path(&mut rng, n), &p);
        let t = initial_step_size(form.matrix()).unwrap();
        let perm = random_permutation(&mut rng, n);
        let conjugated = form.matrix().permutation_similarity(perm.order());
        assert_eq!(initial_step_size(&conjugated).unwrap(), t);
        assert_eq!(initial_step_size(&conjugated.transpose()).unwrap(), t);
    }
}

#[test]
fn equivalent_forms_share_norm_and_kappa() {
    let mut rng = SplitMix64::new(10);
    for trial in 0..30 {
        let n = 2 + trial % 5;
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let a = lattice_to_hessenberg(&random_lattice_path(&mut rng, n), &p);
        let perm = random_permutation(&mut rng, n);
        let b = a.matrix().permutation_similarity(perm.order());
        let b = if rng.below(2) == 0 { b.transpose() } else { b };
        assert!(equivalent(a.matrix(), &b).unwrap());
        assert_eq!(a.matrix().frobenius_norm_sq(), b.frobenius_norm_sq());
        let ka = condition_report(a.matrix()).unwrap().kappa_sq;
        let kb = condition_report(&b).unwrap().kappa_sq;
        assert_eq!(ka, kb);
    }
}

#[test]
fn factor_products_reach_exactly_the_lattice_forms() {
    // Every factor product is equivalent to some lattice-path form, and a
    // product in ascending factor order is equivalent to the Frobenius form.
    for n in 2..=5usize {
        let mut rng = SplitMix64::new(n as u64);
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let lattice_forms: Vec<_> = all_lattice_paths(n)
            .into_iter()
            .map(|path| lattice_to_hessenberg(&path, &p))
            .collect();
        for sigma in all_permutations(n) {
            let product = fiedler_product(&sigma, &p);
            assert!(census_unit_sparse(&product, &p).is_valid());
            let hits = lattice_forms
                .iter()
                .filter(|form| equivalent(&product, form.matrix()).unwrap())
                .count();
            assert!(hits >= 1, "no lattice form equivalent to order {:?}", sigma.order());
        }
    }
}

#[test]
fn step_size_determines_kappa_across_permutations() {
    for n in 2..=5usize {
        let mut rng = SplitMix64::new(40 + n as u64);
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let mut by_step: Vec<Option<Rational>> = vec![None; n];
        for sigma in all_permutations(n) {
            let product = fiedler_product(&sigma, &p);
            let t = initial_step_size(&product).unwrap();
            let kappa = condition_report(&product).unwrap().kappa_sq;
            assert_eq!(kappa, kappa_fiedler_sq(&p, t).unwrap());
            match &by_step[t] {
                Some(seen) => assert_eq!(seen, &kappa),
                None => by_step[t] = Some(kappa),
            }
        }
    }
}

#[test]
fn ratio_bound_holds_on_hypothesis_satisfying_forms() {
    let mut rng = SplitMix64::new(11);
    let mut checked = 0;
    for trial in 0..80 {
        let n = 3 + trial % 6;
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let shape = if rng.below(2) == 0 { HessenbergShape::ZeroU } else { HessenbergShape::ZeroY };
        let c = random_unit_sparse_hessenberg(&mut rng, &p, shape);
        let report = ratio_bound_check(&c).unwrap();
        assert!(report.all_applicable_hold, "bound failed at n = {}", n);
        if report.entries.iter().any(|e| e.applicable) {
            checked += 1;
        }
    }
    assert!(checked >= 50, "only {} applicable instances", checked);
}

#[test]
fn ratio_bound_with_vanishing_u_by_values() {
    // Two-stripe form whose u vector vanishes because c_2 = 0.
    let p = MonicPolynomial::from_ints(&[5, 4, 0, 2]).unwrap();
    let s = build_striped(&p, &StripeTuple::new(vec![2, 2]).unwrap()).unwrap();
    let report = ratio_bound_check(&s).unwrap();
    assert!(report.all_applicable_hold);
    assert!(report.entries.iter().any(|e| e.applicable));
}

#[test]
fn dominance_criterion_is_exactly_the_kappa_comparison() {
    let mut rng = SplitMix64::new(12);
    let shapes: [(usize, usize); 5] = [(2, 1), (2, 2), (3, 1), (2, 3), (3, 2)];
    let mut dominated = 0;
    let mut not_dominated = 0;
    for trial in 0..200 {
        let (k, m) = shapes[trial % shapes.len()];
        let n = k * (m + 1);
        let p = random_monic(&mut rng, n, ConstantTerm::One);
        let report = stripe_dominance_check(&p, k, m).unwrap();
        let kappa_s = kappa_striped_sq(&p, k, m).unwrap();
        let beats_every_step =
            (1..n).all(|t| kappa_s <= kappa_fiedler_sq(&p, t).unwrap());
        assert_eq!(report.dominates, beats_every_step);
        if report.dominates {
            dominated += 1;
        } else {
            not_dominated += 1;
        }
        if report.all_terms_hold {
            assert!(report.dominates);
        }
    }
    assert!(dominated > 0 && not_dominated > 0, "sweep never exercised both outcomes");
}

#[test]
fn rank_one_blocks_always_dominate() {
    let mut rng = SplitMix64::new(13);
    for trial in 0..40 {
        let k = 2 + trial % 3;
        let m = 1 + trial % 2;
        let a: Vec<Rational> = (0..k - 1).map(|_| random_rational(&mut rng, 5, 2)).collect();
        let b: Vec<Rational> = (0..m).map(|_| random_rational(&mut rng, 5, 2)).collect();
        let sp = StructuredPolynomial::new(k, m, a, b).unwrap();
        let p = sp.expand();
        let s = build_striped(&p, &StripeTuple::equal(k, m + 1).unwrap()).unwrap();
        assert!(rank_r_block(&s) <= 1);
        let report = stripe_dominance_check(&p, k, m).unwrap();
        assert!(report.dominates);
        assert!(report.cross_total.is_zero());
        // The displayed ratio matches the two closed forms exactly.
        let ratio = structured_ratio(&sp);
        let direct = kappa_fiedler_sq(&p, 1).unwrap() / kappa_striped_sq(&p, k, m).unwrap();
        assert_eq!(ratio.ratio_sq, direct);
    }
}

#[test]
fn degenerate_single_length_stripes_match_fiedler() {
    let mut rng = SplitMix64::new(14);
    for n in 2..=8usize {
        let p = random_monic(&mut rng, n, ConstantTerm::One);
        let kappa_s = kappa_striped_sq(&p, 1, n - 1).unwrap();
        assert_eq!(kappa_s, kappa_fiedler_sq(&p, n - 1).unwrap());
    }
}
