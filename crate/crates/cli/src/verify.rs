//! The verification sweep: every structural and condition-number property,
//! re-checked on randomly sampled instances with a fixed seed.
//!
//! Failures never abort the suite; they become report content with
//! counterexample dumps. The report text is byte-identical for identical
//! (seed, n_max, trials) inputs.

use std::fmt::Write as _;

use companion_core::fiedler::{
    all_lattice_paths, all_permutations, fiedler_product, initial_step_size, kappa_fiedler_sq,
    kappa_ordering, lattice_to_hessenberg, path_with_initial_step, ratio_bound_check,
    ConstantTermRegime,
};
use companion_core::generalized::{
    build_m, kappa_m_dual, m_char_poly_check, m_inverse, perturbation_case, MSpec,
};
use companion_core::hessenberg::{build_frobenius, census_unit_sparse, hessenberg_inverse};
use companion_core::matrix::{invert, LabeledMatrix};
use companion_core::report::condition_report;
use companion_core::striped::{
    all_stripe_tuples, build_striped, kappa_striped_sq, rank_r_block, stripe_dominance_check,
    structured_asymptote_grid, structured_ratio, StripeTuple, StructuredPolynomial,
};
use companion_core::sweep::{
    random_lattice_path, random_monic, random_permutation, random_rational,
    random_unit_sparse_hessenberg, ConstantTerm, HessenbergShape, SplitMix64,
};
use companion_core::{
    char_poly, equivalent, rat, rat_int, unit_sparse_norm_sq, Family, MonicPolynomial, Rational,
};
use num_traits::{One, Zero};

use crate::analyze::{analyze, AnalysisRequest, ReportRow};
use crate::CliError;

/// Outcome of one verified property.
#[derive(Debug, Clone)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub instances: usize,
    /// Informational detail lines (kept even on success).
    pub notes: Vec<String>,
    /// Counterexamples; nonempty exactly when the property failed.
    pub failures: Vec<String>,
}

impl PropertyOutcome {
    fn new(name: &'static str) -> Self {
        PropertyOutcome { name, passed: true, instances: 0, notes: Vec::new(), failures: Vec::new() }
    }

    fn fail(&mut self, counterexample: String) {
        self.passed = false;
        if self.failures.len() < 5 {
            self.failures.push(counterexample);
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn skip(&mut self, reason: &str) {
        self.notes.push(format!("skipped: {}", reason));
    }
}

/// Full suite result; renders to a deterministic text report.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub seed: u64,
    pub n_max: usize,
    pub trials: usize,
    pub properties: Vec<PropertyOutcome>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verification suite");
        let _ = writeln!(out, "seed={} n-max={} trials={}", self.seed, self.n_max, self.trials);
        let total = self.properties.len();
        for (idx, prop) in self.properties.iter().enumerate() {
            let _ = writeln!(
                out,
                "[{:>2}/{}] {} {} ({} instances)",
                idx + 1,
                total,
                if prop.passed { "PASS" } else { "FAIL" },
                prop.name,
                prop.instances
            );
            for note in &prop.notes {
                let _ = writeln!(out, "        {}", note);
            }
            for failure in &prop.failures {
                let _ = writeln!(out, "        counterexample: {}", failure);
            }
        }
        let passed = self.properties.iter().filter(|p| p.passed).count();
        if passed == total {
            let _ = writeln!(out, "result: {}/{} properties passed", passed, total);
        } else {
            let _ = writeln!(out, "result: {}/{} properties passed; {} FAILED", passed, total, total - passed);
        }
        out
    }
}

struct Ctx {
    seed: u64,
    n_max: usize,
    trials: usize,
}

impl Ctx {
    fn rng(&self, salt: u64) -> SplitMix64 {
        SplitMix64::new(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(salt))
    }

    fn random_degree(&self, rng: &mut SplitMix64) -> usize {
        2 + rng.below(self.n_max - 1)
    }
}

/// Run every property. `n_max` must lie in 2..=10.
pub fn verify_suite(seed: u64, n_max: usize, trials: usize) -> Result<VerificationReport, CliError> {
    if !(2..=10).contains(&n_max) {
        return Err(CliError::Infeasible(format!("n-max {} outside 2..=10", n_max)));
    }
    if trials == 0 {
        return Err(CliError::Infeasible("trials must be positive".to_string()));
    }
    let ctx = Ctx { seed, n_max, trials };
    let properties = vec![
        charpoly_frobenius(&ctx),
        charpoly_lattice_paths(&ctx),
        charpoly_factor_products(&ctx),
        charpoly_striped(&ctx),
        charpoly_perturbed(&ctx),
        oracle_inverse_identity(&ctx),
        hessenberg_block_inverse(&ctx),
        perturbed_block_inverse(&ctx),
        unit_sparse_norm_census(&ctx),
        equivalence_invariance(&ctx),
        equivalence_preserves_kappa(&ctx),
        fiedler_inverse_entry_census(&ctx),
        fiedler_kappa_closed_vs_oracle(&ctx),
        step_size_determines_kappa(&ctx),
        kappa_ordering_regimes(&ctx),
        factor_products_match_lattice_forms(&ctx),
        ratio_bound(&ctx),
        striped_kappa_closed_vs_oracle(&ctx),
        stripe_dominance_iff(&ctx),
        rank_one_dominance(&ctx),
        degenerate_stripes_equal_fiedler(&ctx),
        perturbed_a_zero_equivalence(&ctx),
        perturbed_dual_kappa_probe(&ctx),
        improvement_hypothesis_sweep(&ctx),
        perturbation_asymptote_grid(&ctx),
        structured_asymptote_sweeps(&ctx),
        analyzer_recommendation_minimality(&ctx),
    ];
    Ok(VerificationReport { seed, n_max, trials, properties })
}

fn charpoly_frobenius(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("charpoly-frobenius");
    let mut rng = ctx.rng(1);
    for _ in 0..ctx.trials {
        let n = ctx.random_degree(&mut rng);
        let p = random_monic(&mut rng, n, ConstantTerm::Any);
        let c = build_frobenius(&p);
        outcome.check(char_poly(c.matrix()) == p, || format!("p = {}", p));
    }
    outcome
}

fn charpoly_lattice_paths(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("charpoly-lattice-paths");
    let mut rng = ctx.rng(2);
    for _ in 0..ctx.trials {
        let n = ctx.random_degree(&mut rng);
        let p = random_monic(&mut rng, n, ConstantTerm::Any);
        let path = random_lattice_path(&mut rng, n);
        let form = lattice_to_hessenberg(&path, &p);
        outcome.check(char_poly(form.matrix()) == p, || format!("p = {}, path = {}", p, path));
    }
    outcome
}

fn charpoly_factor_products(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("charpoly-factor-products");
    let mut rng = ctx.rng(3);
    for _ in 0..ctx.trials {
        let n = 2 + rng.below(ctx.n_max.min(7) - 1);
        let p = random_monic(&mut rng, n, ConstantTerm::Any);
        let sigma = random_permutation(&mut rng, n);
        let product = fiedler_product(&sigma, &p);
        let ok = char_poly(&product) == p && census_unit_sparse(&product, &p).is_valid();
        outcome.check(ok, || format!("p = {}, order = {:?}", p, sigma.order()));
    }
    outcome
}

fn charpoly_striped(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("charpoly-striped");
    let mut rng = ctx.rng(4);
    for _ in 0..ctx.trials {
        let n = ctx.random_degree(&mut rng);
        let p = random_monic(&mut rng, n, ConstantTerm::Any);
        let tuples = all_stripe_tuples(n);
        let tuple = tuples[rng.below(tuples.len())].clone();
        let s = build_striped(&p, &tuple).expect("enumerated tuple is valid");
        outcome.check(char_poly(s.matrix()) == p, || format!("p = {}, tuple = {}", p, tuple));
    }
    outcome
}

fn random_ell(rng: &mut SplitMix64, n: usize) -> usize {
    3 + rng.below(n - 4)
}

fn charpoly_perturbed(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("charpoly-perturbed");
    if ctx.n_max < 5 {
        outcome.skip("perturbed family needs n >= 5");
        return outcome;
    }
    let mut rng = ctx.rng(5);
    for trial in 0..ctx.trials {
        let n = 5 + rng.below(ctx.n_max - 4);
        let p = random_monic(&mut rng, n, ConstantTerm::Any);
        let ell = random_ell(&mut rng, n);
        // Mix moderate and extreme perturbation values.
        let a = if trial % 5 == 0 { rat_int(1_000_000) } else { random_rational(&mut rng, 9, 3) };
        let ok = m_char_poly_check(&p, &MSpec::new(a.clone(), ell)).expect("valid ell");
        outcome.check(ok, || format!("p = {}, ell = {}, a = {}", p, ell, a));
    }
    outcome
}

fn oracle_inverse_identity(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("oracle-inverse-identity");
    let mut rng = ctx.rng(6);
    for _ in 0..ctx.trials {
        let n = ctx.random_degree(&mut rng);
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let form = random_unit_sparse_hessenberg(&mut rng, &p, HessenbergShape::Free);
        let inv = invert(form.matrix()).expect("c_0 != 0");
        let product = LabeledMatrix::from_values(form.matrix().mul_values(&inv), "product");
        outcome.check(product.values_are_identity(), || format!("p = {}", p));
    }
    outcome
}

fn hessenberg_block_inverse(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("hessenberg-block-inverse");
    let mut rng = ctx.rng(7);
    for _ in 0..ctx.trials {
        let n = ctx.random_degree(&mut rng);
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let form = random_unit_sparse_hessenberg(&mut rng, &p, HessenbergShape::Free);
        let block = hessenberg_inverse(&form).expect("c_0 != 0");
        outcome.check(block == invert(form.matrix()).expect("c_0 != 0"), || {
            format!("p = {}, m = {}", p, form.m())
        });
    }
    outcome
}

fn perturbed_block_inverse(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("perturbed-block-inverse");
    if ctx.n_max < 5 {
        outcome.skip("perturbed family needs n >= 5");
        return outcome;
    }
    let mut rng = ctx.rng(8);
    for _ in 0..ctx.trials {
        let n = 5 + rng.below(ctx.n_max - 4);
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let spec = MSpec::new(random_rational(&mut rng, 9, 3), random_ell(&mut rng, n));
        let block = m_inverse(&p, &spec).expect("valid spec, c_0 != 0");
        let m = build_m(&p, &spec).expect("valid spec");
        let ok = block == invert(&m).expect("c_0 != 0") && {
            let product = LabeledMatrix::from_values(m.mul_values(&block), "product");
            product.values_are_identity()
        };
        outcome.check(ok, || format!("p = {}, ell = {}, a = {}", p, spec.ell, spec.a));
    }
    outcome
}

fn unit_sparse_norm_census(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("unit-sparse-norm-census");
    let mut rng = ctx.rng(9);
    for _ in 0..ctx.trials {
        let n = ctx.random_degree(&mut rng);
        let p = random_monic(&mut rng, n, ConstantTerm::Any);
        let form = random_unit_sparse_hessenberg(&mut rng, &p, HessenbergShape::Free);
        outcome.check(form.matrix().frobenius_norm_sq() == unit_sparse_norm_sq(&p), || {
            format!("p = {}", p)
        });
    }
    outcome
}

fn equivalence_invariance(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("equivalence-invariance");
    let mut rng = ctx.rng(10);
    for _ in 0..ctx.trials {
        let n = 2 + rng.below(ctx.n_max.min(8) - 1);
        let p = random_monic(&mut rng, n, ConstantTerm::Any);
        let a = random_unit_sparse_hessenberg(&mut rng, &p, HessenbergShape::Free);
        let perm = random_permutation(&mut rng, n);
        let b = a.matrix().permutation_similarity(perm.order());
        let ok = equivalent(a.matrix(), a.matrix()).unwrap()
            && equivalent(a.matrix(), &b).unwrap()
            && equivalent(&b, a.matrix()).unwrap()
            && equivalent(a.matrix(), &b.transpose()).unwrap();
        outcome.check(ok, || format!("p = {}, perm = {:?}", p, perm.order()));
    }
    outcome
}

fn equivalence_preserves_kappa(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("equivalence-preserves-kappa");
    let mut rng = ctx.rng(11);
    for _ in 0..ctx.trials {
        let n = ctx.random_degree(&mut rng);
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let a = random_unit_sparse_hessenberg(&mut rng, &p, HessenbergShape::Free);
        let perm = random_permutation(&mut rng, n);
        let mut b = a.matrix().permutation_similarity(perm.order());
        if rng.below(2) == 0 {
            b = b.transpose();
        }
        let ra = condition_report(a.matrix()).expect("invertible");
        let rb = condition_report(&b).expect("invertible");
        let ok = ra.norm_sq == rb.norm_sq && ra.kappa_sq == rb.kappa_sq;
        outcome.check(ok, || format!("p = {}", p));
    }
    outcome
}

fn fiedler_inverse_entry_census(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("fiedler-inverse-entry-census");
    let primes = [3i64, 5, 7, 11, 13, 17];
    for n in 2..=ctx.n_max.min(6) {
        let p = MonicPolynomial::new((0..n).map(|i| rat_int(primes[i])).collect()).unwrap();
        for path in all_lattice_paths(n) {
            let t = path.initial_run();
            let form = lattice_to_hessenberg(&path, &p);
            let inv = invert(form.matrix()).expect("c_0 = 3");
            let mut ones = 0usize;
            let mut others: Vec<Rational> = Vec::new();
            let mut zeros = 0usize;
            for i in 0..n {
                for j in 0..n {
                    let v = inv.value(i, j);
                    if v.is_zero() {
                        zeros += 1;
                    } else if v.is_one() {
                        ones += 1;
                    } else {
                        others.push(v.clone());
                    }
                }
            }
            let c0 = p.coeff(0).clone();
            let mut expected = vec![-Rational::one() / c0.clone()];
            for i in 1..=t {
                expected.push(-p.coeff(i).clone() / c0.clone());
            }
            for i in t + 1..n {
                expected.push(p.coeff(i).clone());
            }
            others.sort();
            expected.sort();
            let ok = ones == n - 1 && others == expected && zeros == n * n - (n - 1) - others.len();
            outcome.check(ok, || format!("n = {}, path = {}", n, path));
        }
    }
    outcome
}

fn fiedler_kappa_closed_vs_oracle(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("fiedler-kappa-closed-vs-oracle");
    let mut rng = ctx.rng(13);
    for _ in 0..ctx.trials {
        let n = ctx.random_degree(&mut rng);
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let t = 1 + rng.below(n - 1);
        let form = lattice_to_hessenberg(&path_with_initial_step(n, t).unwrap(), &p);
        let oracle = condition_report(form.matrix()).expect("invertible");
        let ok = kappa_fiedler_sq(&p, t).unwrap() == oracle.kappa_sq;
        outcome.check(ok, || format!("p = {}, t = {}", p, t));
    }
    outcome
}

fn step_size_determines_kappa(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("step-size-determines-kappa");
    for n in 2..=ctx.n_max.min(6) {
        let mut rng = ctx.rng(1400 + n as u64);
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let mut by_step: Vec<Option<Rational>> = vec![None; n];
        for sigma in all_permutations(n) {
            let product = fiedler_product(&sigma, &p);
            let t = initial_step_size(&product).expect("products have adjacent c_0, c_1");
            let kappa = condition_report(&product).expect("invertible").kappa_sq;
            let formula = kappa_fiedler_sq(&p, t).unwrap();
            let consistent = match &by_step[t] {
                Some(seen) => *seen == kappa,
                None => {
                    by_step[t] = Some(kappa.clone());
                    true
                }
            };
            outcome.check(consistent && kappa == formula, || {
                format!("n = {}, order = {:?}, t = {}", n, sigma.order(), t)
            });
        }
    }
    outcome
}

fn kappa_ordering_regimes(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("kappa-ordering-regimes");
    let mut rng = ctx.rng(15);
    let regimes = [
        (ConstantTerm::AbsBelowOne, ConstantTermRegime::LessThanOne),
        (ConstantTerm::UnitModulus, ConstantTermRegime::EqualToOne),
        (ConstantTerm::AbsAboveOne, ConstantTermRegime::GreaterThanOne),
    ];
    for _ in 0..ctx.trials {
        for (kind, expected) in &regimes {
            let n = ctx.random_degree(&mut rng);
            let p = random_monic(&mut rng, n, *kind);
            let ordering = kappa_ordering(&p).expect("c_0 != 0");
            let ok = ordering.regime == *expected && ordering.monotone;
            outcome.check(ok, || format!("p = {}, regime = {:?}", p, ordering.regime));
        }
    }
    outcome
}

fn factor_products_match_lattice_forms(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("factor-products-match-lattice-forms");
    for n in 2..=ctx.n_max.min(5) {
        let mut rng = ctx.rng(1600 + n as u64);
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let lattice_forms: Vec<_> =
            all_lattice_paths(n).into_iter().map(|path| lattice_to_hessenberg(&path, &p)).collect();
        for sigma in all_permutations(n) {
            let product = fiedler_product(&sigma, &p);
            let ok = lattice_forms
                .iter()
                .any(|form| equivalent(&product, form.matrix()).unwrap());
            outcome.check(ok, || format!("n = {}, order = {:?}", n, sigma.order()));
        }
    }
    outcome
}

fn ratio_bound(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("ratio-bound");
    let mut rng = ctx.rng(17);
    let mut applicable = 0usize;
    for _ in 0..ctx.trials {
        let n = 3.max(ctx.random_degree(&mut rng)).min(ctx.n_max);
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let shape =
            if rng.below(2) == 0 { HessenbergShape::ZeroU } else { HessenbergShape::ZeroY };
        let c = random_unit_sparse_hessenberg(&mut rng, &p, shape);
        let report = ratio_bound_check(&c).expect("hypothesis satisfied by construction");
        if report.entries.iter().any(|e| e.applicable) {
            applicable += 1;
        }
        outcome.check(report.all_applicable_hold, || format!("p = {}, m = {}", p, c.m()));
    }
    outcome.notes.push(format!("{} instances had at least one applicable step size", applicable));
    outcome
}

fn divisor_shapes(n: usize) -> Vec<(usize, usize)> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).map(|k| (k, n / k - 1)).collect()
}

fn striped_kappa_closed_vs_oracle(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("striped-kappa-closed-vs-oracle");
    let mut rng = ctx.rng(18);
    for _ in 0..ctx.trials {
        let n = ctx.random_degree(&mut rng);
        let shapes = divisor_shapes(n);
        let (k, m) = shapes[rng.below(shapes.len())];
        let p = random_monic(&mut rng, n, ConstantTerm::One);
        let s = build_striped(&p, &StripeTuple::equal(k, m + 1).unwrap()).unwrap();
        let oracle = condition_report(s.matrix()).expect("c_0 = 1");
        let ok = kappa_striped_sq(&p, k, m).unwrap() == oracle.kappa_sq;
        outcome.check(ok, || format!("p = {}, k = {}, m = {}", p, k, m));
    }
    outcome
}

fn stripe_dominance_iff(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("stripe-dominance-iff");
    let mut rng = ctx.rng(19);
    for _ in 0..ctx.trials {
        let n = ctx.random_degree(&mut rng);
        let shapes = divisor_shapes(n);
        let (k, m) = shapes[rng.below(shapes.len())];
        let p = random_monic(&mut rng, n, ConstantTerm::One);
        let report = stripe_dominance_check(&p, k, m).unwrap();
        let kappa_s = kappa_striped_sq(&p, k, m).unwrap();
        let beats_all = (1..n).all(|t| kappa_s <= kappa_fiedler_sq(&p, t).unwrap());
        let per_term_sound = !report.all_terms_hold || report.dominates;
        outcome.check(report.dominates == beats_all && per_term_sound, || {
            format!("p = {}, k = {}, m = {}", p, k, m)
        });
    }
    outcome
}

fn rank_one_dominance(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("rank-one-dominance");
    let mut rng = ctx.rng(20);
    for _ in 0..ctx.trials {
        let k = 2 + rng.below(3);
        let m = 1 + rng.below(2);
        if k * (m + 1) > ctx.n_max.max(6) {
            continue;
        }
        let a: Vec<Rational> = (0..k - 1).map(|_| random_rational(&mut rng, 6, 2)).collect();
        let b: Vec<Rational> = (0..m).map(|_| random_rational(&mut rng, 6, 2)).collect();
        let sp = StructuredPolynomial::new(k, m, a, b).unwrap();
        let p = sp.expand();
        let s = build_striped(&p, &StripeTuple::equal(k, m + 1).unwrap()).unwrap();
        let dominance = stripe_dominance_check(&p, k, m).unwrap();
        let ratio = structured_ratio(&sp);
        let direct = kappa_fiedler_sq(&p, 1).unwrap() / kappa_striped_sq(&p, k, m).unwrap();
        let ok = rank_r_block(&s) <= 1
            && dominance.dominates
            && dominance.cross_total.is_zero()
            && ratio.ratio_sq == direct;
        outcome.check(ok, || format!("p = {}", p));
    }
    outcome
}

fn degenerate_stripes_equal_fiedler(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("degenerate-stripes-equal-fiedler");
    let mut rng = ctx.rng(21);
    for _ in 0..ctx.trials {
        let n = ctx.random_degree(&mut rng);
        let p = random_monic(&mut rng, n, ConstantTerm::One);
        let ok = kappa_striped_sq(&p, 1, n - 1).unwrap() == kappa_fiedler_sq(&p, n - 1).unwrap();
        outcome.check(ok, || format!("p = {}", p));
    }
    outcome
}

fn perturbed_a_zero_equivalence(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("perturbed-a-zero-equivalence");
    if ctx.n_max < 5 {
        outcome.skip("perturbed family needs n >= 5");
        return outcome;
    }
    let mut rng = ctx.rng(22);
    for _ in 0..ctx.trials {
        let n = 5 + rng.below(ctx.n_max.min(8) - 4);
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let ell = random_ell(&mut rng, n);
        let m = build_m(&p, &MSpec::new(Rational::zero(), ell)).unwrap();
        let frob = build_frobenius(&p);
        let km = condition_report(&m).expect("invertible").kappa_sq;
        let kf = condition_report(frob.matrix()).expect("invertible").kappa_sq;
        let ok = equivalent(&m, frob.matrix()).unwrap() && km == kf;
        outcome.check(ok, || format!("p = {}, ell = {}", p, ell));
    }
    outcome
}

fn perturbed_dual_kappa_probe(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("perturbed-dual-kappa-probe");
    if ctx.n_max < 5 {
        outcome.skip("perturbed family needs n >= 5");
        return outcome;
    }
    let mut rng = ctx.rng(23);
    let instances = ctx.trials.max(20);
    for shown in 0..instances {
        let n = 5 + rng.below(ctx.n_max - 4);
        let p = random_monic(&mut rng, n, ConstantTerm::One);
        let spec = MSpec::new(random_rational(&mut rng, 9, 3), random_ell(&mut rng, n));
        let dual = kappa_m_dual(&p, &spec).expect("c_0 = 1 and valid ell");
        if shown < 20 {
            outcome.notes.push(format!(
                "n={} ell={} a={} norm_sq={} inv_oracle={} second_closed={} offset={}",
                n,
                dual.ell,
                dual.a,
                dual.norm_sq_oracle,
                dual.inv_norm_sq_oracle,
                dual.second_factor_closed,
                dual.second_factor_offset
            ));
        }
        let ok = dual.first_factor_matches && dual.second_factor_offset == Rational::one();
        outcome.check(ok, || format!("p = {}, ell = {}, a = {}", p, spec.ell, spec.a));
    }
    outcome
}

fn improvement_hypothesis_sweep(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("improvement-hypothesis-sweep");
    if ctx.n_max < 5 {
        outcome.skip("perturbed family needs n >= 5");
        return outcome;
    }
    let mut rng = ctx.rng(27);
    let mut hypothesis_held = 0usize;
    for trial in 0..ctx.trials.max(40) {
        let n = 5 + rng.below(ctx.n_max - 4);
        let ell = random_ell(&mut rng, n);
        let mut p = random_monic(&mut rng, n, ConstantTerm::One);
        if trial % 2 == 0 {
            // Plant coefficients that satisfy the criterion so the sweep
            // exercises both branches: c_ell = c_{n-1} = 1, c_{ell-1} = 2.
            let mut coeffs = p.coeffs().to_vec();
            coeffs[ell] = Rational::one();
            coeffs[n - 1] = Rational::one();
            coeffs[ell - 1] = rat_int(2);
            p = MonicPolynomial::new(coeffs).unwrap();
        }
        let report = companion_core::improvement_condition(&p, ell).expect("c_0 = 1");
        if report.hypothesis_holds {
            hypothesis_held += 1;
        }
        outcome.check(!report.divergence, || {
            format!(
                "hypothesis held but kappa(M)^2 = {} >= kappa(F)^2 = {} at p = {}, ell = {}",
                report.kappa_m_sq_oracle, report.kappa_f_sq, p, ell
            )
        });
    }
    outcome
        .notes
        .push(format!("hypothesis held on {} of {} instances; oracle agreed on all", hypothesis_held, outcome.instances));
    outcome
}

fn perturbation_asymptote_grid(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("perturbation-asymptote-grid");
    let _ = ctx;
    let grid: [(i64, Rational); 3] =
        [(10, rat(1, 10)), (100, rat(1, 100)), (1000, rat(1, 1000))];
    for (t, tolerance) in grid {
        let report = perturbation_case(7, 3, &rat_int(t)).expect("valid shape");
        let scaled = report.scaled_ratio_oracle.clone().expect("t != 0");
        let deviation = {
            let d = scaled - Rational::one();
            if d < Rational::zero() {
                -d
            } else {
                d
            }
        };
        // The closed form inherits the printed "+1"; check it verbatim.
        let t2 = rat_int(t * t);
        let t4 = t2.clone() * &t2;
        let closed = (rat_int(7) + rat_int(2) * &t2)
            * (rat_int(8) + rat_int(2) * &t2 + &t4);
        let ok = deviation <= tolerance && report.kappa_m_sq_closed == closed;
        outcome.check(ok, || {
            format!("t = {}, |scaled - 1| = {}", t, deviation)
        });
        outcome.notes.push(format!(
            "t={} ratio_sq_oracle={} scaled_deviation={:.3e}",
            t,
            report.ratio_sq_oracle,
            report.scaled_deviation_float().unwrap_or(f64::NAN)
        ));
    }
    outcome
}

fn structured_asymptote_sweeps(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("structured-asymptote-sweeps");
    let _ = ctx;
    let sp = StructuredPolynomial::new(
        2,
        2,
        vec![rat_int(2)],
        vec![rat_int(1), rat_int(1)],
    )
    .unwrap();
    for sweep in structured_asymptote_grid(&sp) {
        outcome.check(sweep.all_within, || {
            let detail: Vec<String> = sweep
                .points
                .iter()
                .map(|pt| format!("scale {}: rel err {}", pt.scale, pt.rel_err))
                .collect();
            format!("direction {}: {}", sweep.direction, detail.join(", "))
        });
        for pt in &sweep.points {
            outcome.notes.push(format!(
                "{} x{}: ratio_sq={} target={} within {}",
                sweep.direction,
                pt.scale,
                pt.ratio_sq,
                pt.target,
                pt.threshold
            ));
        }
    }
    // The k = 10, b = 1 instance tracks kappa(F)/kappa(S) ~ k within 5%.
    let wide = StructuredPolynomial::new(
        2,
        2,
        vec![rat_int(10)],
        vec![rat_int(10), rat_int(100)],
    )
    .unwrap();
    let ratio = structured_ratio(&wide);
    let lower = rat(361, 4); // (9.5)^2
    let upper = rat(441, 4); // (10.5)^2
    outcome.check(ratio.ratio_sq >= lower && ratio.ratio_sq <= upper, || {
        format!("ratio_sq = {}", ratio.ratio_sq)
    });
    outcome
}

fn analyzer_recommendation_minimality(ctx: &Ctx) -> PropertyOutcome {
    let mut outcome = PropertyOutcome::new("analyzer-recommendation-minimality");
    let mut rng = ctx.rng(26);
    for _ in 0..ctx.trials.min(5) {
        let n = 2 + rng.below(ctx.n_max.min(7) - 1);
        let p = random_monic(&mut rng, n, ConstantTerm::NonZero);
        let analysis = match analyze(&AnalysisRequest::all_families(p.clone())) {
            Ok(a) => a,
            Err(e) => {
                outcome.check(false, || format!("p = {}: {}", p, e));
                continue;
            }
        };
        let best = &analysis.recommendation.best.kappa_sq;
        let minimal = analysis.rows.iter().all(|row| match row {
            ReportRow::Computed(r) if r.source == companion_core::KappaSource::Oracle => {
                *best <= r.kappa_sq
            }
            _ => true,
        });
        outcome.check(minimal, || format!("p = {}", p));
        let _ = Family::Frobenius;
    }
    outcome
}
