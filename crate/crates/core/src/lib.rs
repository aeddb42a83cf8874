//! Exact-arithmetic companion matrix constructions and their Frobenius-norm
//! condition numbers.
//!
//! Given a monic polynomial p(x) = x^n + c_{n-1}x^{n-1} + ... + c_0 over the
//! rationals, this crate builds the classical companion matrix families
//! (Frobenius, Fiedler/lattice-path, striped, and a perturbed generalized
//! family), computes ||A||^2, ||A^{-1}||^2 and kappa(A)^2 = ||A||^2 ||A^{-1}||^2
//! exactly, and cross-checks every closed-form condition number against an
//! independent inversion oracle.
//!
//! All arithmetic is exact rational; floating point appears only when a report
//! renders kappa as a double for display.

// Matrix code reads better with explicit (i, j) index loops.
#![allow(clippy::needless_range_loop)]

pub mod charpoly;
pub mod equivalence;
pub mod error;
pub mod fiedler;
pub mod generalized;
pub mod hessenberg;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod report;
pub mod striped;
pub mod sweep;

pub use charpoly::char_poly;
pub use equivalence::{equivalent, equivalent_with_cap, DEFAULT_EQUIVALENCE_CAP};
pub use error::Error;
pub use fiedler::{
    all_lattice_paths, all_permutations, fiedler_factor, fiedler_product, initial_step_size,
    is_fiedler_hessenberg, kappa_fiedler_sq, kappa_ordering, lattice_to_hessenberg,
    path_with_initial_step, ratio_bound_check, FiedlerPermutation, LatticePath, PathMove,
};
pub use generalized::{
    build_m, improvement_condition, kappa_m_dual, kappa_m_sq, m_char_poly_check, m_inverse,
    perturbation_case, perturbation_poly, MSpec,
};
pub use hessenberg::{
    build_frobenius, census_unit_sparse, hessenberg_inverse, unit_sparse_norm_sq,
    validate_unit_sparse, HessenbergCompanion,
};
pub use matrix::{invert, rank, Label, LabeledMatrix};
pub use poly::MonicPolynomial;
pub use rational::{parse_rational, rat, rat_int, Rational};
pub use report::{condition_report, ConditionReport, Family, KappaSource, ParamValue, Params};
pub use striped::{
    all_stripe_tuples, build_striped, kappa_striped_sq, rank_r_block, stripe_dominance_check,
    structured_asymptote_grid, structured_ratio, StripeTuple, StructuredPolynomial,
};
