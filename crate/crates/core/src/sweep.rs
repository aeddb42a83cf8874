//! Deterministic sampling for verification sweeps.
//!
//! A small SplitMix64 generator keeps every sweep reproducible from a seed
//! across platforms and builds, with no dependency on external RNG crates.

use num_traits::{One, Zero};

use crate::fiedler::{FiedlerPermutation, LatticePath, PathMove};
use crate::hessenberg::HessenbergCompanion;
use crate::matrix::{Label, LabeledMatrix};
use crate::poly::MonicPolynomial;
use crate::rational::{rat, Rational};

/// SplitMix64: tiny, fast, and stable across platforms.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform value in 0..bound. `bound` must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }

    /// Uniform value in lo..=hi.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

/// Constraint on the constant term of a sampled polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantTerm {
    Any,
    NonZero,
    One,
    /// c_0 is 1 or -1.
    UnitModulus,
    /// 0 < |c_0| < 1.
    AbsBelowOne,
    /// |c_0| > 1.
    AbsAboveOne,
}

/// A small random rational: numerator in -max..=max, denominator in 1..=den.
pub fn random_rational(rng: &mut SplitMix64, max_num: i64, max_den: i64) -> Rational {
    rat(rng.range_i64(-max_num, max_num), rng.range_i64(1, max_den))
}

pub fn random_nonzero_rational(rng: &mut SplitMix64, max_num: i64, max_den: i64) -> Rational {
    loop {
        let v = random_rational(rng, max_num, max_den);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Random monic polynomial of degree n with small rational coefficients and
/// the requested constant-term shape.
pub fn random_monic(rng: &mut SplitMix64, n: usize, c0: ConstantTerm) -> MonicPolynomial {
    assert!(n >= 2);
    let mut coeffs: Vec<Rational> =
        (0..n).map(|_| random_rational(rng, 6, 3)).collect();
    coeffs[0] = match c0 {
        ConstantTerm::Any => coeffs[0].clone(),
        ConstantTerm::NonZero => random_nonzero_rational(rng, 6, 3),
        ConstantTerm::One => Rational::one(),
        ConstantTerm::UnitModulus => {
            if rng.below(2) == 0 {
                Rational::one()
            } else {
                -Rational::one()
            }
        }
        ConstantTerm::AbsBelowOne => {
            let den = rng.range_i64(2, 7);
            let num = rng.range_i64(1, den - 1) * if rng.below(2) == 0 { 1 } else { -1 };
            rat(num, den)
        }
        ConstantTerm::AbsAboveOne => {
            let num = rng.range_i64(2, 9) * if rng.below(2) == 0 { 1 } else { -1 };
            let den = 1;
            rat(num, den)
        }
    };
    MonicPolynomial::new(coeffs).expect("degree >= 2")
}

/// Uniform random factor order (Fisher-Yates).
pub fn random_permutation(rng: &mut SplitMix64, n: usize) -> FiedlerPermutation {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.below(i + 1));
    }
    FiedlerPermutation::new(order).expect("shuffle yields a permutation")
}

/// Uniform random lattice path for degree n.
pub fn random_lattice_path(rng: &mut SplitMix64, n: usize) -> LatticePath {
    assert!(n >= 2);
    let moves = (0..n - 1)
        .map(|_| if rng.below(2) == 0 { PathMove::Up } else { PathMove::Right })
        .collect();
    LatticePath::new(moves)
}

/// Structural constraint for sampled canonical forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HessenbergShape {
    Free,
    /// No coefficient may land in the u region (first column above -c_0).
    ZeroU,
    /// No coefficient may land in the y region (bottom row right of -c_0).
    ZeroY,
}

/// Sample a random unit sparse canonical form of p.
///
/// Coefficient -c_s must sit on subdiagonal d = n-1-s inside the block R,
/// which leaves the row choice i in [max(m, d), min(n-1, d+m)]; the end
/// coefficients are forced into the corners. `ZeroU` excludes column 0 (so
/// m >= 1), `ZeroY` excludes the bottom row (so m <= n-2); both leave the
/// respective vector structurally zero.
pub fn random_unit_sparse_hessenberg(
    rng: &mut SplitMix64,
    p: &MonicPolynomial,
    shape: HessenbergShape,
) -> HessenbergCompanion {
    let n = p.degree();
    let m = match shape {
        HessenbergShape::Free => rng.below(n),
        HessenbergShape::ZeroU => 1 + rng.below(n - 1),
        HessenbergShape::ZeroY => rng.below(n - 1),
    };
    let mut matrix = LabeledMatrix::zero(n);
    for i in 0..n - 1 {
        matrix.set(i, i + 1, Rational::one(), Label::One);
    }
    matrix.set(n - 1, 0, -p.coeff(0).clone(), Label::Coef(0));
    matrix.set(m, m, -p.coeff(n - 1).clone(), Label::Coef(n - 1));
    for s in 1..n - 1 {
        let d = n - 1 - s;
        let lo = m.max(d);
        let hi = (n - 1).min(d + m);
        let mut choices: Vec<usize> = (lo..=hi).collect();
        match shape {
            HessenbergShape::ZeroU => choices.retain(|&i| i != d),
            HessenbergShape::ZeroY => choices.retain(|&i| i != n - 1),
            HessenbergShape::Free => {}
        }
        let i = choices[rng.below(choices.len())];
        matrix.set(i, i - d, -p.coeff(s).clone(), Label::Coef(s));
    }
    HessenbergCompanion::from_builder(p.clone(), m, matrix)
}
