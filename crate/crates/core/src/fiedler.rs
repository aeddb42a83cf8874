//! Fiedler companion matrices: factor products, the lattice-path canonical
//! forms, initial step sizes, and closed-form condition numbers.
//!
//! The factor matrices are F_0 = diag(1, ..., 1, -c_0) and, for k >= 1,
//! F_k = blockdiag(I_{n-k-1}, T_k, I_{k-1}) with T_k = [[-c_k, 1], [1, 0]].
//! Multiplying all n factors in any order yields a companion matrix of p.
//! Among canonical Hessenberg forms, the Fiedler ones are exactly those whose
//! coefficients trace a lattice path from the bottom-left to the top-right
//! corner of the coefficient block, and the condition number depends only on
//! the initial step size of that path.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hessenberg::{unit_sparse_norm_sq, HessenbergCompanion};
use crate::matrix::{Label, LabeledMatrix};
use crate::poly::MonicPolynomial;
use crate::rational::{rat_int, Rational};
use crate::report::condition_report;

/// A permutation of {0, ..., n-1} selecting the factor multiplication order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiedlerPermutation {
    order: Vec<usize>,
}

impl FiedlerPermutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation);
            }
            seen[v] = true;
        }
        Ok(FiedlerPermutation { order })
    }

    pub fn identity(n: usize) -> Self {
        FiedlerPermutation { order: (0..n).collect() }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// One step of a coefficient lattice path inside the block R.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathMove {
    Up,
    Right,
}

/// Positions of -c_1, ..., -c_{n-1} relative to -c_0 in the bottom-left
/// corner of R: each move places the next coefficient one row up or one
/// column right. A path with r `Right` moves yields the canonical form with
/// block split m = r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    moves: Vec<PathMove>,
}

impl LatticePath {
    pub fn new(moves: Vec<PathMove>) -> Self {
        LatticePath { moves }
    }

    /// Parse from a compact string such as `"RUU"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut moves = Vec::with_capacity(text.len());
        for ch in text.chars() {
            match ch {
                'R' | 'r' => moves.push(PathMove::Right),
                'U' | 'u' => moves.push(PathMove::Up),
                _ => return Err(Error::InvalidPermutation),
            }
        }
        Ok(LatticePath { moves })
    }

    pub fn moves(&self) -> &[PathMove] {
        &self.moves
    }

    /// Degree of the polynomial this path describes.
    pub fn degree(&self) -> usize {
        self.moves.len() + 1
    }

    /// Number of `Right` moves; the block split m of the resulting form.
    pub fn rights(&self) -> usize {
        self.moves.iter().filter(|m| **m == PathMove::Right).count()
    }

    /// Length of the initial run of equal moves; this is the initial step
    /// size of the resulting Fiedler form.
    pub fn initial_run(&self) -> usize {
        let first = self.moves[0];
        self.moves.iter().take_while(|m| **m == first).count()
    }
}

impl std::fmt::Display for LatticePath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for m in &self.moves {
            f.write_str(match m {
                PathMove::Right => "R",
                PathMove::Up => "U",
            })?;
        }
        Ok(())
    }
}

/// The factor matrix F_k for p, with structural labels.
pub fn fiedler_factor(k: usize, p: &MonicPolynomial) -> Result<LabeledMatrix> {
    let n = p.degree();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, bound: n - 1 });
    }
    let mut m = LabeledMatrix::identity(n);
    if k == 0 {
        m.set(n - 1, n - 1, -p.coeff(0).clone(), Label::Coef(0));
    } else {
        let top = n - k - 1;
        m.set(top, top, -p.coeff(k).clone(), Label::Coef(k));
        m.set(top, top + 1, Rational::one(), Label::One);
        m.set(top + 1, top, Rational::one(), Label::One);
        m.set(top + 1, top + 1, Rational::zero(), Label::Zero);
    }
    Ok(m)
}

/// First `n` odd primes, the generic coefficient assignment used to recover
/// entry labels from factor products.
fn odd_primes(n: usize) -> Vec<i64> {
    let mut primes = Vec::with_capacity(n);
    let mut candidate: i64 = 3;
    while primes.len() < n {
        if (2..candidate).take_while(|d| d * d <= candidate).all(|d| candidate % d != 0) {
            primes.push(candidate);
        }
        candidate += 2;
    }
    primes
}

/// The product F_{sigma_0} F_{sigma_1} ... F_{sigma_{n-1}}.
///
/// Every entry of the product is identically 0, 1, or -c_k as a polynomial in
/// the coefficients, but a numeric product loses that identity. The labels
/// are therefore recovered by evaluating the product once at the generic
/// assignment c_i = i-th odd prime, after which each entry is unambiguously
/// 0, 1, or the negative of one prime; the real coefficient values are then
/// instantiated from the labels. The result is unit sparse but need not be in
/// the canonical Hessenberg orientation.
pub fn fiedler_product(sigma: &FiedlerPermutation, p: &MonicPolynomial) -> LabeledMatrix {
    let n = p.degree();
    assert_eq!(sigma.len(), n, "permutation length must equal the degree");
    let primes = odd_primes(n);
    let generic =
        MonicPolynomial::new(primes.iter().map(|&q| rat_int(q)).collect()).expect("degree >= 2");

    let mut product = fiedler_factor(sigma.order()[0], &generic).expect("index in range");
    for &k in &sigma.order()[1..] {
        let factor = fiedler_factor(k, &generic).expect("index in range");
        let values = product.mul_values(&factor);
        product = LabeledMatrix::from_values(values, "factor product");
    }

    let mut out = LabeledMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            let v = product.value(i, j);
            if v.is_zero() {
                continue;
            }
            if v.is_one() {
                out.set(i, j, Rational::one(), Label::One);
                continue;
            }
            let index = primes
                .iter()
                .position(|&q| *v == rat_int(-q))
                .unwrap_or_else(|| panic!("factor product entry {} is not 0, 1, or -c_k", v));
            out.set(i, j, -p.coeff(index).clone(), Label::Coef(index));
        }
    }
    out
}

/// Canonical Hessenberg form whose coefficient labels trace `path`.
pub fn lattice_to_hessenberg(path: &LatticePath, p: &MonicPolynomial) -> HessenbergCompanion {
    let n = p.degree();
    assert_eq!(path.degree(), n, "path length must be n - 1");
    let m = path.rights();
    let mut matrix = LabeledMatrix::zero(n);
    for i in 0..n - 1 {
        matrix.set(i, i + 1, Rational::one(), Label::One);
    }
    let (mut i, mut j) = (n - 1, 0usize);
    matrix.set(i, j, -p.coeff(0).clone(), Label::Coef(0));
    for (k, step) in path.moves().iter().enumerate() {
        match step {
            PathMove::Up => i -= 1,
            PathMove::Right => j += 1,
        }
        matrix.set(i, j, -p.coeff(k + 1).clone(), Label::Coef(k + 1));
    }
    HessenbergCompanion::from_builder(p.clone(), m, matrix)
}

/// Whether consecutive coefficients of a canonical form are lattice-adjacent:
/// -c_{k+1} directly above or directly right of -c_k for every k.
pub fn is_fiedler_hessenberg(c: &HessenbergCompanion) -> bool {
    let n = c.dim();
    let mut prev = match c.matrix().coef_position(0) {
        Some(pos) => pos,
        None => return false,
    };
    for k in 1..n {
        let Some(cur) = c.matrix().coef_position(k) else {
            return false;
        };
        let up = prev.0 > 0 && cur == (prev.0 - 1, prev.1);
        let right = cur == (prev.0, prev.1 + 1);
        if !up && !right {
            return false;
        }
        prev = cur;
    }
    true
}

/// Initial step size: the number of coefficients other than c_0 in the line
/// (row or column) containing both -c_0 and -c_1.
///
/// Works on labels, so repeated or zero coefficient values cannot distort the
/// count, and accepts any orientation, not just the canonical one.
pub fn initial_step_size(m: &LabeledMatrix) -> Result<usize> {
    let p0 = m.coef_position(0).ok_or(Error::NotFiedler)?;
    let p1 = m.coef_position(1).ok_or(Error::NotFiedler)?;
    let count_coefs = |cells: &mut dyn Iterator<Item = (usize, usize)>| {
        cells
            .filter(|&(i, j)| matches!(m.label(i, j), Label::Coef(s) if *s != 0))
            .count()
    };
    if p0.0 == p1.0 {
        let row = p0.0;
        Ok(count_coefs(&mut (0..m.dim()).map(|j| (row, j))))
    } else if p0.1 == p1.1 {
        let col = p0.1;
        Ok(count_coefs(&mut (0..m.dim()).map(|i| (i, col))))
    } else {
        Err(Error::NotFiedler)
    }
}

/// ||F^{-1}||^2 for a Fiedler matrix with initial step size `t`:
/// (n-1) + (1 + c_1^2 + ... + c_t^2)/c_0^2 + c_{t+1}^2 + ... + c_{n-1}^2.
pub fn fiedler_inv_norm_sq(p: &MonicPolynomial, t: usize) -> Result<Rational> {
    let n = p.degree();
    if t == 0 || t > n - 1 {
        return Err(Error::IndexOutOfRange { index: t, bound: n - 1 });
    }
    let c0 = p.constant_term();
    if c0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let c0_sq = c0.clone() * c0;
    let low = (Rational::one() + p.coeff_sq_sum(1..t + 1)) / c0_sq;
    Ok(rat_int((n - 1) as i64) + low + p.coeff_sq_sum(t + 1..n))
}

/// kappa(F)^2 for any Fiedler companion matrix with initial step size `t`.
pub fn kappa_fiedler_sq(p: &MonicPolynomial, t: usize) -> Result<Rational> {
    Ok(unit_sparse_norm_sq(p) * fiedler_inv_norm_sq(p, t)?)
}

/// Where |c_0| stands relative to 1; decides the direction in which
/// kappa(t) is monotone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantTermRegime {
    LessThanOne,
    EqualToOne,
    GreaterThanOne,
}

impl std::fmt::Display for ConstantTermRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConstantTermRegime::LessThanOne => "|c0| < 1",
            ConstantTermRegime::EqualToOne => "|c0| = 1",
            ConstantTermRegime::GreaterThanOne => "|c0| > 1",
        })
    }
}

/// kappa(t)^2 for every step size, with the regime tag and an exact
/// monotonicity verification: nondecreasing for |c_0| < 1, constant for
/// |c_0| = 1, nonincreasing for |c_0| > 1.
#[derive(Debug, Clone)]
pub struct KappaOrdering {
    pub regime: ConstantTermRegime,
    /// (t, kappa(t)^2) for t = 1, ..., n-1.
    pub entries: Vec<(usize, Rational)>,
    pub monotone: bool,
}

pub fn kappa_ordering(p: &MonicPolynomial) -> Result<KappaOrdering> {
    let n = p.degree();
    let abs_c0 = p.constant_term().abs();
    if abs_c0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let regime = match abs_c0.cmp(&Rational::one()) {
        std::cmp::Ordering::Less => ConstantTermRegime::LessThanOne,
        std::cmp::Ordering::Equal => ConstantTermRegime::EqualToOne,
        std::cmp::Ordering::Greater => ConstantTermRegime::GreaterThanOne,
    };
    let entries: Vec<(usize, Rational)> = (1..n)
        .map(|t| Ok((t, kappa_fiedler_sq(p, t)?)))
        .collect::<Result<_>>()?;
    let monotone = entries.windows(2).all(|w| match regime {
        ConstantTermRegime::LessThanOne => w[0].1 <= w[1].1,
        ConstantTermRegime::EqualToOne => w[0].1 == w[1].1,
        ConstantTermRegime::GreaterThanOne => w[0].1 >= w[1].1,
    });
    Ok(KappaOrdering { regime, entries, monotone })
}

/// One step-size comparison inside a [`RatioBoundReport`].
#[derive(Debug, Clone)]
pub struct RatioBoundEntry {
    pub step: usize,
    pub kappa_f_sq: Rational,
    /// Whether the theorem's hypothesis kappa(F) <= kappa(C) holds here.
    pub applicable: bool,
    /// kappa(C)^2 / kappa(F)^2, exact.
    pub ratio_sq: Rational,
    /// For applicable entries: kappa(C)/kappa(F) <= kappa(F), checked as
    /// kappa(C)^2 <= (kappa(F)^2)^2.
    pub bound_holds: Option<bool>,
}

/// Result of checking 1 <= kappa(C)/kappa(F) <= kappa(F) against every step
/// size. Step sizes with kappa(F) > kappa(C) fall outside the hypothesis and
/// are reported as not applicable rather than failed.
#[derive(Debug, Clone)]
pub struct RatioBoundReport {
    pub kappa_c_sq: Rational,
    pub entries: Vec<RatioBoundEntry>,
    pub all_applicable_hold: bool,
}

/// Compare a canonical unit sparse form whose u or y vector vanishes against
/// the Fiedler condition numbers of the same polynomial.
pub fn ratio_bound_check(c: &HessenbergCompanion) -> Result<RatioBoundReport> {
    let u_zero = c.u_values().iter().all(Rational::is_zero);
    let y_zero = c.y_values().iter().all(Rational::is_zero);
    if !u_zero && !y_zero {
        return Err(Error::HypothesisNotMet);
    }
    let kappa_c_sq = condition_report(c.matrix())?.kappa_sq;
    let n = c.dim();
    let mut entries = Vec::with_capacity(n - 1);
    let mut all_hold = true;
    for t in 1..n {
        let kappa_f_sq = kappa_fiedler_sq(c.p(), t)?;
        let applicable = kappa_f_sq <= kappa_c_sq;
        let ratio_sq = kappa_c_sq.clone() / kappa_f_sq.clone();
        let bound_holds = applicable
            .then(|| kappa_c_sq <= kappa_f_sq.clone() * &kappa_f_sq);
        if bound_holds == Some(false) {
            all_hold = false;
        }
        entries.push(RatioBoundEntry { step: t, kappa_f_sq, applicable, ratio_sq, bound_holds });
    }
    Ok(RatioBoundReport { kappa_c_sq, entries, all_applicable_hold: all_hold })
}

/// All 2^{n-1} lattice paths for degree n, in a fixed order.
pub fn all_lattice_paths(n: usize) -> Vec<LatticePath> {
    assert!(n >= 2);
    let steps = n - 1;
    (0..(1usize << steps))
        .map(|mask| {
            let moves = (0..steps)
                .map(|k| if mask >> k & 1 == 1 { PathMove::Right } else { PathMove::Up })
                .collect();
            LatticePath::new(moves)
        })
        .collect()
}

/// The canonical path of initial step size t: t `Right` moves, then `Up`s.
pub fn path_with_initial_step(n: usize, t: usize) -> Result<LatticePath> {
    if t == 0 || t > n - 1 {
        return Err(Error::IndexOutOfRange { index: t, bound: n - 1 });
    }
    let mut moves = vec![PathMove::Right; t];
    moves.extend(std::iter::repeat_n(PathMove::Up, n - 1 - t));
    Ok(LatticePath::new(moves))
}

/// All n! factor orders, lexicographically.
pub fn all_permutations(n: usize) -> Vec<FiedlerPermutation> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn recurse(
        n: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<FiedlerPermutation>,
    ) {
        if current.len() == n {
            out.push(FiedlerPermutation { order: current.clone() });
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                recurse(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    recurse(n, &mut current, &mut used, &mut out);
    out
}
