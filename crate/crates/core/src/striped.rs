//! Striped companion matrices: coefficients arranged as horizontal stripes.
//!
//! For an ordered tuple (t_1, ..., t_r) of positive integers summing to n
//! with t_1 >= t_i, the striped form places the coefficients bottom-up:
//! -c_0, ..., -c_{t_r - 1} in the last row, then each earlier stripe i > 1
//! sits t_i - 1 rows above the stripe below it, and the first stripe fills
//! the top row of the coefficient block. For equal stripes of length k with
//! c_0 = 1 a closed form for ||S^{-1}||^2 makes exact comparison against
//! every Fiedler matrix possible; unequal stripes are measured through the
//! inversion oracle only.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hessenberg::{unit_sparse_norm_sq, HessenbergCompanion};
use crate::matrix::{rank, Label, LabeledMatrix};
use crate::poly::MonicPolynomial;
use crate::rational::{rat_int, sqrt_f64, Rational};

/// Ordered stripe lengths (t_1, ..., t_r): positive, with t_1 >= t_i.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StripeTuple {
    parts: Vec<usize>,
}

impl StripeTuple {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidTuple("empty tuple".to_string()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidTuple("zero-length stripe".to_string()));
        }
        let t1 = parts[0];
        if let Some(&bad) = parts.iter().find(|&&t| t > t1) {
            return Err(Error::InvalidTuple(format!(
                "first stripe length {} is shorter than a later stripe length {}",
                t1, bad
            )));
        }
        Ok(StripeTuple { parts })
    }

    /// r equal stripes of length k.
    pub fn equal(k: usize, r: usize) -> Result<Self> {
        StripeTuple::new(vec![k; r])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the stripe lengths; the degree this tuple serves.
    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `Some((k, m))` with n = k(m+1) when all stripes share one length k.
    pub fn equal_shape(&self) -> Option<(usize, usize)> {
        let k = self.parts[0];
        self.parts.iter().all(|&t| t == k).then(|| (k, self.parts.len() - 1))
    }
}

impl std::fmt::Display for StripeTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|t| t.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Build the striped companion form S_n(t) in the canonical orientation.
pub fn build_striped(p: &MonicPolynomial, tuple: &StripeTuple) -> Result<HessenbergCompanion> {
    let n = p.degree();
    if tuple.degree() != n {
        return Err(Error::InvalidTuple(format!(
            "stripe lengths sum to {}, polynomial degree is {}",
            tuple.degree(),
            n
        )));
    }
    let parts = tuple.parts();
    let m = parts[0] - 1;
    let mut matrix = LabeledMatrix::zero(n);
    for i in 0..n - 1 {
        matrix.set(i, i + 1, Rational::one(), Label::One);
    }
    // Stripes are laid bottom-up: the last stripe starts with -c_0 in the
    // bottom row; stripe i sits t_{i+1} - 1 zero rows above stripe i+1.
    let mut row = n - 1;
    let mut coef = 0usize;
    for (idx, &len) in parts.iter().enumerate().rev() {
        for j in 0..len {
            matrix.set(row, j, -p.coeff(coef + j).clone(), Label::Coef(coef + j));
        }
        coef += len;
        if idx > 0 {
            row -= len; // len - 1 zero rows above this stripe, then the next stripe row
        }
    }
    debug_assert_eq!(row, m);
    debug_assert_eq!(coef, n);
    Ok(HessenbergCompanion::from_builder(p.clone(), m, matrix))
}

/// ||S^{-1}||^2 for equal stripes S_n(k, ..., k) with c_0 = 1:
/// n + sum_{j<k} c_j^2 + sum_{j<=m} c_{jk}^2
///   + sum_{j<=m} sum_{i<k} (c_i c_{jk} - c_{jk+i})^2.
pub fn striped_inv_norm_sq(p: &MonicPolynomial, k: usize, m: usize) -> Result<Rational> {
    let n = p.degree();
    if k == 0 || k * (m + 1) != n {
        return Err(Error::BadShape { n, k, m });
    }
    if !p.constant_term().is_one() {
        return Err(Error::NonUnitConstantTerm);
    }
    let mut total = rat_int(n as i64);
    total += p.coeff_sq_sum(1..k);
    for j in 1..=m {
        total += p.coeff(j * k).clone() * p.coeff(j * k);
        for i in 1..k {
            let cross = p.coeff(i).clone() * p.coeff(j * k) - p.coeff(j * k + i);
            total += cross.clone() * &cross;
        }
    }
    Ok(total)
}

/// kappa(S)^2 for the equal-stripe form, requiring n = k(m+1) and c_0 = 1.
pub fn kappa_striped_sq(p: &MonicPolynomial, k: usize, m: usize) -> Result<Rational> {
    Ok(unit_sparse_norm_sq(p) * striped_inv_norm_sq(p, k, m)?)
}

/// One (j, i) cross-term check of the per-term dominance criterion
/// |c_i c_{jk} - c_{jk+i}| <= |c_{jk+i}| (compared on squares, exactly).
#[derive(Debug, Clone)]
pub struct DominanceTerm {
    pub j: usize,
    pub i: usize,
    pub cross_sq: Rational,
    pub bound_sq: Rational,
    pub holds: bool,
}

/// Outcome of the stripe-versus-Fiedler dominance test.
///
/// `dominates` is the aggregate criterion: kappa(S) <= kappa(F) for every
/// Fiedler matrix iff the total cross sum is at most the total coefficient
/// sum. `per_term` carries the stronger per-term sufficient condition.
#[derive(Debug, Clone)]
pub struct DominanceReport {
    pub cross_total: Rational,
    pub coeff_total: Rational,
    pub dominates: bool,
    pub per_term: Vec<DominanceTerm>,
    pub all_terms_hold: bool,
}

pub fn stripe_dominance_check(p: &MonicPolynomial, k: usize, m: usize) -> Result<DominanceReport> {
    let n = p.degree();
    if k == 0 || k * (m + 1) != n {
        return Err(Error::BadShape { n, k, m });
    }
    if !p.constant_term().is_one() {
        return Err(Error::NonUnitConstantTerm);
    }
    let mut cross_total = Rational::zero();
    let mut coeff_total = Rational::zero();
    let mut per_term = Vec::new();
    for j in 1..=m {
        for i in 1..k {
            let cross = p.coeff(i).clone() * p.coeff(j * k) - p.coeff(j * k + i);
            let cross_sq = cross.clone() * &cross;
            let bound_sq = p.coeff(j * k + i).clone() * p.coeff(j * k + i);
            cross_total += cross_sq.clone();
            coeff_total += bound_sq.clone();
            let holds = cross_sq <= bound_sq;
            per_term.push(DominanceTerm { j, i, cross_sq, bound_sq, holds });
        }
    }
    let all_terms_hold = per_term.iter().all(|t| t.holds);
    let dominates = cross_total <= coeff_total;
    Ok(DominanceReport { cross_total, coeff_total, dominates, per_term, all_terms_hold })
}

/// Exact rank of the coefficient block R of a striped (or any canonical)
/// form.
pub fn rank_r_block(s: &HessenbergCompanion) -> usize {
    rank(&s.r_block())
}

/// A polynomial of the shape p(x) = q(x)(1 + b_1 x^k + ... + b_m x^{mk})
/// + x^{(m+1)k} with q(x) = a_{k-1}x^{k-1} + ... + a_1 x + 1.
///
/// Expanding gives a monic polynomial of degree n = k(m+1) with c_0 = 1 whose
/// equal-stripe form has a rank-one coefficient block, the case where the
/// striped matrix dominates every Fiedler matrix outright.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredPolynomial {
    k: usize,
    m: usize,
    /// a_1, ..., a_{k-1}.
    a: Vec<Rational>,
    /// b_1, ..., b_m.
    b: Vec<Rational>,
}

impl StructuredPolynomial {
    pub fn new(k: usize, m: usize, a: Vec<Rational>, b: Vec<Rational>) -> Result<Self> {
        if k == 0 || k * (m + 1) < 2 {
            return Err(Error::DegreeTooSmall { degree: k * (m + 1) });
        }
        if a.len() + 1 != k {
            return Err(Error::DimensionMismatch { expected: k - 1, got: a.len() });
        }
        if b.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: b.len() });
        }
        Ok(StructuredPolynomial { k, m, a, b })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.k * (self.m + 1)
    }

    pub fn sum_a_sq(&self) -> Rational {
        self.a.iter().map(|v| v.clone() * v).sum()
    }

    pub fn sum_b_sq(&self) -> Rational {
        self.b.iter().map(|v| v.clone() * v).sum()
    }

    /// Expand into plain monic coefficients: block j of k coefficients is
    /// b_j * (1, a_1, ..., a_{k-1}), with b_0 = 1.
    pub fn expand(&self) -> MonicPolynomial {
        let n = self.degree();
        let mut coeffs = vec![Rational::zero(); n];
        let mut q = Vec::with_capacity(self.k);
        q.push(Rational::one());
        q.extend(self.a.iter().cloned());
        for j in 0..=self.m {
            let scale = if j == 0 { Rational::one() } else { self.b[j - 1].clone() };
            for (d, qd) in q.iter().enumerate() {
                coeffs[j * self.k + d] = scale.clone() * qd;
            }
        }
        MonicPolynomial::new(coeffs).expect("degree >= 2 by construction")
    }

    /// Scale every a_i by `factor`.
    pub fn scale_a(&self, factor: &Rational) -> Self {
        let mut out = self.clone();
        out.a = out.a.iter().map(|v| v.clone() * factor).collect();
        out
    }

    /// Scale every b_j by `factor`.
    pub fn scale_b(&self, factor: &Rational) -> Self {
        let mut out = self.clone();
        out.b = out.b.iter().map(|v| v.clone() * factor).collect();
        out
    }
}

/// Exact (kappa(F)/kappa(S))^2 for a structured polynomial, with both
/// asymptotes: 1 + sum a^2 (large b) and 1 + sum b^2 (large a).
#[derive(Debug, Clone)]
pub struct StructuredRatio {
    pub ratio_sq: Rational,
    pub sum_a_sq: Rational,
    pub sum_b_sq: Rational,
    pub asymptote_large_b: Rational,
    pub asymptote_large_a: Rational,
    /// |ratio_sq - asymptote| / asymptote, exact.
    pub rel_err_large_b: Rational,
    pub rel_err_large_a: Rational,
}

impl StructuredRatio {
    pub fn ratio_float(&self) -> f64 {
        sqrt_f64(&self.ratio_sq)
    }
}

pub fn structured_ratio(sp: &StructuredPolynomial) -> StructuredRatio {
    let n = rat_int(sp.degree() as i64);
    let a = sp.sum_a_sq();
    let b = sp.sum_b_sq();
    let one = Rational::one();
    let numerator = (one.clone() + &b) * &a + &b + &n;
    let denominator = a.clone() + &b + &n;
    let ratio_sq = numerator / denominator;
    let asymptote_large_b = one.clone() + &a;
    let asymptote_large_a = one + &b;
    let rel = |target: &Rational| {
        let diff = ratio_sq.clone() - target;
        let diff = if diff < Rational::zero() { -diff } else { diff };
        diff / target.clone()
    };
    StructuredRatio {
        rel_err_large_b: rel(&asymptote_large_b),
        rel_err_large_a: rel(&asymptote_large_a),
        ratio_sq,
        sum_a_sq: a,
        sum_b_sq: b,
        asymptote_large_b,
        asymptote_large_a,
    }
}

/// One magnitude point of an asymptote sweep.
#[derive(Debug, Clone)]
pub struct AsymptotePoint {
    pub scale: i64,
    pub ratio_sq: Rational,
    pub target: Rational,
    pub rel_err: Rational,
    pub threshold: Rational,
    pub within: bool,
}

/// Sweep of one asymptote direction (which vector was scaled).
#[derive(Debug, Clone)]
pub struct AsymptoteSweep {
    pub direction: &'static str,
    pub points: Vec<AsymptotePoint>,
    pub all_within: bool,
}

/// Scale the b vector (then the a vector) by 10, 10^2, 10^3 and check the
/// exact ratio against the corresponding asymptote at relative-error
/// thresholds 10%, 1%, 0.1%. A direction whose base vector is all zero is
/// omitted (scaling cannot grow it).
pub fn structured_asymptote_grid(sp: &StructuredPolynomial) -> Vec<AsymptoteSweep> {
    let grid: [(i64, Rational); 3] =
        [(10, crate::rational::rat(1, 10)), (100, crate::rational::rat(1, 100)), (1000, crate::rational::rat(1, 1000))];
    let mut sweeps = Vec::new();
    let directions: [(&'static str, bool); 2] = [("scale-b", true), ("scale-a", false)];
    for (direction, scale_b) in directions {
        let base_zero = if scale_b {
            sp.sum_b_sq().is_zero()
        } else {
            sp.sum_a_sq().is_zero()
        };
        if base_zero {
            continue;
        }
        let mut points = Vec::new();
        for (scale, threshold) in &grid {
            let scaled = if scale_b {
                sp.scale_b(&rat_int(*scale))
            } else {
                sp.scale_a(&rat_int(*scale))
            };
            let ratio = structured_ratio(&scaled);
            let (target, rel_err) = if scale_b {
                (ratio.asymptote_large_b.clone(), ratio.rel_err_large_b.clone())
            } else {
                (ratio.asymptote_large_a.clone(), ratio.rel_err_large_a.clone())
            };
            points.push(AsymptotePoint {
                scale: *scale,
                ratio_sq: ratio.ratio_sq,
                target,
                within: rel_err <= *threshold,
                rel_err,
                threshold: threshold.clone(),
            });
        }
        let all_within = points.iter().all(|pt| pt.within);
        sweeps.push(AsymptoteSweep { direction, points, all_within });
    }
    sweeps
}

/// Every valid stripe tuple for degree n (compositions of n whose first part
/// is maximal), in lexicographic order.
pub fn all_stripe_tuples(n: usize) -> Vec<StripeTuple> {
    fn extend(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<StripeTuple>) {
        if remaining == 0 {
            out.push(StripeTuple { parts: current.clone() });
            return;
        }
        for part in 1..=remaining.min(max_part) {
            current.push(part);
            extend(remaining - part, max_part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    for t1 in 1..=n {
        let mut current = vec![t1];
        extend(n - t1, t1, &mut current, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::char_poly;
    use crate::hessenberg::validate_unit_sparse;
    use crate::rational::rat;

    #[test]
    fn seven_by_seven_layout() {
        // S_7(3,2,2): stripes (c_4,c_5,c_6), (c_2,c_3), (c_0,c_1) bottom-up
        // with one zero row above each of the lower stripes.
        let p = MonicPolynomial::from_ints(&[1, 2, 3, 4, 5, 6, 7]).unwrap();
        let tuple = StripeTuple::new(vec![3, 2, 2]).unwrap();
        let s = build_striped(&p, &tuple).unwrap();
        assert_eq!(s.m(), 2);
        let expect = [
            (2usize, 0usize, 4usize),
            (2, 1, 5),
            (2, 2, 6),
            (4, 0, 2),
            (4, 1, 3),
            (6, 0, 0),
            (6, 1, 1),
        ];
        for (i, j, s_idx) in expect {
            assert_eq!(s.matrix().label(i, j), &Label::Coef(s_idx), "({}, {})", i, j);
        }
        assert!(validate_unit_sparse(s.matrix(), &p).is_valid());
        assert_eq!(char_poly(s.matrix()), p);
    }

    #[test]
    fn eight_by_eight_layout() {
        // S_8(3,3,2): two zero rows between the top stripes.
        let p = MonicPolynomial::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        let tuple = StripeTuple::new(vec![3, 3, 2]).unwrap();
        let s = build_striped(&p, &tuple).unwrap();
        let expect = [
            (2usize, 0usize, 5usize),
            (2, 1, 6),
            (2, 2, 7),
            (5, 0, 2),
            (5, 1, 3),
            (5, 2, 4),
            (7, 0, 0),
            (7, 1, 1),
        ];
        for (i, j, s_idx) in expect {
            assert_eq!(s.matrix().label(i, j), &Label::Coef(s_idx), "({}, {})", i, j);
        }
        assert!(validate_unit_sparse(s.matrix(), &p).is_valid());
    }

    #[test]
    fn degree_nine_worked_values() {
        let p = MonicPolynomial::from_ints(&[1, 2, 3, 3, 8, 5, 2, 6, 8]).unwrap();
        let tuple = StripeTuple::equal(3, 3).unwrap();
        let s = build_striped(&p, &tuple).unwrap();
        assert_eq!(s.matrix().frobenius_norm_sq(), rat_int(224));
        assert_eq!(striped_inv_norm_sq(&p, 3, 2).unwrap(), rat_int(63));
        assert_eq!(kappa_striped_sq(&p, 3, 2).unwrap(), rat_int(14112));
        assert_eq!(rank_r_block(&s), 3);
        let row_bottom: Vec<i64> = [1i64, 2, 3].iter().map(|v| -v).collect();
        for (j, v) in row_bottom.iter().enumerate() {
            assert_eq!(s.matrix().value(8, j), &rat_int(*v));
        }
    }

    #[test]
    fn tuple_validation() {
        assert!(StripeTuple::new(vec![2, 3, 2]).is_err());
        assert!(StripeTuple::new(vec![]).is_err());
        assert!(StripeTuple::new(vec![3, 0]).is_err());
        let p = MonicPolynomial::from_ints(&[1, 2, 3, 4, 5, 6, 7]).unwrap();
        let tuple = StripeTuple::new(vec![3, 3]).unwrap();
        assert!(matches!(build_striped(&p, &tuple), Err(Error::InvalidTuple(_))));
    }

    #[test]
    fn closed_form_requires_unit_constant_and_shape() {
        let p = MonicPolynomial::from_ints(&[2, 2, 2, 2]).unwrap();
        assert_eq!(kappa_striped_sq(&p, 2, 1).unwrap_err(), Error::NonUnitConstantTerm);
        let q = MonicPolynomial::from_ints(&[1, 2, 2, 2]).unwrap();
        assert_eq!(
            kappa_striped_sq(&q, 3, 1).unwrap_err(),
            Error::BadShape { n: 4, k: 3, m: 1 }
        );
    }

    #[test]
    fn power_plus_one_kappa_is_n_squared() {
        let p = MonicPolynomial::power_plus_one(6).unwrap();
        for (k, m) in [(2usize, 2usize), (3, 1), (6, 0), (1, 5)] {
            assert_eq!(kappa_striped_sq(&p, k, m).unwrap(), rat_int(36));
        }
    }

    #[test]
    fn rank_one_block_example() {
        // b = 1, k = 2 instance: coefficients [1, 2, 2, 4, 4, 8].
        let sp = StructuredPolynomial::new(
            2,
            2,
            vec![rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        )
        .unwrap();
        let p = sp.expand();
        assert_eq!(
            p.coeffs(),
            &[rat_int(1), rat_int(2), rat_int(2), rat_int(4), rat_int(4), rat_int(8)]
        );
        let s = build_striped(&p, &StripeTuple::equal(2, 3).unwrap()).unwrap();
        assert_eq!(rank_r_block(&s), 1);
        assert_eq!(striped_inv_norm_sq(&p, 2, 2).unwrap(), rat_int(30));
        let ratio = structured_ratio(&sp);
        assert_eq!(ratio.ratio_sq, rat(110, 30));
        let dominance = stripe_dominance_check(&p, 2, 2).unwrap();
        assert!(dominance.dominates);
        assert!(dominance.cross_total.is_zero());
    }

    #[test]
    fn degree_nine_dominance_holds_per_term() {
        let p = MonicPolynomial::from_ints(&[1, 2, 3, 3, 8, 5, 2, 6, 8]).unwrap();
        let report = stripe_dominance_check(&p, 3, 2).unwrap();
        assert!(report.dominates);
        assert!(report.all_terms_hold);
        assert_eq!(report.per_term.len(), 4);
    }

    #[test]
    fn power_plus_one_block_has_rank_one() {
        let p = MonicPolynomial::power_plus_one(6).unwrap();
        let s = build_striped(&p, &StripeTuple::equal(2, 3).unwrap()).unwrap();
        assert_eq!(rank_r_block(&s), 1);
    }

    #[test]
    fn dominance_failure_case() {
        // c = [1, 2, 2, 1]: the single cross term (c_1 c_2 - c_3)^2 = 9
        // exceeds c_3^2 = 1.
        let p = MonicPolynomial::from_ints(&[1, 2, 2, 1]).unwrap();
        let report = stripe_dominance_check(&p, 2, 1).unwrap();
        assert!(!report.dominates);
        assert_eq!(report.cross_total, rat_int(9));
        assert_eq!(report.coeff_total, rat_int(1));
        assert!(!report.all_terms_hold);
    }

    #[test]
    fn zero_vector_a_means_ratio_one() {
        let sp = StructuredPolynomial::new(1, 3, vec![], vec![rat_int(5), rat_int(1), rat_int(2)])
            .unwrap();
        let ratio = structured_ratio(&sp);
        assert_eq!(ratio.ratio_sq, rat_int(1));
    }

    #[test]
    fn asymptote_ratio_tracks_k() {
        // a_1 = k = 10, b = (10, 100): the ratio approaches k.
        let sp = StructuredPolynomial::new(
            2,
            2,
            vec![rat_int(10)],
            vec![rat_int(10), rat_int(100)],
        )
        .unwrap();
        let ratio = structured_ratio(&sp);
        assert_eq!(ratio.ratio_sq, rat(1020206, 10206));
        let value = ratio.ratio_float();
        assert!((value / 10.0 - 1.0).abs() < 0.05);
    }

    #[test]
    fn tuple_enumeration() {
        let tuples = all_stripe_tuples(4);
        let rendered: Vec<String> = tuples.iter().map(|t| t.to_string()).collect();
        assert_eq!(
            rendered,
            vec!["(1,1,1,1)", "(2,1,1)", "(2,2)", "(3,1)", "(4)"]
        );
        for n in 2..=10 {
            for tuple in all_stripe_tuples(n) {
                assert_eq!(tuple.degree(), n);
            }
        }
    }
}
