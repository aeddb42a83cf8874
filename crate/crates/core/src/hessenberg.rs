//! The canonical unit lower Hessenberg companion form and its block inverse.
//!
//! Every unit sparse companion matrix is equivalent to a matrix of the shape
//!
//! ```text
//! [ 0 | I_m | O         ]
//! [ R       | I_{n-m-1} ]
//! [ R       | 0^T       ]
//! ```
//!
//! with ones exactly on the superdiagonal and the n coefficient entries
//! -c_0, ..., -c_{n-1} inside the (n-m) x (m+1) block R, each -c_s sitting on
//! subdiagonal n-1-s. This module fixes that orientation as the canonical
//! storage form, validates it, and computes the closed-form block inverse
//!
//! ```text
//! [ y^T/c_0          | 0^T       | -1/c_0 ]
//! [ I_m              | O         | 0      ]
//! [ -u y^T/c_0 - H   | I_{n-m-1} | u/c_0  ]
//! ```
//!
//! where u is the first column of R strictly between its corners, y is the
//! bottom row of R without -c_0, and H is the interior.

use num_traits::Zero;

use crate::charpoly::char_poly;
use crate::error::{Error, Result};
use crate::matrix::{Label, LabeledMatrix};
use crate::poly::MonicPolynomial;
use crate::rational::Rational;

/// A polynomial together with its canonical unit lower Hessenberg companion
/// matrix and the block split parameter m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HessenbergCompanion {
    p: MonicPolynomial,
    m: usize,
    matrix: LabeledMatrix,
}

/// Outcome of structural validation; empty `violations` means valid.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    pub inferred_m: Option<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl HessenbergCompanion {
    /// Validate a candidate canonical form and wrap it. The full diagnostics
    /// are returned on failure.
    pub fn try_new(
        p: MonicPolynomial,
        m: usize,
        matrix: LabeledMatrix,
    ) -> std::result::Result<Self, ValidationReport> {
        let mut report = validate_unit_sparse(&matrix, &p);
        if let Some(inferred) = report.inferred_m {
            if inferred != m {
                report.violations.push(format!(
                    "declared m = {} but the top coefficient sits at block split m = {}",
                    m, inferred
                ));
            }
        }
        if report.is_valid() {
            Ok(HessenbergCompanion { p, m, matrix })
        } else {
            Err(report)
        }
    }

    /// Internal constructor for builders whose output is valid by
    /// construction; validated in debug builds.
    pub(crate) fn from_builder(p: MonicPolynomial, m: usize, matrix: LabeledMatrix) -> Self {
        debug_assert!(
            {
                let report = validate_unit_sparse(&matrix, &p);
                report.is_valid() && report.inferred_m == Some(m)
            },
            "builder produced an invalid canonical form"
        );
        HessenbergCompanion { p, m, matrix }
    }

    pub fn p(&self) -> &MonicPolynomial {
        &self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &LabeledMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// u: first column of R above -c_0 and below the top block, length n-m-1.
    pub fn u_values(&self) -> Vec<Rational> {
        let n = self.dim();
        (self.m..n - 1).map(|i| self.matrix.value(i, 0).clone()).collect()
    }

    /// y: bottom row of R without its leading -c_0, length m.
    pub fn y_values(&self) -> Vec<Rational> {
        let n = self.dim();
        (1..=self.m).map(|j| self.matrix.value(n - 1, j).clone()).collect()
    }

    /// H: interior of R (rows of u by columns of y), (n-m-1) x m.
    pub fn h_values(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        (self.m..n - 1)
            .map(|i| (1..=self.m).map(|j| self.matrix.value(i, j).clone()).collect())
            .collect()
    }

    /// The coefficient block R itself, (n-m) x (m+1).
    pub fn r_block(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        (self.m..n)
            .map(|i| (0..=self.m).map(|j| self.matrix.value(i, j).clone()).collect())
            .collect()
    }
}

/// ||C||^2 of any unit sparse companion form: (n-1) + sum of c_i^2.
/// All unit sparse forms of the same polynomial share this value because they
/// have exactly the same entries.
pub fn unit_sparse_norm_sq(p: &MonicPolynomial) -> Rational {
    crate::rational::rat_int((p.degree() - 1) as i64) + p.coeff_sq_sum(0..p.degree())
}

/// Frobenius companion matrix in the canonical orientation: m = 0, the first
/// column holds -c_{n-1}, ..., -c_0 top to bottom, ones on the superdiagonal.
pub fn build_frobenius(p: &MonicPolynomial) -> HessenbergCompanion {
    let n = p.degree();
    assert!(n >= 2, "companion matrices need degree >= 2");
    let mut m = LabeledMatrix::zero(n);
    for i in 0..n {
        let s = n - 1 - i;
        m.set(i, 0, -p.coeff(s).clone(), Label::Coef(s));
        if i + 1 < n {
            m.set(i, i + 1, Rational::from_integer(1.into()), Label::One);
        }
    }
    HessenbergCompanion::from_builder(p.clone(), 0, m)
}

/// Check every canonical-form invariant, reporting all violations.
///
/// Checks: label/value consistency; ones exactly on the superdiagonal;
/// exactly one -c_s per coefficient, each on subdiagonal n-1-s and inside R;
/// -c_0 in the bottom-left corner; everything else a structural zero; and the
/// characteristic polynomial equals p.
pub fn validate_unit_sparse(matrix: &LabeledMatrix, p: &MonicPolynomial) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = matrix.dim();
    if n != p.degree() {
        report.violations.push(format!(
            "matrix dimension {} does not match polynomial degree {}",
            n,
            p.degree()
        ));
        return report;
    }

    report.violations.extend(matrix.label_value_violations(p));

    // Ones exactly on the superdiagonal.
    for i in 0..n {
        for j in 0..n {
            let is_super = j == i + 1;
            let is_one = matrix.label(i, j) == &Label::One;
            if is_super && !is_one {
                report.violations.push(format!(
                    "superdiagonal entry ({}, {}) is {} rather than a structural one",
                    i + 1,
                    j + 2,
                    matrix.label(i, j).describe()
                ));
            }
            if !is_super && is_one {
                report
                    .violations
                    .push(format!("structural one off the superdiagonal at ({}, {})", i + 1, j + 1));
            }
        }
    }

    // Coefficient census and subdiagonal placement.
    let mut positions: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            match matrix.label(i, j) {
                Label::Coef(s) if *s < n => positions[*s].push((i, j)),
                Label::Coef(s) => {
                    report
                        .violations
                        .push(format!("coefficient label -c{} exceeds degree {}", s, n));
                }
                Label::Expr(text) => {
                    report.violations.push(format!(
                        "entry ({}, {}) is the expression {:?}, not a pure coefficient",
                        i + 1,
                        j + 1,
                        text
                    ));
                }
                _ => {}
            }
        }
    }
    for (s, found) in positions.iter().enumerate() {
        match found.as_slice() {
            [(i, j)] => {
                if i < j {
                    report.violations.push(format!(
                        "-c{} sits above the diagonal at ({}, {})",
                        s,
                        i + 1,
                        j + 1
                    ));
                } else if i - j != n - 1 - s {
                    report.violations.push(format!(
                        "-c{} sits on subdiagonal {} instead of {}",
                        s,
                        i - j,
                        n - 1 - s
                    ));
                }
            }
            [] => report.violations.push(format!("coefficient -c{} is missing", s)),
            many => report
                .violations
                .push(format!("coefficient -c{} appears {} times", s, many.len())),
        }
    }

    if positions[0].as_slice() != [(n - 1, 0)] {
        report
            .violations
            .push("-c0 is not in the bottom-left corner".to_string());
    }

    // Block split: -c_{n-1} must sit on the diagonal at (m, m); every
    // coefficient must then lie inside R = rows m.., columns ..=m.
    if let [(top_i, top_j)] = positions[n - 1].as_slice() {
        if top_i == top_j {
            let m = *top_i;
            report.inferred_m = Some(m);
            for (s, found) in positions.iter().enumerate() {
                if let [(i, j)] = found.as_slice() {
                    if *i < m || *j > m {
                        report.violations.push(format!(
                            "-c{} at ({}, {}) falls outside the coefficient block",
                            s,
                            i + 1,
                            j + 1
                        ));
                    }
                }
            }
        }
    }

    if report.is_valid() && char_poly(matrix) != *p {
        report
            .violations
            .push("characteristic polynomial differs from p".to_string());
    }
    report
}

/// Orientation-free unit sparse check: n-1 structural ones, each coefficient
/// exactly once, structural zeros elsewhere, and char poly equal to p. Used
/// for forms (e.g. raw Fiedler factor products) that are unit sparse but not
/// stored in the canonical orientation.
pub fn census_unit_sparse(matrix: &LabeledMatrix, p: &MonicPolynomial) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = matrix.dim();
    if n != p.degree() {
        report.violations.push(format!(
            "matrix dimension {} does not match polynomial degree {}",
            n,
            p.degree()
        ));
        return report;
    }
    report.violations.extend(matrix.label_value_violations(p));

    let mut ones = 0usize;
    let mut coef_counts = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            match matrix.label(i, j) {
                Label::One => ones += 1,
                Label::Coef(s) if *s < n => coef_counts[*s] += 1,
                Label::Coef(s) => report
                    .violations
                    .push(format!("coefficient label -c{} exceeds degree {}", s, n)),
                Label::Expr(text) => report.violations.push(format!(
                    "entry ({}, {}) is the expression {:?}, not a pure coefficient",
                    i + 1,
                    j + 1,
                    text
                )),
                Label::Zero => {}
            }
        }
    }
    if ones != n - 1 {
        report
            .violations
            .push(format!("{} structural ones, expected {}", ones, n - 1));
    }
    for (s, count) in coef_counts.iter().enumerate() {
        if *count != 1 {
            report
                .violations
                .push(format!("coefficient -c{} appears {} times", s, count));
        }
    }
    if report.is_valid() && char_poly(matrix) != *p {
        report
            .violations
            .push("characteristic polynomial differs from p".to_string());
    }
    report
}

/// Closed-form block inverse of a canonical unit Hessenberg companion form.
///
/// Requires c_0 != 0; the result equals the oracle inverse exactly.
pub fn hessenberg_inverse(c: &HessenbergCompanion) -> Result<LabeledMatrix> {
    let c0 = c.p().constant_term().clone();
    if c0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let n = c.dim();
    let m = c.m();
    let u = c.u_values();
    let y = c.y_values();
    let h = c.h_values();

    let mut values = vec![vec![Rational::zero(); n]; n];
    // Top row: y^T/c_0, zeros, -1/c_0.
    for j in 0..m {
        values[0][j] = y[j].clone() / c0.clone();
    }
    values[0][n - 1] = -Rational::from_integer(1.into()) / c0.clone();
    // I_m block.
    for i in 1..=m {
        values[i][i - 1] = Rational::from_integer(1.into());
    }
    // Bottom block: -u y^T/c_0 - H, I_{n-m-1}, u/c_0.
    for r in 0..n - m - 1 {
        let row = m + 1 + r;
        for j in 0..m {
            values[row][j] = -(u[r].clone() * &y[j]) / c0.clone() - &h[r][j];
        }
        values[row][m + r] = Rational::from_integer(1.into());
        values[row][n - 1] = u[r].clone() / c0.clone();
    }
    Ok(LabeledMatrix::from_values(values, "inverse"))
}
