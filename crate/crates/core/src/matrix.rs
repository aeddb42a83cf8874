//! Dense exact matrices with structural entry labels.
//!
//! Every companion construction pairs each entry's exact value with a label
//! recording where it came from: a structural zero, a structural one, the
//! negated coefficient -c_i, or a compound expression. Labels are assigned at
//! construction time and never inferred from values, so structural queries
//! (coefficient placement, step sizes) survive numeric coincidences such as
//! c_1 = c_2 or a coefficient that happens to be 0 or 1.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::MonicPolynomial;
use crate::rational::Rational;

/// Structural origin of a matrix entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Label {
    /// Structural zero.
    Zero,
    /// Structural one (an identity-block entry).
    One,
    /// The entry -c_i for coefficient index i.
    Coef(usize),
    /// Anything else; the string describes the expression.
    Expr(String),
}

impl Label {
    /// Short rendering used in diagnostics.
    pub fn describe(&self) -> String {
        match self {
            Label::Zero => "0".into(),
            Label::One => "1".into(),
            Label::Coef(i) => format!("-c{}", i),
            Label::Expr(text) => text.clone(),
        }
    }
}

/// A square matrix of exact rationals plus one label per entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMatrix {
    n: usize,
    values: Vec<Vec<Rational>>,
    labels: Vec<Vec<Label>>,
}

impl LabeledMatrix {
    /// n x n all-zero matrix with `Zero` labels.
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        LabeledMatrix {
            n,
            values: vec![vec![Rational::zero(); n]; n],
            labels: vec![vec![Label::Zero; n]; n],
        }
    }

    /// Identity matrix; diagonal entries carry `One` labels.
    pub fn identity(n: usize) -> Self {
        let mut m = LabeledMatrix::zero(n);
        for i in 0..n {
            m.set(i, i, Rational::one(), Label::One);
        }
        m
    }

    /// Assemble from explicit values and labels. Both grids must be n x n.
    pub fn from_parts(values: Vec<Vec<Rational>>, labels: Vec<Vec<Label>>) -> Self {
        let n = values.len();
        assert!(n >= 1 && values.iter().all(|r| r.len() == n), "values must be square");
        assert!(
            labels.len() == n && labels.iter().all(|r| r.len() == n),
            "labels must match values"
        );
        LabeledMatrix { n, values, labels }
    }

    /// Values-only constructor; every entry gets an `Expr` label.
    pub fn from_values(values: Vec<Vec<Rational>>, description: &str) -> Self {
        let n = values.len();
        let labels = vec![vec![Label::Expr(description.to_string()); n]; n];
        LabeledMatrix::from_parts(values, labels)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn value(&self, i: usize, j: usize) -> &Rational {
        &self.values[i][j]
    }

    pub fn label(&self, i: usize, j: usize) -> &Label {
        &self.labels[i][j]
    }

    /// Overwrite one entry (value and label together).
    pub fn set(&mut self, i: usize, j: usize, value: Rational, label: Label) {
        self.values[i][j] = value;
        self.labels[i][j] = label;
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.values
    }

    pub fn row_values(&self, i: usize) -> Vec<Rational> {
        self.values[i].clone()
    }

    pub fn col_values(&self, j: usize) -> Vec<Rational> {
        (0..self.n).map(|i| self.values[i][j].clone()).collect()
    }

    /// Position of the unique entry labeled `Coef(index)`, if any.
    pub fn coef_position(&self, index: usize) -> Option<(usize, usize)> {
        let mut found = None;
        for i in 0..self.n {
            for j in 0..self.n {
                if self.labels[i][j] == Label::Coef(index) {
                    if found.is_some() {
                        return None;
                    }
                    found = Some((i, j));
                }
            }
        }
        found
    }

    /// Transpose values and labels together.
    pub fn transpose(&self) -> Self {
        let mut out = LabeledMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.values[j][i] = self.values[i][j].clone();
                out.labels[j][i] = self.labels[i][j].clone();
            }
        }
        out
    }

    /// Conjugate by the permutation matrix P of `perm`: entry (i, j) moves to
    /// (perm[i], perm[j]). The result is P A P^T.
    pub fn permutation_similarity(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut out = LabeledMatrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.values[perm[i]][perm[j]] = self.values[i][j].clone();
                out.labels[perm[i]][perm[j]] = self.labels[i][j].clone();
            }
        }
        out
    }

    /// Plain value product; labels do not survive multiplication.
    pub fn mul_values(&self, other: &LabeledMatrix) -> Vec<Vec<Rational>> {
        assert_eq!(self.n, other.n, "dimension mismatch in product");
        let n = self.n;
        let mut out = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.values[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if other.values[k][j].is_zero() {
                        continue;
                    }
                    out[i][j] += self.values[i][k].clone() * &other.values[k][j];
                }
            }
        }
        out
    }

    /// Whether the value grid is the identity matrix.
    pub fn values_are_identity(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                let expect_one = i == j;
                if expect_one && !self.values[i][j].is_one() {
                    return false;
                }
                if !expect_one && !self.values[i][j].is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Sum of squared entries (the squared Frobenius norm), exact.
    pub fn frobenius_norm_sq(&self) -> Rational {
        let mut total = Rational::zero();
        for row in &self.values {
            for v in row {
                total += v.clone() * v;
            }
        }
        total
    }

    /// Violations of the label/value contract against `p`:
    /// Zero => 0, One => 1, Coef(i) => -c_i. `Expr` entries are unconstrained.
    pub fn label_value_violations(&self, p: &MonicPolynomial) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let v = &self.values[i][j];
                let bad = match &self.labels[i][j] {
                    Label::Zero => !v.is_zero(),
                    Label::One => !v.is_one(),
                    Label::Coef(k) => {
                        *k >= p.degree() || *v != -p.coeff(*k).clone()
                    }
                    Label::Expr(_) => false,
                };
                if bad {
                    out.push(format!(
                        "entry ({}, {}) has value {} but label {}",
                        i + 1,
                        j + 1,
                        v,
                        self.labels[i][j].describe()
                    ));
                }
            }
        }
        out
    }
}

impl fmt::Display for LabeledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<Vec<String>> = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect())
            .collect();
        let width = rendered
            .iter()
            .flat_map(|row| row.iter().map(|s| s.len()))
            .max()
            .unwrap_or(1);
        for row in &rendered {
            write!(f, "[")?;
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cell, width = width)?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Exact inverse via Gauss-Jordan elimination.
///
/// The result's labels are all `Expr`; inverses of companion forms are not
/// companion matrices and carry no structural labels.
pub fn invert(m: &LabeledMatrix) -> Result<LabeledMatrix> {
    let n = m.dim();
    let mut work: Vec<Vec<Rational>> = m.rows().to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !work[r][col].is_zero())
            .ok_or(Error::Singular)?;
        work.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pivot = work[col][col].clone();
        for j in 0..n {
            work[col][j] /= pivot.clone();
            inv[col][j] /= pivot.clone();
        }
        for r in 0..n {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let factor = work[r][col].clone();
            for j in 0..n {
                let w = work[col][j].clone() * &factor;
                work[r][j] -= w;
                let v = inv[col][j].clone() * &factor;
                inv[r][j] -= v;
            }
        }
    }
    Ok(LabeledMatrix::from_values(inv, "inverse"))
}

/// Exact rank of a rectangular rational matrix, by row reduction.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut work: Vec<Vec<Rational>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot_row) = (rank..work.len()).find(|&r| !work[r][col].is_zero()) else {
            continue;
        };
        work.swap(rank, pivot_row);
        let pivot = work[rank][col].clone();
        for r in 0..work.len() {
            if r == rank || work[r][col].is_zero() {
                continue;
            }
            let factor = work[r][col].clone() / pivot.clone();
            for j in col..cols {
                let w = work[rank][j].clone() * &factor;
                work[r][j] -= w;
            }
        }
        rank += 1;
        if rank == work.len() {
            break;
        }
    }
    rank
}

/// Absolute value of a rational (helper shared by comparison reports).
pub fn abs(value: &Rational) -> Rational {
    value.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn labeled(values: &[&[i64]]) -> LabeledMatrix {
        let grid: Vec<Vec<Rational>> = values
            .iter()
            .map(|row| row.iter().map(|&v| rat_int(v)).collect())
            .collect();
        LabeledMatrix::from_values(grid, "test")
    }

    #[test]
    fn inverts_identity() {
        let id = LabeledMatrix::identity(5);
        let inv = invert(&id).unwrap();
        assert!(inv.values_are_identity());
    }

    #[test]
    fn inverse_times_original_is_identity() {
        let m = labeled(&[&[2, 1, 0], &[0, 1, 3], &[5, 0, 1]]);
        let inv = invert(&m).unwrap();
        let product = LabeledMatrix::from_values(m.mul_values(&inv), "product");
        assert!(product.values_are_identity());
    }

    #[test]
    fn singular_matrix_reports_error() {
        let m = labeled(&[&[1, 2], &[2, 4]]);
        assert_eq!(invert(&m).unwrap_err(), Error::Singular);
    }

    #[test]
    fn norm_squared_is_exact() {
        let mut m = LabeledMatrix::zero(2);
        m.set(0, 0, rat(1, 2), Label::Expr("half".into()));
        m.set(1, 1, rat_int(3), Label::Expr("three".into()));
        assert_eq!(m.frobenius_norm_sq(), rat(37, 4));
        assert_eq!(LabeledMatrix::identity(4).frobenius_norm_sq(), rat_int(4));
        assert_eq!(LabeledMatrix::zero(3).frobenius_norm_sq(), rat_int(0));
    }

    #[test]
    fn rank_of_rectangular_blocks() {
        let rows = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
            vec![rat_int(0), rat_int(0)],
        ];
        assert_eq!(rank(&rows), 1);
        let rows = vec![vec![rat_int(1), rat_int(0)], vec![rat_int(0), rat_int(1)]];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn permutation_similarity_moves_entries() {
        let m = labeled(&[&[1, 2], &[3, 4]]);
        let swapped = m.permutation_similarity(&[1, 0]);
        assert_eq!(swapped.value(0, 0), &rat_int(4));
        assert_eq!(swapped.value(1, 1), &rat_int(1));
        assert_eq!(swapped.value(1, 0), &rat_int(2));
    }
}
