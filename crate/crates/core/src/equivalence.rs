//! Equivalence of companion matrices: transposition and/or permutation
//! similarity, decided exactly on entry values.

use crate::error::{Error, Result};
use crate::matrix::LabeledMatrix;
use crate::rational::Rational;

/// Default dimension cap for the exhaustive search.
pub const DEFAULT_EQUIVALENCE_CAP: usize = 8;

/// Whether `a` and `b` are related by transposition and/or permutation
/// similarity, using the default dimension cap.
pub fn equivalent(a: &LabeledMatrix, b: &LabeledMatrix) -> Result<bool> {
    equivalent_with_cap(a, b, DEFAULT_EQUIVALENCE_CAP)
}

/// As [`equivalent`], with a caller-selected dimension cap.
///
/// The search enumerates permutations with backtracking, pruning candidates
/// by sorted row/column multisets and diagonal entries; matrices of different
/// dimensions are simply inequivalent.
pub fn equivalent_with_cap(a: &LabeledMatrix, b: &LabeledMatrix, cap: usize) -> Result<bool> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    let n = a.dim();
    if n > cap {
        return Err(Error::DimensionTooLarge { n, cap });
    }
    if permutation_similar(a, b) {
        return Ok(true);
    }
    Ok(permutation_similar(a, &b.transpose()))
}

/// Whether a permutation pi exists with a[i][j] = b[pi(i)][pi(j)] for all i, j.
fn permutation_similar(a: &LabeledMatrix, b: &LabeledMatrix) -> bool {
    let n = a.dim();
    let profile = |m: &LabeledMatrix, i: usize| -> (Vec<Rational>, Vec<Rational>, Rational) {
        let mut row = m.row_values(i);
        let mut col = m.col_values(i);
        row.sort();
        col.sort();
        (row, col, m.value(i, i).clone())
    };
    let a_profiles: Vec<_> = (0..n).map(|i| profile(a, i)).collect();
    let b_profiles: Vec<_> = (0..n).map(|i| profile(b, i)).collect();

    // candidates[i] = rows of b that index i of a may map to.
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&r| a_profiles[i] == b_profiles[r])
                .collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return false;
    }

    let mut assignment: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(a, b, &candidates, &mut assignment, &mut used)
}

fn search(
    a: &LabeledMatrix,
    b: &LabeledMatrix,
    candidates: &[Vec<usize>],
    assignment: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let i = assignment.len();
    if i == a.dim() {
        return true;
    }
    'next: for &r in &candidates[i] {
        if used[r] {
            continue;
        }
        for (j, &s) in assignment.iter().enumerate() {
            if a.value(i, j) != b.value(r, s) || a.value(j, i) != b.value(s, r) {
                continue 'next;
            }
        }
        if a.value(i, i) != b.value(r, r) {
            continue;
        }
        assignment.push(r);
        used[r] = true;
        if search(a, b, candidates, assignment, used) {
            return true;
        }
        assignment.pop();
        used[r] = false;
    }
    false
}
