//! Exact characteristic polynomials.

use num_traits::Zero;

use crate::matrix::LabeledMatrix;
use crate::poly::MonicPolynomial;
use crate::rational::{rat_int, Rational};

/// Characteristic polynomial det(xI - M), exact, returned as a monic
/// polynomial in ascending coefficient order (leading 1 implicit).
///
/// Uses the Faddeev-LeVerrier recurrence, which stays in the rationals: with
/// M_1 = M and c_n = 1,
///   c_{n-k} = -tr(M_k) / k,   M_{k+1} = M (M_k + c_{n-k} I).
pub fn char_poly(m: &LabeledMatrix) -> MonicPolynomial {
    let n = m.dim();
    let mut coeffs = vec![Rational::zero(); n];

    let mut work: Vec<Vec<Rational>> = m.rows().to_vec();
    for k in 1..=n {
        let trace: Rational = (0..n).map(|i| work[i][i].clone()).sum();
        let c = -trace / rat_int(k as i64);
        coeffs[n - k] = c.clone();
        if k == n {
            break;
        }
        // work <- M * (work + c I)
        for i in 0..n {
            work[i][i] += c.clone();
        }
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for t in 0..n {
                let lhs = m.value(i, t);
                if lhs.is_zero() {
                    continue;
                }
                for j in 0..n {
                    if work[t][j].is_zero() {
                        continue;
                    }
                    next[i][j] += lhs.clone() * &work[t][j];
                }
            }
        }
        work = next;
    }
    MonicPolynomial::from_coeffs(coeffs)
}
