//! Monic polynomials with exact rational coefficients.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat_int, Rational};

/// A monic polynomial x^n + c_{n-1}x^{n-1} + ... + c_1 x + c_0.
///
/// Coefficients are stored ascending (`coeffs[i]` is c_i); the leading 1 is
/// implicit. Companion constructions require degree n >= 2, which
/// [`MonicPolynomial::new`] enforces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonicPolynomial {
    coeffs: Vec<Rational>,
}

impl MonicPolynomial {
    /// Build from ascending coefficients `[c_0, ..., c_{n-1}]`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::DegreeTooSmall { degree: coeffs.len() });
        }
        Ok(MonicPolynomial { coeffs })
    }

    /// Build from ascending coefficients without the degree >= 2 check.
    ///
    /// This exists so that `char_poly` can report degree-1 results for 1x1
    /// matrices. Panics on an empty coefficient vector.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "monic polynomial needs degree >= 1");
        MonicPolynomial { coeffs }
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        MonicPolynomial::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    /// Degree n (the number of stored coefficients).
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient c_i.
    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    /// All coefficients, ascending.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The constant term c_0.
    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// x^n + 1: every middle coefficient zero, constant term one.
    pub fn power_plus_one(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegreeTooSmall { degree: n });
        }
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[0] = Rational::one();
        MonicPolynomial::new(coeffs)
    }

    /// Evaluate p at an exact point.
    pub fn eval(&self, x: &Rational) -> Rational {
        // Horner, with the implicit leading 1.
        let mut acc = Rational::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sum of c_i^2 over `range` (clipped to valid indices).
    pub fn coeff_sq_sum(&self, range: std::ops::Range<usize>) -> Rational {
        let mut total = Rational::zero();
        for i in range {
            if i < self.coeffs.len() {
                total += self.coeffs[i].clone() * &self.coeffs[i];
            }
        }
        total
    }
}

impl fmt::Display for MonicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{}", self.degree())?;
        for i in (0..self.degree()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let (sign, magnitude) = if c < &Rational::zero() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            write!(f, " {} ", sign)?;
            if i == 0 {
                write!(f, "{}", magnitude)?;
            } else if magnitude.is_one() {
                write!(f, "x^{}", i)?;
            } else {
                write!(f, "{}x^{}", magnitude, i)?;
            }
        }
        Ok(())
    }
}
