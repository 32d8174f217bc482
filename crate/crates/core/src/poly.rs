//! Integer polynomials in one variable, stored by ascending degree.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::exact::serialize_bigint_seq;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros so the leading coefficient is nonzero unless the polynomial is
    /// zero.
    pub fn from_coefficients(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        IntPolynomial::from_coefficients(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial {
            coefficients: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn coefficient(&self, degree: usize) -> BigInt {
        self.coefficients.get(degree).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coefficients.last().is_some_and(One::is_one)
    }

    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl Serialize for IntPolynomial {
    /// Serializes as the ascending coefficient array.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bigint_seq(&self.coefficients, serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = IntPolynomial::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p, IntPolynomial::from_i64(&[1, 2]));
        assert!(IntPolynomial::from_i64(&[0, 0]).is_zero());
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn evaluation() {
        // q^3 - 3q^2 + 2q at q = 5 is 60
        let p = IntPolynomial::from_i64(&[0, 2, -3, 1]);
        assert_eq!(p.evaluate(&BigInt::from(5)), BigInt::from(60));
        assert_eq!(p.evaluate(&BigInt::from(-1)), BigInt::from(-6));
        assert!(p.is_monic());
    }
}
