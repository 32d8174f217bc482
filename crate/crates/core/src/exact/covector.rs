//! Canonical integer covectors: the linear forms that cut out hyperplanes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational};

/// An integer linear form on `k` coordinates in canonical projective form:
/// the gcd of the absolute coefficients is 1 and the first nonzero
/// coefficient is positive. Two forms cut out the same hyperplane exactly
/// when their canonical forms agree, which makes deduplication a key lookup.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntCovector {
    coefficients: Vec<BigInt>,
}

impl IntCovector {
    /// Canonicalizes an arbitrary nonzero integer vector.
    pub fn canonicalize(coefficients: Vec<BigInt>) -> Result<Self> {
        if coefficients.iter().all(Zero::is_zero) {
            return Err(Error::DegenerateCovector);
        }
        let mut gcd = BigInt::zero();
        for c in &coefficients {
            gcd = gcd.gcd(c);
        }
        let first_nonzero_negative = coefficients
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(Signed::is_negative);
        if first_nonzero_negative {
            gcd = -gcd;
        }
        let coefficients = coefficients.into_iter().map(|c| c / &gcd).collect();
        Ok(IntCovector { coefficients })
    }

    pub fn from_i64(coefficients: &[i64]) -> Result<Self> {
        IntCovector::canonicalize(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.coefficients.iter().sum()
    }

    /// Evaluates the form at a tuple of plane points.
    pub fn evaluate(&self, points: &[GaussianRational]) -> GaussianRational {
        debug_assert_eq!(points.len(), self.coefficients.len());
        let mut acc = GaussianRational::zero();
        for (c, p) in self.coefficients.iter().zip(points) {
            if !c.is_zero() {
                acc = &acc + &p.scale(&Rational::from_bigint(c.clone()));
            }
        }
        acc
    }

    /// Evaluates the form at a tuple of real rational coordinates.
    pub fn evaluate_real(&self, coords: &[Rational]) -> Rational {
        debug_assert_eq!(coords.len(), self.coefficients.len());
        let mut acc = Rational::zero();
        for (c, x) in self.coefficients.iter().zip(coords) {
            if !c.is_zero() {
                acc = &acc + &(x * &Rational::from_bigint(c.clone()));
            }
        }
        acc
    }

    pub fn as_rational_row(&self) -> Vec<Rational> {
        self.coefficients
            .iter()
            .map(|c| Rational::from_bigint(c.clone()))
            .collect()
    }
}

/// Serializes coefficients as JSON numbers, falling back to decimal strings
/// for values outside the i64 range.
pub(crate) fn serialize_bigint_seq<S: Serializer>(
    ints: &[BigInt],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    let mut seq = serializer.serialize_seq(Some(ints.len()))?;
    for c in ints {
        match c.to_i64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&c.to_string())?,
        }
    }
    seq.end()
}

impl Serialize for IntCovector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bigint_seq(&self.coefficients, serializer)
    }
}
