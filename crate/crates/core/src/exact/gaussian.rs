//! Exact points of the plane, represented as Gaussian rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::Rational;

/// A point of the complex plane with rational real and imaginary parts.
///
/// The derived ordering is lexicographic in `(re, im)`; it is the canonical
/// total order used to pick multiset representatives for symmetric-product
/// entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussianRational::new(Rational::from_integer(n), Rational::zero())
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational::new(re, Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        GaussianRational::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Scales by an exact rational factor.
    pub fn scale(&self, c: &Rational) -> Self {
        GaussianRational::new(&self.re * c, &self.im * c)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.re, self.im)
    }
}

impl Serialize for GaussianRational {
    /// Serializes as the two-element array `["p/q", "r/s"]`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.re, &self.im).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts: Vec<String> = Vec::deserialize(deserializer)?;
        if parts.len() != 2 {
            return Err(D::Error::custom(format!(
                "expected a two-element array [re, im], got {} elements",
                parts.len()
            )));
        }
        let re = parts[0].parse().map_err(D::Error::custom)?;
        let im = parts[1].parse().map_err(D::Error::custom)?;
        Ok(GaussianRational::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_components_compare_equal() {
        let a = GaussianRational::new("1/2".parse().unwrap(), "0".parse().unwrap());
        let b = GaussianRational::new("2/4".parse().unwrap(), "0/5".parse().unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn order_is_re_then_im() {
        let zero = GaussianRational::zero();
        let i = GaussianRational::i();
        let one = GaussianRational::from_integer(1);
        assert!(zero < i);
        assert!(i < one);
    }

    #[test]
    fn complex_multiplication() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_integer(-1));
        let z = GaussianRational::new("1/2".parse().unwrap(), "1".parse().unwrap());
        let w = GaussianRational::new("2".parse().unwrap(), "-3".parse().unwrap());
        assert_eq!(&z * &w, GaussianRational::new("4".parse().unwrap(), "1/2".parse().unwrap()));
    }

    #[test]
    fn json_round_trip() {
        let p = GaussianRational::new("1/2".parse().unwrap(), "-3/4".parse().unwrap());
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/2","-3/4"]"#);
        let back: GaussianRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<GaussianRational>(r#"["1"]"#).is_err());
    }
}
