//! Exact scalar field abstraction.
//!
//! Every matrix, probability vector and convex set in this crate is generic over
//! [`Scalar`]. The trait is only implemented for exact rational types: the
//! equalities checked throughout (category laws, set equalities, hull membership)
//! are decidable only when arithmetic never rounds.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// An exact ordered field element.
pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + FromStr + Num + Signed + Send + Sync + 'static
{
    /// Builds `numer / denom`. Panics if `denom == 0`.
    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_usize(n: usize) -> Self {
        Self::from_ratio(n as i64, 1)
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }

    fn is_nonnegative(&self) -> bool {
        !self.is_negative()
    }

    /// Parses the `p/q` wire form (a bare integer is accepted as `p/1`).
    fn parse(text: &str) -> Option<Self> {
        Self::from_str(text.trim()).ok()
    }

    /// The same value as an arbitrary-precision rational.
    fn to_big(&self) -> BigRational;

    /// The inverse of [`Scalar::to_big`], if the value fits `Self`.
    fn from_big(q: &BigRational) -> Option<Self>;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone
        + Integer
        + Signed
        + Hash
        + Debug
        + Display
        + FromStr
        + From<i64>
        + Into<BigInt>
        + TryFrom<BigInt>
        + Send
        + Sync
        + 'static,
{
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Ratio::new(T::from(numer), T::from(denom))
    }

    fn to_big(&self) -> BigRational {
        Ratio::new_raw(self.numer().clone().into(), self.denom().clone().into())
    }

    fn from_big(q: &BigRational) -> Option<Self> {
        let numer = T::try_from(q.numer().clone()).ok()?;
        let denom = T::try_from(q.denom().clone()).ok()?;
        Some(Ratio::new_raw(numer, denom))
    }
}

/// Sum of a slice of scalars.
pub fn sum<S: Scalar>(values: &[S]) -> S {
    values.iter().fold(S::zero(), |acc, v| acc + v.clone())
}

/// Inner product of two equal-length slices.
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn is_one<S: Scalar>(value: &S) -> bool {
    value.is_one()
}

pub fn is_zero<S: Scalar>(value: &S) -> bool {
    value.is_zero()
}

/// The arbitrary-precision rational used by default everywhere.
pub type BigRational = Ratio<BigInt>;

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let q = BigRational::from_ratio(2, -4);
        assert_eq!(q.numer(), &BigInt::from(-1));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(q.to_string(), "-1/2");
    }

    #[test]
    fn exact_addition() {
        let a = BigRational::from_ratio(1, 3);
        let b = BigRational::from_ratio(1, 6);
        assert_eq!(a + b, BigRational::half());
    }

    #[test]
    fn wire_form_round_trips() {
        for text in ["1/2", "0", "1", "7/9", "-3/4"] {
            let q = BigRational::parse(text).unwrap();
            assert_eq!(q.to_string(), text);
        }
        assert_eq!(BigRational::parse("4/8").unwrap().to_string(), "1/2");
        assert!(BigRational::parse("1/0").is_none());
        assert!(BigRational::parse("abc").is_none());
    }

    #[test]
    fn fixed_width_ratio_is_a_scalar() {
        let a = Ratio::<i64>::from_ratio(1, 4);
        assert_eq!(sum(&[a, a, a, a]), Ratio::one());
    }
}
