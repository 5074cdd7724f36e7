//! Strategies shared by the integration tests.

#![allow(dead_code)]

use imp_core::finstoch::ProbVector;
use imp_core::{Rational, Scalar};
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

/// A distribution on `dim` points with weights in `0..=4`.
pub fn prob_vector(dim: usize) -> impl Strategy<Value = ProbVector<Rational>> {
    prop::collection::vec(0i64..=4, dim)
        .prop_filter("some weight is positive", |w| w.iter().any(|&x| x > 0))
        .prop_map(|w| {
            let total: i64 = w.iter().sum();
            ProbVector::new(w.iter().map(|&x| q(x, total)).collect()).unwrap()
        })
}

pub fn prob_vectors(dim: usize, count: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<ProbVector<Rational>>> {
    prop::collection::vec(prob_vector(dim), count)
}

/// Seeds for the deterministic generators in `imp_core::random`.
pub fn seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}
