//! Compositional semantics for programs mixing fair coins with named
//! Knightian choices.
//!
//! Programs denote graded stochastic matrices ([`imp`]); forgetting the
//! grading yields convex sets of distributions ([`credal`], [`bridge`]).
//! All arithmetic is exact; see [`scalar`].

pub mod bridge;
pub mod credal;
pub mod error;
pub mod finstoch;
pub mod imp;
pub mod json;
pub mod lang;
pub mod plot;
pub mod random;
pub mod rational_lp;
pub mod scalar;
pub mod suite;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// The arbitrary-precision rational used by the language front end.
pub type Rational = scalar::BigRational;
/// Fixed-width rational for small instances where overflow is ruled out.
pub type SmallRational = num_rational::Ratio<i64>;

pub type ProbVector = finstoch::ProbVector<Rational>;
pub type StochMatrix = finstoch::StochMatrix<Rational>;
pub type GradeMap = imp::GradeMap<Rational>;
pub type GradedMorphism = imp::GradedMorphism<Rational>;
pub type CredalSet = credal::CredalSet<Rational>;
pub type KlMorphism = credal::KlMorphism<Rational>;
pub type OplaxReport = bridge::OplaxReport<Rational>;
pub type KanWitness = bridge::KanWitness<Rational>;

pub use finstoch::FinSetObj;
pub use imp::{Grade, Site};
