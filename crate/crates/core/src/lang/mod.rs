//! The surface language: syntax, type and grade inference, and the two
//! denotational backends.

pub mod ast;
pub mod elaborate;
pub mod generate;
pub mod laws;
pub mod parse;
pub mod typing;

pub use ast::{Regrading, Term, Type};
pub use elaborate::{elaborate_cp, elaborate_imp, EvalOrder};
pub use laws::{check_law, GradedEquation, Law, LawInstance};
pub use parse::parse;
pub use typing::{infer, Context, TypedNode, TypedTerm};

use crate::error::Result;
use crate::GradedMorphism;

/// Parses, checks and denotes a closed program.
pub fn denote(source: &str) -> Result<GradedMorphism> {
    elaborate_imp(&infer(&parse(source)?, &Context::new())?)
}
