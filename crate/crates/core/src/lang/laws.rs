//! Equational laws of the language and their exact checks.

use std::fmt;

use crate::error::{Error, Result};
use crate::imp::weaken;
use crate::lang::ast::Term;
use crate::lang::elaborate::elaborate_imp;
use crate::lang::typing::{infer, Context};
use crate::GradedMorphism;

/// `if bernoulli then t else u`.
pub fn prob_choice(t: Term, u: Term) -> Term {
    Term::if_then_else(Term::Bernoulli, t, u)
}

/// `if knight(a) then t else u`.
pub fn knight_choice(a: &str, t: Term, u: Term) -> Term {
    Term::if_then_else(Term::knight(a), t, u)
}

/// Whether two morphisms agree once both are weakened to the union of their grades.
pub fn equal_up_to_weakening(f: &GradedMorphism, g: &GradedMorphism) -> Result<bool> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Ok(false);
    }
    let Ok(joined) = f.grade().union(g.grade()) else {
        return Ok(false);
    };
    Ok(weaken(f, &joined)? == weaken(g, &joined)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    Assoc,
    Comm,
    Weaken,
    Hoist,
}

impl Law {
    pub const ALL: [Law; 4] = [Law::Assoc, Law::Comm, Law::Weaken, Law::Hoist];

    pub fn name(self) -> &'static str {
        match self {
            Law::Assoc => "associativity",
            Law::Comm => "commutativity",
            Law::Weaken => "weakening",
            Law::Hoist => "hoisting",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One instance of a sequencing law, with the terms it is stated over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawInstance {
    /// `x <- t; y <- u; v  ≡  y <- (x <- t; u); v`
    Assoc {
        ctx: Context,
        x: String,
        t: Term,
        y: String,
        u: Term,
        v: Term,
    },
    /// `x <- t; y <- u; v  ≡  y <- u; x <- t; v`
    Comm {
        ctx: Context,
        x: String,
        t: Term,
        y: String,
        u: Term,
        v: Term,
    },
    /// `x <- t; u  ≡  u` weakened along the projection
    Weaken { ctx: Context, x: String, t: Term, u: Term },
    /// `if b then (x <- t; u) else (x <- t; v)  ≡  x <- t; if b then u else v`
    Hoist {
        ctx: Context,
        b: Term,
        x: String,
        t: Term,
        u: Term,
        v: Term,
    },
}

impl LawInstance {
    pub fn law(&self) -> Law {
        match self {
            LawInstance::Assoc { .. } => Law::Assoc,
            LawInstance::Comm { .. } => Law::Comm,
            LawInstance::Weaken { .. } => Law::Weaken,
            LawInstance::Hoist { .. } => Law::Hoist,
        }
    }

    pub fn ctx(&self) -> &Context {
        match self {
            LawInstance::Assoc { ctx, .. }
            | LawInstance::Comm { ctx, .. }
            | LawInstance::Weaken { ctx, .. }
            | LawInstance::Hoist { ctx, .. } => ctx,
        }
    }

    /// The two programs the law identifies.
    pub fn sides(&self) -> (Term, Term) {
        match self.clone() {
            LawInstance::Assoc { x, t, y, u, v, .. } => (
                Term::let_in(&x, t.clone(), Term::let_in(&y, u.clone(), v.clone())),
                Term::let_in(&y, Term::let_in(&x, t, u), v),
            ),
            LawInstance::Comm { x, t, y, u, v, .. } => (
                Term::let_in(&x, t.clone(), Term::let_in(&y, u.clone(), v.clone())),
                Term::let_in(&y, u, Term::let_in(&x, t, v)),
            ),
            LawInstance::Weaken { x, t, u, .. } => (Term::let_in(&x, t, u.clone()), u),
            LawInstance::Hoist { b, x, t, u, v, .. } => (
                Term::if_then_else(
                    b.clone(),
                    Term::let_in(&x, t.clone(), u.clone()),
                    Term::let_in(&x, t.clone(), v.clone()),
                ),
                Term::let_in(&x, t, Term::if_then_else(b, u, v)),
            ),
        }
    }

    /// Checks the freshness conditions under which the law is stated.
    pub fn check_side_conditions(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::SideCondition(msg));
        match self {
            LawInstance::Assoc { x, y, v, .. } => {
                if x == y {
                    return fail(format!("both binders are named `{x}`"));
                }
                if v.has_free(x) {
                    return fail(format!("`{x}` occurs free in the final term"));
                }
            }
            LawInstance::Comm { x, t, y, u, .. } => {
                if x == y {
                    return fail(format!("both binders are named `{x}`"));
                }
                if u.has_free(x) {
                    return fail(format!("`{x}` occurs free in the second bound term"));
                }
                if t.has_free(y) {
                    return fail(format!("`{y}` occurs free in the first bound term"));
                }
            }
            LawInstance::Weaken { x, u, .. } => {
                if u.has_free(x) {
                    return fail(format!("`{x}` occurs free in the body"));
                }
            }
            LawInstance::Hoist { b, x, .. } => {
                if b.has_free(x) {
                    return fail(format!("`{x}` occurs free in the condition"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for LawInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lhs, rhs) = self.sides();
        write!(f, "{}: [{}] {lhs}  ==  {rhs}", self.law(), self.ctx())
    }
}

/// Elaborates both sides and compares them exactly. Grades are canonical
/// sorted name sets, so the coherence regradings of associativity and
/// symmetry are identities; weakening regrades the right side along the
/// projection onto its grade.
pub fn check_law(instance: &LawInstance) -> Result<bool> {
    instance.check_side_conditions()?;
    let (lhs, rhs) = instance.sides();
    let lhs = elaborate_imp(&infer(&lhs, instance.ctx())?)?;
    let rhs = elaborate_imp(&infer(&rhs, instance.ctx())?)?;
    match instance {
        LawInstance::Weaken { .. } => Ok(lhs == weaken(&rhs, lhs.grade())?),
        _ => Ok(lhs == rhs),
    }
}

/// Equations between the derived binary operations `+` (fair coin) and
/// `⊕_a` (named Knightian choice).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GradedEquation {
    /// `(u ⊕_b v) ⊕_a (x ⊕_b y) = (u ⊕_a x) ⊕_b (v ⊕_a y)`
    KnightInterchange { a: String, b: String },
    /// `(u + v) + (x + y) = (u + x) + (v + y)`
    CoinInterchange,
    /// `(u ⊕_a v) + (x ⊕_a y) = (u + x) ⊕_a (v + y)`
    MixedInterchange { a: String },
    /// `x + x = x`
    CoinIdempotent,
    /// `x ⊕_a x = x`
    KnightIdempotent { a: String },
    /// `x + y = y + x`
    CoinSymmetric,
    /// `x ⊕_a y = flip(a)(y ⊕_a x)`
    KnightSymmetric { a: String },
    /// `t ⊕_a (u + v) = (t ⊕_a u) + (t ⊕_a v)`
    KnightOverCoin { a: String },
    /// `t + (u ⊕_a v) = (t + u) ⊕_a (t + v)`
    CoinOverKnight { a: String },
}

impl GradedEquation {
    /// Every equation, using the site names `a` and `b`.
    pub fn all(a: &str, b: &str) -> Vec<GradedEquation> {
        let a = a.to_string();
        vec![
            GradedEquation::KnightInterchange { a: a.clone(), b: b.to_string() },
            GradedEquation::CoinInterchange,
            GradedEquation::MixedInterchange { a: a.clone() },
            GradedEquation::CoinIdempotent,
            GradedEquation::KnightIdempotent { a: a.clone() },
            GradedEquation::CoinSymmetric,
            GradedEquation::KnightSymmetric { a: a.clone() },
            GradedEquation::KnightOverCoin { a: a.clone() },
            GradedEquation::CoinOverKnight { a },
        ]
    }

    /// Number of term metavariables.
    pub fn arity(&self) -> usize {
        match self {
            GradedEquation::KnightInterchange { .. }
            | GradedEquation::CoinInterchange
            | GradedEquation::MixedInterchange { .. } => 4,
            GradedEquation::CoinIdempotent | GradedEquation::KnightIdempotent { .. } => 1,
            GradedEquation::CoinSymmetric | GradedEquation::KnightSymmetric { .. } => 2,
            GradedEquation::KnightOverCoin { .. } | GradedEquation::CoinOverKnight { .. } => 3,
        }
    }

    /// Site names the equation itself draws.
    pub fn sites(&self) -> Vec<&str> {
        match self {
            GradedEquation::KnightInterchange { a, b } => vec![a, b],
            GradedEquation::MixedInterchange { a }
            | GradedEquation::KnightIdempotent { a }
            | GradedEquation::KnightSymmetric { a }
            | GradedEquation::KnightOverCoin { a }
            | GradedEquation::CoinOverKnight { a } => vec![a],
            _ => vec![],
        }
    }

    /// Instantiates both sides with the given terms.
    pub fn sides(&self, terms: &[Term]) -> Result<(Term, Term)> {
        if terms.len() != self.arity() {
            return Err(Error::Malformed(format!(
                "equation takes {} terms, got {}",
                self.arity(),
                terms.len()
            )));
        }
        let t = |i: usize| terms[i].clone();
        let p = prob_choice;
        Ok(match self {
            GradedEquation::KnightInterchange { a, b } => (
                knight_choice(a, knight_choice(b, t(0), t(1)), knight_choice(b, t(2), t(3))),
                knight_choice(b, knight_choice(a, t(0), t(2)), knight_choice(a, t(1), t(3))),
            ),
            GradedEquation::CoinInterchange => (p(p(t(0), t(1)), p(t(2), t(3))), p(p(t(0), t(2)), p(t(1), t(3)))),
            GradedEquation::MixedInterchange { a } => (
                p(knight_choice(a, t(0), t(1)), knight_choice(a, t(2), t(3))),
                knight_choice(a, p(t(0), t(2)), p(t(1), t(3))),
            ),
            GradedEquation::CoinIdempotent => (p(t(0), t(0)), t(0)),
            GradedEquation::KnightIdempotent { a } => (knight_choice(a, t(0), t(0)), t(0)),
            GradedEquation::CoinSymmetric => (p(t(0), t(1)), p(t(1), t(0))),
            GradedEquation::KnightSymmetric { a } => (
                knight_choice(a, t(0), t(1)),
                Term::flip(a, knight_choice(a, t(1), t(0))),
            ),
            GradedEquation::KnightOverCoin { a } => (
                knight_choice(a, t(0), p(t(1), t(2))),
                p(knight_choice(a, t(0), t(1)), knight_choice(a, t(0), t(2))),
            ),
            GradedEquation::CoinOverKnight { a } => (
                p(t(0), knight_choice(a, t(1), t(2))),
                knight_choice(a, p(t(0), t(1)), p(t(0), t(2))),
            ),
        })
    }

    /// Elaborates both sides in `ctx` and compares them up to weakening.
    pub fn check(&self, ctx: &Context, terms: &[Term]) -> Result<bool> {
        let (lhs, rhs) = self.sides(terms)?;
        let lhs = elaborate_imp(&infer(&lhs, ctx)?)?;
        let rhs = elaborate_imp(&infer(&rhs, ctx)?)?;
        equal_up_to_weakening(&lhs, &rhs)
    }
}

impl fmt::Display for GradedEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            GradedEquation::KnightInterchange { a, b } => {
                format!("(u +{b} v) +{a} (x +{b} y) = (u +{a} x) +{b} (v +{a} y)")
            }
            GradedEquation::CoinInterchange => "(u + v) + (x + y) = (u + x) + (v + y)".into(),
            GradedEquation::MixedInterchange { a } => format!("(u +{a} v) + (x +{a} y) = (u + x) +{a} (v + y)"),
            GradedEquation::CoinIdempotent => "x + x = x".into(),
            GradedEquation::KnightIdempotent { a } => format!("x +{a} x = x"),
            GradedEquation::CoinSymmetric => "x + y = y + x".into(),
            GradedEquation::KnightSymmetric { a } => format!("x +{a} y = flip({a})(y +{a} x)"),
            GradedEquation::KnightOverCoin { a } => format!("t +{a} (u + v) = (t +{a} u) + (t +{a} v)"),
            GradedEquation::CoinOverKnight { a } => format!("t + (u +{a} v) = (t + u) +{a} (t + v)"),
        };
        f.write_str(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse::parse;
    use crate::lang::Type;

    fn parsed(src: &str) -> Term {
        parse(src).unwrap()
    }

    #[test]
    fn derived_choice_reproduces_listing_one() {
        let t = knight_choice("a1", Term::r(), prob_choice(Term::g(), Term::b()));
        let m = elaborate_imp(&infer(&t, &Context::new()).unwrap()).unwrap();
        let listing = crate::lang::denote(
            "z <- bernoulli; if z then (x <- knight(a1); if x then r else g) else (y <- knight(a1); if y then r else b)",
        )
        .unwrap();
        assert_eq!(m, listing);
    }

    #[test]
    fn weakening_drops_an_unused_coin() {
        let inst = LawInstance::Weaken {
            ctx: Context::new(),
            x: "x".into(),
            t: Term::Bernoulli,
            u: Term::r(),
        };
        assert!(check_law(&inst).unwrap());
        let inst = LawInstance::Weaken {
            ctx: Context::new(),
            x: "x".into(),
            t: Term::knight("a"),
            u: Term::r(),
        };
        assert!(check_law(&inst).unwrap());
    }

    #[test]
    fn side_conditions_are_enforced() {
        let inst = LawInstance::Weaken {
            ctx: Context::new(),
            x: "x".into(),
            t: Term::Bernoulli,
            u: Term::var("x"),
        };
        assert!(matches!(check_law(&inst), Err(Error::SideCondition(_))));
        let inst = LawInstance::Comm {
            ctx: Context::new(),
            x: "x".into(),
            t: Term::Bernoulli,
            y: "y".into(),
            u: Term::var("x"),
            v: Term::r(),
        };
        assert!(matches!(check_law(&inst), Err(Error::SideCondition(_))));
    }

    #[test]
    fn commutativity_of_named_choices() {
        let inst = LawInstance::Comm {
            ctx: Context::new(),
            x: "x".into(),
            t: Term::knight("a1"),
            y: "z".into(),
            u: Term::Bernoulli,
            v: parsed("if z then (if x then r else g) else (if x then r else b)"),
        };
        assert!(check_law(&inst).unwrap());
    }

    #[test]
    fn hoisting_with_context() {
        let ctx = Context::from_vars([("w", Type::Bool)]);
        let inst = LawInstance::Hoist {
            ctx,
            b: Term::var("w"),
            x: "x".into(),
            t: Term::knight("a"),
            u: parsed("if x then r else g"),
            v: parsed("if x then b else g"),
        };
        assert!(check_law(&inst).unwrap());
    }

    #[test]
    fn graded_equations_on_constants() {
        let ctx = Context::new();
        for eq in GradedEquation::all("a", "b") {
            let terms: Vec<Term> = [Term::r(), Term::g(), Term::b(), parsed("choose [1/3, 1/3, 1/3]")]
                .into_iter()
                .take(eq.arity())
                .collect();
            assert!(eq.check(&ctx, &terms).unwrap(), "{eq}");
        }
    }

    #[test]
    fn knight_symmetry_needs_the_flip() {
        let plain = knight_choice("a", Term::r(), Term::g());
        let swapped = knight_choice("a", Term::g(), Term::r());
        let denote = |t: &Term| elaborate_imp(&infer(t, &Context::new()).unwrap()).unwrap();
        assert_ne!(denote(&plain), denote(&swapped));
    }
}
