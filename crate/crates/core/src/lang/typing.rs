//! Type checking with grade synthesis.

use std::fmt;

use crate::error::{Error, Result};
use crate::finstoch::{FinSetObj, ProbVector};
use crate::imp::Grade;
use crate::lang::ast::{Regrading, Term, Type};
use crate::Rational;

/// An ordered typing context. Later bindings shadow earlier ones.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Context {
    vars: Vec<(String, Type)>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vars<I, N>(vars: I) -> Self
    where
        I: IntoIterator<Item = (N, Type)>,
        N: Into<String>,
    {
        Self {
            vars: vars.into_iter().map(|(n, t)| (n.into(), t)).collect(),
        }
    }

    pub fn vars(&self) -> &[(String, Type)] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn extend(&self, name: &str, ty: Type) -> Self {
        let mut vars = self.vars.clone();
        vars.push((name.to_string(), ty));
        Self { vars }
    }

    /// Position of the innermost binding of `name`.
    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.vars.iter().rposition(|(x, _)| x == name)
    }

    pub fn size(&self) -> usize {
        self.vars.iter().map(|(_, t)| t.size()).product()
    }

    pub fn object(&self) -> FinSetObj {
        FinSetObj::new(self.size()).expect("types are inhabited")
    }

    /// Splits an index of the context object into one index per variable.
    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.vars.len()];
        for (d, (_, t)) in digits.iter_mut().zip(&self.vars).rev() {
            *d = index % t.size();
            index /= t.size();
        }
        digits
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, t)) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}: {t}")?;
        }
        Ok(())
    }
}

/// A typing derivation: every node records its context, type and grade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedTerm {
    pub ctx: Context,
    pub ty: Type,
    pub grade: Grade,
    pub node: TypedNode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypedNode {
    /// Position of the variable in the context.
    Var(String, usize),
    Let(String, Box<TypedTerm>, Box<TypedTerm>),
    If(Box<TypedTerm>, Box<TypedTerm>, Box<TypedTerm>),
    Pair(Vec<TypedTerm>),
    Bernoulli,
    Choose(ProbVector<Rational>),
    Knight(String, usize),
    Ctor(usize, Type),
    Regrade(Regrading, Box<TypedTerm>),
}

impl TypedTerm {
    /// The underlying untyped term.
    pub fn term(&self) -> Term {
        match &self.node {
            TypedNode::Var(x, _) => Term::Var(x.clone()),
            TypedNode::Let(x, t, u) => Term::Let(x.clone(), Box::new(t.term()), Box::new(u.term())),
            TypedNode::If(b, t, u) => Term::If(Box::new(b.term()), Box::new(t.term()), Box::new(u.term())),
            TypedNode::Pair(ts) => Term::Pair(ts.iter().map(TypedTerm::term).collect()),
            TypedNode::Bernoulli => Term::Bernoulli,
            TypedNode::Choose(p) => Term::Choose(p.clone()),
            TypedNode::Knight(a, k) => Term::Knight(a.clone(), *k),
            TypedNode::Ctor(tag, ty) => Term::Ctor(*tag, ty.clone()),
            TypedNode::Regrade(r, t) => Term::Regrade(r.clone(), Box::new(t.term())),
        }
    }
}

/// Infers the type and grade of `term` in `ctx`.
///
/// Sequenced parts (the two sides of a binding, the components of a tuple,
/// the condition against its branches) must use disjoint names. The two
/// branches of a conditional may share names, which then denote the same
/// draw; their grades are joined and each branch is weakened to the join.
pub fn infer(term: &Term, ctx: &Context) -> Result<TypedTerm> {
    let leaf = |ty: Type, grade: Grade, node: TypedNode| TypedTerm {
        ctx: ctx.clone(),
        ty,
        grade,
        node,
    };
    match term {
        Term::Var(x) => {
            let i = ctx
                .lookup(x)
                .ok_or_else(|| Error::Unbound(format!("variable `{x}` is not in scope")))?;
            Ok(leaf(ctx.vars[i].1.clone(), Grade::empty(), TypedNode::Var(x.clone(), i)))
        }
        Term::Bernoulli => Ok(leaf(Type::Bool, Grade::empty(), TypedNode::Bernoulli)),
        Term::Choose(p) => Ok(leaf(Type::Fin(p.dim()), Grade::empty(), TypedNode::Choose(p.clone()))),
        Term::Knight(a, k) => Ok(leaf(
            Type::Fin(*k),
            Grade::single(a.clone(), *k)?,
            TypedNode::Knight(a.clone(), *k),
        )),
        Term::Ctor(tag, ty) => {
            if *tag >= ty.size() {
                return Err(Error::Type(format!("constructor {} does not exist in {ty}", tag + 1)));
            }
            let ty = match ty.normalize() {
                Type::Fin(n) => Type::Fin(n),
                _ => return Err(Error::Type(format!("{ty} has no nullary constructors"))),
            };
            Ok(leaf(ty.clone(), Grade::empty(), TypedNode::Ctor(*tag, ty)))
        }
        Term::Let(x, t, u) => {
            let t = infer(t, ctx)?;
            let u = infer(u, &ctx.extend(x, t.ty.clone()))?;
            let grade = t.grade.tensor(&u.grade).map_err(|_| {
                Error::NameClash(format!(
                    "binding `{x}` draws at {} and its body draws at {}; a Knightian choice can be drawn only once",
                    t.grade, u.grade
                ))
            })?;
            Ok(leaf(u.ty.clone(), grade, TypedNode::Let(x.clone(), Box::new(t), Box::new(u))))
        }
        Term::If(b, t, u) => {
            let b = infer(b, ctx)?;
            if !b.ty.is_bool() {
                return Err(Error::Type(format!("condition has type {}, expected Bool", b.ty)));
            }
            let t = infer(t, ctx)?;
            let u = infer(u, ctx)?;
            if t.ty != u.ty {
                return Err(Error::Type(format!("branches have types {} and {}", t.ty, u.ty)));
            }
            let joined = t.grade.union(&u.grade)?;
            let grade = b.grade.tensor(&joined).map_err(|_| {
                Error::NameClash(format!(
                    "condition draws at {} and the branches draw at {joined}",
                    b.grade
                ))
            })?;
            Ok(leaf(t.ty.clone(), grade, TypedNode::If(Box::new(b), Box::new(t), Box::new(u))))
        }
        Term::Pair(ts) => {
            if ts.len() < 2 {
                return Err(Error::Malformed("a tuple needs at least two components".into()));
            }
            let parts = ts.iter().map(|t| infer(t, ctx)).collect::<Result<Vec<_>>>()?;
            let mut grade = Grade::empty();
            for p in &parts {
                grade = grade.tensor(&p.grade).map_err(|_| {
                    Error::NameClash(format!("tuple components draw at overlapping grades {grade} and {}", p.grade))
                })?;
            }
            let ty = Type::Prod(parts.iter().map(|p| p.ty.clone()).collect());
            Ok(leaf(ty, grade, TypedNode::Pair(parts)))
        }
        Term::Regrade(r, t) => {
            let t = infer(t, ctx)?;
            let site = t.grade.site(r.site()).ok_or_else(|| {
                Error::GradeMismatch(format!("`{}` is not drawn in a term at {}", r.site(), t.grade))
            })?;
            if let Regrading::Perm(_, perm) = r {
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                if sorted != (0..site.arity).collect::<Vec<_>>() {
                    return Err(Error::Malformed(format!(
                        "{perm:?} is not a permutation of the {} outcomes of `{}`",
                        site.arity,
                        r.site()
                    )));
                }
            }
            Ok(leaf(t.ty.clone(), t.grade.clone(), TypedNode::Regrade(r.clone(), Box::new(t))))
        }
    }
}
