//! Surface syntax: types, terms and a pretty printer whose output parses back
//! to the same term.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::finstoch::ProbVector;
use crate::Rational;

/// A finite type. Equality is up to the canonical identifications
/// `Unit = Fin 1`, `Bool = Fin 2`, `Three = Fin 3` and `Fin a + Fin b = Fin (a+b)`.
#[derive(Debug, Clone, Eq)]
pub enum Type {
    Unit,
    Bool,
    Three,
    Fin(usize),
    Sum(Vec<Type>),
    Prod(Vec<Type>),
}

impl Type {
    pub fn size(&self) -> usize {
        match self {
            Type::Unit => 1,
            Type::Bool => 2,
            Type::Three => 3,
            Type::Fin(n) => *n,
            Type::Sum(ts) => ts.iter().map(Type::size).sum(),
            Type::Prod(ts) => ts.iter().map(Type::size).product(),
        }
    }

    /// Canonical representative: a sum of finite sets is flattened to `Fin`,
    /// products keep their factors, and singleton sums and products unwrap.
    pub fn normalize(&self) -> Type {
        match self {
            Type::Unit => Type::Fin(1),
            Type::Bool => Type::Fin(2),
            Type::Three => Type::Fin(3),
            Type::Fin(n) => Type::Fin(*n),
            Type::Sum(ts) => {
                let parts: Vec<Type> = ts.iter().map(Type::normalize).collect();
                if parts.len() == 1 {
                    return parts.into_iter().next().unwrap();
                }
                if parts.iter().all(|t| matches!(t, Type::Fin(_))) {
                    Type::Fin(parts.iter().map(Type::size).sum())
                } else {
                    Type::Sum(parts)
                }
            }
            Type::Prod(ts) => {
                let parts: Vec<Type> = ts.iter().map(Type::normalize).collect();
                if parts.len() == 1 {
                    parts.into_iter().next().unwrap()
                } else {
                    Type::Prod(parts)
                }
            }
        }
    }

    pub fn is_bool(&self) -> bool {
        self.normalize() == Type::Fin(2)
    }
}

impl PartialEq for Type {
    fn eq(&self, other: &Self) -> bool {
        fn structural(a: &Type, b: &Type) -> bool {
            match (a, b) {
                (Type::Fin(x), Type::Fin(y)) => x == y,
                (Type::Sum(xs), Type::Sum(ys)) | (Type::Prod(xs), Type::Prod(ys)) => {
                    xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| structural(x, y))
                }
                _ => false,
            }
        }
        structural(&self.normalize(), &other.normalize())
    }
}

impl Hash for Type {
    fn hash<H: Hasher>(&self, state: &mut H) {
        fn go<H: Hasher>(t: &Type, state: &mut H) {
            match t {
                Type::Fin(n) => (0u8, n).hash(state),
                Type::Sum(ts) | Type::Prod(ts) => {
                    (u8::from(matches!(t, Type::Sum(_))) + 1, ts.len()).hash(state);
                    ts.iter().for_each(|t| go(t, state));
                }
                _ => unreachable!("normalized"),
            }
        }
        go(&self.normalize(), state)
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, ts: &[Type], sep: &str| {
            write!(f, "(")?;
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    write!(f, " {sep} ")?;
                }
                write!(f, "{t}")?;
            }
            write!(f, ")")
        };
        match self.normalize() {
            Type::Fin(1) => write!(f, "Unit"),
            Type::Fin(2) => write!(f, "Bool"),
            Type::Fin(3) => write!(f, "Three"),
            Type::Fin(n) => write!(f, "Fin({n})"),
            Type::Sum(ts) => join(f, &ts, "+"),
            Type::Prod(ts) => join(f, &ts, "*"),
            _ => unreachable!("normalize only returns Fin, Sum or Prod"),
        }
    }
}

/// A coercion along a bijection of one Knightian site.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regrading {
    /// Reverses the outcomes of the named site.
    Flip(String),
    /// Sends outcome `i` of the named site to `perm[i]`.
    Perm(String, Vec<usize>),
}

impl Regrading {
    pub fn site(&self) -> &str {
        match self {
            Regrading::Flip(a) | Regrading::Perm(a, _) => a,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Let(String, Box<Term>, Box<Term>),
    If(Box<Term>, Box<Term>, Box<Term>),
    /// A tuple of at least two components.
    Pair(Vec<Term>),
    Bernoulli,
    Choose(ProbVector<Rational>),
    Knight(String, usize),
    /// The `tag`-th constant (zero-based) of a finite type.
    Ctor(usize, Type),
    Regrade(Regrading, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn let_in(name: &str, bound: Term, body: Term) -> Term {
        Term::Let(name.to_string(), Box::new(bound), Box::new(body))
    }

    pub fn if_then_else(cond: Term, then: Term, otherwise: Term) -> Term {
        Term::If(Box::new(cond), Box::new(then), Box::new(otherwise))
    }

    pub fn knight(name: &str) -> Term {
        Term::Knight(name.to_string(), 2)
    }

    pub fn flip(name: &str, body: Term) -> Term {
        Term::Regrade(Regrading::Flip(name.to_string()), Box::new(body))
    }

    pub fn r() -> Term {
        Term::Ctor(0, Type::Three)
    }

    pub fn g() -> Term {
        Term::Ctor(1, Type::Three)
    }

    pub fn b() -> Term {
        Term::Ctor(2, Type::Three)
    }

    pub fn tt() -> Term {
        Term::Ctor(0, Type::Bool)
    }

    pub fn ff() -> Term {
        Term::Ctor(1, Type::Bool)
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        fn go(t: &Term, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match t {
                Term::Var(x) => {
                    if !bound.contains(x) && !out.contains(x) {
                        out.push(x.clone());
                    }
                }
                Term::Let(x, t, u) => {
                    go(t, bound, out);
                    bound.push(x.clone());
                    go(u, bound, out);
                    bound.pop();
                }
                Term::If(b, t, u) => {
                    go(b, bound, out);
                    go(t, bound, out);
                    go(u, bound, out);
                }
                Term::Pair(ts) => ts.iter().for_each(|t| go(t, bound, out)),
                Term::Regrade(_, t) => go(t, bound, out),
                Term::Bernoulli | Term::Choose(_) | Term::Knight(..) | Term::Ctor(..) => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn has_free(&self, name: &str) -> bool {
        self.free_vars().iter().any(|x| x == name)
    }

    fn is_compound(&self) -> bool {
        matches!(self, Term::Let(..) | Term::If(..))
    }

    fn write_nested(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_compound() {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

fn write_ctor(f: &mut fmt::Formatter<'_>, tag: usize, ty: &Type) -> fmt::Result {
    match (ty.normalize(), tag) {
        (Type::Fin(2), 0) => write!(f, "true"),
        (Type::Fin(2), 1) => write!(f, "false"),
        (Type::Fin(3), 0) => write!(f, "r"),
        (Type::Fin(3), 1) => write!(f, "g"),
        (Type::Fin(3), 2) => write!(f, "b"),
        (_, _) => write!(f, "inj {} of {}", tag + 1, ty.size()),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::Let(x, t, u) => {
                write!(f, "{x} <- ")?;
                t.write_nested(f)?;
                write!(f, "; {u}")
            }
            Term::If(b, t, u) => {
                write!(f, "if ")?;
                b.write_nested(f)?;
                write!(f, " then ")?;
                t.write_nested(f)?;
                write!(f, " else ")?;
                u.write_nested(f)
            }
            Term::Pair(ts) => {
                write!(f, "(")?;
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    t.write_nested(f)?;
                }
                write!(f, ")")
            }
            Term::Bernoulli => write!(f, "bernoulli"),
            Term::Choose(p) => {
                write!(f, "choose [")?;
                for (i, x) in p.entries().iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            Term::Knight(a, 2) => write!(f, "knight({a})"),
            Term::Knight(a, k) => write!(f, "knight({a}:{k})"),
            Term::Ctor(tag, ty) => write_ctor(f, *tag, ty),
            Term::Regrade(Regrading::Flip(a), t) => write!(f, "flip({a})({t})"),
            Term::Regrade(Regrading::Perm(a, perm), t) => {
                let perm: Vec<String> = perm.iter().map(usize::to_string).collect();
                write!(f, "perm({a}, [{}])({t})", perm.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_identifications() {
        assert_eq!(Type::Bool, Type::Fin(2));
        assert_eq!(Type::Three, Type::Sum(vec![Type::Unit, Type::Unit, Type::Unit]));
        assert_eq!(Type::Sum(vec![Type::Bool, Type::Unit]), Type::Three);
        assert_ne!(Type::Prod(vec![Type::Bool, Type::Bool]), Type::Fin(4));
        assert_eq!(Type::Prod(vec![Type::Bool, Type::Three]).size(), 6);
        assert_eq!(Type::Prod(vec![Type::Bool, Type::Three]).to_string(), "(Bool * Three)");
    }

    #[test]
    fn pretty_printing() {
        let t = Term::let_in(
            "z",
            Term::Bernoulli,
            Term::if_then_else(Term::var("z"), Term::r(), Term::let_in("x", Term::knight("a1"), Term::g())),
        );
        assert_eq!(t.to_string(), "z <- bernoulli; if z then r else (x <- knight(a1); g)");
        assert_eq!(Term::Ctor(3, Type::Fin(5)).to_string(), "inj 4 of 5");
        assert_eq!(Term::Knight("a".into(), 3).to_string(), "knight(a:3)");
    }

    #[test]
    fn free_variables_respect_binding() {
        let t = Term::let_in("x", Term::var("y"), Term::Pair(vec![Term::var("x"), Term::var("z")]));
        assert_eq!(t.free_vars(), vec!["y".to_string(), "z".to_string()]);
        assert!(!t.has_free("x"));
    }
}
