//! Random well-graded programs and law instances.
//!
//! Knightian names are handed out from a pool: the parts of a sequential
//! construct receive disjoint parts of the pool, while the two branches of a
//! conditional share theirs. Every generated term is therefore well graded.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::finstoch::ProbVector;
use crate::lang::ast::{Term, Type};
use crate::lang::laws::{Law, LawInstance};
use crate::lang::typing::{infer, Context};
use crate::scalar::Scalar;
use crate::Rational;

/// A Knightian site available to the generator.
pub type Pool = Vec<(String, usize)>;

fn small_type(rng: &mut impl Rng) -> Type {
    if rng.gen_bool(0.5) {
        Type::Bool
    } else {
        Type::Three
    }
}

fn split(rng: &mut impl Rng, pool: &Pool, parts: usize) -> Vec<Pool> {
    let mut out = vec![Pool::new(); parts];
    for site in pool {
        out[rng.gen_range(0..parts)].push(site.clone());
    }
    out
}

fn prob_vector(rng: &mut impl Rng, dim: usize) -> ProbVector<Rational> {
    loop {
        let weights: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=3)).collect();
        let total: i64 = weights.iter().sum();
        if total > 0 {
            return ProbVector::new(weights.iter().map(|&w| Rational::from_ratio(w, total)).collect())
                .expect("normalized");
        }
    }
}

fn leaf(rng: &mut impl Rng, ctx: &Context, ty: &Type, pool: &Pool) -> Term {
    let n = ty.size();
    let vars: Vec<&String> = ctx.vars().iter().filter(|(_, t)| t == ty).map(|(x, _)| x).collect();
    let knights: Vec<&(String, usize)> = pool.iter().filter(|(_, k)| *k == n).collect();
    loop {
        match rng.gen_range(0..5) {
            0 => return Term::Ctor(rng.gen_range(0..n), ty.clone()),
            1 if !vars.is_empty() => return Term::Var(vars.choose(rng).unwrap().to_string()),
            2 if n == 2 => return Term::Bernoulli,
            2 => return Term::Choose(prob_vector(rng, n)),
            3 | 4 if !knights.is_empty() => {
                let (a, k) = knights.choose(rng).unwrap();
                return Term::Knight(a.clone(), *k);
            }
            _ => {}
        }
    }
}

/// A random term of type `ty` in `ctx` drawing only from `pool`.
pub fn term(rng: &mut impl Rng, ctx: &Context, ty: &Type, pool: &Pool, depth: usize) -> Term {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return leaf(rng, ctx, ty, pool);
    }
    match rng.gen_range(0..7) {
        0 | 1 => {
            let parts = split(rng, pool, 3);
            let (branches, cond) = (&parts[0], &parts[1]);
            let mut shared = branches.clone();
            shared.extend(parts[2].iter().cloned());
            Term::if_then_else(
                term(rng, ctx, &Type::Bool, cond, depth - 1),
                term(rng, ctx, ty, &shared, depth - 1),
                term(rng, ctx, ty, &shared, depth - 1),
            )
        }
        2 | 3 => {
            let parts = split(rng, pool, 2);
            let x = format!("x{}", ctx.len());
            let bound_ty = small_type(rng);
            let bound = term(rng, ctx, &bound_ty, &parts[0], depth - 1);
            let body = term(rng, &ctx.extend(&x, bound_ty), ty, &parts[1], depth - 1);
            Term::let_in(&x, bound, body)
        }
        4 => {
            let parts = split(rng, pool, 3);
            let x = format!("x{}", ctx.len());
            let (s, t) = (small_type(rng), small_type(rng));
            let pair = Term::Pair(vec![
                term(rng, ctx, &s, &parts[0], depth - 1),
                term(rng, ctx, &t, &parts[1], depth - 1),
            ]);
            let body = term(rng, &ctx.extend(&x, Type::Prod(vec![s, t])), ty, &parts[2], depth - 1);
            Term::let_in(&x, pair, body)
        }
        5 => {
            let body = term(rng, ctx, ty, pool, depth - 1);
            match infer(&body, ctx).ok().and_then(|t| t.grade.sites().first().cloned()) {
                Some(site) => Term::flip(&site.name, body),
                None => body,
            }
        }
        _ => leaf(rng, ctx, ty, pool),
    }
}

/// Up to `max` sites named `a0, a1, …` with arities 2 or 3.
pub fn pool(rng: &mut impl Rng, max: usize) -> Pool {
    (0..rng.gen_range(0..=max))
        .map(|i| (format!("a{i}"), rng.gen_range(2..=3)))
        .collect()
}

/// A context of up to two variables `w0, w1` of type `Bool` or `Three`.
pub fn context(rng: &mut impl Rng) -> Context {
    Context::from_vars((0..rng.gen_range(0..=2)).map(|i| (format!("w{i}"), small_type(rng))))
}

const DEPTH: usize = 3;

/// A random instance of `law` with at most three Knightian sites of arity
/// at most three and at most two context variables.
pub fn law_instance(rng: &mut impl Rng, law: Law) -> LawInstance {
    let ctx = context(rng);
    let pool = pool(rng, 3);
    let (x, y) = ("p".to_string(), "q".to_string());
    let (a, b, c) = (small_type(rng), small_type(rng), small_type(rng));
    match law {
        Law::Assoc => {
            let parts = split(rng, &pool, 3);
            LawInstance::Assoc {
                t: term(rng, &ctx, &a, &parts[0], DEPTH),
                u: term(rng, &ctx.extend(&x, a.clone()), &b, &parts[1], DEPTH),
                v: term(rng, &ctx.extend(&y, b), &c, &parts[2], DEPTH),
                ctx,
                x,
                y,
            }
        }
        Law::Comm => {
            let parts = split(rng, &pool, 3);
            LawInstance::Comm {
                t: term(rng, &ctx, &a, &parts[0], DEPTH),
                u: term(rng, &ctx, &b, &parts[1], DEPTH),
                v: term(rng, &ctx.extend(&x, a).extend(&y, b), &c, &parts[2], DEPTH),
                ctx,
                x,
                y,
            }
        }
        Law::Weaken => {
            let parts = split(rng, &pool, 2);
            LawInstance::Weaken {
                t: term(rng, &ctx, &a, &parts[0], DEPTH),
                u: term(rng, &ctx, &b, &parts[1], DEPTH),
                ctx,
                x,
            }
        }
        Law::Hoist => {
            let parts = split(rng, &pool, 3);
            let inner = ctx.extend(&x, a.clone());
            LawInstance::Hoist {
                b: term(rng, &ctx, &Type::Bool, &parts[0], DEPTH),
                t: term(rng, &ctx, &a, &parts[1], DEPTH),
                u: term(rng, &inner, &b, &parts[2], DEPTH),
                v: term(rng, &inner, &b, &parts[2], DEPTH),
                ctx,
                x,
            }
        }
    }
}
