//! Denotations of typed terms.
//!
//! [`elaborate_imp`] builds a graded stochastic matrix out of the graded
//! operations; [`elaborate_cp`] forgets names and interprets every Knightian
//! choice as the full simplex, sequencing with the Kleisli extension of
//! convex sets.

use crate::credal::{kl_compose, kleisli_extend, CredalSet, KlMorphism};
use crate::error::Result;
use crate::finstoch::{FinSetObj, ProbVector, StochMatrix};
use crate::imp::{self, gcompose, regrade, weaken, GradeMap};
use crate::lang::ast::Regrading;
use crate::lang::typing::{TypedNode, TypedTerm};
use crate::{GradedMorphism, Rational};

fn obj(size: usize) -> FinSetObj {
    FinSetObj::new(size).expect("types are inhabited")
}

/// A closed generator `1 → A` precomposed with discarding the context.
fn after_discard(ctx: &FinSetObj, generator: &GradedMorphism) -> Result<GradedMorphism> {
    gcompose(generator, &GradedMorphism::ungraded(StochMatrix::bang(ctx)))
}

/// The denotation `carrier(grade) ⊗ ⟦Γ⟧ → ⟦A⟧` of a typed term.
pub fn elaborate_imp(tt: &TypedTerm) -> Result<GradedMorphism> {
    let gamma = tt.ctx.object();
    let out = obj(tt.ty.size());
    let f = match &tt.node {
        TypedNode::Var(_, i) => {
            let ctx = tt.ctx.clone();
            let i = *i;
            imp::deterministic(gamma.size(), out.size(), move |g| ctx.decode(g)[i])
        }
        TypedNode::Ctor(tag, _) => {
            let tag = *tag;
            imp::deterministic(gamma.size(), out.size(), move |_| tag)
        }
        TypedNode::Bernoulli => after_discard(&gamma, &imp::bernoulli())?,
        TypedNode::Choose(p) => after_discard(&gamma, &imp::choose(p))?,
        TypedNode::Knight(a, k) => after_discard(&gamma, &imp::knight(a, *k)?)?,
        TypedNode::Let(_, t, u) => {
            // Γ --copy--> Γ⊗Γ --Γ⊗t--> Γ⊗A --u--> B
            imp::glet(&elaborate_imp(t)?, &elaborate_imp(u)?)?
        }
        TypedNode::If(b, t, u) => {
            // Γ --copy--> Γ⊗Γ --b⊗Γ--> 2⊗Γ = Γ+Γ --[t,u]--> B
            let branches = t.grade.union(&u.grade)?;
            let t = weaken(&elaborate_imp(t)?, &branches)?;
            let u = weaken(&elaborate_imp(u)?, &branches)?;
            imp::gcase(&elaborate_imp(b)?, &t, &u)?
        }
        TypedNode::Pair(parts) => {
            let mut acc = elaborate_imp(&parts[parts.len() - 1])?;
            for part in parts[..parts.len() - 1].iter().rev() {
                acc = imp::gpair(&elaborate_imp(part)?, &acc)?;
            }
            acc
        }
        TypedNode::Regrade(r, t) => {
            let inner = elaborate_imp(t)?;
            let u = match r {
                Regrading::Flip(a) => GradeMap::flip(inner.grade(), a)?,
                Regrading::Perm(a, perm) => GradeMap::permute_site(inner.grade(), a, perm)?,
            };
            regrade(&inner, &u)?
        }
    };
    GradedMorphism::new(
        f.grade().clone(),
        gamma.clone(),
        out.clone(),
        f.matrix().with_objects(f.grade().carrier_obj().product(&gamma), out)?,
    )
}

/// Which component of a tuple is drawn first in the convex-set semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EvalOrder {
    #[default]
    LeftFirst,
    RightFirst,
}

/// The denotation `⟦Γ⟧ → CP(⟦A⟧)` with unnamed Knightian choices.
pub fn elaborate_cp(tt: &TypedTerm, order: EvalOrder) -> Result<KlMorphism<Rational>> {
    let gamma = tt.ctx.object();
    let n = gamma.size();
    let out = obj(tt.ty.size());
    let constant = |set: CredalSet<Rational>| KlMorphism::new(gamma.clone(), out.clone(), vec![set; n]);
    match &tt.node {
        TypedNode::Var(_, i) => {
            let ctx = tt.ctx.clone();
            let i = *i;
            KlMorphism::from_function(&gamma, &out, move |g| ctx.decode(g)[i])
        }
        TypedNode::Ctor(tag, _) => constant(CredalSet::unit(*tag, out.size())?),
        TypedNode::Bernoulli => constant(CredalSet::singleton(ProbVector::uniform(2)?)),
        TypedNode::Choose(p) => constant(CredalSet::singleton(p.clone())),
        TypedNode::Knight(_, k) => constant(CredalSet::simplex(*k)?),
        TypedNode::Regrade(_, t) => elaborate_cp(t, order),
        TypedNode::Let(_, t, u) => {
            let t = elaborate_cp(t, order)?;
            let u = elaborate_cp(u, order)?;
            let a = t.cod().size();
            let images = (0..n)
                .map(|g| {
                    let map: Vec<usize> = (0..a).map(|x| g * a + x).collect();
                    t.image(g).push_forward(&map, n * a)
                })
                .collect::<Result<Vec<_>>>()?;
            let strength = KlMorphism::new(gamma.clone(), gamma.product(t.cod()), images)?;
            kl_compose(&u, &strength)
        }
        TypedNode::If(b, t, u) => {
            let b = elaborate_cp(b, order)?;
            let t = elaborate_cp(t, order)?;
            let u = elaborate_cp(u, order)?;
            let copair = KlMorphism::new(
                gamma.sum(&gamma),
                out.clone(),
                t.images().iter().chain(u.images()).cloned().collect(),
            )?;
            let images = (0..n)
                .map(|g| {
                    let x = b.image(g).push_forward(&[g, n + g], 2 * n)?;
                    kleisli_extend(&copair, &x)
                })
                .collect::<Result<Vec<_>>>()?;
            KlMorphism::new(gamma.clone(), out, images)
        }
        TypedNode::Pair(parts) => {
            let parts = parts
                .iter()
                .map(|p| elaborate_cp(p, order))
                .collect::<Result<Vec<_>>>()?;
            let images = (0..n)
                .map(|g| {
                    let sets: Vec<&CredalSet<Rational>> = parts.iter().map(|p| p.image(g)).collect();
                    independent_product(&sets, order)
                })
                .collect::<Result<Vec<_>>>()?;
            KlMorphism::new(gamma.clone(), out, images)
        }
    }
}

/// Draws the components of a tuple one after another, each draw free to
/// depend on the outcomes already drawn.
fn independent_product(sets: &[&CredalSet<Rational>], order: EvalOrder) -> Result<CredalSet<Rational>> {
    let sizes: Vec<usize> = sets.iter().map(|s| s.dim()).collect();
    let total: usize = sizes.iter().product();
    let indices: Vec<usize> = match order {
        EvalOrder::LeftFirst => (0..sets.len()).collect(),
        EvalOrder::RightFirst => (0..sets.len()).rev().collect(),
    };
    // `acc` ranges over tuples of the components drawn so far, stored as
    // full-width indices with the undrawn digits set to zero.
    let mut acc = CredalSet::unit(0, total)?;
    for &k in &indices {
        let stride: usize = sizes[k + 1..].iter().product();
        let step = KlMorphism::new(
            obj(total),
            obj(total),
            (0..total)
                .map(|prefix| {
                    if !(prefix / stride).is_multiple_of(sizes[k]) {
                        return CredalSet::unit(prefix, total);
                    }
                    let map: Vec<usize> = (0..sizes[k]).map(|x| prefix + x * stride).collect();
                    sets[k].push_forward(&map, total)
                })
                .collect::<Result<Vec<_>>>()?,
        )?;
        acc = kleisli_extend(&step, &acc)?;
    }
    Ok(acc)
}
