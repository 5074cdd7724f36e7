//! Finitely generated convex sets of distributions and their Kleisli structure.
//!
//! A [`CredalSet`] is stored by the generators it was built from together with
//! its canonical form: the extreme points, sorted lexicographically. Two sets
//! are equal exactly when their canonical forms agree.

use std::fmt;

use crate::error::{Error, Result};
use crate::finstoch::{check_weight, FinSetObj, ProbVector};
use crate::rational_lp;
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct CredalSet<S: Scalar> {
    dim: usize,
    generators: Vec<ProbVector<S>>,
    extremes: Vec<ProbVector<S>>,
}

impl<S: Scalar> PartialEq for CredalSet<S> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.extremes == other.extremes
    }
}

impl<S: Scalar> Eq for CredalSet<S> {}

impl<S: Scalar> std::hash::Hash for CredalSet<S> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.extremes.hash(state);
    }
}

impl<S: Scalar> CredalSet<S> {
    /// The convex hull of a nonempty list of distributions of one dimension.
    pub fn new(generators: Vec<ProbVector<S>>) -> Result<Self> {
        let dim = generators.first().ok_or(Error::EmptyGenerators)?.dim();
        if let Some(g) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::Dimension(format!("generator in D({}) among D({dim})", g.dim())));
        }
        let mut distinct = generators.clone();
        distinct.sort();
        distinct.dedup();
        let raw: Vec<Vec<S>> = distinct.iter().map(|g| g.entries().to_vec()).collect();
        let extremes: Vec<ProbVector<S>> = rational_lp::extreme_indices(&raw)?
            .into_iter()
            .map(|i| distinct[i].clone())
            .collect();
        Ok(Self {
            dim,
            generators,
            extremes,
        })
    }

    pub fn singleton(p: ProbVector<S>) -> Self {
        Self {
            dim: p.dim(),
            generators: vec![p.clone()],
            extremes: vec![p],
        }
    }

    /// `η(i) = {δ_i}`.
    pub fn unit(index: usize, dim: usize) -> Result<Self> {
        Ok(Self::singleton(ProbVector::dirac(index, dim)?))
    }

    /// The whole simplex `D(dim)`.
    pub fn simplex(dim: usize) -> Result<Self> {
        let diracs = (0..dim).map(|i| ProbVector::dirac(i, dim)).collect::<Result<Vec<_>>>()?;
        Self::new(diracs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ProbVector<S>] {
        &self.generators
    }

    pub fn extremes(&self) -> &[ProbVector<S>] {
        &self.extremes
    }

    pub fn is_singleton(&self) -> bool {
        self.extremes.len() == 1
    }

    /// The set rebuilt from its extreme points alone.
    pub fn canonical(&self) -> Self {
        Self {
            dim: self.dim,
            generators: self.extremes.clone(),
            extremes: self.extremes.clone(),
        }
    }

    pub fn contains(&self, p: &ProbVector<S>) -> Result<bool> {
        self.check_dim(p.dim())?;
        rational_lp::in_convex_hull(p.entries(), &self.raw_extremes())
    }

    /// `S +_r T = { p +_r q | p ∈ S, q ∈ T }`.
    pub fn mix(&self, other: &Self, r: &S) -> Result<Self> {
        self.check_dim(other.dim)?;
        check_weight(r)?;
        let mut gens = Vec::with_capacity(self.extremes.len() * other.extremes.len());
        for p in &self.extremes {
            for q in &other.extremes {
                gens.push(ProbVector::convex_comb(p, q, r)?);
            }
        }
        Self::new(gens)
    }

    /// Convex closure of the union.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        Self::new(self.generators.iter().chain(&other.generators).cloned().collect())
    }

    pub fn subset(&self, other: &Self) -> Result<bool> {
        self.check_dim(other.dim)?;
        let hull = other.raw_extremes();
        for e in &self.extremes {
            if !rational_lp::in_convex_hull(e.entries(), &hull)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equal(&self, other: &Self) -> Result<bool> {
        self.check_dim(other.dim)?;
        Ok(self.extremes == other.extremes)
    }

    /// Image under a function `dim → target`.
    pub fn push_forward(&self, map: &[usize], target: usize) -> Result<Self> {
        let gens = self
            .extremes
            .iter()
            .map(|p| p.push_forward(map, target))
            .collect::<Result<Vec<_>>>()?;
        Self::new(gens)
    }

    fn raw_extremes(&self) -> Vec<Vec<S>> {
        self.extremes.iter().map(|e| e.entries().to_vec()).collect()
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.dim {
            return Err(Error::Dimension(format!("CP({}) against CP({dim})", self.dim)));
        }
        Ok(())
    }
}

pub fn extreme_points<S: Scalar>(set: &CredalSet<S>) -> Vec<ProbVector<S>> {
    set.extremes.clone()
}

impl<S: Scalar> fmt::Display for CredalSet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hull{{")?;
        for (i, e) in self.extremes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// A Kleisli morphism `m → n`: one credal set over `n` per input.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KlMorphism<S: Scalar> {
    dom: FinSetObj,
    cod: FinSetObj,
    images: Vec<CredalSet<S>>,
}

impl<S: Scalar> KlMorphism<S> {
    pub fn new(dom: FinSetObj, cod: FinSetObj, images: Vec<CredalSet<S>>) -> Result<Self> {
        if images.len() != dom.size() {
            return Err(Error::Dimension(format!(
                "{} images for a domain of size {}",
                images.len(),
                dom.size()
            )));
        }
        if let Some(s) = images.iter().find(|s| s.dim() != cod.size()) {
            return Err(Error::Dimension(format!(
                "image in CP({}) for a codomain of size {}",
                s.dim(),
                cod.size()
            )));
        }
        Ok(Self { dom, cod, images })
    }

    /// The unit `η_n`.
    pub fn identity(n: &FinSetObj) -> Self {
        let images = (0..n.size())
            .map(|i| CredalSet::unit(i, n.size()).expect("index in range"))
            .collect();
        Self {
            dom: n.clone(),
            cod: n.clone(),
            images,
        }
    }

    /// Pointwise `η ∘ h` for a function `h`.
    pub fn from_function(dom: &FinSetObj, cod: &FinSetObj, h: impl Fn(usize) -> usize) -> Result<Self> {
        let images = (0..dom.size())
            .map(|i| CredalSet::unit(h(i), cod.size()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dom.clone(), cod.clone(), images)
    }

    pub fn dom(&self) -> &FinSetObj {
        &self.dom
    }

    pub fn cod(&self) -> &FinSetObj {
        &self.cod
    }

    pub fn images(&self) -> &[CredalSet<S>] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &CredalSet<S> {
        &self.images[i]
    }

    /// Pointwise inclusion order.
    pub fn le(&self, other: &Self) -> Result<bool> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::Dimension("comparing Kleisli maps of different type".into()));
        }
        for (a, b) in self.images.iter().zip(&other.images) {
            if !a.subset(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Weighted Minkowski sum `Σ_i w_i · S_i` over the nonzero weights.
fn weighted_sum<S: Scalar>(weights: &[S], sets: &[CredalSet<S>], dim: usize) -> Result<CredalSet<S>> {
    let mut acc: Vec<Vec<S>> = vec![vec![S::zero(); dim]];
    for (w, set) in weights.iter().zip(sets) {
        if w.is_zero() {
            continue;
        }
        let mut next = Vec::with_capacity(acc.len() * set.extremes().len());
        for partial in &acc {
            for e in set.extremes() {
                next.push(
                    partial
                        .iter()
                        .zip(e.entries())
                        .map(|(a, b)| a.clone() + w.clone() * b.clone())
                        .collect::<Vec<S>>(),
                );
            }
        }
        next.sort();
        next.dedup();
        acc = rational_lp::extreme_indices(&next)?
            .into_iter()
            .map(|i| next[i].clone())
            .collect();
    }
    let mut extremes = acc.into_iter().map(ProbVector::new).collect::<Result<Vec<_>>>()?;
    extremes.sort();
    Ok(CredalSet {
        dim,
        generators: extremes.clone(),
        extremes,
    })
}

/// `f*(X) = ⋁_{x ∈ ext X} Σ_i x_i · f(i)`.
pub fn kleisli_extend<S: Scalar>(f: &KlMorphism<S>, x: &CredalSet<S>) -> Result<CredalSet<S>> {
    if x.dim() != f.dom.size() {
        return Err(Error::Dimension(format!(
            "extending a map on {} points over CP({})",
            f.dom.size(),
            x.dim()
        )));
    }
    let mut gens = Vec::new();
    for e in x.extremes() {
        let sum = weighted_sum(e.entries(), &f.images, f.cod.size())?;
        gens.extend(sum.extremes().iter().cloned());
    }
    CredalSet::new(gens)
}

/// Kleisli composite `g* ∘ f`.
pub fn kl_compose<S: Scalar>(g: &KlMorphism<S>, f: &KlMorphism<S>) -> Result<KlMorphism<S>> {
    if f.cod != g.dom {
        return Err(Error::Dimension(format!(
            "cannot compose Kleisli maps through sizes {} and {}",
            f.cod.size(),
            g.dom.size()
        )));
    }
    let images = f
        .images
        .iter()
        .map(|x| kleisli_extend(g, x))
        .collect::<Result<Vec<_>>>()?;
    KlMorphism::new(f.dom.clone(), g.cod.clone(), images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BigRational;

    type Q = BigRational;

    fn p(entries: &[(i64, i64)]) -> ProbVector<Q> {
        ProbVector::new(entries.iter().map(|&(n, d)| Q::from_ratio(n, d)).collect()).unwrap()
    }

    fn d(i: usize, n: usize) -> ProbVector<Q> {
        ProbVector::dirac(i, n).unwrap()
    }

    fn hull(ps: Vec<ProbVector<Q>>) -> CredalSet<Q> {
        CredalSet::new(ps).unwrap()
    }

    fn fs(n: usize) -> FinSetObj {
        FinSetObj::new(n).unwrap()
    }

    #[test]
    fn extremes_drop_midpoint() {
        let s = hull(vec![d(0, 3), p(&[(0, 1), (1, 2), (1, 2)]), p(&[(1, 2), (1, 4), (1, 4)])]);
        assert_eq!(s.extremes(), &[p(&[(0, 1), (1, 2), (1, 2)]), d(0, 3)]);
        assert_eq!(hull(vec![d(0, 2)]).extremes(), &[d(0, 2)]);
    }

    #[test]
    fn empty_and_mixed_dims_rejected() {
        assert_eq!(CredalSet::<Q>::new(vec![]), Err(Error::EmptyGenerators));
        assert!(matches!(CredalSet::new(vec![d(0, 2), d(0, 3)]), Err(Error::Dimension(_))));
    }

    #[test]
    fn mix_examples() {
        let s = hull(vec![d(0, 3), d(1, 3), p(&[(1, 3), (1, 3), (1, 3)])]);
        assert_eq!(s.mix(&s, &Q::from_ratio(1, 3)).unwrap(), s);
        let m = CredalSet::singleton(d(0, 2)).mix(&CredalSet::singleton(d(1, 2)), &Q::half()).unwrap();
        assert_eq!(m, CredalSet::singleton(ProbVector::uniform(2).unwrap()));
        let m = hull(vec![d(0, 3), d(1, 3)]).mix(&CredalSet::singleton(d(2, 3)), &Q::half()).unwrap();
        assert_eq!(m, hull(vec![p(&[(1, 2), (0, 1), (1, 2)]), p(&[(0, 1), (1, 2), (1, 2)])]));
        assert!(s.mix(&s, &Q::from_ratio(2, 1)).is_err());
    }

    #[test]
    fn join_examples() {
        let j = CredalSet::singleton(d(0, 2)).join(&CredalSet::singleton(d(1, 2))).unwrap();
        assert_eq!(j, CredalSet::simplex(2).unwrap());
        assert_eq!(j.join(&j).unwrap(), j);
        assert!(j.join(&CredalSet::simplex(3).unwrap()).is_err());
    }

    #[test]
    fn subset_examples() {
        let full = CredalSet::<Q>::simplex(2).unwrap();
        let mid = CredalSet::singleton(ProbVector::uniform(2).unwrap());
        assert!(full.subset(&full).unwrap());
        assert!(mid.subset(&full).unwrap());
        assert!(!full.subset(&mid).unwrap());
    }

    #[test]
    fn units() {
        for i in 0..3 {
            assert_eq!(CredalSet::<Q>::unit(i, 3).unwrap().extremes(), &[d(i, 3)]);
        }
        assert!(CredalSet::<Q>::unit(3, 3).is_err());
    }

    #[test]
    fn extend_by_units_is_identity() {
        let x = hull(vec![d(0, 3), p(&[(0, 1), (1, 2), (1, 2)])]);
        assert_eq!(kleisli_extend(&KlMorphism::identity(&fs(3)), &x).unwrap(), x);
    }

    #[test]
    fn extend_examples() {
        let f = KlMorphism::new(
            fs(2),
            fs(2),
            vec![CredalSet::singleton(d(0, 2)), CredalSet::simplex(2).unwrap()],
        )
        .unwrap();
        assert_eq!(kleisli_extend(&f, &CredalSet::simplex(2).unwrap()).unwrap(), CredalSet::simplex(2).unwrap());

        let f = KlMorphism::new(
            fs(2),
            fs(3),
            vec![CredalSet::singleton(d(0, 3)), hull(vec![d(0, 3), d(2, 3)])],
        )
        .unwrap();
        let x = CredalSet::singleton(ProbVector::uniform(2).unwrap());
        assert_eq!(
            kleisli_extend(&f, &x).unwrap(),
            hull(vec![d(0, 3), p(&[(1, 2), (0, 1), (1, 2)])])
        );
    }

    #[test]
    fn kl_compose_unit_law() {
        let f = KlMorphism::new(
            fs(2),
            fs(3),
            vec![hull(vec![d(0, 3), d(1, 3)]), hull(vec![d(0, 3), d(2, 3)])],
        )
        .unwrap();
        assert_eq!(kl_compose(&KlMorphism::identity(&fs(3)), &f).unwrap(), f);
        assert_eq!(kl_compose(&f, &KlMorphism::identity(&fs(2))).unwrap(), f);
        assert!(kl_compose(&f, &f).is_err());
    }
}
