//! The graded Markov category of graded stochastic matrices.
//!
//! A morphism `X → Y` at grade `γ` is a stochastic matrix
//! `carrier(γ) ⊗ X → Y`. Grades are finite sets of named choice sites. Their
//! carriers use the name-respecting product: sites are kept sorted by name and
//! the carrier of a union of disjoint grades is the carrier of the sorted union,
//! so associators, unitors and symmetries between grades are identities.
//! Regrading runs along surjective stochastic maps between carriers.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::finstoch::{self, FinSetObj, ProbVector, StochMatrix};
use crate::scalar::Scalar;

/// A named choice site with `arity` outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub name: String,
    pub arity: usize,
}

impl Site {
    pub fn new(name: impl Into<String>, arity: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Malformed(format!("site arity {arity} is below 2")));
        }
        Ok(Self {
            name: name.into(),
            arity,
        })
    }
}

/// A set of sites in canonical (name) order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grade {
    sites: Vec<Site>,
}

impl Grade {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(name: impl Into<String>, arity: usize) -> Result<Self> {
        Ok(Self {
            sites: vec![Site::new(name, arity)?],
        })
    }

    pub fn from_sites(sites: impl IntoIterator<Item = Site>) -> Result<Self> {
        let mut map: BTreeMap<String, usize> = BTreeMap::new();
        for s in sites {
            if s.arity < 2 {
                return Err(Error::Malformed(format!("site `{}` has arity {}", s.name, s.arity)));
            }
            if map.insert(s.name.clone(), s.arity).is_some() {
                return Err(Error::NameClash(s.name));
            }
        }
        Ok(Self {
            sites: map.into_iter().map(|(name, arity)| Site { name, arity }).collect(),
        })
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn carrier(&self) -> usize {
        self.sites.iter().map(|s| s.arity).product()
    }

    pub fn carrier_obj(&self) -> FinSetObj {
        FinSetObj::unchecked(self.carrier())
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.sites.binary_search_by(|s| s.name.as_str().cmp(name)).ok()
    }

    pub fn site(&self, name: &str) -> Option<&Site> {
        self.position(name).map(|i| &self.sites[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.position(name).is_some()
    }

    pub fn is_disjoint(&self, other: &Grade) -> bool {
        self.sites.iter().all(|s| !other.contains(&s.name))
    }

    pub fn is_subgrade_of(&self, other: &Grade) -> bool {
        self.sites.iter().all(|s| other.site(&s.name) == Some(s))
    }

    /// `γ ⊗ ε` for disjoint grades.
    pub fn tensor(&self, other: &Grade) -> Result<Grade> {
        if let Some(s) = self.sites.iter().find(|s| other.contains(&s.name)) {
            return Err(Error::NameClash(s.name.clone()));
        }
        Grade::from_sites(self.sites.iter().chain(&other.sites).cloned())
    }

    /// Union allowing shared names, which must agree on arity.
    pub fn union(&self, other: &Grade) -> Result<Grade> {
        let mut sites = self.sites.clone();
        for s in &other.sites {
            match self.site(&s.name) {
                Some(t) if t.arity == s.arity => {}
                Some(_) => return Err(Error::NameClash(s.name.clone())),
                None => sites.push(s.clone()),
            }
        }
        Grade::from_sites(sites)
    }

    /// Digits of a carrier index, one per site, most significant first.
    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.sites.len()];
        for (d, s) in digits.iter_mut().zip(&self.sites).rev() {
            *d = index % s.arity;
            index /= s.arity;
        }
        digits
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.sites)
            .fold(0, |acc, (d, s)| acc * s.arity + d)
    }

    /// For each carrier index of `self`, the index of its restriction to `sub`.
    pub fn restriction(&self, sub: &Grade) -> Result<Vec<usize>> {
        let positions = sub
            .sites
            .iter()
            .map(|s| match self.site(&s.name) {
                Some(t) if t.arity == s.arity => Ok(self.position(&s.name).unwrap()),
                _ => Err(Error::GradeMismatch(format!("`{}` is not a site of {self}", s.name))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((0..self.carrier())
            .map(|c| {
                let digits = self.decode(c);
                sub.encode(&positions.iter().map(|&p| digits[p]).collect::<Vec<_>>())
            })
            .collect())
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.sites.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:{}", s.name, s.arity)?;
        }
        write!(f, "}}")
    }
}

/// A surjective stochastic map `carrier(src) → carrier(dst)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeMap<S: Scalar> {
    src: Grade,
    dst: Grade,
    matrix: StochMatrix<S>,
}

impl<S: Scalar> GradeMap<S> {
    pub fn new(src: Grade, dst: Grade, matrix: StochMatrix<S>) -> Result<Self> {
        if matrix.cols() != src.carrier() || matrix.rows() != dst.carrier() {
            return Err(Error::Dimension(format!(
                "grade map {src} → {dst} needs a {}×{} matrix",
                dst.carrier(),
                src.carrier()
            )));
        }
        if !matrix.is_surjective() {
            return Err(Error::NotSurjective(format!("grade map {src} → {dst}")));
        }
        let matrix = matrix.with_objects(src.carrier_obj(), dst.carrier_obj())?;
        Ok(Self { src, dst, matrix })
    }

    pub fn identity(grade: &Grade) -> Self {
        Self {
            src: grade.clone(),
            dst: grade.clone(),
            matrix: StochMatrix::identity(&grade.carrier_obj()),
        }
    }

    /// Restriction `carrier(src) → carrier(dst)` for `dst ⊆ src`: the map induced
    /// by the name inclusion, i.e. the canonical weakening projection.
    pub fn projection(src: &Grade, dst: &Grade) -> Result<Self> {
        let restrict = src.restriction(dst)?;
        Ok(Self {
            src: src.clone(),
            dst: dst.clone(),
            matrix: StochMatrix::function(src.carrier(), dst.carrier(), |c| restrict[c]),
        })
    }

    /// Relabels the outcomes of one site by a permutation (`perm[i]` is the
    /// new outcome of old outcome `i`).
    pub fn permute_site(grade: &Grade, name: &str, perm: &[usize]) -> Result<Self> {
        let pos = grade
            .position(name)
            .ok_or_else(|| Error::GradeMismatch(format!("`{name}` is not a site of {grade}")))?;
        let arity = grade.sites[pos].arity;
        let mut seen = vec![false; arity];
        if perm.len() != arity || perm.iter().any(|&p| p >= arity || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Malformed(format!("not a permutation of {arity} outcomes")));
        }
        let n = grade.carrier();
        Ok(Self {
            src: grade.clone(),
            dst: grade.clone(),
            matrix: StochMatrix::function(n, n, |c| {
                let mut digits = grade.decode(c);
                digits[pos] = perm[digits[pos]];
                grade.encode(&digits)
            }),
        })
    }

    /// The non-trivial bijection on a site (outcome order reversed).
    pub fn flip(grade: &Grade, name: &str) -> Result<Self> {
        let arity = grade
            .site(name)
            .ok_or_else(|| Error::GradeMismatch(format!("`{name}` is not a site of {grade}")))?
            .arity;
        let perm: Vec<usize> = (0..arity).rev().collect();
        Self::permute_site(grade, name, &perm)
    }

    /// `self ∘ other` as maps `other.src → self.dst`.
    pub fn compose(&self, other: &GradeMap<S>) -> Result<Self> {
        if other.dst != self.src {
            return Err(Error::GradeMismatch(format!(
                "cannot compose grade maps through {} and {}",
                other.dst, self.src
            )));
        }
        Ok(Self {
            src: other.src.clone(),
            dst: self.dst.clone(),
            matrix: finstoch::compose(&self.matrix, &other.matrix)?,
        })
    }

    pub fn src(&self) -> &Grade {
        &self.src
    }

    pub fn dst(&self) -> &Grade {
        &self.dst
    }

    pub fn matrix(&self) -> &StochMatrix<S> {
        &self.matrix
    }
}

/// A morphism `dom → cod` at `grade`: a stochastic matrix
/// `carrier(grade) ⊗ dom → cod`. Column `(c, x)` sits at `c·|dom| + x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedMorphism<S: Scalar> {
    grade: Grade,
    dom: FinSetObj,
    cod: FinSetObj,
    matrix: StochMatrix<S>,
}

impl<S: Scalar> GradedMorphism<S> {
    pub fn new(grade: Grade, dom: FinSetObj, cod: FinSetObj, matrix: StochMatrix<S>) -> Result<Self> {
        if matrix.cols() != grade.carrier() * dom.size() || matrix.rows() != cod.size() {
            return Err(Error::Dimension(format!(
                "morphism {}→{} at {grade} needs a {}×{} matrix, got {}×{}",
                dom.size(),
                cod.size(),
                cod.size(),
                grade.carrier() * dom.size(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        let matrix = matrix.with_objects(grade.carrier_obj().product(&dom), cod.clone())?;
        Ok(Self {
            grade,
            dom,
            cod,
            matrix,
        })
    }

    /// An ungraded stochastic matrix viewed at the empty grade.
    pub fn ungraded(matrix: StochMatrix<S>) -> Self {
        Self {
            grade: Grade::empty(),
            dom: matrix.dom().clone(),
            cod: matrix.cod().clone(),
            matrix,
        }
    }

    pub fn identity(obj: &FinSetObj) -> Self {
        Self::ungraded(StochMatrix::identity(obj))
    }

    pub fn grade(&self) -> &Grade {
        &self.grade
    }

    pub fn dom(&self) -> &FinSetObj {
        &self.dom
    }

    pub fn cod(&self) -> &FinSetObj {
        &self.cod
    }

    pub fn matrix(&self) -> &StochMatrix<S> {
        &self.matrix
    }

    pub fn entry(&self, out: usize, choice: usize, input: usize) -> &S {
        self.matrix.get(out, choice * self.dom.size() + input)
    }

    /// The output distribution for one choice of the grade and one input.
    pub fn column(&self, choice: usize, input: usize) -> ProbVector<S> {
        self.matrix.column(choice * self.dom.size() + input)
    }

    /// `f +_r g` pointwise, for morphisms of identical type and grade.
    pub fn mix(&self, other: &Self, r: &S) -> Result<Self> {
        if self.grade != other.grade || self.dom != other.dom || self.cod != other.cod {
            return Err(Error::GradeMismatch("mixing morphisms of different type".into()));
        }
        Ok(Self {
            matrix: self.matrix.mix(&other.matrix, r)?,
            ..self.clone()
        })
    }
}

/// `f^*(u)`: precompose with `u ⊗ id(dom)`.
pub fn regrade<S: Scalar>(f: &GradedMorphism<S>, u: &GradeMap<S>) -> Result<GradedMorphism<S>> {
    if u.dst != f.grade {
        return Err(Error::GradeMismatch(format!(
            "regrading a morphism at {} along a map into {}",
            f.grade, u.dst
        )));
    }
    let lifted = finstoch::kron(&u.matrix, &StochMatrix::identity(&f.dom));
    let matrix = finstoch::compose(&f.matrix, &lifted)?;
    GradedMorphism::new(u.src.clone(), f.dom.clone(), f.cod.clone(), matrix)
}

/// Weakens `f` to a larger grade along the canonical projection.
pub fn weaken<S: Scalar>(f: &GradedMorphism<S>, to: &Grade) -> Result<GradedMorphism<S>> {
    if f.grade == *to {
        return Ok(f.clone());
    }
    regrade(f, &GradeMap::projection(to, &f.grade)?)
}

/// Graded composite `g ∘ f` at `γ ⊗ ε` where `f` is at `γ` and `g` at `ε`.
pub fn gcompose<S: Scalar>(g: &GradedMorphism<S>, f: &GradedMorphism<S>) -> Result<GradedMorphism<S>> {
    if f.cod != g.dom {
        return Err(Error::Dimension(format!(
            "cannot compose {}→{} after {}→{}",
            g.dom.size(),
            g.cod.size(),
            f.dom.size(),
            f.cod.size()
        )));
    }
    let grade = f.grade.tensor(&g.grade)?;
    let to_f = grade.restriction(&f.grade)?;
    let to_g = grade.restriction(&g.grade)?;
    let (nx, ny, nz) = (f.dom.size(), f.cod.size(), g.cod.size());
    let cols = grade.carrier() * nx;
    let mut entries = vec![S::zero(); nz * cols];
    for c in 0..grade.carrier() {
        for x in 0..nx {
            let col = c * nx + x;
            for y in 0..ny {
                let p = f.entry(y, to_f[c], x);
                if p.is_zero() {
                    continue;
                }
                for z in 0..nz {
                    let q = g.entry(z, to_g[c], y);
                    if !q.is_zero() {
                        entries[z * cols + col] = entries[z * cols + col].clone() + p.clone() * q.clone();
                    }
                }
            }
        }
    }
    let matrix = StochMatrix::from_raw(grade.carrier_obj().product(&f.dom), g.cod.clone(), entries);
    Ok(GradedMorphism {
        grade,
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        matrix,
    })
}

/// Graded monoidal product `f ⊗ g` at `γ ⊗ ε`.
pub fn gtensor<S: Scalar>(f: &GradedMorphism<S>, g: &GradedMorphism<S>) -> Result<GradedMorphism<S>> {
    let grade = f.grade.tensor(&g.grade)?;
    let to_f = grade.restriction(&f.grade)?;
    let to_g = grade.restriction(&g.grade)?;
    let dom = f.dom.product(&g.dom);
    let cod = f.cod.product(&g.cod);
    let (nx, ny, nx2, ny2) = (f.dom.size(), g.dom.size(), f.cod.size(), g.cod.size());
    let cols = grade.carrier() * dom.size();
    let mut entries = vec![S::zero(); cod.size() * cols];
    for c in 0..grade.carrier() {
        for x in 0..nx {
            for y in 0..ny {
                let col = c * dom.size() + x * ny + y;
                for a in 0..nx2 {
                    let p = f.entry(a, to_f[c], x);
                    if p.is_zero() {
                        continue;
                    }
                    for b in 0..ny2 {
                        let q = g.entry(b, to_g[c], y);
                        if !q.is_zero() {
                            entries[(a * ny2 + b) * cols + col] = p.clone() * q.clone();
                        }
                    }
                }
            }
        }
    }
    let matrix = StochMatrix::from_raw(grade.carrier_obj().product(&dom), cod.clone(), entries);
    Ok(GradedMorphism {
        grade,
        dom,
        cod,
        matrix,
    })
}

/// Copairing `[f, g] : X + Y → Z` at a shared grade.
pub fn gcoproduct<S: Scalar>(f: &GradedMorphism<S>, g: &GradedMorphism<S>) -> Result<GradedMorphism<S>> {
    if f.grade != g.grade {
        return Err(Error::GradeMismatch(format!(
            "copairing morphisms at {} and {}",
            f.grade, g.grade
        )));
    }
    if f.cod != g.cod {
        return Err(Error::Dimension(format!(
            "copairing maps into sizes {} and {}",
            f.cod.size(),
            g.cod.size()
        )));
    }
    let dom = f.dom.sum(&g.dom);
    let (nx, ny) = (f.dom.size(), g.dom.size());
    let carrier = f.grade.carrier();
    let columns: Vec<ProbVector<S>> = (0..carrier)
        .flat_map(|c| {
            (0..nx)
                .map(move |x| f.column(c, x))
                .chain((0..ny).map(move |y| g.column(c, y)))
        })
        .collect();
    let matrix = StochMatrix::from_columns(f.cod.clone(), &columns)?
        .with_objects(f.grade.carrier_obj().product(&dom), f.cod.clone())?;
    Ok(GradedMorphism {
        grade: f.grade.clone(),
        dom,
        cod: f.cod.clone(),
        matrix,
    })
}

fn check_same_dom<S: Scalar>(f: &GradedMorphism<S>, g: &GradedMorphism<S>) -> Result<()> {
    if f.dom != g.dom {
        return Err(Error::Dimension(format!(
            "morphisms out of sizes {} and {} share no input",
            f.dom.size(),
            g.dom.size()
        )));
    }
    Ok(())
}

/// `⟨f, g⟩ = (f ⊗ g) ∘ copy` at `γ ⊗ ε`, computed without forming `copy`.
pub fn gpair<S: Scalar>(f: &GradedMorphism<S>, g: &GradedMorphism<S>) -> Result<GradedMorphism<S>> {
    check_same_dom(f, g)?;
    let grade = f.grade.tensor(&g.grade)?;
    let to_f = grade.restriction(&f.grade)?;
    let to_g = grade.restriction(&g.grade)?;
    let cod = f.cod.product(&g.cod);
    let (nx, na, nb) = (f.dom.size(), f.cod.size(), g.cod.size());
    let cols = grade.carrier() * nx;
    let mut entries = vec![S::zero(); cod.size() * cols];
    for c in 0..grade.carrier() {
        for x in 0..nx {
            let col = c * nx + x;
            for a in 0..na {
                let p = f.entry(a, to_f[c], x);
                if p.is_zero() {
                    continue;
                }
                for b in 0..nb {
                    let q = g.entry(b, to_g[c], x);
                    if !q.is_zero() {
                        entries[(a * nb + b) * cols + col] = p.clone() * q.clone();
                    }
                }
            }
        }
    }
    let matrix = StochMatrix::from_raw(grade.carrier_obj().product(&f.dom), cod.clone(), entries);
    Ok(GradedMorphism {
        grade,
        dom: f.dom.clone(),
        cod,
        matrix,
    })
}

/// `u ∘ (id ⊗ t) ∘ copy : Γ → B` for `t : Γ → A` and `u : Γ ⊗ A → B`,
/// computed without forming the intermediate `Γ → Γ ⊗ A`.
pub fn glet<S: Scalar>(t: &GradedMorphism<S>, u: &GradedMorphism<S>) -> Result<GradedMorphism<S>> {
    let (ng, na) = (t.dom.size(), t.cod.size());
    if u.dom.size() != ng * na {
        return Err(Error::Dimension(format!(
            "body expects an input of size {}, binding supplies {ng}×{na}",
            u.dom.size()
        )));
    }
    let grade = t.grade.tensor(&u.grade)?;
    let to_t = grade.restriction(&t.grade)?;
    let to_u = grade.restriction(&u.grade)?;
    let nb = u.cod.size();
    let cols = grade.carrier() * ng;
    let mut entries = vec![S::zero(); nb * cols];
    for c in 0..grade.carrier() {
        for x in 0..ng {
            let col = c * ng + x;
            for a in 0..na {
                let p = t.entry(a, to_t[c], x);
                if p.is_zero() {
                    continue;
                }
                for b in 0..nb {
                    let q = u.entry(b, to_u[c], x * na + a);
                    if !q.is_zero() {
                        entries[b * cols + col] = entries[b * cols + col].clone() + p.clone() * q.clone();
                    }
                }
            }
        }
    }
    let matrix = StochMatrix::from_raw(grade.carrier_obj().product(&t.dom), u.cod.clone(), entries);
    Ok(GradedMorphism {
        grade,
        dom: t.dom.clone(),
        cod: u.cod.clone(),
        matrix,
    })
}

/// `[t, u] ∘ (b ⊗ id) ∘ copy : Γ → B` for `b : Γ → 2` and branches at a
/// shared grade, reading `2 ⊗ Γ` as `Γ + Γ`.
pub fn gcase<S: Scalar>(
    b: &GradedMorphism<S>,
    t: &GradedMorphism<S>,
    u: &GradedMorphism<S>,
) -> Result<GradedMorphism<S>> {
    check_same_dom(b, t)?;
    check_same_dom(t, u)?;
    if b.cod.size() != 2 {
        return Err(Error::Dimension(format!("condition has {} outcomes", b.cod.size())));
    }
    if t.grade != u.grade {
        return Err(Error::GradeMismatch(format!("branches at {} and {}", t.grade, u.grade)));
    }
    if t.cod != u.cod {
        return Err(Error::Dimension(format!(
            "branches map into sizes {} and {}",
            t.cod.size(),
            u.cod.size()
        )));
    }
    let grade = b.grade.tensor(&t.grade)?;
    let to_b = grade.restriction(&b.grade)?;
    let to_w = grade.restriction(&t.grade)?;
    let (ng, nb) = (t.dom.size(), t.cod.size());
    let cols = grade.carrier() * ng;
    let mut entries = vec![S::zero(); nb * cols];
    for c in 0..grade.carrier() {
        for x in 0..ng {
            let col = c * ng + x;
            for (bit, branch) in [(0, t), (1, u)] {
                let p = b.entry(bit, to_b[c], x);
                if p.is_zero() {
                    continue;
                }
                for z in 0..nb {
                    let q = branch.entry(z, to_w[c], x);
                    if !q.is_zero() {
                        entries[z * cols + col] = entries[z * cols + col].clone() + p.clone() * q.clone();
                    }
                }
            }
        }
    }
    let matrix = StochMatrix::from_raw(grade.carrier_obj().product(&t.dom), t.cod.clone(), entries);
    Ok(GradedMorphism {
        grade,
        dom: t.dom.clone(),
        cod: t.cod.clone(),
        matrix,
    })
}

/// The fair coin `1 → 2` at the empty grade.
pub fn bernoulli<S: Scalar>() -> GradedMorphism<S> {
    choose(&ProbVector::uniform(2).expect("two outcomes"))
}

/// A fixed distribution `1 → n` at the empty grade.
pub fn choose<S: Scalar>(p: &ProbVector<S>) -> GradedMorphism<S> {
    GradedMorphism::ungraded(StochMatrix::point(p))
}

/// A named Knightian choice: the identity matrix `1 → arity` at `{name: arity}`.
pub fn knight<S: Scalar>(name: &str, arity: usize) -> Result<GradedMorphism<S>> {
    let grade = Grade::single(name, arity)?;
    let n = FinSetObj::new(arity)?;
    GradedMorphism::new(grade, FinSetObj::one(), n.clone(), StochMatrix::identity(&n))
}

/// Deterministic morphism at the empty grade from a function on indices.
pub fn deterministic<S: Scalar>(dom: usize, cod: usize, f: impl Fn(usize) -> usize) -> GradedMorphism<S> {
    GradedMorphism::ungraded(StochMatrix::function(dom, cod, f))
}

/// Output discarded: `bang ∘ f`.
pub fn discard<S: Scalar>(f: &GradedMorphism<S>) -> GradedMorphism<S> {
    gcompose(&GradedMorphism::ungraded(StochMatrix::bang(f.cod())), f).expect("bang composes")
}
