//! From graded stochastic matrices to convex sets of distributions.
//!
//! [`phi`] forgets the grade of a closed morphism by taking the convex hull of
//! its columns. [`r_functor`] does the same pointwise in the input and is
//! op-lax: composing first and then taking images never gives a larger set
//! than composing the images in the Kleisli category.

use crate::credal::{kl_compose, CredalSet, KlMorphism};
use crate::error::{Error, Result};
use crate::finstoch::{self, FinSetObj, ProbVector, StochMatrix};
use crate::imp::{self, gcompose, Grade, GradedMorphism, Site};
use crate::rational_lp;
use crate::scalar::Scalar;

/// The image of a closed graded morphism `1 → n`.
pub fn phi<S: Scalar>(f: &GradedMorphism<S>) -> Result<CredalSet<S>> {
    if f.dom().size() != 1 {
        return Err(Error::Dimension(format!(
            "image map needs a closed morphism, got domain of size {}",
            f.dom().size()
        )));
    }
    image_at(f, 0)
}

fn image_at<S: Scalar>(f: &GradedMorphism<S>, input: usize) -> Result<CredalSet<S>> {
    CredalSet::new((0..f.grade().carrier()).map(|c| f.column(c, input)).collect())
}

/// `R(f)(i) = image(f(−, i))`.
pub fn r_functor<S: Scalar>(f: &GradedMorphism<S>) -> Result<KlMorphism<S>> {
    let images = (0..f.dom().size())
        .map(|i| image_at(f, i))
        .collect::<Result<Vec<_>>>()?;
    KlMorphism::new(f.dom().clone(), f.cod().clone(), images)
}

/// Both sides of the op-lax inequality `R(g∘f) ⊆ R(g)∘R(f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OplaxReport<S: Scalar> {
    pub lhs: KlMorphism<S>,
    pub rhs: KlMorphism<S>,
    pub pointwise_subset: Vec<bool>,
    pub strict: bool,
}

/// Computes `R(g∘f)` and `R(g)∘R(f)` and checks inclusion at every input.
/// A failed inclusion is reported as [`Error::InvariantViolation`].
pub fn check_oplax<S: Scalar>(g: &GradedMorphism<S>, f: &GradedMorphism<S>) -> Result<OplaxReport<S>> {
    let lhs = r_functor(&gcompose(g, f)?)?;
    let rhs = kl_compose(&r_functor(g)?, &r_functor(f)?)?;
    let mut pointwise_subset = Vec::with_capacity(lhs.images().len());
    let mut strict = false;
    for (i, (a, b)) in lhs.images().iter().zip(rhs.images()).enumerate() {
        let sub = a.subset(b)?;
        if !sub {
            return Err(Error::InvariantViolation(format!(
                "R(g∘f)({i}) = {a} is not contained in (R(g)∘R(f))({i}) = {b}"
            )));
        }
        pointwise_subset.push(sub);
        strict |= a != b;
    }
    Ok(OplaxReport {
        lhs,
        rhs,
        pointwise_subset,
        strict,
    })
}

/// Name of the `copy`-th copy of a site in `ε^m`. `#` never occurs in source
/// identifiers, so these cannot collide with user names.
fn copy_name(name: &str, copy: usize) -> String {
    format!("{name}#{copy}")
}

/// The composite `g ∗ f` at grade `γ ⊗ ε^m`, where every intermediate value
/// `y ∈ m` gets its own independent copy of `g`'s choices.
pub fn star_compose<S: Scalar>(g: &GradedMorphism<S>, f: &GradedMorphism<S>) -> Result<GradedMorphism<S>> {
    if f.dom().size() != 1 {
        return Err(Error::Dimension("star composite needs a closed inner morphism".into()));
    }
    if f.cod() != g.dom() {
        return Err(Error::Dimension(format!(
            "cannot compose {}→{} after 1→{}",
            g.dom().size(),
            g.cod().size(),
            f.cod().size()
        )));
    }
    let m = f.cod().size();
    let copies: Vec<Grade> = (0..m)
        .map(|y| {
            Grade::from_sites(
                g.grade()
                    .sites()
                    .iter()
                    .map(|s| Site {
                        name: copy_name(&s.name, y),
                        arity: s.arity,
                    }),
            )
        })
        .collect::<Result<_>>()?;
    let mut grade = f.grade().clone();
    for c in &copies {
        grade = grade.tensor(c)?;
    }
    let to_f = grade.restriction(f.grade())?;
    // Renaming preserves the relative order of sites, so a copy's carrier index
    // is directly a carrier index of g's grade.
    let to_copy: Vec<Vec<usize>> = copies.iter().map(|c| grade.restriction(c)).collect::<Result<_>>()?;
    let n = g.cod().size();
    let columns: Vec<ProbVector<S>> = (0..grade.carrier())
        .map(|c| {
            let mut out = vec![S::zero(); n];
            for (y, copy) in to_copy.iter().enumerate() {
                let w = f.entry(y, to_f[c], 0);
                if w.is_zero() {
                    continue;
                }
                for (z, o) in out.iter_mut().enumerate() {
                    *o = o.clone() + w.clone() * g.entry(z, copy[c], y).clone();
                }
            }
            ProbVector::new(out)
        })
        .collect::<Result<_>>()?;
    let matrix = StochMatrix::from_columns(g.cod().clone(), &columns)?;
    GradedMorphism::new(grade, FinSetObj::one(), g.cod().clone(), matrix)
}

/// Witness that two matrices with the same image are identified in the
/// colimit over surjective regradings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KanWitness<S: Scalar> {
    pub mpp: FinSetObj,
    pub g: StochMatrix<S>,
    pub gp: StochMatrix<S>,
    pub h: StochMatrix<S>,
}

/// Factors `f : m → n` and `f2 : m' → n` through the extreme points of their
/// common image: `h ∘ g = f`, `h ∘ gp = f2`, with `g`, `gp` surjective.
pub fn kan_witness<S: Scalar>(f: &StochMatrix<S>, f2: &StochMatrix<S>) -> Result<KanWitness<S>> {
    if f.rows() != f2.rows() {
        return Err(Error::Dimension(format!(
            "images live in D({}) and D({})",
            f.rows(),
            f2.rows()
        )));
    }
    let image = CredalSet::new(f.columns().collect())?;
    let image2 = CredalSet::new(f2.columns().collect())?;
    if image != image2 {
        return Err(Error::ImagesDiffer);
    }
    let extremes = image.extremes().to_vec();
    let mpp = FinSetObj::new(extremes.len())?;
    let h = StochMatrix::from_columns(f.cod().clone(), &extremes)?.with_objects(mpp.clone(), f.cod().clone())?;
    let g = coefficients(f, &extremes, &mpp)?;
    let gp = coefficients(f2, &extremes, &mpp)?;
    for (name, map, target) in [("g", &g, f), ("g'", &gp, f2)] {
        if !map.is_surjective() {
            return Err(Error::InvariantViolation(format!("{name} is not surjective")));
        }
        if finstoch::compose(&h, map)? != *target {
            return Err(Error::InvariantViolation(format!("h ∘ {name} does not reproduce its target")));
        }
    }
    Ok(KanWitness { mpp, g, gp, h })
}

fn coefficients<S: Scalar>(
    f: &StochMatrix<S>,
    extremes: &[ProbVector<S>],
    mpp: &FinSetObj,
) -> Result<StochMatrix<S>> {
    let raw: Vec<Vec<S>> = extremes.iter().map(|e| e.entries().to_vec()).collect();
    let columns = f
        .columns()
        .enumerate()
        .map(|(i, col)| {
            let lambda = rational_lp::convex_coefficients(col.entries(), &raw)?.ok_or_else(|| {
                Error::InvariantViolation(format!("column {i} lies outside the hull of the extremes"))
            })?;
            ProbVector::new(lambda)
        })
        .collect::<Result<Vec<_>>>()?;
    StochMatrix::from_columns(mpp.clone(), &columns)?.with_objects(f.dom().clone(), mpp.clone())
}

/// Marks every column of `f(−, x)` with its own Dirac coordinate, mixes at one
/// half, takes the image, and reads `f` back off the marked extreme points.
/// Returns whether the recovered morphism equals `f`.
pub fn encode_recover_roundtrip<S: Scalar>(f: &GradedMorphism<S>) -> Result<bool> {
    let k = f.grade().carrier();
    let n = f.cod().size();
    let m = f.dom().size();
    let outcomes = FinSetObj::unchecked(n);
    let markers = FinSetObj::unchecked(k);
    let (j, iota) = finstoch::injections::<S>(&outcomes, &markers);
    let j = GradedMorphism::ungraded(j);
    let iota = GradedMorphism::ungraded(iota);
    // The tuple of Diracs: identity on the carrier, read as a morphism 1 → k at the grade.
    let d = GradedMorphism::new(
        f.grade().clone(),
        FinSetObj::one(),
        markers.clone(),
        StochMatrix::identity(&markers),
    )?;
    let marked = gcompose(&iota, &d)?;
    let two = S::one() + S::one();
    let mut recovered = vec![S::zero(); n * k * m];
    for x in 0..m {
        let point = imp::deterministic::<S>(1, m, |_| x);
        let fx = gcompose(f, &point)?;
        let encoded = gcompose(&j, &fx)?.mix(&marked, &S::half())?;
        let hull = phi(&encoded)?;
        if hull.extremes().len() != k {
            return Ok(false);
        }
        for e in hull.extremes() {
            let Some(c) = (0..k).find(|&c| *e.get(n + c) == S::half()) else {
                return Ok(false);
            };
            for z in 0..n {
                recovered[z * k * m + c * m + x] = two.clone() * e.get(z).clone();
            }
        }
    }
    Ok(recovered == f.matrix().row_vecs().concat())
}
