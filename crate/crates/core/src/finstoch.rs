//! Finite sets and column-stochastic matrices.
//!
//! A morphism `m → n` is an `n × m` matrix whose columns are probability
//! vectors. Composition is the matrix product, the monoidal product is the
//! Kronecker product, and the coproduct concatenates columns.
//!
//! Products of finite sets are enumerated mixed-radix, row-major over the
//! ordered factor list: the pair `(i, j)` in `m ⊗ n` sits at index `i·|n| + j`.
//! Indices are zero-based throughout.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// A finite set, possibly with display labels for its elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinSetObj {
    size: usize,
    labels: Option<Vec<String>>,
}

impl FinSetObj {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { size, labels: None })
    }

    pub fn labeled<I, T>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::ZeroDimension);
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Malformed(format!("duplicate label `{l}`")));
            }
        }
        Ok(Self {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    /// The terminal object `1`.
    pub fn one() -> Self {
        Self { size: 1, labels: None }
    }

    pub(crate) fn unchecked(size: usize) -> Self {
        debug_assert!(size > 0);
        Self { size, labels: None }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// `self ⊗ other`, labels paired when both sides carry them.
    pub fn product(&self, other: &FinSetObj) -> FinSetObj {
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => Some(
                a.iter()
                    .flat_map(|x| b.iter().map(move |y| format!("({x},{y})")))
                    .collect(),
            ),
            _ => None,
        };
        FinSetObj {
            size: self.size * other.size,
            labels,
        }
    }

    /// `self + other` (disjoint union).
    pub fn sum(&self, other: &FinSetObj) -> FinSetObj {
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => Some(
                a.iter()
                    .map(|x| format!("inl {x}"))
                    .chain(b.iter().map(|y| format!("inr {y}")))
                    .collect(),
            ),
            _ => None,
        };
        FinSetObj {
            size: self.size + other.size,
            labels,
        }
    }
}

/// A probability vector: non-negative entries summing to exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProbVector<S: Scalar> {
    entries: Vec<S>,
}

impl<S: Scalar> ProbVector<S> {
    pub fn new(entries: Vec<S>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(bad) = entries.iter().find(|e| e.is_negative()) {
            return Err(Error::NotProbability(format!("negative entry {bad}")));
        }
        let total = scalar::sum(&entries);
        if !total.is_one() {
            return Err(Error::NotProbability(format!("entries sum to {total}")));
        }
        Ok(Self { entries })
    }

    pub(crate) fn unchecked(entries: Vec<S>) -> Self {
        debug_assert!(Self::new(entries.clone()).is_ok());
        Self { entries }
    }

    /// The Dirac vector at `index` in `D(dim)`.
    pub fn dirac(index: usize, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, size: dim });
        }
        let mut entries = vec![S::zero(); dim];
        entries[index] = S::one();
        Ok(Self { entries })
    }

    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        let w = S::one() / S::from_usize(dim);
        Ok(Self {
            entries: vec![w; dim],
        })
    }

    /// `p +_r q`, i.e. `r·p + (1−r)·q`.
    pub fn convex_comb(p: &Self, q: &Self, r: &S) -> Result<Self> {
        if p.dim() != q.dim() {
            return Err(Error::Dimension(format!(
                "mixing D({}) with D({})",
                p.dim(),
                q.dim()
            )));
        }
        check_weight(r)?;
        let s = S::one() - r.clone();
        let entries = p
            .entries
            .iter()
            .zip(&q.entries)
            .map(|(a, b)| r.clone() * a.clone() + s.clone() * b.clone())
            .collect();
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }

    pub fn get(&self, index: usize) -> &S {
        &self.entries[index]
    }

    /// The index of the point mass, if this vector is a Dirac.
    pub fn dirac_index(&self) -> Option<usize> {
        self.entries.iter().position(|e| e.is_one())
    }

    /// Pushes the distribution forward along a function `dim → target`.
    pub fn push_forward(&self, map: &[usize], target: usize) -> Result<Self> {
        if map.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "function on {} points applied to D({})",
                map.len(),
                self.dim()
            )));
        }
        let mut out = vec![S::zero(); target];
        for (p, &j) in self.entries.iter().zip(map) {
            if j >= target {
                return Err(Error::IndexOutOfRange { index: j, size: target });
            }
            out[j] = out[j].clone() + p.clone();
        }
        Ok(Self { entries: out })
    }
}

impl<S: Scalar> fmt::Display for ProbVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn check_weight<S: Scalar>(r: &S) -> Result<()> {
    if r.is_negative() || *r > S::one() {
        return Err(Error::NotProbability(format!("weight {r} outside [0,1]")));
    }
    Ok(())
}

/// A column-stochastic matrix `dom → cod`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StochMatrix<S: Scalar> {
    dom: FinSetObj,
    cod: FinSetObj,
    entries: Vec<S>,
}

impl<S: Scalar> StochMatrix<S> {
    /// Builds a matrix from `cod.size()` rows of `dom.size()` entries each.
    pub fn new(dom: FinSetObj, cod: FinSetObj, rows: Vec<Vec<S>>) -> Result<Self> {
        if rows.len() != cod.size() {
            return Err(Error::Dimension(format!(
                "{} rows for a codomain of size {}",
                rows.len(),
                cod.size()
            )));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != dom.size()) {
            return Err(Error::Dimension(format!(
                "row of length {} for a domain of size {}",
                r.len(),
                dom.size()
            )));
        }
        let entries: Vec<S> = rows.into_iter().flatten().collect();
        let m = Self { dom, cod, entries };
        for c in 0..m.dom.size() {
            ProbVector::new(m.column_entries(c))
                .map_err(|e| Error::NotProbability(format!("column {c}: {e}")))?;
        }
        Ok(m)
    }

    /// Infers unlabeled domain and codomain from the row list.
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let cod = FinSetObj::new(rows.len())?;
        let dom = FinSetObj::new(rows.first().map_or(0, Vec::len))?;
        Self::new(dom, cod, rows)
    }

    pub fn from_columns(cod: FinSetObj, columns: &[ProbVector<S>]) -> Result<Self> {
        let dom = FinSetObj::new(columns.len())?;
        if let Some(c) = columns.iter().find(|c| c.dim() != cod.size()) {
            return Err(Error::Dimension(format!(
                "column in D({}) for a codomain of size {}",
                c.dim(),
                cod.size()
            )));
        }
        let m = dom.size();
        let mut entries = vec![S::zero(); cod.size() * m];
        for (j, col) in columns.iter().enumerate() {
            for (i, e) in col.entries().iter().enumerate() {
                entries[i * m + j] = e.clone();
            }
        }
        Ok(Self { dom, cod, entries })
    }

    /// The deterministic matrix of a function `dom → cod`.
    pub fn from_function(dom: FinSetObj, cod: FinSetObj, f: impl Fn(usize) -> usize) -> Result<Self> {
        let m = dom.size();
        let mut entries = vec![S::zero(); cod.size() * m];
        for j in 0..m {
            let i = f(j);
            if i >= cod.size() {
                return Err(Error::IndexOutOfRange { index: i, size: cod.size() });
            }
            entries[i * m + j] = S::one();
        }
        Ok(Self { dom, cod, entries })
    }

    pub(crate) fn from_raw(dom: FinSetObj, cod: FinSetObj, entries: Vec<S>) -> Self {
        debug_assert_eq!(entries.len(), dom.size() * cod.size());
        Self { dom, cod, entries }
    }

    pub(crate) fn function(dom: usize, cod: usize, f: impl Fn(usize) -> usize) -> Self {
        Self::from_function(FinSetObj::unchecked(dom), FinSetObj::unchecked(cod), f)
            .expect("function stays in range")
    }

    pub fn identity(n: &FinSetObj) -> Self {
        Self::from_function(n.clone(), n.clone(), |i| i).expect("identity in range")
    }

    /// The unique map to the terminal object.
    pub fn bang(n: &FinSetObj) -> Self {
        Self::from_function(n.clone(), FinSetObj::one(), |_| 0).expect("bang in range")
    }

    /// A single-column matrix `1 → dim`.
    pub fn point(p: &ProbVector<S>) -> Self {
        Self::from_columns(FinSetObj::unchecked(p.dim()), std::slice::from_ref(p))
            .expect("single column")
    }

    /// The symmetry `m ⊗ n → n ⊗ m`.
    pub fn swap(m: &FinSetObj, n: &FinSetObj) -> Self {
        let (a, b) = (m.size(), n.size());
        Self::from_function(m.product(n), n.product(m), |k| (k % b) * a + k / b)
            .expect("swap in range")
    }

    pub fn dom(&self) -> &FinSetObj {
        &self.dom
    }

    pub fn cod(&self) -> &FinSetObj {
        &self.cod
    }

    pub fn rows(&self) -> usize {
        self.cod.size()
    }

    pub fn cols(&self) -> usize {
        self.dom.size()
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.cols() + col]
    }

    pub fn column_entries(&self, col: usize) -> Vec<S> {
        (0..self.rows()).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn column(&self, col: usize) -> ProbVector<S> {
        ProbVector::unchecked(self.column_entries(col))
    }

    pub fn columns(&self) -> impl Iterator<Item = ProbVector<S>> + '_ {
        (0..self.cols()).map(move |c| self.column(c))
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        self.entries.chunks(self.cols()).map(<[S]>::to_vec).collect()
    }

    /// Same entries, relabelled domain/codomain of equal sizes.
    pub fn with_objects(&self, dom: FinSetObj, cod: FinSetObj) -> Result<Self> {
        if dom.size() != self.cols() || cod.size() != self.rows() {
            return Err(Error::Dimension("relabelling must preserve sizes".into()));
        }
        Ok(Self {
            dom,
            cod,
            entries: self.entries.clone(),
        })
    }

    pub fn is_deterministic(&self) -> bool {
        (0..self.cols()).all(|c| (0..self.rows()).any(|r| self.get(r, c).is_one()))
    }

    /// Every codomain point is hit by some Dirac column.
    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.rows()];
        for c in 0..self.cols() {
            if let Some(r) = (0..self.rows()).find(|&r| self.get(r, c).is_one()) {
                hit[r] = true;
            }
        }
        hit.into_iter().all(|h| h)
    }

    /// Pointwise `self +_r other`.
    pub fn mix(&self, other: &Self, r: &S) -> Result<Self> {
        if self.dom.size() != other.dom.size() || self.cod.size() != other.cod.size() {
            return Err(Error::Dimension("mixing matrices of different shapes".into()));
        }
        check_weight(r)?;
        let s = S::one() - r.clone();
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| r.clone() * a.clone() + s.clone() * b.clone())
            .collect();
        Ok(Self {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            entries,
        })
    }
}

/// `g ∘ f`, the matrix product `g · f`.
pub fn compose<S: Scalar>(g: &StochMatrix<S>, f: &StochMatrix<S>) -> Result<StochMatrix<S>> {
    if f.cod != g.dom {
        return Err(Error::Dimension(format!(
            "cannot compose: inner codomain has size {}, outer domain has size {}",
            f.cod.size(),
            g.dom.size()
        )));
    }
    let (n, k, m) = (g.rows(), g.cols(), f.cols());
    let mut entries = vec![S::zero(); n * m];
    for i in 0..n {
        for l in 0..k {
            let a = g.get(i, l);
            if a.is_zero() {
                continue;
            }
            for j in 0..m {
                let b = f.get(l, j);
                if !b.is_zero() {
                    entries[i * m + j] = entries[i * m + j].clone() + a.clone() * b.clone();
                }
            }
        }
    }
    Ok(StochMatrix::from_raw(f.dom.clone(), g.cod.clone(), entries))
}

/// The Kronecker product `f ⊗ g`.
pub fn kron<S: Scalar>(f: &StochMatrix<S>, g: &StochMatrix<S>) -> StochMatrix<S> {
    let dom = f.dom.product(&g.dom);
    let cod = f.cod.product(&g.cod);
    let (gr, gc) = (g.rows(), g.cols());
    let cols = dom.size();
    let mut entries = vec![S::zero(); cod.size() * cols];
    for i1 in 0..f.rows() {
        for j1 in 0..f.cols() {
            let a = f.get(i1, j1);
            if a.is_zero() {
                continue;
            }
            for i2 in 0..gr {
                for j2 in 0..gc {
                    let b = g.get(i2, j2);
                    if !b.is_zero() {
                        entries[(i1 * gr + i2) * cols + j1 * gc + j2] = a.clone() * b.clone();
                    }
                }
            }
        }
    }
    StochMatrix::from_raw(dom, cod, entries)
}

/// Copairing `[f, g] : m + n → k`: the columns of `f` followed by those of `g`.
pub fn coproduct<S: Scalar>(f: &StochMatrix<S>, g: &StochMatrix<S>) -> Result<StochMatrix<S>> {
    if f.cod != g.cod {
        return Err(Error::Dimension(format!(
            "copairing maps into sizes {} and {}",
            f.cod.size(),
            g.cod.size()
        )));
    }
    let dom = f.dom.sum(&g.dom);
    let cols = dom.size();
    let mut entries = Vec::with_capacity(f.rows() * cols);
    for r in 0..f.rows() {
        entries.extend((0..f.cols()).map(|c| f.get(r, c).clone()));
        entries.extend((0..g.cols()).map(|c| g.get(r, c).clone()));
    }
    Ok(StochMatrix::from_raw(dom, f.cod.clone(), entries))
}

/// The diagonal `n → n ⊗ n`.
pub fn copy<S: Scalar>(n: &FinSetObj) -> StochMatrix<S> {
    let k = n.size();
    StochMatrix::from_function(n.clone(), n.product(n), |i| i * k + i).expect("diagonal in range")
}

/// The injections `m → m + n` and `n → m + n`.
pub fn injections<S: Scalar>(m: &FinSetObj, n: &FinSetObj) -> (StochMatrix<S>, StochMatrix<S>) {
    let total = m.sum(n);
    let a = m.size();
    (
        StochMatrix::from_function(m.clone(), total.clone(), |i| i).expect("left injection"),
        StochMatrix::from_function(n.clone(), total, |i| a + i).expect("right injection"),
    )
}

/// Marginal projections `m ⊗ n → m` and `m ⊗ n → n`.
pub fn projections<S: Scalar>(m: &FinSetObj, n: &FinSetObj) -> (StochMatrix<S>, StochMatrix<S>) {
    let b = n.size();
    let prod = m.product(n);
    (
        StochMatrix::from_function(prod.clone(), m.clone(), |k| k / b).expect("first projection"),
        StochMatrix::from_function(prod, n.clone(), |k| k % b).expect("second projection"),
    )
}

pub fn is_surjective<S: Scalar>(f: &StochMatrix<S>) -> bool {
    f.is_surjective()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn fs(n: usize) -> FinSetObj {
        FinSetObj::new(n).unwrap()
    }

    fn mat(rows: &[&[(i64, i64)]]) -> StochMatrix<Q> {
        StochMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| q(n, d)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn bern() -> StochMatrix<Q> {
        mat(&[&[(1, 2)], &[(1, 2)]])
    }

    #[test]
    fn identity_is_unit_for_compose() {
        let f = bern();
        assert_eq!(compose(&StochMatrix::identity(&fs(2)), &f).unwrap(), f);
    }

    #[test]
    fn bang_after_anything_is_the_terminal_map() {
        let h = compose(&StochMatrix::bang(&fs(2)), &bern()).unwrap();
        assert_eq!(h.row_vecs(), vec![vec![q(1, 1)]]);
    }

    #[test]
    fn conditional_after_fair_coin() {
        let g = mat(&[&[(1, 1), (0, 1)], &[(0, 1), (1, 1)], &[(0, 1), (0, 1)]]);
        let h = compose(&g, &bern()).unwrap();
        assert_eq!(h.column(0).entries(), &[q(1, 2), q(1, 2), q(0, 1)]);
    }

    #[test]
    fn compose_shape_mismatch() {
        assert!(matches!(compose(&bern(), &bern()), Err(Error::Dimension(_))));
    }

    #[test]
    fn kron_examples() {
        let id2 = StochMatrix::<Q>::identity(&fs(2));
        assert_eq!(kron(&id2, &id2), StochMatrix::identity(&fs(4)));
        let d1 = StochMatrix::point(&ProbVector::<Q>::dirac(0, 2).unwrap());
        let d2 = StochMatrix::point(&ProbVector::<Q>::dirac(1, 2).unwrap());
        assert_eq!(kron(&d1, &d2).column(0), ProbVector::dirac(1, 4).unwrap());
        assert_eq!(kron(&bern(), &bern()).column(0), ProbVector::uniform(4).unwrap());
    }

    #[test]
    fn coproduct_of_diracs_is_identity() {
        let d1 = StochMatrix::point(&ProbVector::<Q>::dirac(0, 2).unwrap());
        let d2 = StochMatrix::point(&ProbVector::<Q>::dirac(1, 2).unwrap());
        assert_eq!(coproduct(&d1, &d2).unwrap(), StochMatrix::identity(&fs(2)));
    }

    #[test]
    fn coproduct_restricts_back_along_injections() {
        let f = mat(&[&[(1, 3), (1, 1)], &[(2, 3), (0, 1)]]);
        let cp = coproduct(&f, &f).unwrap();
        let (i1, i2) = injections::<Q>(&fs(2), &fs(2));
        assert_eq!(compose(&cp, &i1).unwrap(), f);
        assert_eq!(compose(&cp, &i2).unwrap(), f);
        let three = StochMatrix::point(&ProbVector::<Q>::uniform(3).unwrap());
        assert!(matches!(coproduct(&f, &three), Err(Error::Dimension(_))));
    }

    #[test]
    fn copy_and_its_counit() {
        assert_eq!(copy::<Q>(&fs(1)), StochMatrix::identity(&fs(1)));
        assert_eq!(copy::<Q>(&fs(2)).column(0), ProbVector::dirac(0, 4).unwrap());
        for n in 1..4 {
            let (p1, p2) = projections::<Q>(&fs(n), &fs(n));
            let c = copy::<Q>(&fs(n));
            assert_eq!(compose(&p1, &c).unwrap(), StochMatrix::identity(&fs(n)));
            assert_eq!(compose(&p2, &c).unwrap(), StochMatrix::identity(&fs(n)));
        }
    }

    #[test]
    fn surjectivity_examples() {
        assert!(StochMatrix::<Q>::identity(&fs(3)).is_surjective());
        assert!(bern().with_objects(fs(1), fs(2)).is_ok());
        assert!(!mat(&[&[(1, 3), (1, 1)], &[(2, 3), (0, 1)]]).is_surjective());
        assert!(StochMatrix::<Q>::bang(&fs(3)).is_surjective());
        let both_first = mat(&[&[(1, 1), (1, 1)], &[(0, 1), (0, 1)]]);
        assert!(!both_first.is_surjective());
    }

    #[test]
    fn prob_vector_helpers() {
        assert_eq!(ProbVector::<Q>::dirac(0, 3).unwrap().entries(), &[q(1, 1), q(0, 1), q(0, 1)]);
        assert!(matches!(ProbVector::<Q>::dirac(3, 3), Err(Error::IndexOutOfRange { .. })));
        let p = ProbVector::new(vec![q(1, 3), q(2, 3)]).unwrap();
        assert_eq!(ProbVector::convex_comb(&p, &p, &q(1, 5)).unwrap(), p);
        let d1 = ProbVector::<Q>::dirac(0, 2).unwrap();
        let d2 = ProbVector::<Q>::dirac(1, 2).unwrap();
        assert_eq!(
            ProbVector::convex_comb(&d1, &d2, &q(1, 2)).unwrap(),
            ProbVector::uniform(2).unwrap()
        );
        assert!(ProbVector::convex_comb(&d1, &d2, &q(3, 2)).is_err());
        assert!(ProbVector::new(vec![q(1, 2), q(1, 3)]).is_err());
        assert!(ProbVector::<Q>::new(vec![]).is_err());
    }

    #[test]
    fn labels_carry_but_must_be_distinct() {
        let rgb = FinSetObj::labeled(["r", "g", "b"]).unwrap();
        assert_eq!(rgb.size(), 3);
        assert!(FinSetObj::labeled(["r", "r"]).is_err());
        assert!(FinSetObj::new(0).is_err());
    }

    #[test]
    fn swap_is_an_involution() {
        let s = StochMatrix::<Q>::swap(&fs(2), &fs(3));
        let back = StochMatrix::<Q>::swap(&fs(3), &fs(2));
        assert_eq!(compose(&back, &s).unwrap(), StochMatrix::identity(&fs(6)));
    }
}
