//! Seeded generators of random instances for property suites.
//!
//! All generators draw from a [`ChaCha8Rng`], so a seed determines the whole
//! sequence of instances on every platform.

use rand::seq::SliceRandom;
use rand::Rng;
pub use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

use crate::credal::CredalSet;
use crate::error::Result;
use crate::finstoch::{FinSetObj, ProbVector, StochMatrix};
use crate::imp::{Grade, GradeMap, GradedMorphism, Site};
use crate::scalar::Scalar;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A distribution with small denominators. One draw in four is a Dirac.
pub fn prob_vector<S: Scalar>(rng: &mut impl Rng, dim: usize) -> ProbVector<S> {
    if rng.gen_ratio(1, 4) {
        return ProbVector::dirac(rng.gen_range(0..dim), dim).expect("index in range");
    }
    loop {
        let weights: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..=4)).collect();
        let total: i64 = weights.iter().sum();
        if total > 0 {
            return ProbVector::new(weights.iter().map(|&w| S::from_ratio(w, total)).collect())
                .expect("normalized weights");
        }
    }
}

pub fn stoch_matrix<S: Scalar>(rng: &mut impl Rng, dom: usize, cod: usize) -> StochMatrix<S> {
    let columns: Vec<ProbVector<S>> = (0..dom).map(|_| prob_vector(rng, cod)).collect();
    StochMatrix::from_columns(FinSetObj::new(cod).expect("nonempty codomain"), &columns)
        .expect("columns of equal dimension")
}

/// A grade with carrier at most four: no sites, one site of arity 2, 3 or 4,
/// or two binary sites. Site names are `prefix` followed by a digit.
pub fn grade(rng: &mut impl Rng, prefix: &str) -> Grade {
    let arities: &[usize] = match rng.gen_range(0..5) {
        0 => &[],
        1 => &[2],
        2 => &[3],
        3 => &[4],
        _ => &[2, 2],
    };
    Grade::from_sites(arities.iter().enumerate().map(|(i, &arity)| Site {
        name: format!("{prefix}{i}"),
        arity,
    }))
    .expect("distinct names")
}

pub fn graded_morphism<S: Scalar>(rng: &mut impl Rng, grade: &Grade, dom: usize, cod: usize) -> GradedMorphism<S> {
    let matrix = stoch_matrix(rng, grade.carrier() * dom, cod);
    GradedMorphism::new(
        grade.clone(),
        FinSetObj::new(dom).expect("nonempty domain"),
        FinSetObj::new(cod).expect("nonempty codomain"),
        matrix,
    )
    .expect("shape matches grade")
}

/// A surjective stochastic map `carrier(src) → carrier(dst)`: a random
/// injection of the target points into the source columns supplies the
/// Diracs, and the remaining columns are arbitrary distributions.
pub fn surjective_grade_map<S: Scalar>(rng: &mut impl Rng, src: &Grade, dst: &Grade) -> Result<GradeMap<S>> {
    let (m, n) = (src.carrier(), dst.carrier());
    if m < n {
        return Err(crate::Error::NotSurjective(format!("{src} is smaller than {dst}")));
    }
    let mut slots: Vec<usize> = (0..m).collect();
    slots.shuffle(rng);
    let mut columns: Vec<ProbVector<S>> = (0..m).map(|_| prob_vector(rng, n)).collect();
    for (j, &slot) in slots.iter().take(n).enumerate() {
        columns[slot] = ProbVector::dirac(j, n)?;
    }
    let matrix = StochMatrix::from_columns(dst.carrier_obj(), &columns)?;
    GradeMap::new(src.clone(), dst.clone(), matrix)
}

/// A credal set with between one and four generators.
pub fn credal_set<S: Scalar>(rng: &mut impl Rng, dim: usize) -> CredalSet<S> {
    let count = rng.gen_range(1..=4);
    CredalSet::new((0..count).map(|_| prob_vector(rng, dim)).collect()).expect("nonempty")
}

/// Two matrices with the same image: `f` is random, and `f2` lists the
/// extreme points of its image in shuffled order, padded with convex
/// combinations of them and copies of columns of `f`.
pub fn kan_pair<S: Scalar>(rng: &mut impl Rng) -> (StochMatrix<S>, StochMatrix<S>) {
    let n = rng.gen_range(1..=4);
    let m = rng.gen_range(1..=4);
    let f = stoch_matrix::<S>(rng, m, n);
    let image = CredalSet::new(f.columns().collect()).expect("nonempty");
    let mut columns = image.extremes().to_vec();
    let extra = rng.gen_range(0..=2);
    for _ in 0..extra {
        if rng.gen_bool(0.5) {
            columns.push(f.column(rng.gen_range(0..m)));
        } else {
            let p = columns.choose(rng).expect("nonempty").clone();
            let q = image.extremes().choose(rng).expect("nonempty").clone();
            let r = S::from_ratio(rng.gen_range(0..=4), 4);
            columns.push(ProbVector::convex_comb(&p, &q, &r).expect("weight in range"));
        }
    }
    columns.shuffle(rng);
    let f2 = StochMatrix::from_columns(FinSetObj::new(n).expect("nonempty"), &columns).expect("same dimension");
    (f, f2)
}
