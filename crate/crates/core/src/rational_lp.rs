//! Exact linear feasibility over an ordered field.
//!
//! The solver is a phase-one simplex on a dense tableau with Bland's
//! anti-cycling rule. Problem sizes here are tiny (a few dozen generators in
//! dimension at most ten or so), so no attempt is made at sparsity.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive};

use crate::scalar::{BigRational, Scalar};

/// `A·λ = b`, `λ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityProblem<S: Scalar> {
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
    vars: usize,
}

impl<S: Scalar> FeasibilityProblem<S> {
    pub fn new(rows: Vec<Vec<S>>, rhs: Vec<S>) -> Result<Self> {
        if rows.len() != rhs.len() {
            return Err(Error::Dimension(format!(
                "{} constraint rows but {} right-hand sides",
                rows.len(),
                rhs.len()
            )));
        }
        let vars = rows.first().map_or(0, Vec::len);
        if vars == 0 {
            return Err(Error::ZeroDimension);
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != vars) {
            return Err(Error::Dimension(format!(
                "row {bad} has {} coefficients, expected {vars}",
                rows[bad].len()
            )));
        }
        Ok(Self { rows, rhs, vars })
    }

    pub fn num_vars(&self) -> usize {
        self.vars
    }

    pub fn num_constraints(&self) -> usize {
        self.rows.len()
    }

    /// Checks `λ` against every constraint exactly.
    pub fn is_solution(&self, lambda: &[S]) -> bool {
        lambda.len() == self.vars
            && lambda.iter().all(Scalar::is_nonnegative)
            && self
                .rows
                .iter()
                .zip(&self.rhs)
                .all(|(row, b)| crate::scalar::dot(row, lambda) == *b)
    }
}

/// Returns some `λ ≥ 0` with `A·λ = b` exactly, or `None` when infeasible.
///
/// Each row is scaled to integers and the tableau is pivoted fraction-free,
/// first in checked `i128` arithmetic and, if that overflows, over `BigInt`.
/// Both runs are exact, so they agree whenever the narrow one completes.
///
/// Panics if `S` is fixed-width and a coordinate of the solution found does
/// not fit it.
pub fn solve_feasible<S: Scalar>(problem: &FeasibilityProblem<S>) -> Option<Vec<S>> {
    let rows: Vec<Vec<BigInt>> = problem
        .rows
        .iter()
        .zip(&problem.rhs)
        .map(|(row, b)| integral_row(row, b))
        .collect();
    let narrow: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| r.iter().map(ToPrimitive::to_i128).collect())
        .collect();
    let outcome = match narrow.and_then(|r| integer_phase_one(&r)) {
        Some(outcome) => outcome.map(|(lambda, denom)| {
            (
                lambda.into_iter().map(BigInt::from).collect::<Vec<_>>(),
                BigInt::from(denom),
            )
        }),
        None => integer_phase_one(&rows).expect("arbitrary-width arithmetic does not overflow"),
    };
    let (numers, denom) = outcome?;
    let lambda = numers
        .into_iter()
        .map(|numer| S::from_big(&BigRational::new(numer, denom.clone())))
        .collect::<Option<Vec<S>>>()
        .expect("solution representable in the scalar type");
    debug_assert!(problem.is_solution(&lambda));
    Some(lambda)
}

/// `[a | b]` multiplied through by the least common denominator, with the
/// sign flipped so the right-hand side is nonnegative.
fn integral_row<S: Scalar>(row: &[S], b: &S) -> Vec<BigInt> {
    let values: Vec<BigRational> = row.iter().chain([b]).map(Scalar::to_big).collect();
    let scale = values.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let sign = if b.is_negative() { -BigInt::one() } else { BigInt::one() };
    values
        .iter()
        .map(|q| &sign * q.numer() * (&scale / q.denom()))
        .collect()
}

/// Integer arithmetic for the tableau; `None` reports an overflow.
trait Integer: Clone + Ord {
    fn from_small(v: i64) -> Self;
    fn mul(&self, rhs: &Self) -> Option<Self>;
    fn sub(&self, rhs: &Self) -> Option<Self>;
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

impl Integer for i128 {
    fn from_small(v: i64) -> Self {
        v.into()
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        self.checked_mul(*rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        self.checked_sub(*rhs)
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(*rhs)
    }
}

impl Integer for BigInt {
    fn from_small(v: i64) -> Self {
        v.into()
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        Some(self / rhs)
    }
}

/// Phase-one simplex with Bland's rule on `[A | b]` with integer entries and
/// `b ≥ 0`. Tableau entries are numerators over a common positive
/// denominator, the last pivot, and Bareiss' identity keeps every division
/// exact. Returns the numerators of `λ` and their denominator, `None` inside
/// when infeasible, and `None` outside on overflow.
#[allow(clippy::type_complexity)]
fn integer_phase_one<I: Integer>(rows: &[Vec<I>]) -> Option<Option<(Vec<I>, I)>> {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len() - 1);
    let width = n + m + 1;
    let rhs_col = n + m;
    let (zero, one) = (I::from_small(0), I::from_small(1));

    let mut tableau: Vec<Vec<I>> = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let mut t = vec![zero.clone(); width];
        t[..n].clone_from_slice(&row[..n]);
        t[n + i] = one.clone();
        t[rhs_col] = row[n].clone();
        tableau.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut denom = one.clone();

    // Reduced costs for minimising the sum of artificials.
    let mut cost = vec![zero.clone(); width];
    for t in &tableau {
        for j in (0..n).chain([rhs_col]) {
            cost[j] = cost[j].sub(&t[j])?;
        }
    }

    while let Some(enter) = (0..n + m).find(|&j| cost[j] < zero) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if tableau[i][enter] <= zero {
                continue;
            }
            let better = match leave {
                None => true,
                Some(l) => {
                    // Compare the ratios rhs / entry by cross-multiplying.
                    let mine = tableau[i][rhs_col].mul(&tableau[l][enter])?;
                    let theirs = tableau[l][rhs_col].mul(&tableau[i][enter])?;
                    mine < theirs || (mine == theirs && basis[i] < basis[l])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        // Phase one is bounded below by zero, so an improving column always
        // has a positive entry.
        let Some(row) = leave else { break };
        let p = tableau[row][enter].clone();
        let pivot_row = tableau[row].clone();
        let update = |t: &mut [I]| -> Option<()> {
            let factor = t[enter].clone();
            for (v, pv) in t.iter_mut().zip(&pivot_row) {
                let scaled = if factor == zero || *pv == zero {
                    v.mul(&p)?
                } else {
                    v.mul(&p)?.sub(&factor.mul(pv)?)?
                };
                *v = scaled.div_exact(&denom)?;
            }
            Some(())
        };
        for (i, t) in tableau.iter_mut().enumerate() {
            if i != row {
                update(t)?;
            }
        }
        update(&mut cost)?;
        denom = p;
        basis[row] = enter;
    }

    // cost[rhs_col] holds minus the phase-one objective.
    if cost[rhs_col] != zero {
        return Some(None);
    }
    let mut lambda = vec![zero; n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            lambda[b] = tableau[i][rhs_col].clone();
        }
    }
    Some(Some((lambda, denom)))
}

/// Convex coefficients expressing `point` over `generators`, if any exist.
pub fn convex_coefficients<S: Scalar>(point: &[S], generators: &[Vec<S>]) -> Result<Option<Vec<S>>> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let dim = point.len();
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if let Some(g) = generators.iter().find(|g| g.len() != dim) {
        return Err(Error::Dimension(format!(
            "generator of length {} against point of length {dim}",
            g.len()
        )));
    }
    // With nonnegative data a generator that is positive where the point is
    // zero must get weight zero, so it can be dropped before solving.
    let nonnegative = point.iter().chain(generators.iter().flatten()).all(Scalar::is_nonnegative);
    let usable: Vec<usize> = (0..generators.len())
        .filter(|&j| {
            !nonnegative
                || generators[j]
                    .iter()
                    .zip(point)
                    .all(|(g, p)| g.is_zero() || !p.is_zero())
        })
        .collect();
    if usable.is_empty() {
        return Ok(None);
    }
    let mut rows: Vec<Vec<S>> = (0..dim)
        .map(|d| usable.iter().map(|&j| generators[j][d].clone()).collect())
        .collect();
    rows.push(vec![S::one(); usable.len()]);
    let mut rhs = point.to_vec();
    rhs.push(S::one());
    let problem = FeasibilityProblem::new(rows, rhs)?;
    Ok(solve_feasible(&problem).map(|weights| {
        let mut lambda = vec![S::zero(); generators.len()];
        for (&j, w) in usable.iter().zip(weights) {
            lambda[j] = w;
        }
        lambda
    }))
}

/// True iff `point` is a convex combination of `generators`.
pub fn in_convex_hull<S: Scalar>(point: &[S], generators: &[Vec<S>]) -> Result<bool> {
    if generators.iter().any(|g| g.as_slice() == point) {
        return Ok(!point.is_empty());
    }
    Ok(convex_coefficients(point, generators)?.is_some())
}

/// Indices of the extreme points among `points`, in increasing order. Of a
/// repeated point only the first occurrence is kept.
///
/// Points are inserted one at a time, in order of decreasing squared norm,
/// and a point inside the hull of those kept so far is skipped. The kept
/// points span the same hull as all points, so a final pass dropping every
/// kept point inside the hull of the others leaves exactly the extremes.
pub fn extreme_indices<S: Scalar>(points: &[Vec<S>]) -> Result<Vec<usize>> {
    let Some(first) = points.first() else {
        return Ok(Vec::new());
    };
    if first.is_empty() {
        return Err(Error::ZeroDimension);
    }
    if let Some(p) = points.iter().find(|p| p.len() != first.len()) {
        return Err(Error::Dimension(format!(
            "points of lengths {} and {}",
            first.len(),
            p.len()
        )));
    }
    let norms: Vec<S> = points.iter().map(|p| crate::scalar::dot(p, p)).collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| norms[b].cmp(&norms[a]));
    let mut kept: Vec<usize> = vec![order[0]];
    let mut hull: Vec<Vec<S>> = vec![points[order[0]].clone()];
    for &i in &order[1..] {
        if !in_convex_hull(&points[i], &hull)? {
            kept.push(i);
            hull.push(points[i].clone());
        }
    }
    let mut k = 0;
    while k < kept.len() && kept.len() > 1 {
        let others: Vec<Vec<S>> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &e)| points[e].clone())
            .collect();
        if in_convex_hull(&points[kept[k]], &others)? {
            kept.remove(k);
        } else {
            k += 1;
        }
    }
    kept.sort_unstable();
    Ok(kept)
}
