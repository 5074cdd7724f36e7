//! Exact feasibility, hull membership and extreme-point extraction.

mod common;

use common::{prob_vectors, q};
use imp_core::rational_lp::{convex_coefficients, extreme_indices, in_convex_hull, solve_feasible, FeasibilityProblem};
use imp_core::Rational;
use num_traits::Signed;
use proptest::prelude::*;

/// Twice the signed area of the triangle `o, a, b`.
fn cross(o: &(Rational, Rational), a: &(Rational, Rational), b: &(Rational, Rational)) -> Rational {
    (a.0.clone() - o.0.clone()) * (b.1.clone() - o.1.clone()) - (a.1.clone() - o.1.clone()) * (b.0.clone() - o.0.clone())
}

/// Strict vertices of the planar hull by the monotone chain, collinear
/// points dropped.
fn monotone_chain(mut pts: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<(Rational, Rational)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(Rational, Rational)>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for p in iter {
            while hull.len() >= start + 2 && !cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p).is_positive() {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    hull.sort();
    hull.dedup();
    hull
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn coefficients_of_a_mixture_reproduce_it(
        gens in prob_vectors(3, 1..=5),
        weights in prop::collection::vec(0i64..=5, 5),
    ) {
        let raw: Vec<Vec<Rational>> = gens.iter().map(|g| g.entries().to_vec()).collect();
        let weights = &weights[..raw.len()];
        let total: i64 = weights.iter().sum();
        prop_assume!(total > 0);
        let point: Vec<Rational> = (0..3)
            .map(|d| raw.iter().zip(weights).fold(q(0, 1), |acc, (g, &w)| acc + g[d].clone() * q(w, total)))
            .collect();
        let lambda = convex_coefficients(&point, &raw).unwrap().expect("a mixture is in the hull");
        prop_assert!(lambda.iter().all(|l| !l.is_negative()));
        prop_assert_eq!(lambda.iter().fold(q(0, 1), |a, l| a + l.clone()), q(1, 1));
        for d in 0..3 {
            let rebuilt = raw.iter().zip(&lambda).fold(q(0, 1), |acc, (g, l)| acc + g[d].clone() * l.clone());
            prop_assert_eq!(&rebuilt, &point[d]);
        }
    }

    #[test]
    fn extremes_agree_with_the_planar_hull(gens in prob_vectors(3, 1..=9)) {
        let raw: Vec<Vec<Rational>> = gens.iter().map(|g| g.entries().to_vec()).collect();
        let mut found: Vec<(Rational, Rational)> = extreme_indices(&raw)
            .unwrap()
            .into_iter()
            .map(|i| (raw[i][0].clone(), raw[i][1].clone()))
            .collect();
        found.sort();
        let planar = monotone_chain(raw.iter().map(|p| (p[0].clone(), p[1].clone())).collect());
        prop_assert_eq!(found, planar);
    }

    #[test]
    fn every_point_lies_in_the_hull_of_the_extremes(gens in prob_vectors(4, 1..=8)) {
        let raw: Vec<Vec<Rational>> = gens.iter().map(|g| g.entries().to_vec()).collect();
        let ext: Vec<Vec<Rational>> = extreme_indices(&raw).unwrap().into_iter().map(|i| raw[i].clone()).collect();
        for p in &raw {
            prop_assert!(in_convex_hull(p, &ext).unwrap());
        }
        for (k, e) in ext.iter().enumerate() {
            let others: Vec<Vec<Rational>> = ext.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, v)| v.clone()).collect();
            if !others.is_empty() {
                prop_assert!(!in_convex_hull(e, &others).unwrap());
            }
        }
    }

    #[test]
    fn feasible_solutions_satisfy_every_constraint(
        a in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..=3),
        x in prop::collection::vec(0i64..=3, 4),
    ) {
        let rows: Vec<Vec<Rational>> = a.iter().map(|r| r.iter().map(|&v| q(v, 1)).collect()).collect();
        let rhs: Vec<Rational> = a.iter().map(|r| q(r.iter().zip(&x).map(|(u, v)| u * v).sum(), 1)).collect();
        let problem = FeasibilityProblem::new(rows, rhs).unwrap();
        let lambda = solve_feasible(&problem).expect("x itself is feasible");
        prop_assert!(problem.is_solution(&lambda));
    }
}

#[test]
fn denominators_beyond_fixed_width_are_solved_exactly() {
    let tiny = Rational::new(1.into(), num_bigint::BigInt::from(3).pow(90));
    let rest = q(1, 1) - tiny.clone();
    let gens = vec![vec![tiny.clone(), rest.clone()], vec![rest.clone(), tiny.clone()]];
    let lambda = convex_coefficients(&[q(1, 2), q(1, 2)], &gens).unwrap().unwrap();
    assert_eq!(lambda, vec![q(1, 2), q(1, 2)]);
    assert!(!in_convex_hull(&[q(1, 1), q(0, 1)], &gens).unwrap());
}
