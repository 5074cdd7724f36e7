//! The passage from graded matrices to convex sets of distributions.

mod common;

use common::seed;
use imp_core::bridge::{check_oplax, encode_recover_roundtrip, kan_witness, phi, r_functor, star_compose};
use imp_core::credal::CredalSet;
use imp_core::finstoch::{self, ProbVector};
use imp_core::imp::{gcompose, regrade, weaken, GradeMap, GradedMorphism};
use imp_core::lang::{denote, elaborate_imp, infer, parse, Context, Type};
use imp_core::suite::{self, at_input, composable_pair, Oracle};
use imp_core::{random, Error, FinSetObj, Grade, Rational, Scalar};
use num_rational::Ratio;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composing_images_only_adds_behaviour(s in seed()) {
        let mut rng = random::rng(s);
        let (f, g) = composable_pair(&mut rng);
        let report = check_oplax(&g, &f).unwrap();
        prop_assert!(report.pointwise_subset.iter().all(|&b| b));
        prop_assert_eq!(report.lhs, r_functor(&gcompose(&g, &f).unwrap()).unwrap());
    }

    #[test]
    fn independent_copies_realise_the_composite_of_images(s in seed()) {
        let mut rng = random::rng(s);
        let (f, g) = composable_pair(&mut rng);
        let report = check_oplax(&g, &f).unwrap();
        for i in 0..f.dom().size() {
            let star = star_compose(&g, &at_input(&f, i).unwrap()).unwrap();
            prop_assert_eq!(&phi(&star).unwrap(), report.rhs.image(i));
        }
    }

    #[test]
    fn images_are_invariant_under_surjective_regrading(s in seed()) {
        let mut rng = random::rng(s);
        let dst = random::grade(&mut rng, "d");
        let src = random::grade(&mut rng, "s");
        prop_assume!(src.carrier() >= dst.carrier());
        let f = random::graded_morphism::<Rational>(&mut rng, &dst, 1, 3);
        let u = random::surjective_grade_map(&mut rng, &src, &dst).unwrap();
        prop_assert_eq!(phi(&regrade(&f, &u).unwrap()).unwrap(), phi(&f).unwrap());
    }

    #[test]
    fn weakening_preserves_images(s in seed()) {
        let mut rng = random::rng(s);
        let grade = random::grade(&mut rng, "a");
        let f = random::graded_morphism::<Rational>(&mut rng, &grade, 1, 3);
        let wider = grade.tensor(&Grade::single("extra", 3).unwrap()).unwrap();
        prop_assert_eq!(phi(&weaken(&f, &wider).unwrap()).unwrap(), phi(&f).unwrap());
    }

    #[test]
    fn equal_images_have_a_common_factorisation(s in seed()) {
        let mut rng = random::rng(s);
        let (f, f2) = random::kan_pair::<Rational>(&mut rng);
        let w = kan_witness(&f, &f2).unwrap();
        prop_assert_eq!(finstoch::compose(&w.h, &w.g).unwrap(), f);
        prop_assert_eq!(finstoch::compose(&w.h, &w.gp).unwrap(), f2);
        prop_assert!(w.g.is_surjective() && w.gp.is_surjective());
        prop_assert_eq!(w.h.dom(), &w.mpp);
    }

    #[test]
    fn marked_images_recover_the_matrix(s in seed()) {
        let mut rng = random::rng(s);
        let grade = random::grade(&mut rng, "a");
        let f = random::graded_morphism::<Rational>(&mut rng, &grade, 2, 3);
        prop_assert!(encode_recover_roundtrip(&f).unwrap());
    }
}

#[test]
fn regrading_maps_must_be_surjective() {
    let grade = Grade::single("a", 2).unwrap();
    let constant = finstoch::StochMatrix::from_columns(
        grade.carrier_obj(),
        &vec![ProbVector::<Rational>::dirac(0, 2).unwrap(); 2],
    )
    .unwrap();
    assert!(matches!(GradeMap::new(grade.clone(), grade, constant), Err(Error::NotSurjective(_))));
}

#[test]
fn sharing_a_choice_gives_a_strict_inclusion() {
    let f = denote("bernoulli").unwrap();
    let source = "if x then (y <- knight(a); if y then r else g) else (y <- knight(a); if y then r else b)";
    let ctx = Context::from_vars([("x", Type::Bool)]);
    let g = elaborate_imp(&infer(&parse(source).unwrap(), &ctx).unwrap()).unwrap();
    let report = check_oplax(&g, &f).unwrap();
    assert!(report.strict);
    assert_eq!(report.lhs.image(0).extremes().len(), 2);
    assert_eq!(report.rhs.image(0).extremes().len(), 4);
}

#[test]
fn images_need_closed_morphisms() {
    let open = GradedMorphism::<Rational>::identity(&FinSetObj::new(2).unwrap());
    assert!(matches!(phi(&open), Err(Error::Dimension(_))));
}

#[test]
fn different_images_have_no_witness() {
    let f = finstoch::StochMatrix::from_columns(
        FinSetObj::new(2).unwrap(),
        &[ProbVector::dirac(0, 2).unwrap()],
    )
    .unwrap();
    let f2 = finstoch::StochMatrix::from_columns(
        FinSetObj::new(2).unwrap(),
        &[ProbVector::dirac(1, 2).unwrap()],
    )
    .unwrap();
    assert_eq!(kan_witness::<Rational>(&f, &f2), Err(Error::ImagesDiffer));
}

#[test]
fn fixed_width_scalars_agree_with_big_ones() {
    let mut rng = random::rng(7);
    for _ in 0..20 {
        let grade = random::grade(&mut rng, "a");
        let small = random::graded_morphism::<Ratio<i64>>(&mut rng, &grade, 1, 3);
        let big = GradedMorphism::new(
            grade.clone(),
            small.dom().clone(),
            small.cod().clone(),
            finstoch::StochMatrix::from_columns(
                small.cod().clone(),
                &(0..grade.carrier())
                    .map(|c| ProbVector::new(small.column(c, 0).entries().iter().map(Scalar::to_big).collect()).unwrap())
                    .collect::<Vec<_>>(),
            )
            .unwrap(),
        )
        .unwrap();
        let lifted: Vec<ProbVector<Rational>> = phi(&small)
            .unwrap()
            .extremes()
            .iter()
            .map(|e| ProbVector::new(e.entries().iter().map(Scalar::to_big).collect()).unwrap())
            .collect();
        assert_eq!(CredalSet::new(lifted).unwrap(), phi(&big).unwrap());
    }
}

#[test]
fn every_oracle_passes_a_short_run() {
    for which in Oracle::ALL {
        let tally = suite::oracle(which, 11, 15);
        assert!(tally.ok(), "{}: {:?}", tally.name, tally.first_failure);
        assert_eq!(tally.passed, 15);
    }
}
