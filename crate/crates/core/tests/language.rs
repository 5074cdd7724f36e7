//! Parsing, typing and the two denotations of the surface language.

mod common;

use common::{q, seed};
use imp_core::bridge::phi;
use imp_core::credal::CredalSet;
use imp_core::finstoch::ProbVector;
use imp_core::lang::laws::equal_up_to_weakening;
use imp_core::lang::{
    check_law, denote, elaborate_cp, elaborate_imp, generate, infer, parse, Context, EvalOrder, Law, Term, Type,
};
use imp_core::{random, Error, Rational};
use proptest::prelude::*;

fn closed(source: &str) -> imp_core::Result<imp_core::lang::TypedTerm> {
    infer(&parse(source)?, &Context::new())
}

fn cp(source: &str, order: EvalOrder) -> CredalSet<Rational> {
    elaborate_cp(&closed(source).unwrap(), order).unwrap().image(0).clone()
}

fn corners(points: &[[(i64, i64); 3]]) -> CredalSet<Rational> {
    let gens = points
        .iter()
        .map(|p| ProbVector::new(p.iter().map(|&(n, d)| q(n, d)).collect()).unwrap())
        .collect();
    CredalSet::new(gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printed_terms_parse_back(s in seed()) {
        let mut rng = random::rng(s);
        let ctx = generate::context(&mut rng);
        let pool = generate::pool(&mut rng, 3);
        let ty = if s % 2 == 0 { Type::Bool } else { Type::Three };
        let t = generate::term(&mut rng, &ctx, &ty, &pool, 4);
        prop_assert_eq!(parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn generated_terms_are_well_graded(s in seed()) {
        let mut rng = random::rng(s);
        let ctx = generate::context(&mut rng);
        let pool = generate::pool(&mut rng, 3);
        let t = generate::term(&mut rng, &ctx, &Type::Three, &pool, 4);
        let typed = infer(&t, &ctx).unwrap();
        prop_assert!(typed.ty == Type::Three);
        let f = elaborate_imp(&typed).unwrap();
        prop_assert_eq!(f.dom().size(), ctx.size());
        prop_assert_eq!(f.cod().size(), 3);
    }

    #[test]
    fn random_law_instances_hold(s in seed(), which in 0usize..4) {
        let mut rng = random::rng(s);
        let instance = generate::law_instance(&mut rng, Law::ALL[which]);
        prop_assert!(check_law(&instance).unwrap());
    }
}

#[test]
fn comments_and_whitespace_are_ignored() {
    let plain = parse("x <- knight(a); if x then r else g").unwrap();
    let spaced = parse("-- a comment\n  x <-\tknight( a ) ;\n if x then r else g -- trailing\n").unwrap();
    assert_eq!(plain, spaced);
}

#[test]
fn parse_errors_carry_positions() {
    match parse("x <- bernoulli;\n  if x then r") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("expected a parse error, got {other:?}"),
    }
    assert!(matches!(parse("choose [1/2, 1/3]"), Err(Error::NotProbability(_)) | Err(Error::Parse { .. })));
    assert!(matches!(parse("r g"), Err(Error::Parse { .. })));
}

#[test]
fn ill_formed_programs_are_rejected() {
    assert!(matches!(closed("y"), Err(Error::Unbound(_))));
    assert!(matches!(closed("if g then r else b"), Err(Error::Type(_))));
    assert!(matches!(closed("if bernoulli then r else true"), Err(Error::Type(_))));
    assert!(matches!(closed("x <- knight(a); y <- knight(a); x"), Err(Error::NameClash(_))));
    assert!(matches!(closed("flip(a)(r)"), Err(Error::GradeMismatch(_))));
}

#[test]
fn branches_may_share_a_site() {
    let tt = closed("if bernoulli then knight(a) else knight(a)").unwrap();
    assert_eq!(tt.grade.to_string(), "{a:2}");
    assert_eq!(tt.ty, Type::Bool);
}

#[test]
fn named_draws_commute_with_coins() {
    let left = denote("x <- knight(a); z <- bernoulli; if z then (if x then r else g) else (if x then r else b)").unwrap();
    let right =
        denote("z <- bernoulli; x <- knight(a); if z then (if x then r else g) else (if x then r else b)").unwrap();
    assert_eq!(left, right);
}

#[test]
fn unnamed_draws_do_not_commute_with_coins() {
    let before = cp("x <- knight(a); z <- bernoulli; if z then (if x then r else g) else (if x then r else b)", EvalOrder::LeftFirst);
    let after = cp("z <- bernoulli; x <- knight(a); if z then (if x then r else g) else (if x then r else b)", EvalOrder::LeftFirst);
    let r = (1, 1);
    let zero = (0, 1);
    let half = (1, 2);
    assert_eq!(before, corners(&[[r, zero, zero], [zero, half, half]]));
    assert_eq!(
        after,
        corners(&[[r, zero, zero], [zero, half, half], [half, half, zero], [half, zero, half]])
    );
    assert!(before.subset(&after).unwrap());
}

#[test]
fn unnamed_semantics_contains_the_image_of_the_named_one() {
    for source in [
        "bernoulli",
        "x <- knight(a); if x then r else g",
        "z <- bernoulli; if z then (x <- knight(a); if x then r else g) else (y <- knight(c); if y then r else b)",
        "z <- bernoulli; if z then (x <- knight(a); if x then r else g) else (x <- knight(a); if x then r else b)",
        "(knight(a), bernoulli)",
    ] {
        let tt = closed(source).unwrap();
        let named = phi(&elaborate_imp(&tt).unwrap()).unwrap();
        for order in [EvalOrder::LeftFirst, EvalOrder::RightFirst] {
            assert!(named.subset(elaborate_cp(&tt, order).unwrap().image(0)).unwrap(), "{source}");
        }
    }
}

#[test]
fn evaluation_order_matters_for_unnamed_tuples() {
    let tt = closed("(knight(a), bernoulli)").unwrap();
    let named = phi(&elaborate_imp(&tt).unwrap()).unwrap();
    let left = elaborate_cp(&tt, EvalOrder::LeftFirst).unwrap();
    let right = elaborate_cp(&tt, EvalOrder::RightFirst).unwrap();
    assert_eq!(left.image(0), &named);
    assert_eq!(named.extremes().len(), 2);
    assert_eq!(right.image(0).extremes().len(), 4);
}

#[test]
fn renaming_sites_apart_only_weakens() {
    let shared = denote("z <- bernoulli; if z then (x <- knight(a); if x then r else g) else (x <- knight(a); if x then r else b)").unwrap();
    let apart = denote("z <- bernoulli; if z then (x <- knight(a); if x then r else g) else (x <- knight(c); if x then r else b)").unwrap();
    assert_ne!(shared.grade(), apart.grade());
    assert!(!equal_up_to_weakening(&shared, &apart).unwrap());
    assert!(phi(&shared).unwrap().subset(&phi(&apart).unwrap()).unwrap());
}

#[test]
fn flipping_a_site_twice_is_the_identity() {
    let once = denote("x <- knight(a); if x then r else g").unwrap();
    let twice = denote("flip(a)(flip(a)(x <- knight(a); if x then r else g))").unwrap();
    assert_eq!(once, twice);
    let flipped = denote("flip(a)(x <- knight(a); if x then r else g)").unwrap();
    assert_ne!(once, flipped);
    assert_eq!(phi(&once).unwrap(), phi(&flipped).unwrap());
}

#[test]
fn constructors_of_sums_are_in_range() {
    assert_eq!(closed("inj 3 of 3").unwrap().ty, Type::Three);
    assert!(matches!(parse("inj 4 of 3"), Err(Error::Parse { .. })));
    assert!(matches!(parse("inj 0 of 2"), Err(Error::Parse { .. })));
    assert_eq!(denote("inj 1 of 2").unwrap(), denote("true").unwrap());
    assert_eq!(parse("inj 1 of 2").unwrap(), Term::Ctor(0, Type::Fin(2)));
    assert_eq!(Type::Fin(2), Type::Bool);
    assert!(matches!(parse("true").unwrap(), Term::Ctor(0, _)));
}
