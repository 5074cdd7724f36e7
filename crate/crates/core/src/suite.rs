//! Seeded randomized suites over the laws and the bridge constructions.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::bridge::{check_oplax, encode_recover_roundtrip, kan_witness, phi, star_compose};
use crate::error::{Error, Result};
use crate::finstoch;
use crate::imp::{gcompose, regrade};
use crate::lang::generate::{context, law_instance, pool, term};
use crate::lang::laws::{check_law, GradedEquation, Law};
use crate::lang::Type;
use crate::random::{self, ChaCha8Rng};
use crate::{GradedMorphism, Rational};

/// Pass and fail counts of one suite.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// Description of the first failing instance, if any.
    pub first_failure: Option<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    fn record(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> String) {
        match outcome {
            Ok(true) => self.passed += 1,
            Ok(false) => self.fail(describe()),
            Err(e) => self.fail(format!("{}: {e}", describe())),
        }
    }

    fn fail(&mut self, what: String) {
        self.failed += 1;
        self.first_failure.get_or_insert(what);
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Runs `count` random instances of every sequencing law.
pub fn laws(seed: u64, count: usize) -> Vec<Tally> {
    let mut rng = random::rng(seed);
    Law::ALL
        .iter()
        .map(|&law| {
            let mut tally = Tally::new(law.name());
            for _ in 0..count {
                let instance = law_instance(&mut rng, law);
                tally.record(check_law(&instance), || instance.to_string());
            }
            tally
        })
        .collect()
}

/// Runs `count` random instances of every graded equation between the
/// derived coin and Knightian choice operators.
pub fn graded_equations(seed: u64, count: usize) -> Vec<Tally> {
    let mut rng = random::rng(seed);
    GradedEquation::all("op0", "op1")
        .into_iter()
        .map(|eq| {
            let mut tally = Tally::new(eq.to_string());
            for _ in 0..count {
                let ctx = context(&mut rng);
                // Operand names are disjoint from the operator sites; all of
                // them are ternary so operands in different positions may share.
                let names: Vec<(String, usize)> = pool(&mut rng, 2).into_iter().map(|(a, _)| (a, 3)).collect();
                let terms: Vec<_> = (0..eq.arity())
                    .map(|_| term(&mut rng, &ctx, &Type::Three, &names, 2))
                    .collect();
                tally.record(eq.check(&ctx, &terms), || {
                    let shown: Vec<String> = terms.iter().map(ToString::to_string).collect();
                    format!("[{ctx}] {}", shown.join(" | "))
                });
            }
            tally
        })
        .collect()
}

/// The randomized checks of the image map and the functor into convex sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Oracle {
    /// Op-lax inclusion `R(g∘f) ⊆ R(g)∘R(f)`, pointwise.
    Oplax,
    /// The star composite realises `R(g)∘R(f)` exactly.
    Star,
    /// Factorisation of equal-image matrices through their extreme points.
    Kan,
    /// Marked encoding and exact recovery of a graded morphism.
    Roundtrip,
    /// The image of a closed morphism is invariant under surjective regrading.
    Naturality,
}

impl Oracle {
    pub const ALL: [Oracle; 5] = [Oracle::Oplax, Oracle::Star, Oracle::Kan, Oracle::Roundtrip, Oracle::Naturality];

    pub fn name(self) -> &'static str {
        match self {
            Oracle::Oplax => "oplax",
            Oracle::Star => "star",
            Oracle::Kan => "kan",
            Oracle::Roundtrip => "roundtrip",
            Oracle::Naturality => "naturality",
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Oracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Oracle::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown oracle `{s}`")))
    }
}

/// A composable pair `f : m → k` at a grade named `f…` and `g : k → n` at a
/// grade named `g…`, with carriers and sizes at most four.
pub fn composable_pair(rng: &mut ChaCha8Rng) -> (GradedMorphism, GradedMorphism) {
    let (m, k, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4), rng.gen_range(1..=4));
    let gamma = random::grade(rng, "f");
    let eps = random::grade(rng, "g");
    let f = random::graded_morphism(rng, &gamma, m, k);
    let g = random::graded_morphism(rng, &eps, k, n);
    (f, g)
}

/// `f` restricted to one input, as a closed morphism.
pub fn at_input(f: &GradedMorphism, input: usize) -> Result<GradedMorphism> {
    gcompose(f, &crate::imp::deterministic(1, f.dom().size(), |_| input))
}

fn star_matches(g: &GradedMorphism, f: &GradedMorphism) -> Result<bool> {
    let report = check_oplax(g, f)?;
    for i in 0..f.dom().size() {
        if phi(&star_compose(g, &at_input(f, i)?)?)? != *report.rhs.image(i) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn naturality(rng: &mut ChaCha8Rng) -> Result<bool> {
    let dst = random::grade(rng, "d");
    let src = loop {
        let src = random::grade(rng, "s");
        if src.carrier() >= dst.carrier() {
            break src;
        }
    };
    let n = rng.gen_range(1..=4);
    let f = random::graded_morphism::<Rational>(rng, &dst, 1, n);
    let u = random::surjective_grade_map(rng, &src, &dst)?;
    Ok(phi(&regrade(&f, &u)?)? == phi(&f)?)
}

/// Runs `count` random instances of one oracle.
pub fn oracle(which: Oracle, seed: u64, count: usize) -> Tally {
    let mut rng = random::rng(seed);
    let mut tally = Tally::new(which.name());
    for i in 0..count {
        let describe = || format!("instance {i} (seed {seed})");
        match which {
            Oracle::Oplax => {
                let (f, g) = composable_pair(&mut rng);
                tally.record(check_oplax(&g, &f).map(|r| r.pointwise_subset.iter().all(|&b| b)), describe);
            }
            Oracle::Star => {
                let (f, g) = composable_pair(&mut rng);
                tally.record(star_matches(&g, &f), describe);
            }
            Oracle::Kan => {
                let (f, f2) = random::kan_pair::<Rational>(&mut rng);
                let outcome = kan_witness(&f, &f2).and_then(|w| {
                    Ok(finstoch::compose(&w.h, &w.g)? == f
                        && finstoch::compose(&w.h, &w.gp)? == f2
                        && w.g.is_surjective()
                        && w.gp.is_surjective())
                });
                tally.record(outcome, describe);
            }
            Oracle::Roundtrip => {
                let grade = random::grade(&mut rng, "k");
                let (m, n) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
                let f = random::graded_morphism::<Rational>(&mut rng, &grade, m, n);
                tally.record(encode_recover_roundtrip(&f), describe);
            }
            Oracle::Naturality => tally.record(naturality(&mut rng), describe),
        }
    }
    tally
}
