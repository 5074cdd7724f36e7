//! `imp`: run programs through both backends, compare composites, run the
//! randomized suites and plot three-outcome credal sets.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use imp_core::bridge::{check_oplax, phi};
use imp_core::json::{self, CredalWire, ErrorBody, ErrorWire, GradedWire, OplaxWire};
use imp_core::lang::{elaborate_cp, elaborate_imp, infer, parse, Context, EvalOrder, TypedTerm};
use imp_core::suite::{self, Oracle, Tally};
use imp_core::{plot, Error};

#[derive(Debug, Parser)]
#[command(name = "imp", version, about = "Exact semantics for programs with coins and named Knightian choices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Type-check a closed program and print its type and grade.
    Check { file: PathBuf },
    /// Print the graded stochastic matrix a closed program denotes.
    Denote { file: PathBuf },
    /// Print the image of the denotation next to the unnamed-choice semantics.
    Credal {
        file: PathBuf,
        /// Evaluation order of tuple components in the unnamed-choice semantics.
        #[arg(long, value_enum, default_value_t = Order::Left)]
        order: Order,
    },
    /// Compare the image of `G ∘ F` with the composite of the images.
    Compare {
        file_f: PathBuf,
        /// A program with one free variable of the output type of `F`.
        file_g: PathBuf,
        /// Name of the free variable of `G`.
        #[arg(long, default_value = "x")]
        var: String,
    },
    /// Run the sequencing laws on random programs.
    Laws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Run one randomized oracle, or all of them.
    Oracle {
        /// `oplax`, `star`, `kan`, `roundtrip`, `naturality` or `all`.
        which: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Write the image of a program with three outcomes as an SVG triangle.
    Plot { file: PathBuf, out: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Order {
    Left,
    Right,
}

impl From<Order> for EvalOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Left => EvalOrder::LeftFirst,
            Order::Right => EvalOrder::RightFirst,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Io(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn wire(&self) -> ErrorWire {
        match self {
            Failure::Core(e) => ErrorWire::from(e),
            Failure::Io(message) => ErrorWire {
                error: ErrorBody {
                    kind: "io".to_string(),
                    message: message.clone(),
                },
            },
        }
    }
}

/// Standard output and whether every check it reports passed.
struct Outcome {
    stdout: String,
    ok: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, ok: true }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn typed(path: &Path, ctx: &Context) -> Result<TypedTerm, Failure> {
    Ok(infer(&parse(&read(path)?)?, ctx)?)
}

/// `IMP_SEED`, when set, takes precedence over `--seed`.
fn seed(flag: u64) -> Result<u64, Failure> {
    match std::env::var("IMP_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Core(Error::Malformed(format!("IMP_SEED=`{v}` is not a seed")))),
        Err(_) => Ok(flag),
    }
}

fn tallies(seed: u64, count: usize, tallies: &[Tally]) -> Outcome {
    let suites: Vec<Value> = tallies
        .iter()
        .map(|t| {
            json!({
                "failed": t.failed,
                "first_failure": t.first_failure,
                "name": t.name,
                "passed": t.passed,
            })
        })
        .collect();
    let ok = tallies.iter().all(Tally::ok);
    let body = json!({ "count": count, "ok": ok, "seed": seed, "suites": suites });
    Outcome {
        stdout: json::to_string(&body),
        ok,
    }
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Check { file } => {
            let tt = typed(&file, &Context::new())?;
            let body = json!({ "grade": tt.grade.to_string(), "type": tt.ty.to_string() });
            Ok(Outcome::ok(json::to_string(&body)))
        }
        Command::Denote { file } => {
            let f = elaborate_imp(&typed(&file, &Context::new())?)?;
            Ok(Outcome::ok(json::to_string(&GradedWire::from(&f))))
        }
        Command::Credal { file, order } => {
            let tt = typed(&file, &Context::new())?;
            let image = phi(&elaborate_imp(&tt)?)?;
            let cp = elaborate_cp(&tt, order.into())?;
            let body = json!({
                "cp": CredalWire::from(cp.image(0)),
                "phi": CredalWire::from(&image),
            });
            Ok(Outcome::ok(json::to_string(&body)))
        }
        Command::Compare { file_f, file_g, var } => {
            let tf = typed(&file_f, &Context::new())?;
            let tg = typed(&file_g, &Context::from_vars([(var, tf.ty.clone())]))?;
            let report = check_oplax(&elaborate_imp(&tg)?, &elaborate_imp(&tf)?)?;
            Ok(Outcome::ok(json::to_string(&OplaxWire::from(&report))))
        }
        Command::Laws { seed: flag, count } => {
            let seed = seed(flag)?;
            Ok(tallies(seed, count, &suite::laws(seed, count)))
        }
        Command::Oracle { which, seed: flag, count } => {
            let seed = seed(flag)?;
            let oracles = if which == "all" {
                Oracle::ALL.to_vec()
            } else {
                vec![which.parse::<Oracle>()?]
            };
            let results: Vec<Tally> = oracles.into_iter().map(|o| suite::oracle(o, seed, count)).collect();
            Ok(tallies(seed, count, &results))
        }
        Command::Plot { file, out } => {
            let image = phi(&elaborate_imp(&typed(&file, &Context::new())?)?)?;
            let svg = plot::render_svg(&image)?;
            fs::write(&out, &svg).map_err(|e| Failure::Io(format!("{}: {e}", out.display())))?;
            let body = json!({ "extremes": CredalWire::from(&image).extremes, "out": out.display().to_string() });
            Ok(Outcome::ok(json::to_string(&body)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.stdout);
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("imp: some checks failed");
                ExitCode::FAILURE
            }
        }
        Err(failure) => {
            let wire = failure.wire();
            println!("{}", json::to_string(&wire));
            eprintln!("imp: {}", wire.error.message);
            ExitCode::FAILURE
        }
    }
}
