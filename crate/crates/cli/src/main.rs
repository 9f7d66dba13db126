use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use adequate::canonical::are_isomorphic;
use adequate::error::{Error, ModelError, OpError, ParseError};
use adequate::io::{read_tree, to_dot, write_tree};
use adequate::model::{Assignment, Evaluator, FiniteUnaryAlgebra};
use adequate::ops::{classify, AlgebraMode, FreeAlgebra, Sidedness, Unit};
use adequate::prune::prune_traced;
use adequate::random::RandomSpec;
use adequate::term::{normalize, tree_to_term, Alphabet};
use adequate::tree::{Letter, SigmaTree};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Free left, right and two-sided adequate monoids as labelled trees.
///
/// Every positional argument may be `-` to read it from standard input.
/// Exit status: 0 success, 1 NOT-EQUAL, 2 malformed input, 3 operation or
/// tree outside the chosen signature, 4 model fails verification.
#[derive(Parser)]
#[command(name = "adequate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the pruned tree of a term.
    Normalize {
        #[arg(value_name = "TERM")]
        input: String,
        /// Also print a term that rebuilds the tree.
        #[arg(long = "term")]
        show_term: bool,
        #[command(flatten)]
        sig: Signature,
    },
    /// Decide whether two terms are equal; prints EQUAL or NOT-EQUAL.
    Equal {
        lhs: String,
        rhs: String,
        #[command(flatten)]
        sig: Signature,
    },
    /// Print the adequacy flags of a tree file.
    Classify {
        file: String,
        #[command(flatten)]
        sig: Signature,
    },
    /// Print the pruned retract of a tree file.
    Prune {
        file: String,
        /// Write each fold to standard error.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        sig: Signature,
    },
    /// Evaluate a term in a finite model.
    Eval {
        term: String,
        /// Model table file.
        #[arg(long)]
        model: String,
        /// Generator images, such as `a=0,b=1`.
        #[arg(long)]
        assign: String,
        /// Skip model verification.
        #[arg(long)]
        trusted: bool,
        #[command(flatten)]
        sig: Signature,
    },
    /// Print a random tree, or a random term with `--term`.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_edges: usize,
        #[arg(long)]
        term: bool,
        #[command(flatten)]
        sig: Signature,
    },
    /// Print a tree file as a Graphviz digraph.
    ExportDot { file: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Left,
    Right,
    Two,
}

#[derive(Args)]
struct Signature {
    /// Sidedness of the signature [default: two, or left for `eval`].
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Drop the identity from the signature.
    #[arg(long)]
    semigroup: bool,
    /// Comma-separated letters; unrestricted when omitted.
    #[arg(long)]
    alphabet: Option<String>,
}

impl Signature {
    fn mode(&self, default: ModeArg) -> AlgebraMode {
        let sidedness = match self.mode.unwrap_or(default) {
            ModeArg::Left => Sidedness::Left,
            ModeArg::Right => Sidedness::Right,
            ModeArg::Two => Sidedness::TwoSided,
        };
        AlgebraMode {
            sidedness,
            unit: if self.semigroup {
                Unit::Semigroup
            } else {
                Unit::Monoid
            },
        }
    }

    fn alphabet(&self) -> Result<Alphabet, Failure> {
        match &self.alphabet {
            None => Ok(Alphabet::Unrestricted),
            Some(list) => Alphabet::parse_list(list).map_err(|e| Failure::input(e.to_string())),
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: String) -> Self {
        Failure { code: 2, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(ParseError::OperationNotInSignature { .. }) => 3,
            Error::Op(
                OpError::NotSided(_)
                | OpError::OperationNotInSignature { .. }
                | OpError::IdentityInSemigroup,
            ) => 3,
            Error::Model(ModelError::Mode(_)) => 3,
            Error::Model(ModelError::NotAdequate { .. }) => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Reads `arg`, or standard input when it is `-`.
fn text(arg: &str, from_file: bool) -> Result<String, Failure> {
    if arg == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::input(format!("standard input: {e}")))?;
        return Ok(if from_file { s } else { s.trim().to_string() });
    }
    if from_file {
        fs::read_to_string(arg).map_err(|e| Failure::input(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn load_tree(arg: &str, mode: AlgebraMode) -> Result<SigmaTree, Failure> {
    let x = read_tree(&text(arg, true)?).map_err(|e| Failure::input(format!("{arg}: {e}")))?;
    FreeAlgebra::new(mode)
        .admit_shape(&x)
        .map_err(|e| Failure::from(Error::from(e)))?;
    Ok(x)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let two = ModeArg::Two;
    match cli.command {
        Command::Normalize {
            input,
            show_term,
            sig,
        } => {
            let mode = sig.mode(two);
            let x = normalize(&text(&input, false)?, &sig.alphabet()?, mode)?;
            print!("{}", write_tree(&x));
            if show_term {
                let t = tree_to_term(&x, mode.sidedness).map_err(Error::from)?;
                println!("{t}");
            }
        }
        Command::Equal { lhs, rhs, sig } => {
            if lhs == "-" && rhs == "-" {
                return Err(Failure::input(
                    "only one term can come from standard input".into(),
                ));
            }
            let (mode, alphabet) = (sig.mode(two), sig.alphabet()?);
            let x = normalize(&text(&lhs, false)?, &alphabet, mode)?;
            let y = normalize(&text(&rhs, false)?, &alphabet, mode)?;
            if are_isomorphic(&x, &y) {
                println!("EQUAL");
            } else {
                println!("NOT-EQUAL");
                return Ok(1);
            }
        }
        Command::Classify { file, sig } => {
            let x = load_tree(&file, sig.mode(two))?;
            println!("{}", classify(&x));
        }
        Command::Prune { file, trace, sig } => {
            let x = load_tree(&file, sig.mode(two))?;
            let p = prune_traced(&x);
            if trace {
                for step in &p.steps {
                    eprintln!("{step}");
                }
            }
            print!("{}", write_tree(&p.tree));
        }
        Command::Eval {
            term,
            model,
            assign,
            trusted,
            sig,
        } => {
            let mode = sig.mode(ModeArg::Left);
            if mode.sidedness == Sidedness::TwoSided {
                return Err(Error::from(ModelError::Mode(
                    "eval needs --mode left or --mode right".into(),
                ))
                .into());
            }
            let x = normalize(&text(&term, false)?, &sig.alphabet()?, mode)?;
            let m: FiniteUnaryAlgebra = text(&model, true)?
                .parse()
                .map_err(|e: ModelError| Failure::input(format!("{model}: {e}")))?;
            let chi: Assignment = assign.parse().map_err(Error::from)?;
            let ev = Evaluator::new(&m, chi, mode.sidedness, trusted).map_err(Error::from)?;
            println!("{}", ev.rho_hat(&x)?);
        }
        Command::Gen {
            seed,
            max_edges,
            term,
            sig,
        } => {
            let letters: Vec<Letter> = match sig.alphabet()? {
                Alphabet::Letters(set) if !set.is_empty() => set.into_iter().collect(),
                _ => ["a", "b"]
                    .iter()
                    .map(|s| s.parse().expect("valid letter"))
                    .collect(),
            };
            let spec = RandomSpec::new(seed, max_edges, letters, sig.mode(two));
            let mut g = spec.generator();
            if term {
                println!("{}", g.term());
            } else {
                print!("{}", write_tree(&g.tree()));
            }
        }
        Command::ExportDot { file } => {
            let x = load_tree(&file, AlgebraMode::TWO_SIDED)?;
            print!("{}", to_dot(&x));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
