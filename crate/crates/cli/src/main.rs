//! Command-line front door for the `multibeta` library: validates base
//! tuples, computes and classifies expansions, enumerates all expansions of
//! a point, and exports branch-map plot data.
//!
//! Exit codes: 0 on success, 2 on a domain or validation failure (an
//! inadmissible tuple, an out-of-domain point, an undecidable float
//! comparison), 64 on a usage error (unparseable flags, scalars, or words).
//!
//! All output is deterministic: identical inputs produce byte-identical
//! JSON. Scalars print as exact `p/q` strings in exact mode and as plain
//! floats in float mode.

use std::io::{self, BufRead};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multibeta::{
    classify_frontier, classify_two_base, enumerate_expansions, is_greedy, is_lazy,
    is_quasi_greedy, is_quasi_lazy, parse_word_literal, BaseTuple, EpWord, Error, Expansion, Mode,
    Parsed, Policy, Scalar, Transform, Validation, Verdict, Word,
};
use serde_json::{json, Value};

/// Expansions of real numbers in several bases at once, with exact
/// rational arithmetic.
#[derive(Parser)]
#[command(name = "multibeta", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a base tuple and report its digit marks and frontier constants.
    ValidateBases {
        #[command(flatten)]
        common: Common,
    },
    /// Expand a point under one of the four canonical transformations.
    Expand {
        #[command(flatten)]
        common: Common,
        /// The point to expand, inside the domain [0, U].
        #[arg(long)]
        x: String,
        /// Digit-selection policy: greedy, quasi-greedy, lazy or quasi-lazy.
        #[arg(long, default_value = "greedy")]
        mode: String,
        /// Maximum number of digits before truncating a non-cycling orbit.
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
    },
    /// Evaluate a word to the point it represents.
    Project {
        #[command(flatten)]
        common: Common,
        /// A finite word ("101") or an eventually periodic one ("1(10)").
        #[arg(long)]
        word: String,
    },
    /// Judge a word against every expansion criterion.
    Classify {
        #[command(flatten)]
        common: Common,
        /// The word to classify; omit it to read one word per stdin line.
        /// Finite words are zero-extended to `w·0^∞`.
        #[arg(long)]
        word: Option<String>,
        /// How far to develop reference expansions before giving up.
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
    },
    /// List every expansion of a point up to a digit depth.
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// The point whose expansions to enumerate.
        #[arg(long)]
        x: String,
        /// Length of the enumerated prefixes.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
    },
    /// Export the branch maps of a canonical transformation as plot data.
    Plot {
        #[command(flatten)]
        common: Common,
        /// Digit-selection policy whose partition to plot.
        #[arg(long, default_value = "greedy")]
        mode: String,
        /// Sample points per branch segment (endpoints always included).
        #[arg(long, default_value_t = 32)]
        samples: u32,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Comma-separated bases, one per digit ("2,3/2" gives digits {0, 1}).
    /// A single base gets the classical alphabet {0, …, ⌈β⌉ − 1}.
    #[arg(long)]
    bases: String,
    /// Arithmetic backend.
    #[arg(long, value_enum, default_value_t = Arith::Exact)]
    arith: Arith,
    /// Comparison tolerance for float arithmetic.
    #[arg(long, default_value_t = multibeta::DEFAULT_EPSILON)]
    eps: f64,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Arith {
    Exact,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Plain,
}

impl Common {
    fn mode(&self) -> Mode {
        match self.arith {
            Arith::Exact => Mode::Exact,
            Arith::Float => Mode::Float { epsilon: self.eps },
        }
    }

    fn tuple(&self) -> multibeta::Result<BaseTuple> {
        let parts: Vec<&str> = self.bases.split(',').collect();
        if parts.len() == 1 {
            let beta = Scalar::parse(parts[0], &self.mode())?;
            let m = classical_alphabet_max(&beta)?;
            BaseTuple::constant(beta, m)
        } else {
            BaseTuple::parse_list(&self.bases, &self.mode())
        }
    }
}

/// The digit alphabet a lone base traditionally carries: {0, …, ⌈β⌉ − 1},
/// found as the least `m` with `β ≤ m + 1`. A float tie at an integer
/// resolves downwards, matching the exact answer for representable values.
fn classical_alphabet_max(beta: &Scalar) -> multibeta::Result<usize> {
    let mode = beta.mode();
    for m in 1..=u8::MAX as usize {
        let cap = Scalar::parse(&(m + 1).to_string(), &mode)?;
        if beta.compare(&cap)?.permits_le() {
            return Ok(m);
        }
    }
    Err(Error::PreconditionFailed(
        "a single base this large needs an explicit digit list".into(),
    ))
}

/// Words carry byte-sized digits; reject wider tuples up front.
fn alphabet_max(bt: &BaseTuple) -> multibeta::Result<u8> {
    u8::try_from(bt.m()).map_err(|_| {
        Error::PreconditionFailed(format!("alphabet maximum {} exceeds 255", bt.m()))
    })
}

fn main() -> ExitCode {
    // Die quietly when the reader of a pipe goes away (e.g. `… | head`),
    // as line-oriented tools conventionally do.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::Parse(_) => 64,
                _ => 2,
            })
        }
    }
}

fn run(command: Command) -> multibeta::Result<u8> {
    match command {
        Command::ValidateBases { common } => validate_bases(&common),
        Command::Expand {
            common,
            x,
            mode,
            depth,
        } => expand(&common, &x, &mode, depth as usize),
        Command::Project { common, word } => project(&common, &word),
        Command::Classify {
            common,
            word,
            depth,
        } => classify(&common, word.as_deref(), depth as usize),
        Command::Enumerate { common, x, depth } => enumerate(&common, &x, depth as usize),
        Command::Plot {
            common,
            mode,
            samples,
            out,
        } => plot(&common, &mode, samples as usize, out.as_deref()),
    }
}

fn validate_bases(common: &Common) -> multibeta::Result<u8> {
    let bt = common.tuple()?;
    let validation = bt.validate()?;
    let marks = validation.marks();
    let marks_json = json!({ "lower": marks.lower, "upper": marks.upper });
    match common.output {
        OutputFormat::Plain => {
            println!("bases: {}", scalar_list(bt.betas()));
            println!("lower marks: {}", scalar_list(&marks.lower));
            println!("upper marks: {}", scalar_list(&marks.upper));
        }
        OutputFormat::Json => {}
    }
    match validation {
        Validation::Admissible { frontier, .. } => {
            match common.output {
                OutputFormat::Json => println!(
                    "{}",
                    json!({
                        "bases": bt.betas(),
                        "admissible": true,
                        "marks": marks_json,
                        "frontier": frontier,
                        "violation": Value::Null,
                    })
                ),
                OutputFormat::Plain => {
                    println!("admissible: yes");
                    println!(
                        "greedy frontier: max {}, min {}",
                        frontier.greedy_max, frontier.greedy_min
                    );
                    println!(
                        "lazy frontier: max {}, min {}",
                        frontier.lazy_max, frontier.lazy_min
                    );
                }
            }
            Ok(0)
        }
        Validation::Inadmissible { violation, .. } => {
            match common.output {
                OutputFormat::Json => println!(
                    "{}",
                    json!({
                        "bases": bt.betas(),
                        "admissible": false,
                        "marks": marks_json,
                        "frontier": Value::Null,
                        "violation": { "k": violation.k, "inequality": violation.to_string() },
                    })
                ),
                OutputFormat::Plain => {
                    println!("admissible: no");
                    println!("violated: {} (k = {})", violation, violation.k);
                }
            }
            Ok(2)
        }
    }
}

fn scalar_list(scalars: &[Scalar]) -> String {
    scalars
        .iter()
        .map(Scalar::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn expand(common: &Common, x_text: &str, mode_text: &str, depth: usize) -> multibeta::Result<u8> {
    let bt = common.tuple()?;
    let policy = Policy::from_str(mode_text)?;
    let x = Scalar::parse(x_text, &bt.mode())?;
    let expansion = Transform::canonical(&bt, policy)?.expand(&x, depth)?;
    let report = match &expansion {
        Expansion::Periodic { word, approximate } => json!({
            "bases": bt.betas(),
            "x": x,
            "mode": policy.name(),
            "expansion": {
                "status": "periodic",
                "word": word.to_string(),
                "approximate": approximate,
            },
            "residual_bound": Scalar::zero(&bt.mode()),
        }),
        Expansion::Truncated { prefix } => json!({
            "bases": bt.betas(),
            "x": x,
            "mode": policy.name(),
            "expansion": {
                "status": "truncated",
                "prefix": prefix.to_string(),
                "depth": prefix.len(),
            },
            "residual_bound": residual_bound(&bt, prefix)?,
        }),
    };
    match common.output {
        OutputFormat::Json => println!("{report}"),
        OutputFormat::Plain => match &expansion {
            Expansion::Periodic {
                word,
                approximate: false,
            } => println!("{word}"),
            Expansion::Periodic { word, .. } => println!("{word} (approximate cycle)"),
            Expansion::Truncated { prefix } => println!(
                "{prefix} (truncated at {}; residual <= {})",
                prefix.len(),
                residual_bound(&bt, prefix)?
            ),
        },
    }
    Ok(0)
}

/// The value always lies within `U / (β_{w_1} ⋯ β_{w_n})` of the projected
/// length-`n` prefix.
fn residual_bound(bt: &BaseTuple, prefix: &Word) -> multibeta::Result<Scalar> {
    let mut denom = Scalar::one(&bt.mode());
    for &d in prefix.digits() {
        denom = denom.checked_mul(bt.beta(d as usize)?)?;
    }
    bt.upper_bound().checked_div(&denom)
}

fn project(common: &Common, word_text: &str) -> multibeta::Result<u8> {
    let bt = common.tuple()?;
    bt.require_admissible()?;
    let value = match parse_word_literal(word_text, alphabet_max(&bt)?)? {
        Parsed::Finite(w) => w.project(&bt)?,
        Parsed::Periodic(w) => w.project(&bt)?,
    };
    match common.output {
        OutputFormat::Json => println!(
            "{}",
            json!({ "bases": bt.betas(), "word": word_text.trim(), "value": value })
        ),
        OutputFormat::Plain => println!("{value}"),
    }
    Ok(0)
}

fn classify(common: &Common, word: Option<&str>, depth: usize) -> multibeta::Result<u8> {
    let bt = common.tuple()?;
    match word {
        Some(text) => emit_classification(common, &bt, text, depth)?,
        None => {
            for line in io::stdin().lock().lines() {
                let line = line
                    .map_err(|e| Error::PreconditionFailed(format!("cannot read stdin: {e}")))?;
                let text = line.trim();
                if text.is_empty() {
                    continue;
                }
                emit_classification(common, &bt, text, depth)?;
            }
        }
    }
    Ok(0)
}

fn emit_classification(
    common: &Common,
    bt: &BaseTuple,
    text: &str,
    depth: usize,
) -> multibeta::Result<()> {
    let report = classify_word(bt, text, depth)?;
    match common.output {
        OutputFormat::Json => println!("{report}"),
        OutputFormat::Plain => {
            println!(
                "word {} (value {})",
                report["word"].as_str().unwrap_or_default(),
                plain_value(&report["value"])
            );
            for (label, key) in [
                ("greedy", "is_greedy"),
                ("quasi-greedy", "is_quasi_greedy"),
                ("lazy", "is_lazy"),
                ("quasi-lazy", "is_quasi_lazy"),
            ] {
                println!("  {label}: {}", verdict_text(&report[key]));
            }
            let f = &report["frontier"];
            println!(
                "  order necessary (greedy/lazy/unique): {} / {} / {}",
                verdict_text(&f["greedy_necessary"]),
                verdict_text(&f["lazy_necessary"]),
                verdict_text(&f["unique_necessary"]),
            );
            println!(
                "  order sufficient (greedy/lazy/unique): {} / {} / {}",
                verdict_text(&f["greedy_sufficient"]),
                verdict_text(&f["lazy_sufficient"]),
                verdict_text(&f["unique_sufficient"]),
            );
            match &report["two_base"] {
                Value::Null => println!("  two-base characterization: not applicable"),
                t => println!(
                    "  two-base characterization (greedy/lazy/unique): {} / {} / {}",
                    verdict_text(&t["greedy"]),
                    verdict_text(&t["lazy"]),
                    verdict_text(&t["unique"]),
                ),
            }
        }
    }
    Ok(())
}

fn classify_word(bt: &BaseTuple, text: &str, depth: usize) -> multibeta::Result<Value> {
    let m = alphabet_max(bt)?;
    let w = match parse_word_literal(text, m)? {
        Parsed::Periodic(w) => w,
        // A finite word is judged as its zero-extension w·0^∞.
        Parsed::Finite(w) => EpWord::new(w.digits().to_vec(), vec![0], m)?,
    };
    let frontier = classify_frontier(bt, &w, depth)?;
    let two_base = match classify_two_base(bt, &w, depth) {
        Ok(report) => serde_json::to_value(report).expect("report serializes"),
        // Wrong shape for the two-base theory (m ≠ 1 or a base above 2).
        Err(Error::PreconditionFailed(_)) => Value::Null,
        Err(e) => return Err(e),
    };
    Ok(json!({
        "word": w.to_string(),
        "value": w.project(bt)?,
        "is_greedy": verdict_json(is_greedy(bt, &w))?,
        "is_quasi_greedy": verdict_json(is_quasi_greedy(bt, &w))?,
        "is_lazy": verdict_json(is_lazy(bt, &w))?,
        "is_quasi_lazy": verdict_json(is_quasi_lazy(bt, &w))?,
        "frontier": frontier,
        "two_base": two_base,
    }))
}

/// Criteria whose hypotheses exclude the word's value (0 for quasi-greedy,
/// the supremum for quasi-lazy) report as inapplicable instead of failing
/// the whole run; so do float comparisons too close to call.
fn verdict_json(verdict: multibeta::Result<Verdict>) -> multibeta::Result<Value> {
    match verdict {
        Ok(v) => Ok(serde_json::to_value(v).expect("verdict serializes")),
        Err(Error::HypothesisNotMet(reason)) | Err(Error::BoundaryAmbiguity(reason)) => {
            Ok(json!({ "status": "inapplicable", "reason": reason }))
        }
        Err(e) => Err(e),
    }
}

/// Scalars serialize as strings in exact mode and numbers in float mode;
/// print either without JSON quoting.
fn plain_value(v: &Value) -> String {
    match v.as_str() {
        Some(s) => s.to_string(),
        None => v.to_string(),
    }
}

fn verdict_text(v: &Value) -> String {
    match v["status"].as_str() {
        Some("satisfied") => "satisfied".into(),
        Some("violated") => format!("violated at {}", v["witness"]),
        Some("undecided") => format!("undecided at depth {}", v["depth"]),
        Some("inapplicable") => {
            format!("inapplicable ({})", v["reason"].as_str().unwrap_or_default())
        }
        _ => v.to_string(),
    }
}

fn enumerate(common: &Common, x_text: &str, depth: usize) -> multibeta::Result<u8> {
    let bt = common.tuple()?;
    let x = Scalar::parse(x_text, &bt.mode())?;
    let tree = enumerate_expansions(&bt, &x, depth)?;
    match common.output {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string(&tree).expect("tree serializes")
        ),
        OutputFormat::Plain => {
            for leaf in &tree.leaves {
                println!("{leaf}");
            }
        }
    }
    Ok(0)
}

fn plot(
    common: &Common,
    mode_text: &str,
    samples: usize,
    out: Option<&std::path::Path>,
) -> multibeta::Result<u8> {
    let bt = common.tuple()?;
    let policy = Policy::from_str(mode_text)?;
    let series = Transform::canonical(&bt, policy)?.plot_data(samples)?;
    let payload = serde_json::to_string(&series).expect("series serializes");
    match out {
        Some(path) => std::fs::write(path, format!("{payload}\n")).map_err(|e| {
            Error::PreconditionFailed(format!("cannot write {}: {e}", path.display()))
        })?,
        None => match common.output {
            OutputFormat::Json => println!("{payload}"),
            OutputFormat::Plain => {
                for branch in &series.branches {
                    println!(
                        "branch {}: [{}, {}] -> [{}, {}]",
                        branch.k, branch.x0, branch.x1, branch.y0, branch.y1
                    );
                }
            }
        },
    }
    Ok(0)
}
