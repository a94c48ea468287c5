//! Command-line front end: argument parsing, command dispatch and rendering.
//! `run` is the whole program minus process exit, so it can be tested
//! in-process.

pub mod expr;
pub mod render;

use std::io::Write;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use logderiv_core::algebra::{DiagonalDerivation, HopfAlgebra};
use logderiv_core::dynkin::{dynkin_convolution, lie_project, LetterDerivation, ProjectionMode};
use logderiv_core::magnus::{dynkin_inverse, magnus_forward, magnus_solve};
use logderiv_core::ode::{magnus_report, MatrixFile};
use logderiv_core::rational::parse_rational;
use logderiv_core::rota_baxter::{LinearOp, RbContext};
use logderiv_core::tensor::{Letter, TensorAlgebra, TensorElt};
use logderiv_core::verify::{run_suites, Suite, VerifyConfig};
use serde_json::json;
use thiserror::Error;

use crate::expr::parse;
use crate::render::{element_json, lambda_json, lambda_text, terms_json};

pub const DEFAULT_ALPHABET: usize = 2;
pub const DEFAULT_TRUNCATION: usize = 8;
/// Largest accepted truncation unless `LOGDERIV_MAX_DEGREE` says otherwise.
pub const DEFAULT_DEGREE_CAP: usize = 12;
pub const MAX_ALPHABET: usize = 26;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Math(_) => EXIT_MATH,
        }
    }
}

impl From<logderiv_core::Error> for CliError {
    fn from(e: logderiv_core::Error) -> Self {
        match e {
            logderiv_core::Error::Format(m) => CliError::Usage(m),
            other => CliError::Math(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "logderiv", version, about = "Exact Dynkin operators, logarithmic derivatives and Magnus expansions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Number of letters a, b, c, …
    #[arg(long, default_value_t = DEFAULT_ALPHABET)]
    pub alphabet: usize,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply the Dynkin operator S ∗ δ.
    Dynkin {
        #[arg(long)]
        expr: String,
        /// Y, letter:<c> or diag:<w1,w2,...>
        #[arg(long, default_value = "Y")]
        derivation: String,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        max_degree: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Project a homogeneous element onto its Lie component.
    Project {
        #[arg(long)]
        expr: String,
        /// classical or letter:<c>
        #[arg(long, default_value = "classical")]
        mode: String,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        max_degree: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Solve φ = 1 + R(φ·x) with R = δ⁻¹.
    Atkinson {
        #[arg(long)]
        generator: String,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        order: usize,
        /// Y or diag:<w1,w2,...>
        #[arg(long = "weight0-delta", default_value = "Y")]
        weight0_delta: String,
        #[command(flatten)]
        common: Common,
    },
    /// Compare Σ R_d^[n](x) with φ⁻¹·d(φ) for R = Y⁻¹.
    Logderiv {
        #[arg(long)]
        generator: String,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        order: usize,
        /// Y or diag:<w1,w2,...>
        #[arg(long, default_value = "Y")]
        d: String,
        #[command(flatten)]
        common: Common,
    },
    /// Magnus closed form D_δ(exp l), or its inverse.
    Magnus {
        #[arg(long, conflicts_with = "solve", required_unless_present = "solve")]
        forward: bool,
        #[arg(long)]
        solve: bool,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        order: usize,
        /// Y or diag:<w1,w2,...>
        #[arg(long, default_value = "Y")]
        delta: String,
        #[command(flatten)]
        common: Common,
    },
    /// The group-like D⁻¹(l) of a Lie element.
    Dinv {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
        order: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Magnus relation for X' = X·λA(t) with A read from a JSON file.
    Ode {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 5)]
        order: usize,
        /// Exit with status 2 when the relation fails.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the invariant suites.
    Verify {
        /// all, core, dynkin, rb, magnus or ode
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Runs the program on `args` (including the program name), writing results
/// to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn degree_cap() -> CliResult<usize> {
    match std::env::var("LOGDERIV_MAX_DEGREE") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("LOGDERIV_MAX_DEGREE must be a nonnegative integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_DEGREE_CAP),
    }
}

fn check_truncation(n: usize) -> CliResult<usize> {
    let cap = degree_cap()?;
    if n == 0 {
        return Err(CliError::Usage("truncation must be at least 1".into()));
    }
    if n > cap {
        return Err(CliError::Usage(format!(
            "truncation {n} exceeds the cap {cap} (set LOGDERIV_MAX_DEGREE to raise it)"
        )));
    }
    Ok(n)
}

fn tensor_algebra(common: &Common) -> CliResult<TensorAlgebra> {
    if common.alphabet == 0 || common.alphabet > MAX_ALPHABET {
        return Err(CliError::Usage(format!("alphabet size must be in 1..={MAX_ALPHABET}")));
    }
    Ok(TensorAlgebra::new(common.alphabet)?)
}

fn eval(text: &str, alg: &TensorAlgebra, n: usize) -> CliResult<TensorElt> {
    let e = parse(text, alg.alphabet_size()).map_err(|e| CliError::Usage(e.to_string()))?;
    e.eval(alg, n).map_err(|e| CliError::Math(e.to_string()))
}

fn parse_letter(s: &str, alphabet_size: usize) -> CliResult<Letter> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) if c.is_ascii_lowercase() && (c as usize - 'a' as usize) < alphabet_size => {
            Ok((c as usize - 'a' as usize) as Letter)
        }
        _ => Err(CliError::Usage(format!("'{s}' is not a letter of the alphabet"))),
    }
}

fn parse_weights(s: &str, alphabet_size: usize) -> CliResult<Vec<logderiv_core::Rational>> {
    let w = s
        .split(',')
        .map(|x| parse_rational(x.trim()).map_err(|e| CliError::Usage(e.to_string())))
        .collect::<CliResult<Vec<_>>>()?;
    if w.len() != alphabet_size {
        return Err(CliError::Usage(format!(
            "diag needs {alphabet_size} weights, got {}",
            w.len()
        )));
    }
    Ok(w)
}

/// `Y`, `letter:<c>` or `diag:<w1,…>` as a letter derivation.
fn parse_letter_derivation(s: &str, alphabet_size: usize) -> CliResult<LetterDerivation> {
    if s == "Y" {
        Ok(LetterDerivation::graduation(alphabet_size))
    } else if let Some(c) = s.strip_prefix("letter:") {
        Ok(LetterDerivation::letter_count(alphabet_size, parse_letter(c, alphabet_size)?))
    } else if let Some(w) = s.strip_prefix("diag:") {
        Ok(LetterDerivation::diagonal(parse_weights(w, alphabet_size)?))
    } else {
        Err(CliError::Usage(format!("unknown derivation '{s}'")))
    }
}

/// `Y` or `diag:<w1,…>` as a diagonal derivation.
fn parse_diagonal(s: &str, alphabet_size: usize) -> CliResult<DiagonalDerivation> {
    if s == "Y" {
        Ok(DiagonalDerivation::Graduation)
    } else if let Some(w) = s.strip_prefix("diag:") {
        Ok(DiagonalDerivation::weights(parse_weights(w, alphabet_size)?))
    } else {
        Err(CliError::Usage(format!("expected Y or diag:<w1,...>, got '{s}'")))
    }
}

fn emit(out: &mut dyn Write, text: String) -> CliResult<()> {
    writeln!(out, "{text}").map_err(|e| CliError::Usage(e.to_string()))
}

fn emit_element(out: &mut dyn Write, a: &TensorElt, n: usize, json: bool) -> CliResult<()> {
    if json {
        emit(out, element_json(a, n).to_string())
    } else {
        emit(out, a.to_string())
    }
}

fn require_lie(alg: &TensorAlgebra, a: &TensorElt) -> CliResult<()> {
    if alg.is_primitive(a) {
        Ok(())
    } else {
        Err(CliError::Math("input is not a Lie element (not primitive)".into()))
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Dynkin {
            expr,
            derivation,
            max_degree,
            common,
        } => {
            let n = check_truncation(max_degree)?;
            let alg = tensor_algebra(&common)?;
            let f = parse_letter_derivation(&derivation, alg.alphabet_size())?;
            let a = eval(&expr, &alg, n)?;
            emit_element(out, &dynkin_convolution(&f, &a), n, common.json)?;
        }
        Command::Project {
            expr,
            mode,
            max_degree,
            common,
        } => {
            let n = check_truncation(max_degree)?;
            let alg = tensor_algebra(&common)?;
            let mode = if mode == "classical" {
                ProjectionMode::Classical
            } else if let Some(c) = mode.strip_prefix("letter:") {
                ProjectionMode::PerLetter(parse_letter(c, alg.alphabet_size())?)
            } else {
                return Err(CliError::Usage(format!("unknown projection mode '{mode}'")));
            };
            let a = eval(&expr, &alg, n)?;
            emit_element(out, &lie_project(alg.alphabet_size(), &a, mode)?, n, common.json)?;
        }
        Command::Atkinson {
            generator,
            order,
            weight0_delta,
            common,
        } => {
            let n = check_truncation(order)?;
            let alg = tensor_algebra(&common)?;
            let delta = parse_diagonal(&weight0_delta, alg.alphabet_size())?;
            let x = eval(&generator, &alg, n)?;
            let ctx = RbContext::graded_inverse(alg, delta, None, n)?;
            let phi = ctx.atkinson_solve(&x, n)?.element(&alg);
            emit_element(out, &phi, n, common.json)?;
        }
        Command::Logderiv {
            generator,
            order,
            d,
            common,
        } => {
            let n = check_truncation(order)?;
            let alg = tensor_algebra(&common)?;
            let d = parse_diagonal(&d, alg.alphabet_size())?;
            let x = eval(&generator, &alg, n)?;
            let op: LinearOp<TensorElt> = Arc::new(move |a: &TensorElt| d.apply(a));
            let ctx = RbContext::graded_inverse(alg, DiagonalDerivation::Graduation, Some(op), n)?;
            let recursion = ctx.logderiv_sum(&x, n)?;
            let direct = ctx.logderiv_direct(&x, n)?;
            let agree = recursion == direct;
            if common.json {
                let v = json!({
                    "truncation": n,
                    "recursion": terms_json(&recursion),
                    "direct": terms_json(&direct),
                    "agree": agree,
                });
                emit(out, v.to_string())?;
            } else {
                emit(out, format!("recursion: {recursion}\ndirect:    {direct}\nagree:     {agree}"))?;
            }
            if !agree {
                return Ok(EXIT_MATH);
            }
        }
        Command::Magnus {
            forward: _,
            solve,
            expr,
            order,
            delta,
            common,
        } => {
            let n = check_truncation(order)?;
            let alg = tensor_algebra(&common)?;
            let delta = parse_diagonal(&delta, alg.alphabet_size())?;
            let a = eval(&expr, &alg, n)?;
            require_lie(&alg, &a)?;
            let result = if solve {
                magnus_solve(&alg, &delta, &a, n)?
            } else {
                magnus_forward(&alg, &delta, &a, n)?
            };
            emit_element(out, &result, n, common.json)?;
        }
        Command::Dinv { expr, order, common } => {
            let n = check_truncation(order)?;
            let alg = tensor_algebra(&common)?;
            let l = eval(&expr, &alg, n)?;
            require_lie(&alg, &l)?;
            let g = dynkin_inverse(&alg, &l, n)?.element(&alg);
            emit_element(out, &g, n, common.json)?;
        }
        Command::Ode {
            matrix,
            order,
            check,
            json,
        } => {
            let n = check_truncation(order)?;
            let text = std::fs::read_to_string(&matrix)
                .map_err(|e| CliError::Usage(format!("cannot read {matrix}: {e}")))?;
            let a = MatrixFile::from_json(&text)?;
            let report = magnus_report(&a, n)?;
            if json {
                let v = json!({
                    "truncation": n,
                    "dimension": a.dim(),
                    "omega": lambda_json(&report.omega),
                    "exp_round_trip": report.exp_round_trip,
                    "relation_holds": report.relation_holds,
                });
                emit(out, v.to_string())?;
            } else {
                emit(
                    out,
                    format!(
                        "A = {a}\nΩ = log X to λ-order {n}:\n{}\nexp(Ω) = X: {}\nmagnus relation: {}",
                        lambda_text(&report.omega),
                        report.exp_round_trip,
                        if report.relation_holds { "holds" } else { "FAILS" }
                    ),
                )?;
            }
            if check && !(report.relation_holds && report.exp_round_trip) {
                return Ok(EXIT_MATH);
            }
        }
        Command::Verify {
            suite,
            max_degree,
            seed,
            json,
        } => {
            let n = check_truncation(max_degree)?;
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse().map_err(|e: logderiv_core::Error| CliError::Usage(e.to_string()))?]
            };
            let outcomes = run_suites(&suites, &VerifyConfig { max_degree: n, seed });
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if json {
                let v = json!({
                    "max_degree": n,
                    "seed": seed,
                    "checks": outcomes,
                    "failed": failed,
                });
                emit(out, v.to_string())?;
            } else {
                for o in &outcomes {
                    let status = if o.passed { "PASS" } else { "FAIL" };
                    emit(out, format!("{status} {}/{}: {}", o.suite, o.name, o.detail))?;
                }
                emit(out, format!("{} checks, {failed} failed", outcomes.len()))?;
            }
            if failed > 0 {
                return Ok(EXIT_MATH);
            }
        }
    }
    Ok(EXIT_OK)
}
