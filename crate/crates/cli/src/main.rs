//! `fullfield`: command-line front end for the verification suites.
//!
//! Exit codes: `0` all checks pass, `1` usage error, `2` unreadable or
//! malformed input, `3` a verification check failed.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fullfield_core::diagonal_frobenius::{
    build_diagonal_algebra_with, verify_all, FfaError, FfaFile, FullFieldAlgebraData, PairingCrossing,
};
use fullfield_core::fusion_data::{builtin_category_exact, load_category, verify_coherence, Builtin, CategoryData};
use fullfield_core::graphcalc::{verify_fusing_symmetries, verify_operator_calculus, verify_rigidity};
use fullfield_core::sewing_operad::{geometric_sew_oracle, sew, verify_operad_axioms, KHatLiteral};
use fullfield_core::{emit_report, Format, GaussQ, Report, Scalar, C64};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("verification failed")]
    Failed,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "fullfield", version, about = "Verification suites for modular tensor category data and the diagonal full field algebra")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Residual tolerance; a check passes when its residual is strictly below it.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Write the output to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    /// Number of randomized trials.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Master seed for randomized checks.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Use exact Gaussian-rational arithmetic.
    #[arg(long, global = true)]
    exact: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OutFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pentagon and hexagon residuals of a category.
    VerifyCategory {
        /// `builtin:<name>` or a path to a category JSON file.
        category: String,
    },
    /// Build the diagonal algebra and write it as JSON.
    BuildFfa {
        /// `builtin:<name>` or a path to a category JSON file.
        category: String,
    },
    /// Verify the diagonal algebra axioms.
    VerifyFfa {
        /// `builtin:<name>` or a path to a category JSON file.
        category: String,
        /// Algebra JSON written by `build-ffa`; rebuilt from the category if absent.
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
    /// The four zigzag identities by diagram and by fusing expansion.
    Rigidity {
        /// `builtin:<name>` or a path to a category JSON file.
        category: String,
    },
    /// Fusing-matrix symmetries, the F_a identities and the vertex operator calculus.
    FusingSymmetries {
        /// `builtin:<name>` or a path to a category JSON file.
        category: String,
    },
    /// Randomized operad suite, or a single sewing when `--sew` is given.
    OperadCheck {
        /// JSON `{"p": {...}, "i": k, "q": {...}}` with element literals
        /// `{"z": [[re, im], ...], "a": [re, im], "a0": [[re, im], ...]}`,
        /// inline or as a file path.
        #[arg(long)]
        sew: Option<String>,
    },
}

/// Either a report or a raw JSON document.
enum Output {
    Report(Report),
    Document { json: String, text: String },
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load<S: Scalar>(source: &str) -> Result<CategoryData<S>, CliError> {
    match source.strip_prefix("builtin:") {
        Some(name) => {
            let b = Builtin::from_str(name).map_err(|e| CliError::Input(e.to_string()))?;
            builtin_category_exact(b).map_err(|e| CliError::Input(format!("{name}: {e}")))
        }
        None => load_category(source).map_err(|e| CliError::Input(format!("{source}: {e}"))),
    }
}

fn ffa_input_error(e: FfaError) -> CliError {
    CliError::Input(e.to_string())
}

fn run_category<S: Scalar>(cmd: &Command, opts: &GlobalOpts) -> Result<Output, CliError> {
    let tol = opts.tol;
    match cmd {
        Command::VerifyCategory { category } => Ok(Output::Report(verify_coherence(&load::<S>(category)?, tol))),
        Command::Rigidity { category } => Ok(Output::Report(verify_rigidity(&load::<S>(category)?, tol))),
        Command::FusingSymmetries { category } => {
            let data = load::<S>(category)?;
            let mut rep = Report::new("fusing_symmetries", tol);
            rep.merge(verify_fusing_symmetries(&data, tol));
            rep.merge(verify_operator_calculus(&data, tol));
            Ok(Output::Report(rep))
        }
        Command::BuildFfa { category } => {
            let data = load::<S>(category)?;
            let coherence = verify_coherence(&data, tol);
            if !coherence.pass {
                return Ok(Output::Report(coherence));
            }
            let alg = build_diagonal_algebra_with(&data, PairingCrossing::CHOSEN).map_err(ffa_input_error)?;
            let file = alg.to_file();
            let json = serde_json::to_string_pretty(&file).map_err(|e| CliError::Input(e.to_string()))? + "\n";
            let text = format!(
                "diagonal algebra over {} labels: {} multiplication entries, crossing {:?}\n",
                file.labels.len(),
                file.mult.len(),
                file.crossing
            );
            Ok(Output::Document { json, text })
        }
        Command::VerifyFfa { category, algebra } => {
            let data = load::<S>(category)?;
            let coherence = verify_coherence(&data, tol);
            if !coherence.pass {
                return Ok(Output::Report(coherence));
            }
            let alg = match algebra {
                Some(path) => {
                    let file: FfaFile =
                        serde_json::from_str(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    FullFieldAlgebraData::from_file(&data, &file).map_err(ffa_input_error)?
                }
                None => build_diagonal_algebra_with(&data, PairingCrossing::CHOSEN).map_err(ffa_input_error)?,
            };
            Ok(Output::Report(verify_all(&alg, tol, opts.seed)))
        }
        Command::OperadCheck { .. } => unreachable!("dispatched separately"),
    }
}

#[derive(Deserialize)]
struct SewRequest {
    p: KHatLiteral,
    i: usize,
    q: KHatLiteral,
}

fn run_operad(sew_arg: Option<&str>, opts: &GlobalOpts) -> Result<Output, CliError> {
    let Some(arg) = sew_arg else {
        let rep = if opts.exact {
            verify_operad_axioms::<GaussQ>(opts.trials, opts.seed, opts.tol, true)
        } else {
            verify_operad_axioms::<C64>(opts.trials, opts.seed, opts.tol, false)
        };
        return Ok(Output::Report(rep));
    };
    let text = if arg.trim_start().starts_with('{') { arg.to_string() } else { read_text(Path::new(arg))? };
    let req: SewRequest = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("sew request: {e}")))?;
    let p = req.p.to_element::<C64>().map_err(|e| CliError::Input(e.to_string()))?;
    let q = req.q.to_element::<C64>().map_err(|e| CliError::Input(e.to_string()))?;
    let formula = sew(&p, req.i, &q).map_err(|e| CliError::Input(e.to_string()))?;
    let oracle = geometric_sew_oracle(&p, req.i, &q).map_err(|e| CliError::Input(e.to_string()))?;
    let mut rep = Report::new("sew", opts.tol);
    rep.push("sew_vs_oracle", format!("i={}", req.i), formula.distance(&oracle));
    let doc = serde_json::json!({
        "result": KHatLiteral::from_element(&formula),
        "oracle": KHatLiteral::from_element(&oracle),
        "report": rep,
    });
    let json = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Input(e.to_string()))? + "\n";
    let text = format!(
        "sewn element: z = {:?}, a = {:?}, a0 = {:?}\n{}",
        formula.z,
        formula.a,
        formula.a0,
        emit_report(&rep, Format::Text)
    );
    if !rep.pass {
        write_output(&json, &text, opts)?;
        return Err(CliError::Failed);
    }
    Ok(Output::Document { json, text })
}

fn write_output(json: &str, text: &str, opts: &GlobalOpts) -> Result<(), CliError> {
    let body = match opts.format {
        OutFormat::Json => json,
        OutFormat::Text => text,
    };
    match &opts.out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let opts = &cli.opts;
    let start = Instant::now();
    let output = match &cli.command {
        Command::OperadCheck { sew } => run_operad(sew.as_deref(), opts)?,
        cmd if opts.exact => run_category::<GaussQ>(cmd, opts)?,
        cmd => run_category::<C64>(cmd, opts)?,
    };
    let elapsed = start.elapsed().as_secs_f64();
    match output {
        Output::Report(rep) => {
            let json = emit_report(&rep, Format::Json);
            let text = format!("{}wall time: {elapsed:.3} s\n", emit_report(&rep, Format::Text));
            write_output(&json, &text, opts)?;
            if rep.pass {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
        Output::Document { json, text } => write_output(&json, &text, opts),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Failed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.code())
        }
    }
}
