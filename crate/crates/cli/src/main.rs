//! `fpp`: command-line front end for the verifier.
//!
//! Exit codes: 0 pass, 1 fail, 2 inconclusive, 3 usage or configuration error.

use std::fmt::Write as _;
use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fpp_core::corpus::{embedded_corpus, parse_corpus};
use fpp_core::expr::parse_constant;
use fpp_core::verify::{
    betti_numbers, calibrate_ambiguous, calibrate_entry, fixed_point_check, hilbert_function, invariance_certificate,
    run_all, CalibrationResult, RunConfig, Status,
};
use fpp_core::{EquationCorpus, ModularEmbedding, Monomial, Parallelism};
use serde::Serialize;

const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "fpp", version, about = "Exact verification of the 84-cubic surface in P^9")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Prime for the modular rank computations.
    #[arg(long, global = true, env = "FPP_PRIME", default_value_t = 263)]
    prime: u64,

    /// Image of t = i*sqrt(7) mod p; must square to -7. Defaults to the smaller root.
    #[arg(long, global = true, env = "FPP_ROOT")]
    root: Option<u64>,

    /// Highest Hilbert degree checked (default 5, 6 with --deep; 4 for calibrate).
    #[arg(long, global = true, env = "FPP_MAX_DEGREE")]
    max_degree: Option<u32>,

    /// Highest Betti step computed (default 3, 4 with --deep).
    #[arg(long, global = true, env = "FPP_MAX_BETTI")]
    max_betti: Option<usize>,

    /// Also run degree 6 and Betti step 4.
    #[arg(long, global = true, env = "FPP_DEEP")]
    deep: bool,

    /// Corpus file to use instead of the built-in one.
    #[arg(long, global = true, env = "FPP_CORPUS")]
    corpus: Option<PathBuf>,

    /// Write the output here instead of stdout.
    #[arg(long, global = true, env = "FPP_OUT")]
    out: Option<PathBuf>,

    #[arg(long, global = true, env = "FPP_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Run the eliminations on one thread.
    #[arg(long, global = true, env = "FPP_SEQUENTIAL")]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every check and emit the report.
    Verify,
    /// Corpus input and output.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Search the candidate values of the flagged coefficients of one entry.
    Calibrate {
        #[arg(long = "eq")]
        entry: usize,
        /// Monomial whose coefficient is searched, e.g. U1*U7^2.
        #[arg(long, requires = "candidates")]
        term: Option<String>,
        /// Candidate coefficients, e.g. --candidates "(-1-t)/2".
        #[arg(long, num_args = 1.., allow_hyphen_values = true, requires = "term")]
        candidates: Vec<String>,
    },
    /// Hilbert function in one degree.
    Hilbert {
        #[arg(long)]
        degree: u32,
    },
    /// Graded Betti numbers up to a step.
    Betti {
        #[arg(long)]
        step: usize,
    },
    /// Smoothness at the coordinate fixed points.
    Smooth,
    /// Group invariance certificate.
    Invariance,
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    /// Print the canonical corpus text.
    Print,
    /// Write the canonical corpus text to a file.
    Export {
        #[arg(long)]
        file: PathBuf,
    },
    /// SHA-256 of the canonical text.
    Fingerprint,
    /// Parse a corpus from a file (or stdin) and print its fingerprint.
    Import {
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

struct Output {
    body: String,
    status: Status,
}

fn exit_code(status: Status) -> u8 {
    match status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::Inconclusive => 2,
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn load_corpus(global: &GlobalArgs) -> Result<EquationCorpus, Failure> {
    match &global.corpus {
        None => Ok(embedded_corpus()),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            parse_corpus(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
        }
    }
}

fn embedding(global: &GlobalArgs) -> Result<ModularEmbedding, Failure> {
    Ok(match global.root {
        Some(r) => ModularEmbedding::with_root(global.prime, r)?,
        None => ModularEmbedding::new(global.prime)?,
    })
}

fn run_config(global: &GlobalArgs) -> Result<RunConfig, Failure> {
    let max_degree = global.max_degree.unwrap_or(if global.deep { 6 } else { 5 });
    let max_betti = global.max_betti.unwrap_or(if global.deep { 4 } else { 3 });
    if max_degree < 3 {
        return Err(Failure(format!("--max-degree must be at least 3, got {max_degree}")));
    }
    if !(1..=4).contains(&max_betti) {
        return Err(Failure(format!("--max-betti must be between 1 and 4, got {max_betti}")));
    }
    let parallelism = if global.sequential { Parallelism::Sequential } else { Parallelism::Parallel };
    Ok(RunConfig { max_degree, max_betti, parallelism, ..RunConfig::default() })
}

fn calibration_text(results: &[CalibrationResult]) -> String {
    let mut out = String::new();
    for r in results {
        writeln!(out, "eq {} term {} (current {}), degrees 3..{}:", r.entry, r.term, r.current, r.max_degree).unwrap();
        for c in &r.candidates {
            let hs: Vec<String> = c.hilbert.iter().map(|(d, h)| format!("h({d})={h}")).collect();
            writeln!(out, "  {:<6}{}: {}", if c.passes { "pass" } else { "fail" }, c.value, hs.join(" ")).unwrap();
        }
        let verdict = if r.resolved { "resolved" } else { "inconclusive" };
        writeln!(out, "  {verdict}; passing set {:?}", r.passing).unwrap();
    }
    out
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let g = &cli.global;
    let structured = g.format == Format::Structured;
    match &cli.command {
        Command::Verify => {
            let config = run_config(g)?;
            let (c, e) = (load_corpus(g)?, embedding(g)?);
            let report = run_all(&c, &e, &config)?;
            let body = if structured { report.to_structured() } else { report.to_text() };
            Ok(Output { body, status: report.verdict })
        }
        Command::Corpus { action } => {
            let body = match action {
                CorpusAction::Print => load_corpus(g)?.canonical_print(),
                CorpusAction::Export { file } => {
                    let c = load_corpus(g)?;
                    std::fs::write(file, c.canonical_print()).map_err(|e| Failure(format!("{}: {e}", file.display())))?;
                    format!("wrote {} ({})\n", file.display(), c.fingerprint())
                }
                CorpusAction::Fingerprint => format!("{}\n", load_corpus(g)?.fingerprint()),
                CorpusAction::Import { file } => {
                    let text = match file {
                        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?,
                        None => {
                            let mut s = String::new();
                            std::io::stdin().read_to_string(&mut s)?;
                            s
                        }
                    };
                    format!("{}\n", parse_corpus(&text)?.fingerprint())
                }
            };
            Ok(Output { body, status: Status::Pass })
        }
        Command::Calibrate { entry, term, candidates } => {
            let max_degree = g.max_degree.unwrap_or(4);
            if max_degree < 3 {
                return Err(Failure(format!("--max-degree must be at least 3, got {max_degree}")));
            }
            let (c, e) = (load_corpus(g)?, embedding(g)?);
            let results = match term {
                Some(term) => {
                    let mono = Monomial::parse(term).ok_or_else(|| Failure(format!("invalid monomial '{term}'")))?;
                    let values = candidates.iter().map(|s| parse_constant(s)).collect::<Result<Vec<_>, _>>()?;
                    vec![calibrate_ambiguous(&c, *entry, &mono, &values, &e, max_degree)?]
                }
                None => calibrate_entry(&c, *entry, &e, max_degree)?,
            };
            let status = if results.iter().all(|r| r.resolved) { Status::Pass } else { Status::Inconclusive };
            let body = if structured { json(&results) } else { calibration_text(&results) };
            Ok(Output { body, status })
        }
        Command::Hilbert { degree } => {
            let (c, e) = (load_corpus(g)?, embedding(g)?);
            let h = hilbert_function(&c, *degree, &e)?;
            let body = if structured {
                json(&h)
            } else {
                format!(
                    "{} hilbert d={}: h = {} (ambient {}, ideal {}), expected {}\n",
                    h.status.label(),
                    h.degree,
                    h.quotient,
                    h.ambient,
                    h.ideal_dimension,
                    h.expected
                )
            };
            Ok(Output { body, status: h.status })
        }
        Command::Betti { step } => {
            if !(1..=4).contains(step) {
                return Err(Failure(format!("--step must be between 1 and 4, got {step}")));
            }
            let config = run_config(g)?;
            let (c, e) = (load_corpus(g)?, embedding(g)?);
            let results = betti_numbers(&c, &e, *step, config.parallelism)?;
            let status = results.iter().fold(Status::Pass, |acc, r| acc.combine(r.status));
            let body = if structured {
                json(&results)
            } else {
                results
                    .iter()
                    .map(|b| {
                        format!(
                            "{} betti step {} degree {}: {} (expected {}), image {} of {}, alternating sum {} vs h = {}\n",
                            b.status.label(),
                            b.step,
                            b.degree,
                            b.betti,
                            b.expected,
                            b.image_rank,
                            b.previous_kernel,
                            b.alternating_sum,
                            b.hilbert
                        )
                    })
                    .collect()
            };
            Ok(Output { body, status })
        }
        Command::Smooth => {
            let o = fixed_point_check(&load_corpus(g)?);
            let body = if structured {
                json(&o)
            } else {
                let mut s = String::new();
                for p in &o.points {
                    let rank = p.jacobian_rank.map_or("-".to_string(), |r| r.to_string());
                    writeln!(s, "{} {}: on surface {}, Jacobian rank {rank}, witnesses {:?}", p.status.label(), p.point_label(), p.on_surface, p.witnesses).unwrap();
                }
                let ctl = &o.control;
                writeln!(s, "control {}: on surface {} (first nonvanishing eq {:?})", ctl.point_label(), ctl.on_surface, ctl.first_nonvanishing).unwrap();
                writeln!(s, "{}", o.status.label()).unwrap();
                s
            };
            Ok(Output { body, status: o.status })
        }
        Command::Invariance => {
            let o = invariance_certificate(&load_corpus(g)?);
            let body = if structured {
                json(&o)
            } else {
                format!(
                    "{} invariance: weight homogeneous {}, g3-closed {}, cubic rank {}, order(g7) = {}, order(g3) = {}, g3 g7 g3^-1 = g7^{}{}\n",
                    o.status.label(),
                    o.weight_homogeneous,
                    o.g3_closed,
                    o.degree3_rank,
                    o.g7_order,
                    o.g3_order,
                    o.conjugation_exponent.map_or("?".to_string(), |k| k.to_string()),
                    o.first_violation.as_ref().map_or(String::new(), |v| format!("; first violation: {v}"))
                )
            };
            Ok(Output { body, status: o.status })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    if cli.global.deep {
        eprintln!("warning: --deep adds degree 6 and Betti step 4, which take noticeably longer");
    }
    match execute(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.global.out {
                if let Err(e) = std::fs::write(path, &out.body) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(EXIT_USAGE);
                }
            } else {
                print!("{}", out.body);
            }
            ExitCode::from(exit_code(out.status))
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
