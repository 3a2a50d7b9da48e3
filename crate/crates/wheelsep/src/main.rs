use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wheelsep::document::{render_dot, GraphDocument, ResultDocument};
use wheelsep::generate::{generate_graph, GenSpec};
use wheelsep::minor::DEFAULT_ORACLE_CAP;
use wheelsep::pipeline::{fan_separator, separator, verify_result, PipelineResult};
use wheelsep::Error;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_WITNESS: u8 = 3;
const EXIT_VERIFY_FAILED: u8 = 4;

/// Certified balanced separators in graphs excluding a wheel or fan as an
/// induced minor.
#[derive(Parser)]
#[command(name = "wheelsep", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a balanced separator certificate, or an induced-minor witness
    /// when the wheel/fan hypothesis fails. Exit 0 on certificate, 3 on
    /// witness.
    Separate {
        /// Excluded pattern size: wheel W_ell (>= 3) or, with --fan, fan F_ell (>= 2).
        #[arg(long)]
        ell: u32,
        /// Graph document (JSON).
        #[arg(long)]
        input: PathBuf,
        /// Exclude the fan instead of the wheel.
        #[arg(long)]
        fan: bool,
        /// Result document destination; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Re-verify a result document against its graph. Exit 0 on pass, 4 on fail.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        result: PathBuf,
        #[arg(long)]
        ell: u32,
    },
    /// Generate a seeded instance and write its graph document.
    Gen {
        /// One of: sp, filtered, cobweb.
        #[arg(long)]
        kind: String,
        /// Vertex count (sp, filtered).
        #[arg(long)]
        n: Option<u32>,
        /// Cycle length (cobweb).
        #[arg(long)]
        m: Option<u32>,
        /// Independent-vertex count (cobweb).
        #[arg(long)]
        k: Option<u32>,
        /// Wheel size to exclude (filtered).
        #[arg(long)]
        ell: Option<u32>,
        /// Edge probability NUM/DEN (filtered; default 1/2).
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        seed: u64,
        /// Graph document destination; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Export Graphviz DOT, double-circling separator vertices and filling
    /// dominators from a certificate document.
    ExportDot {
        #[arg(long)]
        input: PathBuf,
        /// Certificate document to highlight.
        #[arg(long)]
        highlight: Option<PathBuf>,
        #[arg(long)]
        output: PathBuf,
    },
}

enum AppError {
    Usage(String),
    Internal(String),
}

impl From<Error> for AppError {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            AppError::Internal(e.to_string())
        } else {
            AppError::Usage(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(AppError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| AppError::Usage(format!("{}: malformed JSON: {e}", path.display())))
}

fn write_text(path: Option<&Path>, text: &str) -> Result<(), AppError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| AppError::Usage(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn oracle_cap() -> usize {
    std::env::var("WHEELSEP_ORACLE_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

fn parse_prob(s: &str) -> Result<(u64, u64), AppError> {
    let err = || AppError::Usage(format!("edge probability must be NUM/DEN, got {s:?}"));
    let (num, den) = s.split_once('/').ok_or_else(err)?;
    let num: u64 = num.trim().parse().map_err(|_| err())?;
    let den: u64 = den.trim().parse().map_err(|_| err())?;
    if den == 0 || num > den {
        return Err(AppError::Usage(format!(
            "edge probability must lie in [0, 1], got {s:?}"
        )));
    }
    Ok((num, den))
}

fn dispatch(cli: Cli) -> Result<u8, AppError> {
    match cli.command {
        Command::Separate { ell, input, fan, output } => {
            let doc: GraphDocument = read_json(&input)?;
            let g = doc.to_graph()?;
            let w = doc.weighting(&g)?;
            let result = if fan {
                fan_separator(&g, &w, ell)?
            } else {
                separator(&g, &w, ell)?
            };
            let out = ResultDocument::from_result(&result, ell);
            let text = serde_json::to_string_pretty(&out)
                .map_err(|e| AppError::Internal(e.to_string()))?;
            write_text(output.as_deref(), &text)?;
            Ok(match result {
                PipelineResult::Certificate(_) => EXIT_OK,
                PipelineResult::Witness(_) => EXIT_WITNESS,
            })
        }
        Command::Verify { input, result, ell } => {
            let doc: GraphDocument = read_json(&input)?;
            let g = doc.to_graph()?;
            let w = doc.weighting(&g)?;
            let rdoc: ResultDocument = read_json(&result)?;
            let (parsed, _) = rdoc.to_result()?;
            match verify_result(&g, &w, &parsed, ell)? {
                true => Ok(EXIT_OK),
                false => Ok(EXIT_VERIFY_FAILED),
            }
        }
        Command::Gen { kind, n, m, k, ell, p, seed, output } => {
            let need = |opt: Option<u32>, name: &str| {
                opt.ok_or_else(|| AppError::Usage(format!("--{name} is required for this kind")))
            };
            let spec = match kind.as_str() {
                "sp" => GenSpec::SeriesParallel { n: need(n, "n")?, seed },
                "filtered" => GenSpec::Filtered {
                    n: need(n, "n")?,
                    ell: need(ell, "ell")?,
                    edge_prob: match p {
                        Some(s) => parse_prob(&s)?,
                        None => (1, 2),
                    },
                    seed,
                },
                "cobweb" => GenSpec::Cobweb { m: need(m, "m")?, k: need(k, "k")?, seed },
                other => {
                    return Err(AppError::Usage(format!(
                        "unknown kind {other:?}; expected sp, filtered, or cobweb"
                    )))
                }
            };
            let g = generate_graph(&spec, oracle_cap())?;
            let doc = GraphDocument::from_graph(&g, None);
            let text = serde_json::to_string_pretty(&doc)
                .map_err(|e| AppError::Internal(e.to_string()))?;
            write_text(output.as_deref(), &text)?;
            Ok(EXIT_OK)
        }
        Command::ExportDot { input, highlight, output } => {
            let doc: GraphDocument = read_json(&input)?;
            doc.to_graph()?; // validate before drawing
            let cert = match highlight {
                None => None,
                Some(path) => {
                    let rdoc: ResultDocument = read_json(&path)?;
                    match rdoc.to_result()?.0 {
                        PipelineResult::Certificate(c) => Some(c),
                        PipelineResult::Witness(_) => {
                            return Err(AppError::Usage(
                                "highlight document must be a certificate".into(),
                            ))
                        }
                    }
                }
            };
            let dot = render_dot(&doc, cert.as_ref());
            write_text(Some(&output), &dot)?;
            Ok(EXIT_OK)
        }
    }
}
