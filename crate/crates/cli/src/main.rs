//! Command-line surface for the exact eight-vertex engine.
//!
//! Every invocation prints one JSON or plain-text document and exits 0
//! only if all checks it ran passed; 1 means a check failed, 2 means the
//! invocation itself was invalid. Output is deterministic for fixed
//! arguments: keys are sorted, orderings are canonical, and nothing is
//! timestamped.

mod commands;
mod edges;

use clap::{Parser, Subcommand, ValueEnum};
use f2vertex::model::MatrixClass;
use serde_json::Value;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "f2vertex",
    version,
    about = "Exact correlation engine for a three-dimensional eight-vertex model over the two-element field"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for parallel scans (default: all cores)
    #[arg(long, global = true, value_name = "K")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a vertex matrix and print its derived structure
    Analyze {
        /// Row-major 9-character binary encoding, e.g. 011001101
        matrix: String,
    },
    /// Print the ghost transform G and its inverse B at a level
    Transform {
        matrix: String,
        /// Recursion level; the lattice side is 2^n
        #[arg(short)]
        n: usize,
        /// Raise the built-in level cap (the transform grows as 16^n)
        #[arg(long, value_name = "CAP")]
        max_n_override: Option<usize>,
    },
    /// Probability that the given face-1 spins are all zero
    Correlate {
        matrix: String,
        /// Recursion level; coordinates run over 0..2^n
        #[arg(short)]
        n: usize,
        /// Edges as b2,b3 pairs: "(0,0),(2,0)", "0,0;2,0" or 0b-binary
        #[arg(long)]
        edges: String,
        /// Also run the independent counting oracle and compare
        #[arg(long)]
        oracle: bool,
        /// Also evaluate the closed-form prediction and compare
        #[arg(long)]
        predictor: bool,
        /// Raise the built-in level cap
        #[arg(long, value_name = "CAP")]
        max_n_override: Option<usize>,
    },
    /// Run a verification suite: directsum, fourier, lemmas, theorem, classes
    Verify {
        suite: String,
        /// Level for the theorem suite (default 2); maximum level for the
        /// lemma suite (default 4); ignored elsewhere
        #[arg(short)]
        n: Option<usize>,
    },
    /// Summarize correlations across a class: twelve, twenty-six, other, delta-zero
    Scan {
        class: String,
        /// Recursion level (default 2 for the named classes, 1 for other)
        #[arg(short)]
        n: Option<usize>,
    },
}

fn parse_class(input: &str) -> Result<MatrixClass, String> {
    let normalized: String = input
        .to_ascii_lowercase()
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect();
    match normalized.as_str() {
        "twelve" | "12" => Ok(MatrixClass::TwelveClass),
        "twentysix" | "26" => Ok(MatrixClass::TwentySixClass),
        "other" => Ok(MatrixClass::Other),
        "deltazero" | "degenerate" => Ok(MatrixClass::DeltaZero),
        _ => Err(format!(
            "unknown class {input:?}; expected twelve, twenty-six, other or delta-zero"
        )),
    }
}

fn scalar_repr(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// `[a, b, c]` for an all-scalar array that fits on one line.
fn inline_array(v: &Value) -> Option<String> {
    let Value::Array(items) = v else { return None };
    let reprs = items.iter().map(scalar_repr).collect::<Option<Vec<_>>>()?;
    if reprs.iter().map(String::len).sum::<usize>() + 2 * reprs.len() <= 72 {
        Some(format!("[{}]", reprs.join(", ")))
    } else {
        None
    }
}

/// Plain-text rendering: one `key: value` line per scalar, indented
/// blocks for nesting, arrays inline when they stay short.
fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                if let Some(s) = scalar_repr(val) {
                    out.push_str(&format!("{pad}{key}: {s}\n"));
                    continue;
                }
                if let Some(line) = inline_array(val) {
                    out.push_str(&format!("{pad}{key}: {line}\n"));
                    continue;
                }
                if let Value::Array(items) = val {
                    if let Some(reprs) =
                        items.iter().map(scalar_repr).collect::<Option<Vec<_>>>()
                    {
                        out.push_str(&format!("{pad}{key}:\n"));
                        for r in reprs {
                            out.push_str(&format!("{pad}  {r}\n"));
                        }
                        continue;
                    }
                }
                out.push_str(&format!("{pad}{key}:\n"));
                write_value(out, val, indent + 1);
            }
        }
        Value::Array(items) => {
            for item in items {
                if let Some(s) = scalar_repr(item) {
                    out.push_str(&format!("{pad}- {s}\n"));
                } else if let Some(line) = inline_array(item) {
                    out.push_str(&format!("{pad}- {line}\n"));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_value(out, item, indent + 1);
                }
            }
        }
        scalar => {
            if let Some(s) = scalar_repr(scalar) {
                out.push_str(&format!("{pad}{s}\n"));
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // a failure here only means a pool already exists, which is fine
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let outcome = match &cli.command {
        Command::Analyze { matrix } => commands::analyze(matrix),
        Command::Transform {
            matrix,
            n,
            max_n_override,
        } => commands::transform(matrix, *n, *max_n_override),
        Command::Correlate {
            matrix,
            n,
            edges,
            oracle,
            predictor,
            max_n_override,
        } => commands::correlate(matrix, *n, edges, *oracle, *predictor, *max_n_override),
        Command::Verify { suite, n } => commands::verify(suite, *n),
        Command::Scan { class, n } => {
            parse_class(class).and_then(|c| commands::scan(c, *n))
        }
    };
    match outcome {
        Ok((value, passed)) => {
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"))
                }
                Format::Text => {
                    let mut text = String::new();
                    write_value(&mut text, &value, 0);
                    print!("{text}");
                }
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
