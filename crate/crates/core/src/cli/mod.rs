//! Command-line front end: JSON input documents, command dispatch, reports
//! and the built-in corpus.

mod corpus;
mod input;
mod report;
mod run;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use corpus::{check_document, corpus, corpus_entry, corpus_names, run_example, ExampleRun, Mismatch};
pub use input::{
    parse_input, AffineSpec, Expectation, GeneratorSpec, InputDocument, Kind, Model, TermSpec, WitnessSpec,
};
pub use report::{Report, ToJson};
pub use run::{run, Command, Flags};

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "germ-forge", version, about = "Exact computations with groups of germ jets over cyclotomic fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Longest word tried when searching for conjugacy witnesses.
    #[arg(long, global = true, default_value_t = crate::groupkit::DEFAULT_WORD_BOUND)]
    pub witness_bound: usize,
    /// Largest group the closure enumeration will build.
    #[arg(long, global = true, default_value_t = crate::groupkit::DEFAULT_CLOSURE_CAP)]
    pub closure_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Override the document's truncation order.
    #[arg(long, global = true)]
    pub truncation: Option<u32>,
    /// Expand search levels in parallel (same results, different speed).
    #[arg(long, global = true)]
    pub parallel: bool,
}

impl GlobalArgs {
    pub fn flags(&self) -> Flags {
        Flags {
            witness_bound: self.witness_bound,
            closure_cap: self.closure_cap,
            truncation: self.truncation,
            parallel: self.parallel,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Product condition and pairwise conjugacy of the generators.
    CheckBasicSet { file: Option<PathBuf> },
    /// Resonances of the eigenvalues up to the truncation order.
    Resonances { file: Option<PathBuf> },
    /// Poincaré–Dulac normal form of one generator.
    Normalize {
        #[arg(long)]
        generator: String,
        file: Option<PathBuf>,
    },
    /// Simultaneous linearization of the generators.
    Linearize { file: Option<PathBuf> },
    /// Enumerate the generated group up to the closure cap.
    Closure { file: Option<PathBuf> },
    /// Order of a word in the generators, e.g. "f1^4*f5*f1".
    Order {
        #[arg(long)]
        element: String,
        file: Option<PathBuf>,
    },
    /// Affine conjugacy criterion, from an `affine` block or the lowest
    /// nonlinear degree of the generators.
    Keylemma { file: Option<PathBuf> },
    /// Finite cyclic holonomy check for Möbius generators.
    MoebiusHolonomy { file: Option<PathBuf> },
    /// Built-in documents.
    Examples {
        #[command(subcommand)]
        action: ExamplesCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExamplesCmd {
    List,
    Run { name: String },
    /// Print the JSON document of an entry.
    Show { name: String },
}

fn read_document(file: &Option<PathBuf>) -> Result<InputDocument, Error> {
    let text = match file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Input(format!("stdin: {e}")))?;
            s
        }
    };
    parse_input(&text)
}

fn emit(out: &mut dyn Write, report: &Report, format: Format) {
    let text = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
    };
    let _ = out.write_all(text.as_bytes());
}

/// Runs a parsed command line, writing to `out` and `err`; returns the exit
/// code.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let flags = cli.global.flags();
    let format = cli.global.format;
    let (cmd, file) = match &cli.command {
        Cmd::Examples { action } => return examples(action, &flags, format, out, err),
        Cmd::CheckBasicSet { file } => (Command::CheckBasicSet, file),
        Cmd::Resonances { file } => (Command::Resonances, file),
        Cmd::Normalize { generator, file } => (
            Command::Normalize {
                generator: generator.clone(),
            },
            file,
        ),
        Cmd::Linearize { file } => (Command::Linearize, file),
        Cmd::Closure { file } => (Command::Closure, file),
        Cmd::Order { element, file } => (
            Command::Order {
                element: element.clone(),
            },
            file,
        ),
        Cmd::Keylemma { file } => (Command::Keylemma, file),
        Cmd::MoebiusHolonomy { file } => (Command::MoebiusHolonomy, file),
    };
    let report = read_document(file).and_then(|doc| run(&cmd, &doc, &flags));
    match report {
        Ok(r) => {
            emit(out, &r, format);
            if r.limit_reached {
                EXIT_LIMIT
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn examples(action: &ExamplesCmd, flags: &Flags, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match action {
        ExamplesCmd::List => {
            for (name, doc) in corpus() {
                let _ = writeln!(out, "{name:20} {}", doc.description.as_deref().unwrap_or(""));
            }
            EXIT_OK
        }
        ExamplesCmd::Show { name } => match corpus_entry(name) {
            Ok(doc) => {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("document serializes"));
                EXIT_OK
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_INPUT
            }
        },
        ExamplesCmd::Run { name } => {
            let start = Instant::now();
            match run_example(name, flags) {
                Ok(r) => {
                    let summary = r.summary(start.elapsed().as_millis() as u64);
                    match format {
                        Format::Json => emit(out, &summary, format),
                        Format::Text => {
                            for sub in &r.reports {
                                emit(out, sub, format);
                                let _ = writeln!(out);
                            }
                            for m in &r.mismatches {
                                let _ = writeln!(
                                    out,
                                    "MISMATCH {} {}: expected {}, got {}",
                                    m.command,
                                    m.key,
                                    m.expected,
                                    m.actual.as_deref().unwrap_or("nothing")
                                );
                            }
                            let _ = writeln!(out, "{name}: {}", if r.matched() { "match" } else { "mismatch" });
                        }
                    }
                    if r.matched() {
                        EXIT_OK
                    } else {
                        EXIT_MISMATCH
                    }
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_INPUT
                }
            }
        }
    }
}
