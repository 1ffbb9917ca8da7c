//! The `treegram` command line.
//!
//! Exit status: 0 success (or equal), 1 valid but unequal, 2 validation,
//! precondition or usage failure, 3 I/O or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::derive::{
    cftg_enumerate_with, show_word, tag_enumerate_with, Bounds, DEFAULT_MAX_STEPS,
};
use crate::equiv::{bounded_string_language_with, check_weak_equiv_with, StringOptions};
use crate::grammar::format::{parse_grammar, print_grammar_with_notes, FormatError};
use crate::grammar::{Grammar, GrammarKind};
use crate::transform::{conversion_chain, convert};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNEQUAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Differences listed per side by `equiv`.
const SHOWN_DIFFERENCES: usize = 20;

#[derive(Debug, Parser)]
#[command(
    name = "treegram",
    version,
    about = "Tree grammars: validate, convert, enumerate, compare"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a grammar file and report the first problem.
    Validate { file: PathBuf },
    /// Translate a grammar into another formalism.
    Convert {
        file: PathBuf,
        /// Target formalism: cfg, cftg, rtg or tag.
        #[arg(long = "to", value_name = "KIND")]
        to: GrammarKind,
        /// Write the result here instead of standard output.
        #[arg(short = 'o', value_name = "FILE")]
        out: Option<PathBuf>,
        /// Refuse conversions that need more than one translation.
        #[arg(long)]
        single_step: bool,
    },
    /// List the trees or strings a grammar generates within bounds.
    Enumerate {
        file: PathBuf,
        /// List derived trees (the default for tree grammars).
        #[arg(long, conflicts_with = "strings")]
        trees: bool,
        /// List strings (the default for cfg).
        #[arg(long)]
        strings: bool,
        /// Longest string listed [default: 10 for strings, the tree size for trees].
        #[arg(long, value_name = "N")]
        max_len: Option<usize>,
        /// Largest tree listed; with --strings, overrides the derived tree-size bound [default: 20].
        #[arg(long, value_name = "N")]
        max_size: Option<usize>,
        /// Derivation levels explored before giving up.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        /// Print one JSON object instead of one item per line.
        #[arg(long)]
        json: bool,
        /// Threads used for the search; the output does not depend on it.
        #[arg(long, value_name = "N", default_value_t = 1)]
        workers: usize,
    },
    /// Compare the string languages of two grammars up to a length.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        /// Longest string compared.
        #[arg(long, value_name = "N")]
        max_len: usize,
        /// Tree-size bound used instead of the one derived from --max-len.
        #[arg(long, value_name = "N")]
        tree_size: Option<usize>,
        /// Derivation levels explored before giving up.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
        /// Print one JSON object.
        #[arg(long)]
        json: bool,
        /// Threads used for the search; the output does not depend on it.
        #[arg(long, value_name = "N", default_value_t = 1)]
        workers: usize,
    },
}

const DEFAULT_MAX_SIZE: usize = 20;
const DEFAULT_MAX_LEN: usize = 10;

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let sink: &mut dyn Write = if informational { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if informational { EXIT_OK } else { EXIT_INVALID };
        }
    };
    let result = match cli.command {
        Command::Validate { file } => validate(&file, out),
        Command::Convert {
            file,
            to,
            out: target,
            single_step,
        } => convert_cmd(&file, to, target.as_deref(), single_step, out, err),
        Command::Enumerate {
            file,
            trees,
            strings,
            max_len,
            max_size,
            max_steps,
            json,
            workers,
        } => enumerate(
            &file,
            EnumerateArgs {
                trees,
                strings,
                max_len,
                max_size,
                max_steps,
                json,
                workers,
            },
            out,
            err,
        ),
        Command::Equiv {
            left,
            right,
            max_len,
            tree_size,
            max_steps,
            json,
            workers,
        } => {
            let opts = StringOptions {
                max_len,
                tree_size,
                max_steps,
                workers: workers.max(1),
            };
            equiv(&left, &right, &opts, json, out, err)
        }
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &Path) -> Result<Grammar, Failure> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_IO, format!("cannot read {}: {e}", path.display())))?;
    parse_grammar(&src).map_err(|e| match e {
        FormatError::Syntax(p) => Failure::new(EXIT_IO, format!("{}:{p}", path.display())),
        FormatError::Invalid(g) => Failure::new(EXIT_INVALID, format!("{}: {g}", path.display())),
    })
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::new(EXIT_IO, format!("write failed: {e}"))
}

fn validate(file: &Path, out: &mut dyn Write) -> Outcome {
    let g = load(file)?;
    writeln!(out, "OK ({})", g.kind()).map_err(io_failure)?;
    Ok(EXIT_OK)
}

fn convert_cmd(
    file: &Path,
    to: GrammarKind,
    target: Option<&Path>,
    single_step: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let g = load(file)?;
    let via = conversion_chain(&g, to);
    let t = convert(&g, to, single_step).map_err(|e| Failure::new(EXIT_INVALID, e.to_string()))?;
    if !via.is_empty() {
        let chain: Vec<String> = std::iter::once(g.kind())
            .chain(via)
            .chain([to])
            .map(|k| k.to_string())
            .collect();
        let _ = writeln!(err, "converted via {}", chain.join(" -> "));
    }
    let mut notes = vec![format!("converted from {} ({})", file.display(), g.kind())];
    notes.extend(t.notes);
    let text = print_grammar_with_notes(&t.grammar, &notes);
    match target {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::new(EXIT_IO, format!("cannot write {}: {e}", p.display())))?,
        None => out.write_all(text.as_bytes()).map_err(io_failure)?,
    }
    Ok(EXIT_OK)
}

struct EnumerateArgs {
    trees: bool,
    strings: bool,
    max_len: Option<usize>,
    max_size: Option<usize>,
    max_steps: usize,
    json: bool,
    workers: usize,
}

fn positive(name: &str, v: usize) -> Result<usize, Failure> {
    if v == 0 {
        Err(Failure::new(
            EXIT_INVALID,
            format!("{name} must be positive"),
        ))
    } else {
        Ok(v)
    }
}

fn enumerate(file: &Path, a: EnumerateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let g = load(file)?;
    let max_steps = positive("--max-steps", a.max_steps)?;
    let workers = a.workers.max(1);
    let want_strings = a.strings || (!a.trees && g.kind() == GrammarKind::Cfg);
    if !want_strings && g.kind() == GrammarKind::Cfg {
        return Err(Failure::new(
            EXIT_INVALID,
            "a string grammar has no tree language",
        ));
    }

    let (lines, json) = if want_strings {
        let max_len = positive("--max-len", a.max_len.unwrap_or(DEFAULT_MAX_LEN))?;
        let opts = StringOptions {
            max_len,
            tree_size: a.max_size.map(|s| positive("--max-size", s)).transpose()?,
            max_steps,
            workers,
        };
        let lang = bounded_string_language_with(&g, &opts);
        if !lang.is_complete() {
            let _ = writeln!(
                err,
                "warning: enumeration incomplete, bounds cut the search short"
            );
        }
        let lines: Vec<String> = lang.iter().map(show_word).collect();
        let mut json = lang.to_json();
        json["items"] = lines.clone().into();
        (lines, json)
    } else {
        let max_size = positive("--max-size", a.max_size.unwrap_or(DEFAULT_MAX_SIZE))?;
        let bounds = Bounds {
            max_tree_size: max_size,
            max_steps,
            max_string_len: positive("--max-len", a.max_len.unwrap_or(max_size))?,
        };
        let (lines, json, complete): (Vec<String>, _, bool) = match &g {
            Grammar::Cftg(c) => {
                let l = cftg_enumerate_with(c, bounds, workers);
                (
                    l.iter().map(ToString::to_string).collect(),
                    l.to_json(),
                    l.is_complete(),
                )
            }
            Grammar::Rtg(r) => {
                let l = cftg_enumerate_with(r.as_cftg(), bounds, workers);
                (
                    l.iter().map(ToString::to_string).collect(),
                    l.to_json(),
                    l.is_complete(),
                )
            }
            Grammar::Tag(t) => {
                let l = tag_enumerate_with(t, bounds, workers).trees;
                (
                    l.iter().map(ToString::to_string).collect(),
                    l.to_json(),
                    l.is_complete(),
                )
            }
            Grammar::Cfg(_) => unreachable!("handled above"),
        };
        if !complete {
            let _ = writeln!(err, "warning: enumeration incomplete, step limit reached");
        }
        (lines, json)
    };

    if a.json {
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&json).expect("json value")
        )
        .map_err(io_failure)?;
    } else {
        for l in lines {
            writeln!(out, "{l}").map_err(io_failure)?;
        }
    }
    Ok(EXIT_OK)
}

fn equiv(
    left: &Path,
    right: &Path,
    opts: &StringOptions,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let l = load(left)?;
    let r = load(right)?;
    positive("--max-len", opts.max_len)?;
    positive("--max-steps", opts.max_steps)?;
    if let Some(s) = opts.tree_size {
        positive("--tree-size", s)?;
    }
    let report = check_weak_equiv_with(&l, &r, opts);
    if json {
        let text =
            serde_json::to_string_pretty(&report.to_json(SHOWN_DIFFERENCES)).expect("json value");
        writeln!(out, "{text}").map_err(io_failure)?;
    } else {
        let verdict = if report.equal { "equal" } else { "not equal" };
        writeln!(out, "{verdict} up to {}", report.bound).map_err(io_failure)?;
        for (side, diff) in [
            ("left", &report.only_in_left),
            ("right", &report.only_in_right),
        ] {
            if diff.is_empty() {
                continue;
            }
            writeln!(out, "only in {side} ({}):", diff.len()).map_err(io_failure)?;
            for w in diff.iter().take(SHOWN_DIFFERENCES) {
                writeln!(out, "  {}", show_word(w)).map_err(io_failure)?;
            }
        }
    }
    for (side, complete) in [
        ("left", report.left_complete),
        ("right", report.right_complete),
    ] {
        if !complete {
            let _ = writeln!(
                err,
                "warning: {side} enumeration incomplete, the verdict is not a certificate"
            );
        }
    }
    Ok(if report.equal { EXIT_OK } else { EXIT_UNEQUAL })
}
