//! `hn`: validate, combine and project `.hn` hypernetwork files.
//!
//! Exit codes are stable: 0 success, 1 validation violations, 2 parse
//! error, 3 usage error, 4 operator error (unknown selector or boundary).
//! Output is always canonical form, so equal models mean equal bytes and
//! repeated runs are byte-identical. `-` names standard input or output.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::ArgGroup;
use clap::{Parser, Subcommand};

use hypernet::algebra::{
    difference, meet, merge, prune, split, OperatorError, PruneSelector, SplitCriterion,
};
use hypernet::axioms::is_sub_hypernetwork;
use hypernet::notation::{canonical, load};
use hypernet::testkit::{gen_valid, GenConfig};
use hypernet::{ElementId, Hypernetwork, ValidationReport};

#[derive(Parser)]
#[command(name = "hn", version, about = "Work with .hn hypernetwork models")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a file against the structural rules and print the report
    Validate {
        /// Input file, `-` for standard input
        file: String,
    },
    /// Combine two models, keeping everything from both
    Merge {
        left: String,
        right: String,
        /// Output file, `-` for standard output
        out: String,
    },
    /// Keep only the structure the two models share
    Meet {
        left: String,
        right: String,
        /// Output file, `-` for standard output
        out: String,
    },
    /// Keep only the structure unique to the left model
    Diff {
        left: String,
        right: String,
        /// Output file, `-` for standard output
        out: String,
    },
    /// Remove selected elements, leaving exclusion markers in their roles
    Prune {
        file: String,
        /// Selector item, repeatable: v:<id>, hs:<id>, rel:<symbol> or b:<id>
        #[arg(long = "drop", value_name = "ITEM")]
        drops: Vec<String>,
        /// Output file, `-` for standard output
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Extract the sub-model a boundary or a seed set reaches
    #[command(group(ArgGroup::new("criterion").required(true).args(["boundary", "seeds", "all"])))]
    Split {
        file: String,
        /// Extract the elements tagged into this boundary
        #[arg(long)]
        boundary: Option<String>,
        /// Grow the extraction from this element, repeatable
        #[arg(long = "seed", value_name = "ID")]
        seeds: Vec<String>,
        /// Copy the whole model
        #[arg(long)]
        all: bool,
        /// Output file, `-` for standard output
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Print `true` if the first model is contained in the second
    Subhn { small: String, big: String },
    /// Rewrite a file in canonical form
    Canon {
        file: String,
        /// Output file, `-` for standard output
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Write seeded example models for regression snapshots
    Corpus {
        /// Directory the .hn files go into
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
        /// Number of models to write
        #[arg(long, default_value_t = 50)]
        count: u64,
        /// First seed
        #[arg(long, default_value_t = 0)]
        start: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("hn: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Validate { file } => {
            let (_, report) = read_model_with_report(&file)?;
            print!("{report}");
            if report.ok() {
                Ok(())
            } else {
                Err(fail(1, String::new()))
            }
        }
        Cmd::Merge { left, right, out } => binop(merge, &left, &right, &out),
        Cmd::Meet { left, right, out } => binop(meet, &left, &right, &out),
        Cmd::Diff { left, right, out } => binop(difference, &left, &right, &out),
        Cmd::Prune { file, drops, output } => {
            let h = read_model(&file)?;
            let selector = PruneSelector::parse_items(drops.iter().map(String::as_str))
                .map_err(|e| fail(3, e.to_string()))?;
            selector.check_resolvable(&h).map_err(|e| fail(4, e.to_string()))?;
            let pruned = prune(&h, &selector).map_err(operator_failure)?;
            write_text(&output, &canonical(&pruned))
        }
        Cmd::Split { file, boundary, seeds, all, output } => {
            let h = read_model(&file)?;
            let criterion = if all {
                SplitCriterion::Universal
            } else if let Some(b) = boundary {
                SplitCriterion::Boundary(identifier(&b)?)
            } else {
                let seeds =
                    seeds.iter().map(|s| identifier(s)).collect::<Result<Vec<_>, _>>()?;
                SplitCriterion::Seeds(seeds)
            };
            let projection = split(&h, &criterion).map_err(operator_failure)?;
            write_text(&output, &canonical(&projection))
        }
        Cmd::Subhn { small, big } => {
            let small = read_model(&small)?;
            let big = read_model(&big)?;
            println!("{}", is_sub_hypernetwork(&small, &big));
            Ok(())
        }
        Cmd::Canon { file, output } => {
            let h = read_model(&file)?;
            write_text(&output, &canonical(&h))
        }
        Cmd::Corpus { dir, count, start } => {
            fs::create_dir_all(&dir)
                .map_err(|e| fail(3, format!("{}: {e}", dir.display())))?;
            for i in 0..count {
                let seed = start + i;
                let h = gen_valid(&GenConfig::small(seed));
                let path = dir.join(format!("seed_{seed:04}.hn"));
                fs::write(&path, canonical(&h))
                    .map_err(|e| fail(3, format!("{}: {e}", path.display())))?;
            }
            println!("wrote {count} models under {}", dir.display());
            Ok(())
        }
    }
}

fn binop(
    op: fn(&Hypernetwork, &Hypernetwork) -> Result<Hypernetwork, OperatorError>,
    left: &str,
    right: &str,
    out: &str,
) -> Result<(), Failure> {
    let h1 = read_model(left)?;
    let h2 = read_model(right)?;
    let result = op(&h1, &h2).map_err(operator_failure)?;
    write_text(out, &canonical(&result))
}

fn operator_failure(e: OperatorError) -> Failure {
    match e {
        OperatorError::ClosureViolation(_) => fail(1, format!("internal defect: {e}")),
        other => fail(4, other.to_string()),
    }
}

fn identifier(s: &str) -> Result<ElementId, Failure> {
    ElementId::new(s).map_err(|e| fail(3, e.to_string()))
}

fn read_text(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| fail(3, format!("standard input: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| fail(3, format!("{path}: {e}")))
    }
}

/// Loads a model, forwarding build diagnostics to standard error. Commands
/// other than `validate` proceed with the model the source supports.
fn read_model(path: &str) -> Result<Hypernetwork, Failure> {
    let (h, report) = read_model_with_report(path)?;
    if !report.ok() {
        for line in report.to_string().lines() {
            eprintln!("hn: {path}: {line}");
        }
    }
    Ok(h)
}

fn read_model_with_report(path: &str) -> Result<(Hypernetwork, ValidationReport), Failure> {
    let text = read_text(path)?;
    load(&text).map_err(|e| fail(2, format!("{path}: {e}")))
}

fn write_text(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| fail(3, format!("standard output: {e}")))
    } else {
        fs::write(path, text).map_err(|e| fail(3, format!("{path}: {e}")))
    }
}
