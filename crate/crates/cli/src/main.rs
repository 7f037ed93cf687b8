//! `penta`: periodic directions, cutting sequences and billiards on the
//! regular pentagon from the command line.  Output is JSON (one object, or
//! one object per line for `enumerate`); `--pretty` indents it.
//!
//! Exit codes: 0 success, 2 invalid input, 3 internal invariant violation.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use penta::cutting::{same_cyclic_word, sequence_for};
use penta::flow::{cutting_sequence_flow, cylinder_concentration, pentagon_core_curve, FlowOptions};
use penta::itinerary::{cylinder_vectors, itinerary_of, normalize_to_cone};
use penta::polytope::{export_mesh, iterate_fractal_with_max, MeshFormat, DEFAULT_MAX_DEPTH};
use penta::render::{billiard_trajectory, render_svg, scatter_svg, Style};
use penta::report::{describe, scan_even_periods};
use penta::symmetry::{billiard_period, classify, dft_class, Multiplier};
use penta::tree::{enumerate_in_box, enumerate_tree, enumerate_tree_parallel, tree_vector};
use penta::{Cylinder, Error, GVec2, GoldenNum, TreeWord};

#[derive(Parser)]
#[command(name = "penta", version, about = "Periodic directions and billiards on the regular pentagon")]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

/// A tree word and cylinder, given positionally (`120 short`) or by flag
/// (`--word 120 --which short`).  The horizontal direction is the empty
/// word, also accepted as `root`.
#[derive(Args)]
struct Target {
    #[arg(value_name = "WORD")]
    word: Option<String>,
    #[arg(value_name = "WHICH")]
    which: Option<String>,
    #[arg(long = "word", id = "word_flag", value_name = "WORD")]
    word_flag: Option<String>,
    #[arg(long = "which", id = "which_flag", value_name = "WHICH")]
    which_flag: Option<String>,
}

#[derive(Args)]
struct WordOnly {
    #[arg(value_name = "WORD")]
    word: Option<String>,
    #[arg(long = "word", id = "word_flag", value_name = "WORD")]
    word_flag: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// List tree nodes, one JSON object per line.
    #[command(group(ArgGroup::new("range").required(true).args(["depth", "box_side"])))]
    Enumerate {
        /// All canonical words with at most this many digits.
        #[arg(long)]
        depth: Option<usize>,
        /// All vectors with both coordinates at most N (a golden number).
        #[arg(long = "box", value_name = "N")]
        box_side: Option<String>,
        /// Search the depth-1 subtrees in parallel (same output order).
        #[arg(long, conflicts_with = "deterministic")]
        parallel: bool,
        /// Search sequentially (the default).
        #[arg(long)]
        deterministic: bool,
        /// Print only the number of nodes and the deepest word length.
        #[arg(long)]
        count: bool,
    },
    /// Find the tree word of a direction `[x, y]` with entries like `4+4*phi`.
    Direction {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// The cutting sequence from the substitutions.
    Sequence {
        #[command(flatten)]
        target: Target,
        /// Print the undecorated letters.
        #[arg(long)]
        plain: bool,
    },
    /// Double-pentagon and billiard periods.
    Period {
        #[command(flatten)]
        target: Target,
    },
    /// Symmetry node and class of a direction.
    Symmetry {
        #[command(flatten)]
        word: WordOnly,
    },
    /// Compare the straight-line flow with the substitution word.
    Oracle {
        #[command(flatten)]
        target: Target,
    },
    /// Draw a billiard trajectory as SVG.
    Render {
        #[command(flatten)]
        target: Target,
        /// Output file; standard output if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Start point as a fraction of the starting edge; 1/2 is the core curve.
        #[arg(long, default_value = "1/2")]
        offset: String,
        /// TOML style overrides.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Plot the tree vectors in a box as SVG.
    Scatter {
        #[arg(long = "box", value_name = "N")]
        box_side: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Density of a core curve in the short versus the long horizontal cylinder.
    Concentration {
        #[command(flatten)]
        target: Target,
    },
    /// Export the tetrahedral fractal of the cone contractions.
    Polytope {
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value = "off")]
        format: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Deduplicate shared vertices.
        #[arg(long)]
        merge: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// Witnesses for even periods and the asymmetric billiard period search.
    Scan {
        #[arg(long, default_value_t = 200)]
        max_period: u128,
    },
    /// Everything about one direction and cylinder.
    Describe {
        #[command(flatten)]
        target: Target,
    },
}

enum Failure {
    Lib(Error),
    Input(String),
    Io(PathBuf, io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome<T> = Result<T, Failure>;

fn parse_word(s: &str) -> Outcome<TreeWord> {
    if s == "root" {
        return Ok(TreeWord::root());
    }
    Ok(s.parse()?)
}

fn pick(positional: &Option<String>, flag: &Option<String>, what: &str) -> Outcome<Option<String>> {
    match (positional, flag) {
        (Some(a), Some(b)) if a != b => Err(Failure::Input(format!("{what} given twice: {a:?} and {b:?}"))),
        (a, b) => Ok(a.clone().or_else(|| b.clone())),
    }
}

impl Target {
    fn resolve(&self) -> Outcome<(TreeWord, Cylinder)> {
        let word = pick(&self.word, &self.word_flag, "word")?
            .ok_or_else(|| Failure::Input("a tree word is required".into()))?;
        let which = match pick(&self.which, &self.which_flag, "cylinder")? {
            Some(s) => s.parse()?,
            None => Cylinder::Short,
        };
        Ok((parse_word(&word)?, which))
    }
}

impl WordOnly {
    fn resolve(&self) -> Outcome<TreeWord> {
        let word = pick(&self.word, &self.word_flag, "word")?
            .ok_or_else(|| Failure::Input("a tree word is required".into()))?;
        parse_word(&word)
    }
}

fn stdout_failure(e: io::Error) -> Failure {
    Failure::Io("<stdout>".into(), e)
}

fn emit<T: Serialize>(value: &T, pretty: bool) -> Outcome<()> {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("report types serialize");
    writeln!(io::stdout().lock(), "{text}").map_err(stdout_failure)
}

fn write_out(path: &Option<PathBuf>, content: &str) -> Outcome<Option<String>> {
    match path {
        Some(p) => {
            fs::write(p, content).map_err(|e| Failure::Io(p.clone(), e))?;
            Ok(Some(p.display().to_string()))
        }
        None => {
            io::stdout()
                .write_all(content.as_bytes())
                .map_err(stdout_failure)?;
            Ok(None)
        }
    }
}

fn load_style(path: &Option<PathBuf>) -> Outcome<Style> {
    match path {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Io(p.clone(), e))?;
            Ok(Style::parse_config(&text)?)
        }
        None => Ok(Style::default()),
    }
}

fn parse_rational(s: &str) -> Outcome<BigRational> {
    s.trim()
        .parse()
        .map_err(|_| Failure::Input(format!("not a fraction: {s:?}")))
}

fn box_bound(s: &str) -> Outcome<GoldenNum> {
    let n: GoldenNum = s.parse()?;
    if !n.is_positive() {
        return Err(Failure::Input(format!("box side must be positive, got {n}")));
    }
    Ok(n)
}

fn run(cli: Cli) -> Outcome<()> {
    let pretty = cli.pretty;
    match cli.command {
        Command::Enumerate {
            depth,
            box_side,
            parallel,
            deterministic: _,
            count,
        } => {
            let nodes = match (depth, box_side) {
                (Some(d), _) if parallel => enumerate_tree_parallel(d),
                (Some(d), _) => enumerate_tree(d).collect(),
                (None, Some(n)) => enumerate_in_box(&box_bound(&n)?),
                (None, None) => unreachable!("clap requires a range"),
            };
            if count {
                let deepest = nodes.iter().map(|n| n.depth()).max().unwrap_or(0);
                emit(&json!({ "count": nodes.len(), "max_depth": deepest }), pretty)?;
            } else {
                let stdout = io::stdout();
                let mut out = io::BufWriter::new(stdout.lock());
                for n in &nodes {
                    serde_json::to_writer(&mut out, n).map_err(|e| stdout_failure(e.into()))?;
                    writeln!(out).map_err(stdout_failure)?;
                }
                out.flush().map_err(stdout_failure)?;
            }
        }
        Command::Direction { x, y } => {
            let v = GVec2::new(x.parse()?, y.parse()?);
            let (cone, turns) = normalize_to_cone(&v)?;
            let it = itinerary_of(&cone)?;
            let (short, long) = cylinder_vectors(&cone)?;
            emit(
                &json!({
                    "input": v,
                    "normalized": cone,
                    "quarter_turns": turns,
                    "itinerary": it.sectors,
                    "word": it.tree_word(),
                    "scale": it.scale,
                    "short_cylinder": short,
                    "long_cylinder": long,
                }),
                pretty,
            )?;
        }
        Command::Sequence { target, plain } => {
            let (w, which) = target.resolve()?;
            let seq = sequence_for(&w, which);
            let text = if plain { seq.plain_string() } else { seq.to_string() };
            emit(&json!({ "word": w, "which": which, "length": seq.len(), "sequence": text }), pretty)?;
        }
        Command::Period { target } => {
            let (w, which) = target.resolve()?;
            let node = tree_vector(&w);
            let period = penta::cutting::period_of(&node.coeffs, which);
            emit(
                &json!({
                    "word": w,
                    "which": which,
                    "period": period,
                    "multiplier": Multiplier::for_node(&node),
                    "billiard_period": billiard_period(&node, which)?,
                }),
                pretty,
            )?;
        }
        Command::Symmetry { word } => {
            let w = word.resolve()?;
            let node = tree_vector(&w);
            let (n, class) = classify(&w);
            let dft = dft_class(&node.coeffs);
            emit(
                &json!({
                    "word": w,
                    "node": n,
                    "class": class,
                    "dft_class": dft,
                    "agree": dft == class,
                    "multiplier": Multiplier::for_node(&node),
                }),
                pretty,
            )?;
        }
        Command::Oracle { target } => {
            let (w, which) = target.resolve()?;
            let sub = sequence_for(&w, which).plain();
            let (_, ret) = pentagon_core_curve(&tree_vector(&w).vector, which, FlowOptions::default())?;
            let flow = cutting_sequence_flow(&w, which)?;
            let letters = |v: &[u8]| v.iter().map(|d| char::from(b'0' + d)).collect::<String>();
            emit(
                &json!({
                    "word": w,
                    "which": which,
                    "crossings": ret.crossings,
                    "holonomy": ret.holonomy,
                    "flow": letters(&flow),
                    "substitution": letters(&sub),
                    "agree": same_cyclic_word(&flow, &sub),
                }),
                pretty,
            )?;
        }
        Command::Render {
            target,
            output,
            offset,
            config,
        } => {
            let (w, which) = target.resolve()?;
            let style = load_style(&config)?;
            let t = billiard_trajectory(&w, which, &parse_rational(&offset)?)?;
            let svg = render_svg(&t, &style);
            let written = write_out(&output, &svg)?;
            if let Some(path) = written {
                emit(
                    &json!({
                        "output": path,
                        "word": w,
                        "which": which,
                        "bounces": t.bounces,
                        "closed": t.closed,
                        "class": t.class,
                        "length": t.length,
                    }),
                    pretty,
                )?;
            }
        }
        Command::Scatter {
            box_side,
            output,
            config,
        } => {
            let n = box_bound(&box_side)?;
            let style = load_style(&config)?;
            let nodes = enumerate_in_box(&n);
            let svg = scatter_svg(&nodes, n.to_f64(), &style);
            if let Some(path) = write_out(&output, &svg)? {
                emit(&json!({ "output": path, "points": nodes.len() }), pretty)?;
            }
        }
        Command::Concentration { target } => {
            let (w, which) = target.resolve()?;
            let ratio = cylinder_concentration(&w, which)?;
            emit(
                &json!({
                    "word": w,
                    "which": which,
                    "ratio": ratio,
                    "ratio_f64": ratio.as_ref().map(GoldenNum::to_f64),
                }),
                pretty,
            )?;
        }
        Command::Polytope {
            depth,
            format,
            output,
            merge,
            max_depth,
        } => {
            let format: MeshFormat = format.parse()?;
            let mesh = iterate_fractal_with_max(depth, max_depth)?;
            let text = export_mesh(&mesh, format, merge);
            if let Some(path) = write_out(&output, &text)? {
                emit(&json!({ "output": path, "depth": depth, "cells": mesh.cells.len() }), pretty)?;
            }
        }
        Command::Scan { max_period } => {
            emit(&scan_even_periods(max_period)?, pretty)?;
        }
        Command::Describe { target } => {
            let (w, which) = target.resolve()?;
            emit(&describe(&w, which)?, pretty)?;
        }
    }
    Ok(())
}

fn exit_code(f: &Failure) -> (u8, String) {
    match f {
        Failure::Lib(e @ Error::Invariant(_)) => (3, e.to_string()),
        Failure::Lib(e) => (2, e.to_string()),
        Failure::Input(m) => (2, m.clone()),
        Failure::Io(p, e) => (2, format!("{}: {e}", p.display())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        // A closed pipe (e.g. `penta enumerate … | head`) is not an error.
        Err(Failure::Io(_, e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(f) => {
            let (code, message) = exit_code(&f);
            let _ = writeln!(io::stderr(), "penta: {message}");
            ExitCode::from(code)
        }
    }
}
