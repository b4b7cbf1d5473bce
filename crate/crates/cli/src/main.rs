use std::fmt::Write as _;
use std::panic;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use rand::Rng;
use suig2::geometry::{
    emit_json, emit_svg, int, parse_json, verify, verify_tree, Graph, Rational, Representation,
};
use suig2::oracle::{
    brute_force_2suig, cross_check, Decision, OracleError, OracleOutcome, SearchConfig,
};
use suig2::random::{prufer_tree, rng};
use suig2::recognizer::{analyze, recognize_with, Recognition, RecognizerConfig};
use suig2::red::red_edges;
use suig2::tree::{parse_edge_list, parse_tree, Tree};
use thiserror::Error;

const ACCEPTED: u8 = 0;
const REJECTED: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "suig2",
    version,
    about = "Recognize trees that are 2-stab unit interval graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a tree and print a representation or a rejection certificate.
    Recognize(RecognizeArgs),
    /// Check a representation against an edge list.
    Verify {
        graph: PathBuf,
        representation: PathBuf,
    },
    /// Decide a small tree by exhaustive search.
    Oracle {
        tree: PathBuf,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        /// For example `500ms` or `2s`.
        #[arg(long, value_parser = humantime::parse_duration)]
        time_budget: Option<Duration>,
    },
    /// Compare the recognizer with the oracle, or fuzz it with random trees.
    Crosscheck(CrosscheckArgs),
}

#[derive(Args)]
struct RecognizeArgs {
    tree: PathBuf,
    /// Print the result as JSON on stdout; the verdict goes to stderr.
    #[arg(long)]
    json: bool,
    /// Write an SVG drawing of an accepted tree.
    #[arg(long, value_name = "FILE")]
    svg: Option<PathBuf>,
    /// Show the red path and the agents and tails of every red vertex.
    #[arg(long)]
    explain: bool,
    /// Gap between the stabs as `p/q` with 0 < p/q < 1.
    #[arg(long, value_parser = parse_epsilon, default_value = "1/2")]
    epsilon: Rational,
}

#[derive(Args)]
struct CrosscheckArgs {
    #[arg(long, default_value_t = 9)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fuzz COUNT random trees of at most SIZE vertices instead of the exhaustive sweep.
    #[arg(long, num_args = 2, value_names = ["COUNT", "SIZE"])]
    random: Option<Vec<usize>>,
    /// Corrupt every accepted representation before checking it.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {msg}")]
    Input { path: PathBuf, msg: String },
    #[error("{0}")]
    Usage(String),
}

fn parse_epsilon(s: &str) -> Result<Rational, String> {
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| format!("expected p/q, got {s:?}"))?;
    let p: i64 = p
        .trim()
        .parse()
        .map_err(|_| format!("bad numerator in {s:?}"))?;
    let q: i64 = q
        .trim()
        .parse()
        .map_err(|_| format!("bad denominator in {s:?}"))?;
    if q == 0 {
        return Err("denominator is zero".into());
    }
    let eps = Rational::new(p, q);
    if eps <= int(0) || eps >= int(1) {
        return Err(format!("epsilon {eps} is not strictly between 0 and 1"));
    }
    Ok(eps)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn read_tree(path: &Path) -> Result<Tree, CliError> {
    parse_tree(&read(path)?).map_err(|e| CliError::Input {
        path: path.to_owned(),
        msg: e.to_string(),
    })
}

fn square_lines(r: &Representation) -> String {
    let mut out = format!("epsilon {}\n", r.epsilon);
    for (v, s) in r.squares.iter().enumerate() {
        let stab = format!("{:?}", s.stab).to_lowercase();
        writeln!(out, "{v} {stab} x={} y={}", s.x, s.y).unwrap();
    }
    out
}

fn explain(t: &Tree) -> String {
    let mut out = String::new();
    let red: Vec<String> = red_edges(t)
        .iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect();
    writeln!(
        out,
        "red edges: {}",
        if red.is_empty() {
            "none".into()
        } else {
            red.join(" ")
        }
    )
    .unwrap();
    match analyze(t) {
        Err(c) => writeln!(out, "no decomposition: {c}").unwrap(),
        Ok(None) => writeln!(out, "at most one branch vertex: direct layout").unwrap(),
        Ok(Some(d)) => {
            let path: Vec<String> = d.path.vertices.iter().map(|v| v.to_string()).collect();
            writeln!(out, "extended red path: {}", path.join(" ")).unwrap();
            for (i, (a, agents)) in d.path.vertices.iter().zip(&d.agents).enumerate() {
                write!(out, "a{} = {a} (degree {})", i + 1, t.degree(*a)).unwrap();
                for ag in agents {
                    write!(out, "; agent {}", ag.vertex).unwrap();
                    for tail in ag.tails() {
                        let tail: Vec<String> = tail.iter().map(|v| v.to_string()).collect();
                        write!(out, " tail [{}]", tail.join(" ")).unwrap();
                    }
                }
                out.push('\n');
            }
        }
    }
    out
}

fn cmd_recognize(args: &RecognizeArgs) -> Result<u8, CliError> {
    let t = read_tree(&args.tree)?;
    let cfg = RecognizerConfig {
        epsilon: args.epsilon,
    };
    let result = recognize_with(&t, &cfg);
    if args.explain {
        let text = explain(&t);
        if args.json {
            eprint!("{text}");
        } else {
            print!("{text}");
        }
    }
    match result {
        Recognition::Accept(r) => {
            if let Some(path) = &args.svg {
                std::fs::write(path, emit_svg(&r)).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
            }
            if args.json {
                eprintln!("ACCEPT");
                print!("{}", emit_json(&r));
            } else {
                println!("ACCEPT");
                print!("{}", square_lines(&r));
            }
            Ok(ACCEPTED)
        }
        Recognition::Reject(c) => {
            if args.json {
                eprintln!("REJECT {c}");
                let doc =
                    serde_json::json!({ "schema": suig2::geometry::SCHEMA, "certificate": c });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("certificate serializes")
                );
            } else {
                println!("REJECT {c}");
            }
            Ok(REJECTED)
        }
    }
}

fn cmd_verify(graph: &Path, representation: &Path) -> Result<u8, CliError> {
    let (n, edges) = parse_edge_list(&read(graph)?).map_err(|e| CliError::Input {
        path: graph.to_owned(),
        msg: e.to_string(),
    })?;
    let r = parse_json(&read(representation)?).map_err(|e| CliError::Input {
        path: representation.to_owned(),
        msg: e.to_string(),
    })?;
    let report = verify(&r, &Graph::new(n, edges));
    if report.passed() {
        println!("PASS");
        return Ok(ACCEPTED);
    }
    for v in &report.violations {
        println!("{v}");
    }
    Ok(REJECTED)
}

fn cmd_oracle(tree: &Path, max_n: usize, time_budget: Option<Duration>) -> Result<u8, CliError> {
    let t = read_tree(tree)?;
    let cfg = SearchConfig {
        max_n,
        time_budget,
        ..Default::default()
    };
    match brute_force_2suig(&t, &cfg) {
        Ok(OracleOutcome::Accept(r)) => {
            println!("ACCEPT");
            print!("{}", square_lines(&r));
            Ok(ACCEPTED)
        }
        Ok(OracleOutcome::Reject(proof)) => {
            println!(
                "REJECT exhausted {} stab assignments, {} search nodes",
                proof.stab_assignments, proof.nodes
            );
            Ok(REJECTED)
        }
        Err(OracleError::BudgetExceeded) => {
            println!("UNKNOWN time budget exceeded");
            Ok(BUDGET)
        }
        Err(e) => Err(CliError::Usage(e.to_string())),
    }
}

fn cmd_crosscheck(args: &CrosscheckArgs) -> Result<u8, CliError> {
    if let Some(r) = &args.random {
        return Ok(fuzz(args.seed, r[0], r[1], args.inject_fault));
    }
    let cfg = SearchConfig {
        max_n: args.max_n,
        ..Default::default()
    };
    let report = cross_check(&cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    print!("{}", report.to_json_lines());
    let bad: Vec<_> = report.mismatches().collect();
    for row in &bad {
        eprintln!(
            "MISMATCH recognizer={:?} oracle={:?} edges={:?}",
            row.recognizer, row.oracle, row.tree
        );
    }
    let unknown = report
        .rows
        .iter()
        .filter(|r| r.oracle == Decision::Unknown)
        .count();
    eprintln!(
        "checked {} trees with n <= {}: {} mismatches ({} unknown)",
        report.rows.len(),
        args.max_n,
        bad.len(),
        unknown
    );
    Ok(if bad.is_empty() { ACCEPTED } else { REJECTED })
}

/// Soundness fuzzing: every accepted random tree must come with a representation that verifies.
fn fuzz(seed: u64, count: usize, size: usize, inject_fault: bool) -> u8 {
    let mut r = rng(seed);
    println!("seed {seed} count {count} size {size}");
    let (mut accepted, mut unsound) = (0, 0);
    for i in 0..count {
        let n = r.gen_range(1..=size.max(1));
        let t = prufer_tree(&mut r, n);
        let decision = panic::catch_unwind(|| recognize_with(&t, &RecognizerConfig::default()));
        let sound = match &decision {
            Err(_) => false,
            Ok(Recognition::Reject(_)) => true,
            Ok(Recognition::Accept(rep)) => {
                accepted += 1;
                let mut rep = rep.clone();
                if inject_fault {
                    rep.squares[0].x += int(3);
                }
                verify_tree(&rep, &t).passed()
            }
        };
        let verdict = match decision {
            Err(_) => "panic",
            Ok(Recognition::Accept(_)) => "accept",
            Ok(Recognition::Reject(_)) => "reject",
        };
        println!(
            "{i} n={n} {verdict} {}",
            if sound { "ok" } else { "UNSOUND" }
        );
        if !sound {
            unsound += 1;
            eprintln!("unsound on tree:\n{}", t.to_edge_list());
        }
    }
    eprintln!("{count} random trees, {accepted} accepted, {unsound} unsound");
    if unsound == 0 {
        ACCEPTED
    } else {
        REJECTED
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Recognize(args) => cmd_recognize(args),
        Command::Verify {
            graph,
            representation,
        } => cmd_verify(graph, representation),
        Command::Oracle {
            tree,
            max_n,
            time_budget,
        } => cmd_oracle(tree, *max_n, *time_budget),
        Command::Crosscheck(args) => cmd_crosscheck(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE)
        }
    }
}
