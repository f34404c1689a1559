//! Command-line surface: verify/find/sq/witness/ham/bounds.
//!
//! Exit codes: 0 = found/valid, 1 = proven absent/invalid, 2 = usage or
//! input error, 3 = search budget exhausted.

use clap::{Parser, Subcommand, ValueEnum};
use divsub::finder::{finder_by_name, SearchOutcome, DEFAULT_BUDGET};
use divsub::hamiltonian::{
    exhaustive_check, find_even_split, verify_split, SplitMethod, TwoColoring,
};
use divsub::manifest::{RunManifest, FORMAT_VERSION, TOOLKIT_VERSION};
use divsub::oracle::{
    bound_general, bound_lower, bound_prime, bound_tree, compute_sq, SqOptions, DEFAULT_GUARD,
};
use divsub::pattern::{parse_pattern, PatternGraph};
use divsub::subdivision::{verify_embedding, Certificate};
use divsub::weighting::{all_ones, parse_weighting_with, serialize_weighting, star_witness, Weighting};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const EXIT_FOUND: u8 = 0;
const EXIT_ABSENT: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Environment variable overriding the default enumeration guard.
const GUARD_ENV: &str = "DIVSUB_GUARD";

#[derive(Parser)]
#[command(name = "divsub", about = "divisible-subdivision toolkit", version = TOOLKIT_VERSION)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a subdivision certificate against a host weighting and pattern
    Verify {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        /// require exactly T internal vertices on every path
        #[arg(long)]
        t: Option<usize>,
        /// reduce out-of-range weights mod q instead of rejecting them
        #[arg(long)]
        reduce: bool,
    },
    /// Search a host weighting for a divisible subdivision of a pattern
    Find {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// search strategy: backtracking | naive
        #[arg(long, default_value = "backtracking")]
        finder: String,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        reduce: bool,
    },
    /// Compute the exact divisible-subdivision number by exhaustive scan
    Sq {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, default_value_t = 0)]
        fmin: usize,
        #[arg(long, default_value_t = 0)]
        fmax: usize,
        /// per-level enumeration cap; defaults to $DIVSUB_GUARD or 2^24
        #[arg(long)]
        guard: Option<u128>,
        #[arg(long, default_value_t = 0)]
        shards: usize,
        #[arg(long, default_value = "backtracking")]
        finder: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Emit a witness weighting on standard output
    Witness {
        #[arg(long, value_enum)]
        kind: WitnessKind,
        #[arg(long)]
        f: usize,
        #[arg(long)]
        q: u32,
        /// star center count; defaults to floor((q-1)/2)
        #[arg(long)]
        k: Option<usize>,
    },
    /// Find an even-split Hamiltonian cycle, or verify all colorings of K_2n
    Ham {
        #[arg(long, conflicts_with = "exhaustive")]
        coloring: Option<PathBuf>,
        /// check every coloring of K_{2N}
        #[arg(long)]
        exhaustive: Option<usize>,
        #[arg(long, default_value_t = 0)]
        shards: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[arg(long)]
        guard: Option<u128>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the closed-form bounds for given pattern parameters
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: u32,
        /// the pattern is connected (prime bound applies)
        #[arg(long)]
        connected: bool,
        /// the pattern is a tree (tree bound is exact)
        #[arg(long)]
        tree: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    AllOnes,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Search,
    Construct,
}

impl From<MethodArg> for SplitMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => SplitMethod::Auto,
            MethodArg::Search => SplitMethod::Search,
            MethodArg::Construct => SplitMethod::Construct,
        }
    }
}

fn default_guard() -> u128 {
    std::env::var(GUARD_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_GUARD)
}

fn fail_input(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_INPUT
}

fn read_weighting(path: &Path, reduce: bool) -> Result<Weighting, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_weighting_with(&text, reduce).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_pattern(path: &Path) -> Result<PatternGraph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_pattern(&text).map_err(|e| format!("{}: {e}", path.display()))
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    manifest: &'a RunManifest,
    result: T,
}

fn emit<T: Serialize>(manifest: &RunManifest, result: T, json: Option<&Path>) -> Result<(), String> {
    let doc = serde_json::to_string_pretty(&Report { manifest, result }).expect("serializable");
    if let Some(path) = json {
        std::fs::write(path, &doc).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    println!("{doc}");
    Ok(())
}

fn manifest_for(command: &str) -> RunManifest {
    RunManifest::new(command, std::env::args().skip(1).collect())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let clock = Instant::now();
    let code = match run(cli.cmd, clock) {
        Ok(code) => code,
        Err(msg) => fail_input(msg),
    };
    ExitCode::from(code)
}

fn run(cmd: Cmd, clock: Instant) -> Result<u8, String> {
    match cmd {
        Cmd::Verify { host, pattern, cert, t, reduce } => {
            let w = read_weighting(&host, reduce)?;
            let h = read_pattern(&pattern)?;
            let text =
                std::fs::read_to_string(&cert).map_err(|e| format!("{}: {e}", cert.display()))?;
            let c: Certificate =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", cert.display()))?;
            let embedding = match c.to_embedding(&w, &h) {
                Ok(e) => e,
                Err(e) => {
                    eprintln!("invalid certificate: {e}");
                    return Ok(EXIT_ABSENT);
                }
            };
            match verify_embedding(&w, &h, &embedding, t.or(c.t)) {
                Ok(()) => Ok(EXIT_FOUND),
                Err(e) => {
                    eprintln!("invalid certificate: {e}");
                    Ok(EXIT_ABSENT)
                }
            }
        }
        Cmd::Find { host, pattern, t, budget, finder, json, reduce } => {
            let w = read_weighting(&host, reduce)?;
            let h = read_pattern(&pattern)?;
            let strategy = finder_by_name(&finder).ok_or(format!("unknown finder {finder:?}"))?;
            let mut manifest = manifest_for("find");
            manifest.add_input("host", &host).map_err(|e| e.to_string())?;
            manifest.add_input("pattern", &pattern).map_err(|e| e.to_string())?;
            let outcome = strategy.find(&w, &h, t, budget);
            manifest.wall_ms = clock.elapsed().as_millis();
            match outcome {
                SearchOutcome::Found(e) => {
                    let cert = Certificate::from_embedding(&w, &h, &e, t);
                    emit(&manifest, cert, json.as_deref())?;
                    Ok(EXIT_FOUND)
                }
                SearchOutcome::Absent => {
                    eprintln!("no divisible subdivision exists");
                    Ok(EXIT_ABSENT)
                }
                SearchOutcome::Budget => {
                    eprintln!("budget {budget} exhausted before a definite answer");
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Cmd::Sq { pattern, q, t, fmin, fmax, guard, shards, finder, json } => {
            let h = read_pattern(&pattern)?;
            let strategy = finder_by_name(&finder).ok_or(format!("unknown finder {finder:?}"))?;
            let guard = guard.unwrap_or_else(default_guard);
            let opts = SqOptions {
                t,
                fmin,
                fmax,
                guard,
                shards,
                finder: strategy,
                ..SqOptions::default()
            };
            let mut manifest = manifest_for("sq");
            manifest.add_input("pattern", &pattern).map_err(|e| e.to_string())?;
            manifest.guard = Some(guard);
            let result = compute_sq(&h, q, &opts).map_err(|e| e.to_string())?;
            manifest.wall_ms = clock.elapsed().as_millis();
            emit(&manifest, result, json.as_deref())?;
            Ok(EXIT_FOUND)
        }
        Cmd::Witness { kind, f, q, k } => {
            let w = match kind {
                WitnessKind::AllOnes => all_ones(f, q),
                WitnessKind::Star => {
                    let k = k.unwrap_or((q as usize - 1) / 2);
                    star_witness(f, q, k).map_err(|e| e.to_string())?
                }
            };
            print!("{}", serialize_weighting(&w));
            Ok(EXIT_FOUND)
        }
        Cmd::Ham { coloring, exhaustive, shards, method, guard, json } => {
            let guard = guard.unwrap_or_else(default_guard);
            match (coloring, exhaustive) {
                (Some(path), None) => {
                    let w = read_weighting(&path, false)?;
                    let c = TwoColoring::from_weighting(w).map_err(|e| e.to_string())?;
                    let mut manifest = manifest_for("ham");
                    manifest.add_input("coloring", &path).map_err(|e| e.to_string())?;
                    let split = find_even_split(&c, method.into()).map_err(|e| e.to_string())?;
                    manifest.wall_ms = clock.elapsed().as_millis();
                    match split {
                        Some(s) => {
                            assert!(verify_split(&c, &s));
                            emit(&manifest, s, json.as_deref())?;
                            Ok(EXIT_FOUND)
                        }
                        None => {
                            eprintln!("no even-split Hamiltonian cycle exists");
                            Ok(EXIT_ABSENT)
                        }
                    }
                }
                (None, Some(n)) => {
                    let mut manifest = manifest_for("ham");
                    manifest.guard = Some(guard);
                    let bad = exhaustive_check(n, shards, guard).map_err(|e| e.to_string())?;
                    manifest.wall_ms = clock.elapsed().as_millis();
                    emit(&manifest, bad, json.as_deref())?;
                    match bad {
                        None => Ok(EXIT_FOUND),
                        Some(i) => {
                            eprintln!("coloring index {i} of K_{} has no even split", 2 * n);
                            Ok(EXIT_ABSENT)
                        }
                    }
                }
                _ => Err("exactly one of --coloring and --exhaustive is required".into()),
            }
        }
        Cmd::Bounds { n, m, q, connected, tree } => {
            println!("format {FORMAT_VERSION}, n={n} m={m} q={q}");
            println!("lower   {}", bound_lower(n, m, q));
            let note = if tree { " (exact: tree)" } else { "" };
            println!("tree    {}{note}", bound_tree(n, q));
            println!("general {}", bound_general(n, m, q));
            match bound_prime(n, m, q) {
                Ok(b) => {
                    let note = if connected { "" } else { " (assumes a connected pattern)" };
                    println!("prime   {b}{note}");
                }
                Err(_) => println!("prime   n/a ({q} is not an odd prime)"),
            }
            Ok(EXIT_FOUND)
        }
    }
}
