//! `arcinvert`: command-line front end. Reports go to stdout and are
//! deterministic for a fixed command and seed; timings go to stderr.
//!
//! Exit codes: 0 yes/solved, 1 no/infeasible, 2 usage or malformed input,
//! 3 precondition violated or instance beyond an exhaustive limit.

mod bench;
mod gen;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use arcinvert::approx::{approx_kp, ApproxOptions};
use arcinvert::feasibility::{construct_witness, is_kp_invertible, Reason};
use arcinvert::format::{emit_family, parse_mdg};
use arcinvert::obstruction::{find_certificate_exhaustive, is_k_obstruction};
use arcinvert::oracles::{exact_inv_kp, SizeMode};
use arcinvert::simulation::{simulate_disjoint_triples, simulate_pair, simulate_quintuple, simulate_triple};
use arcinvert::{apply_inversions, edge_connectivity, flow::arc_strength, is_k_arc_strong, Error, MultiDigraph};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "arcinvert", version, about = "Make digraphs k-arc-strong by inverting vertex sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, arc count, connectivity of the underlying graph, arc-strength.
    Analyze { file: PathBuf },
    /// Decide (k,p)-invertibility; `--witness` also builds and checks a family.
    Feasible {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        witness: bool,
        file: PathBuf,
    },
    /// Look for a k-obstruction certificate.
    Obstruction {
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Search all partitions instead of the polynomial recognition
        /// (needed below order 4k+2).
        #[arg(long)]
        exhaustive: bool,
        file: PathBuf,
    },
    /// Replace the inversion of a small set by inversions of exactly p vertices.
    Simulate {
        #[arg(long)]
        p: usize,
        /// The set to simulate: 2, 3 or 5 vertices, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        /// A second, disjoint triple simulated together with `--set`.
        #[arg(long, value_delimiter = ',')]
        with: Option<Vec<usize>>,
        file: PathBuf,
    },
    /// Approximate the fewest sets of at most p vertices making the digraph k-arc-strong.
    Approx {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        /// Randomised local search for the pair step; voids the guarantee.
        #[arg(long, requires = "seed")]
        heuristic: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        file: PathBuf,
    },
    /// Exact minimum number of inversions (exactly p vertices, or at most p with `--le`).
    Exact {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        le: bool,
        #[arg(long, default_value_t = 6)]
        lmax: usize,
        file: PathBuf,
    },
    /// Generate an instance, with a `.meta` sidecar for reduction kinds.
    Gen(gen::GenArgs),
    /// Run a manifest of instances and solvers, emitting CSV.
    Bench {
        manifest: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// A failure with its exit code.
pub struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::InvalidArgument(_) => 2,
            Error::PreconditionViolated(_) | Error::Unsupported(_) => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

pub fn read_digraph(path: &Path) -> Result<MultiDigraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })?;
    parse_mdg(&text).map_err(|e| Failure { code: 2, message: format!("{}: {e}", path.display()) })
}

fn digest(d: &MultiDigraph) -> String {
    format!("instance: n={} arcs={} lambda={}\n", d.n(), d.arc_count(), edge_connectivity(&d.underlying()))
}

fn verified(d: &MultiDigraph, f: &arcinvert::InversionFamily, k: usize) -> Result<bool, Failure> {
    Ok(is_k_arc_strong(&apply_inversions(d, f)?, k))
}

/// Runs one command, returning the report and whether the answer is yes.
/// Reports open with the command echo, except CSV written to stdout.
fn run(command: Command, echo: &str) -> Result<(String, bool), Failure> {
    let mut out = match &command {
        Command::Bench { out: None, .. } => String::new(),
        _ => format!("command: arcinvert {echo}\n"),
    };
    let yes = match command {
        Command::Analyze { file } => {
            let d = read_digraph(&file)?;
            out += &digest(&d);
            let strength = arc_strength(&d);
            writeln!(out, "arc-strength: {strength}").unwrap();
            let top = strength.finite().map_or(2, |s| (s + 1).max(2));
            for k in 1..=top {
                writeln!(out, "{k}-arc-strong: {}", strength.at_least(k)).unwrap();
            }
            writeln!(out, "digraph: {}\noriented: {}", d.is_digraph(), d.is_oriented()).unwrap();
            true
        }
        Command::Feasible { k, p, witness, file } => {
            let d = read_digraph(&file)?;
            out += &digest(&d);
            let v = is_kp_invertible(&d, k, p)?;
            writeln!(out, "answer: {}\nreason: {}", if v.answer { "yes" } else { "no" }, v.reason).unwrap();
            if let Reason::Obstruction(c) = &v.reason {
                write!(out, "certificate:\n{c}").unwrap();
            }
            if witness && v.answer {
                let f = construct_witness(&d, k, p)?;
                out += &emit_family(&f);
                writeln!(out, "verified: {}", verified(&d, &f, k)?).unwrap();
            }
            v.answer
        }
        Command::Obstruction { k, exhaustive, file } => {
            let d = read_digraph(&file)?;
            out += &digest(&d);
            let cert = if exhaustive { find_certificate_exhaustive(&d, k)? } else { is_k_obstruction(&d, k)? };
            match &cert {
                Some(c) => write!(out, "obstruction: yes\ncertificate:\n{c}").unwrap(),
                None => writeln!(out, "obstruction: no").unwrap(),
            }
            cert.is_some()
        }
        Command::Simulate { p, set, with, file } => {
            let d = read_digraph(&file)?;
            out += &digest(&d);
            let plan = match (set.len(), with) {
                (3, Some(other)) => simulate_disjoint_triples(&d, &set, &other, p)?,
                (_, Some(_)) => return Err(Failure { code: 2, message: "--with needs a triple in --set".into() }),
                (2, None) => simulate_pair(&d, &set, p)?,
                (3, None) => simulate_triple(&d, &set, p)?,
                (5, None) => simulate_quintuple(&d, &set, p)?,
                (m, None) => return Err(Failure { code: 2, message: format!("cannot simulate a set of {m} vertices") }),
            };
            writeln!(out, "plan-size: {}", plan.sets.len()).unwrap();
            out += &emit_family(&plan.sets);
            let ok = plan.verify(&d)?;
            writeln!(out, "verified: {ok}").unwrap();
            ok
        }
        Command::Approx { k, p, heuristic, seed, restarts, file } => {
            let d = read_digraph(&file)?;
            out += &digest(&d);
            let opts = ApproxOptions { heuristic, seed: seed.unwrap_or(0), restarts };
            let (f, trace) = approx_kp(&d, k, p, &opts)?;
            writeln!(out, "size: {}", f.len()).unwrap();
            out += &emit_family(&f);
            writeln!(out, "base-pairs: {}", trace.base_pairs.len()).unwrap();
            writeln!(out, "packed: {}\nleftover: {}", trace.packed.len(), trace.leftover.len()).unwrap();
            writeln!(out, "eta: {}\nramsey-bound: {}", trace.eta, trace.ramsey_bound).unwrap();
            writeln!(out, "guarantee-voided: {}", trace.guarantee_voided).unwrap();
            let ok = verified(&d, &f, k)?;
            writeln!(out, "valid: {ok}").unwrap();
            ok
        }
        Command::Exact { k, p, le, lmax, file } => {
            let d = read_digraph(&file)?;
            out += &digest(&d);
            let mode = if le { SizeMode::AtMost } else { SizeMode::Exact };
            match exact_inv_kp(&d, k, p, mode, lmax)? {
                Some(f) => {
                    writeln!(out, "value: {}", f.len()).unwrap();
                    out += &emit_family(&f);
                    writeln!(out, "verified: {}", verified(&d, &f, k)?).unwrap();
                    true
                }
                None => {
                    writeln!(out, "value: none within {lmax}").unwrap();
                    false
                }
            }
        }
        Command::Gen(args) => {
            out += &gen::run(&args)?;
            true
        }
        Command::Bench { manifest, seed, out: dest } => {
            let csv = bench::run(&manifest, seed)?;
            match dest {
                Some(path) => {
                    std::fs::write(&path, &csv)?;
                    writeln!(out, "wrote {}", path.display()).unwrap();
                }
                None => out += &csv,
            }
            true
        }
    };
    Ok((out, yes))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let code = match run(cli.command, &echo.join(" ")) {
        Ok((report, yes)) => {
            print!("{report}");
            if yes { 0 } else { 1 }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    eprintln!("millis: {}", start.elapsed().as_millis());
    ExitCode::from(code)
}
