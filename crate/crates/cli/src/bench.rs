//! `bench`: runs a manifest of instances against solvers.
//!
//! Manifest lines are `<file.mdg> <k> <p> <solver>[,<solver>...]`, with `#`
//! comments; paths are relative to the manifest. Solvers: `feasible`,
//! `witness`, `approx`, `heuristic`, `exact`, `exact-le`, `min-k2`. Rows are
//! computed on `ARCINVERT_THREADS` threads (default 1) and emitted in
//! manifest order.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use arcinvert::approx::{approx_kp, min_k2_inversion_set, ApproxOptions};
use arcinvert::feasibility::{construct_witness, is_kp_invertible};
use arcinvert::oracles::{exact_inv_kp, SizeMode};
use arcinvert::{apply_inversions, is_k_arc_strong, Error, InversionFamily, MultiDigraph};

use crate::{read_digraph, Failure};

const SOLVERS: [&str; 7] = ["feasible", "witness", "approx", "heuristic", "exact", "exact-le", "min-k2"];
const EXACT_LMAX: usize = 6;

struct Row {
    name: String,
    path: PathBuf,
    k: usize,
    p: usize,
    solver: String,
}

fn parse_manifest(path: &Path) -> Result<Vec<Row>, Failure> {
    let text = std::fs::read_to_string(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let bad = |line: usize, message: String| Failure { code: 2, message: format!("{}: line {line}: {message}", path.display()) };
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [file, k, p, solvers] = fields[..] else {
            return Err(bad(i + 1, "expected `<file> <k> <p> <solvers>`".into()));
        };
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad(i + 1, format!("`{s}` is not a number")));
        let (k, p) = (num(k)?, num(p)?);
        for solver in solvers.split(',') {
            if !SOLVERS.contains(&solver) {
                return Err(bad(i + 1, format!("unknown solver `{solver}`")));
            }
            rows.push(Row { name: file.to_string(), path: base.join(file), k, p, solver: solver.to_string() });
        }
    }
    Ok(rows)
}

fn threads() -> usize {
    std::env::var("ARCINVERT_THREADS").ok().and_then(|v| v.parse().ok()).filter(|&t| t >= 1).unwrap_or(1)
}

pub fn run(manifest: &Path, seed: u64) -> Result<String, Failure> {
    let rows = parse_manifest(manifest)?;
    let mut graphs = Vec::new();
    for row in &rows {
        graphs.push(read_digraph(&row.path)?);
    }
    let next = AtomicUsize::new(0);
    let done: Mutex<Vec<Option<String>>> = Mutex::new(vec![None; rows.len()]);
    std::thread::scope(|scope| {
        for _ in 0..threads().min(rows.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= rows.len() {
                    break;
                }
                let line = run_row(&rows[i], &graphs[i], seed.wrapping_add(i as u64));
                done.lock().expect("no panics while holding the lock")[i] = Some(line);
            });
        }
    });
    let mut csv = String::from("instance,k,p,solver,value,verified,millis\n");
    for line in done.into_inner().expect("threads joined") {
        csv += &line.expect("every row ran");
    }
    Ok(csv)
}

fn run_row(row: &Row, d: &MultiDigraph, seed: u64) -> String {
    let start = Instant::now();
    let (value, verified) = match solve(row, d, seed) {
        Ok(pair) => pair,
        Err(e) => (error_tag(&e).to_string(), false),
    };
    let millis = start.elapsed().as_millis();
    format!("{},{},{},{},{value},{verified},{millis}\n", row.name, row.k, row.p, row.solver)
}

fn error_tag(e: &Error) -> &'static str {
    match e {
        Error::InvalidArgument(_) | Error::Parse { .. } => "invalid",
        Error::PreconditionViolated(_) => "precondition",
        Error::Unsupported(_) => "unsupported",
    }
}

fn solve(row: &Row, d: &MultiDigraph, seed: u64) -> Result<(String, bool), Error> {
    let (k, p) = (row.k, row.p);
    let check = |f: &InversionFamily| -> Result<(String, bool), Error> {
        Ok((f.len().to_string(), is_k_arc_strong(&apply_inversions(d, f)?, k)))
    };
    match row.solver.as_str() {
        "feasible" => {
            let v = is_kp_invertible(d, k, p)?;
            let ok = match &v.witness {
                Some(f) => is_k_arc_strong(&apply_inversions(d, f)?, k),
                None => false,
            };
            Ok((if v.answer { "yes" } else { "no" }.to_string(), ok))
        }
        "witness" => check(&construct_witness(d, k, p)?),
        "approx" => check(&approx_kp(d, k, p, &ApproxOptions::default())?.0),
        "heuristic" => {
            let opts = ApproxOptions { heuristic: true, seed, ..ApproxOptions::default() };
            check(&approx_kp(d, k, p, &opts)?.0)
        }
        "exact" | "exact-le" => {
            let mode = if row.solver == "exact" { SizeMode::Exact } else { SizeMode::AtMost };
            match exact_inv_kp(d, k, p, mode, EXACT_LMAX)? {
                Some(f) => check(&f),
                None => Ok(("none".to_string(), false)),
            }
        }
        "min-k2" => check(&min_k2_inversion_set(d, k)?),
        _ => unreachable!("solver names are validated while parsing"),
    }
}
