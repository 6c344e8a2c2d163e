// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Command line surface: generators, coloring algorithms, the exact oracle,
//! the verifier, and a CSV benchmark harness.
//!
//! Exit codes: 0 success/valid, 1 invalid coloring or internal verification
//! failure, 2 input or usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use simulcolor::exact::{exact_chi, ExactStatus};
use simulcolor::generate::{random_family, star_family, star_three};
use simulcolor::graph::{build_union, GraphFamily, SimultaneousColoring};
use simulcolor::io::{family_digest, family_from_json, family_to_json, ColoringDocument};
use simulcolor::pair::color_pair;
use simulcolor::sqrt::{color_union_sqrt, color_union_sqrt_sweep, color_union_trivial, BoundCertificate};
use simulcolor::verify::verify;
use simulcolor::vizing::vizing_color;

const EXIT_INVALID: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "simulcolor", version, about = "Simultaneous edge coloring of graph families")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a family instance as JSON
    Generate {
        #[command(subcommand)]
        kind: GenerateCmd,
    },
    /// Color a family and write the coloring document
    Color {
        family: PathBuf,
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long)]
        out: PathBuf,
        /// For --algo sqrt: also try integer thresholds and keep the best
        #[arg(long)]
        sweep_k: bool,
    },
    /// Exact simultaneous chromatic number (small instances)
    Exact {
        family: PathBuf,
        /// Cap on the number of union edges
        #[arg(long, default_value_t = 30)]
        max_edges: usize,
        /// Time budget in seconds
        #[arg(long, default_value_t = 60)]
        timeout: u64,
        /// Run even above the cap, accepting a timed-out bracket
        #[arg(long)]
        allow_timeout: bool,
        /// Write the optimal coloring here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring document against a family
    Verify { family: PathBuf, coloring: PathBuf },
    /// Print instance statistics
    Stats { family: PathBuf },
    /// Run a suite of instances through the algorithms, CSV out
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        ell: usize,
        #[arg(long, default_value_t = 5)]
        delta: usize,
        #[arg(long, default_value_t = 0.3)]
        overlap: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated ell values for the star suite
        #[arg(long, default_value = "2,8")]
        ells: String,
        /// Run the oracle when the union has at most this many edges
        #[arg(long, default_value_t = 20)]
        exact_cap: usize,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// Star lower-bound family (even delta)
    Star {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        delta: usize,
        /// Pad with empty members up to ell graphs
        #[arg(long)]
        pad: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Three-member star family
    Star3 {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Seeded random family with a per-member degree cap
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 0.0)]
        overlap: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Sqrt,
    Pair,
    Trivial,
    Vizing,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Random,
    Star,
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Generate { kind } => cmd_generate(kind),
        Cmd::Color {
            family,
            algo,
            out,
            sweep_k,
        } => cmd_color(&family, algo, &out, sweep_k),
        Cmd::Exact {
            family,
            max_edges,
            timeout,
            allow_timeout,
            out,
        } => cmd_exact(&family, max_edges, timeout, allow_timeout, out.as_deref()),
        Cmd::Verify { family, coloring } => cmd_verify(&family, &coloring),
        Cmd::Stats { family } => cmd_stats(&family),
        Cmd::Bench {
            suite,
            out,
            trials,
            n,
            ell,
            delta,
            overlap,
            seed,
            ells,
            exact_cap,
            jobs,
        } => cmd_bench(BenchParams {
            suite,
            out,
            trials,
            n,
            ell,
            delta,
            overlap,
            seed,
            ells,
            exact_cap,
            jobs,
        }),
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn load_family(path: &Path) -> Result<GraphFamily, ExitCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage_error(format_args!("cannot read {}: {e}", path.display())))?;
    family_from_json(&text).map_err(usage_error)
}

fn write_file(path: &Path, contents: &str) -> Result<(), ExitCode> {
    std::fs::write(path, contents)
        .map_err(|e| usage_error(format_args!("cannot write {}: {e}", path.display())))
}

fn cmd_generate(kind: GenerateCmd) -> ExitCode {
    let (family, out) = match kind {
        GenerateCmd::Star {
            ell,
            delta,
            pad,
            out,
        } => match star_family(ell, delta, pad) {
            Ok(f) => (f, out),
            Err(e) => return usage_error(e),
        },
        GenerateCmd::Star3 { delta, out } => {
            if delta < 2 {
                return usage_error("star3 requires --delta >= 2");
            }
            (star_three(delta), out)
        }
        GenerateCmd::Random {
            n,
            ell,
            delta,
            overlap,
            seed,
            out,
        } => {
            if n < 2 || ell == 0 || ell > simulcolor::graph::MAX_MEMBERS {
                return usage_error("random requires n >= 2 and 1 <= ell <= 64");
            }
            if !(0.0..=1.0).contains(&overlap) {
                return usage_error("overlap must be in [0, 1]");
            }
            (random_family(n, ell, delta, overlap, seed), out)
        }
    };
    match write_file(&out, &family_to_json(&family)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}

fn run_algo(
    family: &GraphFamily,
    algo: Algo,
    sweep_k: bool,
) -> Result<(&'static str, SimultaneousColoring, BoundCertificate), ExitCode> {
    match algo {
        Algo::Sqrt => {
            let run = if sweep_k {
                color_union_sqrt_sweep(family)
            } else {
                color_union_sqrt(family)
            };
            run.map(|(c, cert)| ("sqrt", c, cert)).map_err(usage_error)
        }
        Algo::Pair => color_pair(family)
            .map(|(c, cert)| ("pair", c, cert))
            .map_err(usage_error),
        Algo::Trivial => color_union_trivial(family)
            .map(|(c, cert)| ("trivial", c, cert))
            .map_err(usage_error),
        Algo::Vizing => {
            if family.ell() != 1 {
                return Err(usage_error("--algo vizing requires a single-member family"));
            }
            let g = family.member(0);
            let ec = vizing_color(g);
            let mut coloring = SimultaneousColoring::new();
            for (e, c) in ec.iter(g) {
                coloring.set(e, c);
            }
            let cert = BoundCertificate {
                algorithm: "vizing".to_string(),
                palette_used: coloring.distinct_colors(),
                palette_bound: family.delta() + 1,
                closed_form_bound: None,
                ell: 1,
                delta: family.delta(),
                k: None,
            };
            Ok(("vizing", coloring, cert))
        }
    }
}

fn cmd_color(family_path: &Path, algo: Algo, out: &Path, sweep_k: bool) -> ExitCode {
    let family = match load_family(family_path) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let (name, coloring, cert) = match run_algo(&family, algo, sweep_k) {
        Ok(r) => r,
        Err(code) => return code,
    };
    // guard against algorithm bugs before anything reaches disk
    match verify(&family, &coloring) {
        Ok(report) if report.valid => {}
        Ok(report) => {
            eprintln!(
                "internal verification failed: {} violations, {} uncolored",
                report.violations.len(),
                report.uncolored.len()
            );
            return ExitCode::from(EXIT_INVALID);
        }
        Err(e) => {
            eprintln!("internal verification failed: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    }
    let doc = ColoringDocument::new(name, &family, &coloring, Some(cert));
    match write_file(out, &doc.to_json()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}

fn cmd_exact(
    family_path: &Path,
    max_edges: usize,
    timeout: u64,
    allow_timeout: bool,
    out: Option<&Path>,
) -> ExitCode {
    let family = match load_family(family_path) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let union_edges = build_union(&family).base().edge_count();
    let cap = if allow_timeout {
        union_edges.max(max_edges)
    } else {
        max_edges
    };
    let result = match exact_chi(&family, cap, Duration::from_secs(timeout)) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    println!("chi: {}", result.chi);
    match result.status {
        ExactStatus::Exact => println!("status: exact"),
        ExactStatus::TimedOut {
            best_upper,
            best_lower,
        } => println!("status: timed-out (bounds {best_lower}..={best_upper})"),
    }
    println!("nodes_explored: {}", result.nodes_explored);
    if let Some(path) = out {
        let doc = ColoringDocument::new("exact", &family, &result.optimal_coloring, None);
        if let Err(code) = write_file(path, &doc.to_json()) {
            return code;
        }
    }
    ExitCode::SUCCESS
}

fn cmd_verify(family_path: &Path, coloring_path: &Path) -> ExitCode {
    let family = match load_family(family_path) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let text = match std::fs::read_to_string(coloring_path) {
        Ok(t) => t,
        Err(e) => return usage_error(format_args!("cannot read {}: {e}", coloring_path.display())),
    };
    let doc = match ColoringDocument::from_json(&text) {
        Ok(d) => d,
        Err(e) => return usage_error(e),
    };
    if doc.family_digest != family_digest(&family) {
        return usage_error("family digest mismatch: coloring was computed for a different family");
    }
    let coloring = match doc.to_coloring() {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    let report = match verify(&family, &coloring) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    println!("{}", serde_json::to_string(&report).unwrap());
    if report.valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_INVALID)
    }
}

fn cmd_stats(family_path: &Path) -> ExitCode {
    let family = match load_family(family_path) {
        Ok(f) => f,
        Err(code) => return code,
    };
    let union = build_union(&family);
    let mut histogram = vec![0usize; family.ell() + 1];
    for idx in 0..union.base().edge_count() {
        histogram[union.multiplicity(idx)] += 1;
    }
    println!("num_vertices: {}", family.num_vertices());
    println!("members: {}", family.ell());
    println!("family_delta: {}", family.delta());
    println!("union_edges: {}", union.base().edge_count());
    print!("multiplicity_histogram:");
    for (mult, count) in histogram.iter().enumerate().skip(1) {
        if *count > 0 {
            print!(" {mult}:{count}");
        }
    }
    println!();
    ExitCode::SUCCESS
}

struct BenchParams {
    suite: Suite,
    out: PathBuf,
    trials: usize,
    n: usize,
    ell: usize,
    delta: usize,
    overlap: f64,
    seed: u64,
    ells: String,
    exact_cap: usize,
    jobs: usize,
}

#[derive(Serialize, Clone)]
struct BenchRow {
    instance: String,
    n: usize,
    ell: usize,
    delta: usize,
    union_edges: usize,
    algorithm: String,
    palette_used: Option<usize>,
    palette_bound: Option<usize>,
    exact_chi: Option<usize>,
    wall_time_ms: f64,
    error: Option<String>,
}

fn bench_instance(id: String, family: &GraphFamily, exact_cap: usize) -> Vec<BenchRow> {
    let union_edges = build_union(family).base().edge_count();
    let exact = if union_edges <= exact_cap {
        exact_chi(family, exact_cap, Duration::from_secs(10))
            .ok()
            .filter(|r| r.status == ExactStatus::Exact)
            .map(|r| r.chi)
    } else {
        None
    };
    let mut algos: Vec<(&str, Algo)> = vec![("sqrt", Algo::Sqrt), ("trivial", Algo::Trivial)];
    if family.ell() == 2 {
        algos.push(("pair", Algo::Pair));
    }
    let mut rows = Vec::new();
    for (name, algo) in algos {
        let start = Instant::now();
        let outcome = match algo {
            Algo::Sqrt => color_union_sqrt(family),
            Algo::Trivial => color_union_trivial(family),
            Algo::Pair => color_pair(family),
            Algo::Vizing => unreachable!(),
        };
        let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        let row = match outcome {
            Ok((coloring, cert)) => {
                let report = verify(family, &coloring);
                let error = match report {
                    Ok(r) if r.valid => None,
                    Ok(_) => Some("verification failed".to_string()),
                    Err(e) => Some(e.to_string()),
                };
                BenchRow {
                    instance: id.clone(),
                    n: family.num_vertices(),
                    ell: family.ell(),
                    delta: family.delta(),
                    union_edges,
                    algorithm: name.to_string(),
                    palette_used: Some(cert.palette_used),
                    palette_bound: Some(cert.palette_bound),
                    exact_chi: exact,
                    wall_time_ms,
                    error,
                }
            }
            Err(e) => BenchRow {
                instance: id.clone(),
                n: family.num_vertices(),
                ell: family.ell(),
                delta: family.delta(),
                union_edges,
                algorithm: name.to_string(),
                palette_used: None,
                palette_bound: None,
                exact_chi: exact,
                wall_time_ms,
                error: Some(e.to_string()),
            },
        };
        rows.push(row);
    }
    rows
}

fn cmd_bench(p: BenchParams) -> ExitCode {
    let mut instances: Vec<(String, GraphFamily)> = Vec::new();
    match p.suite {
        Suite::Random => {
            for t in 0..p.trials {
                let fam = random_family(p.n, p.ell, p.delta, p.overlap, p.seed + t as u64);
                instances.push((format!("random-{t}"), fam));
            }
        }
        Suite::Star => {
            for part in p.ells.split(',') {
                let ell: usize = match part.trim().parse() {
                    Ok(v) => v,
                    Err(_) => return usage_error(format_args!("bad ell value '{part}'")),
                };
                match star_family(ell, p.delta, false) {
                    Ok(fam) => instances.push((format!("star-l{ell}"), fam)),
                    Err(e) => return usage_error(e),
                }
            }
        }
    }

    let jobs = p.jobs.max(1);
    let mut rows: Vec<BenchRow> = if jobs == 1 {
        instances
            .iter()
            .flat_map(|(id, fam)| bench_instance(id.clone(), fam, p.exact_cap))
            .collect()
    } else {
        let chunks: Vec<&[(String, GraphFamily)]> =
            instances.chunks(instances.len().div_ceil(jobs)).collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    scope.spawn(move || {
                        chunk
                            .iter()
                            .flat_map(|(id, fam)| bench_instance(id.clone(), fam, p.exact_cap))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
        })
    };
    rows.sort_by(|a, b| (&a.instance, &a.algorithm).cmp(&(&b.instance, &b.algorithm)));

    let mut writer = match csv::Writer::from_path(&p.out) {
        Ok(w) => w,
        Err(e) => return usage_error(e),
    };
    for row in &rows {
        if let Err(e) = writer.serialize(row) {
            return usage_error(e);
        }
    }
    if let Err(e) = writer.flush() {
        return usage_error(e);
    }
    ExitCode::SUCCESS
}
