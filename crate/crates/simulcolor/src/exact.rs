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

//! Exact simultaneous chromatic number on small instances: branch-and-bound
//! vertex coloring of the conflict graph, a brute-force cross-check, and the
//! report-only probe for the two-graph palette question.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::Error;
use crate::graph::{conflict_graph, ConflictGraph, Edge, GraphFamily, SimultaneousColoring};

pub const DEFAULT_NODE_CAP: usize = 30;
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(60);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactStatus {
    /// `chi` is the true optimum.
    Exact,
    /// Search ran out of time; only the bracket is known.
    TimedOut {
        best_upper: usize,
        best_lower: usize,
    },
}

#[derive(Clone, Debug)]
pub struct ExactResult {
    pub chi: usize,
    pub optimal_coloring: SimultaneousColoring,
    pub nodes_explored: u64,
    pub status: ExactStatus,
}

/// Computes the minimum palette size of a simultaneous coloring by
/// branch-and-bound on the conflict graph: greedy clique for the lower
/// bound, saturation-greedy for the initial upper bound, branching on the
/// most saturated node with new colors introduced in increasing order only.
pub fn exact_chi(
    family: &GraphFamily,
    max_conflict_nodes: usize,
    time_budget: Duration,
) -> Result<ExactResult, Error> {
    let cg = conflict_graph(family);
    let m = cg.node_count();
    if m > max_conflict_nodes {
        return Err(Error::InstanceTooLarge {
            nodes: m,
            cap: max_conflict_nodes,
        });
    }
    if m == 0 {
        return Ok(ExactResult {
            chi: 0,
            optimal_coloring: SimultaneousColoring::new(),
            nodes_explored: 0,
            status: ExactStatus::Exact,
        });
    }

    let lower = greedy_clique(&cg).len();
    let (initial, upper) = dsatur(&cg);

    let mut search = Search {
        cg: &cg,
        colors: vec![None; m],
        best: upper,
        best_colors: initial,
        lower,
        nodes_explored: 0,
        deadline: Instant::now() + time_budget,
        timed_out: false,
    };
    if lower < upper {
        search.dive(0, 0);
    }

    let mut optimal_coloring = SimultaneousColoring::new();
    for (i, &c) in search.best_colors.iter().enumerate() {
        optimal_coloring.set(cg.nodes()[i], c);
    }
    let status = if search.timed_out {
        ExactStatus::TimedOut {
            best_upper: search.best,
            best_lower: lower,
        }
    } else {
        ExactStatus::Exact
    };
    Ok(ExactResult {
        chi: search.best,
        optimal_coloring,
        nodes_explored: search.nodes_explored,
        status,
    })
}

fn greedy_clique(cg: &ConflictGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..cg.node_count()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(cg.degree(v)), v));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| cg.neighbors(u).contains(&v)) {
            clique.push(v);
        }
    }
    clique
}

// saturation-greedy coloring: repeatedly color the node seeing the most
// distinct neighbor colors, smallest feasible color first
fn dsatur(cg: &ConflictGraph) -> (Vec<usize>, usize) {
    let m = cg.node_count();
    let mut colors: Vec<Option<usize>> = vec![None; m];
    for _ in 0..m {
        let v = (0..m)
            .filter(|&v| colors[v].is_none())
            .max_by_key(|&v| (saturation(cg, &colors, v), cg.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let c = (0..m)
            .find(|&c| cg.neighbors(v).iter().all(|&u| colors[u] != Some(c)))
            .unwrap();
        colors[v] = Some(c);
    }
    let colors: Vec<usize> = colors.into_iter().map(Option::unwrap).collect();
    let used = colors.iter().max().map_or(0, |&c| c + 1);
    (colors, used)
}

fn saturation(cg: &ConflictGraph, colors: &[Option<usize>], v: usize) -> usize {
    let mut seen: Vec<usize> = cg
        .neighbors(v)
        .iter()
        .filter_map(|&u| colors[u])
        .collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

struct Search<'a> {
    cg: &'a ConflictGraph,
    colors: Vec<Option<usize>>,
    best: usize,
    best_colors: Vec<usize>,
    lower: usize,
    nodes_explored: u64,
    deadline: Instant,
    timed_out: bool,
}

impl Search<'_> {
    fn dive(&mut self, colored: usize, used: usize) {
        self.nodes_explored += 1;
        if self.nodes_explored % 1024 == 0 && Instant::now() > self.deadline {
            self.timed_out = true;
        }
        if self.timed_out || self.best == self.lower {
            return;
        }
        let m = self.cg.node_count();
        if colored == m {
            self.best = used;
            self.best_colors = self.colors.iter().map(|c| c.unwrap()).collect();
            return;
        }
        let v = (0..m)
            .filter(|&v| self.colors[v].is_none())
            .max_by_key(|&v| {
                (
                    saturation(self.cg, &self.colors, v),
                    self.cg.degree(v),
                    std::cmp::Reverse(v),
                )
            })
            .unwrap();
        // a node may use at most one color index beyond the current maximum,
        // and the total must stay below the incumbent
        let cap = (used + 1).min(self.best - 1);
        for c in 0..cap {
            if self
                .cg
                .neighbors(v)
                .iter()
                .any(|&u| self.colors[u] == Some(c))
            {
                continue;
            }
            self.colors[v] = Some(c);
            self.dive(colored + 1, used.max(c + 1));
            self.colors[v] = None;
            if self.timed_out || self.best == self.lower {
                return;
            }
        }
    }
}

/// Exhaustive palette-size search, deliberately sharing no code with
/// [`exact_chi`]: union edges and pairwise constraints are re-derived from
/// the family directly, and assignments are enumerated by odometer with the
/// first node pinned to color 0.
pub fn brute_force_chi(family: &GraphFamily, max_edges: usize) -> Result<usize, Error> {
    let mut edges: Vec<Edge> = Vec::new();
    for g in family.members() {
        for e in g.edges() {
            if !edges.contains(e) {
                edges.push(*e);
            }
        }
    }
    edges.sort_unstable();
    let m = edges.len();
    if m > max_edges {
        return Err(Error::InstanceTooLarge {
            nodes: m,
            cap: max_edges,
        });
    }
    if m == 0 {
        return Ok(0);
    }
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in (i + 1)..m {
            let shares = edges[i].shares_endpoint(&edges[j]);
            let together = family
                .members()
                .iter()
                .any(|g| g.has_edge(&edges[i]) && g.has_edge(&edges[j]));
            if shares && together {
                pairs.push((i, j));
            }
        }
    }
    for c in 1..=m {
        let mut assignment = vec![0usize; m];
        loop {
            if pairs
                .iter()
                .all(|&(i, j)| assignment[i] != assignment[j])
            {
                return Ok(c);
            }
            // odometer over positions 1..m, position 0 stays pinned
            let mut pos = m - 1;
            loop {
                if pos == 0 {
                    break;
                }
                assignment[pos] += 1;
                if assignment[pos] < c {
                    break;
                }
                assignment[pos] = 0;
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub trial: usize,
    pub seed: u64,
    pub delta: usize,
    pub chi: usize,
    pub excess_over_delta: i64,
    pub flagged: bool,
}

#[derive(Clone, Debug, Serialize, Default)]
pub struct ProbeReport {
    pub rows: Vec<ProbeRow>,
    pub skipped: usize,
    pub counterexamples: Vec<PathBuf>,
}

/// Runs the report-only probe for the two-graph question: exact chromatic
/// numbers of seeded random pairs, flagging any instance needing more than
/// `delta + 1` colors. Flagged families are dumped as JSON under
/// `artifact_dir` when given. Never a pass/fail judgement.
pub fn probe_pair_conjecture(
    trials: usize,
    n: usize,
    delta: usize,
    overlap: f64,
    seed: u64,
    artifact_dir: Option<&Path>,
) -> ProbeReport {
    let mut report = ProbeReport::default();
    for trial in 0..trials {
        let instance_seed = seed.wrapping_add(trial as u64);
        let family = crate::generate::random_family(n, 2, delta, overlap, instance_seed);
        let result = match exact_chi(&family, DEFAULT_NODE_CAP, DEFAULT_TIME_BUDGET) {
            Ok(r) if r.status == ExactStatus::Exact => r,
            _ => {
                report.skipped += 1;
                continue;
            }
        };
        let d = family.delta();
        let flagged = result.chi > d + 1;
        report.rows.push(ProbeRow {
            trial,
            seed: instance_seed,
            delta: d,
            chi: result.chi,
            excess_over_delta: result.chi as i64 - d as i64,
            flagged,
        });
        if flagged {
            if let Some(dir) = artifact_dir {
                let path = dir.join(format!("counterexample_{instance_seed}.json"));
                let _ = std::fs::write(&path, crate::io::family_to_json(&family));
                report.counterexamples.push(path);
            }
        }
    }
    report
}
