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

//! The two-graph algorithm: split the union into common and private edges,
//! pull a degree-halving factor out of each private part, then color the
//! leftovers on one shared small palette and the rest on a disjoint palette.
//! Total: `floor(3 * delta / 2) + 4` colors.

use crate::error::Error;
use crate::graph::{build_union, Edge, GraphFamily, SimpleGraph, SimultaneousColoring};
use crate::sqrt::BoundCertificate;
use crate::vizing::vizing_color;

/// Union edges of a 2-member family split by membership.
#[derive(Clone, Debug)]
pub struct PairSplit {
    common: SimpleGraph,
    private_1: SimpleGraph,
    private_2: SimpleGraph,
}

impl PairSplit {
    /// Edges present in both members.
    pub fn common(&self) -> &SimpleGraph {
        &self.common
    }

    /// Edges present only in the first member.
    pub fn private_1(&self) -> &SimpleGraph {
        &self.private_1
    }

    /// Edges present only in the second member.
    pub fn private_2(&self) -> &SimpleGraph {
        &self.private_2
    }
}

/// Per-vertex degree window for the halving factor: `g(v) <= deg_K(v) <= f(v)`
/// with `g(v) = max(0, ceil(d/2 - 1))` and `f(v) = ceil(d/2)`.
#[derive(Clone, Debug)]
pub struct FactorSpec {
    pub g: Vec<usize>,
    pub f: Vec<usize>,
    pub theta: f64,
}

impl FactorSpec {
    pub fn halving(graph: &SimpleGraph) -> Self {
        let mut g = Vec::with_capacity(graph.num_vertices());
        let mut f = Vec::with_capacity(graph.num_vertices());
        for v in 0..graph.num_vertices() as u32 {
            let d = graph.degree(v);
            let up = d.div_ceil(2);
            g.push(if d == 0 { 0 } else { up - 1 });
            f.push(up);
        }
        FactorSpec { g, f, theta: 0.5 }
    }

    /// Whether `factor`'s degrees sit inside the window everywhere.
    pub fn admits(&self, factor: &SimpleGraph) -> bool {
        (0..factor.num_vertices() as u32)
            .all(|v| (self.g[v as usize]..=self.f[v as usize]).contains(&factor.degree(v)))
    }
}

/// The full split used by [`color_pair`]: factors, leftovers, and the two
/// graphs that actually get colored.
#[derive(Clone, Debug)]
pub struct FactorDecomposition {
    pub k_1: SimpleGraph,
    pub k_2: SimpleGraph,
    pub l_1: SimpleGraph,
    pub l_2: SimpleGraph,
    /// `common + k_1 + k_2`; degree at most `delta + 1`.
    pub r: SimpleGraph,
    /// `l_1 + l_2`; the two halves are edge-disjoint by construction.
    pub l: SimpleGraph,
}

/// Splits a 2-member family into common and private edge sets.
pub fn split_private_common(family: &GraphFamily) -> Result<PairSplit, Error> {
    if family.ell() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            got: family.ell(),
        });
    }
    let union = build_union(family);
    let n = family.num_vertices();
    let mut common = Vec::new();
    let mut private_1 = Vec::new();
    let mut private_2 = Vec::new();
    for idx in 0..union.base().edge_count() {
        let e = union.base().edge(idx);
        match union.membership(idx) {
            0b01 => private_1.push(e),
            0b10 => private_2.push(e),
            0b11 => common.push(e),
            _ => unreachable!(),
        }
    }
    Ok(PairSplit {
        common: SimpleGraph::new(n, common).unwrap(),
        private_1: SimpleGraph::new(n, private_1).unwrap(),
        private_2: SimpleGraph::new(n, private_2).unwrap(),
    })
}

/// Extracts a subgraph whose degree at every vertex lies in
/// `[max(0, ceil(d/2 - 1)), ceil(d/2)]` where `d` is the input degree.
///
/// Construction: attach a dummy vertex to every odd-degree vertex so all
/// degrees become even, walk an Eulerian circuit per component (starting at
/// the dummy when it is present), 2-color the circuit edges alternately, and
/// keep the class with the smaller count at the circuit's start vertex when
/// the circuit has odd length. Dummy edges are discarded.
pub fn half_factor(graph: &SimpleGraph) -> SimpleGraph {
    let n = graph.num_vertices();
    let dummy = n;
    let m = graph.edge_count();

    // adjacency over real + dummy edges, entries (edge id, other endpoint)
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for idx in 0..m {
        let e = graph.edge(idx);
        adj[e.u() as usize].push((idx, e.v() as usize));
        adj[e.v() as usize].push((idx, e.u() as usize));
    }
    let mut total_edges = m;
    for v in 0..n {
        if graph.degree(v as u32) % 2 == 1 {
            adj[v].push((total_edges, dummy));
            adj[dummy].push((total_edges, v));
            total_edges += 1;
        }
    }

    let mut used = vec![false; total_edges];
    let mut ptr = vec![0usize; n + 1];
    let mut keep = vec![false; m];

    // dummy component first, then remaining even components by lowest vertex
    let starts = std::iter::once(dummy).chain(0..n);
    for start in starts {
        while ptr[start] < adj[start].len() && used[adj[start][ptr[start]].0] {
            ptr[start] += 1;
        }
        if ptr[start] >= adj[start].len() {
            continue;
        }
        let circuit = euler_circuit(start, &adj, &mut used, &mut ptr);
        // alternate two classes along the circuit
        let mut class = vec![0u8; circuit.len()];
        for (t, c) in class.iter_mut().enumerate() {
            *c = (t % 2) as u8;
        }
        let chosen = if circuit.len() % 2 == 0 {
            0
        } else {
            // odd circuit: only the start vertex is imbalanced; keep the
            // class with the smaller count there
            let mut counts = [0usize; 2];
            for (t, &eid) in circuit.iter().enumerate() {
                if edge_touches(graph, eid, m, &adj, start) {
                    counts[class[t] as usize] += 1;
                }
            }
            if counts[0] <= counts[1] {
                0
            } else {
                1
            }
        };
        for (t, &eid) in circuit.iter().enumerate() {
            if eid < m && class[t] == chosen {
                keep[eid] = true;
            }
        }
    }

    let edges: Vec<Edge> = (0..m).filter(|&i| keep[i]).map(|i| graph.edge(i)).collect();
    let factor = SimpleGraph::new(n, edges).unwrap();
    let spec = FactorSpec::halving(graph);
    assert!(
        spec.admits(&factor),
        "factor degrees left the halving window"
    );
    factor
}

fn edge_touches(
    graph: &SimpleGraph,
    eid: usize,
    m: usize,
    adj: &[Vec<(usize, usize)>],
    vertex: usize,
) -> bool {
    if eid < m {
        graph.edge(eid).touches(vertex as u32)
    } else {
        // dummy edges touch the dummy and exactly one real vertex
        adj[vertex].iter().any(|&(id, _)| id == eid)
    }
}

// Hierholzer with the lowest-index unused incident edge first. Returns the
// circuit as a sequence of edge ids forming a closed trail through `start`.
fn euler_circuit(
    start: usize,
    adj: &[Vec<(usize, usize)>],
    used: &mut [bool],
    ptr: &mut [usize],
) -> Vec<usize> {
    let mut stack: Vec<(usize, usize)> = vec![(start, usize::MAX)];
    let mut circuit = Vec::new();
    while let Some(&(v, _)) = stack.last() {
        while ptr[v] < adj[v].len() && used[adj[v][ptr[v]].0] {
            ptr[v] += 1;
        }
        if ptr[v] < adj[v].len() {
            let (eid, w) = adj[v][ptr[v]];
            used[eid] = true;
            stack.push((w, eid));
        } else {
            let (_, eid) = stack.pop().unwrap();
            if eid != usize::MAX {
                circuit.push(eid);
            }
        }
    }
    circuit.reverse();
    circuit
}

/// Builds the factor decomposition of a 2-member family.
pub fn factor_decomposition(family: &GraphFamily) -> Result<FactorDecomposition, Error> {
    let split = split_private_common(family)?;
    let n = family.num_vertices();
    let delta = family.delta();
    let k_1 = half_factor(split.private_1());
    let k_2 = half_factor(split.private_2());
    let l_1 = subtract(split.private_1(), &k_1);
    let l_2 = subtract(split.private_2(), &k_2);
    let r = merge(n, &[split.common(), &k_1, &k_2]);
    let l = merge(n, &[&l_1, &l_2]);
    for v in 0..n as u32 {
        assert!(
            l_1.degree(v) <= delta / 2 + 1 && l_2.degree(v) <= delta / 2 + 1,
            "leftover degree exceeds delta/2 + 1 at vertex {v}"
        );
        assert!(
            r.degree(v) <= delta + 1,
            "remainder degree exceeds delta + 1 at vertex {v}"
        );
    }
    Ok(FactorDecomposition {
        k_1,
        k_2,
        l_1,
        l_2,
        r,
        l,
    })
}

fn subtract(graph: &SimpleGraph, removed: &SimpleGraph) -> SimpleGraph {
    let edges: Vec<Edge> = graph
        .edges()
        .iter()
        .filter(|e| !removed.has_edge(e))
        .copied()
        .collect();
    SimpleGraph::new(graph.num_vertices(), edges).unwrap()
}

fn merge(n: usize, parts: &[&SimpleGraph]) -> SimpleGraph {
    let edges: Vec<Edge> = parts.iter().flat_map(|g| g.edges().iter().copied()).collect();
    SimpleGraph::new(n, edges).unwrap()
}

/// The theorem's bound for two graphs: `floor(3 * delta / 2) + 4`.
pub fn bound_pair(delta: usize) -> usize {
    3 * delta / 2 + 4
}

/// Colors a 2-member family with at most `floor(3 * delta / 2) + 4` colors.
///
/// The two leftover graphs are colored on the *same* palette of
/// `floor(delta / 2) + 2` colors: their edges are private to different
/// members, so color collisions between them at a shared vertex are
/// harmless. The remainder gets a disjoint palette directly above.
pub fn color_pair(
    family: &GraphFamily,
) -> Result<(SimultaneousColoring, BoundCertificate), Error> {
    let decomp = factor_decomposition(family)?;
    let delta = family.delta();
    let l_palette = delta / 2 + 2;

    let mut coloring = SimultaneousColoring::new();
    for part in [&decomp.l_1, &decomp.l_2] {
        let ec = vizing_color(part);
        assert!(ec.palette_size() <= l_palette);
        for (e, c) in ec.iter(part) {
            coloring.set(e, c);
        }
    }
    let ec = vizing_color(&decomp.r);
    assert!(ec.palette_size() <= delta + 2);
    for (e, c) in ec.iter(&decomp.r) {
        coloring.set(e, l_palette + c);
    }

    let cert = BoundCertificate {
        algorithm: "pair".to_string(),
        palette_used: coloring.distinct_colors(),
        palette_bound: bound_pair(delta),
        closed_form_bound: None,
        ell: 2,
        delta,
        k: None,
    };
    assert!(cert.palette_used <= cert.palette_bound);
    Ok((coloring, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::verify::verify;

    fn e(u: u32, v: u32) -> Edge {
        Edge::new(u, v).unwrap()
    }

    fn graph(n: usize, edges: &[(u32, u32)]) -> SimpleGraph {
        SimpleGraph::new(n, edges.iter().map(|&(a, b)| e(a, b)).collect()).unwrap()
    }

    fn k4(n: usize) -> SimpleGraph {
        graph(n, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    // exhaustive reference: all subgraphs of `g` satisfying the halving window
    fn window_subgraphs(g: &SimpleGraph) -> Vec<Vec<Edge>> {
        let spec = FactorSpec::halving(g);
        let m = g.edge_count();
        let mut out = Vec::new();
        for mask in 0u32..(1 << m) {
            let edges: Vec<Edge> = (0..m)
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| g.edge(i))
                .collect();
            let sub = SimpleGraph::new(g.num_vertices(), edges.clone()).unwrap();
            if spec.admits(&sub) {
                out.push(edges);
            }
        }
        out
    }

    #[test]
    fn split_of_identical_members_is_all_common() {
        let fam = GraphFamily::new(4, vec![k4(4), k4(4)]).unwrap();
        let split = split_private_common(&fam).unwrap();
        assert_eq!(split.common().edge_count(), 6);
        assert_eq!(split.private_1().edge_count(), 0);
        assert_eq!(split.private_2().edge_count(), 0);
    }

    #[test]
    fn split_of_disjoint_members_has_empty_common() {
        let fam = GraphFamily::new(4, vec![graph(4, &[(0, 1)]), graph(4, &[(2, 3)])]).unwrap();
        let split = split_private_common(&fam).unwrap();
        assert_eq!(split.common().edge_count(), 0);
    }

    #[test]
    fn split_on_a_path_overlap() {
        let fam = GraphFamily::new(
            4,
            vec![graph(4, &[(0, 1), (1, 2)]), graph(4, &[(1, 2), (2, 3)])],
        )
        .unwrap();
        let split = split_private_common(&fam).unwrap();
        assert_eq!(split.common().edges(), &[e(1, 2)]);
        assert_eq!(split.private_1().edges(), &[e(0, 1)]);
        assert_eq!(split.private_2().edges(), &[e(2, 3)]);
    }

    #[test]
    fn split_rejects_wrong_arity() {
        let fam = GraphFamily::new(2, vec![graph(2, &[(0, 1)])]).unwrap();
        assert!(matches!(
            split_private_common(&fam),
            Err(Error::WrongArity { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn factor_of_even_cycle_is_perfect_matching() {
        let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        let k = half_factor(&c4);
        for v in 0..4u32 {
            assert_eq!(k.degree(v), 1);
        }
    }

    #[test]
    fn factor_of_triangle_is_a_single_edge() {
        let tri = graph(3, &[(0, 1), (0, 2), (1, 2)]);
        // window [0,1] at every vertex: the empty subgraph and the three
        // single edges qualify, nothing larger does
        let feasible = window_subgraphs(&tri);
        assert_eq!(feasible.len(), 4);
        assert!(feasible.iter().all(|f| f.len() <= 1));
        let k = half_factor(&tri);
        assert_eq!(k.edge_count(), 1);
        assert!(feasible.contains(&k.edges().to_vec()));
    }

    #[test]
    fn factor_of_star_respects_center_window() {
        let star = graph(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let k = half_factor(&star);
        assert!((2..=3).contains(&k.degree(0)));
        for v in 1..6u32 {
            assert!(k.degree(v) <= 1);
        }
    }

    #[test]
    fn factor_window_on_random_graphs() {
        for seed in 0..50 {
            let fam = crate::generate::random_family(16, 1, 5, 0.0, 100 + seed);
            let g = fam.member(0);
            let spec = FactorSpec::halving(g);
            assert!(spec.admits(&half_factor(g)), "seed {seed}");
        }
    }

    #[test]
    fn bound_pair_formula() {
        assert_eq!(bound_pair(0), 4);
        assert_eq!(bound_pair(4), 10);
        assert_eq!(bound_pair(5), 11);
        assert_eq!(bound_pair(10), 19);
    }

    #[test]
    fn identical_k4_members_color_within_bound() {
        let fam = GraphFamily::new(4, vec![k4(4), k4(4)]).unwrap();
        let (coloring, cert) = color_pair(&fam).unwrap();
        assert!(verify(&fam, &coloring).unwrap().valid);
        assert_eq!(cert.palette_bound, 8);
        assert!(coloring.distinct_colors() <= 4);
    }

    #[test]
    fn certificate_bound_values() {
        let fam = crate::generate::random_family(12, 2, 4, 0.4, 5);
        assert_eq!(fam.delta(), 4);
        let (_, cert) = color_pair(&fam).unwrap();
        assert_eq!(cert.palette_bound, 10);
    }

    #[test]
    fn random_pairs_verify_and_stay_within_bound() {
        for seed in 0..30 {
            let fam = crate::generate::random_family(14, 2, 5, 0.4, 200 + seed);
            let (coloring, cert) = color_pair(&fam).unwrap();
            let report = verify(&fam, &coloring).unwrap();
            assert!(report.valid, "seed {seed}: {:?}", report.violations);
            assert!(report.palette_used <= bound_pair(fam.delta()), "seed {seed}");
            assert!(cert.palette_used <= cert.palette_bound);
        }
    }
}
