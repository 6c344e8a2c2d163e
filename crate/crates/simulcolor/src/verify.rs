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

//! Independent validation: a coloring is simultaneous iff its restriction to
//! every member graph is proper. Every other module's output must pass this
//! check.

use serde::Serialize;

use crate::error::Error;
use crate::graph::{build_union, ColorId, Edge, GraphFamily, SimultaneousColoring, VertexId};
use crate::sqrt::BoundCertificate;

/// Two same-colored edges of one member meeting at a vertex.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Violation {
    pub member_index: usize,
    pub vertex: VertexId,
    pub color: ColorId,
    pub edges: (Edge, Edge),
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub palette_used: usize,
    pub uncolored: Vec<Edge>,
}

/// Checks simultaneity of `coloring` with respect to `family`.
///
/// Violations are enumerated exhaustively. Uncolored union edges are
/// reported separately from violations so partial colorings can be told
/// apart from improper ones.
pub fn verify(
    family: &GraphFamily,
    coloring: &SimultaneousColoring,
) -> Result<VerifyReport, Error> {
    let union = build_union(family);
    for (e, _) in coloring.iter() {
        if !union.base().has_edge(e) {
            return Err(Error::UnknownEdge(e.u(), e.v()));
        }
    }

    let mut violations = Vec::new();
    for (member_index, g) in family.members().iter().enumerate() {
        for vertex in 0..family.num_vertices() as u32 {
            let mut colored: Vec<(ColorId, Edge)> = g
                .incident(vertex)
                .iter()
                .filter_map(|&i| {
                    let e = g.edge(i);
                    coloring.color_of(&e).map(|c| (c, e))
                })
                .collect();
            colored.sort_unstable();
            for i in 0..colored.len() {
                for j in (i + 1)..colored.len() {
                    if colored[i].0 != colored[j].0 {
                        break;
                    }
                    violations.push(Violation {
                        member_index,
                        vertex,
                        color: colored[i].0,
                        edges: (colored[i].1, colored[j].1),
                    });
                }
            }
        }
    }

    let uncolored: Vec<Edge> = union
        .base()
        .edges()
        .iter()
        .filter(|e| coloring.color_of(e).is_none())
        .copied()
        .collect();

    Ok(VerifyReport {
        valid: violations.is_empty() && uncolored.is_empty(),
        violations,
        palette_used: coloring.distinct_colors(),
        uncolored,
    })
}

/// True iff the report is clean and the palette fits under the certified
/// bound.
pub fn check_certificate(report: &VerifyReport, certificate: &BoundCertificate) -> bool {
    report.valid && report.palette_used <= certificate.palette_bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;

    fn e(u: u32, v: u32) -> Edge {
        Edge::new(u, v).unwrap()
    }

    fn graph(n: usize, edges: &[(u32, u32)]) -> SimpleGraph {
        SimpleGraph::new(n, edges.iter().map(|&(a, b)| e(a, b)).collect()).unwrap()
    }

    #[test]
    fn all_distinct_star_coloring_is_valid() {
        let fam = crate::generate::star_three(4);
        let mut coloring = SimultaneousColoring::new();
        let union = crate::graph::build_union(&fam);
        for (i, edge) in union.base().edges().iter().enumerate() {
            coloring.set(*edge, i);
        }
        let report = verify(&fam, &coloring).unwrap();
        assert!(report.valid);
        assert_eq!(report.palette_used, 6);
    }

    #[test]
    fn same_block_collision_is_flagged() {
        // the first two star edges sit in the same leaf block, so they
        // co-occur in two members
        let fam = crate::generate::star_three(4);
        let union = crate::graph::build_union(&fam);
        let mut coloring = SimultaneousColoring::new();
        for (i, edge) in union.base().edges().iter().enumerate() {
            coloring.set(*edge, if i == 1 { 0 } else { i });
        }
        let report = verify(&fam, &coloring).unwrap();
        assert!(!report.valid);
        assert!(report.violations.len() >= 2);
        for v in &report.violations {
            assert_eq!(v.vertex, 0);
            assert_eq!(v.color, 0);
        }
    }

    #[test]
    fn cross_member_color_reuse_is_allowed() {
        // uv only in member 0, uw only in member 1: equal colors at u are fine
        let fam = GraphFamily::new(3, vec![graph(3, &[(0, 1)]), graph(3, &[(0, 2)])]).unwrap();
        let mut coloring = SimultaneousColoring::new();
        coloring.set(e(0, 1), 0);
        coloring.set(e(0, 2), 0);
        let report = verify(&fam, &coloring).unwrap();
        assert!(report.valid);
        assert_eq!(report.palette_used, 1);
    }

    #[test]
    fn uncolored_edges_are_a_separate_category() {
        let fam = GraphFamily::new(3, vec![graph(3, &[(0, 1), (1, 2)])]).unwrap();
        let mut coloring = SimultaneousColoring::new();
        coloring.set(e(0, 1), 0);
        let report = verify(&fam, &coloring).unwrap();
        assert!(!report.valid);
        assert!(report.violations.is_empty());
        assert_eq!(report.uncolored, vec![e(1, 2)]);
    }

    #[test]
    fn unknown_edge_is_an_error() {
        let fam = GraphFamily::new(3, vec![graph(3, &[(0, 1)])]).unwrap();
        let mut coloring = SimultaneousColoring::new();
        coloring.set(e(1, 2), 0);
        assert!(matches!(
            verify(&fam, &coloring),
            Err(Error::UnknownEdge(1, 2))
        ));
    }

    #[test]
    fn certificate_check_truth_table() {
        let cert = BoundCertificate {
            algorithm: "pair".into(),
            palette_used: 6,
            palette_bound: 10,
            closed_form_bound: None,
            ell: 2,
            delta: 4,
            k: None,
        };
        let ok = VerifyReport {
            valid: true,
            violations: vec![],
            palette_used: 6,
            uncolored: vec![],
        };
        assert!(check_certificate(&ok, &cert));
        let invalid = VerifyReport { valid: false, ..ok.clone() };
        assert!(!check_certificate(&invalid, &cert));
        let over = VerifyReport {
            palette_used: 11,
            ..ok
        };
        assert!(!check_certificate(&over, &cert));
    }

    #[test]
    fn verify_matches_conflict_graph_properness() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for seed in 0..40 {
            let fam = crate::generate::random_family(6, 2, 2, 0.5, seed);
            let cg = crate::graph::conflict_graph(&fam);
            let mut coloring = SimultaneousColoring::new();
            let colors: Vec<usize> = (0..cg.node_count()).map(|_| rng.gen_range(0..3)).collect();
            for (i, edge) in cg.nodes().iter().enumerate() {
                coloring.set(*edge, colors[i]);
            }
            let proper = cg
                .conflicts()
                .iter()
                .all(|&(i, j)| colors[i] != colors[j]);
            let report = verify(&fam, &coloring).unwrap();
            assert_eq!(report.valid, proper, "seed {seed}");
        }
    }
}
