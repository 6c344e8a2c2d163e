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

//! Core graph representations: simple graphs, families on a shared vertex
//! set, the edge union with per-edge membership, and the conflict-graph
//! reduction that turns simultaneity into ordinary vertex coloring.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Upper limit on the number of member graphs in a family. Membership sets
/// are stored as single-word bitsets.
pub const MAX_MEMBERS: usize = 64;

pub type VertexId = u32;
pub type ColorId = usize;

/// An undirected edge in canonical order (`u < v`), loopless.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge {
    u: VertexId,
    v: VertexId,
}

impl Edge {
    /// Builds a canonical edge, swapping endpoints if needed. Loops are
    /// rejected.
    pub fn new(a: VertexId, b: VertexId) -> Result<Self, Error> {
        if a == b {
            return Err(Error::LoopEdge(a));
        }
        Ok(if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        })
    }

    pub fn u(&self) -> VertexId {
        self.u
    }

    pub fn v(&self) -> VertexId {
        self.v
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.u, self.v)
    }

    /// The endpoint that is not `x`. Panics if `x` is not an endpoint.
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            assert_eq!(x, self.v, "vertex {} is not an endpoint of {:?}", x, self);
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// Whether the two edges share at least one endpoint.
    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.u, self.v).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (u, v) = <(u32, u32)>::deserialize(d)?;
        Edge::new(u, v).map_err(serde::de::Error::custom)
    }
}

/// A simple loopless graph on a dense vertex range `[0, n)`.
///
/// Edges are kept sorted in canonical order; duplicate edges are a
/// construction error rather than being silently merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    num_vertices: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(num_vertices: usize, mut edges: Vec<Edge>) -> Result<Self, Error> {
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(w[0].u(), w[0].v()));
            }
        }
        let mut adjacency = vec![Vec::new(); num_vertices];
        for (idx, e) in edges.iter().enumerate() {
            if e.v() as usize >= num_vertices {
                return Err(Error::EdgeOutOfRange {
                    u: e.u(),
                    v: e.v(),
                    num_vertices,
                });
            }
            adjacency[e.u() as usize].push(idx);
            adjacency[e.v() as usize].push(idx);
        }
        Ok(SimpleGraph {
            num_vertices,
            edges,
            adjacency,
        })
    }

    pub fn empty(num_vertices: usize) -> Self {
        SimpleGraph::new(num_vertices, Vec::new()).unwrap()
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> Edge {
        self.edges[idx]
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge index of `(a, b)` if present.
    pub fn edge_id(&self, a: VertexId, b: VertexId) -> Option<usize> {
        let e = Edge::new(a, b).ok()?;
        self.edges.binary_search(&e).ok()
    }

    pub fn has_edge(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    /// Indices (into `edges`) of the edges incident to `v`.
    pub fn incident(&self, v: VertexId) -> &[usize] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// An ordered family of simple graphs on a common vertex set; the problem
/// instance for simultaneous coloring.
#[derive(Clone, Debug)]
pub struct GraphFamily {
    num_vertices: usize,
    members: Vec<SimpleGraph>,
    delta: usize,
}

impl GraphFamily {
    pub fn new(num_vertices: usize, members: Vec<SimpleGraph>) -> Result<Self, Error> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if members.len() > MAX_MEMBERS {
            return Err(Error::TooManyMembers {
                got: members.len(),
                max: MAX_MEMBERS,
            });
        }
        for g in &members {
            if g.num_vertices() != num_vertices {
                return Err(Error::VertexCountMismatch(num_vertices, g.num_vertices()));
            }
        }
        let delta = members.iter().map(SimpleGraph::max_degree).max().unwrap();
        Ok(GraphFamily {
            num_vertices,
            members,
            delta,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn ell(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[SimpleGraph] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &SimpleGraph {
        &self.members[i]
    }

    /// Family maximum degree: the max over members of their own max degree,
    /// not the degree of the union.
    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Bitset of member indices whose edge set contains `e`.
    pub fn membership(&self, e: &Edge) -> u64 {
        let mut bits = 0u64;
        for (i, g) in self.members.iter().enumerate() {
            if g.has_edge(e) {
                bits |= 1 << i;
            }
        }
        bits
    }
}

/// The edge union of a family, with per-edge membership bitsets.
#[derive(Clone, Debug)]
pub struct UnionGraph {
    base: SimpleGraph,
    membership: Vec<u64>,
    ell: usize,
    family_delta: usize,
}

impl UnionGraph {
    pub fn base(&self) -> &SimpleGraph {
        &self.base
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn family_delta(&self) -> usize {
        self.family_delta
    }

    /// Membership bitset of the edge with index `idx` in the base graph.
    pub fn membership(&self, idx: usize) -> u64 {
        self.membership[idx]
    }

    /// Number of member graphs containing the edge with index `idx`.
    pub fn multiplicity(&self, idx: usize) -> usize {
        self.membership[idx].count_ones() as usize
    }
}

/// Builds the edge union of the family. An edge is present iff at least one
/// member contains it; its membership records exactly which ones do.
pub fn build_union(family: &GraphFamily) -> UnionGraph {
    let mut seen: BTreeMap<Edge, u64> = BTreeMap::new();
    for (i, g) in family.members().iter().enumerate() {
        for e in g.edges() {
            *seen.entry(*e).or_insert(0) |= 1 << i;
        }
    }
    let edges: Vec<Edge> = seen.keys().copied().collect();
    let membership: Vec<u64> = seen.values().copied().collect();
    let base = SimpleGraph::new(family.num_vertices(), edges).unwrap();
    UnionGraph {
        base,
        membership,
        ell: family.ell(),
        family_delta: family.delta(),
    }
}

/// The vertex-coloring reduction: one node per union edge, adjacent iff the
/// two edges share an endpoint and co-occur in some member graph.
#[derive(Clone, Debug)]
pub struct ConflictGraph {
    nodes: Vec<Edge>,
    conflicts: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl ConflictGraph {
    pub fn nodes(&self) -> &[Edge] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn conflicts(&self) -> &[(usize, usize)] {
        &self.conflicts
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }
}

/// A simultaneous coloring of the family is exactly a proper vertex coloring
/// of the returned graph. Node order is the canonical sorted edge order.
pub fn conflict_graph(family: &GraphFamily) -> ConflictGraph {
    let union = build_union(family);
    let nodes = union.base().edges().to_vec();
    let mut conflicts = Vec::new();
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            if nodes[i].shares_endpoint(&nodes[j]) && union.membership(i) & union.membership(j) != 0
            {
                conflicts.push((i, j));
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    ConflictGraph {
        nodes,
        conflicts,
        adjacency,
    }
}

/// An assignment of colors to union edges plus the size of the palette it
/// draws from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimultaneousColoring {
    assignment: BTreeMap<Edge, ColorId>,
    palette_size: usize,
}

impl Default for SimultaneousColoring {
    fn default() -> Self {
        Self::new()
    }
}

impl SimultaneousColoring {
    pub fn new() -> Self {
        SimultaneousColoring {
            assignment: BTreeMap::new(),
            palette_size: 0,
        }
    }

    pub fn set(&mut self, e: Edge, color: ColorId) {
        self.assignment.insert(e, color);
        self.palette_size = self.palette_size.max(color + 1);
    }

    pub fn color_of(&self, e: &Edge) -> Option<ColorId> {
        self.assignment.get(e).copied()
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, &ColorId)> {
        self.assignment.iter()
    }

    /// Number of distinct colors actually present.
    pub fn distinct_colors(&self) -> usize {
        let mut cols: Vec<ColorId> = self.assignment.values().copied().collect();
        cols.sort_unstable();
        cols.dedup();
        cols.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(u: u32, v: u32) -> Edge {
        Edge::new(u, v).unwrap()
    }

    fn graph(n: usize, edges: &[(u32, u32)]) -> SimpleGraph {
        SimpleGraph::new(n, edges.iter().map(|&(a, b)| e(a, b)).collect()).unwrap()
    }

    #[test]
    fn edge_canonicalizes_and_rejects_loops() {
        assert_eq!(e(3, 1), e(1, 3));
        assert!(Edge::new(2, 2).is_err());
    }

    #[test]
    fn duplicate_edges_rejected() {
        let err = SimpleGraph::new(3, vec![e(0, 1), e(1, 0)]);
        assert!(matches!(err, Err(Error::DuplicateEdge(0, 1))));
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            SimpleGraph::new(2, vec![e(0, 5)]),
            Err(Error::EdgeOutOfRange { .. })
        ));
    }

    #[test]
    fn union_of_disjoint_members() {
        let fam = GraphFamily::new(3, vec![graph(3, &[(0, 1)]), graph(3, &[(1, 2)])]).unwrap();
        let u = build_union(&fam);
        assert_eq!(u.base().edges(), &[e(0, 1), e(1, 2)]);
        assert_eq!(u.multiplicity(0), 1);
        assert_eq!(u.multiplicity(1), 1);
    }

    #[test]
    fn union_of_identical_members() {
        let fam = GraphFamily::new(2, vec![graph(2, &[(0, 1)]), graph(2, &[(0, 1)])]).unwrap();
        let u = build_union(&fam);
        assert_eq!(u.base().edge_count(), 1);
        assert_eq!(u.multiplicity(0), 2);
    }

    #[test]
    fn union_of_three_star_pairs_has_uniform_multiplicity_two() {
        // Three members covering all pairs of two leaf blocks each: every
        // leaf edge sits in exactly two of the three pair graphs.
        let fam = crate::generate::star_three(4);
        let u = build_union(&fam);
        assert_eq!(u.base().edge_count(), 6);
        for idx in 0..u.base().edge_count() {
            assert!(u.base().edge(idx).touches(0));
            assert_eq!(u.multiplicity(idx), 2, "edge {idx}");
        }
    }

    #[test]
    fn conflict_graph_of_triangle_is_k3() {
        let fam = GraphFamily::new(3, vec![graph(3, &[(0, 1), (0, 2), (1, 2)])]).unwrap();
        let cg = conflict_graph(&fam);
        assert_eq!(cg.node_count(), 3);
        assert_eq!(cg.conflicts().len(), 3);
    }

    #[test]
    fn conflict_graph_of_star_three_is_complete() {
        let fam = crate::generate::star_three(4);
        let cg = conflict_graph(&fam);
        assert_eq!(cg.node_count(), 6);
        assert_eq!(cg.conflicts().len(), 15);
        // cross-check by direct pair enumeration over the members
        for i in 0..cg.node_count() {
            for j in (i + 1)..cg.node_count() {
                let (a, b) = (cg.nodes()[i], cg.nodes()[j]);
                let together = fam
                    .members()
                    .iter()
                    .any(|g| g.has_edge(&a) && g.has_edge(&b));
                assert!(together, "{a:?} and {b:?} never co-occur");
            }
        }
    }

    #[test]
    fn no_conflict_without_shared_endpoint() {
        let fam = GraphFamily::new(4, vec![graph(4, &[(0, 1)]), graph(4, &[(2, 3)])]).unwrap();
        let cg = conflict_graph(&fam);
        assert_eq!(cg.node_count(), 2);
        assert!(cg.conflicts().is_empty());
    }

    #[test]
    fn family_delta_is_member_max_not_union_max() {
        let fam = GraphFamily::new(3, vec![graph(3, &[(0, 1)]), graph(3, &[(0, 2)])]).unwrap();
        assert_eq!(fam.delta(), 1);
        assert_eq!(build_union(&fam).base().max_degree(), 2);
    }

    #[test]
    fn family_delta_of_star_family() {
        let fam = crate::generate::star_family(8, 4, false).unwrap();
        assert_eq!(fam.delta(), 4);
        for g in fam.members() {
            assert_eq!(g.max_degree(), 4);
        }
    }

    #[test]
    fn single_empty_member_has_delta_zero() {
        let fam = GraphFamily::new(4, vec![SimpleGraph::empty(4)]).unwrap();
        assert_eq!(fam.delta(), 0);
        assert!(GraphFamily::new(4, vec![]).is_err());
    }

    #[test]
    fn union_degree_bounded_by_member_degree_sum() {
        let fam = GraphFamily::new(
            5,
            vec![
                graph(5, &[(0, 1), (0, 2), (1, 2)]),
                graph(5, &[(0, 3), (0, 2), (3, 4)]),
            ],
        )
        .unwrap();
        let u = build_union(&fam);
        for v in 0..5u32 {
            let sum: usize = fam.members().iter().map(|g| g.degree(v)).sum();
            assert!(u.base().degree(v) <= sum);
            assert!(u.base().degree(v) <= fam.ell() * fam.delta());
        }
        for idx in 0..u.base().edge_count() {
            let m = u.multiplicity(idx);
            assert!((1..=fam.ell()).contains(&m));
        }
    }
}
