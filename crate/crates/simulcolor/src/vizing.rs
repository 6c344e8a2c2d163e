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

//! Constructive proper edge coloring of a simple graph with at most
//! `max_degree + 1` colors, via fan rotation and alternating-path flips
//! (the Misra–Gries realization of Vizing's bound).

use crate::graph::{ColorId, Edge, SimpleGraph};

/// A proper edge coloring of a single graph.
#[derive(Clone, Debug)]
pub struct EdgeColoring {
    colors: Vec<ColorId>,
    palette_size: usize,
}

impl EdgeColoring {
    /// Color of the edge with index `idx` in the colored graph.
    pub fn color(&self, idx: usize) -> ColorId {
        self.colors[idx]
    }

    pub fn colors(&self) -> &[ColorId] {
        &self.colors
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    /// Pairs of (edge, color) in canonical edge order.
    pub fn iter<'a>(&'a self, graph: &'a SimpleGraph) -> impl Iterator<Item = (Edge, ColorId)> + 'a {
        self.colors
            .iter()
            .enumerate()
            .map(move |(i, &c)| (graph.edge(i), c))
    }
}

struct Palette {
    palette: usize,
    // color_at[v][c] = edge index of the c-colored edge at v, if any
    color_at: Vec<Vec<Option<usize>>>,
    edge_color: Vec<Option<ColorId>>,
}

impl Palette {
    fn new(n: usize, m: usize, palette: usize) -> Self {
        Palette {
            palette,
            color_at: vec![vec![None; palette]; n],
            edge_color: vec![None; m],
        }
    }

    fn free_color(&self, v: usize) -> ColorId {
        (0..self.palette)
            .find(|&c| self.color_at[v][c].is_none())
            .expect("vertex degree exceeds palette")
    }

    fn is_free(&self, v: usize, c: ColorId) -> bool {
        self.color_at[v][c].is_none()
    }

    fn assign(&mut self, graph: &SimpleGraph, idx: usize, c: ColorId) {
        let e = graph.edge(idx);
        assert!(self.edge_color[idx].is_none());
        assert!(self.is_free(e.u() as usize, c) && self.is_free(e.v() as usize, c));
        self.edge_color[idx] = Some(c);
        self.color_at[e.u() as usize][c] = Some(idx);
        self.color_at[e.v() as usize][c] = Some(idx);
    }

    fn clear(&mut self, graph: &SimpleGraph, idx: usize) -> ColorId {
        let e = graph.edge(idx);
        let c = self.edge_color[idx].take().expect("clearing uncolored edge");
        self.color_at[e.u() as usize][c] = None;
        self.color_at[e.v() as usize][c] = None;
        c
    }
}

/// Properly edge-colors `graph` with at most `max_degree + 1` colors.
///
/// Deterministic: edges are processed in canonical sorted order, the fan
/// center is the lower endpoint, and all color choices take the smallest
/// available index.
pub fn vizing_color(graph: &SimpleGraph) -> EdgeColoring {
    let n = graph.num_vertices();
    let m = graph.edge_count();
    let palette = graph.max_degree() + 1;
    let mut st = Palette::new(n, m, palette);

    for idx in 0..m {
        color_one(graph, &mut st, idx);
    }

    let colors: Vec<ColorId> = st.edge_color.iter().map(|c| c.unwrap()).collect();
    let palette_size = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
    EdgeColoring {
        colors,
        palette_size,
    }
}

fn color_one(graph: &SimpleGraph, st: &mut Palette, idx: usize) {
    let e = graph.edge(idx);
    let u = e.u() as usize;

    // Maximal fan at u starting from v: each next fan vertex w is reached by
    // an edge (u, w) whose color is free at the previous fan end.
    let mut fan: Vec<usize> = vec![e.v() as usize];
    let mut in_fan = vec![false; graph.num_vertices()];
    in_fan[e.v() as usize] = true;
    loop {
        let last = *fan.last().unwrap();
        let mut next = None;
        for c in 0..st.palette {
            if st.is_free(last, c) {
                if let Some(f) = st.color_at[u][c] {
                    let w = graph.edge(f).other(u as u32) as usize;
                    if !in_fan[w] {
                        next = Some(w);
                        break;
                    }
                }
            }
        }
        match next {
            Some(w) => {
                fan.push(w);
                in_fan[w] = true;
            }
            None => break,
        }
    }

    let c = st.free_color(u);
    let d = st.free_color(*fan.last().unwrap());

    // Flip the maximal path through u alternating between colors c and d;
    // afterwards d is free at u. The step guard turns an (impossible)
    // cycle in the two-color subgraph into a loud failure.
    if c != d && !st.is_free(u, d) {
        let mut path = Vec::new();
        let mut x = u;
        let mut cur = d;
        while let Some(f) = st.color_at[x][cur] {
            path.push(f);
            assert!(path.len() <= graph.edge_count(), "alternating path cycled");
            x = graph.edge(f).other(x as u32) as usize;
            cur = if cur == d { c } else { d };
        }
        let old: Vec<ColorId> = path.iter().map(|&f| st.clear(graph, f)).collect();
        for (&f, &col) in path.iter().zip(&old) {
            let flipped = if col == c { d } else { c };
            st.assign(graph, f, flipped);
        }
    }

    // Rotation point: the deepest fan prefix that is still a fan under the
    // current colors and whose end has d free.
    let mut pick = None;
    for j in 0..fan.len() {
        if j > 0 {
            let f = graph.edge_id(u as u32, fan[j] as u32).unwrap();
            let col = st.edge_color[f].unwrap();
            if !st.is_free(fan[j - 1], col) {
                break;
            }
        }
        if st.is_free(fan[j], d) {
            pick = Some(j);
        }
    }
    let j = pick.expect("no rotation point: fan invariant violated");

    // Shift each fan edge's color one step toward the uncolored edge, then
    // finish the fan end with d.
    let mut shifted = Vec::with_capacity(j);
    for i in 0..j {
        let f = graph.edge_id(u as u32, fan[i + 1] as u32).unwrap();
        shifted.push((i, st.clear(graph, f)));
    }
    for (i, col) in shifted {
        let target = graph.edge_id(u as u32, fan[i] as u32).unwrap();
        st.assign(graph, target, col);
    }
    let target = graph.edge_id(u as u32, fan[j] as u32).unwrap();
    st.assign(graph, target, d);
}

/// Checks that no two incident edges of `graph` share a color.
pub fn is_proper(graph: &SimpleGraph, coloring: &EdgeColoring) -> bool {
    for v in 0..graph.num_vertices() as u32 {
        let mut seen: Vec<ColorId> = graph
            .incident(v)
            .iter()
            .map(|&i| coloring.color(i))
            .collect();
        seen.sort_unstable();
        let len = seen.len();
        seen.dedup();
        if seen.len() != len {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn graph(n: usize, edges: &[(u32, u32)]) -> SimpleGraph {
        SimpleGraph::new(
            n,
            edges.iter().map(|&(a, b)| Edge::new(a, b).unwrap()).collect(),
        )
        .unwrap()
    }

    use crate::generate::petersen;

    #[test]
    fn triangle_needs_three_colors() {
        let g = graph(3, &[(0, 1), (0, 2), (1, 2)]);
        let c = vizing_color(&g);
        assert!(is_proper(&g, &c));
        assert_eq!(c.palette_size(), 3);
    }

    #[test]
    fn star_uses_exactly_its_degree() {
        let g = graph(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let c = vizing_color(&g);
        assert!(is_proper(&g, &c));
        assert_eq!(c.palette_size(), 5);
        let mut cols = c.colors().to_vec();
        cols.sort_unstable();
        cols.dedup();
        assert_eq!(cols.len(), 5);
    }

    #[test]
    fn petersen_within_four_colors() {
        let g = petersen();
        let c = vizing_color(&g);
        assert!(is_proper(&g, &c));
        assert!(c.palette_size() <= 4);
    }

    #[test]
    fn empty_graph() {
        let g = SimpleGraph::empty(4);
        let c = vizing_color(&g);
        assert_eq!(c.palette_size(), 0);
    }

    #[test]
    fn deterministic_on_same_input() {
        let g = petersen();
        assert_eq!(vizing_color(&g).colors(), vizing_color(&g).colors());
    }

    #[test]
    fn random_graphs_stay_within_delta_plus_one() {
        for seed in 0..60 {
            let fam = crate::generate::random_family(20, 1, 5, 0.0, seed);
            let g = fam.member(0);
            let c = vizing_color(g);
            assert!(is_proper(g, &c), "seed {seed}");
            assert!(c.palette_size() <= g.max_degree() + 1, "seed {seed}");
        }
    }
}
