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

//! The multiplicity-split algorithm: edges of multiplicity at least `k` form
//! a heavy part colored by the Vizing routine, the rest are extended greedily
//! on a disjoint palette. With `k = sqrt(ell / 2)` the total palette is at
//! most `2*sqrt(2*ell)*delta - sqrt(2*ell) + 2`.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{build_union, ColorId, Edge, GraphFamily, SimpleGraph, SimultaneousColoring, UnionGraph};
use crate::vizing::vizing_color;

/// Partition of the union edges by a (possibly non-integer) multiplicity
/// threshold `k`.
#[derive(Clone, Debug)]
pub struct MultiplicitySplit {
    k: f64,
    heavy: SimpleGraph,
    light: SimpleGraph,
}

impl MultiplicitySplit {
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Edges with multiplicity >= k.
    pub fn heavy(&self) -> &SimpleGraph {
        &self.heavy
    }

    /// Edges with multiplicity < k.
    pub fn light(&self) -> &SimpleGraph {
        &self.light
    }

    pub fn heavy_edges(&self) -> &[Edge] {
        self.heavy.edges()
    }

    pub fn light_edges(&self) -> &[Edge] {
        self.light.edges()
    }
}

/// A checkable palette bound produced alongside a coloring.
///
/// `palette_bound` is the exact integer expression the construction
/// guarantees; `closed_form_bound` is the theorem's closed form rounded up,
/// recorded separately because it involves irrationals.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BoundCertificate {
    pub algorithm: String,
    pub palette_used: usize,
    pub palette_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_bound: Option<usize>,
    pub ell: usize,
    pub delta: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
}

/// Splits the union edges into heavy (multiplicity >= k) and light
/// (multiplicity < k) parts. `k` need not be an integer.
pub fn split_by_multiplicity(union: &UnionGraph, k: f64) -> MultiplicitySplit {
    assert!(k > 0.0, "threshold must be positive");
    let mut heavy = Vec::new();
    let mut light = Vec::new();
    for idx in 0..union.base().edge_count() {
        if union.multiplicity(idx) as f64 >= k {
            heavy.push(union.base().edge(idx));
        } else {
            light.push(union.base().edge(idx));
        }
    }
    let n = union.base().num_vertices();
    let heavy = SimpleGraph::new(n, heavy).unwrap();
    let light = SimpleGraph::new(n, light).unwrap();
    // counting bound: at most ell*delta edge slots at a vertex, each heavy
    // edge consumes at least k of them
    let cap = (union.ell() as f64 * union.family_delta() as f64 / k).floor() as usize;
    assert!(
        heavy.max_degree() <= cap,
        "heavy degree {} exceeds ell*delta/k = {}",
        heavy.max_degree(),
        cap
    );
    MultiplicitySplit {
        k,
        heavy,
        light,
    }
}

/// Extends `partial` over the listed edges, giving each edge the smallest
/// palette color not used on an incident edge of any member that contains it.
pub fn greedy_extend(
    family: &GraphFamily,
    partial: &SimultaneousColoring,
    edges: &[Edge],
    palette: std::ops::Range<ColorId>,
) -> Result<SimultaneousColoring, Error> {
    let mut coloring = partial.clone();
    for e in edges {
        let mut forbidden: Vec<ColorId> = Vec::new();
        for g in family.members() {
            if !g.has_edge(e) {
                continue;
            }
            for &v in &[e.u(), e.v()] {
                for &fi in g.incident(v) {
                    let f = g.edge(fi);
                    if f == *e {
                        continue;
                    }
                    if let Some(c) = coloring.color_of(&f) {
                        forbidden.push(c);
                    }
                }
            }
        }
        forbidden.sort_unstable();
        forbidden.dedup();
        let chosen = palette
            .clone()
            .find(|c| forbidden.binary_search(c).is_err())
            .ok_or(Error::PaletteExhausted(e.u(), e.v()))?;
        coloring.set(*e, chosen);
    }
    Ok(coloring)
}

fn sqrt_certificate(
    ell: usize,
    delta: usize,
    k: f64,
    palette_used: usize,
    with_closed_form: bool,
) -> BoundCertificate {
    let heavy_part = (ell as f64 * delta as f64 / k).ceil() as usize + 1;
    let light_part = 2 * light_budget_per_side(k) * delta.saturating_sub(1) + 1;
    let closed_form_bound = with_closed_form.then(|| {
        let s = (2.0 * ell as f64).sqrt();
        (2.0 * s * delta as f64 - s + 2.0).ceil() as usize
    });
    BoundCertificate {
        algorithm: "sqrt".to_string(),
        palette_used,
        palette_bound: heavy_part + light_part,
        closed_form_bound,
        ell,
        delta,
        k: Some(k),
    }
}

// ceil(k - 1), clamped at 0; an edge of integer multiplicity r < k has
// r <= ceil(k - 1).
fn light_budget_per_side(k: f64) -> usize {
    (k - 1.0).ceil().max(0.0) as usize
}

fn color_with_threshold(
    family: &GraphFamily,
    union: &UnionGraph,
    k: f64,
) -> Result<SimultaneousColoring, Error> {
    let split = split_by_multiplicity(union, k);
    let heavy_coloring = vizing_color(split.heavy());
    let mut coloring = SimultaneousColoring::new();
    for (e, c) in heavy_coloring.iter(split.heavy()) {
        coloring.set(e, c);
    }
    let offset = heavy_coloring.palette_size();
    let budget = 2 * light_budget_per_side(k) * family.delta().saturating_sub(1) + 1;
    greedy_extend(family, &coloring, split.light_edges(), offset..offset + budget)
}

/// Colors the family with threshold `k = sqrt(ell / 2)`: Vizing on the heavy
/// part, greedy extension of the light part on a disjoint palette above it.
pub fn color_union_sqrt(
    family: &GraphFamily,
) -> Result<(SimultaneousColoring, BoundCertificate), Error> {
    let union = build_union(family);
    let k = (family.ell() as f64 / 2.0).sqrt();
    let coloring = color_with_threshold(family, &union, k)?;
    let cert = sqrt_certificate(family.ell(), family.delta(), k, coloring.distinct_colors(), true);
    assert!(cert.palette_used <= cert.palette_bound);
    Ok((coloring, cert))
}

/// Like [`color_union_sqrt`] but additionally tries every integer threshold
/// in `1..=ell` and keeps the smallest actual palette. The certificate bound
/// is the exact expression for the winning threshold.
pub fn color_union_sqrt_sweep(
    family: &GraphFamily,
) -> Result<(SimultaneousColoring, BoundCertificate), Error> {
    let union = build_union(family);
    let mut candidates: Vec<f64> = vec![(family.ell() as f64 / 2.0).sqrt()];
    candidates.extend((1..=family.ell()).map(|k| k as f64));
    let mut best: Option<(SimultaneousColoring, f64)> = None;
    for k in candidates {
        let coloring = color_with_threshold(family, &union, k)?;
        let better = match &best {
            Some((b, _)) => coloring.distinct_colors() < b.distinct_colors(),
            None => true,
        };
        if better {
            best = Some((coloring, k));
        }
    }
    let (coloring, k) = best.unwrap();
    let with_closed_form = k == (family.ell() as f64 / 2.0).sqrt();
    let cert = sqrt_certificate(
        family.ell(),
        family.delta(),
        k,
        coloring.distinct_colors(),
        with_closed_form,
    );
    assert!(cert.palette_used <= cert.palette_bound);
    Ok((coloring, cert))
}

/// The fallback: a proper edge coloring of the whole union is trivially
/// simultaneous, and the union has degree at most `ell * delta`.
pub fn color_union_trivial(
    family: &GraphFamily,
) -> Result<(SimultaneousColoring, BoundCertificate), Error> {
    let union = build_union(family);
    let edge_coloring = vizing_color(union.base());
    let mut coloring = SimultaneousColoring::new();
    for (e, c) in edge_coloring.iter(union.base()) {
        coloring.set(e, c);
    }
    let cert = BoundCertificate {
        algorithm: "trivial".to_string(),
        palette_used: coloring.distinct_colors(),
        palette_bound: family.ell() * family.delta() + 1,
        closed_form_bound: None,
        ell: family.ell(),
        delta: family.delta(),
        k: None,
    };
    assert!(cert.palette_used <= cert.palette_bound);
    Ok((coloring, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, GraphFamily, SimpleGraph};
    use crate::verify::verify;

    fn e(u: u32, v: u32) -> Edge {
        Edge::new(u, v).unwrap()
    }

    fn graph(n: usize, edges: &[(u32, u32)]) -> SimpleGraph {
        SimpleGraph::new(n, edges.iter().map(|&(a, b)| e(a, b)).collect()).unwrap()
    }

    #[test]
    fn all_heavy_when_multiplicity_meets_threshold() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let fam = GraphFamily::new(3, vec![g.clone(), g]).unwrap();
        let union = build_union(&fam);
        let split = split_by_multiplicity(&union, 1.5);
        assert_eq!(split.heavy_edges().len(), 2);
        assert!(split.light_edges().is_empty());
    }

    #[test]
    fn threshold_comparison_is_inclusive() {
        let fam =
            GraphFamily::new(3, vec![graph(3, &[(0, 1)]), graph(3, &[(1, 2)])]).unwrap();
        let union = build_union(&fam);
        let split = split_by_multiplicity(&union, 1.0);
        assert_eq!(split.heavy_edges().len(), 2);
        assert!(split.light_edges().is_empty());
    }

    #[test]
    fn star_three_edges_all_heavy_at_sqrt_threshold() {
        let fam = crate::generate::star_three(4);
        let union = build_union(&fam);
        let split = split_by_multiplicity(&union, (1.5f64).sqrt());
        assert_eq!(split.heavy_edges().len(), 6);
        assert!(split.light_edges().is_empty());
    }

    #[test]
    fn partition_covers_union_for_any_threshold() {
        let fam = crate::generate::random_family(12, 3, 4, 0.4, 9);
        let union = build_union(&fam);
        for k in [0.5, 1.0, 1.5, 2.0, 3.0, 10.0] {
            let split = split_by_multiplicity(&union, k);
            assert_eq!(
                split.heavy_edges().len() + split.light_edges().len(),
                union.base().edge_count()
            );
        }
    }

    #[test]
    fn greedy_picks_smallest_free_color() {
        // path 0-1-2 with 01 in G1 only, 12 in both members
        let fam = GraphFamily::new(
            3,
            vec![graph(3, &[(0, 1), (1, 2)]), graph(3, &[(1, 2)])],
        )
        .unwrap();
        let mut partial = SimultaneousColoring::new();
        partial.set(e(0, 1), 0);
        let out = greedy_extend(&fam, &partial, &[e(1, 2)], 0..5).unwrap();
        assert_eq!(out.color_of(&e(1, 2)), Some(1));
    }

    #[test]
    fn greedy_uses_zero_with_no_colored_neighborhood() {
        let fam = GraphFamily::new(3, vec![graph(3, &[(0, 1)])]).unwrap();
        let out = greedy_extend(&fam, &SimultaneousColoring::new(), &[e(0, 1)], 0..3).unwrap();
        assert_eq!(out.color_of(&e(0, 1)), Some(0));
    }

    #[test]
    fn greedy_reports_exhaustion() {
        let fam = GraphFamily::new(3, vec![graph(3, &[(0, 1), (1, 2)])]).unwrap();
        let mut partial = SimultaneousColoring::new();
        partial.set(e(0, 1), 0);
        let err = greedy_extend(&fam, &partial, &[e(1, 2)], 0..1);
        assert!(matches!(err, Err(Error::PaletteExhausted(1, 2))));
    }

    #[test]
    fn single_member_family_degrades_to_vizing() {
        let g = graph(3, &[(0, 1), (0, 2), (1, 2)]);
        let fam = GraphFamily::new(3, vec![g]).unwrap();
        let (coloring, cert) = color_union_sqrt(&fam).unwrap();
        assert!(verify(&fam, &coloring).unwrap().valid);
        assert!(coloring.palette_size() <= fam.delta() + 1);
        assert_eq!(cert.ell, 1);
    }

    #[test]
    fn closed_form_bound_matches_formula() {
        // ell = 8, delta = 5: 2*4*5 - 4 + 2 = 38
        let fam = crate::generate::random_family(30, 8, 5, 0.3, 3);
        assert_eq!(fam.delta(), 5);
        let (_, cert) = color_union_sqrt(&fam).unwrap();
        assert_eq!(cert.closed_form_bound, Some(38));

        // ell = 2, delta = 3: 4*3 - 2 + 2 = 12
        let fam = crate::generate::random_family(20, 2, 3, 0.3, 4);
        assert_eq!(fam.delta(), 3);
        let (coloring, cert) = color_union_sqrt(&fam).unwrap();
        assert_eq!(cert.closed_form_bound, Some(12));
        assert!(coloring.distinct_colors() <= 12);
    }

    #[test]
    fn trivial_coloring_of_identical_single_edges_uses_one_color() {
        let g = graph(2, &[(0, 1)]);
        let fam = GraphFamily::new(2, vec![g.clone(), g]).unwrap();
        let (coloring, _) = color_union_trivial(&fam).unwrap();
        assert_eq!(coloring.distinct_colors(), 1);
    }

    #[test]
    fn trivial_bound_on_star_constructions() {
        let fam = crate::generate::star_three(4);
        let (coloring, cert) = color_union_trivial(&fam).unwrap();
        assert!(verify(&fam, &coloring).unwrap().valid);
        assert_eq!(coloring.distinct_colors(), 6);
        assert!(cert.palette_bound <= 13);

        let fam = crate::generate::star_three(10);
        let (coloring, cert) = color_union_trivial(&fam).unwrap();
        assert_eq!(cert.palette_bound, 31);
        assert_eq!(coloring.distinct_colors(), 15);
    }

    #[test]
    fn sweep_never_beats_bound_and_verifies() {
        for seed in 0..10 {
            let fam = crate::generate::random_family(15, 4, 4, 0.5, seed);
            let (plain, _) = color_union_sqrt(&fam).unwrap();
            let (swept, cert) = color_union_sqrt_sweep(&fam).unwrap();
            assert!(verify(&fam, &swept).unwrap().valid);
            assert!(swept.distinct_colors() <= plain.distinct_colors());
            assert!(cert.palette_used <= cert.palette_bound);
        }
    }
}
