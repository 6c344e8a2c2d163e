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

//! Instance generators: the star-based lower-bound families and seeded
//! random families for benchmarking.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{Edge, GraphFamily, SimpleGraph};

/// Largest `k` with `2 * k * k <= ell`.
pub fn star_k(ell: usize) -> usize {
    let mut k = ((ell / 2) as f64).sqrt() as usize;
    while 2 * (k + 1) * (k + 1) <= ell {
        k += 1;
    }
    while k > 0 && 2 * k * k > ell {
        k -= 1;
    }
    k
}

/// The star lower-bound family: a star with `k * delta` leaves
/// (`k = floor(sqrt(ell / 2))`) whose edges are partitioned into `2k`
/// consecutive blocks of `delta / 2`; one member per block pair. Any
/// simultaneous coloring must give all star edges distinct colors.
///
/// With `pad`, empty members are appended up to `ell` graphs.
pub fn star_family(ell: usize, delta: usize, pad: bool) -> Result<GraphFamily, Error> {
    if delta % 2 != 0 || delta == 0 {
        return Err(Error::OddDelta(delta));
    }
    if ell < 2 {
        return Err(Error::TooFewGraphs(ell));
    }
    let k = star_k(ell);
    let leaves = k * delta;
    let n = leaves + 1;
    let part_size = delta / 2;
    // block i holds the edges to leaves [i*part_size, (i+1)*part_size)
    let block = |i: usize| -> Vec<Edge> {
        (i * part_size..(i + 1) * part_size)
            .map(|leaf| Edge::new(0, (leaf + 1) as u32).unwrap())
            .collect()
    };
    let mut members = Vec::new();
    for i in 0..2 * k {
        for j in (i + 1)..2 * k {
            let mut edges = block(i);
            edges.extend(block(j));
            members.push(SimpleGraph::new(n, edges).unwrap());
        }
    }
    if pad {
        while members.len() < ell {
            members.push(SimpleGraph::empty(n));
        }
    }
    GraphFamily::new(n, members)
}

/// The three-graph star family: `3 * floor(delta / 2)` leaves in three
/// blocks, one member per block pair. Its simultaneous chromatic number is
/// exactly the leaf count.
pub fn star_three(delta: usize) -> GraphFamily {
    assert!(delta >= 2, "star_three requires delta >= 2");
    let part_size = delta / 2;
    let leaves = 3 * part_size;
    let n = leaves + 1;
    let block = |i: usize| -> Vec<Edge> {
        (i * part_size..(i + 1) * part_size)
            .map(|leaf| Edge::new(0, (leaf + 1) as u32).unwrap())
            .collect()
    };
    let mut members = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let mut edges = block(i);
        edges.extend(block(j));
        members.push(SimpleGraph::new(n, edges).unwrap());
    }
    GraphFamily::new(n, members).unwrap()
}

/// A seeded random family: `ell` members on `n` vertices, each with max
/// degree at most `delta`. `overlap` is the probability that an edge already
/// present in an earlier member is copied into the next one. Identical
/// parameters and seed give an identical family.
pub fn random_family(n: usize, ell: usize, delta: usize, overlap: f64, seed: u64) -> GraphFamily {
    assert!(n >= 2, "need at least two vertices");
    assert!((0.0..=1.0).contains(&overlap));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members: Vec<BTreeSet<Edge>> = Vec::with_capacity(ell);
    let mut degrees: Vec<Vec<usize>> = Vec::with_capacity(ell);
    for i in 0..ell {
        let mut edges = BTreeSet::new();
        let mut deg = vec![0usize; n];
        let insert = |edges: &mut BTreeSet<Edge>, deg: &mut Vec<usize>, e: Edge| {
            let (u, v) = (e.u() as usize, e.v() as usize);
            if deg[u] < delta && deg[v] < delta && edges.insert(e) {
                deg[u] += 1;
                deg[v] += 1;
            }
        };
        if i > 0 && overlap > 0.0 {
            let pool: BTreeSet<Edge> = members.iter().flatten().copied().collect();
            for e in pool {
                if rng.gen::<f64>() < overlap {
                    insert(&mut edges, &mut deg, e);
                }
            }
        }
        // rejection sampling toward the degree cap, bounded retry budget
        let budget = 2 * n * delta.max(1);
        for _ in 0..budget {
            let u = rng.gen_range(0..n as u32);
            let v = rng.gen_range(0..n as u32);
            if u == v {
                continue;
            }
            insert(&mut edges, &mut deg, Edge::new(u, v).unwrap());
        }
        members.push(edges);
        degrees.push(deg);
    }
    let members = members
        .into_iter()
        .map(|edges| SimpleGraph::new(n, edges.into_iter().collect()).unwrap())
        .collect();
    GraphFamily::new(n, members).unwrap()
}

/// The Petersen graph as a single `SimpleGraph`; the smallest standard
/// example whose chromatic index exceeds its max degree.
pub fn petersen() -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..5u32 {
        edges.push(Edge::new(i, (i + 1) % 5).unwrap());
        edges.push(Edge::new(i, i + 5).unwrap());
        edges.push(Edge::new(i + 5, 5 + (i + 2) % 5).unwrap());
    }
    SimpleGraph::new(10, edges).unwrap()
}
