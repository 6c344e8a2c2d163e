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

//! Stable file formats: the JSON family format shared by all commands, the
//! coloring document with its certificate, and the family content digest
//! that ties the two together.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::graph::{Edge, GraphFamily, SimpleGraph, SimultaneousColoring};
use crate::sqrt::BoundCertificate;

#[derive(Serialize, Deserialize)]
struct FamilyDoc {
    num_vertices: usize,
    graphs: Vec<Vec<[u32; 2]>>,
}

/// Parses the family format
/// `{"num_vertices": n, "graphs": [[[u, v], ...], ...]}`.
///
/// Vertices are 0-based, every pair must satisfy `u < v`, and duplicates
/// within one inner list are rejected.
pub fn family_from_json(text: &str) -> Result<GraphFamily, Error> {
    let doc: FamilyDoc = serde_json::from_str(text)?;
    let mut members = Vec::with_capacity(doc.graphs.len());
    for pairs in &doc.graphs {
        let mut edges = Vec::with_capacity(pairs.len());
        for &[u, v] in pairs {
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            if u > v {
                return Err(Error::NonCanonicalEdge(u, v));
            }
            edges.push(Edge::new(u, v).unwrap());
        }
        members.push(SimpleGraph::new(doc.num_vertices, edges)?);
    }
    GraphFamily::new(doc.num_vertices, members)
}

/// Canonical serialization: sorted edges, no whitespace. The digest is
/// computed over exactly this form.
pub fn family_to_json(family: &GraphFamily) -> String {
    let doc = FamilyDoc {
        num_vertices: family.num_vertices(),
        graphs: family
            .members()
            .iter()
            .map(|g| g.edges().iter().map(|e| [e.u(), e.v()]).collect())
            .collect(),
    };
    serde_json::to_string(&doc).unwrap()
}

/// SHA-256 of the canonical JSON form, hex encoded.
pub fn family_digest(family: &GraphFamily) -> String {
    let mut hasher = Sha256::new();
    hasher.update(family_to_json(family).as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Serialized coloring: canonical `(u, v, color)` triples plus the
/// certificate and a digest of the family it was computed for.
#[derive(Serialize, Deserialize)]
pub struct ColoringDocument {
    pub algorithm: String,
    pub palette_size: usize,
    pub family_digest: String,
    pub colors: Vec<(u32, u32, usize)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<BoundCertificate>,
}

impl ColoringDocument {
    pub fn new(
        algorithm: &str,
        family: &GraphFamily,
        coloring: &SimultaneousColoring,
        certificate: Option<BoundCertificate>,
    ) -> Self {
        ColoringDocument {
            algorithm: algorithm.to_string(),
            palette_size: coloring.palette_size(),
            family_digest: family_digest(family),
            colors: coloring.iter().map(|(e, &c)| (e.u(), e.v(), c)).collect(),
            certificate,
        }
    }

    pub fn to_coloring(&self) -> Result<SimultaneousColoring, Error> {
        let mut coloring = SimultaneousColoring::new();
        for &(u, v, c) in &self.colors {
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            if u > v {
                return Err(Error::NonCanonicalEdge(u, v));
            }
            let e = Edge::new(u, v).unwrap();
            if coloring.color_of(&e).is_some() {
                return Err(Error::DuplicateEdge(u, v));
            }
            coloring.set(e, c);
        }
        Ok(coloring)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).unwrap()
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(text)?)
    }
}
