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

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("loop edge {0}--{0} is not allowed")]
    LoopEdge(u32),
    #[error("edge ({0}, {1}) is not in canonical order (expected u < v)")]
    NonCanonicalEdge(u32, u32),
    #[error("edge ({u}, {v}) out of range for {num_vertices} vertices")]
    EdgeOutOfRange { u: u32, v: u32, num_vertices: usize },
    #[error("duplicate edge ({0}, {1}) within one graph")]
    DuplicateEdge(u32, u32),
    #[error("a family must contain at least one graph")]
    EmptyFamily,
    #[error("family has {got} members, supported maximum is {max}")]
    TooManyMembers { got: usize, max: usize },
    #[error("family members disagree on vertex count ({0} vs {1})")]
    VertexCountMismatch(usize, usize),
    #[error("algorithm requires exactly {expected} member graphs, family has {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("star construction requires an even delta, got {0}")]
    OddDelta(usize),
    #[error("star construction requires ell >= 2, got {0}")]
    TooFewGraphs(usize),
    #[error("no free color for edge ({0}, {1}) within the allotted palette")]
    PaletteExhausted(u32, u32),
    #[error("instance has {nodes} conflict nodes, cap is {cap}")]
    InstanceTooLarge { nodes: usize, cap: usize },
    #[error("coloring refers to edge ({0}, {1}) which is not in the union")]
    UnknownEdge(u32, u32),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}
