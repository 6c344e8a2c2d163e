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

//! Simultaneous edge coloring of families of graphs on a shared vertex set.
//!
//! A coloring of the edge union of graphs `G_1, ..., G_l` is *simultaneous*
//! if its restriction to each member is a proper edge coloring; edges that
//! meet at a vertex but never co-occur in a member may share a color. This
//! crate provides:
//!
//! - [`sqrt::color_union_sqrt`]: splits union edges by multiplicity, colors
//!   the heavy part with the Vizing routine and extends greedily over the
//!   rest, within `2*sqrt(2l)*delta - sqrt(2l) + 2` colors;
//! - [`pair::color_pair`]: for two graphs, a factor-based split achieving
//!   `floor(3*delta/2) + 4` colors;
//! - [`generate`]: star families whose simultaneous chromatic number is
//!   exactly their edge count, plus seeded random instances;
//! - [`exact`]: a branch-and-bound oracle for small instances with a
//!   brute-force cross-check;
//! - [`verify`]: the independent validator every coloring must satisfy.

pub mod error;
pub mod exact;
pub mod generate;
pub mod graph;
pub mod io;
pub mod pair;
pub mod sqrt;
pub mod verify;
pub mod vizing;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
