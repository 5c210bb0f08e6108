//! Small dense vertex sets in multigraphs and t-hypergraphs, and audits of
//! non-adaptive cell-probe layouts built on them.
//!
//! A set `S` of vertices *spans* an edge when it contains all of the edge's
//! vertices. The finders return sets spanning more edges than they have
//! vertices, with size bounds logarithmic in the vertex count:
//!
//! * [`find_dense_set`]: `|S| + 1` edges when `m >= s(1 + eps)`;
//! * [`find_gap_set`]: `|S| + g` edges when `m >= 2s + g + 1`;
//! * [`find_hyper_dense`]: at most `k` vertices spanning
//!   `|S| + k / (2^(t+1) log2 s)` hyperedges of a dense t-hypergraph.
//!
//! [`oracle`] holds exhaustive checkers for small inputs, [`tightness`] a
//! random-hypergraph experiment, and [`cellprobe`] the layout auditor.

pub mod cellprobe;
pub mod cli;
pub mod dense;
pub mod error;
pub mod field;
pub mod gap;
pub mod graph;
pub mod hyper;
pub mod log2;
pub mod oracle;
pub mod tadpole;
pub mod tightness;

pub use dense::{find_dense_set, DensityParams};
pub use error::{Error, Result};
pub use gap::find_gap_set;
pub use graph::{parse_graph, DenseWitness, EdgeList, Graph, Multigraph, THypergraph};
pub use hyper::{find_hyper_dense, Mode};
pub use tadpole::{find_tadpole, Tadpole};
