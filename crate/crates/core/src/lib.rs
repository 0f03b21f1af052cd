//! Even-cycle detection and listing in sparse graphs.
//!
//! The crate lists `2k`-cycles with a degree-ordered color-coding search
//! whose cost is governed by capped walks, exposes the layered decomposition
//! used to bound those walks, provides brute-force oracles for testing, and
//! verifies the 36 linear programs behind the `m^{1.6}` hexagon-listing bound
//! in exact rational arithmetic.

pub mod bench;
pub mod decomposition;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod listing;
pub mod lp;
pub mod oracle;
pub mod supersat;

pub use graph::{degree_order, load_edge_list, parse_edge_list, DegreeOrder, Graph, GraphError, Vertex};
pub use listing::{detect_c2k, list_c2k, list_c6, ListingConfig, ListingError, ListingOutput};
pub use oracle::{enumerate_cycles, Cycle};
