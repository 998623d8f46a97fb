//! Algorithms for list colouring problems on graphs of bounded treewidth
//! and for the list Hamilton path hardness construction.
//!
//! The crate is `no_std` and needs only `alloc`. File formats and the
//! command-line front end live in the `twlist` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chromatic;
pub mod construct;
pub mod decomp;
pub mod generate;
pub mod graph;
pub mod listcolor;
pub mod reduction;
pub mod treewidth;

pub use graph::{check_coloring, line_graph, total_graph, Color, Coloring, ElementId, Graph, ListAssignment, Mode};
