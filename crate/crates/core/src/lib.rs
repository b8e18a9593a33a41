//! Hidden-tree network model.
//!
//! Nodes are arranged in a static n-ary tree that is never emitted as part of
//! the graph. Each node draws random destinations according to its activity
//! and links to the destination together with every node on the tree path
//! leading there. The crate also carries the metrics used to characterize the
//! resulting graphs (in-degree CCDF, log-log power-law fit, clustering,
//! shortest paths) and two reference generators (Erdős–Rényi and
//! Barabási–Albert).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line front end and parallel drivers live in the companion CLI crate.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod baselines;
mod error;
pub mod generator;
pub mod graph;
pub mod metrics;
pub mod seed;
pub mod tree;

pub use error::{Error, Result};
pub use generator::{generate, GenerationTrace, Generator, ModelParams, Variant};
pub use graph::{Component, DirectedGraph, UndirectedGraph};
pub use metrics::{compute_report, Ccdf, FitBounds, MetricsReport, PathSampling, PowerLawFit};
pub use tree::{HiddenTree, TreeParams};
