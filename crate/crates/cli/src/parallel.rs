//! Multi-threaded drivers. Every node and every sweep job owns its random
//! stream, so results match the sequential path exactly for any thread count.

use hidden_tree_core::generator::{GenerationTrace, Generator};
use hidden_tree_core::DirectedGraph;
use rayon::prelude::*;

use crate::error::{CliError, CliResult};

/// Builds a rayon pool; `threads = 0` lets rayon pick.
pub fn pool(threads: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start thread pool: {e}")))
}

/// Runs every node's selection loop in parallel on the current pool.
pub fn generate(gen: &Generator) -> (DirectedGraph, GenerationTrace) {
    let outcomes = (0..gen.node_count())
        .into_par_iter()
        .map(|v| gen.node_outcome(v))
        .collect();
    gen.assemble(outcomes)
}
