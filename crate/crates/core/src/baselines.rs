//! Reference random graphs: Erdős–Rényi `G(N, p)` and Barabási–Albert.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{invalid, Result};
use crate::graph::UndirectedGraph;
use crate::seed;

/// `G(N, p)` parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ErParams {
    /// Number of nodes.
    pub node_count: usize,
    /// Probability of each unordered pair.
    pub edge_probability: f64,
    /// Seed.
    pub seed: u64,
}

/// Barabási–Albert parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BaParams {
    /// Final number of nodes.
    pub node_count: usize,
    /// Edges attached by each arriving node (`m`).
    pub edges_per_new_node: usize,
    /// Size of the initial clique (`m0`).
    pub seed_size: usize,
    /// Seed.
    pub seed: u64,
}

/// Samples `G(N, p)`.
///
/// Pairs are visited with geometric skips, so the cost is proportional to the
/// number of edges rather than to `N^2`.
pub fn generate_er(params: &ErParams) -> Result<UndirectedGraph> {
    let n = params.node_count;
    let p = params.edge_probability;
    if n == 0 {
        return Err(invalid("nodes", "node count must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(
            "p",
            alloc::format!("edge probability must be in [0, 1], got {p}"),
        ));
    }
    let mut adj = vec![Vec::new(); n];
    if p == 0.0 {
        return Ok(UndirectedGraph::from_adjacency(adj));
    }
    if p == 1.0 {
        for a in 0..n {
            for b in (a + 1)..n {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        return Ok(UndirectedGraph::from_adjacency(adj));
    }
    let mut rng = seed::stream(params.seed, seed::BASELINE_STREAM);
    let log_q = libm::log(1.0 - p);
    // Pairs (v, w) with w < v, enumerated row by row.
    let mut v = 1usize;
    let mut w: isize = -1;
    while v < n {
        let r: f64 = rng.random();
        let skip = libm::floor(libm::log(1.0 - r) / log_q);
        w += 1 + skip as isize;
        while v < n && w >= v as isize {
            w -= v as isize;
            v += 1;
        }
        if v < n {
            let u = w as usize;
            adj[v].push(u);
            adj[u].push(v);
        }
    }
    Ok(UndirectedGraph::from_adjacency(adj))
}

/// Grows a Barabási–Albert graph from a clique on `seed_size` nodes.
///
/// Targets are sampled proportionally to degree by drawing a uniform entry of
/// the edge-endpoint list; a repeated target is redrawn until `m` distinct
/// targets are found.
pub fn generate_ba(params: &BaParams) -> Result<UndirectedGraph> {
    let n = params.node_count;
    let m = params.edges_per_new_node;
    let m0 = params.seed_size;
    if m == 0 {
        return Err(invalid("m", "each new node must attach at least one edge"));
    }
    if m0 < m {
        return Err(invalid(
            "m0",
            alloc::format!("seed size {m0} is below m = {m}"),
        ));
    }
    if m0 >= n {
        return Err(invalid(
            "nodes",
            alloc::format!("node count {n} must exceed seed size {m0}"),
        ));
    }
    let mut rng = seed::stream(params.seed, seed::BASELINE_STREAM);
    let mut adj = vec![Vec::new(); n];
    let mut endpoints: Vec<usize> = Vec::with_capacity(m0 * m0 + 2 * m * (n - m0));
    for a in 0..m0 {
        for b in (a + 1)..m0 {
            adj[a].push(b);
            adj[b].push(a);
            endpoints.push(a);
            endpoints.push(b);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for v in m0..n {
        targets.clear();
        while targets.len() < m {
            // A one-node seed has no edges yet; fall back to uniform choice.
            let t = if endpoints.is_empty() {
                rng.random_range(0..v)
            } else {
                endpoints[rng.random_range(0..endpoints.len())]
            };
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            adj[v].push(t);
            adj[t].push(v);
            endpoints.push(v);
            endpoints.push(t);
        }
    }
    Ok(UndirectedGraph::from_adjacency(adj))
}
