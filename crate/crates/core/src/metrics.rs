//! Degree distribution, power-law fit, clustering and shortest paths.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, UndirectedGraph};
use crate::seed;

/// Minimum number of in-range CCDF points for a fit.
pub const MIN_FIT_POINTS: usize = 5;

/// Automatic upper fit bound keeps only degrees reached by at least this many nodes.
pub const TAIL_MIN_NODES: usize = 10;

/// Default lower fit bound.
pub const DEFAULT_K_MIN: usize = 2;

/// One point of the complementary cumulative in-degree distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CcdfPoint {
    /// Degree value (present in the data, positive).
    pub k: usize,
    /// Nodes with degree `>= k`.
    pub at_least: usize,
    /// `at_least / positive_count`.
    pub p: f64,
}

/// `P(K >= k)` over nodes with positive degree.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Ccdf {
    /// Points in strictly increasing `k`.
    pub points: Vec<CcdfPoint>,
    /// Number of nodes with degree `>= 1`, the normalizer.
    pub positive_count: usize,
}

/// Builds the CCDF of `degrees`, ignoring zero-degree nodes.
pub fn degree_ccdf(degrees: &[usize]) -> Result<Ccdf> {
    let mut positive: Vec<usize> = degrees.iter().copied().filter(|&d| d > 0).collect();
    if positive.is_empty() {
        return Err(Error::EmptyDistribution);
    }
    positive.sort_unstable();
    let total = positive.len();
    let mut points = Vec::new();
    let mut i = 0;
    while i < total {
        let k = positive[i];
        let at_least = total - i;
        points.push(CcdfPoint {
            k,
            at_least,
            p: at_least as f64 / total as f64,
        });
        while i < total && positive[i] == k {
            i += 1;
        }
    }
    Ok(Ccdf {
        points,
        positive_count: total,
    })
}

impl Ccdf {
    /// Largest degree still reached by at least [`TAIL_MIN_NODES`] nodes;
    /// the sparse tail beyond it is the finite-size cutoff region.
    pub fn auto_k_max(&self) -> usize {
        self.points
            .iter()
            .rev()
            .find(|pt| pt.at_least >= TAIL_MIN_NODES)
            .map_or(0, |pt| pt.k)
    }
}

/// Degree window for the fit. `k_max = None` selects [`Ccdf::auto_k_max`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FitBounds {
    /// Inclusive lower bound.
    pub k_min: usize,
    /// Inclusive upper bound, or automatic.
    pub k_max: Option<usize>,
}

impl Default for FitBounds {
    fn default() -> Self {
        Self {
            k_min: DEFAULT_K_MIN,
            k_max: None,
        }
    }
}

/// Least-squares line through the log-log CCDF.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PowerLawFit {
    /// Density exponent, `1 - ccdf_slope`.
    pub gamma: f64,
    /// Fitted slope of `log p` against `log k`.
    pub ccdf_slope: f64,
    /// Coefficient of determination, clamped to `[0, 1]`.
    pub r_squared: f64,
    /// Lower bound used.
    pub k_min: usize,
    /// Upper bound used.
    pub k_max: usize,
    /// Points inside the window.
    pub points: usize,
}

/// Ordinary least squares on `(ln k, ln p)` for points with `k_min <= k <= k_max`.
pub fn fit_power_law(ccdf: &Ccdf, k_min: usize, k_max: usize) -> Result<PowerLawFit> {
    let xy: Vec<(f64, f64)> = ccdf
        .points
        .iter()
        .filter(|pt| pt.k >= k_min && pt.k <= k_max)
        .map(|pt| (libm::log(pt.k as f64), libm::log(pt.p)))
        .collect();
    if xy.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData {
            points: xy.len(),
            required: MIN_FIT_POINTS,
        });
    }
    let m = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / m;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / m;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in &xy {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        ((sxy * sxy) / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok(PowerLawFit {
        gamma: 1.0 - slope,
        ccdf_slope: slope,
        r_squared,
        k_min,
        k_max,
        points: xy.len(),
    })
}

/// Fits with `bounds`, resolving an automatic upper bound from the CCDF.
pub fn fit_with_bounds(ccdf: &Ccdf, bounds: FitBounds) -> Result<PowerLawFit> {
    let k_max = bounds.k_max.unwrap_or_else(|| ccdf.auto_k_max());
    fit_power_law(ccdf, bounds.k_min, k_max)
}

/// Discrete maximum-likelihood exponent (continuous approximation with the
/// half-integer shift) over degrees `>= k_min`. `None` when no degree
/// qualifies or the estimate is undefined.
pub fn mle_gamma(degrees: &[usize], k_min: usize) -> Option<f64> {
    let k_min = k_min.max(1);
    let shift = k_min as f64 - 0.5;
    let (mut count, mut sum) = (0usize, 0.0f64);
    for &d in degrees.iter().filter(|&&d| d >= k_min) {
        count += 1;
        sum += libm::log(d as f64 / shift);
    }
    (count > 0 && sum > 0.0).then(|| 1.0 + count as f64 / sum)
}

/// Triangles through each node.
pub fn triangles_per_node(g: &UndirectedGraph) -> Vec<usize> {
    let n = g.node_count();
    // Orient each edge from lower to higher (degree, id) rank; every triangle
    // is then found exactly once from its lowest-ranked vertex.
    let rank_less = |a: usize, b: usize| (g.degree(a), a) < (g.degree(b), b);
    let forward: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&u| rank_less(v, u))
                .collect()
        })
        .collect();
    let mut tri = vec![0usize; n];
    let mut mark = vec![usize::MAX; n];
    for v in 0..n {
        for &u in &forward[v] {
            mark[u] = v;
        }
        for &u in &forward[v] {
            for &w in &forward[u] {
                if mark[w] == v {
                    tri[v] += 1;
                    tri[u] += 1;
                    tri[w] += 1;
                }
            }
        }
    }
    tri
}

/// Local clustering coefficient of every node (0 for degree < 2).
pub fn local_clustering(g: &UndirectedGraph) -> Vec<f64> {
    triangles_per_node(g)
        .into_iter()
        .enumerate()
        .map(|(v, t)| {
            let d = g.degree(v);
            if d < 2 {
                0.0
            } else {
                (2 * t) as f64 / (d * (d - 1)) as f64
            }
        })
        .collect()
}

/// Mean local clustering over all nodes; nodes with degree < 2 contribute 0.
pub fn avg_clustering(g: &UndirectedGraph) -> f64 {
    let n = g.node_count();
    if n == 0 {
        return 0.0;
    }
    local_clustering(g).iter().sum::<f64>() / n as f64
}

/// Which BFS sources enter the average shortest path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PathSampling {
    /// Every node is a source (exact).
    All,
    /// This many sources drawn uniformly without replacement (exact if it
    /// reaches the node count).
    Sources(usize),
}

/// Sources used for `sampling` on a graph with `node_count` nodes, ascending.
pub fn path_sources(node_count: usize, sampling: PathSampling, seed: u64) -> Vec<usize> {
    match sampling {
        PathSampling::Sources(k) if k < node_count => {
            let mut rng = seed::stream(seed, seed::SAMPLING_STREAM);
            let mut picked = index::sample(&mut rng, node_count, k).into_vec();
            picked.sort_unstable();
            picked
        }
        _ => (0..node_count).collect(),
    }
}

/// Sum of BFS distances from `source` and the number of reached nodes
/// (including the source).
pub fn bfs_distance_sum(g: &UndirectedGraph, source: usize) -> (u64, usize) {
    let n = g.node_count();
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    let (mut sum, mut reached) = (0u64, 1usize);
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1;
        for &u in g.neighbors(v) {
            if dist[u] == u32::MAX {
                dist[u] = next;
                sum += u64::from(next);
                reached += 1;
                queue.push_back(u);
            }
        }
    }
    (sum, reached)
}

/// Mean BFS distance over ordered pairs `(u, v)`, `u != v`, with `u` drawn from
/// the sources selected by `sampling`. The graph must be connected.
pub fn avg_shortest_path(g: &UndirectedGraph, sampling: PathSampling, seed: u64) -> Result<f64> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooSmall);
    }
    if let PathSampling::Sources(0) = sampling {
        return Err(crate::error::invalid(
            "path-samples",
            "need at least one source",
        ));
    }
    let sources = path_sources(n, sampling, seed);
    let mut total = 0u64;
    for &s in &sources {
        let (sum, reached) = bfs_distance_sum(g, s);
        if reached != n {
            return Err(Error::Disconnected);
        }
        total += sum;
    }
    Ok(total as f64 / (sources.len() as f64 * (n - 1) as f64))
}

/// Settings for [`compute_report`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReportConfig {
    /// Fit window.
    pub fit: FitBounds,
    /// Shortest-path sources.
    pub path_sampling: PathSampling,
    /// Seed for source sampling.
    pub seed: u64,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self {
            fit: FitBounds::default(),
            path_sampling: PathSampling::Sources(256),
            seed: 0,
        }
    }
}

/// Summary statistics of one generated graph.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MetricsReport {
    /// Nodes in the graph.
    pub node_count: usize,
    /// Directed edges in the graph.
    pub edge_count: usize,
    /// Log-log CCDF fit of the in-degrees; `None` when fewer than
    /// [`MIN_FIT_POINTS`] CCDF points fall inside the window.
    pub fit: Option<PowerLawFit>,
    /// Maximum-likelihood exponent over degrees `>= k_min`, for reference only.
    pub gamma_mle: Option<f64>,
    /// Mean local clustering on the giant component of the undirected projection.
    pub avg_clustering: f64,
    /// Mean shortest path on the giant component.
    pub avg_shortest_path: f64,
    /// Nodes in the giant component.
    pub giant_component_size: usize,
    /// `giant_component_size / node_count`.
    pub giant_component_fraction: f64,
    /// Largest in-degree.
    pub max_in_degree: usize,
}

/// Computes every metric for a directed graph: the CCDF fit on in-degrees,
/// clustering and shortest paths on the giant component of the undirected
/// projection.
///
/// An edgeless graph is an [`Error::EmptyDistribution`]. A distribution too
/// short to fit yields a report without `fit`.
pub fn compute_report(g: &DirectedGraph, config: &ReportConfig) -> Result<MetricsReport> {
    let degrees = g.in_degree_sequence();
    let ccdf = degree_ccdf(&degrees)?;
    let fit = match fit_with_bounds(&ccdf, config.fit) {
        Ok(fit) => Some(fit),
        Err(Error::InsufficientData { .. }) => None,
        Err(e) => return Err(e),
    };
    let giant = g.undirected_projection().giant_component();
    let avg_clustering = avg_clustering(&giant.graph);
    let avg_shortest_path = avg_shortest_path(&giant.graph, config.path_sampling, config.seed)?;
    Ok(MetricsReport {
        node_count: g.node_count(),
        edge_count: g.edge_count(),
        fit,
        gamma_mle: mle_gamma(&degrees, config.fit.k_min),
        avg_clustering,
        avg_shortest_path,
        giant_component_size: giant.size(),
        giant_component_fraction: giant.size() as f64 / g.node_count() as f64,
        max_in_degree: g.max_in_degree(),
    })
}
