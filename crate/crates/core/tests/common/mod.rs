#![allow(clippy::needless_range_loop)]

//! Independent reference implementations used as test oracles.

#![allow(dead_code)]

use std::collections::VecDeque;

use hidden_tree_core::{HiddenTree, UndirectedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

/// Largest component via union-find; ties to the smallest member id.
pub fn giant_by_union_find(g: &UndirectedGraph) -> Vec<usize> {
    let n = g.node_count();
    let mut uf = UnionFind::new(n);
    for (a, b) in g.edges() {
        uf.union(a, b);
    }
    let roots: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    let mut best: Vec<usize> = Vec::new();
    for v in 0..n {
        let members: Vec<usize> = (0..n).filter(|&u| roots[u] == roots[v]).collect();
        if members.len() > best.len() {
            best = members;
        }
    }
    best
}

/// Mean local clustering by enumerating every neighbor pair.
pub fn clustering_brute_force(g: &UndirectedGraph) -> f64 {
    let n = g.node_count();
    let mut total = 0.0;
    for v in 0..n {
        let nb = g.neighbors(v);
        let d = nb.len();
        if d < 2 {
            continue;
        }
        let mut links = 0usize;
        for i in 0..d {
            for j in (i + 1)..d {
                if g.has_edge(nb[i], nb[j]) {
                    links += 1;
                }
            }
        }
        total += 2.0 * links as f64 / (d * (d - 1)) as f64;
    }
    total / n as f64
}

/// Mean shortest path over ordered pairs via Floyd–Warshall.
pub fn asp_floyd_warshall(g: &UndirectedGraph) -> f64 {
    let n = g.node_count();
    let inf = u64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for v in 0..n {
        d[v][v] = 0;
        for &u in g.neighbors(v) {
            d[v][u] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let mut sum = 0u64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += d[i][j];
            }
        }
    }
    sum as f64 / (n * (n - 1)) as f64
}

/// Tree path by BFS over the undirected parent/child adjacency.
pub fn tree_path_bfs(t: &HiddenTree, u: usize, v: usize) -> Vec<usize> {
    let n = t.node_count();
    let mut adj = vec![Vec::new(); n];
    for i in 1..n {
        let p = t.parent(i).unwrap();
        adj[i].push(p);
        adj[p].push(i);
    }
    let mut pred = vec![usize::MAX; n];
    pred[u] = u;
    let mut q = VecDeque::from([u]);
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if pred[y] == usize::MAX {
                pred[y] = x;
                q.push_back(y);
            }
        }
    }
    let mut path = vec![v];
    let mut x = v;
    while x != u {
        x = pred[x];
        path.push(x);
    }
    path.reverse();
    path
}

/// Random simple graph, edge probability `p`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> UndirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((a, b));
            }
        }
    }
    UndirectedGraph::from_edges(n, edges).unwrap()
}

/// Random connected graph: a random spanning tree plus extra random edges.
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> UndirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((a, b));
            }
        }
    }
    UndirectedGraph::from_edges(n, edges).unwrap()
}
