//! Sparse directed and undirected graph storage.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Directed simple graph: sorted, deduplicated out-lists and no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    out_edges: Vec<Vec<usize>>,
    in_degree: Vec<usize>,
    edge_count: usize,
}

impl DirectedGraph {
    /// Graph on `node_count` nodes without edges.
    pub fn empty(node_count: usize) -> Self {
        Self {
            out_edges: vec![Vec::new(); node_count],
            in_degree: vec![0; node_count],
            edge_count: 0,
        }
    }

    /// Builds a graph from `(src, dst)` pairs. Duplicates collapse; ids must be
    /// in range and self-loops are rejected.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = vec![Vec::new(); node_count];
        for (s, d) in edges {
            for x in [s, d] {
                if x >= node_count {
                    return Err(Error::NodeOutOfRange {
                        node: x,
                        node_count,
                    });
                }
            }
            if s == d {
                return Err(Error::SelfLoop(s));
            }
            out[s].push(d);
        }
        Ok(Self::from_out_lists(out))
    }

    /// Builds a graph from per-node target lists. Lists are sorted and
    /// deduplicated here; self-loops are dropped.
    ///
    /// # Panics
    /// If a target id is not below `out.len()`.
    pub fn from_out_lists(mut out: Vec<Vec<usize>>) -> Self {
        let n = out.len();
        let mut in_degree = vec![0usize; n];
        let mut edge_count = 0;
        for (src, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            list.retain(|&d| d != src);
            for &d in list.iter() {
                in_degree[d] += 1;
            }
            edge_count += list.len();
        }
        Self {
            out_edges: out,
            in_degree,
            edge_count,
        }
    }

    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.out_edges.len()
    }

    /// Number of directed edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted targets of `v`.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    /// In-degree of `v`.
    pub fn in_degree(&self, v: usize) -> usize {
        self.in_degree[v]
    }

    /// In-degree of every node, indexed by node id.
    pub fn in_degree_sequence(&self) -> Vec<usize> {
        self.in_degree.clone()
    }

    /// Largest in-degree (0 for an edgeless graph).
    pub fn max_in_degree(&self) -> usize {
        self.in_degree.iter().copied().max().unwrap_or(0)
    }

    /// Iterates edges in `(src, dst)` lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_edges
            .iter()
            .enumerate()
            .flat_map(|(s, l)| l.iter().map(move |&d| (s, d)))
    }

    /// Undirected view: `{i, j}` present iff `i -> j` or `j -> i`.
    pub fn undirected_projection(&self) -> UndirectedGraph {
        let n = self.node_count();
        let mut adj = vec![Vec::new(); n];
        for (s, d) in self.edges() {
            adj[s].push(d);
            adj[d].push(s);
        }
        UndirectedGraph::from_adjacency(adj)
    }
}

/// Undirected simple graph with sorted, symmetric neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl UndirectedGraph {
    /// Graph on `node_count` nodes without edges.
    pub fn empty(node_count: usize) -> Self {
        Self {
            adj: vec![Vec::new(); node_count],
            edge_count: 0,
        }
    }

    /// Builds a graph from unordered pairs. Duplicates collapse; self-loops are
    /// rejected.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); node_count];
        for (a, b) in edges {
            for x in [a, b] {
                if x >= node_count {
                    return Err(Error::NodeOutOfRange {
                        node: x,
                        node_count,
                    });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        Ok(Self::from_adjacency(adj))
    }

    // Lists must already be symmetric.
    pub(crate) fn from_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        let mut twice = 0;
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            list.retain(|&u| u != v);
            twice += list.len();
        }
        Self {
            adj,
            edge_count: twice / 2,
        }
    }

    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Degree of every node.
    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Whether `{a, b}` is an edge.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Iterates each edge once as `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, l)| {
            let start = l.partition_point(|&b| b <= a);
            l[start..].iter().map(move |&b| (a, b))
        })
    }

    /// Directed graph carrying both orientations of every edge.
    pub fn to_directed(&self) -> DirectedGraph {
        DirectedGraph::from_out_lists(self.adj.clone())
    }

    /// Connected-component label per node. Labels are assigned in order of
    /// each component's smallest node id, starting at 0.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if label[u] == usize::MAX {
                        label[u] = next;
                        queue.push_back(u);
                    }
                }
            }
            next += 1;
        }
        (label, next)
    }

    /// Whether the graph is connected (a single node counts as connected).
    pub fn is_connected(&self) -> bool {
        self.component_labels().1 <= 1
    }

    /// Largest connected component by node count; ties go to the component
    /// containing the smallest node id.
    pub fn giant_component(&self) -> Component {
        let (label, count) = self.component_labels();
        let mut sizes = vec![0usize; count];
        for &l in &label {
            sizes[l] += 1;
        }
        // Labels are ordered by smallest member, so the first maximum wins ties.
        let mut best = 0;
        for (l, &s) in sizes.iter().enumerate() {
            if s > sizes[best] {
                best = l;
            }
        }
        let nodes: Vec<usize> = (0..self.node_count())
            .filter(|&v| label[v] == best)
            .collect();
        let graph = self.induced(&nodes);
        Component { nodes, graph }
    }

    /// Subgraph induced by `nodes` (sorted ascending), relabeled so that
    /// `nodes[i]` becomes node `i`.
    pub fn induced(&self, nodes: &[usize]) -> UndirectedGraph {
        let mut index = vec![usize::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            index[v] = i;
        }
        let adj = nodes
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&u| (index[u] != usize::MAX).then_some(index[u]))
                    .collect()
            })
            .collect();
        UndirectedGraph::from_adjacency(adj)
    }
}

/// A connected component and its induced subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Original node ids, ascending. `graph` node `i` is `nodes[i]`.
    pub nodes: Vec<usize>,
    /// Induced subgraph, relabeled to `0..nodes.len()`.
    pub graph: UndirectedGraph,
}

impl Component {
    /// Number of nodes in the component.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn in_degrees() {
        let g = DirectedGraph::empty(3);
        assert_eq!(g.in_degree_sequence(), vec![0, 0, 0]);
        let g = DirectedGraph::from_edges(3, [(2, 1), (2, 0)]).unwrap();
        assert_eq!(g.in_degree_sequence(), vec![1, 1, 0]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.out_neighbors(2), &[0, 1]);
    }

    #[test]
    fn duplicates_collapse_and_bad_edges_fail() {
        let g = DirectedGraph::from_edges(3, [(0, 1), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(
            DirectedGraph::from_edges(3, [(1, 1)]),
            Err(Error::SelfLoop(1))
        );
        assert!(matches!(
            DirectedGraph::from_edges(3, [(0, 3)]),
            Err(Error::NodeOutOfRange { node: 3, .. })
        ));
        let g = DirectedGraph::from_out_lists(vec![vec![2, 0, 2], vec![], vec![]]);
        assert_eq!(g.out_neighbors(0), &[2]);
    }

    #[test]
    fn projection() {
        let g = DirectedGraph::from_edges(3, [(2, 1), (1, 2)]).unwrap();
        let u = g.undirected_projection();
        assert_eq!(u.edges().collect::<Vec<_>>(), vec![(1, 2)]);
        let g = DirectedGraph::from_edges(3, [(2, 1), (2, 0)]).unwrap();
        let u = g.undirected_projection();
        assert_eq!(u.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
        assert!(u.edge_count() <= g.edge_count());
        assert_eq!(u.to_directed().undirected_projection(), u);
    }

    #[test]
    fn giant_component_examples() {
        let g = UndirectedGraph::from_edges(5, [(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        let c = g.giant_component();
        assert_eq!(c.nodes, vec![0, 1, 2]);
        assert_eq!(c.graph.edge_count(), 3);

        let k4 = UndirectedGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        assert_eq!(k4.giant_component().nodes, vec![0, 1, 2, 3]);

        // Tie: {0,3} and {1,2}; the component holding node 0 wins.
        let tie = UndirectedGraph::from_edges(4, [(1, 2), (0, 3)]).unwrap();
        let c = tie.giant_component();
        assert_eq!(c.nodes, vec![0, 3]);
        assert_eq!(c.graph.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn isolated_nodes_only() {
        let g = UndirectedGraph::empty(3);
        let c = g.giant_component();
        assert_eq!(c.nodes, vec![0]);
        assert!(!g.is_connected());
    }
}
