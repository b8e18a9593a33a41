//! The static hidden tree.
//!
//! Nodes are numbered breadth-first from the root (node 0), so every node's
//! parent has a smaller id and the children of a node occupy a contiguous id
//! range. Fractional branching factors are realized by randomized rounding:
//! each node, in BFS order, receives `floor(n)` children plus one more with
//! probability `frac(n)`, until the node budget runs out.

use alloc::vec::Vec;

use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::seed;

/// Parameters of the hidden tree.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TreeParams {
    /// Number of nodes `N`.
    pub node_count: usize,
    /// Average number of children per internal node `n`.
    pub branching: f64,
    /// Seed for the fractional-branching draws.
    pub seed: u64,
}

impl TreeParams {
    /// Creates parameters without validating them.
    pub fn new(node_count: usize, branching: f64, seed: u64) -> Self {
        Self {
            node_count,
            branching,
            seed,
        }
    }

    /// Checks `node_count >= 1` and `branching >= 1`.
    pub fn validate(&self) -> Result<()> {
        if self.node_count == 0 {
            return Err(invalid("nodes", "node count must be at least 1"));
        }
        if !self.branching.is_finite() || self.branching < 1.0 {
            return Err(invalid(
                "branching",
                alloc::format!(
                    "branching must be a finite value >= 1, got {}",
                    self.branching
                ),
            ));
        }
        Ok(())
    }
}

const NO_PARENT: usize = usize::MAX;

/// Rooted tree over `0..N` with breadth-first numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiddenTree {
    parent: Vec<usize>,
    depth: Vec<u32>,
    // CSR offsets: children of v are child_start[v]..child_start[v + 1].
    child_start: Vec<usize>,
    fully_allocated: usize,
}

impl HiddenTree {
    /// Builds the tree described by `params`.
    pub fn build(params: &TreeParams) -> Result<Self> {
        params.validate()?;
        let n = params.node_count;
        let whole = libm::floor(params.branching);
        let frac = params.branching - whole;
        let whole = whole as usize;
        let mut rng = seed::stream(params.seed, seed::TREE_STREAM);

        let mut parent = Vec::with_capacity(n);
        let mut depth = Vec::with_capacity(n);
        let mut child_start = Vec::with_capacity(n + 1);
        parent.push(NO_PARENT);
        depth.push(0u32);

        let mut next = 1usize;
        let mut fully_allocated = 0usize;
        for v in 0..n {
            child_start.push(next);
            if next >= n {
                continue;
            }
            let mut want = whole;
            if frac > 0.0 && rng.random::<f64>() < frac {
                want += 1;
            }
            let remaining = n - next;
            if want <= remaining {
                fully_allocated += 1;
            }
            let take = want.min(remaining);
            let d = depth[v] + 1;
            for _ in 0..take {
                parent.push(v);
                depth.push(d);
            }
            next += take;
        }
        child_start.push(n);
        debug_assert_eq!(parent.len(), n);

        Ok(Self {
            parent,
            depth,
            child_start,
            fully_allocated,
        })
    }

    /// Builds a tree from an explicit parent array (`None` for the root).
    ///
    /// The array must describe a breadth-first numbered tree: node 0 is the
    /// root, `parent[i] < i`, and parents are non-decreasing in `i`.
    pub fn from_parents(parents: &[Option<usize>]) -> Result<Self> {
        let n = parents.len();
        if n == 0 {
            return Err(invalid("parents", "tree must have at least one node"));
        }
        if parents[0].is_some() {
            return Err(invalid("parents", "node 0 must be the root"));
        }
        let mut parent = Vec::with_capacity(n);
        let mut depth = Vec::with_capacity(n);
        parent.push(NO_PARENT);
        depth.push(0u32);
        let mut last = 0usize;
        for (i, p) in parents.iter().enumerate().skip(1) {
            let p = p.ok_or_else(|| invalid("parents", "only node 0 may be a root"))?;
            if p >= i || p < last {
                return Err(invalid(
                    "parents",
                    "parents must satisfy parent[i] < i and be non-decreasing",
                ));
            }
            last = p;
            parent.push(p);
            depth.push(depth[p] + 1);
        }
        let mut child_start = Vec::with_capacity(n + 1);
        let mut next = 1usize;
        for v in 0..n {
            child_start.push(next);
            while next < n && parent[next] == v {
                next += 1;
            }
        }
        child_start.push(n);
        let fully_allocated = (0..n)
            .filter(|&v| child_start[v + 1] > child_start[v])
            .count();
        Ok(Self {
            parent,
            depth,
            child_start,
            fully_allocated,
        })
    }

    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    /// Parent of `v`, `None` for the root.
    pub fn parent(&self, v: usize) -> Option<usize> {
        match self.parent[v] {
            NO_PARENT => None,
            p => Some(p),
        }
    }

    /// Depth of `v` (root has depth 0).
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v] as usize
    }

    /// Children of `v` as a contiguous id range.
    pub fn children(&self, v: usize) -> core::ops::Range<usize> {
        self.child_start[v]..self.child_start[v + 1]
    }

    /// Number of children of `v`.
    pub fn child_count(&self, v: usize) -> usize {
        self.child_start[v + 1] - self.child_start[v]
    }

    /// Whether `v` has no children.
    pub fn is_leaf(&self, v: usize) -> bool {
        self.child_count(v) == 0
    }

    /// Nodes that received their full child allocation during construction
    /// (all nodes processed before the node budget was exhausted).
    pub fn fully_allocated(&self) -> usize {
        self.fully_allocated
    }

    /// Height of the tree (maximum depth).
    pub fn height(&self) -> usize {
        self.depth.last().copied().unwrap_or(0) as usize
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                node_count: self.node_count(),
            })
        }
    }

    /// Lowest common ancestor of `u` and `v`.
    pub fn lca(&self, u: usize, v: usize) -> Result<usize> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.lca_unchecked(u, v))
    }

    pub(crate) fn lca_unchecked(&self, mut u: usize, mut v: usize) -> usize {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u];
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v];
        }
        while u != v {
            u = self.parent[u];
            v = self.parent[v];
        }
        u
    }

    /// The tree path `[u, ..., lca, ..., v]`, both endpoints included.
    pub fn path_between(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        self.check(u)?;
        self.check(v)?;
        let mut out = Vec::new();
        self.path_into(u, v, &mut out);
        Ok(out)
    }

    /// Appends the path from `u` to `v` to `out`. Ids must be in range.
    pub(crate) fn path_into(&self, u: usize, v: usize, out: &mut Vec<usize>) {
        let top = self.lca_unchecked(u, v);
        let mut x = u;
        while x != top {
            out.push(x);
            x = self.parent[x];
        }
        out.push(top);
        let mark = out.len();
        let mut y = v;
        while y != top {
            out.push(y);
            y = self.parent[y];
        }
        out[mark..].reverse();
    }
}
