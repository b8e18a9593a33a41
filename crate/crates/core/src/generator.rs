//! Link generation on top of a hidden tree.
//!
//! Every active node `i` runs the selection loop
//!
//! ```text
//! act = activity
//! while act > 0:
//!     rnd = uniform[0, 1)
//!     if rnd < act:
//!         dest = uniform node in 0..N
//!         link i to dest and to every node on the tree path i .. dest
//!     act = act - 1
//! ```
//!
//! so a node makes `floor(activity)` certain selections plus one Bernoulli
//! trial with probability `frac(activity)`. Each node draws from its own
//! random stream derived from the master seed and its id, which makes the
//! output independent of the order in which nodes are processed.

use alloc::vec::Vec;

use rand::{Rng, RngCore};

use crate::error::{invalid, Result};
use crate::graph::DirectedGraph;
use crate::seed;
use crate::tree::{HiddenTree, TreeParams};

/// Which nodes initiate links.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Variant {
    /// Every node runs the selection loop.
    #[default]
    #[cfg_attr(feature = "serde", serde(rename = "all"))]
    AllActive,
    /// Only leaves of the hidden tree run the loop; internal nodes only receive links.
    #[cfg_attr(feature = "serde", serde(rename = "leaf"))]
    LeafActive,
}

/// Full description of one generation run.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModelParams {
    /// Hidden tree parameters (carries its own seed).
    pub tree: TreeParams,
    /// Expected number of destination selections per active node.
    pub activity: f64,
    /// Master seed for destination selection.
    pub seed: u64,
    /// Which nodes are active.
    pub variant: Variant,
    /// Whether a node drawing itself keeps the draw. Either way no self-loop
    /// is stored; the flag only matters for the trace.
    pub allow_self_selection: bool,
    /// Insert every tree edge in both directions before generation.
    pub include_tree_edges: bool,
}

impl ModelParams {
    /// Parameters with default variant and flags.
    pub fn new(tree: TreeParams, activity: f64, seed: u64) -> Self {
        Self {
            tree,
            activity,
            seed,
            variant: Variant::AllActive,
            allow_self_selection: false,
            include_tree_edges: false,
        }
    }

    /// Validates tree parameters and `activity >= 0`.
    pub fn validate(&self) -> Result<()> {
        self.tree.validate()?;
        if !self.activity.is_finite() || self.activity < 0.0 {
            return Err(invalid(
                "activity",
                alloc::format!(
                    "activity must be a finite value >= 0, got {}",
                    self.activity
                ),
            ));
        }
        Ok(())
    }
}

/// Source of the two kinds of random draws the selection loop needs.
pub trait Draws {
    /// Uniform value in `[0, 1)`.
    fn unit(&mut self) -> f64;
    /// Uniform node id in `0..node_count`.
    fn destination(&mut self, node_count: usize) -> usize;
}

impl<R: RngCore> Draws for R {
    fn unit(&mut self) -> f64 {
        self.random::<f64>()
    }

    fn destination(&mut self, node_count: usize) -> usize {
        self.random_range(0..node_count)
    }
}

/// What one node produced.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NodeOutcome {
    /// Successful selections (`rnd < act`), including discarded self-draws.
    pub selections: u32,
    /// Destinations drawn, in draw order.
    pub destinations: Vec<usize>,
    /// Link targets, unsorted and possibly repeated; may contain the node itself.
    pub targets: Vec<usize>,
}

/// Runs the selection loop for `node` using `draws`.
pub fn run_node<D: Draws + ?Sized>(
    tree: &HiddenTree,
    activity: f64,
    allow_self_selection: bool,
    node: usize,
    draws: &mut D,
) -> NodeOutcome {
    let n = tree.node_count();
    let mut out = NodeOutcome::default();
    let mut act = activity;
    while act > 0.0 {
        let rnd = draws.unit();
        if rnd < act {
            out.selections += 1;
            let dest = draws.destination(n);
            out.destinations.push(dest);
            if dest != node || allow_self_selection {
                tree.path_into(node, dest, &mut out.targets);
            }
        }
        act -= 1.0;
    }
    out
}

/// Per-run diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationTrace {
    /// Successful selections per node (0 for inactive nodes).
    pub selections: Vec<u32>,
    /// Distinct edges produced by selections, before any tree edges are added.
    pub path_edges: usize,
}

impl GenerationTrace {
    /// Mean of `selections` over the given nodes.
    pub fn mean_selections(&self, nodes: impl Iterator<Item = usize>) -> f64 {
        let (mut sum, mut count) = (0u64, 0u64);
        for v in nodes {
            sum += u64::from(self.selections[v]);
            count += 1;
        }
        if count == 0 {
            0.0
        } else {
            sum as f64 / count as f64
        }
    }
}

/// A validated model bound to its hidden tree.
#[derive(Debug, Clone)]
pub struct Generator {
    tree: HiddenTree,
    params: ModelParams,
    edge_seed: u64,
}

impl Generator {
    /// Validates `params` and builds the hidden tree.
    pub fn new(params: ModelParams) -> Result<Self> {
        params.validate()?;
        let tree = HiddenTree::build(&params.tree)?;
        Ok(Self::bind(tree, params))
    }

    /// Uses a prebuilt tree. Its node count must match `params.tree.node_count`.
    pub fn with_tree(tree: HiddenTree, params: ModelParams) -> Result<Self> {
        params.validate()?;
        if tree.node_count() != params.tree.node_count {
            return Err(invalid(
                "nodes",
                alloc::format!(
                    "tree has {} nodes but parameters say {}",
                    tree.node_count(),
                    params.tree.node_count
                ),
            ));
        }
        Ok(Self::bind(tree, params))
    }

    fn bind(tree: HiddenTree, params: ModelParams) -> Self {
        Self {
            tree,
            params,
            edge_seed: seed::derive(params.seed, seed::EDGE_STREAM),
        }
    }

    /// The hidden tree.
    pub fn tree(&self) -> &HiddenTree {
        &self.tree
    }

    /// The parameters.
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.tree.node_count()
    }

    /// Whether `node` runs the selection loop under the configured variant.
    pub fn is_active(&self, node: usize) -> bool {
        match self.params.variant {
            Variant::AllActive => true,
            Variant::LeafActive => self.tree.is_leaf(node),
        }
    }

    /// Outcome of `node`, drawn from its own stream.
    pub fn node_outcome(&self, node: usize) -> NodeOutcome {
        if !self.is_active(node) {
            return NodeOutcome::default();
        }
        let mut rng = seed::stream(self.edge_seed, node as u64);
        run_node(
            &self.tree,
            self.params.activity,
            self.params.allow_self_selection,
            node,
            &mut rng,
        )
    }

    /// Combines per-node outcomes (indexed by node id) into the graph.
    ///
    /// # Panics
    /// If `outcomes.len()` differs from the node count.
    pub fn assemble(&self, outcomes: Vec<NodeOutcome>) -> (DirectedGraph, GenerationTrace) {
        assert_eq!(outcomes.len(), self.node_count(), "one outcome per node");
        let mut selections = Vec::with_capacity(outcomes.len());
        let mut lists = Vec::with_capacity(outcomes.len());
        for o in outcomes {
            selections.push(o.selections);
            lists.push(o.targets);
        }
        let generated = DirectedGraph::from_out_lists(lists);
        let path_edges = generated.edge_count();
        let graph = if self.params.include_tree_edges {
            let mut lists: Vec<Vec<usize>> = (0..self.node_count())
                .map(|v| generated.out_neighbors(v).to_vec())
                .collect();
            for v in 1..self.node_count() {
                let p = self.tree.parent(v).expect("non-root has a parent");
                lists[v].push(p);
                lists[p].push(v);
            }
            DirectedGraph::from_out_lists(lists)
        } else {
            generated
        };
        (
            graph,
            GenerationTrace {
                selections,
                path_edges,
            },
        )
    }

    /// Sequential run over all nodes.
    pub fn run(&self) -> (DirectedGraph, GenerationTrace) {
        let outcomes = (0..self.node_count())
            .map(|v| self.node_outcome(v))
            .collect();
        self.assemble(outcomes)
    }
}

/// Generates the graph for `params`.
pub fn generate(params: &ModelParams) -> Result<DirectedGraph> {
    Ok(Generator::new(*params)?.run().0)
}

/// Generates the graph together with its trace.
pub fn generate_with_trace(params: &ModelParams) -> Result<(DirectedGraph, GenerationTrace)> {
    Ok(Generator::new(*params)?.run())
}
