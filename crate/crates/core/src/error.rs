use alloc::string::String;

/// Errors produced by the model, graph and metric routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter violates its documented domain.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        /// Parameter name as used on the command line.
        name: &'static str,
        /// What is wrong with it.
        reason: String,
    },
    /// A node id is not below the node count.
    #[error("node {node} out of range (node count {node_count})")]
    NodeOutOfRange {
        /// Offending id.
        node: usize,
        /// Number of nodes in the structure.
        node_count: usize,
    },
    /// An edge would be a self-loop.
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    /// No node has a positive degree.
    #[error("degree distribution is empty (no node has positive degree)")]
    EmptyDistribution,
    /// Too few CCDF points fall inside the fit window.
    #[error("insufficient data for fit: {points} points in range, need {required}")]
    InsufficientData {
        /// Points inside the window.
        points: usize,
        /// Minimum required.
        required: usize,
    },
    /// A connected graph was required.
    #[error("graph is not connected")]
    Disconnected,
    /// Shortest paths need at least two nodes.
    #[error("graph has fewer than two nodes")]
    TooSmall,
}

/// Crate result alias.
pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
