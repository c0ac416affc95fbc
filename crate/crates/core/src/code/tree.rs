use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::PolarCode;

/// Constituent-code kinds recognised by Fast-SSC-List decoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    /// Every position frozen.
    Rate0,
    /// No position frozen.
    Rate1,
    /// Every position frozen except the last.
    Repetition,
    /// Only the first position frozen.
    Spc,
}

impl NodeKind {
    pub const ALL: [NodeKind; 4] = [NodeKind::Rate0, NodeKind::Rate1, NodeKind::Repetition, NodeKind::Spc];

    /// Whether a frozen pattern is this constituent code.
    pub fn matches(self, frozen: &[bool]) -> bool {
        let len = frozen.len();
        match self {
            NodeKind::Rate0 => frozen.iter().all(|&f| f),
            NodeKind::Rate1 => frozen.iter().all(|&f| !f),
            NodeKind::Repetition => len >= 2 && frozen[..len - 1].iter().all(|&f| f) && !frozen[len - 1],
            NodeKind::Spc => len >= 2 && frozen[0] && frozen[1..].iter().all(|&f| !f),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Rate0 => "rate0",
            NodeKind::Rate1 => "rate1",
            NodeKind::Repetition => "repetition",
            NodeKind::Spc => "spc",
        }
    }
}

/// Maximum leaf length per constituent kind; `None` leaves a kind uncapped.
///
/// Length-1 Rate-0 and Rate-1 leaves are always allowed, so every mask has a
/// tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeCaps {
    pub rate0: Option<usize>,
    pub rate1: Option<usize>,
    pub repetition: Option<usize>,
    pub spc: Option<usize>,
}

impl Default for NodeCaps {
    /// Rate-0, Repetition and SPC capped at 8, 8 and 4; Rate-1 uncapped.
    fn default() -> Self {
        Self { rate0: Some(8), rate1: None, repetition: Some(8), spc: Some(4) }
    }
}

impl NodeCaps {
    pub fn unlimited() -> Self {
        Self { rate0: None, rate1: None, repetition: None, spc: None }
    }

    /// Only length-1 leaves: the tree of bit-by-bit decoding.
    pub fn bit_level() -> Self {
        Self { rate0: Some(1), rate1: Some(1), repetition: Some(1), spc: Some(1) }
    }

    pub fn cap(&self, kind: NodeKind) -> Option<usize> {
        match kind {
            NodeKind::Rate0 => self.rate0,
            NodeKind::Rate1 => self.rate1,
            NodeKind::Repetition => self.repetition,
            NodeKind::Spc => self.spc,
        }
    }

    fn allows(&self, kind: NodeKind, len: usize) -> bool {
        self.cap(kind).is_none_or(|cap| len <= cap)
    }
}

/// A node of the Fast-SSC decoder tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeNode {
    Leaf { kind: NodeKind, len: usize },
    Branch { len: usize, left: Box<TreeNode>, right: Box<TreeNode> },
}

impl TreeNode {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match self {
            TreeNode::Leaf { len, .. } | TreeNode::Branch { len, .. } => *len,
        }
    }

    /// Leaves in decoding order as `(kind, first position, length)`.
    pub fn leaves(&self) -> Vec<(NodeKind, usize, usize)> {
        fn walk(node: &TreeNode, start: usize, out: &mut Vec<(NodeKind, usize, usize)>) {
            match node {
                TreeNode::Leaf { kind, len } => out.push((*kind, start, *len)),
                TreeNode::Branch { len, left, right } => {
                    walk(left, start, out);
                    walk(right, start + len / 2, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out
    }

    /// True iff the leaves tile `frozen` and each leaf's pattern matches its kind.
    pub fn matches_mask(&self, frozen: &[bool]) -> bool {
        if self.len() != frozen.len() {
            return false;
        }
        self.leaves().iter().all(|&(kind, start, len)| kind.matches(&frozen[start..start + len]))
    }

    pub fn census(&self) -> TreeCensus {
        let mut census = TreeCensus::default();
        for (kind, _, len) in self.leaves() {
            *census.counts.entry((kind, len)).or_default() += 1;
            census.leaves += 1;
        }
        census
    }
}

/// Leaf statistics of a decoder tree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TreeCensus {
    pub leaves: usize,
    /// Number of leaves per `(kind, length)`.
    pub counts: BTreeMap<(NodeKind, usize), usize>,
}

impl TreeCensus {
    pub fn largest(&self, kind: NodeKind) -> Option<usize> {
        self.counts.keys().filter(|(k, _)| *k == kind).map(|&(_, len)| len).max()
    }

    pub fn count(&self, kind: NodeKind) -> usize {
        self.counts.iter().filter(|((k, _), _)| *k == kind).map(|(_, n)| n).sum()
    }
}

impl std::fmt::Display for TreeCensus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{:<12} {:>6} {:>6}", "kind", "length", "count")?;
        for ((kind, len), count) in &self.counts {
            writeln!(f, "{:<12} {:>6} {:>6}", kind.name(), len, count)?;
        }
        write!(f, "{:<12} {:>6} {:>6}", "total", "", self.leaves)
    }
}

/// Splits a frozen mask into the Fast-SSC decoder tree.
pub fn build_tree_from_mask(frozen: &[bool], caps: &NodeCaps) -> TreeNode {
    let len = frozen.len();
    let leaf = NodeKind::ALL.into_iter().find(|&kind| (len == 1 || caps.allows(kind, len)) && kind.matches(frozen));
    match leaf {
        Some(kind) => TreeNode::Leaf { kind, len },
        None => {
            let (left, right) = frozen.split_at(len / 2);
            TreeNode::Branch {
                len,
                left: Box::new(build_tree_from_mask(left, caps)),
                right: Box::new(build_tree_from_mask(right, caps)),
            }
        }
    }
}

/// Decoder tree of `code` under the given per-kind length caps.
pub fn build_decoder_tree(code: &PolarCode, caps: &NodeCaps) -> TreeNode {
    build_tree_from_mask(code.frozen(), caps)
}
