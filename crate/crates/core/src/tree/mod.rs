//! Rooted binary tree families.
//!
//! Four families share the same skeleton:
//!
//! * [`Shape`]: unordered, unlabeled topology kept in canonical form.
//! * [`OrderedShape`]: plane embedding of a shape (a Catalan tree).
//! * [`History`]: ordered shape whose internal nodes carry increasing ranks.
//! * [`LabeledTopology`]: unordered topology with distinct leaf labels.
//!
//! Nodes are addressed by [`NodeRef`], the pre-order index of the node
//! (root first, then the whole left subtree, then the right subtree).

mod enumerate;
mod history;
mod labeled;
mod ordered;
mod shape;

pub use enumerate::{
    enumerate_histories, enumerate_ordered, enumerate_shapes, enumerate_shapes_with_cap,
    history_count, ordered_count, shape_catalog, HistoryIter, HISTORY_ITERATION_CAP,
    ORDERED_ITERATION_CAP, SHAPE_ENUMERATION_CAP,
};
pub use history::History;
pub use labeled::LabeledTopology;
pub use ordered::OrderedShape;
pub use shape::Shape;

use std::fmt;

use crate::error::{Error, Result};

/// Pre-order index of a node within one tree value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeRef(pub usize);

impl NodeRef {
    pub const ROOT: NodeRef = NodeRef(0);

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Common recursive view over the binary tree families.
pub trait BinaryTree: Sized {
    /// The two root subtrees, or `None` for a leaf.
    fn children(&self) -> Option<(&Self, &Self)>;

    /// Number of leaves.
    fn leaf_count(&self) -> usize;

    fn is_leaf(&self) -> bool {
        self.children().is_none()
    }

    fn node_count(&self) -> usize {
        2 * self.leaf_count() - 1
    }

    /// All node references in pre-order; length `2n - 1`.
    fn nodes(&self) -> Vec<NodeRef> {
        (0..self.node_count()).map(NodeRef).collect()
    }

    /// The subtree rooted at `node`.
    fn subtree_at(&self, node: NodeRef) -> Result<&Self> {
        let total = self.node_count();
        if node.0 >= total {
            return Err(Error::UnknownNode {
                node: node.0,
                nodes: total,
            });
        }
        let mut current = self;
        let mut offset = node.0;
        while offset > 0 {
            let (left, right) = current
                .children()
                .expect("offset within range implies an internal node");
            let left_nodes = left.node_count();
            if offset <= left_nodes {
                current = left;
                offset -= 1;
            } else {
                current = right;
                offset -= 1 + left_nodes;
            }
        }
        Ok(current)
    }

    /// Canonical unordered shape of this tree.
    fn shape(&self) -> Shape {
        match self.children() {
            None => Shape::leaf(),
            Some((l, r)) => Shape::join(l.shape(), r.shape()),
        }
    }
}

/// Shape of the subtree rooted at `node`.
pub fn subtree<T: BinaryTree>(tree: &T, node: NodeRef) -> Result<Shape> {
    tree.subtree_at(node).map(BinaryTree::shape)
}

/// Canonical shape of any tree value; plane order and labels are forgotten.
pub fn canonicalize<T: BinaryTree>(tree: &T) -> Shape {
    tree.shape()
}

/// Per-node structural data in pre-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeInfo {
    /// Leaf count of the subtree rooted at the node.
    pub leaves: usize,
    /// Parent node, `None` at the root.
    pub parent: Option<NodeRef>,
    /// Children, `None` at leaves.
    pub children: Option<(NodeRef, NodeRef)>,
}

/// Pre-order table of sizes, parents and children.
pub fn node_table<T: BinaryTree>(tree: &T) -> Vec<NodeInfo> {
    fn walk<T: BinaryTree>(t: &T, parent: Option<NodeRef>, out: &mut Vec<NodeInfo>) {
        let me = NodeRef(out.len());
        out.push(NodeInfo {
            leaves: t.leaf_count(),
            parent,
            children: None,
        });
        if let Some((l, r)) = t.children() {
            let left = NodeRef(out.len());
            walk(l, Some(me), out);
            let right = NodeRef(out.len());
            walk(r, Some(me), out);
            out[me.0].children = Some((left, right));
        }
    }
    let mut out = Vec::with_capacity(tree.node_count());
    walk(tree, None, &mut out);
    out
}

/// `x ⪯ k` in the descendant–ancestor order, given the pre-order table.
pub fn is_descendant(table: &[NodeInfo], x: NodeRef, k: NodeRef) -> bool {
    let span = 2 * table[k.0].leaves - 1;
    k.0 <= x.0 && x.0 < k.0 + span
}
