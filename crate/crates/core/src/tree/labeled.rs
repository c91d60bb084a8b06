use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::BinaryTree;
use crate::newick::NewickError;

#[derive(Debug)]
enum Node {
    Leaf(String),
    Internal {
        left: LabeledTopology,
        right: LabeledTopology,
        size: usize,
    },
}

/// Binary rooted tree with distinct leaf labels and no plane order.
///
/// The written child order is kept for display, but equality and hashing
/// ignore it: `((a,b),c)` equals `(c,(b,a))`.
#[derive(Clone)]
pub struct LabeledTopology(Arc<Node>);

impl LabeledTopology {
    pub fn leaf(label: impl Into<String>) -> Self {
        LabeledTopology(Arc::new(Node::Leaf(label.into())))
    }

    /// Joins two topologies; their label sets must be disjoint.
    pub fn join(left: LabeledTopology, right: LabeledTopology) -> Result<Self, NewickError> {
        let seen: BTreeSet<&str> = left.labels().into_iter().collect();
        if let Some(dup) = right.labels().into_iter().find(|l| seen.contains(l)) {
            return Err(NewickError::DuplicateLabel(dup.to_string()));
        }
        let size = left.size() + right.size();
        Ok(LabeledTopology(Arc::new(Node::Internal {
            left,
            right,
            size,
        })))
    }

    pub fn size(&self) -> usize {
        match &*self.0 {
            Node::Leaf(_) => 1,
            Node::Internal { size, .. } => *size,
        }
    }

    /// Label of a leaf, `None` for an internal node.
    pub fn label(&self) -> Option<&str> {
        match &*self.0 {
            Node::Leaf(l) => Some(l),
            Node::Internal { .. } => None,
        }
    }

    /// Leaf labels in written (left-to-right) order.
    pub fn labels(&self) -> Vec<&str> {
        let mut out = Vec::with_capacity(self.size());
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels<'a>(&'a self, out: &mut Vec<&'a str>) {
        match &*self.0 {
            Node::Leaf(l) => out.push(l),
            Node::Internal { left, right, .. } => {
                left.collect_labels(out);
                right.collect_labels(out);
            }
        }
    }

    /// Order-free encoding: children written in lexicographic order of their
    /// own encodings.
    pub fn canonical_key(&self) -> String {
        match &*self.0 {
            Node::Leaf(l) => l.clone(),
            Node::Internal { left, right, .. } => {
                let (a, b) = (left.canonical_key(), right.canonical_key());
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                format!("({a},{b})")
            }
        }
    }
}

impl BinaryTree for LabeledTopology {
    fn children(&self) -> Option<(&Self, &Self)> {
        match &*self.0 {
            Node::Leaf(_) => None,
            Node::Internal { left, right, .. } => Some((left, right)),
        }
    }

    fn leaf_count(&self) -> usize {
        self.size()
    }
}

impl PartialEq for LabeledTopology {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.size() == other.size() && self.canonical_key() == other.canonical_key())
    }
}

impl Eq for LabeledTopology {}

impl Hash for LabeledTopology {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_key().hash(state);
    }
}

impl fmt::Display for LabeledTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Leaf(l) => f.write_str(l),
            Node::Internal { left, right, .. } => write!(f, "({left},{right})"),
        }
    }
}

impl fmt::Debug for LabeledTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabeledTopology({self})")
    }
}
