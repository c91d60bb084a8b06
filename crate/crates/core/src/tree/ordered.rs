use std::fmt;
use std::sync::Arc;

use super::BinaryTree;

#[derive(Debug, PartialEq, Eq, Hash)]
enum Node {
    Leaf,
    Internal {
        left: OrderedShape,
        right: OrderedShape,
        size: usize,
    },
}

/// Plane binary tree: a shape with a left/right orientation at every node.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedShape(Arc<Node>);

impl OrderedShape {
    pub fn leaf() -> Self {
        OrderedShape(Arc::new(Node::Leaf))
    }

    /// Places `left` and `right` under a new root, keeping their order.
    pub fn join(left: OrderedShape, right: OrderedShape) -> Self {
        let size = left.size() + right.size();
        OrderedShape(Arc::new(Node::Internal { left, right, size }))
    }

    pub fn size(&self) -> usize {
        match &*self.0 {
            Node::Leaf => 1,
            Node::Internal { size, .. } => *size,
        }
    }

    /// Mirror image: every left/right pair swapped.
    pub fn mirror(&self) -> Self {
        match self.children() {
            None => self.clone(),
            Some((l, r)) => OrderedShape::join(r.mirror(), l.mirror()),
        }
    }
}

impl BinaryTree for OrderedShape {
    fn children(&self) -> Option<(&Self, &Self)> {
        match &*self.0 {
            Node::Leaf => None,
            Node::Internal { left, right, .. } => Some((left, right)),
        }
    }

    fn leaf_count(&self) -> usize {
        self.size()
    }
}

impl fmt::Display for OrderedShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.children() {
            None => f.write_str("*"),
            Some((l, r)) => write!(f, "({l},{r})"),
        }
    }
}

impl fmt::Debug for OrderedShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderedShape({self})")
    }
}
