use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::BinaryTree;

#[derive(Debug, PartialEq, Eq, Hash)]
enum Node {
    Leaf,
    Internal {
        left: Shape,
        right: Shape,
        size: usize,
    },
}

/// Unordered unlabeled binary topology in canonical form.
///
/// At every internal node the left child is the smaller of the two child
/// shapes under [`Ord`] (size first, then recursive comparison), so two
/// shapes are the same topology exactly when they are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Shape(Arc<Node>);

impl Shape {
    pub fn leaf() -> Self {
        Shape(Arc::new(Node::Leaf))
    }

    /// Joins two shapes under a new root, ordering them canonically.
    pub fn join(a: Shape, b: Shape) -> Self {
        let size = a.size() + b.size();
        let (left, right) = if a <= b { (a, b) } else { (b, a) };
        Shape(Arc::new(Node::Internal { left, right, size }))
    }

    pub fn size(&self) -> usize {
        match &*self.0 {
            Node::Leaf => 1,
            Node::Internal { size, .. } => *size,
        }
    }

    /// Whether the two root subtrees are the same shape.
    pub fn is_symmetric(&self) -> bool {
        match &*self.0 {
            Node::Leaf => false,
            Node::Internal { left, right, .. } => left == right,
        }
    }

    /// The caterpillar (maximally unbalanced) shape on `n` leaves.
    pub fn caterpillar(n: usize) -> Self {
        assert!(n >= 1, "a shape has at least one leaf");
        (1..n).fold(Shape::leaf(), |acc, _| Shape::join(acc, Shape::leaf()))
    }

    /// The shape obtained by always splitting leaves as evenly as possible.
    pub fn balanced(n: usize) -> Self {
        assert!(n >= 1, "a shape has at least one leaf");
        if n == 1 {
            Shape::leaf()
        } else {
            Shape::join(Shape::balanced(n / 2), Shape::balanced(n - n / 2))
        }
    }
}

impl BinaryTree for Shape {
    fn children(&self) -> Option<(&Self, &Self)> {
        match &*self.0 {
            Node::Leaf => None,
            Node::Internal { left, right, .. } => Some((left, right)),
        }
    }

    fn leaf_count(&self) -> usize {
        self.size()
    }

    fn shape(&self) -> Shape {
        self.clone()
    }
}

impl Ord for Shape {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            return Ordering::Equal;
        }
        self.size().cmp(&other.size()).then_with(|| {
            match (self.children(), other.children()) {
                (Some((l1, r1)), Some((l2, r2))) => l1.cmp(l2).then_with(|| r1.cmp(r2)),
                // equal sizes: both leaves or both internal
                _ => Ordering::Equal,
            }
        })
    }
}

impl PartialOrd for Shape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.children() {
            None => f.write_str("*"),
            Some((l, r)) => write!(f, "({l},{r})"),
        }
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Shape({self})")
    }
}
