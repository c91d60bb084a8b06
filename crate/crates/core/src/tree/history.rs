use std::fmt;

use super::{node_table, BinaryTree, NodeRef, OrderedShape};
use crate::newick::NewickError;

/// Ordered shape whose internal nodes carry ranks `1..n-1`, increasing from
/// the root towards the leaves (an increasing binary tree).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct History {
    tree: OrderedShape,
    // pre-order; 0 at leaves
    ranks: Vec<usize>,
}

impl History {
    /// Builds a history from a plane tree and pre-order ranks (`0` at leaves).
    pub fn new(tree: OrderedShape, ranks: Vec<usize>) -> Result<Self, NewickError> {
        let table = node_table(&tree);
        if ranks.len() != table.len() {
            return Err(NewickError::Rank {
                node: ranks.len().min(table.len()),
                message: format!(
                    "expected {} pre-order entries, got {}",
                    table.len(),
                    ranks.len()
                ),
            });
        }
        let internal = tree.leaf_count() - 1;
        let mut seen = vec![false; internal + 1];
        for (i, info) in table.iter().enumerate() {
            let rank = ranks[i];
            if info.children.is_none() {
                if rank != 0 {
                    return Err(NewickError::Rank {
                        node: i,
                        message: "leaves carry no rank".into(),
                    });
                }
                continue;
            }
            if rank == 0 || rank > internal {
                return Err(NewickError::Rank {
                    node: i,
                    message: format!("rank {rank} outside 1..={internal}"),
                });
            }
            if std::mem::replace(&mut seen[rank], true) {
                return Err(NewickError::Rank {
                    node: i,
                    message: format!("rank {rank} used twice"),
                });
            }
            match info.parent {
                None if rank != 1 => {
                    return Err(NewickError::Rank {
                        node: i,
                        message: format!("root must have rank 1, found {rank}"),
                    })
                }
                Some(p) if ranks[p.0] >= rank => {
                    return Err(NewickError::Rank {
                        node: i,
                        message: format!("rank {rank} does not exceed parent rank {}", ranks[p.0]),
                    })
                }
                _ => {}
            }
        }
        Ok(History { tree, ranks })
    }

    /// The history encoded by a permutation of `1..=n-1`: the root takes the
    /// minimum, its left subtree is built from the prefix before it and its
    /// right subtree from the suffix. This is a bijection onto histories.
    pub fn from_permutation(perm: &[usize]) -> Self {
        fn build(values: &[usize], ranks: &mut Vec<usize>) -> OrderedShape {
            if values.is_empty() {
                ranks.push(0);
                return OrderedShape::leaf();
            }
            let (pos, &min) = values.iter().enumerate().min_by_key(|(_, v)| **v).unwrap();
            let slot = ranks.len();
            ranks.push(min);
            let left = build(&values[..pos], ranks);
            let right = build(&values[pos + 1..], ranks);
            debug_assert!(ranks[slot] == min);
            OrderedShape::join(left, right)
        }
        let mut ranks = Vec::with_capacity(2 * perm.len() + 1);
        let tree = build(perm, &mut ranks);
        History { tree, ranks }
    }

    pub fn ordered(&self) -> &OrderedShape {
        &self.tree
    }

    pub fn size(&self) -> usize {
        self.tree.size()
    }

    /// Underlying unordered shape.
    pub fn shape(&self) -> super::Shape {
        self.tree.shape()
    }

    /// Rank of an internal node, `None` for leaves or unknown nodes.
    pub fn rank(&self, node: NodeRef) -> Option<usize> {
        self.ranks.get(node.0).copied().filter(|&r| r > 0)
    }

    /// Pre-order ranks with `0` at leaves.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }
}

impl fmt::Display for History {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn walk(
            t: &OrderedShape,
            ranks: &[usize],
            idx: &mut usize,
            f: &mut fmt::Formatter<'_>,
        ) -> fmt::Result {
            let rank = ranks[*idx];
            *idx += 1;
            match t.children() {
                None => f.write_str("*"),
                Some((l, r)) => {
                    f.write_str("(")?;
                    walk(l, ranks, idx, f)?;
                    f.write_str(",")?;
                    walk(r, ranks, idx, f)?;
                    write!(f, ")_{rank}")
                }
            }
        }
        let mut idx = 0;
        walk(&self.tree, &self.ranks, &mut idx, f)
    }
}

impl fmt::Debug for History {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "History({self})")
    }
}
