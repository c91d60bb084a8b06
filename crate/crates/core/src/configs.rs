//! Ancestral configuration counts.
//!
//! For a tree `t` with root subtrees `L` and `R`:
//!
//! ```text
//! root(t)  = (root(L) + 1) * (root(R) + 1)
//! total(t) = total(L) + total(R) + root(t)
//! ```
//!
//! with both counts zero at a leaf. Two brute-force oracles enumerate the
//! configurations as explicit node sets: one through maximal antichains of
//! each subtree, one through realization maps.

use std::collections::{BTreeSet, HashMap};
use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{check_cap, Result};
use crate::tree::{is_descendant, node_table, BinaryTree, NodeInfo, NodeRef, Shape};

pub type ConfigCount = BigUint;

/// A set of lineages, each named by the node immediately below it.
pub type Configuration = BTreeSet<NodeRef>;

/// Largest tree (in leaves) accepted by the antichain oracle.
pub const ANTICHAIN_ORACLE_CAP: usize = 14;
/// Largest tree accepted by the subset-filtering oracle.
pub const SUBSET_ORACLE_CAP: usize = 8;
/// Largest tree accepted by the realization oracle.
pub const REALIZATION_ORACLE_CAP: usize = 10;

/// Root and total counts of one tree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConfigCounts {
    pub root: ConfigCount,
    pub total: ConfigCount,
}

impl ConfigCounts {
    fn join(left: &ConfigCounts, right: &ConfigCounts) -> ConfigCounts {
        let root = (&left.root + 1u32) * (&right.root + 1u32);
        let total = &left.total + &right.total + &root;
        ConfigCounts { root, total }
    }
}

pub fn config_counts<T: BinaryTree>(tree: &T) -> ConfigCounts {
    match tree.children() {
        None => ConfigCounts::default(),
        Some((l, r)) => ConfigCounts::join(&config_counts(l), &config_counts(r)),
    }
}

pub fn root_configs<T: BinaryTree>(tree: &T) -> ConfigCount {
    config_counts(tree).root
}

pub fn total_configs<T: BinaryTree>(tree: &T) -> ConfigCount {
    config_counts(tree).total
}

/// Per-node counts `c_k` in pre-order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeConfigTable {
    counts: Vec<ConfigCount>,
}

impl NodeConfigTable {
    pub fn get(&self, node: NodeRef) -> Option<&ConfigCount> {
        self.counts.get(node.0)
    }

    pub fn as_slice(&self) -> &[ConfigCount] {
        &self.counts
    }

    pub fn iter(&self) -> impl Iterator<Item = (NodeRef, &ConfigCount)> {
        self.counts.iter().enumerate().map(|(i, c)| (NodeRef(i), c))
    }

    pub fn total(&self) -> ConfigCount {
        self.counts.iter().sum()
    }

    pub fn root(&self) -> &ConfigCount {
        &self.counts[0]
    }
}

pub fn node_configs<T: BinaryTree>(tree: &T) -> NodeConfigTable {
    fn walk<T: BinaryTree>(t: &T, out: &mut Vec<ConfigCount>) -> ConfigCount {
        let slot = out.len();
        out.push(BigUint::zero());
        if let Some((l, r)) = t.children() {
            let a = walk(l, out);
            let b = walk(r, out);
            out[slot] = (a + 1u32) * (b + 1u32);
        }
        out[slot].clone()
    }
    let mut counts = Vec::with_capacity(tree.node_count());
    walk(tree, &mut counts);
    NodeConfigTable { counts }
}

/// Thread-safe memo of counts keyed by canonical shape.
#[derive(Debug, Default)]
pub struct ConfigCounter {
    memo: RwLock<HashMap<Shape, ConfigCounts>>,
}

impl ConfigCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn counts(&self, shape: &Shape) -> ConfigCounts {
        if let Some(hit) = self.memo.read().unwrap().get(shape) {
            return hit.clone();
        }
        let value = match shape.children() {
            None => ConfigCounts::default(),
            Some((l, r)) => ConfigCounts::join(&self.counts(l), &self.counts(r)),
        };
        self.memo
            .write()
            .unwrap()
            .entry(shape.clone())
            .or_insert(value)
            .clone()
    }

    pub fn len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// All maximal antichains of the subtree rooted at `k`, including `{k}`.
pub fn maximal_antichains(table: &[NodeInfo], k: NodeRef) -> BTreeSet<Configuration> {
    let mut out = BTreeSet::new();
    out.insert(BTreeSet::from([k]));
    if let Some((l, r)) = table[k.0].children {
        let left = maximal_antichains(table, l);
        let right = maximal_antichains(table, r);
        for a in &left {
            for b in &right {
                out.insert(a.union(b).copied().collect());
            }
        }
    }
    out
}

/// The configurations `C_k` at `node`, built from maximal antichains.
pub fn oracle_configurations<T: BinaryTree>(
    tree: &T,
    node: NodeRef,
) -> Result<BTreeSet<Configuration>> {
    check_cap(
        "antichain oracle leaves",
        tree.leaf_count(),
        ANTICHAIN_ORACLE_CAP,
    )?;
    tree.subtree_at(node)?;
    let table = node_table(tree);
    let mut sets = maximal_antichains(&table, node);
    sets.remove(&BTreeSet::from([node]));
    Ok(sets)
}

/// Same sets as [`oracle_configurations`], found by testing every subset of
/// the subtree's nodes for the maximal-antichain property.
pub fn subset_oracle_configurations<T: BinaryTree>(
    tree: &T,
    node: NodeRef,
) -> Result<BTreeSet<Configuration>> {
    check_cap("subset oracle leaves", tree.leaf_count(), SUBSET_ORACLE_CAP)?;
    tree.subtree_at(node)?;
    let table = node_table(tree);
    let span = 2 * table[node.0].leaves - 1;
    let members: Vec<NodeRef> = (node.0..node.0 + span).map(NodeRef).collect();
    let comparable =
        |x: NodeRef, y: NodeRef| is_descendant(&table, x, y) || is_descendant(&table, y, x);
    let mut out = BTreeSet::new();
    for mask in 1u32..(1u32 << span) {
        let chosen: Vec<NodeRef> = (0..span)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| members[i])
            .collect();
        let antichain = chosen
            .iter()
            .enumerate()
            .all(|(i, &x)| chosen[i + 1..].iter().all(|&y| !comparable(x, y)));
        let maximal = members
            .iter()
            .all(|&m| chosen.iter().any(|&x| comparable(m, x)));
        if antichain && maximal && chosen != [node] {
            out.insert(chosen.into_iter().collect());
        }
    }
    Ok(out)
}

/// A realization: each internal node is sent to one of its ancestors
/// (itself included), monotonically. Indexed by pre-order; `None` on leaves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Realization(pub Vec<Option<NodeRef>>);

impl Realization {
    pub fn image(&self, node: NodeRef) -> Option<NodeRef> {
        self.0.get(node.0).copied().flatten()
    }

    /// Whether every internal node is mapped to itself.
    pub fn is_identity(&self) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, r)| r.is_none_or(|r| r.0 == i))
    }
}

/// Every realization of `tree`.
pub fn oracle_realizations<T: BinaryTree>(tree: &T) -> Result<Vec<Realization>> {
    check_cap(
        "realization oracle leaves",
        tree.leaf_count(),
        REALIZATION_ORACLE_CAP,
    )?;
    let table = node_table(tree);
    let internal: Vec<usize> = (0..table.len())
        .filter(|&i| table[i].children.is_some())
        .collect();
    let mut map = vec![None; table.len()];
    let mut out = Vec::new();
    assign(&table, &internal, 0, &mut map, &mut out);
    Ok(out)
}

// Internal nodes come in pre-order, so a parent is always assigned before
// its children. Monotonicity then reduces to R(k) ⪯ R(parent(k)).
fn assign(
    table: &[NodeInfo],
    internal: &[usize],
    at: usize,
    map: &mut Vec<Option<NodeRef>>,
    out: &mut Vec<Realization>,
) {
    let Some(&k) = internal.get(at) else {
        out.push(Realization(map.clone()));
        return;
    };
    let ceiling = match table[k].parent {
        None => NodeRef(k),
        Some(p) => map[p.0].expect("parent assigned first"),
    };
    let mut cursor = Some(NodeRef(k));
    while let Some(c) = cursor {
        map[k] = Some(c);
        assign(table, internal, at + 1, map, out);
        if c == ceiling {
            break;
        }
        cursor = table[c.0].parent;
    }
    map[k] = None;
}

/// Lineages present just below node `k` under realization `r`.
pub fn realization_configuration(table: &[NodeInfo], r: &Realization, k: NodeRef) -> Configuration {
    let strictly_below =
        |x: Option<NodeRef>| x.is_some_and(|x| x != k && is_descendant(table, x, k));
    let span = 2 * table[k.0].leaves - 1;
    (k.0 + 1..k.0 + span)
        .map(NodeRef)
        .filter(|&x| {
            let formed = table[x.0].children.is_none() || strictly_below(r.image(x));
            let parent = table[x.0].parent.expect("non-root node");
            formed && !strictly_below(r.image(parent))
        })
        .collect()
}

/// `{ C(k, R) : R }` for every node `k`, indexed by pre-order.
pub fn realization_configurations<T: BinaryTree>(tree: &T) -> Result<Vec<BTreeSet<Configuration>>> {
    let realizations = oracle_realizations(tree)?;
    let table = node_table(tree);
    let mut out = vec![BTreeSet::new(); table.len()];
    for (k, sets) in out.iter_mut().enumerate() {
        if table[k].children.is_none() {
            continue;
        }
        for r in &realizations {
            sets.insert(realization_configuration(&table, r, NodeRef(k)));
        }
    }
    Ok(out)
}

/// `Σ_k |maximal antichains of t^k|`, which equals `total + 2n - 1`.
pub fn antichain_total<T: BinaryTree>(tree: &T) -> Result<BigUint> {
    check_cap(
        "antichain oracle leaves",
        tree.leaf_count(),
        ANTICHAIN_ORACLE_CAP,
    )?;
    let table = node_table(tree);
    Ok((0..table.len())
        .map(|k| BigUint::from(maximal_antichains(&table, NodeRef(k)).len()))
        .fold(BigUint::zero(), |a, b| a + b))
}

/// `c_r <= c <= (2n - 1) c_r`, for trees with at least two leaves.
pub fn within_bounds(counts: &ConfigCounts, leaves: usize) -> bool {
    leaves < 2
        || (counts.root <= counts.total
            && counts.total <= &counts.root * BigUint::from(2 * leaves - 1))
}
