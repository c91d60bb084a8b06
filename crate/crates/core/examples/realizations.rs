//! Walks through every realization of a small tree and the configuration
//! each one leaves below every node.

use std::collections::BTreeMap;

use ancestral::configs::{oracle_realizations, realization_configuration};
use ancestral::newick::parse_labeled;
use ancestral::tree::{node_table, BinaryTree, NodeRef};

fn main() -> ancestral::Result<()> {
    let tree = parse_labeled("(((a,b),c),(d,e))").expect("valid tree");
    let table = node_table(&tree);
    let realizations = oracle_realizations(&tree)?;
    println!("{tree} has {} realizations", realizations.len());

    let name = |k: NodeRef| tree.subtree_at(k).unwrap().to_string();
    let mut seen: BTreeMap<NodeRef, BTreeMap<String, usize>> = BTreeMap::new();
    for r in &realizations {
        for k in tree.nodes() {
            if table[k.0].leaves == 1 {
                continue;
            }
            let config = realization_configuration(&table, r, k);
            let label: Vec<String> = config.iter().map(|&x| name(x)).collect();
            *seen
                .entry(k)
                .or_default()
                .entry(label.join(" "))
                .or_default() += 1;
        }
    }
    for (k, configs) in seen {
        println!("below {}:", name(k));
        for (c, times) in configs {
            println!("  {{{c}}} from {times} realizations");
        }
    }
    Ok(())
}
