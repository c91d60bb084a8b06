//! Counts ancestral configurations of a tree and cross-checks them by
//! listing the configurations explicitly.
//!
//! `cargo run --example ancestral_configurations -- "((a,b),(c,(d,e)))"`

use ancestral::configs::{config_counts, node_configs, oracle_configurations};
use ancestral::newick::parse_labeled;
use ancestral::tree::{node_table, BinaryTree};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "(((a,b),c),(d,e))".to_string());
    let tree = match parse_labeled(&text) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(1);
        }
    };

    let counts = config_counts(&tree);
    println!("{tree}: root {}, total {}", counts.root, counts.total);

    let table = node_table(&tree);
    for (k, c) in node_configs(&tree).iter() {
        if table[k.0].leaves == 1 {
            continue;
        }
        let sub = tree.subtree_at(k).unwrap();
        print!("  node {k} {sub}: {c}");
        if tree.leaf_count() <= 10 {
            let listed = oracle_configurations(&tree, k).unwrap();
            let sets: Vec<String> = listed
                .iter()
                .map(|set| {
                    let names: Vec<String> = set
                        .iter()
                        .map(|&x| tree.subtree_at(x).unwrap().to_string())
                        .collect();
                    format!("{{{}}}", names.join(","))
                })
                .collect();
            print!("  {}", sets.join(" "));
        }
        println!();
    }
}
