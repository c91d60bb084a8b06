//! Reading and writing the four tree families.

use ancestral::newick::{parse, parse_auto, serialize, Style};
use ancestral::tree::{canonicalize, History};

fn main() {
    let inputs = [
        "(((a,b),c),(d,e));",
        "((•,•),(•,(•,•)))",
        "(((*,*)_3,*)_2,(*,*)_4)_1",
        "((a,b),(a,c))",
        "((a:0.1,b),c)",
        "((*,*)_1,*)_2",
    ];
    for text in inputs {
        match parse_auto(text) {
            Ok(tree) => println!(
                "{text:<28} {:?}, written back as {}, shape {}",
                tree.style(),
                serialize(&tree),
                tree.shape()
            ),
            Err(e) => println!("{text:<28} rejected: {e}"),
        }
    }

    // plane order is kept for ordered trees and dropped by canonicalization
    let ordered = parse("((*,(*,*)),*)", Style::Ordered).unwrap();
    println!(
        "\nordered {} canonicalizes to {}",
        serialize(&ordered),
        ordered.shape()
    );

    // every permutation of 1..n-1 encodes one history
    let h = History::from_permutation(&[3, 1, 4, 2]);
    println!(
        "history from [3, 1, 4, 2]: {h}, shape {}",
        canonicalize(h.ordered())
    );
}
