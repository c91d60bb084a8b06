use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;

use ancestral::combinat::{catalan, factorial, labeled_topology_count};
use ancestral::configs::{
    config_counts, maximal_antichains, node_configs, oracle_configurations,
    realization_configurations, within_bounds,
};
use ancestral::moments::{estimate_exponential_order_ln, exact_moments, float_moments, Statistic};
use ancestral::newick::{parse, parse_auto, serialize, AnyTree, Style};
use ancestral::stats::{exact_distribution, grid, standardized_log_cdf};
use ancestral::tree::{
    canonicalize, enumerate_shapes, node_table, BinaryTree, History, LabeledTopology, NodeRef,
    OrderedShape, Shape,
};
use ancestral::weights::{lab, ouh, out, ModelId};

fn plane_tree() -> impl Strategy<Value = OrderedShape> {
    let leaf = Just(OrderedShape::leaf());
    leaf.prop_recursive(9, 24, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| OrderedShape::join(l, r))
    })
}

/// Random permutation of `1..n` for `2 <= n <= 10`.
fn permutation() -> impl Strategy<Value = Vec<usize>> {
    (2usize..=10).prop_flat_map(|n| Just((1..n).collect::<Vec<_>>()).prop_shuffle())
}

fn relabel(tree: &OrderedShape, labels: &mut impl Iterator<Item = String>) -> LabeledTopology {
    match tree.children() {
        None => LabeledTopology::leaf(labels.next().unwrap()),
        Some((l, r)) => {
            let l = relabel(l, labels);
            let r = relabel(r, labels);
            LabeledTopology::join(l, r).unwrap()
        }
    }
}

/// Flips the children at every node whose pre-order index is set in `mask`.
fn flip(tree: &OrderedShape, mask: u64, index: &mut u32) -> OrderedShape {
    let here = *index;
    *index += 1;
    match tree.children() {
        None => tree.clone(),
        Some((l, r)) => {
            let l = flip(l, mask, index);
            let r = flip(r, mask, index);
            if mask >> (here % 64) & 1 == 1 {
                OrderedShape::join(r, l)
            } else {
                OrderedShape::join(l, r)
            }
        }
    }
}

fn round_trip(tree: AnyTree) {
    let text = serialize(&tree);
    let back = parse(&text, tree.style()).unwrap();
    assert_eq!(back, tree, "{text}");
    assert_eq!(serialize(&back), text);
    // unlabeled text alone cannot say whether the plane order matters
    let auto = parse_auto(&text).unwrap();
    match tree.style() {
        Style::Shape | Style::Ordered => {
            assert!(
                matches!(auto.style(), Style::Shape | Style::Ordered),
                "{text}"
            );
            assert_eq!(auto.shape(), tree.shape());
        }
        style => assert_eq!(auto.style(), style, "{text}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn newick_round_trip_all_styles(perm in permutation(), names in proptest::collection::vec("[a-zA-Z][a-zA-Z0-9.'-]{0,5}", 10)) {
        let history = History::from_permutation(&perm);
        let ordered = history.ordered().clone();
        let n = ordered.leaf_count();
        let mut labels = names.into_iter().enumerate().map(|(i, s)| format!("{s}{i}")).take(n);
        round_trip(AnyTree::Labeled(relabel(&ordered, &mut labels)));
        round_trip(AnyTree::Shape(history.shape()));
        if n > 2 {
            round_trip(AnyTree::Ordered(ordered));
        }
        round_trip(AnyTree::History(history));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonicalize_is_idempotent(t in plane_tree()) {
        let once = canonicalize(&t);
        prop_assert_eq!(canonicalize(&once), once.clone());
        prop_assert_eq!(canonicalize(&t.mirror()), once);
    }

    #[test]
    fn counts_ignore_embedding_and_labels(t in plane_tree(), mask in any::<u64>(), offset in 0usize..50) {
        let base = config_counts(&t);
        let flipped = flip(&t, mask, &mut 0);
        prop_assert_eq!(config_counts(&flipped), base.clone());
        let mut labels = (0..).map(|i| format!("x{}", i + offset));
        prop_assert_eq!(config_counts(&relabel(&flipped, &mut labels)), base.clone());
        prop_assert!(within_bounds(&base, t.leaf_count()));
    }
}

fn we_numbers(n_max: usize) -> Vec<u64> {
    let mut a = vec![0u64, 1];
    for n in 2..=n_max {
        let mut s: u64 = (1..=(n - 1) / 2).map(|i| a[i] * a[n - i]).sum();
        if n % 2 == 0 {
            s += a[n / 2] * (a[n / 2] + 1) / 2;
        }
        a.push(s);
    }
    a
}

#[test]
fn shape_counts_follow_wedderburn_etherington() {
    let we = we_numbers(15);
    for (n, &expected) in we.iter().enumerate().skip(1) {
        assert_eq!(enumerate_shapes(n).unwrap().len() as u64, expected, "n={n}");
    }
}

#[test]
fn embedding_counts_sum_to_family_sizes() {
    for n in 1..=12 {
        let shapes = enumerate_shapes(n).unwrap();
        let sum = |f: fn(&Shape) -> BigUint| shapes.iter().map(f).sum::<BigUint>();
        assert_eq!(sum(out), catalan(n - 1), "n={n}");
        assert_eq!(sum(ouh), factorial(n - 1), "n={n}");
        assert_eq!(sum(lab), labeled_topology_count(n), "n={n}");
    }
}

#[test]
fn shape_order_is_strict_total() {
    let shapes: Vec<Shape> = (1..=10)
        .flat_map(|n| enumerate_shapes(n).unwrap())
        .collect();
    for a in &shapes {
        for b in &shapes {
            let ab = a.cmp(b);
            assert_eq!(ab, b.cmp(a).reverse());
            assert_eq!(ab.is_eq(), a == b, "{a} vs {b}");
        }
    }
    // transitivity over a sorted copy: sorting must agree with pairwise order
    let mut sorted = shapes.clone();
    sorted.sort();
    for w in sorted.windows(2) {
        assert!(w[0] < w[1]);
    }
    for (i, a) in sorted.iter().enumerate().step_by(7) {
        for b in &sorted[i..] {
            for c in sorted.iter().rev().take(40) {
                if a < b && b < c {
                    assert!(a < c);
                }
            }
        }
    }
}

#[test]
fn antichain_bookkeeping() {
    for n in 1..=10 {
        for s in enumerate_shapes(n).unwrap() {
            let table = node_table(&s);
            let all: usize = (0..table.len())
                .map(|k| maximal_antichains(&table, NodeRef(k)).len())
                .sum();
            let total = config_counts(&s).total.to_usize().unwrap();
            assert_eq!(all, total + 2 * n - 1, "{s}");
        }
    }
}

#[test]
fn oracles_agree_on_larger_shapes() {
    // every fifth shape at n = 11 and n = 12
    for n in [11, 12] {
        for s in enumerate_shapes(n).unwrap().into_iter().step_by(5) {
            for (k, c) in node_configs(&s).iter() {
                let sets = oracle_configurations(&s, k).unwrap();
                assert_eq!(BigUint::from(sets.len()), *c, "{s} {k}");
            }
        }
    }
    // realizations at n = 9 on a handful of shapes
    for s in enumerate_shapes(9).unwrap().into_iter().step_by(9) {
        let realized = realization_configurations(&s).unwrap();
        for (k, _) in node_configs(&s).iter() {
            assert_eq!(
                realized[k.0],
                oracle_configurations(&s, k).unwrap(),
                "{s} {k}"
            );
        }
    }
}

#[test]
fn labeled_average_matches_uniform_moments() {
    let table = exact_moments(ModelId::Uniform, 12).unwrap();
    for n in 1..=12 {
        let l = BigInt::from(labeled_topology_count(n));
        let avg: BigRational = enumerate_shapes(n)
            .unwrap()
            .iter()
            .map(|s| BigRational::new(BigInt::from(config_counts(s).total * lab(s)), l.clone()))
            .sum();
        assert_eq!(avg, table.row(n).unwrap().e_t, "n={n}");
    }
}

#[test]
fn float_rows_satisfy_moment_invariants() {
    for model in ModelId::ALL {
        let table = float_moments(model, 1000).unwrap();
        let first = table.row(1).unwrap();
        assert!(first.e_r == 0.0 && first.e_t == 0.0 && first.e_t2 == 0.0);
        for row in &table.rows {
            assert!(row.var_r >= 0.0 && row.var_t >= 0.0, "{model} n={}", row.n);
            assert!(row.e_t >= row.e_r, "{model} n={}", row.n);
            if let Some(rho) = row.rho_tr {
                assert!(rho.abs() <= 1.0 + 1e-12, "{model} n={}", row.n);
            }
        }
    }
}

#[test]
fn variance_dominance() {
    for model in ModelId::ALL {
        let table = float_moments(model, 1000).unwrap();
        let squared_mean: Vec<f64> = table
            .ln_sequence(Statistic::T)
            .iter()
            .map(|x| 2.0 * x)
            .collect();
        let a = estimate_exponential_order_ln(&squared_mean).unwrap();
        let b = estimate_exponential_order_ln(&table.ln_sequence(Statistic::T2)).unwrap();
        assert!(a.value < b.value, "{model}: {} vs {}", a.value, b.value);
    }
}

#[test]
fn uniform_correlation_rises_towards_limit() {
    let table = float_moments(ModelId::Uniform, 300).unwrap();
    let rho: Vec<f64> = (100..=300)
        .map(|n| table.row(n).unwrap().rho_tr.unwrap())
        .collect();
    let limit = ancestral::moments::uniform_correlation_limit();
    assert!((rho.last().unwrap() - limit).abs() < 0.02);
    // the distance to the limit shrinks
    assert!((rho[0] - limit).abs() > (rho.last().unwrap() - limit).abs());
}

#[test]
fn cdf_is_monotone_in_unit_interval() {
    let points = grid(-3.0, 3.0, 0.1).unwrap();
    for model in ModelId::ALL {
        for n in [5, 9, 13] {
            let dist = exact_distribution(n, model).unwrap();
            let total: BigRational = dist.entries.iter().map(|e| e.probability.clone()).sum();
            assert!(total.is_one());
            let cdf = standardized_log_cdf(&dist, &points).unwrap();
            assert!(cdf.iter().all(|&(_, f)| (0.0..=1.0).contains(&f)));
            assert!(cdf.windows(2).all(|w| w[0].1 <= w[1].1));
        }
    }
}

#[test]
fn total_exceeds_root_on_every_shape() {
    let dist = exact_distribution(15, ModelId::Uniform).unwrap();
    assert_eq!(dist.entries.len(), 4850);
    for e in &dist.entries {
        assert!(e.total > e.root, "{}", e.shape);
        assert!(e.ln_total() > e.ln_root());
    }
}

#[test]
fn yule_mean_total_exceeds_uniform() {
    let u = exact_moments(ModelId::Uniform, 20).unwrap();
    let y = exact_moments(ModelId::Yule, 20).unwrap();
    for n in 5..=20 {
        assert!(y.row(n).unwrap().e_t > u.row(n).unwrap().e_t, "n={n}");
    }
    for n in 1..=4 {
        assert_eq!(y.row(n).unwrap().e_t, u.row(n).unwrap().e_t, "n={n}");
    }
}

#[test]
fn distinct_shapes_have_distinct_encodings() {
    let shapes = enumerate_shapes(12).unwrap();
    let texts: BTreeSet<String> = shapes.iter().map(|s| s.to_string()).collect();
    assert_eq!(texts.len(), shapes.len());
}
