use num_bigint::BigUint;

use super::{History, OrderedShape, Shape};
use crate::combinat::{catalan, factorial};
use crate::error::{check_cap, Result};

/// Largest size accepted by [`enumerate_shapes`].
pub const SHAPE_ENUMERATION_CAP: usize = 22;
/// Largest size for which ordered shapes are materialised.
pub const ORDERED_ITERATION_CAP: usize = 14;
/// Largest size for which histories are iterated.
pub const HISTORY_ITERATION_CAP: usize = 12;

/// All canonical shapes of sizes `0..=n` (index 0 is empty).
///
/// Shapes of size `m` are built from unordered pairs of smaller shapes
/// `(a, b)` with `|a| <= |b|` (and `a <= b` on ties), iterated in canonical
/// order, so every list comes out sorted and duplicate-free.
pub fn shape_catalog(n: usize) -> Result<Vec<Vec<Shape>>> {
    check_cap("shape enumeration", n, SHAPE_ENUMERATION_CAP)?;
    let mut by_size: Vec<Vec<Shape>> = vec![Vec::new(); n.max(1) + 1];
    by_size[1].push(Shape::leaf());
    for m in 2..=n {
        let mut level = Vec::new();
        for a in 1..=m / 2 {
            let b = m - a;
            for (i, left) in by_size[a].iter().enumerate() {
                let start = if a == b { i } else { 0 };
                for right in &by_size[b][start..] {
                    level.push(Shape::join(left.clone(), right.clone()));
                }
            }
        }
        by_size[m] = level;
    }
    Ok(by_size)
}

/// Every canonical shape of size `n`, once, in ascending canonical order.
pub fn enumerate_shapes(n: usize) -> Result<Vec<Shape>> {
    enumerate_shapes_with_cap(n, SHAPE_ENUMERATION_CAP)
}

/// As [`enumerate_shapes`], with an explicit (lower) cap.
pub fn enumerate_shapes_with_cap(n: usize, cap: usize) -> Result<Vec<Shape>> {
    check_cap("shape enumeration", n, cap.min(SHAPE_ENUMERATION_CAP))?;
    if n == 0 {
        return Err(crate::Error::InvalidArgument(
            "a tree has at least one leaf".into(),
        ));
    }
    Ok(shape_catalog(n)?.swap_remove(n))
}

/// Number of ordered shapes of size `n`, `Catalan(n-1)`.
pub fn ordered_count(n: usize) -> BigUint {
    catalan(n.saturating_sub(1))
}

/// Number of histories of size `n`, `(n-1)!`.
pub fn history_count(n: usize) -> BigUint {
    factorial(n.saturating_sub(1))
}

/// Every ordered shape of size `n`.
pub fn enumerate_ordered(n: usize) -> Result<Vec<OrderedShape>> {
    check_cap("ordered shape enumeration", n, ORDERED_ITERATION_CAP)?;
    if n == 0 {
        return Err(crate::Error::InvalidArgument(
            "a tree has at least one leaf".into(),
        ));
    }
    let mut by_size: Vec<Vec<OrderedShape>> = vec![Vec::new(); n + 1];
    by_size[1].push(OrderedShape::leaf());
    for m in 2..=n {
        let mut level = Vec::new();
        for j in 1..m {
            for l in &by_size[j] {
                for r in &by_size[m - j] {
                    level.push(OrderedShape::join(l.clone(), r.clone()));
                }
            }
        }
        by_size[m] = level;
    }
    Ok(by_size.swap_remove(n))
}

/// Lazily yields every history of size `n` exactly once.
pub fn enumerate_histories(n: usize) -> Result<HistoryIter> {
    check_cap("history enumeration", n, HISTORY_ITERATION_CAP)?;
    if n == 0 {
        return Err(crate::Error::InvalidArgument(
            "a tree has at least one leaf".into(),
        ));
    }
    Ok(HistoryIter {
        perm: Some((1..n).collect()),
    })
}

/// Iterator over histories in lexicographic order of their permutation code.
#[derive(Debug, Clone)]
pub struct HistoryIter {
    perm: Option<Vec<usize>>,
}

impl Iterator for HistoryIter {
    type Item = History;

    fn next(&mut self) -> Option<History> {
        let perm = self.perm.as_mut()?;
        let out = History::from_permutation(perm);
        if !next_permutation(perm) {
            self.perm = None;
        }
        Some(out)
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::BinaryTree;
    use crate::Error;
    use std::collections::HashSet;

    // Wedderburn–Etherington numbers from the halving convolution, independent
    // of the shape builder.
    fn wedderburn_etherington(max: usize) -> Vec<u64> {
        let mut a = vec![0u64; max + 1];
        a[1] = 1;
        for n in 2..=max {
            let mut s = 0;
            for i in 1..=(n - 1) / 2 {
                s += a[i] * a[n - i];
            }
            if n % 2 == 0 {
                let h = a[n / 2];
                s += h * (h + 1) / 2;
            }
            a[n] = s;
        }
        a
    }

    #[test]
    fn counts_match_wedderburn_etherington() {
        let we = wedderburn_etherington(15);
        assert_eq!(&we[1..10], &[1, 1, 1, 2, 3, 6, 11, 23, 46]);
        let catalog = shape_catalog(15).unwrap();
        for n in 1..=15 {
            assert_eq!(catalog[n].len() as u64, we[n], "n={n}");
        }
        assert_eq!(catalog[15].len(), 4850);
    }

    #[test]
    fn shapes_are_sorted_and_distinct() {
        for n in 1..=12 {
            let shapes = enumerate_shapes(n).unwrap();
            assert!(shapes.windows(2).all(|w| w[0] < w[1]), "n={n}");
            assert!(shapes.iter().all(|s| s.size() == n));
        }
    }

    #[test]
    fn canonical_order_is_a_strict_total_order() {
        let all: Vec<Shape> = (1..=10)
            .flat_map(|n| enumerate_shapes(n).unwrap())
            .collect();
        // sampled triples for transitivity, all pairs for antisymmetry/totality
        for (i, a) in all.iter().enumerate().step_by(7) {
            for (j, b) in all.iter().enumerate().step_by(3) {
                assert_eq!(a.cmp(b), b.cmp(a).reverse());
                assert_eq!(a == b, i == j);
                for c in all.iter().step_by(97) {
                    if a < b && b < c {
                        assert!(a < c);
                    }
                }
            }
        }
    }

    #[test]
    fn single_leaf_and_cap() {
        assert_eq!(enumerate_shapes(1).unwrap(), vec![Shape::leaf()]);
        assert!(matches!(
            enumerate_shapes(SHAPE_ENUMERATION_CAP + 1),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            enumerate_shapes_with_cap(19, 18),
            Err(Error::Capacity { cap: 18, .. })
        ));
        assert!(enumerate_shapes(0).is_err());
    }

    #[test]
    fn ordered_counts_are_catalan() {
        for n in 1..=9 {
            let all = enumerate_ordered(n).unwrap();
            assert_eq!(BigUint::from(all.len()), ordered_count(n));
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
        assert_eq!(enumerate_ordered(5).unwrap().len(), 14);
    }

    #[test]
    fn history_counts_are_factorial() {
        assert_eq!(enumerate_histories(2).unwrap().count(), 1);
        assert_eq!(enumerate_histories(5).unwrap().count(), 24);
        for n in 1..=8 {
            let all: Vec<History> = enumerate_histories(n).unwrap().collect();
            assert_eq!(BigUint::from(all.len()), history_count(n));
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
    }

    #[test]
    fn four_embeddings_of_fig_shape() {
        let target = crate::newick::parse_shape("(((*,*),*),(*,*))").unwrap();
        let embeddings = enumerate_ordered(5)
            .unwrap()
            .into_iter()
            .filter(|o| o.shape() == target)
            .count();
        assert_eq!(embeddings, 4);
    }
}
