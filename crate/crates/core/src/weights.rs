//! Labeling, ordering and ranking counts per shape, and the two tree models.
//!
//! For a shape with root subtrees of sizes `a` and `b` (`n = a + b`) and
//! symmetry indicator `s` (1 when both subtrees are the same shape):
//!
//! ```text
//! lab = lab(L) lab(R) binom(n, a)        / 2^s
//! out = 2 out(L) out(R)                  / 2^s
//! ouh = 2 ouh(L) ouh(R) binom(n-2, a-1)  / 2^s
//! ```
//!
//! A shape's probability under the uniform model is `out / C(n-1)`, which
//! equals `lab / |L_n|`; under the Yule model it is `ouh / (n-1)!`, which
//! equals `lab` times the Yule probability of any one labeling.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::combinat::{binomial, catalan, factorial, labeled_topology_count};
use crate::error::{Error, Result};
use crate::tree::{enumerate_shapes, BinaryTree, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelId {
    Uniform,
    Yule,
}

impl ModelId {
    pub const ALL: [ModelId; 2] = [ModelId::Uniform, ModelId::Yule];

    pub fn name(self) -> &'static str {
        match self {
            ModelId::Uniform => "uniform",
            ModelId::Yule => "yule",
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "uniform" | "pda" => Ok(ModelId::Uniform),
            "yule" => Ok(ModelId::Yule),
            other => Err(Error::InvalidArgument(format!(
                "unknown model `{other}` (expected uniform or yule)"
            ))),
        }
    }
}

pub(crate) fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn halve_if_symmetric(value: BigUint, shape: &Shape) -> BigUint {
    if shape.is_symmetric() {
        value >> 1
    } else {
        value
    }
}

/// Number of labeled topologies with this shape.
pub fn lab(shape: &Shape) -> BigUint {
    match shape.children() {
        None => BigUint::one(),
        Some((l, r)) => {
            halve_if_symmetric(lab(l) * lab(r) * binomial(shape.size(), l.size()), shape)
        }
    }
}

/// Number of plane embeddings of this shape.
pub fn out(shape: &Shape) -> BigUint {
    match shape.children() {
        None => BigUint::one(),
        Some((l, r)) => halve_if_symmetric(out(l) * out(r) * 2u32, shape),
    }
}

/// Number of ranked plane embeddings (histories) of this shape.
pub fn ouh(shape: &Shape) -> BigUint {
    match shape.children() {
        None => BigUint::one(),
        Some((l, r)) => halve_if_symmetric(
            ouh(l) * ouh(r) * 2u32 * binomial(shape.size() - 2, l.size() - 1),
            shape,
        ),
    }
}

/// Yule probability of a single labeled topology with this tree's shape:
/// `2^(n-1) / (n! * prod over internal nodes of (size - 1))`.
pub fn yule_prob<T: BinaryTree>(tree: &T) -> BigRational {
    fn product<T: BinaryTree>(t: &T) -> BigUint {
        match t.children() {
            None => BigUint::one(),
            Some((l, r)) => product(l) * product(r) * BigUint::from(t.leaf_count() - 1),
        }
    }
    let n = tree.leaf_count();
    ratio(BigUint::one() << (n - 1), factorial(n) * product(tree))
}

/// Uniform probability of a single labeled topology on `n` leaves.
pub fn uniform_prob(n: usize) -> BigRational {
    ratio(BigUint::one(), labeled_topology_count(n))
}

/// All weights of one shape.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeWeights {
    pub lab: BigUint,
    pub out: BigUint,
    pub ouh: BigUint,
    pub p_uniform: BigRational,
    pub p_yule_labeled: BigRational,
    pub p_induced_uniform: BigRational,
    pub p_induced_yule: BigRational,
}

impl ShapeWeights {
    pub fn of(shape: &Shape) -> Self {
        let n = shape.size();
        let (lab, out, ouh) = (lab(shape), out(shape), ouh(shape));
        ShapeWeights {
            p_uniform: uniform_prob(n),
            p_yule_labeled: yule_prob(shape),
            p_induced_uniform: ratio(out.clone(), catalan(n - 1)),
            p_induced_yule: ratio(ouh.clone(), factorial(n - 1)),
            lab,
            out,
            ouh,
        }
    }

    pub fn induced(&self, model: ModelId) -> &BigRational {
        match model {
            ModelId::Uniform => &self.p_induced_uniform,
            ModelId::Yule => &self.p_induced_yule,
        }
    }
}

/// Which counting argument produces an induced distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Plane trees (uniform) or histories (Yule), counted by `out` / `ouh`.
    Ordered,
    /// Labeled topologies, counted by `lab` times a per-labeling probability.
    Labeled,
}

/// Shape probabilities of size `n` in canonical order.
pub fn induced_distribution(n: usize, model: ModelId) -> Result<Vec<(Shape, BigRational)>> {
    induced_distribution_via(n, model, Route::Ordered)
}

pub fn induced_distribution_via(
    n: usize,
    model: ModelId,
    route: Route,
) -> Result<Vec<(Shape, BigRational)>> {
    let shapes = enumerate_shapes(n)?;
    let family = match model {
        ModelId::Uniform => catalan(n - 1),
        ModelId::Yule => factorial(n - 1),
    };
    let labelings = labeled_topology_count(n);
    Ok(shapes
        .into_iter()
        .map(|s| {
            let p = match (route, model) {
                (Route::Ordered, ModelId::Uniform) => ratio(out(&s), family.clone()),
                (Route::Ordered, ModelId::Yule) => ratio(ouh(&s), family.clone()),
                (Route::Labeled, ModelId::Uniform) => ratio(lab(&s), labelings.clone()),
                (Route::Labeled, ModelId::Yule) => {
                    BigRational::from_integer(BigInt::from(lab(&s))) * yule_prob(&s)
                }
            };
            (s, p)
        })
        .collect())
}

/// Probability that the left root subtree of a random ordered tree of size
/// `n` has `j` leaves.
pub fn split_probability(model: ModelId, n: usize, j: usize) -> Result<BigRational> {
    if n < 2 || j == 0 || j >= n {
        return Err(Error::InvalidArgument(format!(
            "split needs n >= 2 and 1 <= j <= n-1, got n={n}, j={j}"
        )));
    }
    Ok(match model {
        ModelId::Uniform => ratio(catalan(j - 1) * catalan(n - 1 - j), catalan(n - 1)),
        ModelId::Yule => ratio(BigUint::one(), BigUint::from(n - 1)),
    })
}

#[cfg(test)]
fn sum_probabilities<'a>(ps: impl Iterator<Item = &'a BigRational>) -> BigRational {
    ps.fold(BigRational::default(), |acc, p| acc + p)
}
