//! Exact finite-size distributions, lognormality checks, extremal shapes and
//! Monte Carlo sampling.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::catalan_table;
use crate::configs::{config_counts, ConfigCounter};
use crate::error::{check_cap, Error, Result};
use crate::moments::{exact_correlation_value, exact_row, ln_biguint, CompensatedSum, MomentRow};
use crate::tree::{History, OrderedShape, Shape};
use crate::weights::{induced_distribution, ModelId};

pub const EXACT_DISTRIBUTION_CAP: usize = 16;
pub const MONTE_CARLO_SIZE_CAP: usize = 2000;
pub const MIN_SAMPLES: usize = 1000;
/// Samples drawn from one random stream; fixed so results do not depend on
/// how streams are spread over threads.
pub const SAMPLES_PER_STREAM: usize = 256;
pub const GENERATOR: &str = "ChaCha20";

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionEntry {
    pub shape: Shape,
    pub total: BigUint,
    pub root: BigUint,
    pub probability: BigRational,
}

impl DistributionEntry {
    pub fn ln_total(&self) -> f64 {
        ln_biguint(&self.total)
    }

    pub fn ln_root(&self) -> f64 {
        ln_biguint(&self.root)
    }
}

/// Law of `(T, R)` over all shapes of one size, in canonical shape order.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactDistribution {
    pub n: usize,
    pub model: ModelId,
    pub entries: Vec<DistributionEntry>,
}

pub fn exact_distribution(n: usize, model: ModelId) -> Result<ExactDistribution> {
    check_cap("exact distribution size", n, EXACT_DISTRIBUTION_CAP)?;
    let weights = induced_distribution(n, model)?;
    let counter = ConfigCounter::new();
    let entries = weights
        .into_par_iter()
        .map(|(shape, probability)| {
            let c = counter.counts(&shape);
            DistributionEntry {
                shape,
                total: c.total,
                root: c.root,
                probability,
            }
        })
        .collect();
    Ok(ExactDistribution { n, model, entries })
}

impl ExactDistribution {
    /// Exact raw moments and derived quantities.
    pub fn moments(&self) -> MomentRow<BigRational> {
        let mut acc = [(); 5].map(|_| BigRational::zero());
        for e in &self.entries {
            let r = BigInt::from(e.root.clone());
            let t = BigInt::from(e.total.clone());
            let values = [r.clone(), t.clone(), &r * &r, &t * &r, &t * &t];
            for (a, v) in acc.iter_mut().zip(values) {
                *a += &e.probability * BigRational::from_integer(v);
            }
        }
        let [e_r, e_t, e_r2, e_tr, e_t2] = acc;
        exact_row(self.n, e_r, e_t, e_r2, e_tr, e_t2)
    }

    /// Mean and variance of `ln T`.
    pub fn log_total_moments(&self) -> (f64, f64) {
        let mut mean = CompensatedSum::default();
        for e in &self.entries {
            mean.add(prob_f64(&e.probability) * e.ln_total());
        }
        let mu = mean.value();
        let mut var = CompensatedSum::default();
        for e in &self.entries {
            let d = e.ln_total() - mu;
            var.add(prob_f64(&e.probability) * d * d);
        }
        (mu, var.value())
    }
}

fn prob_f64(p: &BigRational) -> f64 {
    p.to_f64().expect("probability is finite")
}

/// Standard normal distribution function.
pub fn normal_cdf(y: f64) -> f64 {
    0.5 * libm::erfc(-y / std::f64::consts::SQRT_2)
}

/// `P[ln T <= E ln T + y sd(ln T)]` at every grid point.
pub fn standardized_log_cdf(dist: &ExactDistribution, grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    let (mu, var) = dist.log_total_moments();
    let sd = var.sqrt();
    if sd.is_nan() || sd <= 1e-12 * mu.abs().max(1.0) {
        return Err(Error::Degenerate(format!(
            "ln T has zero variance at n = {}",
            dist.n
        )));
    }
    let mut order: Vec<(f64, &BigRational)> = dist
        .entries
        .iter()
        .map(|e| ((e.ln_total() - mu) / sd, &e.probability))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(grid
        .iter()
        .map(|&y| {
            let mass = order
                .iter()
                .take_while(|(z, _)| *z <= y)
                .fold(BigRational::zero(), |acc, (_, p)| acc + *p);
            (y, prob_f64(&mass))
        })
        .collect())
}

/// `y = a, a + step, ..., b` computed as `a + i step` to avoid drift.
pub fn grid(a: f64, b: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || !a.is_finite() || !b.is_finite() || b < a {
        return Err(Error::InvalidArgument(format!(
            "grid {a}:{b}:{step} needs a <= b and step > 0"
        )));
    }
    let count = ((b - a) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|i| a + i as f64 * step).collect())
}

/// `max |F(y) - Phi(y)|` over the grid.
pub fn max_normal_deviation(cdf: &[(f64, f64)]) -> f64 {
    cdf.iter()
        .map(|&(y, f)| (f - normal_cdf(y)).abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalReport {
    pub n: usize,
    pub max_root: BigUint,
    /// Shapes attaining `max_root`, with their total counts.
    pub root_maximizers: Vec<(Shape, BigUint)>,
    pub max_total: BigUint,
    /// Shapes attaining `max_total`, with their root counts.
    pub total_maximizers: Vec<(Shape, BigUint)>,
    /// `(ln T, ln R)` for every shape in canonical order.
    pub scatter: Vec<(f64, f64)>,
}

pub fn extremal_shapes(n: usize) -> Result<ExtremalReport> {
    check_cap("extremal search size", n, EXACT_DISTRIBUTION_CAP)?;
    if n < 2 {
        return Err(Error::InvalidArgument(
            "extremal search needs at least two leaves".into(),
        ));
    }
    let dist = exact_distribution(n, ModelId::Uniform)?;
    let max_root = dist.entries.iter().map(|e| &e.root).max().unwrap().clone();
    let max_total = dist.entries.iter().map(|e| &e.total).max().unwrap().clone();
    let root_maximizers = dist
        .entries
        .iter()
        .filter(|e| e.root == max_root)
        .map(|e| (e.shape.clone(), e.total.clone()))
        .collect();
    let total_maximizers = dist
        .entries
        .iter()
        .filter(|e| e.total == max_total)
        .map(|e| (e.shape.clone(), e.root.clone()))
        .collect();
    let scatter = dist
        .entries
        .iter()
        .map(|e| (e.ln_total(), e.ln_root()))
        .collect();
    Ok(ExtremalReport {
        n,
        max_root,
        root_maximizers,
        max_total,
        total_maximizers,
        scatter,
    })
}

/// A random tree: a plane tree under the uniform model, a history under Yule.
#[derive(Debug, Clone, PartialEq)]
pub enum SampledTree {
    Ordered(OrderedShape),
    History(History),
}

impl SampledTree {
    pub fn ordered(&self) -> &OrderedShape {
        match self {
            SampledTree::Ordered(t) => t,
            SampledTree::History(h) => h.ordered(),
        }
    }
}

/// Draws `u` uniformly from `0..bound` by rejection on random bit strings.
pub fn uniform_below<R: RngCore + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(!bound.is_zero(), "empty range");
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let excess = words as u64 * 32 - bits;
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
        if let Some(top) = digits.last_mut() {
            *top >>= excess;
        }
        let candidate = BigUint::from_slice(&digits);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Uniform plane trees by recursive root splits.
#[derive(Debug, Clone)]
pub struct UniformSampler {
    catalan: Vec<BigUint>,
}

impl UniformSampler {
    pub fn new(max_size: usize) -> Self {
        UniformSampler {
            catalan: catalan_table(max_size.max(1)),
        }
    }

    /// Left subtree size `j` with probability `C(j-1) C(m-1-j) / C(m-1)`.
    /// Candidates are scanned from both ends, where most of the mass sits.
    pub fn split<R: RngCore + ?Sized>(&self, m: usize, rng: &mut R) -> usize {
        let c = &self.catalan;
        let u = uniform_below(rng, &c[m - 1]);
        let mut acc = BigUint::zero();
        let (mut lo, mut hi) = (1, m - 1);
        loop {
            for j in [lo, hi] {
                acc += &c[j - 1] * &c[m - 1 - j];
                if acc > u {
                    return j;
                }
                if lo == hi {
                    break;
                }
            }
            lo += 1;
            hi -= 1;
            assert!(lo <= hi, "split weights sum to C(m-1)");
        }
    }

    pub fn sample<R: RngCore + ?Sized>(&self, n: usize, rng: &mut R) -> OrderedShape {
        assert!(n < self.catalan.len() + 1, "sampler table too small");
        if n == 1 {
            return OrderedShape::leaf();
        }
        let j = self.split(n, rng);
        let left = self.sample(j, rng);
        let right = self.sample(n - j, rng);
        OrderedShape::join(left, right)
    }
}

/// A uniformly random history, via a uniformly random permutation of ranks.
pub fn sample_history<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> History {
    let mut perm: Vec<usize> = (1..n).collect();
    perm.shuffle(rng);
    History::from_permutation(&perm)
}

pub fn sample_tree<R: RngCore + ?Sized>(
    n: usize,
    model: ModelId,
    rng: &mut R,
) -> Result<SampledTree> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "a tree has at least one leaf".into(),
        ));
    }
    Ok(match model {
        ModelId::Uniform => SampledTree::Ordered(UniformSampler::new(n).sample(n, rng)),
        ModelId::Yule => SampledTree::History(sample_history(n, rng)),
    })
}

/// Generator for stream `stream` of a seeded run.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleRun {
    pub n: usize,
    pub model: ModelId,
    pub samples: usize,
    pub seed: u64,
    pub generator: &'static str,
    pub log_t: Vec<f64>,
    pub log_r: Vec<f64>,
    /// `E[ln T] / n`.
    pub mean_log_t_per_n: f64,
    /// `V[ln T] / n` (unbiased sample variance).
    pub var_log_t_per_n: f64,
    pub se_mean_per_n: f64,
    pub se_var_per_n: f64,
}

pub fn monte_carlo_log_moments(
    n: usize,
    model: ModelId,
    samples: usize,
    seed: u64,
) -> Result<SampleRun> {
    check_cap("Monte Carlo tree size", n, MONTE_CARLO_SIZE_CAP)?;
    if n < 2 {
        return Err(Error::InvalidArgument(
            "Monte Carlo needs at least two leaves".into(),
        ));
    }
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let sampler = UniformSampler::new(n);
    let streams = samples.div_ceil(SAMPLES_PER_STREAM);
    let draws: Vec<(f64, f64)> = (0..streams)
        .into_par_iter()
        .flat_map_iter(|stream| {
            let mut rng = stream_rng(seed, stream as u64);
            let count = SAMPLES_PER_STREAM.min(samples - stream * SAMPLES_PER_STREAM);
            (0..count)
                .map(|_| {
                    let c = match model {
                        ModelId::Uniform => config_counts(&sampler.sample(n, &mut rng)),
                        ModelId::Yule => config_counts(sample_history(n, &mut rng).ordered()),
                    };
                    (ln_biguint(&c.total), ln_biguint(&c.root))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let (log_t, log_r): (Vec<f64>, Vec<f64>) = draws.into_iter().unzip();
    let s = samples as f64;
    let mut sum = CompensatedSum::default();
    log_t.iter().for_each(|&x| sum.add(x));
    let mean = sum.value() / s;
    let (mut m2, mut m4) = (CompensatedSum::default(), CompensatedSum::default());
    for &x in &log_t {
        let d = x - mean;
        m2.add(d * d);
        m4.add(d * d * d * d);
    }
    let var = m2.value() / (s - 1.0);
    let fourth = m4.value() / s;
    let nf = n as f64;
    Ok(SampleRun {
        n,
        model,
        samples,
        seed,
        generator: GENERATOR,
        log_t,
        log_r,
        mean_log_t_per_n: mean / nf,
        var_log_t_per_n: var / nf,
        se_mean_per_n: (var / s).sqrt() / nf,
        se_var_per_n: ((fourth - var * var).max(0.0) / s).sqrt() / nf,
    })
}

/// Pearson correlation of `T` and `R` under the exact distribution.
pub fn exact_correlation(n: usize, model: ModelId) -> Result<f64> {
    let dist = exact_distribution(n, model)?;
    let m = dist.moments();
    exact_correlation_value(&m.var_r, &m.var_t, &m.cov_tr)
        .ok_or_else(|| Error::Degenerate(format!("a variance vanishes at n = {n}")))
}
