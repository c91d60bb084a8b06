//! Moment sequences of the root count `R` and total count `T` under both
//! models.
//!
//! Every size-`n` tree splits into a left subtree of size `j` and a right
//! subtree of size `n - j`. Writing `Rt = R + 1`:
//!
//! ```text
//! Rt = Rt_L Rt_R + 1
//! T  = T_L + T_R + R
//! T^2 = T_L^2 + T_R^2 + 2 T_L T_R + 2 T R - R^2
//! ```
//!
//! Exact mode sums these identities over the whole family (plane trees for
//! the uniform model, histories for Yule) with big integers and divides by
//! the family size at the end. For the uniform model the sums are the
//! generating-function coefficients `C(n-1) E[.]`.
//!
//! Float mode runs the same identities on expectations, weighted by the
//! split probabilities, with every first-order moment divided by `b^n` and
//! every second-order one by `b^(2n)` so that nothing overflows.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::combinat::{catalan, factorial};
use crate::configs::ConfigCounter;
use crate::error::{check_cap, Error, Result};
use crate::weights::{induced_distribution, ModelId};

pub const EXACT_CAP: usize = 300;
pub const FLOAT_CAP: usize = 5000;
pub const EXHAUSTIVE_CAP: usize = 16;

/// Exponential order of `E[R]` and `E[T]` under Yule, `1 / (1 - e^(-2 pi sqrt3 / 9))`.
pub fn yule_first_order_base() -> f64 {
    1.0 / (1.0 - (-2.0 * std::f64::consts::PI * 3f64.sqrt() / 9.0).exp())
}

/// Scaling base used by float mode.
pub fn scale_base(model: ModelId) -> f64 {
    match model {
        ModelId::Uniform => 4.0 / 3.0,
        ModelId::Yule => yule_first_order_base(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Statistic {
    R,
    T,
    R2,
    TR,
    T2,
    VarR,
    VarT,
    CovTR,
}

impl Statistic {
    pub const RAW: [Statistic; 5] = [
        Statistic::R,
        Statistic::T,
        Statistic::R2,
        Statistic::TR,
        Statistic::T2,
    ];

    /// 1 for means, 2 for second moments; float tables scale by `b^(order n)`.
    pub fn order(self) -> i32 {
        match self {
            Statistic::R | Statistic::T => 1,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistic::R => "e_r",
            Statistic::T => "e_t",
            Statistic::R2 => "e_r2",
            Statistic::TR => "e_tr",
            Statistic::T2 => "e_t2",
            Statistic::VarR => "var_r",
            Statistic::VarT => "var_t",
            Statistic::CovTR => "cov_tr",
        }
    }
}

/// Moments at one size.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentRow<V> {
    pub n: usize,
    pub e_r: V,
    pub e_t: V,
    pub e_r2: V,
    pub e_tr: V,
    pub e_t2: V,
    pub var_r: V,
    pub var_t: V,
    pub cov_tr: V,
    /// Pearson correlation of `T` and `R`; `None` while a variance is zero.
    pub rho_tr: Option<f64>,
}

impl<V> MomentRow<V> {
    pub fn get(&self, stat: Statistic) -> &V {
        match stat {
            Statistic::R => &self.e_r,
            Statistic::T => &self.e_t,
            Statistic::R2 => &self.e_r2,
            Statistic::TR => &self.e_tr,
            Statistic::T2 => &self.e_t2,
            Statistic::VarR => &self.var_r,
            Statistic::VarT => &self.var_t,
            Statistic::CovTR => &self.cov_tr,
        }
    }
}

/// Rows for `n = 1..=n_max`; `rows[n - 1]` is size `n`.
///
/// In float tables first-order entries are divided by `scale_base^n` and
/// second-order entries by `scale_base^(2n)`. Exact tables have
/// `scale_base == 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable<V> {
    pub model: ModelId,
    pub scale_base: f64,
    pub rows: Vec<MomentRow<V>>,
}

impl<V> MomentTable<V> {
    pub fn row(&self, n: usize) -> Option<&MomentRow<V>> {
        n.checked_sub(1).and_then(|i| self.rows.get(i))
    }

    pub fn n_max(&self) -> usize {
        self.rows.len()
    }
}

impl MomentTable<f64> {
    /// Natural log of the unscaled statistic at size `n`.
    pub fn ln_value(&self, n: usize, stat: Statistic) -> f64 {
        let v = *self.row(n).expect("row in range").get(stat);
        v.ln() + f64::from(stat.order()) * n as f64 * self.scale_base.ln()
    }

    /// `ln` of the statistic for `n = 1..=n_max`.
    pub fn ln_sequence(&self, stat: Statistic) -> Vec<f64> {
        (1..=self.n_max()).map(|n| self.ln_value(n, stat)).collect()
    }

    /// Unscaled value; overflows to infinity at large `n`.
    pub fn value(&self, n: usize, stat: Statistic) -> f64 {
        self.ln_value(n, stat).exp()
    }
}

impl MomentTable<BigRational> {
    pub fn ln_sequence(&self, stat: Statistic) -> Vec<f64> {
        self.rows.iter().map(|r| ln_rational(r.get(stat))).collect()
    }
}

/// Either kind of table.
#[derive(Debug, Clone, PartialEq)]
pub enum Moments {
    Exact(MomentTable<BigRational>),
    Float(MomentTable<f64>),
}

pub fn uniform_moments(n_max: usize, mode: Mode) -> Result<Moments> {
    moments(ModelId::Uniform, n_max, mode)
}

pub fn yule_moments(n_max: usize, mode: Mode) -> Result<Moments> {
    moments(ModelId::Yule, n_max, mode)
}

pub fn moments(model: ModelId, n_max: usize, mode: Mode) -> Result<Moments> {
    Ok(match mode {
        Mode::Exact => Moments::Exact(exact_moments(model, n_max)?),
        Mode::Float => Moments::Float(float_moments(model, n_max)?),
    })
}

/// Sums of each statistic over a whole family, indexed by size (index 0 unused).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySums {
    pub model: ModelId,
    /// Family size: `C(n-1)` plane trees or `(n-1)!` histories.
    pub count: Vec<BigUint>,
    pub r: Vec<BigUint>,
    pub t: Vec<BigUint>,
    pub r2: Vec<BigUint>,
    pub tr: Vec<BigUint>,
    pub t2: Vec<BigUint>,
}

impl FamilySums {
    pub fn get(&self, stat: Statistic) -> &[BigUint] {
        match stat {
            Statistic::R => &self.r,
            Statistic::T => &self.t,
            Statistic::R2 => &self.r2,
            Statistic::TR => &self.tr,
            Statistic::T2 => &self.t2,
            _ => panic!("family sums hold raw moments only"),
        }
    }
}

/// Family sums for `n = 1..=n_max`.
pub fn family_sums(model: ModelId, n_max: usize) -> Result<FamilySums> {
    check_cap("exact moments size", n_max, EXACT_CAP)?;
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let zero = BigUint::zero;
    let mut count = vec![zero(), BigUint::one()];
    // Rt sums, Rt^2 sums, T sums, T Rt sums
    let mut rt = vec![zero(), BigUint::one()];
    let mut st = vec![zero(), BigUint::one()];
    let mut t = vec![zero(), zero()];
    let mut vt = vec![zero(), zero()];
    let mut r = vec![zero(), zero()];
    let mut r2 = vec![zero(), zero()];
    let mut tr = vec![zero(), zero()];
    let mut t2 = vec![zero(), zero()];
    // binomial row binom(n-2, .)
    let mut pascal: Vec<BigUint> = vec![BigUint::one()];
    for n in 2..=n_max {
        if n > 2 {
            let mut next = vec![BigUint::one(); pascal.len() + 1];
            for i in 1..pascal.len() {
                next[i] = &pascal[i - 1] + &pascal[i];
            }
            pascal = next;
        }
        let mut sums = [zero(), zero(), zero(), zero(), zero(), zero()];
        for j in 1..n {
            let k = n - j;
            let terms = [
                &count[j] * &count[k],
                &rt[j] * &rt[k],
                &st[j] * &st[k] + (&rt[j] * &rt[k]) * 2u32,
                &t[j] * &count[k] + &count[j] * &t[k],
                &vt[j] * &rt[k] + &rt[j] * &vt[k] + &t[j] * &count[k] + &count[j] * &t[k],
                &t2[j] * &count[k] + &count[j] * &t2[k] + (&t[j] * &t[k]) * 2u32,
            ];
            for (sum, term) in sums.iter_mut().zip(terms) {
                match model {
                    ModelId::Uniform => *sum += term,
                    ModelId::Yule => *sum += term * &pascal[j - 1],
                }
            }
        }
        let [c_n, rt_sum, st_sum, t_sum, vt_sum, u_sum] = sums;
        let rt_n = rt_sum + &c_n;
        let st_n = st_sum + &c_n;
        let r_n = &rt_n - &c_n;
        let r2_n = &st_n - &r_n * 2u32 - &c_n;
        let t_n = t_sum + &r_n;
        let vt_n = vt_sum + &st_n - &rt_n;
        let tr_n = &vt_n - &t_n;
        let t2_n = u_sum + &tr_n * 2u32 - &r2_n;
        count.push(c_n);
        rt.push(rt_n);
        st.push(st_n);
        r.push(r_n);
        r2.push(r2_n);
        t.push(t_n);
        vt.push(vt_n);
        tr.push(tr_n);
        t2.push(t2_n);
    }
    Ok(FamilySums {
        model,
        count,
        r,
        t,
        r2,
        tr,
        t2,
    })
}

pub fn exact_moments(model: ModelId, n_max: usize) -> Result<MomentTable<BigRational>> {
    let sums = family_sums(model, n_max)?;
    let rows = (1..=n_max)
        .map(|n| {
            let den = BigInt::from(sums.count[n].clone());
            let e = |v: &BigUint| BigRational::new(BigInt::from(v.clone()), den.clone());
            exact_row(
                n,
                e(&sums.r[n]),
                e(&sums.t[n]),
                e(&sums.r2[n]),
                e(&sums.tr[n]),
                e(&sums.t2[n]),
            )
        })
        .collect();
    Ok(MomentTable {
        model,
        scale_base: 1.0,
        rows,
    })
}

pub(crate) fn exact_row(
    n: usize,
    e_r: BigRational,
    e_t: BigRational,
    e_r2: BigRational,
    e_tr: BigRational,
    e_t2: BigRational,
) -> MomentRow<BigRational> {
    let var_r = &e_r2 - &e_r * &e_r;
    let var_t = &e_t2 - &e_t * &e_t;
    let cov_tr = &e_tr - &e_t * &e_r;
    let rho_tr = exact_correlation_value(&var_r, &var_t, &cov_tr);
    MomentRow {
        n,
        e_r,
        e_t,
        e_r2,
        e_tr,
        e_t2,
        var_r,
        var_t,
        cov_tr,
        rho_tr,
    }
}

/// `cov / sqrt(var_r var_t)`, rounded once from the exact square.
pub fn exact_correlation_value(
    var_r: &BigRational,
    var_t: &BigRational,
    cov: &BigRational,
) -> Option<f64> {
    if var_r.is_zero() || var_t.is_zero() {
        return None;
    }
    let squared = cov * cov / (var_r * var_t);
    let rho = squared.to_f64()?.sqrt();
    Some(if cov.is_negative() { -rho } else { rho })
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Split probabilities `p[j]` for `j = 1..n-1` (index 0 unused).
fn float_split_weights(model: ModelId, n: usize, scaled_catalan: &[f64]) -> Vec<f64> {
    let mut p = vec![0.0; n];
    for (j, slot) in p.iter_mut().enumerate().skip(1) {
        *slot = match model {
            ModelId::Yule => 1.0 / (n - 1) as f64,
            // C_k / 4^k keeps the weights in range
            ModelId::Uniform => {
                scaled_catalan[j - 1] * scaled_catalan[n - 1 - j] / (4.0 * scaled_catalan[n - 1])
            }
        };
    }
    p
}

pub fn float_moments(model: ModelId, n_max: usize) -> Result<MomentTable<f64>> {
    check_cap("float moments size", n_max, FLOAT_CAP)?;
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let base = scale_base(model);
    let ln_b = base.ln();
    let powers: Vec<f64> = (0..=2 * n_max + 2)
        .map(|k| (-(k as f64) * ln_b).exp())
        .collect();
    let u = |k: usize| powers[k];
    let mut scaled_catalan = vec![1.0f64];
    for k in 0..n_max {
        let next = scaled_catalan[k] * (2 * (2 * k + 1)) as f64 / (4 * (k + 2)) as f64;
        scaled_catalan.push(next);
    }

    let size = n_max + 1;
    let mut rt = vec![0.0; size];
    let mut st = vec![0.0; size];
    let mut t = vec![0.0; size];
    let mut vt = vec![0.0; size];
    let mut tt = vec![0.0; size];
    let mut rows = Vec::with_capacity(n_max);
    // n = 1: Rt = 1, T = 0
    rt[1] = u(1);
    st[1] = u(2);
    rows.push(float_row(1, 0.0, 0.0, 0.0, 0.0, 0.0));
    for n in 2..=n_max {
        let p = float_split_weights(model, n, &scaled_catalan);
        let mut sums = [CompensatedSum::default(); 5];
        let un = u(n);
        for (j, &w) in p.iter().enumerate().take(n).skip(1) {
            let (a, b) = (j, n - j);
            sums[0].add(w * rt[a] * rt[b]);
            sums[1].add(w * (st[a] * st[b] + 2.0 * rt[a] * rt[b] * un));
            sums[2].add(w * (t[a] * u(b) + t[b] * u(a)));
            sums[3].add(
                w * (vt[a] * rt[b] * u(b)
                    + vt[b] * rt[a] * u(a)
                    + t[a] * u(2 * n - a)
                    + t[b] * u(2 * n - b)),
            );
            sums[4].add(w * (tt[a] * u(2 * b) + tt[b] * u(2 * a) + 2.0 * t[a] * t[b] * un));
        }
        rt[n] = sums[0].value() + un;
        st[n] = sums[1].value() + u(2 * n);
        let r_n = rt[n] - un;
        let s_n = st[n] - 2.0 * r_n * un - u(2 * n);
        t[n] = sums[2].value() + r_n;
        vt[n] = sums[3].value() + st[n] - rt[n] * un;
        let v_n = vt[n] - t[n] * un;
        tt[n] = sums[4].value() + 2.0 * v_n - s_n;
        rows.push(float_row(n, r_n, t[n], s_n, v_n, tt[n]));
    }
    Ok(MomentTable {
        model,
        scale_base: base,
        rows,
    })
}

fn float_row(n: usize, e_r: f64, e_t: f64, e_r2: f64, e_tr: f64, e_t2: f64) -> MomentRow<f64> {
    // a negative variance here can only be rounding
    let var_r = (e_r2 - e_r * e_r).max(0.0);
    let var_t = (e_t2 - e_t * e_t).max(0.0);
    let cov_tr = e_tr - e_t * e_r;
    let resolved = var_r > 1e-12 * e_r2 && var_t > 1e-12 * e_t2;
    let rho_tr = resolved.then(|| cov_tr / (var_r * var_t).sqrt());
    MomentRow {
        n,
        e_r,
        e_t,
        e_r2,
        e_tr,
        e_t2,
        var_r,
        var_t,
        cov_tr,
        rho_tr,
    }
}

/// One raw moment computed by enumerating every shape of size `n`.
pub fn exhaustive_moments(n: usize, model: ModelId, stat: Statistic) -> Result<BigRational> {
    check_cap("exhaustive moments size", n, EXHAUSTIVE_CAP)?;
    let counter = ConfigCounter::new();
    let mut acc = BigRational::zero();
    for (shape, p) in induced_distribution(n, model)? {
        let c = counter.counts(&shape);
        let (r, t) = (BigInt::from(c.root), BigInt::from(c.total));
        let value = match stat {
            Statistic::R => r,
            Statistic::T => t,
            Statistic::R2 => &r * &r,
            Statistic::TR => &t * &r,
            Statistic::T2 => &t * &t,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "{} is not a raw moment",
                    other.name()
                )))
            }
        };
        acc += p * BigRational::from_integer(value);
    }
    Ok(acc)
}

/// `ln` of a positive rational, exact to double precision at any size.
pub fn ln_rational(q: &BigRational) -> f64 {
    ln_biguint(q.numer().magnitude()) - ln_biguint(q.denom().magnitude())
}

/// `ln` of a positive big integer from its top 64 bits and bit length.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().expect("fits") as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// A known limit for one moment sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticTarget {
    pub name: &'static str,
    pub model: ModelId,
    pub statistic: Statistic,
    pub base: f64,
    pub constant: Option<f64>,
    pub source: &'static str,
}

/// `1 - e^(-2 pi sqrt3 / 9)`, the Yule singularity of `R(z)`.
pub fn yule_alpha1() -> f64 {
    1.0 - (-2.0 * std::f64::consts::PI * 3f64.sqrt() / 9.0).exp()
}

/// Singularity governing Yule second moments (published value).
pub const YULE_ALPHA2: f64 = 0.4889986317;

pub fn uniform_variance_base() -> f64 {
    4.0 / (7.0 * (8.0 * 2f64.sqrt() - 11.0))
}

pub fn uniform_variance_constant() -> f64 {
    let s2 = 2f64.sqrt();
    (2.0 / 17.0) * (15.0 + 11.0 * s2) * (7.0 * (11.0 - s2) / 34.0).sqrt()
}

pub fn uniform_correlation_limit() -> f64 {
    let s2 = 2f64.sqrt();
    (1.0 + s2 / 2.0) / ((2.0 / 17.0) * (15.0 + 11.0 * s2)).sqrt()
}

pub fn asymptotic_targets() -> Vec<AsymptoticTarget> {
    vec![
        AsymptoticTarget {
            name: "uniform mean total",
            model: ModelId::Uniform,
            statistic: Statistic::T,
            base: 4.0 / 3.0,
            constant: Some(6f64.sqrt()),
            source: "E[T] ~ sqrt(6) (4/3)^n",
        },
        AsymptoticTarget {
            name: "uniform total variance",
            model: ModelId::Uniform,
            statistic: Statistic::VarT,
            base: uniform_variance_base(),
            constant: Some(uniform_variance_constant()),
            source: "V[T] ~ 5.050 * 1.822^n",
        },
        AsymptoticTarget {
            name: "yule mean root",
            model: ModelId::Yule,
            statistic: Statistic::R,
            base: yule_first_order_base(),
            constant: None,
            source: "1 / (1 - e^(-2 pi sqrt3 / 9))",
        },
        AsymptoticTarget {
            name: "yule mean total",
            model: ModelId::Yule,
            statistic: Statistic::T,
            base: yule_first_order_base(),
            constant: None,
            source: "1 / (1 - e^(-2 pi sqrt3 / 9))",
        },
        AsymptoticTarget {
            name: "yule root second moment",
            model: ModelId::Yule,
            statistic: Statistic::R2,
            base: 1.0 / YULE_ALPHA2,
            constant: None,
            source: "2.0449954971",
        },
        AsymptoticTarget {
            name: "yule total second moment",
            model: ModelId::Yule,
            statistic: Statistic::T2,
            base: 1.0 / YULE_ALPHA2,
            constant: None,
            source: "2.0449954971",
        },
    ]
}

/// Tail estimate of a limit together with a convergence diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    /// Extrapolated limit.
    pub value: f64,
    /// Last unextrapolated term.
    pub raw: f64,
    /// `|last extrapolant - previous extrapolant|`.
    pub gap: f64,
    /// Size of the last term used.
    pub n: usize,
}

/// Minimum sequence length accepted by the estimators.
pub const MIN_ESTIMATE_LEN: usize = 50;

// Second-order Richardson extrapolation of s_m = L + c1/m + c2/m^2 + ...:
// fit a quadratic in 1/m through three tail nodes and evaluate it at 0.
// Nodes at m/2, 3m/4 and m keep rounding noise from being amplified.
fn richardson2(s: &[f64], first_m: usize, len: usize) -> f64 {
    let last = first_m + len - 1;
    let ms = [last.div_ceil(2), (3 * last).div_ceil(4), last];
    let xs = ms.map(|m| 1.0 / m as f64);
    (0..3)
        .map(|j| {
            let weight: f64 = (0..3)
                .filter(|&k| k != j)
                .map(|k| xs[k] / (xs[k] - xs[j]))
                .product();
            weight * s[ms[j] - first_m]
        })
        .sum()
}

// Extrapolant from the whole sequence and the gap to the one built from
// its first half.
fn extrapolate(s: &[f64], first_m: usize) -> (f64, f64) {
    let full = richardson2(s, first_m, s.len());
    let half = richardson2(s, first_m, s.len() / 2);
    (full, (full - half).abs())
}

fn check_ln_sequence(ln_seq: &[f64]) -> Result<()> {
    if ln_seq.len() < MIN_ESTIMATE_LEN {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_ESTIMATE_LEN} terms, got {}",
            ln_seq.len()
        )));
    }
    // the extrapolation reads terms from a quarter of the way in
    let tail = ln_seq.len() / 4;
    if let Some(i) = ln_seq[tail..].iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "term {} is not strictly positive and finite",
            tail + i + 1
        )));
    }
    Ok(())
}

fn to_ln(seq: &[f64]) -> Vec<f64> {
    seq.iter()
        .map(|&x| if x > 0.0 { x.ln() } else { f64::NAN })
        .collect()
}

/// Exponential growth rate of a positive sequence `a_1, a_2, ...`.
pub fn estimate_exponential_order(seq: &[f64]) -> Result<Estimate> {
    estimate_exponential_order_ln(&to_ln(seq))
}

/// As [`estimate_exponential_order`], given `ln a_n`. Only the last three
/// quarters of the sequence need to be positive.
pub fn estimate_exponential_order_ln(ln_seq: &[f64]) -> Result<Estimate> {
    check_ln_sequence(ln_seq)?;
    let ratios: Vec<f64> = ln_seq.windows(2).map(|w| (w[1] - w[0]).exp()).collect();
    let (value, gap) = extrapolate(&ratios, 1);
    Ok(Estimate {
        value,
        raw: *ratios.last().unwrap(),
        gap,
        n: ln_seq.len(),
    })
}

/// Limit of `a_n / base^n`.
pub fn estimate_subexp_constant(seq: &[f64], base: f64) -> Result<Estimate> {
    estimate_subexp_constant_ln(&to_ln(seq), base)
}

pub fn estimate_subexp_constant_ln(ln_seq: &[f64], base: f64) -> Result<Estimate> {
    if base.is_nan() || base <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "base must be positive, got {base}"
        )));
    }
    check_ln_sequence(ln_seq)?;
    let ln_b = base.ln();
    let scaled: Vec<f64> = ln_seq
        .iter()
        .enumerate()
        .map(|(i, l)| (l - (i + 1) as f64 * ln_b).exp())
        .collect();
    let (value, gap) = extrapolate(&scaled, 1);
    Ok(Estimate {
        value,
        raw: *scaled.last().unwrap(),
        gap,
        n: ln_seq.len(),
    })
}

/// `C(n-1) E[stat]` for the uniform model, the coefficient of `z^n` in the
/// statistic's generating function.
pub fn catalan_weighted(row: &MomentRow<BigRational>, stat: Statistic) -> BigRational {
    row.get(stat) * BigRational::from_integer(BigInt::from(catalan(row.n - 1)))
}

/// `(n-1)! E[stat]`, the history-family sum for the Yule model.
pub fn factorial_weighted(row: &MomentRow<BigRational>, stat: Statistic) -> BigRational {
    row.get(stat) * BigRational::from_integer(BigInt::from(factorial(row.n - 1)))
}
