//! Truncated formal power series with exact coefficients.
//!
//! Coefficients live in ℚ or in ℚ(√3). A series of order `N` knows its
//! coefficients `0..=N`; every operation returns the largest order that its
//! operands determine, so truncation never silently changes.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combinat::{catalan, factorial, labeled_topology_count};
use crate::error::{check_cap, Error, Result};
use crate::moments::{exact_moments, family_sums, Statistic};
use crate::weights::ModelId;

/// Field operations needed by [`Series`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn inverse(&self) -> Option<Self>;
    fn sqrt(&self) -> Option<Self>;
    fn from_rational(q: BigRational) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let exact = |v: &BigInt| {
        let r = v.sqrt();
        (&r * &r == *v).then_some(r)
    };
    Some(BigRational::new(exact(q.numer())?, exact(q.denom())?))
}

impl Coeff for BigRational {
    fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }

    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }

    fn from_rational(q: BigRational) -> Self {
        q
    }
}

/// `a + b √3` with rational `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSqrt3 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt3 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt3 { a, b }
    }

    pub fn sqrt3() -> Self {
        QSqrt3::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        QSqrt3::new(&self.a * q, &self.b * q)
    }
}

impl fmt::Display for QSqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt3", self.a, self.b)
        }
    }
}

impl Add for QSqrt3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        QSqrt3::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for QSqrt3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        QSqrt3::new(self.a - o.a, self.b - o.b)
    }
}

impl Mul for QSqrt3 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let three = BigRational::from_integer(3.into());
        QSqrt3::new(
            &self.a * &o.a + three * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl Neg for QSqrt3 {
    type Output = Self;
    fn neg(self) -> Self {
        QSqrt3::new(-self.a, -self.b)
    }
}

impl Zero for QSqrt3 {
    fn zero() -> Self {
        QSqrt3::new(BigRational::zero(), BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QSqrt3 {
    fn one() -> Self {
        QSqrt3::new(BigRational::one(), BigRational::zero())
    }
}

impl Coeff for QSqrt3 {
    fn inverse(&self) -> Option<Self> {
        // √3 is irrational, so the norm vanishes only at zero
        let norm = &self.a * &self.a - BigRational::from_integer(3.into()) * &self.b * &self.b;
        (!norm.is_zero()).then(|| QSqrt3::new(&self.a / &norm, -&self.b / &norm))
    }

    /// Square roots of the form `x` or `y √3` with rational `x`, `y`.
    fn sqrt(&self) -> Option<Self> {
        if !self.b.is_zero() {
            return None;
        }
        if let Some(x) = rational_sqrt(&self.a) {
            return Some(QSqrt3::new(x, BigRational::zero()));
        }
        let third = &self.a / BigRational::from_integer(3.into());
        rational_sqrt(&third).map(|y| QSqrt3::new(BigRational::zero(), y))
    }

    fn from_rational(q: BigRational) -> Self {
        QSqrt3::new(q, BigRational::zero())
    }
}

/// Power series known up to and including `z^order`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<K> {
    coeffs: Vec<K>,
}

pub type SeriesQ = Series<BigRational>;
pub type SeriesQSqrt3 = Series<QSqrt3>;

impl<K: Coeff> Series<K> {
    /// Series with the given coefficients; its order is `len - 1`.
    pub fn new(coeffs: Vec<K>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least one coefficient");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series::new(vec![K::zero(); order + 1])
    }

    pub fn constant(c: K, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Series::constant(K::one(), order)
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = K::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &K {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn map<L: Coeff>(&self, f: impl Fn(&K) -> L) -> Series<L> {
        Series::new(self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Series::new(
            (0..=n)
                .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Series::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, k: &K) -> Self {
        Series::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&K::from_int(k))
    }

    pub fn add_constant(&self, k: K) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].clone() + k;
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![K::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series::new(out)
    }

    /// `z * self`; one order more is known.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = vec![K::zero()];
        coeffs.extend(self.coeffs.iter().cloned());
        Series::new(coeffs)
    }

    /// `self / z`; requires a zero constant term and loses one order.
    pub fn div_z(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series(
                "division by z needs a zero constant term".into(),
            ));
        }
        if self.order() == 0 {
            return Err(Error::Series("division by z of an order-0 series".into()));
        }
        Ok(Series::new(self.coeffs[1..].to_vec()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let inv0 = other.coeffs[0]
            .inverse()
            .ok_or_else(|| Error::Series("divisor has a non-invertible constant term".into()))?;
        let n = self.order().min(other.order());
        let mut q: Vec<K> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = self.coeffs[i].clone();
            for k in 1..=i {
                acc = acc - other.coeffs[k].clone() * q[i - k].clone();
            }
            q.push(acc * inv0.clone());
        }
        Ok(Series::new(q))
    }

    pub fn recip(&self) -> Result<Self> {
        Series::one(self.order()).div(self)
    }

    /// Square root by Newton iteration, doubling the known order each step.
    pub fn sqrt(&self) -> Result<Self> {
        let root0 = self.coeffs[0]
            .sqrt()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| {
                Error::Series(format!(
                    "constant term {} has no nonzero square root in the field",
                    self.coeffs[0]
                ))
            })?;
        let target = self.order();
        let half = K::from_rational(BigRational::new(1.into(), 2.into()));
        let mut y = Series::constant(root0, 0);
        let mut known = 0;
        while known < target {
            known = (2 * known + 1).min(target);
            let padded = y.pad(known);
            let quotient = self.truncate(known).div(&padded)?;
            y = padded.add(&quotient).scale(&half);
        }
        Ok(y)
    }

    fn pad(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, K::zero());
        Series::new(coeffs)
    }

    /// Derivative; one order is lost.
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Series::zero(0);
        }
        Series::new(
            (1..=self.order())
                .map(|i| self.coeffs[i].clone() * K::from_int(i as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term; one order is gained.
    pub fn integrate(&self) -> Self {
        let mut coeffs = vec![K::zero()];
        for (i, c) in self.coeffs.iter().enumerate() {
            let inv = BigRational::new(1.into(), BigInt::from(i + 1));
            coeffs.push(c.clone() * K::from_rational(inv));
        }
        Series::new(coeffs)
    }

    /// `self(inner)`; `inner` must have a zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Series(
                "inner series must have a zero constant term".into(),
            ));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Series::constant(self.coeffs[n].clone(), n);
        for i in (0..n).rev() {
            acc = acc.mul(&inner).add_constant(self.coeffs[i].clone());
        }
        Ok(acc)
    }

    /// `(sin self, cos self)` for a series with zero constant term, from
    /// `s' = c g'`, `c' = -s g'`.
    pub fn sin_cos(&self) -> Result<(Self, Self)> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Series("sin/cos need a zero constant term".into()));
        }
        let n = self.order();
        let dg: Vec<K> = (1..=n)
            .map(|i| self.coeffs[i].clone() * K::from_int(i as i64))
            .collect();
        let mut s = vec![K::zero(); n + 1];
        let mut c = vec![K::zero(); n + 1];
        c[0] = K::one();
        for m in 1..=n {
            // m s_m = sum_{k=1}^{m} k g_k c_{m-k}
            let mut ds = K::zero();
            let mut dc = K::zero();
            for k in 1..=m {
                ds = ds + dg[k - 1].clone() * c[m - k].clone();
                dc = dc + dg[k - 1].clone() * s[m - k].clone();
            }
            let inv = K::from_rational(BigRational::new(1.into(), BigInt::from(m)));
            s[m] = ds * inv.clone();
            c[m] = -(dc * inv);
        }
        Ok((Series::new(s), Series::new(c)))
    }

    /// Lowest order at which `self` and `other` differ, up to the common order.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.order().min(other.order());
        (0..=n).find(|&i| self.coeffs[i] != other.coeffs[i])
    }
}

impl Series<BigRational> {
    pub fn lift(&self) -> Series<QSqrt3> {
        self.map(|q| QSqrt3::from_rational(q.clone()))
    }

    pub fn from_integers(values: &[BigUint]) -> Self {
        Series::new(
            values
                .iter()
                .map(|v| BigRational::from_integer(BigInt::from(v.clone())))
                .collect(),
        )
    }
}

/// `sum z^k`, i.e. `1 / (1 - z)`.
pub fn geometric<K: Coeff>(order: usize) -> Series<K> {
    Series::new(vec![K::one(); order + 1])
}

/// `log(1 - z)`, built by integrating `-1 / (1 - z)`.
pub fn log_one_minus_z<K: Coeff>(order: usize) -> Series<K> {
    geometric::<K>(order.saturating_sub(1)).neg().integrate()
}

/// `sqrt(1 - 4z)`.
pub fn sqrt_one_minus_4z(order: usize) -> Result<SeriesQ> {
    one_minus_kz(4, order).sqrt()
}

fn one_minus_kz(k: i64, order: usize) -> SeriesQ {
    Series::one(order).sub(&Series::z(order).scale_int(k))
}

/// Catalan generating function `C(z) = (1 - sqrt(1 - 4z)) / (2z)`.
pub fn catalan_gf(order: usize) -> Result<SeriesQ> {
    let r = sqrt_one_minus_4z(order + 1)?;
    Series::one(order + 1)
        .sub(&r)
        .div_z()
        .map(|s| s.scale(&half()))
}

/// `L(z) = 1 - sqrt(1 - 2z)`, exponential generating function of labeled
/// topologies.
pub fn labeled_egf(order: usize) -> Result<SeriesQ> {
    Ok(Series::one(order).sub(&one_minus_kz(2, order).sqrt()?))
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

pub const UNIFORM_GF_CAP: usize = 200;
pub const YULE_GF_CAP: usize = 100;
pub const SYSTEM_CHECK_CAP: usize = 100;

/// Statistic whose uniform-model generating function is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniformGf {
    /// Root configurations.
    R,
    /// Total configurations.
    T,
    /// Product of total and root configurations.
    V,
    /// Square of total configurations.
    U,
}

impl UniformGf {
    pub const ALL: [UniformGf; 4] = [UniformGf::R, UniformGf::T, UniformGf::V, UniformGf::U];

    pub fn statistic(self) -> Statistic {
        match self {
            UniformGf::R => Statistic::R,
            UniformGf::T => Statistic::T,
            UniformGf::V => Statistic::TR,
            UniformGf::U => Statistic::T2,
        }
    }
}

/// Closed-form uniform generating function; `[z^n]` is `C(n-1) E[stat]`.
///
/// With `r = sqrt(1 - 4z)`, `s = sqrt(2r - 1)`, `q = -2r + 4s - 1`:
///
/// ```text
/// R = (r - s) / 2
/// T = R / r
/// V = (-s + r(-r + s - sqrt q + 3) - 1) / (2 r s)
/// U = (-1/r^3 + (-2 sqrt(q)/s + sqrt q + 4/s + 3)/r - 6/s + 1) / 2
/// ```
///
/// `R` is the root of `R^2 - (1 - 2zC) R + z^2 C^2 = 0` with `R(0) = 0`;
/// using `1 - 2zC = r` and `zC = (1 - r)/2` the discriminant is
/// `r^2 - (1 - r)^2 = 2r - 1`.
pub fn gf_uniform(which: UniformGf, order: usize) -> Result<SeriesQ> {
    check_cap("uniform generating function order", order, UNIFORM_GF_CAP)?;
    let one = Series::one(order);
    let r = sqrt_one_minus_4z(order)?;
    let s = r.scale_int(2).sub(&one).sqrt()?;
    let root = r.sub(&s).scale(&half());
    Ok(match which {
        UniformGf::R => root,
        UniformGf::T => root.div(&r)?,
        UniformGf::V => {
            let q = r
                .scale_int(-2)
                .add(&s.scale_int(4))
                .add_constant(-BigRational::one());
            let sq = q.sqrt()?;
            let inner = r
                .neg()
                .add(&s)
                .sub(&sq)
                .add_constant(BigRational::from_integer(3.into()));
            let num = s
                .neg()
                .add(&r.mul(&inner))
                .add_constant(-BigRational::one());
            num.div(&r.mul(&s).scale_int(2))?
        }
        UniformGf::U => {
            let q = r
                .scale_int(-2)
                .add(&s.scale_int(4))
                .add_constant(-BigRational::one());
            let sq = q.sqrt()?;
            let inv_s = s.recip()?;
            let inv_r = r.recip()?;
            let bracket = sq
                .mul(&inv_s)
                .scale_int(-2)
                .add(&sq)
                .add(&inv_s.scale_int(4))
                .add_constant(BigRational::from_integer(3.into()));
            let total = inv_r
                .mul(&inv_r)
                .mul(&inv_r)
                .neg()
                .add(&bracket.mul(&inv_r))
                .sub(&inv_s.scale_int(6))
                .add_constant(BigRational::one());
            total.scale(&half())
        }
    })
}

/// Closed-form Yule generating function of `E[R_n]`:
/// `2z sin(w) / ((z - 1)(√3 cos w + sin w))` with `w = (√3/2) log(1 - z)`.
pub fn gf_yule_r(order: usize) -> Result<SeriesQSqrt3> {
    check_cap("Yule generating function order", order, YULE_GF_CAP)?;
    let half_sqrt3 = QSqrt3::new(BigRational::zero(), half());
    let w = log_one_minus_z::<QSqrt3>(order).scale(&half_sqrt3);
    let (sin, cos) = w.sin_cos()?;
    let z = Series::<QSqrt3>::z(order);
    let num = sin.mul_z().truncate(order).scale_int(2);
    let den = z
        .add_constant(-QSqrt3::one())
        .mul(&cos.scale(&QSqrt3::sqrt3()).add(&sin));
    num.div(&den)
}

/// `sum_n a_n z^n` with `a_n` the family sum of `stat` (index 0 is zero).
pub fn family_series(model: ModelId, stat: Statistic, order: usize) -> Result<SeriesQ> {
    let sums = family_sums(model, order.max(1))?;
    Ok(Series::from_integers(&sums.get(stat)[..=order]))
}

/// `sum_n E[stat_n] z^n` under the Yule model.
pub fn yule_expectation_series(stat: Statistic, order: usize) -> Result<SeriesQ> {
    let table = exact_moments(ModelId::Yule, order.max(1))?;
    let mut coeffs = vec![BigRational::zero()];
    coeffs.extend((1..=order).map(|n| table.row(n).unwrap().get(stat).clone()));
    Ok(Series::new(coeffs))
}

/// Outcome of checking one functional equation.
#[derive(Debug, Clone, PartialEq)]
pub struct EquationCheck {
    pub system: &'static str,
    pub equation: &'static str,
    /// Orders checked: `0..=order`.
    pub order: usize,
    /// Orders at which the two sides differ.
    pub violations: Vec<usize>,
}

impl EquationCheck {
    fn new(system: &'static str, equation: &'static str, lhs: &SeriesQ, rhs: &SeriesQ) -> Self {
        let order = lhs.order().min(rhs.order());
        let violations = (0..=order)
            .filter(|&i| lhs.coeff(i) != rhs.coeff(i))
            .collect();
        EquationCheck {
            system,
            equation,
            order,
            violations,
        }
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Highest violated order, if any.
    pub fn max_violation(&self) -> Option<usize> {
        self.violations.last().copied()
    }
}

/// Plugs recurrence-built series into the functional equations of both
/// models and reports every coefficient mismatch up to `order`.
pub fn verify_functional_systems(order: usize) -> Result<Vec<EquationCheck>> {
    check_cap("functional system order", order, SYSTEM_CHECK_CAP)?;
    let n = order + 1;
    let mut out = Vec::new();

    // uniform: ordinary generating functions of family sums
    let fam = |stat| family_series(ModelId::Uniform, stat, n);
    let (r, t, s, v, u) = (
        fam(Statistic::R)?,
        fam(Statistic::T)?,
        fam(Statistic::R2)?,
        fam(Statistic::TR)?,
        fam(Statistic::T2)?,
    );
    let zc = catalan_gf(n)?.mul_z().truncate(n);
    let z = Series::<BigRational>::z(n);
    let z2c2 = zc.mul(&zc);
    let zc2 = zc.scale_int(2);
    out.push(EquationCheck::new(
        "S1",
        "R = R^2 + 2zC R + z^2 C^2",
        &r,
        &r.mul(&r).add(&zc2.mul(&r)).add(&z2c2),
    ));
    out.push(EquationCheck::new(
        "S1",
        "T = 2zC T + R",
        &t,
        &zc2.mul(&t).add(&r),
    ));

    let r_tilde = r.add(&zc);
    let s_tilde = s.add(&r.scale_int(2)).add(&zc);
    let v_tilde = v.add(&t);
    out.push(EquationCheck::new(
        "S2",
        "S~ - z = S~^2 + 2R~^2 + z^2 C^2",
        &s_tilde.sub(&z),
        &s_tilde
            .mul(&s_tilde)
            .add(&r_tilde.mul(&r_tilde).scale_int(2))
            .add(&z2c2),
    ));
    out.push(EquationCheck::new(
        "S2",
        "V~ = 2V~ R~ + 2zC T + S~ - R~",
        &v_tilde,
        &v_tilde
            .mul(&r_tilde)
            .scale_int(2)
            .add(&zc2.mul(&t))
            .add(&s_tilde)
            .sub(&r_tilde),
    ));
    out.push(EquationCheck::new(
        "S2",
        "U = 2zC U + 2T^2 + 2V - S",
        &u,
        &zc2.mul(&u)
            .add(&t.mul(&t).scale_int(2))
            .add(&v.scale_int(2))
            .sub(&s),
    ));

    // Yule: ordinary generating functions of expectations
    let ex = |stat| yule_expectation_series(stat, n);
    let (r, t, s, v, u) = (
        ex(Statistic::R)?,
        ex(Statistic::T)?,
        ex(Statistic::R2)?,
        ex(Statistic::TR)?,
        ex(Statistic::T2)?,
    );
    let one_minus_z = Series::one(n).sub(&z);
    let one_plus_z = Series::one(n).add(&z);
    let z_one_minus_z = z.mul(&one_minus_z);
    let euler = |f: &SeriesQ| f.differentiate().mul_z().sub(f);
    let lhs = |f: &SeriesQ| {
        z_one_minus_z
            .mul(&f.differentiate().pad(n))
            .sub(&one_plus_z.mul(f))
    };
    out.push(EquationCheck::new(
        "S3",
        "z(1-z)T' - (1+z)T = (1-z)(zR' - R)",
        &lhs(&t),
        &one_minus_z.mul(&euler(&r)),
    ));
    out.push(EquationCheck::new(
        "S3",
        "z(1-z)V' - (1+z)V - 2(1-z)RV = (1-z)(2TR + zS' - S) + 2zT",
        &lhs(&v).sub(&one_minus_z.mul(&r).mul(&v).scale_int(2)),
        &one_minus_z
            .mul(&t.mul(&r).scale_int(2).add(&euler(&s)))
            .add(&z.mul(&t).scale_int(2)),
    ));
    out.push(EquationCheck::new(
        "S3",
        "z(1-z)U' - (1+z)U = (1-z)(2T^2 + 2zV' - 2V - zS' + S)",
        &lhs(&u),
        &one_minus_z.mul(
            &t.mul(&t)
                .scale_int(2)
                .add(&euler(&v).scale_int(2))
                .sub(&euler(&s)),
        ),
    ));
    Ok(out.into_iter().map(|c| truncate_check(c, order)).collect())
}

fn truncate_check(mut c: EquationCheck, order: usize) -> EquationCheck {
    c.order = c.order.min(order);
    c.violations.retain(|&i| i <= order);
    c
}

/// `|L_n| / n!` for `n = 0..=order` (zero at `n = 0`).
pub fn labeled_egf_expected(order: usize) -> SeriesQ {
    let mut coeffs = vec![BigRational::zero()];
    coeffs.extend((1..=order).map(|n| {
        BigRational::new(
            BigInt::from(labeled_topology_count(n)),
            BigInt::from(factorial(n)),
        )
    }));
    Series::new(coeffs)
}

/// `C(n) sqrt(pi n^3) / 4^n`, which tends to 1.
pub fn catalan_asymptotic_ratio(n: usize) -> f64 {
    let ln_c = crate::moments::ln_biguint(&catalan(n));
    let n_f = n as f64;
    (ln_c + 0.5 * (std::f64::consts::PI * n_f.powi(3)).ln() - n_f * 4f64.ln()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn ints(s: &SeriesQ, n: usize) -> Vec<i64> {
        (0..n)
            .map(|i| {
                assert!(s.coeff(i).is_integer());
                i64::try_from(s.coeff(i).to_integer()).unwrap()
            })
            .collect()
    }

    #[test]
    fn binomial_and_catalan() {
        let r = sqrt_one_minus_4z(10).unwrap();
        assert_eq!(ints(&r, 5), vec![1, -2, -2, -4, -10]);
        assert_eq!(ints(&catalan_gf(10).unwrap(), 5), vec![1, 1, 2, 5, 14]);
        assert_eq!(catalan_gf(10).unwrap().order(), 10);
    }

    #[test]
    fn labeled_egf_matches_counts() {
        assert_eq!(labeled_egf(30).unwrap(), labeled_egf_expected(30));
    }

    #[test]
    fn catalan_asymptotics_approach_one() {
        let a = (catalan_asymptotic_ratio(100) - 1.0).abs();
        let b = (catalan_asymptotic_ratio(1000) - 1.0).abs();
        assert!(b < a && b < 2e-3);
        // next term of the expansion is -9/(8n)
        let corrected = catalan_asymptotic_ratio(1000) * (1.0 + 9.0 / 8000.0);
        assert!((corrected - 1.0).abs() < 1e-5);
    }

    #[test]
    fn calculus_and_composition() {
        let g = geometric::<BigRational>(6);
        assert_eq!(g.differentiate().order(), 5);
        assert_eq!(g.integrate().differentiate().truncate(6), g);
        let log = log_one_minus_z::<BigRational>(6);
        assert_eq!(log.coeff(3), &q(-1, 3));
        // exp(log(1 - z)) = 1 - z
        let exp: SeriesQ = Series::new(
            (0..=6)
                .map(|k| BigRational::new(1.into(), factorial(k).into()))
                .collect(),
        );
        let back = exp.compose(&log).unwrap();
        assert_eq!(back, Series::one(6).sub(&Series::z(6)));
        assert!(exp.compose(&g).is_err());
        assert!(Series::<BigRational>::z(4).recip().is_err());
    }

    #[test]
    fn sin_cos_agree_with_composition() {
        let w = log_one_minus_z::<QSqrt3>(12).scale(&QSqrt3::new(q(0, 1), q(1, 2)));
        let (sin, cos) = w.sin_cos().unwrap();
        let sin_taylor: SeriesQSqrt3 = Series::new(
            (0..=12)
                .map(|k| match k % 4 {
                    1 => QSqrt3::from_rational(BigRational::new(1.into(), factorial(k).into())),
                    3 => QSqrt3::from_rational(BigRational::new((-1).into(), factorial(k).into())),
                    _ => QSqrt3::zero(),
                })
                .collect(),
        );
        assert_eq!(sin_taylor.compose(&w).unwrap(), sin);
        let one = sin.mul(&sin).add(&cos.mul(&cos));
        assert_eq!(one, Series::one(12));
    }

    #[test]
    fn quadratic_field() {
        let x = QSqrt3::new(q(2, 1), q(1, 1));
        assert_eq!(x.clone() * x.inverse().unwrap(), QSqrt3::one());
        assert_eq!(QSqrt3::sqrt3() * QSqrt3::sqrt3(), QSqrt3::from_int(3));
        assert_eq!(
            QSqrt3::from_int(12).sqrt(),
            Some(QSqrt3::new(q(0, 1), q(2, 1)))
        );
        assert!(QSqrt3::from_int(2).sqrt().is_none());
    }

    #[test]
    fn uniform_gfs_match_family_sums() {
        let t = gf_uniform(UniformGf::T, 10).unwrap();
        assert_eq!(ints(&t, 5), vec![0, 0, 1, 6, 30]);
        for which in UniformGf::ALL {
            let closed = gf_uniform(which, 60).unwrap();
            let rec = family_series(ModelId::Uniform, which.statistic(), 60).unwrap();
            assert_eq!(closed.first_difference(&rec), None, "{which:?}");
        }
        let r = gf_uniform(UniformGf::R, 40).unwrap();
        assert_eq!(
            r.div(&sqrt_one_minus_4z(40).unwrap()).unwrap(),
            gf_uniform(UniformGf::T, 40).unwrap()
        );
    }

    #[test]
    fn yule_gf_matches_expectations() {
        let closed = gf_yule_r(40).unwrap();
        let rec = yule_expectation_series(Statistic::R, 40).unwrap();
        for n in 0..=40 {
            assert!(closed.coeff(n).is_rational(), "order {n}");
            assert_eq!(closed.coeff(n).a, *rec.coeff(n), "order {n}");
        }
        assert_eq!(closed.coeff(4).a, q(10, 3));
    }

    #[test]
    fn functional_systems_hold() {
        let report = verify_functional_systems(40).unwrap();
        assert_eq!(report.len(), 8);
        for check in report {
            assert!(
                check.holds(),
                "{} {}: {:?}",
                check.system,
                check.equation,
                check.violations
            );
            assert_eq!(check.order, 40);
        }
    }

    #[test]
    fn caps() {
        assert!(gf_uniform(UniformGf::R, UNIFORM_GF_CAP + 1).is_err());
        assert!(gf_yule_r(YULE_GF_CAP + 1).is_err());
        assert!(verify_functional_systems(SYSTEM_CHECK_CAP + 1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn sqrt_squares_back(tail in proptest::collection::vec((-9i64..=9, 1i64..=5), 50)) {
            let mut coeffs = vec![BigRational::one()];
            coeffs.extend(tail.iter().map(|&(a, b)| q(a, b)));
            let s: SeriesQ = Series::new(coeffs);
            let root = s.sqrt().unwrap();
            prop_assert_eq!(root.order(), 50);
            prop_assert_eq!(root.mul(&root), s);
        }
    }
}
