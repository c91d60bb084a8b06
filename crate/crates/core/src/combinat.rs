//! Integer sequences shared by the counting modules.

use num_bigint::BigUint;
use num_traits::One;

/// Catalan numbers `C_0..=C_max`.
pub fn catalan_table(max: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(BigUint::one());
    for k in 0..max {
        // C_{k+1} = C_k * 2(2k+1) / (k+2)
        let next = &out[k] * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
        out.push(next);
    }
    out
}

pub fn catalan(n: usize) -> BigUint {
    catalan_table(n).pop().unwrap()
}

/// `0!..=max!`.
pub fn factorial_table(max: usize) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(BigUint::one());
    for k in 1..=max {
        let next = &out[k - 1] * BigUint::from(k);
        out.push(next);
    }
    out
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of labeled rooted binary topologies on `n` leaves, `(2n-3)!!`.
pub fn labeled_topology_count(n: usize) -> BigUint {
    (1..n.max(1))
        .map(|k| BigUint::from(2 * k - 1))
        .fold(BigUint::one(), |acc, f| acc * f)
}

/// Closed form `(2n)! / (2^n (2n-1) n!)` of the same count.
pub fn labeled_topology_count_closed(n: usize) -> BigUint {
    let num = factorial(2 * n);
    let den = (BigUint::one() << n) * BigUint::from(2 * n - 1) * factorial(n);
    num / den
}
