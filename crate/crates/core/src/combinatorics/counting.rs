//! Schröder–Hipparchus numbers `f_n`, the number of Cartesian forests with
//! `n` nodes: 1, 1, 3, 11, 45, 197, 903, …
//!
//! Two independent routes are provided and cross-checked by
//! [`count_forests`]:
//!
//! * the closed sum `f_n = (1/n) Σ_{i=1..n} C(n,i) C(n,i-1) 2^(i-1)`;
//! * fixed-point iteration of `F = z F² S + 1`, `S = z F S + 1` on truncated
//!   power series.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestCount {
    pub n: usize,
    pub value: BigUint,
}

/// Closed-sum evaluation with exact integer arithmetic. `f_0 = 1`.
pub fn closed_formula(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    // binom[i] = C(n, i), built row-wise by exact division
    let mut binom = Vec::with_capacity(n + 1);
    let mut c = BigUint::one();
    binom.push(c.clone());
    for i in 1..=n {
        c = c * BigUint::from(n - i + 1) / BigUint::from(i);
        binom.push(c.clone());
    }
    let mut sum = BigUint::zero();
    let mut pow2 = BigUint::one();
    for i in 1..=n {
        sum += &binom[i] * &binom[i - 1] * &pow2;
        pow2 <<= 1u32;
    }
    let n_big = BigUint::from(n);
    debug_assert!((&sum % &n_big).is_zero());
    sum / n_big
}

fn mul_truncated(a: &[BigUint], b: &[BigUint], len: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Coefficients `f_0..=f_max` from the generating-function system.
///
/// Each pass of `F ← 1 + z·F·(F·S)`, `S ← 1 + z·(F·S)` fixes one more
/// coefficient, so `max + 1` passes reach the fixed point on the truncation.
pub fn series_coefficients(max: usize) -> Vec<BigUint> {
    let len = max + 1;
    let mut f = vec![BigUint::zero(); len];
    let mut s = vec![BigUint::zero(); len];
    f[0] = BigUint::one();
    s[0] = BigUint::one();
    for pass in 1..=len {
        // coefficients above `pass` are not stable yet; skip them
        let width = (pass + 1).min(len);
        let fs = mul_truncated(&f[..width], &s[..width], width);
        let ffs = mul_truncated(&f[..width], &fs, width);
        let mut next_f = vec![BigUint::zero(); len];
        let mut next_s = vec![BigUint::zero(); len];
        next_f[0] = BigUint::one();
        next_s[0] = BigUint::one();
        next_f[1..width].clone_from_slice(&ffs[..width - 1]);
        next_s[1..width].clone_from_slice(&fs[..width - 1]);
        f = next_f;
        s = next_s;
    }
    f
}

/// `f_n`, computed both ways; disagreement is reported as an error.
pub fn count_forests(n: usize) -> Result<ForestCount> {
    let formula = closed_formula(n);
    let series = series_coefficients(n).pop().expect("non-empty");
    if formula != series {
        return Err(Error::CountMismatch(n));
    }
    Ok(ForestCount { n, value: formula })
}

/// `f_n / f_{n-1}` as a float, from an exact scaled integer quotient.
pub fn growth_ratio(n: usize) -> f64 {
    assert!(n >= 1);
    let scale = BigUint::from(10u64).pow(30);
    let q = closed_formula(n) * &scale / closed_formula(n - 1);
    q.to_f64().expect("finite") / 1e30
}
