//! Seedable sequence generators for the experiments.
//!
//! The bit source is SplitMix64, written out here so outputs depend on
//! nothing but the seed:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! (all arithmetic wrapping modulo 2^64). Uniform symbols in `1..=k` are
//! drawn by rejection on the top of the 64-bit range, and unit floats take
//! the high 53 bits.
//!
//! Fixed collision entropy `h2` is reached with an i.i.d. distribution
//! `(a, b, …, b)` over `1..=k`: symbol 1 has probability `a` and the others
//! share `1 - a` equally, where `a² + (k-1)b² = 2^(-h2)` and `a >= 1/k`.

use crate::error::{Error, Result};
use crate::Sequence;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..k`, without modulo bias.
    pub fn below(&mut self, k: u64) -> u64 {
        assert!(k > 0);
        // 2^64 mod k values at the top would be over-represented
        let excess = (u64::MAX % k + 1) % k;
        loop {
            let r = self.next_u64();
            if r <= u64::MAX - excess {
                return r % k;
            }
        }
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Mixes a base seed with stream indices into an independent seed.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut rng = SplitMix64::new(base);
    let mut out = rng.next_u64();
    for &p in parts {
        rng = SplitMix64::new(out ^ p.wrapping_mul(0xD6E8_FEB8_6659_FD93));
        out = rng.next_u64();
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub k: u64,
    pub seed: u64,
    /// Target collision entropy in bits.
    pub h2: Option<f64>,
}

impl GenSpec {
    pub fn uniform(n: usize, k: u64, seed: u64) -> Self {
        Self {
            n,
            k,
            seed,
            h2: None,
        }
    }

    pub fn with_entropy(n: usize, k: u64, seed: u64, h2: f64) -> Self {
        Self {
            n,
            k,
            seed,
            h2: Some(h2),
        }
    }

    pub fn generate(&self) -> Result<Sequence> {
        match self.h2 {
            None => uniform_sequence(self),
            Some(_) => entropy_sequence(self),
        }
    }
}

pub fn uniform_sequence(spec: &GenSpec) -> Result<Sequence> {
    if spec.k == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let mut rng = SplitMix64::new(spec.seed);
    Ok((0..spec.n).map(|_| rng.below(spec.k) as i64 + 1).collect())
}

/// Probability `a` of the heavy symbol for collision probability `2^(-h2)`.
pub fn heavy_probability(k: u64, h2: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let max = (k as f64).log2();
    if !(0.0..=max).contains(&h2) {
        return Err(Error::InfeasibleEntropy { h2, k });
    }
    let q = (-h2).exp2();
    let kf = k as f64;
    // k a² - 2a + 1 - q(k-1) = 0, larger root
    let disc = ((kf - 1.0) * (q * kf - 1.0)).max(0.0);
    Ok(((1.0 + disc.sqrt()) / kf).min(1.0))
}

pub fn entropy_sequence(spec: &GenSpec) -> Result<Sequence> {
    let h2 = spec.h2.ok_or(Error::InfeasibleEntropy {
        h2: f64::NAN,
        k: spec.k,
    })?;
    let a = heavy_probability(spec.k, h2)?;
    let k = spec.k;
    let b = if k > 1 {
        (1.0 - a) / (k - 1) as f64
    } else {
        0.0
    };
    let mut rng = SplitMix64::new(spec.seed);
    Ok((0..spec.n)
        .map(|_| {
            let u = rng.unit();
            if u < a || k == 1 {
                1
            } else {
                let idx = ((u - a) / b) as u64;
                2 + idx.min(k - 2) as i64
            }
        })
        .collect())
}
