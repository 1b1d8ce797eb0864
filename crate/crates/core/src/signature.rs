//! Cartesian forest signatures and τ-filters.
//!
//! A signature encodes the Skipped-Number representation entry by entry:
//! `0` for a zero entry, otherwise `10` (negative) or `11` (positive)
//! followed by `|v| - 1` one-bits and a closing zero-bit. Codes are
//! concatenated from the first position to the last; the first emitted bit
//! is the most significant bit of byte 0 and the last byte is zero-padded.
//! Since the code is prefix-free and Skipped-Number characterizes the forest,
//! the signature is a perfect hash of the forest.
//!
//! A τ-filter keeps one bit per entry for the last `min(τ, m)` entries of a
//! representation (1 for a non-zero entry), with the last entry in bit 0.

use std::fmt;

use crate::error::{Error, Result};
use crate::linear::{skipped_number, Repr, WindowState};
use crate::matcher::{window_equals, MatchResult};

pub const DEFAULT_TAU: u32 = 64;
pub const MAX_TAU: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    bytes: Vec<u8>,
    bit_length: usize,
}

impl Signature {
    pub fn bit_length(&self) -> usize {
        self.bit_length
    }

    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.bit_length);
        self.bytes[i / 8] & (0x80 >> (i % 8)) != 0
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.bit_length)
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }

    pub fn to_hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// The signature as an integer, when it fits in 64 bits.
    pub fn as_u64(&self) -> Option<u64> {
        if self.bit_length > 64 {
            return None;
        }
        Some((0..self.bit_length).fold(0u64, |acc, i| (acc << 1) | self.bit(i) as u64))
    }

    fn push(&mut self, bit: bool) {
        if self.bit_length.is_multiple_of(8) {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().unwrap() |= 0x80 >> (self.bit_length % 8);
        }
        self.bit_length += 1;
    }
}

/// `<bit_length>:<hex>`
impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.bit_length, self.to_hex())
    }
}

/// Code of one Skipped-Number entry as `(bits, length)`, most significant
/// bit first.
fn entry_code(v: i64) -> (u64, u32) {
    if v == 0 {
        return (0, 1);
    }
    let mag = v.unsigned_abs() as u32;
    let sign = if v < 0 { 0b10 } else { 0b11 };
    let ones = (1u64 << (mag - 1)) - 1;
    ((sign << mag) | (ones << 1), mag + 2)
}

pub fn signature_of_sn(sn: &[i64]) -> Signature {
    let mut sig = Signature {
        bytes: Vec::with_capacity((3 * sn.len()).div_ceil(8)),
        bit_length: 0,
    };
    for &v in sn {
        if v == 0 {
            sig.push(false);
            continue;
        }
        sig.push(true);
        sig.push(v > 0);
        for _ in 1..v.unsigned_abs() {
            sig.push(true);
        }
        sig.push(false);
    }
    sig
}

pub fn signature<T: Ord>(x: &[T]) -> Signature {
    signature_of_sn(&skipped_number(x).0)
}

/// τ-bit zero/non-zero mask of the last entries of a representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Filter {
    pub word: u128,
    pub tau: u32,
}

impl Filter {
    pub fn new(repr: &[i64], tau: u32) -> Result<Self> {
        check_tau(tau)?;
        let width = (tau as usize).min(repr.len());
        let word = repr[repr.len() - width..]
            .iter()
            .fold(0u128, |acc, &v| (acc << 1) | (v != 0) as u128);
        Ok(Self { word, tau })
    }

    /// The τ bits, most significant first.
    pub fn to_bit_string(&self) -> String {
        (0..self.tau)
            .rev()
            .map(|i| if self.word >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

fn check_tau(tau: u32) -> Result<()> {
    if tau == 0 || tau > MAX_TAU {
        return Err(Error::FilterWidth(tau));
    }
    Ok(())
}

pub fn tau_filter(repr: &[i64], tau: u32) -> Result<Filter> {
    Filter::new(repr, tau)
}

fn low_mask(width: usize) -> u128 {
    if width >= 128 {
        u128::MAX
    } else {
        (1u128 << width) - 1
    }
}

/// Exact matching over Skipped-Number where the full comparison only runs
/// when the window's τ-filter equals the pattern's. The filter is updated
/// from the entries the window reports as changed, in constant time per
/// slide.
pub fn filtered_match<T: Ord>(p: &[T], t: &[T], tau: u32) -> Result<MatchResult> {
    check_tau(tau)?;
    if p.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let mut result = MatchResult::default();
    let m = p.len();
    if m > t.len() {
        return Ok(result);
    }
    let pattern = skipped_number(p).0;
    let target = Filter::new(&pattern, tau)?.word;
    let width = (tau as usize).min(m);
    let mask = low_mask(width);
    let first_tracked = m - width;

    let counters = &mut result.counters;
    let mut w = WindowState::new(t, m, Repr::Sn)?;
    let mut word = Filter::new(&w.values(), tau)?.word;
    loop {
        counters.windows += 1;
        counters.filter_comparisons += 1;
        if word == target {
            counters.full_checks += 1;
            if window_equals(&w, &pattern, counters) {
                result.positions.push(w.start() + 1);
            }
        }
        if !w.can_slide() {
            break;
        }
        w.slide()?;
        word = ((word << 1) | (w.get(m - 1) != 0) as u128) & mask;
        for c in w.changed() {
            if c >= first_tracked && c != m - 1 {
                let bit = 1u128 << (m - 1 - c);
                if w.get(c) != 0 {
                    word |= bit;
                } else {
                    word &= !bit;
                }
            }
        }
    }
    counters.absorb_window(w.counters());
    Ok(result)
}

/// Longest pattern for [`signature_match`]: its signature always fits in a
/// 64-bit word.
pub const MAX_SIGNATURE_PATTERN: usize = 21;

/// Exact matching by comparing 64-bit rolling signatures, one word
/// comparison per window. Limited to patterns of at most
/// [`MAX_SIGNATURE_PATTERN`] elements; longer patterns fall back to
/// [`filtered_match`] with the default filter.
pub fn signature_match<T: Ord>(p: &[T], t: &[T]) -> Result<MatchResult> {
    let m = p.len();
    if m == 0 {
        return Err(Error::EmptyPattern);
    }
    if m > MAX_SIGNATURE_PATTERN {
        return filtered_match(p, t, DEFAULT_TAU);
    }
    let mut result = MatchResult::default();
    if m > t.len() {
        return Ok(result);
    }
    let target = signature(p).as_u64().expect("3m - 2 <= 64");

    let counters = &mut result.counters;
    let mut w = WindowState::new(t, m, Repr::Sn)?;
    // code length of every window entry, indexed by text position mod m
    let mut lens = vec![0u32; m];
    let mut sig = 0u64;
    let mut total = 0u32;
    for i in 0..m {
        let (code, len) = entry_code(w.get(i));
        sig = (sig << len) | code;
        total += len;
        lens[i % m] = len;
    }
    loop {
        counters.windows += 1;
        counters.full_checks += 1;
        counters.filter_comparisons += 1;
        if sig == target {
            result.positions.push(w.start() + 1);
        }
        if !w.can_slide() {
            break;
        }
        let head = w.start();
        w.slide()?;
        let start = w.start();
        // drop the departed head's code from the top
        total -= lens[head % m];
        sig &= low_bits(total);
        for c in w.changed() {
            if c == m - 1 {
                continue;
            }
            let slot = (start + c) % m;
            let before: u32 = (0..c).map(|i| lens[(start + i) % m]).sum();
            let old_len = lens[slot];
            let below = total - before - old_len;
            let (code, len) = entry_code(w.get(c));
            let high = if before == 0 {
                0
            } else {
                sig >> (below + old_len)
            };
            sig = (((high << len) | code) << below) | (sig & low_bits(below));
            total = total - old_len + len;
            lens[slot] = len;
        }
        let (code, len) = entry_code(w.get(m - 1));
        sig = (sig << len) | code;
        total += len;
        lens[(start + m - 1) % m] = len;
    }
    counters.absorb_window(w.counters());
    Ok(result)
}

fn low_bits(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
