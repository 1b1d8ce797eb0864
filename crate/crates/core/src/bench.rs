//! Benchmark harness comparing the three exact matchers on generated data.
//!
//! Every trial draws a fresh pattern and text. The per-trial seed is derived
//! from the configured seed and the trial index, and the pattern and text
//! seeds are derived from that, so any row can be regenerated on its own.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear::Repr;
use crate::matcher::{exact_match, MatchResult};
use crate::randgen::{derive_seed, GenSpec};
use crate::signature::{filtered_match, DEFAULT_TAU};
use crate::Sequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Pd,
    Sn,
    SnFilter,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Pd, Method::Sn, Method::SnFilter];

    pub fn name(self) -> &'static str {
        match self {
            Method::Pd => "pd",
            Method::Sn => "sn",
            Method::SnFilter => "sn_filter",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Alphabet size: a fixed value or the pattern length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alphabet {
    Fixed(u64),
    PatternLength,
}

impl Alphabet {
    pub fn size(self, m: usize) -> u64 {
        match self {
            Alphabet::Fixed(k) => k,
            Alphabet::PatternLength => m as u64,
        }
    }
}

impl FromStr for Alphabet {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "m" {
            return Ok(Alphabet::PatternLength);
        }
        s.parse()
            .map(Alphabet::Fixed)
            .map_err(|_| format!("alphabet must be a positive integer or 'm', got {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub trials: usize,
    pub n: usize,
    pub m: usize,
    pub k: Alphabet,
    pub h2: Option<f64>,
    pub seed: u64,
    pub tau: u32,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            n: 1000,
            m: 10,
            k: Alphabet::Fixed(4),
            h2: None,
            seed: 1,
            tau: DEFAULT_TAU,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub method: Method,
    pub n: usize,
    pub m: usize,
    pub k: u64,
    pub h2: Option<f64>,
    /// Per-trial seed.
    pub seed: u64,
    pub comparisons: u64,
    pub windows_full_checked: u64,
    pub elapsed_ns: u64,
    #[serde(skip)]
    pub trial: usize,
}

pub const CSV_HEADER: [&str; 9] = [
    "method",
    "n",
    "m",
    "k",
    "h2",
    "seed",
    "comparisons",
    "windows_full_checked",
    "elapsed_ns",
];

impl BenchConfig {
    fn spec(&self, len: usize, seed: u64) -> GenSpec {
        let k = self.k.size(self.m);
        GenSpec {
            n: len,
            k,
            seed,
            h2: self.h2,
        }
    }

    /// Pattern and text of one trial, with the trial seed.
    pub fn trial_input(&self, trial: usize) -> Result<(u64, Sequence, Sequence)> {
        let seed = derive_seed(self.seed, &[trial as u64]);
        let p = self.spec(self.m, derive_seed(seed, &[0])).generate()?;
        let t = self.spec(self.n, derive_seed(seed, &[1])).generate()?;
        Ok((seed, p, t))
    }

    fn check(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::EmptyPattern);
        }
        if self.m > self.n {
            return Err(Error::WindowLength {
                m: self.m,
                n: self.n,
            });
        }
        // surfaces alphabet and entropy errors before any work is scheduled
        self.spec(0, 0).generate().map(drop)
    }
}

pub fn run_method(method: Method, p: &[i64], t: &[i64], tau: u32) -> Result<MatchResult> {
    match method {
        Method::Pd => exact_match(p, t, Repr::Pd),
        Method::Sn => exact_match(p, t, Repr::Sn),
        Method::SnFilter => filtered_match(p, t, tau),
    }
}

fn run_trial(config: &BenchConfig, trial: usize) -> Result<Vec<BenchRecord>> {
    let (seed, p, t) = config.trial_input(trial)?;
    let mut records = Vec::with_capacity(Method::ALL.len());
    let mut positions: Option<Vec<usize>> = None;
    for method in Method::ALL {
        let start = Instant::now();
        let result = run_method(method, &p, &t, config.tau)?;
        let elapsed_ns = start.elapsed().as_nanos() as u64;
        match &positions {
            None => positions = Some(result.positions),
            Some(expected) if *expected != result.positions => {
                return Err(Error::BenchDisagreement(trial))
            }
            Some(_) => {}
        }
        records.push(BenchRecord {
            method,
            n: config.n,
            m: config.m,
            k: config.k.size(config.m),
            h2: config.h2,
            seed,
            comparisons: result.counters.comparisons(),
            windows_full_checked: result.counters.full_checks,
            elapsed_ns,
            trial,
        });
    }
    Ok(records)
}

/// Runs all trials (in parallel) and returns records sorted by
/// `(method, trial)`.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    config.check()?;
    let per_trial = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_trial(config, trial))
        .collect::<Result<Vec<_>>>()?;
    let mut records: Vec<BenchRecord> = per_trial.into_iter().flatten().collect();
    records.sort_by_key(|r| (r.method, r.trial));
    Ok(records)
}

/// Sum of `comparisons` and of `windows_full_checked` for one method.
pub fn totals(records: &[BenchRecord], method: Method) -> (u64, u64) {
    records
        .iter()
        .filter(|r| r.method == method)
        .fold((0, 0), |(c, w), r| {
            (c + r.comparisons, w + r.windows_full_checked)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(trials: usize) -> BenchConfig {
        BenchConfig {
            trials,
            n: 200,
            m: 8,
            k: Alphabet::Fixed(2),
            ..BenchConfig::default()
        }
    }

    fn strip_time(mut r: Vec<BenchRecord>) -> Vec<BenchRecord> {
        for x in &mut r {
            x.elapsed_ns = 0;
        }
        r
    }

    #[test]
    fn deterministic_and_sorted() {
        let a = strip_time(run_bench(&small(40)).unwrap());
        let b = strip_time(run_bench(&small(40)).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.len(), 120);
        assert!(a
            .windows(2)
            .all(|w| (w[0].method, w[0].trial) < (w[1].method, w[1].trial)));
        let c = strip_time(
            run_bench(&BenchConfig {
                seed: 2,
                ..small(40)
            })
            .unwrap(),
        );
        assert_ne!(a, c);
    }

    #[test]
    fn record_invariants() {
        let records = run_bench(&small(60)).unwrap();
        let windows = (200 - 8 + 1) as u64;
        for r in &records {
            assert!(r.windows_full_checked <= windows);
        }
        let (sn, filt): (Vec<_>, Vec<_>) = records
            .iter()
            .filter(|r| r.method != Method::Pd)
            .partition(|r| r.method == Method::Sn);
        for (s, f) in sn.iter().zip(&filt) {
            assert_eq!(s.trial, f.trial);
            assert!(f.windows_full_checked <= s.windows_full_checked);
        }
    }

    #[test]
    fn trial_rows_are_reproducible_from_their_seed() {
        let config = small(3);
        let (seed, p, t) = config.trial_input(2).unwrap();
        let again = GenSpec::uniform(8, 2, derive_seed(seed, &[0]))
            .generate()
            .unwrap();
        assert_eq!(p, again);
        assert_eq!(t.len(), 200);
    }

    #[test]
    fn constant_inputs_scale_with_n_times_m() {
        let run = |n, m| {
            let config = BenchConfig {
                trials: 1,
                n,
                m,
                k: Alphabet::Fixed(4),
                h2: Some(0.0),
                ..BenchConfig::default()
            };
            totals(&run_bench(&config).unwrap(), Method::Sn).0 as f64
        };
        let base = run(1000, 50);
        let ratio_n = run(2000, 50) / base;
        assert!((ratio_n - 2.0).abs() < 0.1, "{ratio_n}");
        // per-window cost grows by the added pattern length
        let per_window = |total: f64, m: usize| total / (1000 - m + 1) as f64;
        let growth = per_window(run(1000, 100), 100) - per_window(base, 50);
        assert!((growth - 50.0).abs() < 5.0, "{growth}");
    }

    #[test]
    fn config_errors() {
        let bad = |c: BenchConfig| run_bench(&c).is_err();
        assert!(bad(BenchConfig { m: 0, ..small(1) }));
        assert!(bad(BenchConfig { m: 300, ..small(1) }));
        assert!(bad(BenchConfig {
            k: Alphabet::Fixed(0),
            ..small(1)
        }));
        assert!(bad(BenchConfig {
            h2: Some(1.5),
            ..small(1)
        }));
        assert!(bad(BenchConfig { tau: 0, ..small(1) }));
    }

    #[test]
    fn alphabet_parsing() {
        assert_eq!("m".parse::<Alphabet>(), Ok(Alphabet::PatternLength));
        assert_eq!("4".parse::<Alphabet>(), Ok(Alphabet::Fixed(4)));
        assert!("x".parse::<Alphabet>().is_err());
        assert_eq!(Alphabet::PatternLength.size(7), 7);
    }
}
