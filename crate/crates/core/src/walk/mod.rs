//! Deterministic random walks `S_n(θ) = Σ_{j=1..n} (−1)^⌊jθ⌋`.
//!
//! [`Steps`] streams the ±1 steps from exact floors; everything else (records,
//! zeros, the `a`/`b` index sequences, discrepancies) is built on top of it.
//! [`RuleEngine`] evaluates single values of `S_n(2ξ)` for BR-numbers `ξ`
//! without walking.

mod ab;
mod discrepancy;
mod rules;

use alloc::vec::Vec;

use crate::qarith::{ContinuedFraction, FloorStream, QuadraticSurd};
use crate::Result;

pub use ab::{ab_sequences, ab_until, diff_hits, lemma_checks, AbSequences, DiffStream, LemmaReport};
pub use discrepancy::{discrepancy, DiscrepancyStream};
pub use rules::{fast_s, RuleEngine};

/// A walk angle `θ` together with the rotation `ξ = {θ/2}` it induces.
///
/// `(−1)^⌊jθ⌋ = +1` exactly when `{jξ} < 1/2`, so the walk for `θ` is the
/// walk `S_n(2ξ)` of the rotation by `ξ`.
#[derive(Clone, Debug)]
pub struct WalkSpec {
    theta: QuadraticSurd,
    rotation: QuadraticSurd,
    cf: ContinuedFraction,
    br: bool,
}

impl WalkSpec {
    pub fn new(theta: QuadraticSurd) -> Result<WalkSpec> {
        let rotation = theta.scale(1, 2)?.fract();
        let cf = ContinuedFraction::expand(&rotation);
        let br = cf.is_br();
        Ok(WalkSpec {
            theta,
            rotation,
            cf,
            br,
        })
    }

    /// The walk `S_n(2ξ)` for a rotation number `ξ`.
    pub fn doubled(xi: &QuadraticSurd) -> Result<WalkSpec> {
        WalkSpec::new(xi.scale(2, 1)?)
    }

    pub fn theta(&self) -> &QuadraticSurd {
        &self.theta
    }

    pub fn rotation(&self) -> &QuadraticSurd {
        &self.rotation
    }

    pub fn continued_fraction(&self) -> &ContinuedFraction {
        &self.cf
    }

    pub fn is_br(&self) -> bool {
        self.br
    }

    pub fn steps(&self) -> Steps {
        Steps {
            floors: FloorStream::new(&self.theta),
        }
    }

    /// Partial sums `(n, S_n)` for `n = 1, 2, …`.
    pub fn sums(&self) -> Sums {
        Sums {
            steps: self.steps(),
            n: 0,
            value: 0,
        }
    }
}

/// Endless stream of steps `(−1)^⌊jθ⌋`, `j = 1, 2, …`.
#[derive(Clone, Debug)]
pub struct Steps {
    floors: FloorStream,
}

impl Iterator for Steps {
    type Item = i8;

    #[inline]
    fn next(&mut self) -> Option<i8> {
        Some(if self.floors.next_is_odd() { -1 } else { 1 })
    }
}

/// Endless stream of `(n, S_n)`.
#[derive(Clone, Debug)]
pub struct Sums {
    steps: Steps,
    n: u64,
    value: i64,
}

impl Iterator for Sums {
    type Item = (u64, i64);

    #[inline]
    fn next(&mut self) -> Option<(u64, i64)> {
        let step = self.steps.next()?;
        self.n += 1;
        self.value += i64::from(step);
        Some((self.n, self.value))
    }
}

/// `S_0, S_1, …, S_N` of one walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkTrace {
    sums: Vec<i64>,
}

impl WalkTrace {
    pub fn from_sums(sums: Vec<i64>) -> WalkTrace {
        WalkTrace { sums }
    }

    /// Walk length `N`.
    pub fn len(&self) -> u64 {
        self.sums.len() as u64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `S_n`.
    pub fn get(&self, n: u64) -> Option<i64> {
        self.sums.get(usize::try_from(n).ok()?).copied()
    }

    /// All partial sums, starting with `S_0 = 0`.
    pub fn sums(&self) -> &[i64] {
        &self.sums
    }

    /// The steps `S_n − S_{n−1}` for `n = 1..=N`.
    pub fn signs(&self) -> Vec<i8> {
        self.sums.windows(2).map(|w| (w[1] - w[0]) as i8).collect()
    }

    pub fn records(&self) -> Vec<Record> {
        let mut tracker = RecordTracker::new();
        let mut out = alloc::vec![Record { index: 0, value: 0 }];
        for (n, &s) in self.sums.iter().enumerate().skip(1) {
            if tracker.observe(s) {
                out.push(Record {
                    index: n as u64,
                    value: s,
                });
            }
        }
        out
    }

    pub fn zeros(&self) -> Vec<u64> {
        self.sums
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == 0)
            .map(|(n, _)| n as u64)
            .collect()
    }
}

/// Brute-force walk of length `n` from exact floors.
pub fn brute_walk(spec: &WalkSpec, n: u64) -> WalkTrace {
    let mut sums = Vec::with_capacity(n as usize + 1);
    sums.push(0);
    sums.extend(spec.sums().take(n as usize).map(|(_, s)| s));
    WalkTrace { sums }
}

/// An index where the walk first attains a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Record {
    pub index: u64,
    pub value: i64,
}

/// Detects first attainments. A ±1 walk from 0 always covers an interval of
/// values, so tracking the extremes suffices.
#[derive(Clone, Copy, Debug, Default)]
pub struct RecordTracker {
    min: i64,
    max: i64,
}

impl RecordTracker {
    pub fn new() -> RecordTracker {
        RecordTracker::default()
    }

    /// Feeds the next partial sum; true iff it is a new value.
    #[inline]
    pub fn observe(&mut self, s: i64) -> bool {
        if s > self.max {
            self.max = s;
            true
        } else if s < self.min {
            self.min = s;
            true
        } else {
            false
        }
    }
}

/// Records with index `≤ n`, including index 0.
pub fn records(spec: &WalkSpec, n: u64) -> Vec<Record> {
    let mut tracker = RecordTracker::new();
    let mut out = alloc::vec![Record { index: 0, value: 0 }];
    for (index, value) in spec.sums().take(n as usize) {
        if tracker.observe(value) {
            out.push(Record { index, value });
        }
    }
    out
}

/// Zeros with index `≤ n`, including index 0.
pub fn zeros(spec: &WalkSpec, n: u64) -> Vec<u64> {
    let mut out = alloc::vec![0];
    out.extend(
        spec.sums()
            .take(n as usize)
            .filter(|&(_, s)| s == 0)
            .map(|(i, _)| i),
    );
    out
}

/// Smallest partial sum over `n = 0..=len`.
pub fn min_sum(spec: &WalkSpec, len: u64) -> i64 {
    spec.sums()
        .take(len as usize)
        .map(|(_, s)| s)
        .fold(0, i64::min)
}
