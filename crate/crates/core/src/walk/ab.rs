use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;

use super::{brute_walk, Steps, WalkSpec};
use crate::{Error, Result};

/// Indices of the forward (`a`) and backward (`b`) steps, 1-based and
/// strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbSequences {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

impl AbSequences {
    /// `a(n)`, 1-based.
    pub fn a(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.a.get(i)).copied()
    }

    /// `b(n)`, 1-based.
    pub fn b(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.b.get(i)).copied()
    }
}

/// Splits the steps `1..=n` by direction.
pub fn ab_sequences(spec: &WalkSpec, n: u64) -> AbSequences {
    let mut out = AbSequences::default();
    for (j, step) in (1..=n).zip(spec.steps()) {
        if step > 0 {
            out.a.push(j);
        } else {
            out.b.push(j);
        }
    }
    out
}

/// Walks until both sequences hold at least `count` terms.
pub fn ab_until(spec: &WalkSpec, count: usize) -> AbSequences {
    let mut out = AbSequences::default();
    for (j, step) in (1..).zip(spec.steps()) {
        if out.a.len() >= count && out.b.len() >= count {
            break;
        }
        if step > 0 {
            out.a.push(j);
        } else {
            out.b.push(j);
        }
    }
    out
}

/// Streams `(n, b(n) − a(n))` for `n = 1, 2, …` while keeping only the
/// unmatched indices of one direction.
#[derive(Clone, Debug)]
pub struct DiffStream {
    steps: Steps,
    j: u64,
    n: u64,
    pending: VecDeque<u64>,
    pending_forward: bool,
}

impl DiffStream {
    pub fn new(spec: &WalkSpec) -> DiffStream {
        DiffStream {
            steps: spec.steps(),
            j: 0,
            n: 0,
            pending: VecDeque::new(),
            pending_forward: true,
        }
    }
}

impl Iterator for DiffStream {
    type Item = (u64, i64);

    fn next(&mut self) -> Option<(u64, i64)> {
        loop {
            let forward = self.steps.next()? > 0;
            self.j += 1;
            if self.pending.is_empty() || forward == self.pending_forward {
                self.pending_forward = forward;
                self.pending.push_back(self.j);
                continue;
            }
            let other = self.pending.pop_front().expect("nonempty");
            self.n += 1;
            let (a, b) = if forward { (self.j, other) } else { (other, self.j) };
            return Some((self.n, b as i64 - a as i64));
        }
    }
}

/// All `n ≤ bound` with `b(n) − a(n) = k`.
pub fn diff_hits(spec: &WalkSpec, k: i64, bound: u64) -> Vec<u64> {
    DiffStream::new(spec)
        .take_while(|&(n, _)| n <= bound)
        .filter(|&(_, d)| d == k)
        .map(|(n, _)| n)
        .collect()
}

/// Counts of the structural identities verified by [`lemma_checks`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    /// The even denominators `q_{2m−1}`, `m = 1..=depth`.
    pub denominators: Vec<u64>,
    /// Instances of `S_{q/2+k} = S_{q/2} − S_k`.
    pub reflection_cases: u64,
    /// Instances of `a(q/2+j) = q + a(j)` and `b(q/2+j) = q + b(j)`.
    pub shift_cases: u64,
    /// Instances of `b((q+2m)/4) − a((q+2m)/4) = a(m)`.
    pub surplus_cases: u64,
}

fn failed(check: &'static str, detail: alloc::string::String) -> Error {
    Error::CheckFailed { check, detail }
}

/// Verifies, for the even denominators `q = q_{2m−1}` with `m ≤ depth`:
///
/// * `S_{q/2+k} = S_{q/2} − S_k` for `0 ≤ k ≤ q/2`;
/// * `a(q/2+j) = q + a(j)` and `b(q/2+j) = q + b(j)` for `1 ≤ j ≤ q/2`;
/// * `b(n) − a(n) = a(m)` at `n = (q+2m)/4` for `1 < m ≤ depth`.
///
/// Stated for `θ = 2√2`; other BR walks are accepted and simply checked.
pub fn lemma_checks(spec: &WalkSpec, depth: usize) -> Result<LemmaReport> {
    if !spec.is_br() {
        return Err(Error::NotBrNumber);
    }
    let cf = spec.continued_fraction();
    let mut qs = Vec::new();
    let all = cf.convergents(2 * depth);
    for m in 1..=depth {
        let q = &all[2 * m - 1].1;
        let q: u64 = q
            .try_into()
            .map_err(|_| Error::OutOfRange(format!("q_{} exceeds u64", 2 * m - 1)))?;
        if q % 2 != 0 {
            return Err(failed("even-denominator", format!("q_{} = {q} is odd", 2 * m - 1)));
        }
        qs.push(q);
    }
    let mut report = LemmaReport {
        denominators: qs.clone(),
        ..LemmaReport::default()
    };
    let Some(&q_max) = qs.last() else {
        return Ok(report);
    };

    let trace = brute_walk(spec, q_max);
    let s = |n: u64| trace.get(n).expect("within trace");
    let ab = ab_until(spec, q_max as usize);

    for (idx, &q) in qs.iter().enumerate() {
        let m = idx + 1;
        let h = q / 2;
        for k in 0..=h {
            if s(h + k) != s(h) - s(k) {
                return Err(failed(
                    "reflection",
                    format!("q={q}, k={k}: S_(q/2+k)={} but S_(q/2)-S_k={}", s(h + k), s(h) - s(k)),
                ));
            }
            report.reflection_cases += 1;
        }
        for j in 1..=h as usize {
            let (a_shift, a_j) = (ab.a(h as usize + j).unwrap(), ab.a(j).unwrap());
            let (b_shift, b_j) = (ab.b(h as usize + j).unwrap(), ab.b(j).unwrap());
            if a_shift != q + a_j || b_shift != q + b_j {
                return Err(failed(
                    "ab-shift",
                    format!("q={q}, j={j}: a={a_shift} vs {}, b={b_shift} vs {}", q + a_j, q + b_j),
                ));
            }
            report.shift_cases += 1;
        }
        if m > 1 {
            let num = q + 2 * m as u64;
            if num % 4 != 0 {
                return Err(failed("surplus", format!("q={q}, m={m}: (q+2m)/4 is not an integer")));
            }
            let n = (num / 4) as usize;
            let diff = ab.b(n).unwrap() as i64 - ab.a(n).unwrap() as i64;
            let a_m = ab.a(m).unwrap() as i64;
            if diff != a_m {
                return Err(failed(
                    "surplus",
                    format!("m={m}, n={n}: b(n)-a(n)={diff} but a(m)={a_m}"),
                ));
            }
            report.surplus_cases += 1;
        }
    }
    Ok(report)
}
