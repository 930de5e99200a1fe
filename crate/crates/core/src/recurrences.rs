//! Recurrence generators for the records of `S_n(√2)`, `S_n(2√2)` and the
//! experimental four-phase system for `S_n(√3)`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

/// Which step rule a sequence follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepRule {
    /// `X_{n+1} = 2X_n + X_{n−1} + 1`
    Lune,
    /// `X_{n+1} = 6X_n − X_{n−1} + 2`
    Kotesovec,
    /// `X_{n+1} = 6X_n − X_{n−1}`
    HalfPell,
    /// Period-four system for `√3`, see [`sqrt3_records`].
    Sqrt3,
}

/// A named integer sequence generated by a [`StepRule`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSeq {
    pub name: &'static str,
    pub rule: StepRule,
    /// Index of `terms[0]`.
    pub offset: usize,
    pub terms: Vec<BigInt>,
}

impl RecurrenceSeq {
    /// `X_i`, using the sequence's own indexing.
    pub fn term(&self, i: usize) -> Option<&BigInt> {
        i.checked_sub(self.offset).and_then(|k| self.terms.get(k))
    }

    /// Checks every generated term against the step rule; returns the first
    /// index that disagrees.
    pub fn first_rule_violation(&self) -> Option<usize> {
        let t = &self.terms;
        let bad = |i: usize| Some(i + self.offset);
        match self.rule {
            StepRule::Lune | StepRule::Kotesovec | StepRule::HalfPell => {
                for i in 2..t.len() {
                    let expect = match self.rule {
                        StepRule::Lune => 2 * &t[i - 1] + &t[i - 2] + 1,
                        StepRule::Kotesovec => 6 * &t[i - 1] - &t[i - 2] + 2,
                        _ => 6 * &t[i - 1] - &t[i - 2],
                    };
                    if t[i] != expect {
                        return bad(i);
                    }
                }
                None
            }
            StepRule::Sqrt3 => {
                let mut with_zero = alloc::vec![BigInt::zero()];
                with_zero.extend(t.iter().cloned());
                (1..with_zero.len())
                    .find(|&j| with_zero[j] != sqrt3_step(&with_zero, j))
                    .map(|j| j - 1)
                    .and_then(bad)
            }
        }
    }
}

fn linear(rule: StepRule, x0: i64, x1: i64, n: usize, shift: i64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::from(x0));
    if n >= 1 {
        out.push(BigInt::from(x1));
    }
    let (mul, sign) = match rule {
        StepRule::Lune => (2, 1),
        _ => (6, -1),
    };
    while out.len() <= n {
        let k = out.len();
        let next = mul * &out[k - 1] + sign * &out[k - 2] + shift;
        out.push(next);
    }
    out
}

/// `R_0..=R_n` with `R_{n+1} = 2R_n + R_{n−1} + 1`, `R_0 = 0`, `R_1 = 1`.
pub fn lune_records(n: usize) -> RecurrenceSeq {
    RecurrenceSeq {
        name: "lune",
        rule: StepRule::Lune,
        offset: 0,
        terms: linear(StepRule::Lune, 0, 1, n, 1),
    }
}

/// Side of the walk for the signed split of records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// First index reaching `+m`.
    A,
    /// First index reaching `−m`.
    B,
}

/// `X_0..=X_n` with `X_{n+1} = 6X_n − X_{n−1} + 2`; `A_1 = 3`, `B_1 = 1`.
pub fn kotesovec(n: usize, side: Side) -> RecurrenceSeq {
    let (name, x1) = match side {
        Side::A => ("kotesovecA", 3),
        Side::B => ("kotesovecB", 1),
    };
    RecurrenceSeq {
        name,
        rule: StepRule::Kotesovec,
        offset: 0,
        terms: linear(StepRule::Kotesovec, 0, x1, n, 2),
    }
}

/// `Q_1..=Q_n`, the half-Pell numbers `1, 6, 35, 204, …`.
pub fn half_pell(n: usize) -> RecurrenceSeq {
    let mut terms = linear(StepRule::HalfPell, 0, 1, n, 0);
    terms.remove(0);
    RecurrenceSeq {
        name: "halfpell",
        rule: StepRule::HalfPell,
        offset: 1,
        terms,
    }
}

/// `t_j` from `t_0..t_{j−1}` (given as `prev`, with `prev[0] = t_0`).
fn sqrt3_step(prev: &[BigInt], j: usize) -> BigInt {
    let at = |i: isize| -> BigInt {
        if i < 0 {
            BigInt::zero()
        } else {
            prev[i as usize].clone()
        }
    };
    let j = j as isize;
    let base = 4 * ((j - 1) / 4);
    match (j - 1) % 4 {
        0 => 2 * at(base) + at(base - 1) + 1,
        1 | 2 => at(j - 1) + 2 * at(base) + 1,
        _ => 2 * at(j - 1) + at(base) + 1,
    }
}

fn sqrt3_terms(n: usize) -> Vec<BigInt> {
    let mut t: Vec<BigInt> = alloc::vec![BigInt::zero()];
    for j in 1..=n {
        let next = sqrt3_step(&t, j);
        t.push(next);
    }
    t.remove(0);
    t
}

/// `t_1..=t_n` of the four-phase system
///
/// ```text
/// t_{4n+1} = 2t_{4n} + t_{4n−1} + 1
/// t_{4n+2} = t_{4n+1} + 2t_{4n} + 1
/// t_{4n+3} = t_{4n+2} + 2t_{4n} + 1
/// t_{4n+4} = 2t_{4n+3} + t_{4n} + 1
/// ```
///
/// with `t_0 = 0` and zero at negative indices. Experimental: the sequence is
/// compared against walk records, never assumed to equal them.
pub fn sqrt3_records(n: usize) -> RecurrenceSeq {
    RecurrenceSeq {
        name: "sqrt3",
        rule: StepRule::Sqrt3,
        offset: 1,
        terms: sqrt3_terms(n),
    }
}

/// Generates `n` terms by name: `lune`, `kotesovecA`, `kotesovecB`,
/// `halfpell` or `sqrt3`.
pub fn by_name(name: &str, n: usize) -> Option<RecurrenceSeq> {
    let seq = match name {
        "lune" => lune_records(n.saturating_sub(1)),
        "kotesovecA" => kotesovec(n.saturating_sub(1), Side::A),
        "kotesovecB" => kotesovec(n.saturating_sub(1), Side::B),
        "halfpell" => half_pell(n),
        "sqrt3" => sqrt3_records(n),
        _ => return None,
    };
    Some(seq)
}
