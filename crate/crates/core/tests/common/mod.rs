//! Reference computations that share no code with the crate under test.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A surd `(a + b√d)/c` as plain integers, `c > 0`, `d` not a square.
#[derive(Clone, Copy, Debug)]
pub struct Surd {
    pub a: i64,
    pub b: i64,
    pub d: i64,
    pub c: i64,
}

pub const SQRT2M1: Surd = Surd { a: -1, b: 1, d: 2, c: 1 };
pub const HALF_SQRT2M1: Surd = Surd { a: -1, b: 1, d: 2, c: 2 };
pub const XI4: Surd = Surd { a: -2, b: 1, d: 5, c: 1 };
pub const SQRT3_HALF: Surd = Surd { a: 0, b: 1, d: 3, c: 2 };
pub const GOLDEN_XI: Surd = Surd { a: -1, b: 1, d: 5, c: 2 };

/// `u√d ≥ v`, decided by comparing squares.
fn root_at_least(u: &BigInt, d: &BigInt, v: &BigInt) -> bool {
    match (u.is_negative(), v.is_negative()) {
        (false, true) => true,
        (true, false) => v.is_zero() && u.is_zero(),
        (false, false) => u * u * d >= v * v,
        (true, true) => u * u * d <= v * v,
    }
}

/// `⌊j·(a + b√d)/c⌋` by bisection on the integer `F` with `j·x ≥ F`.
pub fn floor_times(j: impl Into<BigInt>, s: Surd) -> BigInt {
    let j: BigInt = j.into();
    let (a, b, d, c) = (
        BigInt::from(s.a),
        BigInt::from(s.b),
        BigInt::from(s.d),
        BigInt::from(s.c),
    );
    let u = &j * &b;
    // j·x ≥ F  ⇔  u√d ≥ F·c − j·a
    let at_least = |f: &BigInt| root_at_least(&u, &d, &(f * &c - &j * &a));
    let span = (j.abs() * (a.abs() + b.abs() * &d)) + BigInt::one();
    let mut lo = -span.clone();
    let mut hi = span;
    debug_assert!(at_least(&lo) && !at_least(&hi));
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if at_least(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

pub fn floor_i64(j: i64, s: Surd) -> i64 {
    i64::try_from(floor_times(j, s)).unwrap()
}

/// `{nξ} < 1/2`.
pub fn in_lower_half(n: i64, xi: Surd) -> bool {
    floor_i64(2 * n, xi) - 2 * floor_i64(n, xi) == 0
}

/// `S_0..=S_len` of `S_n(2ξ)`.
pub fn walk(xi: Surd, len: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(len + 1);
    out.push(0);
    let mut s = 0;
    for n in 1..=len as i64 {
        s += if in_lower_half(n, xi) { 1 } else { -1 };
        out.push(s);
    }
    out
}

/// Indices where a walk first reaches a new value, including 0.
pub fn record_indices(sums: &[i64]) -> Vec<u64> {
    let (mut lo, mut hi) = (0, 0);
    let mut out = vec![0];
    for (n, &s) in sums.iter().enumerate().skip(1) {
        if s > hi || s < lo {
            hi = hi.max(s);
            lo = lo.min(s);
            out.push(n as u64);
        }
    }
    out
}

/// Partial quotients `a_0..=a_n` from exact floors of convergent errors.
///
/// Uses the complete quotients `x_{k+1} = 1/(x_k − a_k)` written as
/// `(P + √D)/Q` with plain integer arithmetic.
pub fn partial_quotients(s: Surd, n: usize) -> Vec<i64> {
    // x = (a + b√d)/c = (a·|b|·sgn + √(b²d))/(c·|b|)·…; normalise to (P+√D)/Q.
    let sign = s.b.signum();
    let mut p = s.a * sign;
    let dd = s.b * s.b * s.d;
    let mut q = s.c * sign;
    // make Q | D − P²
    if (dd - p * p) % q != 0 {
        p *= q.abs();
        q *= q.abs();
        return quotients_from(p, dd * s.c * s.c, q, n);
    }
    quotients_from(p, dd, q, n)
}

fn quotients_from(mut p: i64, d: i64, mut q: i64, n: usize) -> Vec<i64> {
    let r = (d as f64).sqrt() as i64;
    let r = (r - 2..=r + 2).filter(|x| x * x <= d).max().unwrap();
    let mut out = Vec::new();
    for _ in 0..=n {
        let a = if q > 0 {
            (p + r).div_euclid(q)
        } else {
            (-(p + r) - 1).div_euclid(-q)
        };
        out.push(a);
        p = a * q - p;
        q = (d - p * p) / q;
    }
    out
}
