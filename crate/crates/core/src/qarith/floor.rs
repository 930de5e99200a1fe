use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::QuadraticSurd;

const FRAC_BITS: u32 = 64;

/// Streams `⌊jθ⌋` for `j = 1, 2, …` exactly.
///
/// `θ = I + f` with integer `I` and `f ∈ (0, 1)`. The stream keeps
/// `j·F mod 2^64` for `F = ⌊f·2^64⌋`, so `j·f·2^64 ∈ [jF, jF + j)`. The
/// approximate floor is certain unless the low word plus `j` reaches `2^64`; in
/// that case the exact big-integer floor is computed instead.
#[derive(Clone, Debug)]
pub struct FloorStream {
    theta: QuadraticSurd,
    int_part: i128,
    frac_word: u64,
    // F underestimates f·2^64 by less than this much.
    slack: u128,
    acc_low: u64,
    acc_high: i128,
    j: u64,
    exact_fallbacks: u64,
}

impl FloorStream {
    pub fn new(theta: &QuadraticSurd) -> FloorStream {
        Self::with_dropped_bits(theta, 0)
    }

    /// Same stream with the low `bits` of the fraction word cleared, which
    /// widens the uncertainty window; exercises the exact fallback.
    pub(crate) fn with_dropped_bits(theta: &QuadraticSurd, bits: u32) -> FloorStream {
        let int_part = theta
            .floor()
            .to_i128()
            .expect("integer part of theta fits in i128");
        let scaled = theta.floor_mul(&(BigInt::from(1u8) << FRAC_BITS));
        let frac = scaled - (BigInt::from(int_part) << FRAC_BITS);
        let frac_word = frac.to_u64().expect("fraction word is below 2^64");
        let mask = if bits == 0 { u64::MAX } else { !((1u64 << bits) - 1) };
        FloorStream {
            theta: theta.clone(),
            int_part,
            frac_word: frac_word & mask,
            slack: 1u128 << bits,
            acc_low: 0,
            acc_high: 0,
            j: 0,
            exact_fallbacks: 0,
        }
    }

    /// Index of the last value produced.
    pub fn position(&self) -> u64 {
        self.j
    }

    /// How many values needed the exact path so far.
    pub fn exact_fallbacks(&self) -> u64 {
        self.exact_fallbacks
    }

    /// Advances to the next `j` and returns `⌊jθ⌋`.
    #[inline]
    pub fn next_floor(&mut self) -> i128 {
        self.j += 1;
        let (low, carry) = self.acc_low.overflowing_add(self.frac_word);
        self.acc_low = low;
        self.acc_high += i128::from(carry);
        let approx = self.acc_high + self.int_part * i128::from(self.j);
        if u128::from(low) + u128::from(self.j) * self.slack <= 1u128 << FRAC_BITS {
            approx
        } else {
            self.exact_fallbacks += 1;
            self.theta
                .floor_mul(&BigInt::from(self.j))
                .to_i128()
                .expect("floor fits in i128")
        }
    }

    /// Advances and returns whether `⌊jθ⌋` is odd.
    #[inline]
    pub fn next_is_odd(&mut self) -> bool {
        self.next_floor() & 1 == 1
    }
}

impl Iterator for FloorStream {
    type Item = i128;

    fn next(&mut self) -> Option<i128> {
        Some(self.next_floor())
    }
}
