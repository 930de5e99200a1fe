use alloc::vec::Vec;

use crate::qarith::{FloorStream, QuadraticSurd};
use crate::{Error, Result};

/// Streams `k·D_n = k·#{j ≤ n : {jξ} ∈ [0, h/k)} − h·n` for `n = 1, 2, …`.
///
/// `{jξ} < h/k` iff `⌊jkξ⌋ − k⌊jξ⌋ < h`, so two exact floor streams suffice.
#[derive(Clone, Debug)]
pub struct DiscrepancyStream {
    base: FloorStream,
    scaled: FloorStream,
    h: i128,
    k: i128,
    scaled_count: i128,
    n: u64,
}

impl DiscrepancyStream {
    pub fn new(xi: &QuadraticSurd, h: u64, k: u64) -> Result<DiscrepancyStream> {
        if k == 0 {
            return Err(Error::DivisionByZero);
        }
        if h == 0 || h >= k {
            return Err(Error::OutOfRange(alloc::format!("endpoint {h}/{k} not in (0, 1)")));
        }
        Ok(DiscrepancyStream {
            base: FloorStream::new(xi),
            scaled: FloorStream::new(&xi.scale(k, 1)?),
            h: h.into(),
            k: k.into(),
            scaled_count: 0,
            n: 0,
        })
    }
}

impl Iterator for DiscrepancyStream {
    /// `(n, k·D_n)`
    type Item = (u64, i128);

    fn next(&mut self) -> Option<(u64, i128)> {
        self.n += 1;
        let fine = self.scaled.next_floor();
        let coarse = self.base.next_floor();
        if fine - self.k * coarse < self.h {
            self.scaled_count += self.k;
        }
        Some((self.n, self.scaled_count - self.h * i128::from(self.n)))
    }
}

/// `k·D_n` for `n = 1..=len`.
pub fn discrepancy(xi: &QuadraticSurd, h: u64, k: u64, len: u64) -> Result<Vec<i128>> {
    Ok(DiscrepancyStream::new(xi, h, k)?
        .take(len as usize)
        .map(|(_, d)| d)
        .collect())
}
