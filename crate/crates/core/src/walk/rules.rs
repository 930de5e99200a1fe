use alloc::vec::Vec;

use super::WalkSpec;
use crate::{Error, Result};

/// Evaluates `S_n(2ξ)` for a BR-number `ξ` from the convergent denominators of
/// `ξ` alone.
///
/// With `q' = q_i ≤ n < q = q_{i+1}`:
///
/// * `S_{q'}` is 1 for odd `q'` and 0 for even `q'`;
/// * for `2n ≥ q`: `S_n = S_{q'} + S_{q−n−1}`;
/// * for `2n < q`: `S_n = S_{q'} + S_{n−q'}`, applied `⌊n/q'⌋` times at once.
///
/// Each reduction drops below `q'` or lands in a lower band, so a query costs
/// a few steps per convergent.
#[derive(Clone, Debug)]
pub struct RuleEngine {
    denominators: Vec<u64>,
}

impl RuleEngine {
    pub fn new(spec: &WalkSpec) -> Result<RuleEngine> {
        if !spec.is_br() {
            return Err(Error::NotBrNumber);
        }
        Ok(RuleEngine {
            denominators: spec.continued_fraction().denominators_through(u64::MAX),
        })
    }

    /// Largest `n` the engine can answer (the last denominator that has a
    /// successor in range).
    pub fn max_index(&self) -> u64 {
        self.denominators[self.denominators.len() - 1] - 1
    }

    pub fn denominators(&self) -> &[u64] {
        &self.denominators
    }

    /// `S_n`, or `None` when `n` exceeds [`RuleEngine::max_index`].
    pub fn value(&self, n: u64) -> Option<i64> {
        if n > self.max_index() {
            return None;
        }
        let q = &self.denominators;
        let mut n = n;
        let mut acc = 0i64;
        while n > 0 {
            let i = q.partition_point(|&x| x <= n) - 1;
            let lower = q[i];
            let at_lower = (lower & 1) as i64;
            if n == lower {
                return Some(acc + at_lower);
            }
            let upper = q[i + 1];
            if u128::from(n) * 2 >= u128::from(upper) {
                acc += at_lower;
                n = upper - n - 1;
            } else {
                acc += (n / lower) as i64 * at_lower;
                n %= lower;
            }
        }
        Some(acc)
    }
}

/// `S_n` for a BR spec without walking.
pub fn fast_s(spec: &WalkSpec, n: u64) -> Result<i64> {
    let engine = RuleEngine::new(spec)?;
    engine
        .value(n)
        .ok_or_else(|| Error::OutOfRange(alloc::format!("index {n} beyond u64 denominators")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::brute_walk;

    fn spec(s: &str) -> WalkSpec {
        WalkSpec::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn convergent_values() {
        let s = spec("2sqrt2");
        assert_eq!(fast_s(&s, 70), Ok(0));
        assert_eq!(fast_s(&s, 169), Ok(1));
        assert_eq!(fast_s(&s, 69), Ok(1));
        assert_eq!(fast_s(&s, 0), Ok(0));
    }

    #[test]
    fn rejects_non_br() {
        assert_eq!(RuleEngine::new(&spec("sqrt2")).unwrap_err(), Error::NotBrNumber);
        assert_eq!(fast_s(&spec("sqrt3"), 5), Err(Error::NotBrNumber));
    }

    #[test]
    fn agrees_with_brute_force() {
        for name in ["2sqrt2", "sqrt2m1", "(-4+2*sqrt(5))", "(-6+sqrt(40))"] {
            let s = spec(name);
            let engine = RuleEngine::new(&s).unwrap();
            let trace = brute_walk(&s, 20_000);
            for n in 0..=20_000u64 {
                assert_eq!(engine.value(n), trace.get(n), "{name} at {n}");
            }
        }
    }

    #[test]
    fn huge_index_in_range() {
        let engine = RuleEngine::new(&spec("2sqrt2")).unwrap();
        assert!(engine.max_index() > 1_000_000_000_000);
        let v = engine.value(1_000_000_000_000).unwrap();
        assert!(v >= 0);
        assert_eq!(engine.value(u64::MAX), None);
    }
}
