use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::QuadraticSurd;
use crate::{Error, Result};

/// An eventually periodic regular continued fraction
/// `[a_0; a_1, …, a_{k−1}, (period)*]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    preperiod: Vec<BigInt>,
    period: Vec<BigInt>,
}

/// `⌊(p + √disc)/q⌋` for non-square `disc` and `q ≠ 0`.
fn floor_state(p: &BigInt, disc: &BigInt, q: &BigInt) -> BigInt {
    let s = disc.sqrt();
    if q.is_positive() {
        (p + s).div_floor(q)
    } else {
        let neg: BigInt = -p - s - 1;
        neg.div_floor(&-q)
    }
}

impl ContinuedFraction {
    /// Expands a quadratic irrational exactly.
    ///
    /// The surd is rewritten as `(P + √D)/Q` with `Q | D − P²`; the complete
    /// quotients then stay in that form and the first repeated `(P, Q)` state
    /// closes the period.
    pub fn expand(xi: &QuadraticSurd) -> ContinuedFraction {
        let (mut p, mut q) = if xi.b().is_positive() {
            (xi.a().clone(), xi.c().clone())
        } else {
            (-xi.a(), -xi.c())
        };
        let mut disc = xi.b() * xi.b() * BigInt::from(xi.d());
        if !(&disc - &p * &p).is_multiple_of(&q) {
            let qa = q.abs();
            p *= &qa;
            disc *= &q * &q;
            q *= &qa;
        }

        let mut seen: BTreeMap<(BigInt, BigInt), usize> = BTreeMap::new();
        let mut quotients = Vec::new();
        loop {
            if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
                let period = quotients.split_off(start);
                return ContinuedFraction {
                    preperiod: quotients,
                    period,
                };
            }
            seen.insert((p.clone(), q.clone()), quotients.len());
            let a = floor_state(&p, &disc, &q);
            let next_p = &a * &q - &p;
            let next_q = (&disc - &next_p * &next_p) / &q;
            quotients.push(a);
            p = next_p;
            q = next_q;
        }
    }

    /// Builds a continued fraction from explicit parts. The preperiod must hold
    /// at least `a_0`.
    pub fn from_parts(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        if preperiod.is_empty() || period.is_empty() {
            return Err(Error::OutOfRange("preperiod and period must be nonempty".into()));
        }
        let later = preperiod.iter().skip(1).chain(period.iter());
        if later.into_iter().any(|a| a < &BigInt::one()) {
            return Err(Error::OutOfRange("partial quotients after a_0 must be >= 1".into()));
        }
        Ok(ContinuedFraction { preperiod, period })
    }

    pub fn preperiod(&self) -> &[BigInt] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    /// Partial quotient `a_i`.
    pub fn quotient(&self, i: usize) -> &BigInt {
        let k = self.preperiod.len();
        if i < k {
            &self.preperiod[i]
        } else {
            &self.period[(i - k) % self.period.len()]
        }
    }

    /// `a_i` as a machine integer, when it fits.
    pub fn small_quotient(&self, i: usize) -> Option<u64> {
        self.quotient(i).to_u64()
    }

    pub fn quotients(&self) -> impl Iterator<Item = &BigInt> + '_ {
        (0..).map(move |i| self.quotient(i))
    }

    /// The first `n + 1` convergents `p_i/q_i`, `i = 0..=n`.
    pub fn convergents(&self, n: usize) -> Vec<(BigInt, BigInt)> {
        let (mut p0, mut p1) = (BigInt::zero(), BigInt::one());
        let (mut q0, mut q1) = (BigInt::one(), BigInt::zero());
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let a = self.quotient(i);
            let p = a * &p1 + &p0;
            let q = a * &q1 + &q0;
            p0 = core::mem::replace(&mut p1, p.clone());
            q0 = core::mem::replace(&mut q1, q.clone());
            out.push((p, q));
        }
        out
    }

    /// Convergent denominators `q_0, q_1, …` not exceeding `bound`, with the
    /// first one exceeding it appended (when it fits in a `u64`).
    pub fn denominators_through(&self, bound: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let (mut prev, mut cur): (u128, u128) = (0, 1);
        out.push(1);
        let mut i = 1;
        while cur <= u128::from(bound) {
            let a = u128::from(self.small_quotient(i).expect("partial quotient fits in u64"));
            let next = a * cur + prev;
            prev = cur;
            cur = next;
            match u64::try_from(cur) {
                Ok(v) => out.push(v),
                Err(_) => break,
            }
            i += 1;
        }
        out
    }

    /// True iff every odd-indexed partial quotient `a_1, a_3, …` is even.
    ///
    /// Checking the preperiod and two periods covers every index parity the
    /// period can align with.
    pub fn is_br(&self) -> bool {
        let limit = self.preperiod.len() + 2 * self.period.len() + 1;
        (1..=limit)
            .step_by(2)
            .all(|i| self.quotient(i).is_even())
    }
}

/// `cf_expand` under its operation name.
pub fn cf_expand(xi: &QuadraticSurd) -> ContinuedFraction {
    ContinuedFraction::expand(xi)
}

pub fn convergents(cf: &ContinuedFraction, n: usize) -> Vec<(BigInt, BigInt)> {
    cf.convergents(n)
}

pub fn is_br(cf: &ContinuedFraction) -> bool {
    cf.is_br()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn cf(s: &str) -> ContinuedFraction {
        ContinuedFraction::expand(&s.parse().unwrap())
    }

    fn denominators(c: &ContinuedFraction, n: usize) -> Vec<BigInt> {
        c.convergents(n).into_iter().map(|(_, q)| q).collect()
    }

    #[test]
    fn expansions() {
        let s = cf("sqrt2m1");
        assert_eq!((s.preperiod(), s.period()), (&ints(&[0])[..], &ints(&[2])[..]));
        let h = cf("(-1+sqrt(2))/2");
        assert_eq!((h.preperiod(), h.period()), (&ints(&[0])[..], &ints(&[4, 1])[..]));
        let t = cf("sqrt3over2");
        assert_eq!((t.preperiod(), t.period()), (&ints(&[0, 1])[..], &ints(&[6, 2])[..]));
        let r = cf("sqrt2");
        assert_eq!((r.preperiod(), r.period()), (&ints(&[1])[..], &ints(&[2])[..]));
        let neg = cf("-sqrt(2)");
        assert_eq!(neg.quotient(0), &BigInt::from(-2));
        assert_eq!(neg.quotient(1), &BigInt::from(1));
        assert_eq!(neg.quotient(2), &BigInt::from(1));
        assert_eq!(neg.quotient(3), &BigInt::from(2));
    }

    #[test]
    fn denominator_sequences() {
        assert_eq!(denominators(&cf("sqrt2m1"), 6), ints(&[1, 2, 5, 12, 29, 70, 169]));
        assert_eq!(denominators(&cf("sqrt3over2"), 4), ints(&[1, 1, 7, 15, 97]));
        assert_eq!(denominators(&cf("(-1+sqrt(5))/2"), 4), ints(&[1, 1, 2, 3, 5]));
        assert_eq!(cf("sqrt2m1").denominators_through(70), vec![1, 2, 5, 12, 29, 70, 169]);
    }

    #[test]
    fn br_predicate() {
        assert!(cf("sqrt2m1").is_br());
        assert!(cf("(-1+sqrt(2))/2").is_br());
        assert!(cf("xi4").is_br());
        assert!(!cf("sqrt3over2").is_br());
        assert!(!cf("golden").is_br());
        // odd-length period: a_5 = 3 only shows up in the second pass.
        let odd = ContinuedFraction::from_parts(ints(&[0]), ints(&[2, 3, 2])).unwrap();
        assert!(!odd.is_br());
    }

    #[test]
    fn from_parts_validation() {
        assert!(ContinuedFraction::from_parts(vec![], ints(&[1])).is_err());
        assert!(ContinuedFraction::from_parts(ints(&[0, 0]), ints(&[1])).is_err());
        assert!(ContinuedFraction::from_parts(ints(&[0]), vec![]).is_err());
    }
}
