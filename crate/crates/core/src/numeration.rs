//! Ostrowski numeration: `N = Σ b_i·q_i` over the convergent denominators of a
//! continued fraction, with digits constrained by
//!
//! * (a) `0 ≤ b_0 < a_1`,
//! * (b) `0 ≤ b_i ≤ a_{i+1}` for `i ≥ 1`,
//! * (c) `b_i = a_{i+1}` forces `b_{i−1} = 0`.
//!
//! Digits are stored least-significant first. Pell numeration is the base
//! `√2 − 1`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::qarith::ContinuedFraction;
use crate::{Error, Result};

/// Reading direction of a digit string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Least significant digit first.
    Lsd,
    /// Most significant digit first (the usual printed order).
    Msd,
}

/// Digits `b_0, b_1, …` (least significant first) of an Ostrowski expansion.
///
/// Canonical words carry no most-significant zeros; the empty word is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OstrowskiWord {
    digits: Vec<u64>,
}

impl OstrowskiWord {
    pub fn from_lsd(digits: Vec<u64>) -> OstrowskiWord {
        OstrowskiWord { digits }
    }

    pub fn from_msd(digits: &[u64]) -> OstrowskiWord {
        OstrowskiWord {
            digits: digits.iter().rev().copied().collect(),
        }
    }

    pub fn lsd(&self) -> &[u64] {
        &self.digits
    }

    pub fn msd(&self) -> Vec<u64> {
        self.digits.iter().rev().copied().collect()
    }

    pub fn digits_in(&self, dir: Direction) -> Vec<u64> {
        match dir {
            Direction::Lsd => self.digits.clone(),
            Direction::Msd => self.msd(),
        }
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Drops most-significant zeros.
    pub fn trimmed(mut self) -> OstrowskiWord {
        while self.digits.last() == Some(&0) {
            self.digits.pop();
        }
        self
    }
}

/// Which of the digit conditions failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    A,
    B,
    C,
}

/// First violated digit condition, by position (0 = least significant).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub position: usize,
    pub condition: Condition,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.condition {
            Condition::A => "b_0 must be below a_1",
            Condition::B => "digit exceeds the next partial quotient",
            Condition::C => "maximal digit must follow a zero digit",
        };
        write!(f, "position {}: {}", self.position, what)
    }
}

/// Place values and digit bounds of an Ostrowski system.
#[derive(Clone, Debug)]
pub struct OstrowskiBase {
    cf: ContinuedFraction,
    // q_0, q_1, … while they fit in a u64
    denominators: Vec<u64>,
}

impl OstrowskiBase {
    pub fn new(cf: &ContinuedFraction) -> OstrowskiBase {
        let denominators = cf.denominators_through(u64::MAX);
        OstrowskiBase {
            cf: cf.clone(),
            denominators,
        }
    }

    pub fn continued_fraction(&self) -> &ContinuedFraction {
        &self.cf
    }

    /// Place value `q_i`, if it fits in a `u64`.
    pub fn place(&self, i: usize) -> Option<u64> {
        self.denominators.get(i).copied()
    }

    pub fn places(&self) -> &[u64] {
        &self.denominators
    }

    /// Largest digit allowed at position `i`, i.e. `a_{i+1}` (minus one at 0).
    pub fn digit_bound(&self, i: usize) -> u64 {
        let a = self
            .cf
            .small_quotient(i + 1)
            .expect("partial quotient fits in u64");
        if i == 0 {
            a - 1
        } else {
            a
        }
    }

    /// Largest digit used anywhere in this system.
    pub fn max_digit(&self) -> u64 {
        let span = self.cf.preperiod().len() + self.cf.period().len();
        (0..span).map(|i| self.digit_bound(i)).max().unwrap_or(0)
    }

    /// The shifted index `P_n = q_{n−1}`, `P_0 = 0`, so that Pell-indexed
    /// statements can be quoted directly for the base `√2 − 1`.
    pub fn p_indexed(&self, n: usize) -> Option<u64> {
        if n == 0 {
            Some(0)
        } else {
            self.place(n - 1)
        }
    }

    /// Greedy most-significant-first expansion.
    pub fn encode(&self, n: u64) -> OstrowskiWord {
        if n == 0 {
            return OstrowskiWord::default();
        }
        let top = self
            .denominators
            .iter()
            .rposition(|&q| q <= n)
            .expect("q_0 = 1 <= n");
        let mut digits = alloc::vec![0u64; top + 1];
        let mut rem = n;
        for i in (0..=top).rev() {
            let q = self.denominators[i];
            let b = (rem / q).min(self.digit_bound(i));
            digits[i] = b;
            rem -= b * q;
        }
        debug_assert_eq!(rem, 0);
        OstrowskiWord { digits }.trimmed()
    }

    /// Checks conditions (a)–(c) on least-significant-first digits.
    pub fn validate(&self, lsd: &[u64]) -> core::result::Result<(), Violation> {
        for (i, &b) in lsd.iter().enumerate() {
            let bound = self.digit_bound(i);
            if b > bound {
                let condition = if i == 0 { Condition::A } else { Condition::B };
                return Err(Violation { position: i, condition });
            }
            if i >= 1 && b == bound && lsd[i - 1] != 0 {
                return Err(Violation {
                    position: i,
                    condition: Condition::C,
                });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, word: &OstrowskiWord) -> bool {
        self.validate(word.lsd()).is_ok()
    }

    /// `Σ b_i·q_i` for a valid word.
    pub fn decode(&self, word: &OstrowskiWord) -> Result<u64> {
        self.validate(word.lsd())
            .map_err(|v| Error::InvalidDigits(format!("{v}")))?;
        let mut total: u64 = 0;
        for (i, &b) in word.lsd().iter().enumerate() {
            if b == 0 {
                continue;
            }
            let term = self
                .place(i)
                .and_then(|q| q.checked_mul(b))
                .and_then(|t| total.checked_add(t));
            total = term.ok_or_else(|| Error::OutOfRange(format!("word exceeds u64 at position {i}")))?;
        }
        Ok(total)
    }

    /// Renders digits in the given order; concatenated when every digit of
    /// the system is below ten, comma-separated otherwise.
    pub fn format(&self, word: &OstrowskiWord, dir: Direction) -> String {
        let digits = word.digits_in(dir);
        let sep = if self.max_digit() <= 9 { "" } else { "," };
        let mut out = String::new();
        for (k, d) in digits.iter().enumerate() {
            if k > 0 {
                out.push_str(sep);
            }
            out.push_str(&format!("{d}"));
        }
        out
    }

    /// Parses a digit string in the form [`OstrowskiBase::format`] writes. In
    /// systems with digits above nine a string without commas is one digit.
    pub fn parse(&self, text: &str, dir: Direction) -> Result<OstrowskiWord> {
        let t = text.trim();
        if self.max_digit() > 9 && !t.contains(',') && !t.is_empty() && t != "ε" {
            let d = t
                .parse::<u64>()
                .map_err(|_| Error::InvalidDigits(format!("cannot parse digit `{t}`")))?;
            return Ok(OstrowskiWord::from_lsd(alloc::vec![d]));
        }
        parse_digits(t, dir)
    }
}

/// Parses `"20201"` or `"2,0,2,0,1"`; the empty string (or `ε`) is the empty word.
pub fn parse_digits(text: &str, dir: Direction) -> Result<OstrowskiWord> {
    let text = text.trim();
    let bad = || Error::InvalidDigits(format!("cannot parse digit string `{text}`"));
    let digits: Vec<u64> = if text.is_empty() || text == "ε" {
        Vec::new()
    } else if text.contains(',') {
        text.split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<_>>()?
    } else {
        text.chars()
            .map(|c| c.to_digit(10).map(u64::from).ok_or_else(bad))
            .collect::<Result<_>>()?
    };
    Ok(match dir {
        Direction::Lsd => OstrowskiWord::from_lsd(digits),
        Direction::Msd => OstrowskiWord::from_msd(&digits),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pell() -> OstrowskiBase {
        OstrowskiBase::new(&ContinuedFraction::expand(&"sqrt2m1".parse().unwrap()))
    }

    fn msd(base: &OstrowskiBase, n: u64) -> String {
        base.format(&base.encode(n), Direction::Msd)
    }

    fn word(s: &str) -> OstrowskiWord {
        parse_digits(s, Direction::Msd).unwrap()
    }

    #[test]
    fn encode_examples() {
        let p = pell();
        assert_eq!(msd(&p, 69), "20201");
        assert_eq!(msd(&p, 0), "");
        assert!(p.encode(0).is_empty());
        assert_eq!(msd(&p, 100), "110001");
        assert_eq!(msd(&p, 70), "100000");
    }

    #[test]
    fn decode_examples() {
        let p = pell();
        assert_eq!(p.decode(&word("10")), Ok(2));
        assert_eq!(p.decode(&word("100000")), Ok(70));
        assert_eq!(p.decode(&word("")), Ok(0));
        assert_eq!(p.decode(&word("0020201")), Ok(69));
        assert!(matches!(p.decode(&word("21")), Err(Error::InvalidDigits(_))));
    }

    #[test]
    fn validation_reports_first_violation() {
        let p = pell();
        assert_eq!(
            p.validate(word("21").lsd()),
            Err(Violation { position: 1, condition: Condition::C })
        );
        assert_eq!(
            p.validate(word("2").lsd()),
            Err(Violation { position: 0, condition: Condition::A })
        );
        assert_eq!(p.validate(word("20201").lsd()), Ok(()));
        assert_eq!(
            p.validate(word("301").lsd()),
            Err(Violation { position: 2, condition: Condition::B })
        );
    }

    #[test]
    fn pell_alias_and_alphabet() {
        let p = pell();
        let pn: Vec<u64> = (0..8).map(|n| p.p_indexed(n).unwrap()).collect();
        assert_eq!(pn, vec![0, 1, 2, 5, 12, 29, 70, 169]);
        assert_eq!(p.max_digit(), 2);
    }

    #[test]
    fn comma_format_for_large_digits() {
        // [0; 12, 12, …]: digit bound 11 at position 0.
        let cf = ContinuedFraction::expand(&"(-12+sqrt(148))/2".parse().unwrap());
        let base = OstrowskiBase::new(&cf);
        assert!(base.max_digit() > 9);
        let w = base.encode(11);
        assert_eq!(base.format(&w, Direction::Msd), "11");
        let w = base.encode(30);
        let text = base.format(&w, Direction::Msd);
        assert!(text.contains(','));
        assert_eq!(base.decode(&base.parse(&text, Direction::Msd).unwrap()), Ok(30));
    }

    #[test]
    fn golden_base_is_zeckendorf() {
        let cf = ContinuedFraction::expand(&"(-1+sqrt(5))/2".parse().unwrap());
        let base = OstrowskiBase::new(&cf);
        for n in 0..2000 {
            let w = base.encode(n);
            assert_eq!(w.lsd().first().copied().unwrap_or(0), 0);
            assert!(w.lsd().windows(2).all(|p| p[0] * p[1] == 0));
            assert_eq!(base.decode(&w), Ok(n));
        }
    }
}
