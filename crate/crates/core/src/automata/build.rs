use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::{DfaParts, DigitDfa};
use crate::numeration::{Direction, OstrowskiBase, OstrowskiWord};
use crate::qarith::ContinuedFraction;
use crate::{Error, Result};

/// Digit positions unrolled until the partial quotients and the position
/// parity both repeat: position `p` reads digit `b_p ≤ a_{p+1}`.
struct Positions {
    bounds: Vec<u64>,
    quotients: Vec<u64>,
    loop_start: usize,
}

impl Positions {
    fn new(cf: &ContinuedFraction) -> Positions {
        let loop_start = cf.preperiod().len().saturating_sub(1).max(1);
        let period = cf.period().len();
        let span = if period % 2 == 0 { period } else { 2 * period };
        let total = loop_start + span;
        let quotients: Vec<u64> = (0..total)
            .map(|p| cf.small_quotient(p + 1).expect("partial quotient fits in u64"))
            .collect();
        let bounds = quotients
            .iter()
            .enumerate()
            .map(|(p, &a)| if p == 0 { a - 1 } else { a })
            .collect();
        Positions {
            bounds,
            quotients,
            loop_start,
        }
    }

    fn next(&self, p: usize) -> usize {
        if p + 1 < self.bounds.len() {
            p + 1
        } else {
            self.loop_start
        }
    }

    fn alphabet(&self) -> u64 {
        self.bounds.iter().copied().max().unwrap_or(0) + 1
    }

    /// Conditions (a)–(c) for a single digit at position `p`.
    fn valid(&self, p: usize, prev_zero: bool, digit: u64) -> bool {
        let bound = self.bounds[p];
        digit <= bound && !(p >= 1 && digit == bound && !prev_zero)
    }
}

/// Explores `(position, previous digit was zero, tag)` states breadth first
/// so that numbering is deterministic. `step` maps a tag and `(position,
/// digit)` to the successor tag, `accept` marks accepting tags.
fn explore<T: Ord + Copy>(
    positions: &Positions,
    start: T,
    step: impl Fn(T, usize, u64) -> T,
    accept: impl Fn(T) -> bool,
) -> DigitDfa {
    let alphabet = positions.alphabet();
    let mut index: BTreeMap<(usize, bool, T), u32> = BTreeMap::new();
    let mut order: Vec<(usize, bool, T)> = Vec::new();
    let mut queue = VecDeque::new();
    let first = (0usize, true, start);
    index.insert(first, 0);
    order.push(first);
    queue.push_back(first);
    let mut edges: Vec<Vec<Option<(usize, bool, T)>>> = Vec::new();
    while let Some(state) = queue.pop_front() {
        let (p, prev_zero, tag) = state;
        let mut row = Vec::with_capacity(alphabet as usize);
        for digit in 0..alphabet {
            if !positions.valid(p, prev_zero, digit) {
                row.push(None);
                continue;
            }
            let next = (positions.next(p), digit == 0, step(tag, p, digit));
            if !index.contains_key(&next) {
                index.insert(next, order.len() as u32);
                order.push(next);
                queue.push_back(next);
            }
            row.push(Some(next));
        }
        edges.push(row);
    }
    let dead = order.len() as u32;
    let mut table = Vec::with_capacity((order.len() + 1) * alphabet as usize);
    for row in &edges {
        table.extend(row.iter().map(|t| t.map_or(dead, |s| index[&s])));
    }
    table.extend(core::iter::repeat(dead).take(alphabet as usize));
    let mut accepting: Vec<bool> = order.iter().map(|&(_, _, t)| accept(t)).collect();
    accepting.push(false);
    DigitDfa::new(DfaParts {
        alphabet,
        table,
        accepting,
        start: 0,
        dead,
        direction: Direction::Lsd,
        validating: true,
    })
    .expect("explored automaton is well formed")
}

/// Lsd automaton for the zeros of `S_n(2ξ)`: valid Ostrowski words whose
/// digits vanish at every even position.
pub fn build_zero_dfa(cf: &ContinuedFraction) -> Result<DigitDfa> {
    if !cf.is_br() {
        return Err(Error::NotBrNumber);
    }
    let positions = Positions::new(cf);
    Ok(explore(
        &positions,
        true,
        |ok, p, digit| ok && (p % 2 == 1 || digit == 0),
        |ok| ok,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum RecordMode {
    /// Every even digit so far equals `a_{i+1}/2`, every odd digit is zero.
    Exact,
    /// An even digit fell short; only zeros may follow.
    Slack,
    Fail,
}

/// Lsd automaton for the records of `S_n(2ξ)`: odd digits zero, even digits
/// equal to `a_{i+1}/2` below the leading digit, leading digit at most that.
pub fn build_record_dfa(cf: &ContinuedFraction) -> Result<DigitDfa> {
    if !cf.is_br() {
        return Err(Error::NotBrNumber);
    }
    let positions = Positions::new(cf);
    let half: Vec<u64> = positions.quotients.iter().map(|a| a / 2).collect();
    Ok(explore(
        &positions,
        RecordMode::Exact,
        |mode, p, digit| match mode {
            RecordMode::Fail => RecordMode::Fail,
            _ if p % 2 == 1 => {
                if digit == 0 {
                    mode
                } else {
                    RecordMode::Fail
                }
            }
            RecordMode::Exact if digit == half[p] => RecordMode::Exact,
            RecordMode::Exact if digit < half[p] => RecordMode::Slack,
            RecordMode::Slack if digit == 0 => RecordMode::Slack,
            _ => RecordMode::Fail,
        },
        |mode| mode != RecordMode::Fail,
    ))
}

/// Digit test for zeros, applied directly to a word.
pub fn is_zero_word(word: &OstrowskiWord) -> bool {
    word.lsd().iter().step_by(2).all(|&b| b == 0)
}

/// Digit test for records, applied directly to a word.
pub fn is_record_word(base: &OstrowskiBase, word: &OstrowskiWord) -> bool {
    let word = word.clone().trimmed();
    let digits = word.lsd();
    let Some(top) = digits.len().checked_sub(1) else {
        return true;
    };
    if top % 2 == 1 {
        return false;
    }
    let cf = base.continued_fraction();
    digits.iter().enumerate().all(|(i, &b)| {
        if i % 2 == 1 {
            return b == 0;
        }
        let half = cf.small_quotient(i + 1).expect("partial quotient fits") / 2;
        if i < top {
            b == half
        } else {
            b <= half
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Verdict;
    use crate::numeration::parse_digits;

    fn cf(s: &str) -> ContinuedFraction {
        ContinuedFraction::expand(&s.parse().unwrap())
    }

    fn msd(dfa: &DigitDfa, s: &str) -> Verdict {
        dfa.run(parse_digits(s, Direction::Msd).unwrap().lsd(), Direction::Lsd)
            .unwrap()
    }

    #[test]
    fn pell_zero_machine() {
        let dfa = build_zero_dfa(&cf("sqrt2m1")).unwrap();
        assert_eq!(msd(&dfa, "10"), Verdict::Accept);
        assert_eq!(msd(&dfa, "1"), Verdict::Reject);
        assert_eq!(msd(&dfa, ""), Verdict::Accept);
        assert_eq!(msd(&dfa, "2020"), Verdict::Accept);
        assert_eq!(msd(&dfa, "21"), Verdict::Invalid);
        assert_eq!(msd(&dfa, "2"), Verdict::Invalid);
        assert_eq!(dfa.alphabet(), 3);
    }

    #[test]
    fn pell_record_machine() {
        let dfa = build_record_dfa(&cf("sqrt2m1")).unwrap();
        for w in ["", "1", "101", "10101"] {
            assert_eq!(msd(&dfa, w), Verdict::Accept, "{w}");
        }
        for w in ["11", "100", "10", "201"] {
            assert_eq!(msd(&dfa, w), Verdict::Reject, "{w}");
        }
        assert_eq!(msd(&dfa, "12"), Verdict::Invalid);
    }

    #[test]
    fn non_br_rejected() {
        assert_eq!(build_zero_dfa(&cf("sqrt3over2")).unwrap_err(), Error::NotBrNumber);
        assert_eq!(build_record_dfa(&cf("golden")).unwrap_err(), Error::NotBrNumber);
    }

    #[test]
    fn direct_digit_tests() {
        let base = OstrowskiBase::new(&cf("sqrt2m1"));
        let w = |s: &str| parse_digits(s, Direction::Msd).unwrap();
        assert!(is_zero_word(&w("1010")));
        assert!(!is_zero_word(&w("1011")));
        assert!(is_record_word(&base, &w("10101")));
        assert!(is_record_word(&base, &w("")));
        assert!(!is_record_word(&base, &w("10")));
        assert!(!is_record_word(&base, &w("111")));
    }

    #[test]
    fn odd_period_unrolls_twice() {
        // [0; 2, 2, 2, …] has period one; parity still alternates.
        let p = Positions::new(&cf("sqrt2m1"));
        assert_eq!((p.bounds.len() - p.loop_start) % 2, 0);
        let p = Positions::new(&cf("(-1+sqrt(2))/2"));
        assert_eq!(p.quotients, [4, 1, 4]);
    }
}
