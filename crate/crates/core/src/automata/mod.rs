//! Deterministic automata over bounded digit alphabets.
//!
//! Built machines read least-significant digit first and fold the Ostrowski
//! digit conditions into their transitions, so a run distinguishes words
//! that are rejected from words that are not valid representations at all.

mod build;
mod dot;
mod fixtures;

use alloc::format;
use alloc::vec::Vec;

use crate::numeration::{Direction, OstrowskiBase, OstrowskiWord};
use crate::{Error, Result};

pub use build::{build_record_dfa, build_zero_dfa, is_record_word, is_zero_word};
pub use dot::{to_dot, to_dot_with, DotOptions};
pub use fixtures::{hardcoded_fixture, Fixture};

/// Outcome of running a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accept,
    Reject,
    /// The word is not a valid representation (only reported by machines
    /// that track validity).
    Invalid,
}

/// A complete DFA over the digits `0..alphabet`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitDfa {
    alphabet: u64,
    table: Vec<u32>,
    accepting: Vec<bool>,
    start: u32,
    dead: u32,
    direction: Direction,
    validating: bool,
}

/// Raw material for [`DigitDfa::new`]; `table[s * alphabet + d]` is the
/// successor of state `s` on digit `d`.
#[derive(Clone, Debug)]
pub struct DfaParts {
    pub alphabet: u64,
    pub table: Vec<u32>,
    pub accepting: Vec<bool>,
    pub start: u32,
    pub dead: u32,
    pub direction: Direction,
    pub validating: bool,
}

impl DigitDfa {
    /// Checks totality, that the dead state absorbs every digit and that it
    /// is not accepting.
    pub fn new(parts: DfaParts) -> Result<DigitDfa> {
        let DfaParts {
            alphabet,
            table,
            accepting,
            start,
            dead,
            direction,
            validating,
        } = parts;
        let states = accepting.len();
        let bad = |what: &str| Err(Error::OutOfRange(format!("malformed automaton: {what}")));
        if alphabet == 0 || table.len() as u64 != states as u64 * alphabet {
            return bad("transition table is not total");
        }
        if start as usize >= states || dead as usize >= states {
            return bad("start or dead state out of range");
        }
        if table.iter().any(|&t| t as usize >= states) {
            return bad("transition target out of range");
        }
        let a = alphabet as usize;
        if table[dead as usize * a..(dead as usize + 1) * a]
            .iter()
            .any(|&t| t != dead)
        {
            return bad("dead state is not absorbing");
        }
        if accepting[dead as usize] {
            return bad("dead state is accepting");
        }
        Ok(DigitDfa {
            alphabet,
            table,
            accepting,
            start,
            dead,
            direction,
            validating,
        })
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    /// Digits run over `0..alphabet`.
    pub fn alphabet(&self) -> u64 {
        self.alphabet
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn dead(&self) -> u32 {
        self.dead
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn is_accepting(&self, state: u32) -> bool {
        self.accepting[state as usize]
    }

    pub fn validating(&self) -> bool {
        self.validating
    }

    #[inline]
    pub fn step(&self, state: u32, digit: u64) -> u32 {
        self.table[state as usize * self.alphabet as usize + digit as usize]
    }

    /// Final state after feeding `digits`, given in `dir` order.
    pub fn final_state(&self, digits: &[u64], dir: Direction) -> Result<u32> {
        if let Some(&digit) = digits.iter().find(|&&d| d >= self.alphabet) {
            return Err(Error::AlphabetMismatch {
                digit,
                bound: self.alphabet,
            });
        }
        let mut state = self.start;
        if dir == self.direction {
            for &d in digits {
                state = self.step(state, d);
            }
        } else {
            for &d in digits.iter().rev() {
                state = self.step(state, d);
            }
        }
        Ok(state)
    }

    /// Runs a raw digit string read in `dir` order.
    pub fn run(&self, digits: &[u64], dir: Direction) -> Result<Verdict> {
        let state = self.final_state(digits, dir)?;
        Ok(if self.accepting[state as usize] {
            Verdict::Accept
        } else if self.validating && state == self.dead {
            Verdict::Invalid
        } else {
            Verdict::Reject
        })
    }

    pub fn run_word(&self, word: &OstrowskiWord) -> Result<Verdict> {
        self.run(word.lsd(), Direction::Lsd)
    }

    pub fn accepts(&self, digits: &[u64], dir: Direction) -> Result<bool> {
        Ok(self.run(digits, dir)? == Verdict::Accept)
    }

    /// A copy with one transition redirected. For harness self-tests.
    pub fn with_transition(&self, state: u32, digit: u64, target: u32) -> Result<DigitDfa> {
        let mut parts = self.parts();
        parts.table[state as usize * self.alphabet as usize + digit as usize] = target;
        DigitDfa::new(parts)
    }

    pub fn parts(&self) -> DfaParts {
        DfaParts {
            alphabet: self.alphabet,
            table: self.table.clone(),
            accepting: self.accepting.clone(),
            start: self.start,
            dead: self.dead,
            direction: self.direction,
            validating: self.validating,
        }
    }
}

/// Where a machine and a reference predicate disagree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub n: u64,
    pub machine: Verdict,
    pub expected: bool,
}

/// Compares `run(dfa, encode(n))` with `predicate(n)` for every `n ≤ bound`
/// and reports the smallest disagreement.
pub fn equiv_oracle(
    dfa: &DigitDfa,
    predicate: impl Fn(u64) -> bool,
    base: &OstrowskiBase,
    bound: u64,
) -> Result<Option<Mismatch>> {
    for n in 0..=bound {
        let word = base.encode(n);
        let machine = dfa.run_word(&word)?;
        let expected = predicate(n);
        if (machine == Verdict::Accept) != expected {
            return Ok(Some(Mismatch {
                n,
                machine,
                expected,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn tiny() -> DfaParts {
        // accepts words over {0,1} ending in state 1; digit 1 toggles.
        DfaParts {
            alphabet: 2,
            table: vec![0, 1, 1, 0, 2, 2],
            accepting: vec![false, true, false],
            start: 0,
            dead: 2,
            direction: Direction::Lsd,
            validating: false,
        }
    }

    #[test]
    fn construction_checks() {
        assert!(DigitDfa::new(tiny()).is_ok());
        let mut p = tiny();
        p.table.pop();
        assert!(DigitDfa::new(p).is_err());
        let mut p = tiny();
        p.table[4] = 0;
        assert!(DigitDfa::new(p).is_err());
        let mut p = tiny();
        p.accepting[2] = true;
        assert!(DigitDfa::new(p).is_err());
        let mut p = tiny();
        p.table[0] = 7;
        assert!(DigitDfa::new(p).is_err());
    }

    #[test]
    fn runs_and_alphabet() {
        let dfa = DigitDfa::new(tiny()).unwrap();
        assert_eq!(dfa.run(&[1, 0, 0], Direction::Lsd), Ok(Verdict::Accept));
        assert_eq!(dfa.run(&[1, 1], Direction::Msd), Ok(Verdict::Reject));
        assert_eq!(
            dfa.run(&[2], Direction::Lsd),
            Err(Error::AlphabetMismatch { digit: 2, bound: 2 })
        );
    }
}
