use alloc::vec;

use super::{DfaParts, DigitDfa};
use crate::numeration::Direction;
use crate::{Error, Result};

/// A hand-written machine together with the base it reads.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    /// Name of the rotation number whose Ostrowski digits are read.
    pub base: &'static str,
    /// Name of the walk angle `θ = 2ξ`.
    pub theta: &'static str,
    /// `records` or `zeros`.
    pub kind: &'static str,
    pub dfa: DigitDfa,
}

/// Known small machines, all msd-first over the digits `{0, 1, 2}` of
/// `√2 − 1`:
///
/// * `records_sqrt2`: `1*`
/// * `records_2sqrt2`: `(10)*1`
/// * `zeros_2sqrt2`: `ε ∪ (10|20)(00|10|20)*`
pub fn hardcoded_fixture(name: &str) -> Result<Fixture> {
    let (name, theta, kind, table, accepting, dead) = match name {
        "records_sqrt2" => (
            "records_sqrt2",
            "sqrt2",
            "records",
            vec![1, 0, 1, 1, 1, 1],
            vec![true, false],
            1,
        ),
        "records_2sqrt2" => (
            "records_2sqrt2",
            "2sqrt2",
            "records",
            vec![2, 1, 2, 0, 2, 2, 2, 2, 2],
            vec![false, true, false],
            2,
        ),
        "zeros_2sqrt2" => (
            "zeros_2sqrt2",
            "2sqrt2",
            "zeros",
            vec![4, 1, 1, 2, 4, 4, 3, 3, 3, 2, 4, 4, 4, 4, 4],
            vec![true, false, true, false, false],
            4,
        ),
        other => return Err(Error::UnknownFixture(other.into())),
    };
    let dfa = DigitDfa::new(DfaParts {
        alphabet: 3,
        table,
        accepting,
        start: 0,
        dead,
        direction: Direction::Msd,
        validating: false,
    })?;
    Ok(Fixture {
        name,
        base: "sqrt2m1",
        theta,
        kind,
        dfa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn accepts(f: &Fixture, w: &[u64]) -> bool {
        f.dfa.accepts(w, Direction::Msd).unwrap()
    }

    #[test]
    fn languages() {
        let f = hardcoded_fixture("records_sqrt2").unwrap();
        assert!(accepts(&f, &[]) && accepts(&f, &[1, 1, 1]));
        assert!(!accepts(&f, &[1, 0]));

        let f = hardcoded_fixture("records_2sqrt2").unwrap();
        assert!(accepts(&f, &[1]) && accepts(&f, &[1, 0, 1]));
        assert!(!accepts(&f, &[]) && !accepts(&f, &[1, 0]) && !accepts(&f, &[2]));

        let f = hardcoded_fixture("zeros_2sqrt2").unwrap();
        assert!(accepts(&f, &[]) && accepts(&f, &[2, 0, 1, 0]) && accepts(&f, &[1, 0, 0, 0]));
        assert!(!accepts(&f, &[1]) && !accepts(&f, &[0, 0]) && !accepts(&f, &[1, 0, 1, 1]));
    }

    #[test]
    fn unknown_name() {
        assert_eq!(
            hardcoded_fixture("nope").unwrap_err(),
            Error::UnknownFixture("nope".into())
        );
    }
}
