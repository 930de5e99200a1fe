mod common;

use common::{record_indices, walk, Surd};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use walklab_core::automata::{
    build_record_dfa, build_zero_dfa, is_record_word, is_zero_word, Verdict,
};
use walklab_core::numeration::{Direction, OstrowskiBase};
use walklab_core::walk::{brute_walk, fast_s, WalkSpec};
use walklab_core::{ContinuedFraction, Error, QuadraticSurd};

const BR: [Surd; 3] = [common::SQRT2M1, common::HALF_SQRT2M1, common::XI4];
const LEN: usize = 20_000;

fn surd(s: Surd) -> QuadraticSurd {
    QuadraticSurd::new(s.a, s.b, s.d as u64, s.c).unwrap()
}

#[test]
fn brute_walk_matches_reference() {
    for s in BR.iter().copied().chain([common::SQRT3_HALF, common::GOLDEN_XI]) {
        let spec = WalkSpec::doubled(&surd(s)).unwrap();
        assert_eq!(brute_walk(&spec, LEN as u64).sums(), &walk(s, LEN)[..], "{s:?}");
    }
}

#[test]
fn zeros_and_records_follow_the_digits() {
    for s in BR {
        let xi = surd(s);
        let cf = ContinuedFraction::expand(&xi);
        let base = OstrowskiBase::new(&cf);
        let zero_dfa = build_zero_dfa(&cf).unwrap();
        let record_dfa = build_record_dfa(&cf).unwrap();
        let sums = walk(s, LEN);
        assert!(sums.iter().all(|&x| x >= 0), "{s:?} goes negative");
        let records = record_indices(&sums);
        for n in 0..=LEN as u64 {
            let word = base.encode(n);
            let zero = sums[n as usize] == 0;
            let record = records.binary_search(&n).is_ok();
            assert_eq!(is_zero_word(&word), zero, "{s:?} zero at {n}");
            assert_eq!(is_record_word(&base, &word), record, "{s:?} record at {n}");
            assert_eq!(zero_dfa.run_word(&word).unwrap() == Verdict::Accept, zero);
            assert_eq!(record_dfa.run_word(&word).unwrap() == Verdict::Accept, record);
        }
    }
}

#[test]
fn machines_are_total_and_reject_invalid_words() {
    for s in BR {
        let cf = ContinuedFraction::expand(&surd(s));
        let base = OstrowskiBase::new(&cf);
        for dfa in [build_zero_dfa(&cf).unwrap(), build_record_dfa(&cf).unwrap()] {
            for st in 0..dfa.state_count() as u32 {
                for d in 0..dfa.alphabet() {
                    assert!((dfa.step(st, d) as usize) < dfa.state_count());
                }
            }
            // every word of length ≤ 6 is either invalid or a valid encoding
            let alphabet = dfa.alphabet();
            for len in 0..=6u32 {
                for code in 0..alphabet.pow(len) {
                    let mut c = code;
                    let lsd: Vec<u64> = (0..len)
                        .map(|_| {
                            let d = c % alphabet;
                            c /= alphabet;
                            d
                        })
                        .collect();
                    let verdict = dfa.run(&lsd, Direction::Lsd).unwrap();
                    let valid = base.validate(&lsd).is_ok();
                    assert_eq!(verdict == Verdict::Invalid, !valid, "{s:?} {lsd:?}");
                }
            }
        }
    }
}

#[test]
fn non_br_inputs_are_refused() {
    for s in [common::SQRT3_HALF, common::GOLDEN_XI] {
        let cf = ContinuedFraction::expand(&surd(s));
        assert_eq!(build_zero_dfa(&cf).unwrap_err(), Error::NotBrNumber);
        let spec = WalkSpec::doubled(&surd(s)).unwrap();
        assert_eq!(fast_s(&spec, 10).unwrap_err(), Error::NotBrNumber);
    }
}

#[test]
fn fast_s_matches_reference() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for s in BR {
        let spec = WalkSpec::doubled(&surd(s)).unwrap();
        let sums = walk(s, LEN);
        for n in 0..=LEN as u64 {
            assert_eq!(fast_s(&spec, n).unwrap(), sums[n as usize], "{s:?} n = {n}");
        }
        // far indices against the streamed walk, itself checked above
        let far = brute_walk(&spec, 2_000_000);
        for _ in 0..200 {
            let n: u64 = rng.gen_range(0..=2_000_000);
            assert_eq!(fast_s(&spec, n).unwrap(), far.get(n).unwrap(), "{s:?} n = {n}");
        }
    }
}

proptest! {
    #[test]
    fn direction_duality(digits in proptest::collection::vec(0u64..5, 0..12), which in 0usize..3) {
        let cf = ContinuedFraction::expand(&surd(BR[which]));
        for dfa in [build_zero_dfa(&cf).unwrap(), build_record_dfa(&cf).unwrap()] {
            let digits: Vec<u64> = digits.iter().map(|d| d % dfa.alphabet()).collect();
            let mut msd = digits.clone();
            msd.reverse();
            prop_assert_eq!(dfa.run(&msd, Direction::Msd), dfa.run(&digits, Direction::Lsd));
        }
    }
}
