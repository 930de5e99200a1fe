//! Substitutions on `{a, b, c}` that describe the rotation by a noble mean
//! seen through its first-return map.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::qarith::{noble_mean_adjusted, ArithOp, Number, QuadraticSurd};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

pub fn word_to_string(word: &[Letter]) -> String {
    word.iter().map(|l| l.as_char()).collect()
}

pub fn parse_word(text: &str) -> Result<Vec<Letter>> {
    text.chars()
        .map(|c| Letter::from_char(c).ok_or_else(|| Error::Parse(format!("letter {c:?}"))))
        .collect()
}

/// How `[0, 1)` is cut into the three letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Partition {
    /// `a = [0, 1/2)`, `b = [1/2, 1−ξ)`, `c = [1−ξ, 1)`.
    Noble,
    /// `a = [0, 1−ξ)`, `b = [1−ξ, 1/2)`, `c = [1/2, 1)`.
    Golden,
}

/// A substitution σ with its 0/1 coding τ, the ±1 coding used for walks, and
/// the rotation it renormalises.
#[derive(Clone, Debug)]
pub struct Substitution {
    name: String,
    images: [Vec<Letter>; 3],
    coding: [u8; 3],
    signed: [i8; 3],
    rotation: QuadraticSurd,
    induction: Number,
    partition: Partition,
    m: u64,
}

fn repeat(out: &mut Vec<Letter>, letter: Letter, times: u64) {
    out.extend(core::iter::repeat(letter).take(times as usize));
}

/// σ and τ for the rotation by `ξ_m`, `m` even, with `k = m/2` and the
/// block exponent `p = m`:
///
/// ```text
/// σ(a) = a^{k+1} b^{k−1} c (a^k b^{k−1} c)^{p−1}
/// σ(b) = a^k b^k c (a^k b^{k−1} c)^{p−1}
/// σ(c) = a^k b^k c (a^k b^{k−1} c)^p
/// τ: a → 1, b → 0, c → 0
/// ```
pub fn noble_substitution(m: u64) -> Result<Substitution> {
    if m % 2 == 1 {
        return Err(Error::OddM(m));
    }
    if m == 0 {
        return Err(Error::OutOfRange("noble mean index 0".into()));
    }
    let k = m / 2;
    let p = m;
    let mut block = Vec::new();
    repeat(&mut block, Letter::A, k);
    repeat(&mut block, Letter::B, k - 1);
    block.push(Letter::C);
    let head = |a: u64, b: u64, blocks: u64| {
        let mut w = Vec::new();
        repeat(&mut w, Letter::A, a);
        repeat(&mut w, Letter::B, b);
        w.push(Letter::C);
        for _ in 0..blocks {
            w.extend_from_slice(&block);
        }
        w
    };
    let images = [head(k + 1, k - 1, p - 1), head(k, k, p - 1), head(k, k, p)];
    let rotation = noble_mean_adjusted(m)?;
    let induction = Number::integer(1).arith(
        &Number::from(rotation.scale(m, 1)?),
        ArithOp::Sub,
    )?;
    Ok(Substitution {
        name: format!("noble{m}"),
        images,
        coding: [1, 0, 0],
        signed: [1, -1, -1],
        rotation,
        induction,
        partition: Partition::Noble,
        m,
    })
}

/// The golden-mean example: induction on `[0, 5 − 8ξ_1)`, τ: a, b → 1,
/// c → 0.
pub fn golden_substitution() -> Substitution {
    let words = [
        "acacbacaccacb",
        "acacbacaccacbacaccacb",
        "acaccacaccacbacaccacb",
    ];
    let images = words.map(|w| parse_word(w).expect("fixed words"));
    let rotation = noble_mean_adjusted(1).expect("m = 1 is valid");
    let induction = Number::integer(5)
        .arith(&Number::from(rotation.scale(8, 1).expect("nonzero")), ArithOp::Sub)
        .expect("shared radicand");
    Substitution {
        name: "golden".into(),
        images,
        coding: [1, 1, 0],
        signed: [1, 1, -1],
        rotation,
        induction,
        partition: Partition::Golden,
        m: 1,
    }
}

impl Substitution {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// σ(letter).
    pub fn image(&self, letter: Letter) -> &[Letter] {
        &self.images[letter.index()]
    }

    /// τ(letter) ∈ {0, 1}.
    pub fn code(&self, letter: Letter) -> u8 {
        self.coding[letter.index()]
    }

    pub fn coding(&self) -> [u8; 3] {
        self.coding
    }

    /// ±1 coding of the letter.
    pub fn signed(&self) -> [i8; 3] {
        self.signed
    }

    /// ξ.
    pub fn rotation(&self) -> &QuadraticSurd {
        &self.rotation
    }

    /// Length of the induction interval `[0, J)`.
    pub fn induction_length(&self) -> &Number {
        &self.induction
    }

    pub fn partition(&self) -> Partition {
        self.partition
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// σ applied letterwise.
    pub fn apply(&self, word: &[Letter]) -> Vec<Letter> {
        word.iter().flat_map(|&l| self.image(l).iter().copied()).collect()
    }

    pub fn encode(&self, word: &[Letter]) -> Vec<u8> {
        word.iter().map(|&l| self.code(l)).collect()
    }

    /// Letter of a point of `[0, 1)` under this substitution's partition.
    pub fn letter_of(&self, x: &Number) -> Letter {
        let half = Number::rational(1, 2).expect("nonzero");
        let one_minus = Number::integer(1)
            .arith(&Number::from(self.rotation.clone()), ArithOp::Sub)
            .expect("shared radicand");
        let below = |b: &Number| x.partial_cmp(b) == Some(core::cmp::Ordering::Less);
        match self.partition {
            Partition::Noble if below(&half) => Letter::A,
            Partition::Noble if below(&one_minus) => Letter::B,
            Partition::Golden if below(&one_minus) => Letter::A,
            Partition::Golden if below(&half) => Letter::B,
            _ => Letter::C,
        }
    }

    fn boundaries(&self) -> [Number; 3] {
        [
            Number::rational(1, 2).expect("nonzero"),
            Number::integer(1)
                .arith(&Number::from(self.rotation.clone()), ArithOp::Sub)
                .expect("shared radicand"),
            self.induction.clone(),
        ]
    }
}

/// Streams the σ-fixed point starting with `seed`. Only the prefix read so
/// far is kept, and it is grown one image at a time.
#[derive(Clone, Debug)]
pub struct FixedPoint<'a> {
    sub: &'a Substitution,
    word: Vec<Letter>,
    expanded: usize,
    pos: usize,
}

impl<'a> FixedPoint<'a> {
    pub fn new(sub: &'a Substitution, seed: Letter) -> Result<FixedPoint<'a>> {
        let image = sub.image(seed);
        if image.first() != Some(&seed) || image.len() < 2 {
            return Err(Error::NotProlongable(seed.as_char()));
        }
        Ok(FixedPoint {
            sub,
            word: image.to_vec(),
            expanded: 1,
            pos: 0,
        })
    }
}

impl Iterator for FixedPoint<'_> {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        while self.pos >= self.word.len() {
            let letter = self.word[self.expanded];
            self.expanded += 1;
            self.word.extend_from_slice(self.sub.image(letter));
        }
        self.pos += 1;
        Some(self.word[self.pos - 1])
    }
}

/// First `len` letters of the fixed point of σ from `seed`.
pub fn fixed_point(sub: &Substitution, seed: Letter, len: usize) -> Result<Vec<Letter>> {
    Ok(FixedPoint::new(sub, seed)?.take(len).collect())
}

/// `(min, max, final)` over the prefix sums of the nonempty prefixes, with
/// each letter weighted by `signed`; `(0, 0, 0)` for the empty word.
pub fn running_sum_extrema(word: &[Letter], signed: [i8; 3]) -> (i64, i64, i64) {
    let mut sum = 0i64;
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for &l in word {
        sum += i64::from(signed[l.index()]);
        lo = lo.min(sum);
        hi = hi.max(sum);
    }
    if word.is_empty() {
        (0, 0, 0)
    } else {
        (lo, hi, sum)
    }
}

/// One sample of the first-return map to `[0, J)`.
#[derive(Clone, Debug)]
pub struct ReturnMapReport {
    pub point: Number,
    /// Letter of `x/J`, naming the sub-interval a′, b′ or c′.
    pub label: Letter,
    pub return_time: usize,
    pub itinerary: Vec<Letter>,
    pub image: Number,
}

/// `r·J` for `r = i/den`, `i = 1..=count`, with `den` the first odd number
/// above `count`. The only rational `r` whose orbit meets a partition
/// boundary is `1/2`, which an odd denominator avoids.
pub fn sample_points(sub: &Substitution, count: u64) -> Result<Vec<Number>> {
    let den = (count + 1) | 1;
    (1..=count)
        .map(|i| Number::rational(i, den)?.arith(&sub.induction, ArithOp::Mul))
        .collect()
}

/// The two-branch return map for `ξ_m`:
/// `x + (m²+1)ξ − m` below `(m+1) − (m²+m+1)ξ`, else `x + (m²+m+1)ξ − m − 1`.
pub fn return_formula(m: u64, xi: &QuadraticSurd, x: &Number) -> Result<Number> {
    let xi = Number::from(xi.clone());
    let times = |n: u64| Number::integer(n).arith(&xi, ArithOp::Mul);
    let short = m * m + 1;
    let long = m * m + m + 1;
    let cut = Number::integer(m + 1).arith(&times(long)?, ArithOp::Sub)?;
    let (t, shift) = if x.partial_cmp(&cut) == Some(core::cmp::Ordering::Less) {
        (short, m)
    } else {
        (long, m + 1)
    };
    x.arith(&times(t)?, ArithOp::Add)?
        .arith(&Number::integer(shift), ArithOp::Sub)
}

/// Iterates `x ↦ {x + ξ}` exactly from each point until it re-enters
/// `[0, J)`, then checks the itinerary against σ of the point's label and,
/// for noble substitutions, the landing point against [`return_formula`].
pub fn return_map_empirical(
    sub: &Substitution,
    points: &[Number],
    max_iter: usize,
) -> Result<Vec<ReturnMapReport>> {
    let xi = Number::from(sub.rotation.clone());
    let zero = Number::integer(0);
    let boundaries = sub.boundaries();
    let inside = |y: &Number| {
        y.partial_cmp(&zero) != Some(core::cmp::Ordering::Less)
            && y.partial_cmp(&sub.induction) == Some(core::cmp::Ordering::Less)
    };
    let mut out = Vec::with_capacity(points.len());
    for x in points {
        if !inside(x) {
            return Err(Error::OutOfRange(format!("{x} is outside [0, {})", sub.induction)));
        }
        let label = sub.letter_of(&x.arith(&sub.induction, ArithOp::Div)?);
        let mut y = x.clone();
        let mut itinerary = Vec::new();
        loop {
            if itinerary.len() >= max_iter {
                return Err(Error::NoReturn(max_iter));
            }
            itinerary.push(sub.letter_of(&y));
            y = y.arith(&xi, ArithOp::Add)?.fract();
            if boundaries.iter().any(|b| y.partial_cmp(b) == Some(core::cmp::Ordering::Equal)) {
                return Err(Error::BoundaryHit);
            }
            if inside(&y) {
                break;
            }
        }
        if itinerary != sub.image(label) {
            return Err(Error::CheckFailed {
                check: "itinerary",
                detail: format!(
                    "x={x}: itinerary {} but sigma({label}) = {}",
                    word_to_string(&itinerary),
                    word_to_string(sub.image(label))
                ),
            });
        }
        if sub.partition == Partition::Noble {
            let expected = return_formula(sub.m, &sub.rotation, x)?;
            if expected.partial_cmp(&y) != Some(core::cmp::Ordering::Equal) {
                return Err(Error::CheckFailed {
                    check: "return-formula",
                    detail: format!("x={x}: returned to {y}, formula gives {expected}"),
                });
            }
        }
        out.push(ReturnMapReport {
            point: x.clone(),
            label,
            return_time: itinerary.len(),
            itinerary,
            image: y,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(word: &[Letter]) -> String {
        word_to_string(word)
    }

    #[test]
    fn noble_two_words() {
        let sub = noble_substitution(2).unwrap();
        assert_eq!(s(sub.image(Letter::A)), "aacac");
        assert_eq!(s(sub.image(Letter::B)), "abcac");
        assert_eq!(s(sub.image(Letter::C)), "abcacac");
        assert_eq!(sub.encode(sub.image(Letter::A)), [1, 1, 0, 1, 0]);
    }

    #[test]
    fn noble_lengths() {
        for m in (2..=10).step_by(2) {
            let sub = noble_substitution(m).unwrap();
            let len = |l| sub.image(l).len() as u64;
            assert_eq!(len(Letter::A), m * m + 1);
            assert_eq!(len(Letter::B), m * m + 1);
            assert_eq!(len(Letter::C), m * m + m + 1);
        }
        assert_eq!(noble_substitution(3).unwrap_err(), Error::OddM(3));
    }

    #[test]
    fn golden_words() {
        let sub = golden_substitution();
        assert_eq!(s(sub.image(Letter::A)), "acacbacaccacb");
        assert_eq!(sub.image(Letter::A).len(), 13);
        assert_eq!(running_sum_extrema(sub.image(Letter::C), sub.signed()).0, -2);
        assert!(running_sum_extrema(sub.image(Letter::A), sub.signed()).0 >= 0);
        assert!(running_sum_extrema(sub.image(Letter::B), sub.signed()).0 >= 0);
    }

    #[test]
    fn running_sums() {
        let sub = noble_substitution(2).unwrap();
        assert_eq!(running_sum_extrema(sub.image(Letter::A), sub.signed()), (1, 2, 1));
        assert!(running_sum_extrema(sub.image(Letter::B), sub.signed()).0 >= -1);
        assert!(running_sum_extrema(sub.image(Letter::C), sub.signed()).0 >= -1);
        assert_eq!(running_sum_extrema(&[], [1, -1, -1]), (0, 0, 0));
    }

    #[test]
    fn fixed_point_prefixes() {
        let sub = noble_substitution(2).unwrap();
        let w = fixed_point(&sub, Letter::A, 200).unwrap();
        assert_eq!(sub.encode(&w[..5]), [1, 1, 0, 1, 0]);
        assert_eq!(w[..50], fixed_point(&sub, Letter::A, 50).unwrap()[..]);
        // σ(w) starts with w
        assert_eq!(sub.apply(&w)[..200], w[..]);
        assert_eq!(
            fixed_point(&sub, Letter::B, 3).unwrap_err(),
            Error::NotProlongable('b')
        );
    }

    #[test]
    fn return_map_from_zero() {
        let sub = noble_substitution(2).unwrap();
        let r = return_map_empirical(&sub, &[Number::integer(0)], 100).unwrap();
        assert_eq!(r[0].return_time, 5);
        assert_eq!(s(&r[0].itinerary), "aacac");
    }

    #[test]
    fn return_map_long_branch() {
        let sub = noble_substitution(2).unwrap();
        // 0.9·J lies in c′ = [(1−ξ)J, J).
        let x = Number::rational(9, 10).unwrap().arith(sub.induction_length(), ArithOp::Mul).unwrap();
        let r = return_map_empirical(&sub, &[x], 100).unwrap();
        assert_eq!(r[0].label, Letter::C);
        assert_eq!(r[0].return_time, 7);
    }

    #[test]
    fn return_map_failures() {
        let sub = noble_substitution(2).unwrap();
        assert_eq!(
            return_map_empirical(&sub, &[Number::integer(0)], 3).unwrap_err(),
            Error::NoReturn(3)
        );
        // J/2 = 1/2 − ξ reaches 1/2 after one step
        let half_j = Number::rational(1, 2).unwrap().arith(sub.induction_length(), ArithOp::Mul).unwrap();
        assert_eq!(
            return_map_empirical(&sub, &[half_j], 100).unwrap_err(),
            Error::BoundaryHit
        );
        assert!(return_map_empirical(&sub, &[Number::rational(1, 2).unwrap()], 100).is_err());
    }

    #[test]
    fn golden_return_map() {
        let sub = golden_substitution();
        let points = sample_points(&sub, 40).unwrap();
        let reports = return_map_empirical(&sub, &points, 100).unwrap();
        assert!(reports.iter().all(|r| [13, 21].contains(&r.return_time)));
    }
}
