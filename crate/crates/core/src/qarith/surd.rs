use alloc::format;
use alloc::string::ToString;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A real quadratic irrational `(a + b·√d)/c`.
///
/// Always normalized: `d` is squarefree and greater than one, `c > 0`,
/// `b ≠ 0` and `gcd(a, b, c) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: u64,
}

/// A rational number `num/den` in lowest terms with `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

/// Result of surd arithmetic: either a rational or an irrational surd.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Number {
    Rational(Rational),
    Irrational(QuadraticSurd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Splits `d` into `s²·r` with `r` squarefree and returns `(s, r)`.
fn squarefree_split(mut d: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= d {
        let pp = p * p;
        while d % pp == 0 {
            d /= pp;
            s *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (s, d)
}

/// `⌊b·√d⌋` for a non-square `d`.
fn floor_b_sqrt_d(b: &BigInt, d: u64) -> BigInt {
    let r = (b * b * BigInt::from(d)).sqrt();
    if b.is_negative() {
        -r - 1
    } else {
        r
    }
}

/// Sign of `a + b√d` for non-square `d`.
fn sign_of(a: &BigInt, b: &BigInt, d: u64) -> Ordering {
    if b.is_zero() {
        return a.cmp(&BigInt::zero());
    }
    let a_sq = a * a;
    let b_sq_d = b * b * BigInt::from(d);
    match (a.sign(), b.sign()) {
        (Sign::Minus, Sign::Minus) | (Sign::NoSign, Sign::Minus) => Ordering::Less,
        (Sign::Plus, Sign::Plus) | (Sign::NoSign, Sign::Plus) => Ordering::Greater,
        (Sign::Plus, Sign::Minus) => a_sq.cmp(&b_sq_d),
        (Sign::Minus, Sign::Plus) => b_sq_d.cmp(&a_sq),
        (_, Sign::NoSign) => unreachable!(),
    }
}

impl QuadraticSurd {
    /// Builds `(a + b√d)/c`, pulling square factors out of `d` and reducing.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        d: u64,
        c: impl Into<BigInt>,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::BadRadicand(d));
        }
        let (s, r) = squarefree_split(d);
        let a = a.into();
        let b = b.into() * BigInt::from(s);
        let c = c.into();
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if r == 1 || b.is_zero() {
            return Err(Error::NotIrrational);
        }
        Ok(Self::normalized(a, b, c, r))
    }

    /// `√d` for a positive integer `d`.
    pub fn sqrt(d: u64) -> Result<Self> {
        Self::new(0, 1, d, 1)
    }

    fn normalized(mut a: BigInt, mut b: BigInt, mut c: BigInt, d: u64) -> Self {
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        QuadraticSurd { a, b, c, d }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_positive(&self) -> bool {
        sign_of(&self.a, &self.b, self.d) == Ordering::Greater
    }

    /// Exact `⌊self⌋`.
    pub fn floor(&self) -> BigInt {
        let num = &self.a + floor_b_sqrt_d(&self.b, self.d);
        num.div_floor(&self.c)
    }

    /// Exact `⌊j·self⌋` via an integer square root of `j²b²d`.
    pub fn floor_mul(&self, j: &BigInt) -> BigInt {
        if j.is_zero() {
            return BigInt::zero();
        }
        let num = j * &self.a + floor_b_sqrt_d(&(j * &self.b), self.d);
        num.div_floor(&self.c)
    }

    /// Fractional part `self − ⌊self⌋`, in `(0, 1)`.
    pub fn fract(&self) -> QuadraticSurd {
        let f = self.floor();
        Self::normalized(&self.a - f * &self.c, self.b.clone(), self.c.clone(), self.d)
    }

    pub fn neg(&self) -> QuadraticSurd {
        QuadraticSurd {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d,
        }
    }

    /// Algebraic conjugate `(a − b√d)/c`.
    pub fn conjugate(&self) -> QuadraticSurd {
        QuadraticSurd {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: self.d,
        }
    }

    /// `self · n / m` for integers `n ≠ 0`, `m ≠ 0`.
    pub fn scale(&self, n: impl Into<BigInt>, m: impl Into<BigInt>) -> Result<QuadraticSurd> {
        let n = n.into();
        let m = m.into();
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if n.is_zero() {
            return Err(Error::NotIrrational);
        }
        Ok(Self::normalized(&self.a * &n, &self.b * &n, &self.c * m, self.d))
    }

    /// `self + n` for an integer `n`.
    pub fn add_int(&self, n: impl Into<BigInt>) -> QuadraticSurd {
        Self::normalized(
            &self.a + n.into() * &self.c,
            self.b.clone(),
            self.c.clone(),
            self.d,
        )
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}*sqrt({}))/{}",
            self.a,
            op,
            self.b.abs(),
            self.d,
            self.c
        )
    }
}

impl fmt::Debug for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for QuadraticSurd {
    /// Surds with different radicands are not compared.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Number::from(self.clone()).partial_cmp(&Number::from(other.clone()))
    }
}

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let mut num = num.into();
        let mut den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if !g.is_one() && !g.is_zero() {
            num /= &g;
            den /= &g;
        }
        Ok(Rational { num, den })
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Unnormalized `(a + b√d)/c`; `d = 0` marks a rational with no radicand yet.
struct Raw {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: u64,
}

impl Number {
    pub fn integer(n: impl Into<BigInt>) -> Number {
        Number::Rational(Rational {
            num: n.into(),
            den: BigInt::one(),
        })
    }

    pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Number> {
        Rational::new(num, den).map(Number::Rational)
    }

    fn raw(&self) -> Raw {
        match self {
            Number::Rational(r) => Raw {
                a: r.num.clone(),
                b: BigInt::zero(),
                c: r.den.clone(),
                d: 0,
            },
            Number::Irrational(s) => Raw {
                a: s.a.clone(),
                b: s.b.clone(),
                c: s.c.clone(),
                d: s.d,
            },
        }
    }

    fn from_raw(raw: Raw) -> Number {
        if raw.b.is_zero() || raw.d == 0 {
            let r = Rational::new(raw.a, raw.c).expect("denominator is nonzero");
            Number::Rational(r)
        } else {
            Number::Irrational(QuadraticSurd::normalized(raw.a, raw.b, raw.c, raw.d))
        }
    }

    /// The radicand of the value, `None` for rationals.
    pub fn radicand(&self) -> Option<u64> {
        match self {
            Number::Rational(_) => None,
            Number::Irrational(s) => Some(s.d),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Number::Rational(_))
    }

    pub fn as_surd(&self) -> Option<&QuadraticSurd> {
        match self {
            Number::Irrational(s) => Some(s),
            Number::Rational(_) => None,
        }
    }

    fn common_radicand(x: &Raw, y: &Raw) -> Result<u64> {
        match (x.d, y.d) {
            (0, d) | (d, 0) => Ok(d),
            (dx, dy) if dx == dy => Ok(dx),
            (dx, dy) => Err(Error::MixedRadicand(dx, dy)),
        }
    }

    pub fn arith(&self, other: &Number, op: ArithOp) -> Result<Number> {
        let x = self.raw();
        let y = other.raw();
        let d = Self::common_radicand(&x, &y)?;
        let dd = BigInt::from(d);
        let raw = match op {
            ArithOp::Add | ArithOp::Sub => {
                let (ya, yb) = if op == ArithOp::Sub {
                    (-&y.a, -&y.b)
                } else {
                    (y.a.clone(), y.b.clone())
                };
                Raw {
                    a: &x.a * &y.c + ya * &x.c,
                    b: &x.b * &y.c + yb * &x.c,
                    c: &x.c * &y.c,
                    d,
                }
            }
            ArithOp::Mul => Raw {
                a: &x.a * &y.a + &x.b * &y.b * &dd,
                b: &x.a * &y.b + &x.b * &y.a,
                c: &x.c * &y.c,
                d,
            },
            ArithOp::Div => {
                let norm = &y.a * &y.a - &y.b * &y.b * &dd;
                if norm.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Raw {
                    a: (&x.a * &y.a - &x.b * &y.b * &dd) * &y.c,
                    b: (&x.b * &y.a - &x.a * &y.b) * &y.c,
                    c: &x.c * norm,
                    d,
                }
            }
        };
        Ok(Number::from_raw(raw))
    }

    pub fn sign(&self) -> Ordering {
        match self {
            Number::Rational(r) => r.num.cmp(&BigInt::zero()),
            Number::Irrational(s) => sign_of(&s.a, &s.b, s.d),
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        match self {
            Number::Rational(r) => r.num.div_floor(&r.den),
            Number::Irrational(s) => s.floor(),
        }
    }

    /// `self − ⌊self⌋`.
    pub fn fract(&self) -> Number {
        let f = Number::integer(self.floor());
        self.arith(&f, ArithOp::Sub).expect("integers share any radicand")
    }
}

impl From<QuadraticSurd> for Number {
    fn from(s: QuadraticSurd) -> Self {
        Number::Irrational(s)
    }
}

impl From<Rational> for Number {
    fn from(r: Rational) -> Self {
        Number::Rational(r)
    }
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Number::Rational(r) => r.fmt(f),
            Number::Irrational(s) => s.fmt(f),
        }
    }
}

impl PartialOrd for Number {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.arith(other, ArithOp::Sub).ok().map(|d| d.sign())
    }
}

/// Exact `⌊j·ξ⌋`.
pub fn floor_scaled(j: u64, xi: &QuadraticSurd) -> BigInt {
    xi.floor_mul(&BigInt::from(j))
}

/// `x op y` on surds or rationals sharing a radicand.
pub fn surd_arith(x: &Number, y: &Number, op: ArithOp) -> Result<Number> {
    x.arith(y, op)
}

impl FromStr for QuadraticSurd {
    type Err = Error;

    /// Accepts `(a+b*sqrt(d))/c` (signs and spacing are flexible, `b*`, `a+`
    /// and `/c` may be omitted) and the names `sqrt2`, `2sqrt2`, `sqrt2m1`,
    /// `silver`, `golden`, `sqrt3`, `sqrt3over2` and `xi<m>` for the
    /// adjusted noble mean `[0; m, m, …]`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: alloc::string::String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(named) = named_surd(&compact) {
            return named;
        }
        parse_literal(&compact).ok_or_else(|| Error::Parse(s.to_string()))?
    }
}

fn named_surd(name: &str) -> Option<Result<QuadraticSurd>> {
    let v = match name {
        "sqrt2" => QuadraticSurd::new(0, 1, 2, 1),
        "2sqrt2" => QuadraticSurd::new(0, 2, 2, 1),
        "sqrt2m1" => QuadraticSurd::new(-1, 1, 2, 1),
        "silver" => QuadraticSurd::new(1, 1, 2, 1),
        "golden" => QuadraticSurd::new(1, 1, 5, 2),
        "sqrt3" => QuadraticSurd::new(0, 1, 3, 1),
        "sqrt3over2" => QuadraticSurd::new(0, 1, 3, 2),
        _ => {
            let m: u64 = name.strip_prefix("xi")?.parse().ok()?;
            return Some(noble_mean_adjusted(m));
        }
    };
    Some(v)
}

/// `ξ_m = (√(m²+4) − m)/2 = [0; m, m, …]`.
pub fn noble_mean_adjusted(m: u64) -> Result<QuadraticSurd> {
    if m == 0 {
        return Err(Error::OutOfRange(format!("noble mean index {m}")));
    }
    QuadraticSurd::new(-BigInt::from(m), 1, m * m + 4, 2)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('+').unwrap_or(s);
    if digits.is_empty() {
        return None;
    }
    BigInt::parse_bytes(digits.as_bytes(), 10)
}

fn parse_literal(s: &str) -> Option<Result<QuadraticSurd>> {
    // Split off an optional trailing "/c" that follows a closing parenthesis
    // or the radical itself.
    let (numer, c) = match s.rfind('/') {
        Some(i) if s[..i].ends_with(')') => (&s[..i], parse_int(&s[i + 1..])?),
        Some(_) => return None,
        None => (s, BigInt::one()),
    };
    let numer = match numer.strip_prefix('(') {
        Some(inner) if inner.ends_with("))") => &inner[..inner.len() - 1],
        _ => numer,
    };
    let at = numer.find("sqrt(")?;
    let radicand_part = numer[at + 5..].strip_suffix(')')?;
    let d: u64 = radicand_part.parse().ok()?;
    let head = &numer[..at];
    let head = head.strip_suffix('*').unwrap_or(head);
    // head is "", "-", "b", "-b", "a+", "a-", "a+b", "a-b", ...
    let split = head
        .char_indices()
        .skip(1)
        .filter(|(_, ch)| *ch == '+' || *ch == '-')
        .map(|(i, _)| i)
        .last();
    let (a_text, b_text) = match split {
        Some(i) => (&head[..i], &head[i..]),
        None => ("0", head),
    };
    let a = parse_int(a_text)?;
    let b = match b_text {
        "" | "+" => BigInt::one(),
        "-" => -BigInt::one(),
        t => parse_int(t)?,
    };
    Some(QuadraticSurd::new(a, b, d, c))
}
