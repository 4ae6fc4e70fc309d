//! Exact field elements.
//!
//! Two coefficient fields are supported: the rationals and prime fields
//! `F_p`. Rationals keep an `i64` fast path and only promote to big integers
//! when an intermediate result leaves that range, so the common case of small
//! structure constants never allocates.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which field a scalar (or a whole computation) lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScalarKind {
    Rational,
    Prime(u32),
}

impl ScalarKind {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(ScalarKind::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            ScalarKind::Rational => Scalar::Q(Rational::from_i64(v)),
            ScalarKind::Prime(p) => Scalar::F(Fp::new(v.rem_euclid(p as i64) as u32, p)),
        }
    }

    /// Maps a rational into this field. Fails when a denominator vanishes mod p.
    pub fn from_rational(self, q: &Rational) -> Result<Scalar> {
        match self {
            ScalarKind::Rational => Ok(Scalar::Q(q.clone())),
            ScalarKind::Prime(p) => {
                let (n, d) = q.to_big_parts();
                let pb = BigInt::from(p);
                let nm = n.mod_floor(&pb).to_u64().unwrap_or(0) as u32;
                let dm = d.mod_floor(&pb).to_u64().unwrap_or(0) as u32;
                if dm == 0 {
                    return Err(Error::Parse(format!(
                        "denominator of {q} vanishes modulo {p}"
                    )));
                }
                Ok(Scalar::F(Fp::new(nm, p).mul(Fp::new(dm, p).inv())))
            }
        }
    }

    /// Parses `"3"`, `"-2/5"` into this field.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let q: Rational = s.parse()?;
        self.from_rational(&q)
    }
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarKind::Rational => write!(f, "rational"),
            ScalarKind::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for ScalarKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" || s == "Q" {
            return Ok(ScalarKind::Rational);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime modulus in '{s}'")))?;
            return ScalarKind::prime(p);
        }
        Err(Error::Parse(format!(
            "unknown scalar kind '{s}' (expected 'rational' or 'fp:<p>')"
        )))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of `F_p`. The modulus travels with the value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u32,
    p: u32,
}

impl Fp {
    pub fn new(v: u32, p: u32) -> Self {
        Fp { v: v % p, p }
    }

    pub fn value(self) -> u32 {
        self.v
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    fn add(self, o: Fp) -> Fp {
        let s = self.v as u64 + o.v as u64;
        Fp { v: (s % self.p as u64) as u32, p: self.p }
    }

    fn neg(self) -> Fp {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }

    fn mul(self, o: Fp) -> Fp {
        Fp { v: ((self.v as u64 * o.v as u64) % self.p as u64) as u32, p: self.p }
    }

    fn inv(self) -> Fp {
        assert!(self.v != 0, "inverse of zero in F_{}", self.p);
        // Fermat
        let mut base = self.v as u64;
        let mut e = self.p as u64 - 2;
        let m = self.p as u64;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        Fp { v: acc as u32, p: self.p }
    }
}

/// Exact rational number, always in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in `i64` are stored inline;
/// everything else is boxed. The representation is canonical, so derived
/// equality and hashing are value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rational {
    pub fn from_i64(v: i64) -> Self {
        Rational::Small(v, 1)
    }

    pub fn new(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Self::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Self {
        let (mut n, mut d) = (n, d);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn to_big_parts(&self) -> (BigInt, BigInt) {
        let b = self.to_big();
        (b.numer().clone(), b.denom().clone())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    fn add(&self, o: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                return Self::from_i128(a + c, b);
            }
            if let (Some(x), Some(y), Some(den)) =
                (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d))
            {
                if let Some(num) = x.checked_add(y) {
                    return Self::from_i128(num, den);
                }
            }
        }
        Self::from_big(self.to_big() + o.to_big())
    }

    fn mul(&self, o: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, o) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            return Self::from_i128(a * c, b * d);
        }
        Self::from_big(self.to_big() * o.to_big())
    }

    fn neg(&self) -> Rational {
        match self {
            Rational::Small(n, d) if *n != i64::MIN => Rational::Small(-n, *d),
            _ => Self::from_big(-self.to_big()),
        }
    }

    fn inv(&self) -> Rational {
        assert!(!self.is_zero(), "inverse of zero rational");
        match self {
            Rational::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Rational::Big(b) => Self::from_big(b.recip()),
        }
    }

    fn cmp_value(&self, o: &Rational) -> Ordering {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not an exact rational: '{s}'"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Self::from_big(BigRational::new(n, d)))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

/// An exact scalar in one of the supported fields.
///
/// Arithmetic between scalars of different kinds is a programming error and
/// panics; every public entry point checks kinds before computing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    F(Fp),
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Q(_) => ScalarKind::Rational,
            Scalar::F(x) => ScalarKind::Prime(x.p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::F(x) => x.v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => matches!(q, Rational::Small(1, 1)),
            Scalar::F(x) => x.v == 1,
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(q.inv()),
            Scalar::F(x) => Scalar::F(x.inv()),
        }
    }

    /// `self + a * b`, the workhorse of elimination.
    pub fn add_mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Scalar::F(s), Scalar::F(x), Scalar::F(y)) => {
                let m = s.p as u64;
                Scalar::F(Fp { v: ((s.v as u64 + x.v as u64 * y.v as u64) % m) as u32, p: s.p })
            }
            _ => self + &(a * b),
        }
    }

    pub fn sign(negative: bool, kind: ScalarKind) -> Scalar {
        if negative {
            kind.from_i64(-1)
        } else {
            kind.one()
        }
    }

    /// Sign `(-1)^e` for an integer exponent.
    pub fn parity(e: i64, kind: ScalarKind) -> Scalar {
        Self::sign(e.rem_euclid(2) == 1, kind)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::F(_) => None,
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Scalar::Q(q) => q.cmp_value(&Rational::from_i64(0)) == Ordering::Greater,
            Scalar::F(x) => x.v != 0,
        }
    }

    pub fn abs_height(&self) -> u64 {
        match self {
            Scalar::Q(Rational::Small(n, d)) => n.unsigned_abs().max(d.unsigned_abs()),
            Scalar::Q(Rational::Big(_)) => u64::MAX,
            Scalar::F(x) => x.v as u64,
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar kind mismatch: {} vs {}", a.kind(), b.kind())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::F(a), Scalar::F(b)) if a.p == b.p => Scalar::F(a.add(*b)),
            _ => mismatch(self, o),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::F(a), Scalar::F(b)) if a.p == b.p => Scalar::F(a.mul(*b)),
            _ => mismatch(self, o),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::F(a) => Scalar::F(a.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::F(x) => write!(f, "{}", x.v),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Q(Rational::new(n, d))
    }

    #[test]
    fn rational_normal_form() {
        assert_eq!(Rational::new(2, -4), Rational::new(-1, 2));
        assert_eq!(Rational::new(0, 7), Rational::from_i64(0));
        assert_eq!("6/4".parse::<Rational>().unwrap(), Rational::new(3, 2));
        assert_eq!(Rational::new(-3, 2).to_string(), "-3/2");
    }

    #[test]
    fn promotes_and_demotes_big_values() {
        let big = q(i64::MAX, 1);
        let sq = &big * &big;
        assert!(matches!(sq, Scalar::Q(Rational::Big(_))));
        let back = &sq * &big.inv();
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Q(Rational::Small(..))));
    }

    #[test]
    fn prime_field_arithmetic() {
        let k = ScalarKind::prime(7).unwrap();
        let a = k.from_i64(3);
        assert_eq!(&a * &a.inv(), k.one());
        assert_eq!(&a + &k.from_i64(4), k.zero());
        assert_eq!(k.parse("1/2").unwrap(), k.from_i64(4));
        assert!(ScalarKind::prime(9).is_err());
        assert!(k.parse("1/7").is_err());
    }

    #[test]
    fn parses_kinds() {
        assert_eq!("rational".parse::<ScalarKind>().unwrap(), ScalarKind::Rational);
        assert_eq!("fp:5".parse::<ScalarKind>().unwrap(), ScalarKind::Prime(5));
        assert!("fp:6".parse::<ScalarKind>().is_err());
    }

    #[test]
    #[should_panic(expected = "scalar kind mismatch")]
    fn mixing_kinds_panics() {
        let _ = &q(1, 2) + &ScalarKind::Prime(3).one();
    }

    proptest! {
        #[test]
        fn add_then_subtract_is_exact(a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX) {
            let x = q(a, b);
            let y = q(c, d);
            prop_assert_eq!(&(&x + &y) - &y, x);
        }

        #[test]
        fn fp_distributes(a in 0u32..101, b in 0u32..101, c in 0u32..101) {
            let k = ScalarKind::Prime(101);
            let (a, b, c) = (k.from_i64(a as i64), k.from_i64(b as i64), k.from_i64(c as i64));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }
    }
}
