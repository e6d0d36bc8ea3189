//! Exact field elements.
//!
//! A [`Scalar`] is either an arbitrary-precision rational or a residue modulo
//! a prime. Rationals are always stored reduced with a positive denominator
//! (guaranteed by `num-rational`), so equality is structural.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The field a computation takes place in.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Prime field of order `p`. Moduli are capped at 2^32 so products fit in a `u64`.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn ensure_same(self, other: Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self, other))
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        match s.strip_prefix("Fp:") {
            Some(p) => {
                let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad prime in field tag {s:?}")))?;
                Field::prime(p)
            }
            None => Err(Error::Parse(format!("unknown field tag {s:?} (expected \"Q\" or \"Fp:<p>\")"))),
        }
    }
}

/// An exact element of a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, p: u64 },
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Residue { value: 0, p },
        }
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_int(field, 1)
    }

    pub fn from_int(field: Field, v: i64) -> Scalar {
        match field {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Residue { value: (v as i128).rem_euclid(p as i128) as u64, p },
        }
    }

    /// `num / den` in the given field. Panics if `den` vanishes in the field.
    pub fn from_ratio(field: Field, num: i64, den: i64) -> Scalar {
        Scalar::from_int(field, num) / Scalar::from_int(field, den)
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, p } => Scalar::Residue { value: pow_mod(*value, p - 2, *p), p: *p },
        })
    }

    /// `self -= a * b`, the elimination kernel.
    pub fn sub_mul_assign(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        match (self, a, b) {
            (Scalar::Rational(s), Scalar::Rational(a), Scalar::Rational(b)) => {
                *s -= a * b;
            }
            (Scalar::Residue { value, p }, Scalar::Residue { value: a, .. }, Scalar::Residue { value: b, .. }) => {
                let prod = a * b % *p;
                *value = (*value + *p - prod) % *p;
            }
            (s, a, b) => panic!("field mismatch in scalar arithmetic: {} / {} / {}", s.field(), a.field(), b.field()),
        }
    }

    /// Parse an integer (`"-3"`) or fraction (`"3/7"`) into `field`.
    pub fn parse(field: Field, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let parse_int = |t: &str| BigInt::from_str(t).map_err(|_| Error::Parse(format!("invalid number {s:?}")));
        let num = parse_int(num)?;
        let den = match den {
            Some(d) => parse_int(d)?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        match field {
            Field::Rationals => Ok(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let reduce = |v: &BigInt| {
                    let m = BigInt::from(p);
                    let r = ((v % &m) + &m) % &m;
                    u64::try_from(r).expect("residue fits in u64")
                };
                let d = reduce(&den);
                if d == 0 {
                    return Err(Error::Parse(format!("denominator of {s:?} vanishes mod {p}")));
                }
                let n = Scalar::Residue { value: reduce(&num), p };
                Ok(n / Scalar::Residue { value: d, p })
            }
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $res:expr) => {
        #[allow(clippy::suspicious_arithmetic_impl)]
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($rat(a, b)),
                    (Scalar::Residue { value: a, p }, Scalar::Residue { value: b, p: q }) if p == q => {
                        Scalar::Residue { value: $res(*a, *b, *p), p: *p }
                    }
                    (a, b) => panic!("field mismatch in scalar arithmetic: {} vs {}", a.field(), b.field()),
                }
            }
        }

        impl $trait for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b| a + b, |a, b, p| (a + b) % p);
binop!(Sub, sub, |a: &BigRational, b| a - b, |a, b, p| (a + p - b) % p);
binop!(Mul, mul, |a: &BigRational, b| a * b, |a, b, p| a * b % p);
binop!(
    Div,
    div,
    |a: &BigRational, b: &BigRational| {
        assert!(!b.is_zero(), "division by zero");
        a / b
    },
    |a, b, p| {
        assert!(b != 0, "division by zero");
        a * pow_mod(b, p - 2, p) % p
    }
);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, p } => Scalar::Residue { value: (p - value) % p, p: *p },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl Scalar {
    /// Absolute size of a rational's numerator and denominator in bits; 0 for residues.
    pub fn bit_size(&self) -> u64 {
        match self {
            Scalar::Rational(r) => r.numer().abs().bits() + r.denom().bits(),
            Scalar::Residue { .. } => 0,
        }
    }
}
