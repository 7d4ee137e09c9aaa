//! Exact field elements: arbitrary-precision rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted for prime fields.
pub const MAX_PRIME: u64 = 1 << 31;

/// Default prime used by randomized suites.
pub const DEFAULT_PRIME: u32 = 32003;

/// The ground field of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Field {
    Rational,
    Prime { p: u32 },
}

impl Field {
    /// Builds the prime field with `p` elements, checking primality.
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::Spec(format!("{p} is not a supported prime modulus")));
        }
        Ok(Field::Prime { p: p as u32 })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime { p } => *p as u64,
        }
    }

    /// True when the characteristic divides `k` (never for characteristic zero).
    pub fn char_divides(&self, k: u64) -> bool {
        match self {
            Field::Rational => false,
            Field::Prime { p } => k % (*p as u64) == 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime { p } => {
                let m = *p as i64;
                Scalar::Prime { value: v.rem_euclid(m) as u32, modulus: *p }
            }
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime { p } => {
                let m = BigInt::from(*p);
                let r = v.mod_floor(&m);
                Scalar::Prime { value: r.to_u32().unwrap_or(0), modulus: *p }
            }
        }
    }

    /// The quotient `num / den` in this field; fails when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::Parse {
                position: 0,
                message: format!("division by {den}, which is zero in the field"),
            });
        }
        Ok(&self.from_bigint(num) / &d)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime { p } => write!(f, "ZZ/{p}"),
        }
    }
}

/// Deterministic primality test for 64-bit inputs below `MAX_PRIME`.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Rationals are kept in lowest terms with positive denominator
/// (guaranteed by `BigRational`), residues in `[0, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime { p: *modulus },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero, which callers rule out beforehand.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                Scalar::Rational(r.recip())
            }
            Scalar::Prime { value, modulus } => {
                assert!(*value != 0, "inverse of zero");
                Scalar::Prime { value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32, modulus: *modulus }
            }
        }
    }

    /// Signed integer representative when the value is integral
    /// (residues use the symmetric range).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    r.to_integer().to_i64()
                } else {
                    None
                }
            }
            Scalar::Prime { .. } => Some(self.symmetric()),
        }
    }

    fn symmetric(&self) -> i64 {
        match self {
            Scalar::Prime { value, modulus } => {
                let v = *value as i64;
                let m = *modulus as i64;
                if v > m / 2 {
                    v - m
                } else {
                    v
                }
            }
            Scalar::Rational(_) => unreachable!(),
        }
    }

    /// True when the value prints with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Prime { .. } => self.symmetric() < 0,
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mismatch() -> ! {
    panic!("scalar field mismatch")
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus: m }, Scalar::Prime { value: b, modulus: m2 }) if m == m2 => {
                let s = *a as u64 + *b as u64;
                let m64 = *m as u64;
                Scalar::Prime { value: if s >= m64 { (s - m64) as u32 } else { s as u32 }, modulus: *m }
            }
            _ => mismatch(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Prime { value: a, modulus: m }, Scalar::Prime { value: b, modulus: m2 }) if m == m2 => {
                let v = if a >= b { a - b } else { m - (b - a) };
                Scalar::Prime { value: v, modulus: *m }
            }
            _ => mismatch(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus: m }, Scalar::Prime { value: b, modulus: m2 }) if m == m2 => {
                Scalar::Prime { value: (*a as u64 * *b as u64 % *m as u64) as u32, modulus: *m }
            }
            _ => mismatch(),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => {
                Scalar::Prime { value: if *value == 0 { 0 } else { modulus - value }, modulus: *modulus }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { .. } => write!(f, "{}", self.symmetric()),
        }
    }
}
