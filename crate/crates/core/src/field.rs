//! Exact scalars: arbitrary-precision rationals and elements of a real
//! quadratic field `Q(sqrt(m))`.
//!
//! A [`Scalar`] is either a plain rational or a pair `a + b*sqrt(m)` of
//! rationals tagged with its radicand. Rationals combine freely with any
//! quadratic field; combining two quadratic scalars with different radicands
//! is a [`FieldError::FieldMismatch`].
//!
//! The operator impls (`+`, `-`, `*`, `/`) panic on a field mismatch or a
//! division by zero, the same way slice indexing panics on a bad index. Use
//! the `try_*` methods when the operands come from untrusted input.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot combine scalars from Q(sqrt({0})) and Q(sqrt({1}))")]
    FieldMismatch(u32, u32),
    #[error("radicand {0} is not a square-free integer greater than 1")]
    BadRadicand(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// The field a scalar (or a whole matrix) lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    #[default]
    Rational,
    Quadratic(u32),
}

impl Field {
    /// Smallest field containing both operands.
    pub fn join(self, other: Field) -> Result<Field, FieldError> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Ok(f),
            (Field::Quadratic(m), Field::Quadratic(k)) if m == k => Ok(self),
            (Field::Quadratic(m), Field::Quadratic(k)) => Err(FieldError::FieldMismatch(m, k)),
        }
    }

    pub fn radicand(self) -> Option<u32> {
        match self {
            Field::Rational => None,
            Field::Quadratic(m) => Some(m),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Quadratic(m) => write!(f, "Q(sqrt({m}))"),
        }
    }
}

/// Exact element of a characteristic-zero field.
#[derive(Debug, Clone)]
pub enum Scalar {
    Rational(BigRational),
    /// `a + b*sqrt(m)`, `m` square-free and at least 2.
    Quadratic {
        a: BigRational,
        b: BigRational,
        m: u32,
    },
}

pub fn is_square_free(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a rational; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn quadratic(a: BigRational, b: BigRational, m: u64) -> Result<Self, FieldError> {
        if !is_square_free(m) || m > u32::MAX as u64 {
            return Err(FieldError::BadRadicand(m));
        }
        Ok(Scalar::Quadratic { a, b, m: m as u32 })
    }

    /// `sqrt(m)` itself.
    pub fn sqrt(m: u64) -> Result<Self, FieldError> {
        Scalar::quadratic(BigRational::zero(), BigRational::one(), m)
    }

    /// Zero of the given field, carrying its tag.
    pub fn zero_in(field: Field) -> Self {
        match field {
            Field::Rational => Scalar::zero(),
            Field::Quadratic(m) => Scalar::Quadratic {
                a: BigRational::zero(),
                b: BigRational::zero(),
                m,
            },
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Quadratic { m, .. } => Field::Quadratic(*m),
        }
    }

    /// Rational part and `sqrt(m)` coefficient.
    pub fn parts(&self) -> (BigRational, BigRational) {
        match self {
            Scalar::Rational(q) => (q.clone(), BigRational::zero()),
            Scalar::Quadratic { a, b, .. } => (a.clone(), b.clone()),
        }
    }

    /// The value as a rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Quadratic { a, b, .. } if b.is_zero() => Some(a.clone()),
            Scalar::Quadratic { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Quadratic { a, b, .. } => a.is_zero() && b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Quadratic { a, b, .. } => a.is_one() && b.is_zero(),
        }
    }

    /// Galois conjugate `a - b*sqrt(m)`; identity on rationals.
    pub fn conjugate(&self) -> Self {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Quadratic { a, b, m } => Scalar::Quadratic {
                a: a.clone(),
                b: -b,
                m: *m,
            },
        }
    }

    /// Field norm `a^2 - m*b^2`.
    pub fn norm(&self) -> BigRational {
        match self {
            Scalar::Rational(q) => q * q,
            Scalar::Quadratic { a, b, m } => a * a - b * b * BigRational::from_integer((*m).into()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (a, b) = self.parts();
        let a = a.to_f64().unwrap_or(f64::NAN);
        match self {
            Scalar::Rational(_) => a,
            Scalar::Quadratic { m, .. } => a + b.to_f64().unwrap_or(f64::NAN) * (*m as f64).sqrt(),
        }
    }

    fn with_parts(field: Field, a: BigRational, b: BigRational) -> Self {
        match field {
            Field::Rational => Scalar::Rational(a),
            Field::Quadratic(m) => Scalar::Quadratic { a, b, m },
        }
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        let field = self.field().join(rhs.field())?;
        let (a, b) = self.parts();
        let (c, d) = rhs.parts();
        Ok(Scalar::with_parts(field, a + c, b + d))
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        let field = self.field().join(rhs.field())?;
        let (a, b) = self.parts();
        let (c, d) = rhs.parts();
        Ok(Scalar::with_parts(field, a - c, b - d))
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        let field = self.field().join(rhs.field())?;
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (self, rhs) {
            return Ok(Scalar::Rational(x * y));
        }
        let m = BigRational::from_integer(field.radicand().unwrap_or(0).into());
        let (a, b) = self.parts();
        let (c, d) = rhs.parts();
        Ok(Scalar::with_parts(field, &a * &c + &b * &d * m, a * d + b * c))
    }

    pub fn try_inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self {
            Scalar::Rational(q) => Ok(Scalar::Rational(q.recip())),
            Scalar::Quadratic { a, b, m } => {
                let n = self.norm();
                Ok(Scalar::Quadratic {
                    a: a / &n,
                    b: -b / &n,
                    m: *m,
                })
            }
        }
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar, FieldError> {
        self.field().join(rhs.field())?;
        self.try_mul(&rhs.try_inv()?)
    }

    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("inverse of zero scalar")
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Rational(q)
    }
}

/// Value equality: a quadratic scalar with zero irrational part equals the
/// rational with the same value, whatever its radicand.
impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.parts();
        let (c, d) = other.parts();
        if a != c || b != d {
            return false;
        }
        b.is_zero() || self.field() == other.field()
    }
}

impl Eq for Scalar {}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match self.$try(rhs) {
                    Ok(x) => x,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Quadratic { a, b, m } => Scalar::Quadratic {
                a: -a,
                b: -b,
                m: *m,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// `p`, `p/q`, or `p/q+r/s*sqrt(m)` (the irrational coefficient keeps its own
/// sign, so negative ones render as `+-r/s`).
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Quadratic { a, b, m } => write!(f, "{a}+{b}*sqrt({m})"),
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() || s.starts_with(['+', '-']) && s[1..].starts_with(['+', '-']) {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Splits `"x+y"` / `"x-y"` at the sign that separates two rationals.
fn split_terms(s: &str) -> Option<(&str, &str)> {
    let bytes = s.as_bytes();
    (1..bytes.len())
        .find(|&i| matches!(bytes[i], b'+' | b'-') && bytes[i - 1].is_ascii_digit())
        .map(|i| (&s[..i], &s[i..]))
}

impl FromStr for Scalar {
    type Err = FieldError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || FieldError::Parse(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(idx) = s.find("sqrt(") else {
            return parse_rational(&s).map(Scalar::Rational).ok_or_else(err);
        };
        let inner = s[idx + 5..].strip_suffix(')').ok_or_else(err)?;
        let m: u64 = inner.parse().map_err(|_| err())?;
        let prefix = &s[..idx];
        let (rational, coeff) = match prefix.strip_suffix('*') {
            Some(body) => match split_terms(body) {
                Some((a, b)) => (a, b),
                None => ("0", body),
            },
            None => match prefix {
                "" | "+" => ("0", "1"),
                "-" => ("0", "-1"),
                p if p.ends_with('+') => (&p[..p.len() - 1], "1"),
                p if p.ends_with('-') => (&p[..p.len() - 1], "-1"),
                _ => return Err(err()),
            },
        };
        let a = parse_rational(rational).ok_or_else(err)?;
        let b = parse_rational(coeff).ok_or_else(err)?;
        Scalar::quadratic(a, b, m)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
