//! Scalar arithmetic underlying every digit decision.
//!
//! The canonical representation is an arbitrary-precision rational kept in
//! lowest terms, so equality of orbit states and comparisons against interval
//! cuts are decided exactly. An alternative float mode (an `f64` plus a
//! comparison tolerance) exists for bases that have no rational
//! representation; there every three-way comparison whose operands differ by
//! less than the tolerance is reported as [`Cmp::Ambiguous`] instead of being
//! silently resolved, and callers decide what ambiguity means for them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Mantissa width of the float mode backend (`f64`).
pub const FLOAT_PRECISION_BITS: u32 = f64::MANTISSA_DIGITS;

/// Comparison tolerance used by [`Mode::float_default`].
pub const DEFAULT_EPSILON: f64 = 1e-12;

/// Arithmetic mode a computation runs in. Every scalar participating in one
/// computation must share the same mode; mixing modes is an error, never a
/// coercion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    /// Arbitrary-precision rational arithmetic; all comparisons are exact.
    Exact,
    /// `f64` arithmetic; comparisons within `epsilon` are ambiguous.
    Float { epsilon: f64 },
}

impl Mode {
    /// Float mode with the default tolerance.
    pub fn float_default() -> Self {
        Mode::Float {
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Mode::Exact)
    }
}

/// Outcome of a three-way comparison. `Ambiguous` only occurs in float mode,
/// when the operands differ by less than the tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Less,
    Equal,
    Greater,
    Ambiguous,
}

impl Cmp {
    /// True when the comparison allows `left <= right` within working
    /// precision (an ambiguous comparison cannot refute a non-strict
    /// inequality).
    pub fn permits_le(self) -> bool {
        !matches!(self, Cmp::Greater)
    }

    /// True when the comparison allows `left >= right` within working
    /// precision.
    pub fn permits_ge(self) -> bool {
        !matches!(self, Cmp::Less)
    }
}

impl From<Ordering> for Cmp {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Cmp::Less,
            Ordering::Equal => Cmp::Equal,
            Ordering::Greater => Cmp::Greater,
        }
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Exact(BigRational),
    Float { value: f64, epsilon: f64 },
}

/// A number in one of the two arithmetic modes.
#[derive(Clone, Debug)]
pub struct Scalar(Repr);

/// Structural equality: same mode and bit-identical payload. Numeric
/// comparison with tolerance awareness goes through [`Scalar::compare`] or
/// [`Scalar::decide_eq`].
impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Exact(a), Repr::Exact(b)) => a == b,
            (
                Repr::Float { value: a, epsilon: ea },
                Repr::Float { value: b, epsilon: eb },
            ) => a == b && ea == eb,
            _ => false,
        }
    }
}

impl Scalar {
    /// Exact integer.
    pub fn from_integer(n: i64) -> Self {
        Scalar(Repr::Exact(BigRational::from_integer(BigInt::from(n))))
    }

    /// Exact ratio `numer / denom` in lowest terms.
    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar(Repr::Exact(BigRational::new(
            BigInt::from(numer),
            BigInt::from(denom),
        ))))
    }

    /// Exact scalar from an arbitrary-precision rational.
    pub fn from_rational(r: BigRational) -> Self {
        Scalar(Repr::Exact(r))
    }

    /// Float-mode scalar carrying its comparison tolerance.
    pub fn from_f64(value: f64, epsilon: f64) -> Self {
        Scalar(Repr::Float { value, epsilon })
    }

    /// The additive identity of `mode`.
    pub fn zero(mode: &Mode) -> Self {
        Scalar::integer_in(0, mode)
    }

    /// The multiplicative identity of `mode`.
    pub fn one(mode: &Mode) -> Self {
        Scalar::integer_in(1, mode)
    }

    /// The integer `n` lifted into `mode`.
    pub fn integer_in(n: i64, mode: &Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::from_integer(n),
            Mode::Float { epsilon } => Scalar::from_f64(n as f64, *epsilon),
        }
    }

    /// Parses a scalar literal in `mode`. Accepted forms: an integer (`"2"`),
    /// a ratio (`"3/2"`, exact in both modes) and a decimal (`"1.25"`, read
    /// as an exact power-of-ten ratio in exact mode).
    pub fn parse(text: &str, mode: &Mode) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty scalar literal".into()));
        }
        match mode {
            Mode::Exact => parse_exact(text).map(Scalar::from_rational),
            Mode::Float { epsilon } => {
                let value = if let Some((n, d)) = text.split_once('/') {
                    let n: f64 = n
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
                    let d: f64 = d
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
                    if d == 0.0 {
                        return Err(Error::DivisionByZero);
                    }
                    n / d
                } else {
                    text.parse()
                        .map_err(|_| Error::Parse(format!("bad float literal {text:?}")))?
                };
                if !value.is_finite() {
                    return Err(Error::Parse(format!("non-finite float literal {text:?}")));
                }
                Ok(Scalar::from_f64(value, *epsilon))
            }
        }
    }

    pub fn mode(&self) -> Mode {
        match &self.0 {
            Repr::Exact(_) => Mode::Exact,
            Repr::Float { epsilon, .. } => Mode::Float { epsilon: *epsilon },
        }
    }

    /// The exact rational payload, when in exact mode.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Exact(r) => Some(r),
            Repr::Float { .. } => None,
        }
    }

    /// An `f64` view of the value in either mode (lossy in exact mode).
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Repr::Float { value, .. } => *value,
        }
    }

    fn binary(
        &self,
        rhs: &Scalar,
        exact: impl FnOnce(&BigRational, &BigRational) -> BigRational,
        float: impl FnOnce(f64, f64) -> f64,
    ) -> Result<Scalar> {
        match (&self.0, &rhs.0) {
            (Repr::Exact(a), Repr::Exact(b)) => Ok(Scalar(Repr::Exact(exact(a, b)))),
            (
                Repr::Float { value: a, epsilon },
                Repr::Float {
                    value: b,
                    epsilon: eb,
                },
            ) if epsilon == eb => Ok(Scalar(Repr::Float {
                value: float(*a, *b),
                epsilon: *epsilon,
            })),
            _ => Err(Error::ModeMismatch),
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| a + b, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| a - b, |a, b| a - b)
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| a * b, |a, b| a * b)
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        match &rhs.0 {
            Repr::Exact(b) if b.is_zero() => return Err(Error::DivisionByZero),
            Repr::Float { value, .. } if *value == 0.0 => return Err(Error::DivisionByZero),
            _ => {}
        }
        self.binary(rhs, |a, b| a / b, |a, b| a / b)
    }

    /// Multiplicative inverse.
    pub fn recip(&self) -> Result<Scalar> {
        Scalar::one(&self.mode()).checked_div(self)
    }

    /// Three-way comparison. The only error is a mode mismatch; in float mode
    /// operands within the tolerance compare as [`Cmp::Ambiguous`].
    pub fn compare(&self, rhs: &Scalar) -> Result<Cmp> {
        match (&self.0, &rhs.0) {
            (Repr::Exact(a), Repr::Exact(b)) => Ok(a.cmp(b).into()),
            (
                Repr::Float { value: a, epsilon },
                Repr::Float {
                    value: b,
                    epsilon: eb,
                },
            ) if epsilon == eb => {
                if (a - b).abs() < *epsilon {
                    Ok(Cmp::Ambiguous)
                } else if a < b {
                    Ok(Cmp::Less)
                } else {
                    Ok(Cmp::Greater)
                }
            }
            _ => Err(Error::ModeMismatch),
        }
    }

    fn decide(&self, rhs: &Scalar, what: &str, accept: impl Fn(Cmp) -> Option<bool>) -> Result<bool> {
        match self.compare(rhs)? {
            Cmp::Ambiguous => Err(Error::BoundaryAmbiguity(format!(
                "{what} of {self} and {rhs}"
            ))),
            c => Ok(accept(c).expect("non-ambiguous comparison")),
        }
    }

    /// `self < rhs`, erroring on an ambiguous float comparison.
    pub fn decide_lt(&self, rhs: &Scalar) -> Result<bool> {
        self.decide(rhs, "order", |c| Some(c == Cmp::Less))
    }

    /// `self <= rhs`, erroring on an ambiguous float comparison.
    pub fn decide_le(&self, rhs: &Scalar) -> Result<bool> {
        self.decide(rhs, "order", |c| Some(c != Cmp::Greater))
    }

    /// `self > rhs`, erroring on an ambiguous float comparison.
    pub fn decide_gt(&self, rhs: &Scalar) -> Result<bool> {
        self.decide(rhs, "order", |c| Some(c == Cmp::Greater))
    }

    /// `self >= rhs`, erroring on an ambiguous float comparison.
    pub fn decide_ge(&self, rhs: &Scalar) -> Result<bool> {
        self.decide(rhs, "order", |c| Some(c != Cmp::Less))
    }

    /// `self == rhs`, erroring on an ambiguous float comparison.
    pub fn decide_eq(&self, rhs: &Scalar) -> Result<bool> {
        self.decide(rhs, "equality", |c| Some(c == Cmp::Equal))
    }

    /// Sign of the value relative to zero in its own mode.
    pub fn sign(&self) -> Cmp {
        match &self.0 {
            Repr::Exact(r) => r.cmp(&BigRational::zero()).into(),
            Repr::Float { value, epsilon } => {
                if value.abs() < *epsilon {
                    Cmp::Ambiguous
                } else if *value < 0.0 {
                    Cmp::Less
                } else {
                    Cmp::Greater
                }
            }
        }
    }

    /// True when the value is exactly representable and an integer.
    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Exact(r) => r.is_integer(),
            Repr::Float { value, .. } => value.fract() == 0.0,
        }
    }
}

fn parse_exact(text: &str) -> Result<BigRational> {
    if let Some((n, d)) = text.split_once('/') {
        let numer = BigInt::from_str(n.trim())
            .map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
        let denom = BigInt::from_str(d.trim())
            .map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(BigRational::new(numer, denom));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let digits = frac.trim();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal literal {text:?}")));
        }
        let negative = whole.trim_start().starts_with('-');
        let whole = if whole == "-" || whole.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| Error::Parse(format!("bad decimal literal {text:?}")))?
        };
        let scale = BigInt::from(10u8).pow(digits.len() as u32);
        let frac = BigInt::from_str(digits)
            .map_err(|_| Error::Parse(format!("bad decimal literal {text:?}")))?;
        let magnitude = BigRational::from_integer(whole.abs()) + BigRational::new(frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    BigInt::from_str(text)
        .map(BigRational::from_integer)
        .map_err(|_| Error::Parse(format!("bad scalar literal {text:?}")))
}

impl fmt::Display for Scalar {
    /// Exact values print as `p` or `p/q` in lowest terms; float values print
    /// with the shortest round-trip decimal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Exact(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Float { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    /// Exact scalars serialize as their `p/q` string; float scalars as a
    /// JSON number.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match &self.0 {
            Repr::Exact(_) => serializer.serialize_str(&self.to_string()),
            Repr::Float { value, .. } => serializer.serialize_f64(*value),
        }
    }
}

macro_rules! panic_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Convenience operator for mode-homogeneous code paths; panics on
            /// a mode mismatch or division by zero, which the checked methods
            /// report as errors.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect(concat!(
                    "scalar ",
                    stringify!($method),
                    " on incompatible operands"
                ))
            }
        }
    };
}

panic_op!(Add, add, checked_add);
panic_op!(Sub, sub, checked_sub);
panic_op!(Mul, mul, checked_mul);
panic_op!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        &Scalar::zero(&self.mode()) - self
    }
}
