//! Scalar types usable as max-times semiring weights.
//!
//! Three carriers are provided: plain `f64` (the default), exact
//! [`Rational`] numbers for fixtures that must classify ties exactly, and
//! [`LogWeight`], which stores `ln(w)` so that products of many sub-unit
//! weights do not underflow.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Exact rational weight.
pub type Rational = BigRational;

/// Relative/absolute tolerance used to decide equality of floating weights.
///
/// Two values `a`, `b` are equal when `|a - b| <= max(atol, rtol * max(|a|, |b|))`.
/// Exact carriers ignore the tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
}

impl Tolerance {
    pub const DEFAULT_RTOL: f64 = 1e-9;
    pub const DEFAULT_ATOL: f64 = 1e-12;

    pub fn new(rtol: f64, atol: f64) -> Self {
        Tolerance { rtol, atol }
    }

    /// Default tolerance with `rtol` overridden by the `MAXLIN_RTOL`
    /// environment variable when it is set to a valid non-negative number.
    pub fn from_env() -> Self {
        let mut tol = Tolerance::default();
        if let Ok(raw) = std::env::var("MAXLIN_RTOL") {
            if let Ok(rtol) = raw.trim().parse::<f64>() {
                if rtol.is_finite() && rtol >= 0.0 {
                    tol.rtol = rtol;
                }
            }
        }
        tol
    }

    pub fn eq<T: Weight>(&self, a: &T, b: &T) -> bool {
        a.approx_eq(b, self)
    }

    /// `a > b` and not equal under the tolerance.
    pub fn gt<T: Weight>(&self, a: &T, b: &T) -> bool {
        a > b && !a.approx_eq(b, self)
    }

    /// `a < b` and not equal under the tolerance.
    pub fn lt<T: Weight>(&self, a: &T, b: &T) -> bool {
        self.gt(b, a)
    }

    /// `a >= b` up to the tolerance.
    pub fn ge<T: Weight>(&self, a: &T, b: &T) -> bool {
        !self.lt(a, b)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::new(Self::DEFAULT_RTOL, Self::DEFAULT_ATOL)
    }
}

/// A non-negative scalar of the max-times semiring `(R+, max, *)`.
pub trait Weight:
    Clone + PartialEq + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// Short name used in diagnostics and metadata.
    const KIND: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Division; callers guarantee a non-zero divisor.
    fn div(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;
    /// True for finite values `>= 0` (the semiring carrier).
    fn is_admissible(&self) -> bool;
    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool;
    fn to_f64(&self) -> f64;
    fn from_f64(x: f64) -> Option<Self>;
    /// Parses `"p/q"`, integers and decimals (with optional exponent).
    fn parse(s: &str) -> Result<Self>;
    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => {
                let x = n
                    .as_f64()
                    .ok_or_else(|| Error::Parse(format!("unrepresentable number {n}")))?;
                Self::from_f64(x).ok_or_else(|| Error::Parse(format!("invalid weight {n}")))
            }
            Value::String(s) => Self::parse(s),
            other => Err(Error::Parse(format!("expected a number or string, got {other}"))),
        }
    }

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

impl Weight for f64 {
    const KIND: &'static str = "f64";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_admissible(&self) -> bool {
        self.is_finite() && *self >= 0.0
    }
    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        if self == other {
            return true;
        }
        let scale = self.abs().max(other.abs());
        (self - other).abs() <= tol.atol.max(tol.rtol * scale)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }
    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: f64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let q: f64 = q.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if q == 0.0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(p / q);
        }
        match s {
            "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
            _ => s.parse().map_err(|_| Error::Parse(format!("cannot parse {s:?} as a number"))),
        }
    }
    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or_else(|| Value::String(self.to_string()))
    }
}

impl Weight for Rational {
    const KIND: &'static str = "rational";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_admissible(&self) -> bool {
        !self.is_negative()
    }
    fn approx_eq(&self, other: &Self, _tol: &Tolerance) -> bool {
        self == other
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        // Shortest round-trip decimal, so 0.3 becomes 3/10 rather than the
        // binary expansion of the nearest double.
        parse_decimal(&format!("{x}"))
    }
    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = parse_decimal(p.trim()).ok_or_else(|| Error::Parse(format!("bad numerator in {s:?}")))?;
            let q = parse_decimal(q.trim()).ok_or_else(|| Error::Parse(format!("bad denominator in {s:?}")))?;
            if Zero::is_zero(&q) {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(p / q);
        }
        parse_decimal(s).ok_or_else(|| Error::Parse(format!("cannot parse {s:?} as a rational")))
    }
    fn to_json(&self) -> Value {
        if self.is_integer() {
            if let Some(n) = self.numer().to_i64() {
                return Value::from(n);
            }
        }
        Value::String(self.to_string())
    }
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = digits.parse().ok()?;
    if neg {
        numer = -numer;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// A weight stored as its natural logarithm.
///
/// Products become sums and the semiring zero is `-inf`. Equality under a
/// [`Tolerance`] compares the logs with absolute tolerance `rtol`, which
/// corresponds to a relative tolerance on the underlying weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogWeight(pub f64);

impl LogWeight {
    pub fn from_linear(w: f64) -> Self {
        LogWeight(w.ln())
    }

    pub fn ln(&self) -> f64 {
        self.0
    }
}

impl PartialOrd for LogWeight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl fmt::Display for LogWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({})", self.0)
    }
}

impl Weight for LogWeight {
    const KIND: &'static str = "log";

    fn zero() -> Self {
        LogWeight(f64::NEG_INFINITY)
    }
    fn one() -> Self {
        LogWeight(0.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        LogWeight(self.0 + rhs.0)
    }
    fn div(&self, rhs: &Self) -> Self {
        if self.0 == f64::NEG_INFINITY {
            return *self;
        }
        LogWeight(self.0 - rhs.0)
    }
    fn is_zero(&self) -> bool {
        self.0 == f64::NEG_INFINITY
    }
    fn is_admissible(&self) -> bool {
        !self.0.is_nan() && self.0 != f64::INFINITY
    }
    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        if self.0 == other.0 {
            return true;
        }
        (self.0 - other.0).abs() <= tol.rtol.max(tol.atol)
    }
    fn to_f64(&self) -> f64 {
        self.0.exp()
    }
    fn from_f64(x: f64) -> Option<Self> {
        (x.is_finite() && x >= 0.0).then(|| LogWeight::from_linear(x))
    }
    fn parse(s: &str) -> Result<Self> {
        let x = <f64 as Weight>::parse(s)?;
        Self::from_f64(x).ok_or_else(|| Error::Parse(format!("invalid weight {s:?}")))
    }
    fn to_json(&self) -> Value {
        self.to_f64().to_json()
    }
}
