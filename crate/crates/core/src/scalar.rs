//! Field-element contract shared by every numeric routine in the crate.
//!
//! Two realizations are provided: [`Rational`] (arbitrary precision, exact
//! equality) and `f64` (IEEE arithmetic, tolerance-based equality). Every
//! formula in the crate is written once against [`Scalar`] and then run in
//! whichever realization a caller needs.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Num, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Absolute tolerance of float equality.
pub const FLOAT_ATOL: f64 = 1e-12;
/// Relative tolerance of float equality.
pub const FLOAT_RTOL: f64 = 1e-12;
/// Float magnitude below which a denominator counts as vanishing.
pub const FLOAT_NEGLIGIBLE: f64 = 1e-12;

pub trait Scalar: Num + Signed + PartialOrd + Clone + Debug + Send + Sync + 'static {
    fn from_i64(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Equality under the realization's contract: exact for rationals,
    /// `|a-b| <= atol + rtol*max(|a|,|b|)` for floats.
    fn approx_eq(&self, other: &Self) -> bool;

    /// True when `self` must be treated as a zero divisor: exactly zero for
    /// rationals, magnitude below [`FLOAT_NEGLIGIBLE`] for floats.
    fn is_negligible(&self) -> bool;

    /// Equality used for termination detection of basic hypergeometric series.
    fn matches(&self, other: &Self) -> bool;

    fn to_f64(&self) -> f64;

    /// Parses `"p/q"`, `"p"` or, for floats, any decimal literal.
    fn parse(s: &str) -> Result<Self>;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;

    /// `true` when the value is represented exactly (rational realization).
    fn is_exact() -> bool;

    fn powi(&self, exp: i64) -> Self {
        let mut base = if exp < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn checked_div(&self, den: &Self, what: impl FnOnce() -> Error) -> Result<Self> {
        if den.is_negligible() {
            Err(what())
        } else {
            Ok(self.clone() / den.clone())
        }
    }
}

impl Scalar for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn matches(&self, other: &Self) -> bool {
        self == other
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        Rational::from_str(s)
            .ok()
            .filter(|r| !r.denom().is_zero())
            .ok_or_else(|| Error::InvalidInput(format!("not a rational p/q: {s:?}")))
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => Self::parse(s),
            Value::Number(n) if n.is_i64() => Ok(Self::from_i64(n.as_i64().unwrap())),
            other => Err(Error::InvalidInput(format!(
                "expected a \"p/q\" string, got {other}"
            ))),
        }
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn approx_eq(&self, other: &Self) -> bool {
        let scale = self.abs().max(other.abs());
        (self - other).abs() <= FLOAT_ATOL + FLOAT_RTOL * scale
    }

    fn is_negligible(&self) -> bool {
        self.abs() < FLOAT_NEGLIGIBLE
    }

    fn matches(&self, other: &Self) -> bool {
        let scale = self.abs().max(other.abs());
        (self - other).abs() <= 1e-9 * scale
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: f64 = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad numerator in {s:?}")))?;
            let q: f64 = q
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad denominator in {s:?}")))?;
            return Ok(p / q);
        }
        s.parse()
            .map_err(|_| Error::InvalidInput(format!("not a number: {s:?}")))
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::InvalidInput(format!("bad number {n}"))),
            Value::String(s) => Self::parse(s),
            other => Err(Error::InvalidInput(format!("expected a number, got {other}"))),
        }
    }

    fn is_exact() -> bool {
        false
    }
}

/// Renders a rational as `"p/q"`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Shorthand for building exact test and CLI values.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

/// Binomial coefficient as a scalar; exact for the rational realization.
pub fn binomial<S: Scalar>(n: u64, k: u64) -> S {
    if k > n {
        return S::zero();
    }
    let k = k.min(n - k);
    let mut acc = S::one();
    for j in 0..k {
        acc = acc * S::from_i64((n - j) as i64) / S::from_i64((j + 1) as i64);
    }
    acc
}
