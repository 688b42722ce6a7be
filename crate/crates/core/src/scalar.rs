//! Numeric backends. Every map in [`crate::maps`] is generic over [`Scalar`],
//! implemented for exact [`BigRational`] and for binary64.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Sub};

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use crate::rational;

pub trait Scalar:
    Clone
    + PartialOrd
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// True for backends where arithmetic never rounds.
    const EXACT: bool;

    fn from_u64(n: u64) -> Self;

    fn from_rational(r: &BigRational) -> Self;

    fn to_f64(&self) -> f64;

    /// `⌈1/x⌉` for `x ∈ (0, 1]`, or `None` when it does not fit in a `u64`.
    fn recip_ceil(&self) -> Option<u64>;

    /// Column names used when this value is written to CSV.
    fn csv_header(name: &str) -> Vec<String>;

    fn csv_fields(&self) -> Vec<String>;

    fn to_json(&self) -> Value;

    fn reciprocal(n: u64) -> Self {
        Self::one() / Self::from_u64(n)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(n.into())
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        rational::to_f64(self)
    }

    fn recip_ceil(&self) -> Option<u64> {
        self.recip().ceil().to_integer().to_u64()
    }

    fn csv_header(name: &str) -> Vec<String> {
        vec![format!("{name}_num"), format!("{name}_den")]
    }

    fn csv_fields(&self) -> Vec<String> {
        vec![self.numer().to_string(), self.denom().to_string()]
    }

    fn to_json(&self) -> Value {
        Value::String(rational::fmt_rational(self))
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_u64(n: u64) -> Self {
        n as f64
    }

    fn from_rational(r: &BigRational) -> Self {
        rational::to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn recip_ceil(&self) -> Option<u64> {
        let x = *self;
        let r = (1.0 / x).ceil();
        if r.is_nan() || r >= 1.8e19 {
            return None;
        }
        let mut d = r.max(1.0) as u64;
        // 1/x rounds; settle d so that 1/d <= x < 1/(d-1) holds in f64 terms.
        while d > 1 && x < 1.0 / d as f64 {
            d += 1;
        }
        while d > 2 && x >= 1.0 / (d - 1) as f64 {
            d -= 1;
        }
        Some(d)
    }

    fn csv_header(name: &str) -> Vec<String> {
        vec![name.to_string()]
    }

    fn csv_fields(&self) -> Vec<String> {
        vec![fmt_real(*self)]
    }

    fn to_json(&self) -> Value {
        real_json(*self)
    }
}

/// Binary64 with 17 significant digits (round-trips exactly).
pub fn fmt_real(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// A JSON number carrying 17 significant digits; non-finite values become null.
pub fn real_json(v: f64) -> Value {
    if !v.is_finite() {
        return Value::Null;
    }
    serde_json::from_str::<serde_json::Number>(&fmt_real(v))
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn recip_ceil_on_cell_boundaries() {
        assert_eq!(ratio(1, 2).recip_ceil(), Some(2));
        assert_eq!(ratio(3, 4).recip_ceil(), Some(2));
        assert_eq!(ratio(1, 3).recip_ceil(), Some(3));
        assert_eq!(ratio(3, 7).recip_ceil(), Some(3));
        assert_eq!(BigRational::one().recip_ceil(), Some(1));
        assert_eq!(0.5f64.recip_ceil(), Some(2));
        assert_eq!((1.0f64 / 3.0).recip_ceil(), Some(3));
        assert_eq!(0.2f64.recip_ceil(), Some(5));
        assert_eq!(1e-9f64.recip_ceil(), Some(1_000_000_000));
    }

    #[test]
    fn real_json_keeps_seventeen_digits() {
        let v = real_json(0.1);
        assert_eq!(v.to_string(), "1.0000000000000001e-1");
        assert_eq!(real_json(f64::NAN), Value::Null);
    }
}
