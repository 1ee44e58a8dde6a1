//! Closed catalog of monotone per-attribute transforms.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Strictly increasing map applied to one attribute before weighting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform<T> {
    Identity,
    /// `x^p`, `p > 0`.
    Power(T),
    /// `ln(1 + x)`.
    Log,
}

impl<T: Scalar> Transform<T> {
    pub fn power(p: T) -> Result<Self> {
        if p > T::zero() && p.is_finite() {
            Ok(Transform::Power(p))
        } else {
            Err(Error::InvalidTransform(format!("power exponent {p} must be > 0")))
        }
    }

    #[inline]
    pub fn apply(&self, x: T) -> T {
        match *self {
            Transform::Identity => x,
            Transform::Power(p) => x.max(T::zero()).powf(p),
            Transform::Log => x.ln_1p(),
        }
    }

    pub fn apply_all(transforms: &[Self], values: &[T]) -> Vec<T> {
        transforms.iter().zip(values).map(|(g, &x)| g.apply(x)).collect()
    }
}

/// Accepts `identity`, `log`, `power:<p>`.
impl<T: Scalar> FromStr for Transform<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once(':') {
            None if s.eq_ignore_ascii_case("identity") => Ok(Transform::Identity),
            None if s.eq_ignore_ascii_case("log") => Ok(Transform::Log),
            Some((name, p)) if name.trim().eq_ignore_ascii_case("power") => {
                let p = p
                    .trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidTransform(format!("bad exponent in `{s}`")))?;
                Self::power(T::of(p))
            }
            _ => Err(Error::InvalidTransform(format!("unknown transform `{s}`"))),
        }
    }
}

impl<T: Scalar> fmt::Display for Transform<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Identity => write!(f, "identity"),
            Transform::Power(p) => write!(f, "power:{p}"),
            Transform::Log => write!(f, "log"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_catalog() {
        assert_eq!("identity".parse::<Transform<f64>>().unwrap(), Transform::Identity);
        assert_eq!("log".parse::<Transform<f64>>().unwrap(), Transform::Log);
        assert_eq!("power:2".parse::<Transform<f64>>().unwrap(), Transform::Power(2.0));
        assert!("power:0".parse::<Transform<f64>>().is_err());
        assert!("sqrt".parse::<Transform<f64>>().is_err());
    }

    #[test]
    fn values() {
        assert_eq!(Transform::Power(2.0f64).apply(0.5), 0.25);
        assert!((Transform::<f64>::Log.apply(1.0) - 2f64.ln()).abs() < 1e-15);
    }
}
