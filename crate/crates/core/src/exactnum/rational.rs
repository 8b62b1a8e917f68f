use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` as a [`Rational`]. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"`, `"n/d"` or a finite decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if s.contains('/') || frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        let int_val = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(int_digits).map_err(|_| bad())?
        };
        let frac_val = BigInt::from_str(frac_part).map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        let mag = Rational::new(int_val * &scale + frac_val, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let r = Rational::from_str(s).map_err(|_| bad())?;
    Ok(r)
}

/// Canonical text form: `"n/d"`, or `"n"` when the denominator is 1.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

/// A rational number or `+∞`.
///
/// Ordered with every finite value below `Infinite`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRational {
    Finite(Rational),
    Infinite,
}

impl ExtRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinite)
    }

    pub fn add_finite(&self, r: &Rational) -> ExtRational {
        match self {
            ExtRational::Finite(x) => ExtRational::Finite(x + r),
            ExtRational::Infinite => ExtRational::Infinite,
        }
    }

    /// `|self - other|`, infinite if exactly one side is infinite, zero if
    /// both are.
    pub fn abs_diff(&self, other: &ExtRational) -> ExtRational {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite((a - b).abs()),
            (ExtRational::Infinite, ExtRational::Infinite) => ExtRational::Finite(Rational::zero()),
            _ => ExtRational::Infinite,
        }
    }

    pub fn parse(s: &str) -> Result<ExtRational> {
        match s.trim() {
            "inf" | "+inf" | "∞" | "Infinity" => Ok(ExtRational::Infinite),
            other => parse_rational(other).map(ExtRational::Finite),
        }
    }

    pub fn cmp_finite(&self, r: &Rational) -> Ordering {
        match self {
            ExtRational::Finite(x) => x.cmp(r),
            ExtRational::Infinite => Ordering::Greater,
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        ExtRational::Finite(r)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{r}"),
            ExtRational::Infinite => f.write_str("inf"),
        }
    }
}
