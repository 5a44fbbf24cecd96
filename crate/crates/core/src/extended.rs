use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{LctError, Result};

/// An exact rational number or `+∞`.
///
/// `+∞` compares greater than every finite value. Division by zero in the
/// lct candidate formulas produces `+∞` rather than an error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedRational {
    Finite(BigRational),
    Infinity,
}

impl ExtendedRational {
    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExtendedRational::Finite(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::quotient(num.into(), den.into())
    }

    /// `num / den`, or `+∞` when `den` is zero.
    pub fn quotient(num: BigInt, den: BigInt) -> Self {
        if den.is_zero() {
            ExtendedRational::Infinity
        } else {
            ExtendedRational::Finite(BigRational::new(num, den))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::Infinity)
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtendedRational::Finite(q) => Some(q),
            ExtendedRational::Infinity => None,
        }
    }

    /// Numerator and denominator; `+∞` is reported as `1/0`.
    pub fn num_den(&self) -> (BigInt, BigInt) {
        match self {
            ExtendedRational::Finite(q) => (q.numer().clone(), q.denom().clone()),
            ExtendedRational::Infinity => (BigInt::from(1), BigInt::zero()),
        }
    }

    pub fn recip(&self) -> Self {
        match self {
            ExtendedRational::Infinity => ExtendedRational::from_integer(0),
            ExtendedRational::Finite(q) if q.is_zero() => ExtendedRational::Infinity,
            ExtendedRational::Finite(q) => ExtendedRational::Finite(q.recip()),
        }
    }

    /// Decimal expansion truncated (not rounded) to `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let q = match self {
            ExtendedRational::Infinity => return "∞".to_string(),
            ExtendedRational::Finite(q) => q,
        };
        let negative = q.is_negative();
        let num = q.numer().abs();
        let den = q.denom().clone();
        let (int_part, mut rem) = num.div_rem(&den);
        let mut out = String::new();
        if negative {
            out.push('-');
        }
        out.push_str(&int_part.to_string());
        if digits > 0 {
            out.push('.');
            for _ in 0..digits {
                rem *= 10;
                let (d, r) = rem.div_rem(&den);
                out.push_str(&d.to_string());
                rem = r;
            }
        }
        out
    }

    /// Text used in structured records: `inf` or `p/q` / `p`.
    pub fn to_record_string(&self) -> String {
        match self {
            ExtendedRational::Infinity => "inf".to_string(),
            ExtendedRational::Finite(q) => q.to_string(),
        }
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedRational::*;
        match (self, other) {
            (Infinity, Infinity) => Ordering::Equal,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Finite(_), Infinity) => Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<BigRational> for ExtendedRational {
    fn from(q: BigRational) -> Self {
        ExtendedRational::Finite(q)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Infinity => f.write_str("∞"),
            ExtendedRational::Finite(q) => write!(f, "{q}"),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = LctError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "inf" | "∞" | "+inf" | "infinity") {
            return Ok(ExtendedRational::Infinity);
        }
        let bad = || LctError::InvalidValue(format!("not a rational: {s:?}"));
        let q = match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
        };
        Ok(ExtendedRational::Finite(q))
    }
}
