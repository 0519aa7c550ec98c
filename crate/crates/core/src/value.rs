//! Robustness values: reals extended with `+inf` and `-inf`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

/// A value in `R ∪ {-inf, +inf}`. Never NaN.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const INFINITY: ExtReal = ExtReal(f64::INFINITY);
    pub const NEG_INFINITY: ExtReal = ExtReal(f64::NEG_INFINITY);
    pub const ZERO: ExtReal = ExtReal(0.0);

    /// Wraps a float; `None` for NaN.
    pub fn new(value: f64) -> Option<ExtReal> {
        (!value.is_nan()).then_some(ExtReal(value))
    }

    pub fn finite(value: f64) -> ExtReal {
        assert!(value.is_finite(), "expected a finite value, got {value}");
        ExtReal(value)
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        ext_min(self, other)
    }

    pub fn max(self, other: ExtReal) -> ExtReal {
        ext_max(self, other)
    }

    /// `+inf` if positive, `-inf` otherwise.
    pub fn sign_infinity(self) -> ExtReal {
        if self.0 > 0.0 {
            ExtReal::INFINITY
        } else {
            ExtReal::NEG_INFINITY
        }
    }
}

pub fn ext_min(a: ExtReal, b: ExtReal) -> ExtReal {
    if b.0 < a.0 {
        b
    } else {
        a
    }
}

pub fn ext_max(a: ExtReal, b: ExtReal) -> ExtReal {
    if b.0 > a.0 {
        b
    } else {
        a
    }
}

pub fn ext_neg(a: ExtReal) -> ExtReal {
    ExtReal(-a.0)
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        ext_neg(self)
    }
}

impl PartialEq for ExtReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for ExtReal {}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        // no NaN by construction; -0.0 == 0.0
        self.0.partial_cmp(&other.0).unwrap_or(Ordering::Equal)
    }
}

impl From<ExtReal> for f64 {
    fn from(value: ExtReal) -> f64 {
        value.0
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            f.write_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            f.write_str("-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid robustness value `{0}`")]
pub struct ParseExtRealError(pub String);

impl FromStr for ExtReal {
    type Err = ParseExtRealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "+inf" => Ok(ExtReal::INFINITY),
            "-inf" => Ok(ExtReal::NEG_INFINITY),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .map(ExtReal)
                .ok_or_else(|| ParseExtRealError(s.to_string())),
        }
    }
}
