//! Exact time values and interval bounds.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

/// An exact rational time value, in the time unit of the specification.
///
/// Timestamps of samples are non-negative; intermediate values produced while
/// shifting signals may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Time(Ratio<i64>);

impl Time {
    pub const ZERO: Time = Time(Ratio::new_raw(0, 1));

    pub fn new(numer: i64, denom: i64) -> Time {
        assert!(denom != 0, "time denominator must be nonzero");
        Time(Ratio::new(numer, denom))
    }

    pub fn from_integer(value: i64) -> Time {
        Time(Ratio::from_integer(value))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Midpoint of two times.
    pub fn midpoint(self, other: Time) -> Time {
        Time((self.0 + other.0) / Ratio::from_integer(2))
    }

    /// Returns `self / step` if it is an integer.
    pub fn steps_of(self, step: Time) -> Option<i64> {
        if step.0.is_zero() {
            return None;
        }
        let q = self.0 / step.0;
        q.is_integer().then(|| q.to_integer())
    }
}

impl From<i64> for Time {
    fn from(value: i64) -> Self {
        Time::from_integer(value)
    }
}

impl From<Ratio<i64>> for Time {
    fn from(value: Ratio<i64>) -> Self {
        Time(value)
    }
}

impl Add for Time {
    type Output = Time;
    fn add(self, rhs: Time) -> Time {
        Time(self.0 + rhs.0)
    }
}

impl Sub for Time {
    type Output = Time;
    fn sub(self, rhs: Time) -> Time {
        Time(self.0 - rhs.0)
    }
}

impl Mul<i64> for Time {
    type Output = Time;
    fn mul(self, rhs: i64) -> Time {
        Time(self.0 * rhs)
    }
}

impl Mul for Time {
    type Output = Time;
    fn mul(self, rhs: Time) -> Time {
        Time(self.0 * rhs.0)
    }
}

impl Div for Time {
    type Output = Time;
    fn div(self, rhs: Time) -> Time {
        Time(self.0 / rhs.0)
    }
}

impl Neg for Time {
    type Output = Time;
    fn neg(self) -> Time {
        Time(-self.0)
    }
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid time literal `{0}`")]
pub struct ParseTimeError(pub String);

impl FromStr for Time {
    type Err = ParseTimeError;

    /// Accepts integers, decimals (`1.25`, `1e-3`) and fractions (`5/4`),
    /// converting all of them exactly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseTimeError(s.to_string());
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = parse_decimal(n.trim()).ok_or_else(err)?;
            let d = parse_decimal(d.trim()).ok_or_else(err)?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Time(n / d));
        }
        parse_decimal(s).map(Time).ok_or_else(err)
    }
}

fn pow10(exp: u32) -> Option<i64> {
    10i64.checked_pow(exp)
}

/// Exact decimal to rational conversion.
fn parse_decimal(s: &str) -> Option<Ratio<i64>> {
    if s.is_empty() {
        return None;
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = digits.trim_start_matches('0');
    let numer: i64 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let scale = exponent - frac_part.len() as i32;
    let mut value = if scale >= 0 {
        Ratio::from_integer(numer.checked_mul(pow10(scale as u32)?)?)
    } else {
        Ratio::new(numer, pow10((-scale) as u32)?)
    };
    if negative {
        value = -value;
    }
    Some(value)
}

/// Upper end of an interval or a horizon: finite or unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimeBound {
    Finite(Time),
    Infinite,
}

impl TimeBound {
    pub fn finite(self) -> Option<Time> {
        match self {
            TimeBound::Finite(t) => Some(t),
            TimeBound::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, TimeBound::Infinite)
    }

    pub fn max(self, other: TimeBound) -> TimeBound {
        match (self, other) {
            (TimeBound::Finite(a), TimeBound::Finite(b)) => TimeBound::Finite(a.max(b)),
            _ => TimeBound::Infinite,
        }
    }

    pub fn plus(self, delta: Time) -> TimeBound {
        match self {
            TimeBound::Finite(a) => TimeBound::Finite(a + delta),
            TimeBound::Infinite => TimeBound::Infinite,
        }
    }
}

impl From<Time> for TimeBound {
    fn from(t: Time) -> Self {
        TimeBound::Finite(t)
    }
}

impl fmt::Display for TimeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeBound::Finite(t) => t.fmt(f),
            TimeBound::Infinite => f.write_str("inf"),
        }
    }
}

/// Temporal-operator interval `[lo, hi]` with `0 <= lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Time,
    hi: TimeBound,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("interval lower bound {0} is negative")]
    NegativeBound(Time),
    #[error("interval lower bound {lo} exceeds upper bound {hi}")]
    Inverted { lo: Time, hi: Time },
}

impl Interval {
    pub fn new(lo: Time, hi: TimeBound) -> Result<Interval, IntervalError> {
        if lo.is_negative() {
            return Err(IntervalError::NegativeBound(lo));
        }
        if let TimeBound::Finite(h) = hi {
            if h < lo {
                return Err(IntervalError::Inverted { lo, hi: h });
            }
        }
        Ok(Interval { lo, hi })
    }

    pub fn bounded(lo: impl Into<Time>, hi: impl Into<Time>) -> Result<Interval, IntervalError> {
        Interval::new(lo.into(), TimeBound::Finite(hi.into()))
    }

    /// `[0, inf)`, the scope of an operator written without an interval.
    pub fn unbounded() -> Interval {
        Interval { lo: Time::ZERO, hi: TimeBound::Infinite }
    }

    /// `[t, t]`.
    pub fn point(t: Time) -> Interval {
        Interval { lo: t, hi: TimeBound::Finite(t) }
    }

    pub fn lo(&self) -> Time {
        self.lo
    }

    pub fn hi(&self) -> TimeBound {
        self.hi
    }

    pub fn is_bounded(&self) -> bool {
        !self.hi.is_infinite()
    }

    pub fn is_default(&self) -> bool {
        self.lo.is_zero() && self.hi.is_infinite()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_exact_literals() {
        assert_eq!("1.25".parse::<Time>().unwrap(), Time::new(5, 4));
        assert_eq!("5/4".parse::<Time>().unwrap(), Time::new(5, 4));
        assert_eq!("1e-3".parse::<Time>().unwrap(), Time::new(1, 1000));
        assert_eq!("0.1".parse::<Time>().unwrap() * 3, Time::new(3, 10));
        assert_eq!("-2".parse::<Time>().unwrap(), Time::from(-2));
        assert!("1/0".parse::<Time>().is_err());
        assert!("abc".parse::<Time>().is_err());
        assert!(".".parse::<Time>().is_err());
    }

    #[test]
    fn steps_of_requires_alignment() {
        let period = Time::new(1, 2);
        assert_eq!(Time::from(3).steps_of(period), Some(6));
        assert_eq!(Time::new(1, 3).steps_of(period), None);
    }

    #[test]
    fn interval_invariants() {
        assert!(Interval::bounded(3, 2).is_err());
        assert!(Interval::bounded(-1, 2).is_err());
        assert!(Interval::bounded(2, 2).is_ok());
        assert_eq!(Interval::bounded(0, 5).unwrap().to_string(), "[0:5]");
        assert_eq!(Interval::unbounded().to_string(), "[0:inf]");
    }
}
