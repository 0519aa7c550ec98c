//! Discrete-time robustness: the time domain is the set of sample instants
//! `0, p, 2p, ..` of a uniformly sampled trace with period `p`.

mod offline;
mod online;
pub(crate) mod window;

pub use offline::{evaluate_discrete, evaluate_formula, raw_robustness};
pub use online::{make_online_monitor, BufferReport, DiscreteMonitor, Footprint};

use crate::time::{Interval, Time, TimeBound};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiscreteError {
    #[error("variable `{var}`: sample {index} is at {found}, expected {expected} for a uniform trace")]
    NonUniformTrace { var: String, index: usize, expected: Time, found: Time },
    #[error("variable `{var}` has {found} samples, expected {expected}")]
    LengthMismatch { var: String, expected: usize, found: usize },
    #[error("interval bound {bound} is not a multiple of the period {period}")]
    MisalignedInterval { bound: Time, period: Time },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("online monitoring needs a past-only formula, found future operator `{operator}` (pastify it first)")]
    FutureOperatorPresent { operator: &'static str },
    #[error("missing value for variable `{0}`")]
    MissingVariable(String),
    #[error("value of variable `{0}` is not finite")]
    NonFiniteValue(String),
    #[error("trace has no samples")]
    EmptyTrace,
    #[error("period must be positive, got {0}")]
    BadPeriod(Time),
}

pub(crate) fn steps(t: Time, period: Time) -> Result<i64, DiscreteError> {
    t.steps_of(period).ok_or(DiscreteError::MisalignedInterval { bound: t, period })
}

/// Interval bounds in samples; `None` for an unbounded end.
pub(crate) fn step_bounds(i: &Interval, period: Time) -> Result<(i64, Option<i64>), DiscreteError> {
    let a = steps(i.lo(), period)?;
    let b = match i.hi() {
        TimeBound::Finite(b) => Some(steps(b, period)?),
        TimeBound::Infinite => None,
    };
    Ok((a, b))
}

pub(crate) fn check_period(period: Time) -> Result<(), DiscreteError> {
    if period > Time::ZERO {
        Ok(())
    } else {
        Err(DiscreteError::BadPeriod(period))
    }
}
