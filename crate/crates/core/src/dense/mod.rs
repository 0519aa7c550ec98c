//! Dense-time robustness: signals are piecewise constant between sample
//! timestamps, and every instant of the common domain counts.

mod offline;
mod online;
mod signal;
mod window;

pub use crate::discrete::window::Extremum;
pub use offline::{evaluate_dense, evaluate_dense_formula, raw_dense};
pub use online::DenseMonitor;
pub use signal::{Knot, StepSignal};
pub use window::window_extremum;

use crate::time::Time;
use crate::trace::TraceError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DenseError {
    #[error("operator `{operator}` is only defined in discrete time")]
    UnsupportedOperator { operator: &'static str },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variables do not overlap in time (latest start {start}, earliest end {end})")]
    NoOverlap { start: Time, end: Time },
    #[error("trace has no samples")]
    EmptyTrace,
    #[error("online monitoring needs bounded future intervals, found unbounded `{operator}`")]
    UnboundedOnline { operator: &'static str },
    #[error("{0}")]
    NonMonotoneTime(#[from] TraceError),
}
