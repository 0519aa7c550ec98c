//! Sampled input traces and robustness output series.

use std::collections::BTreeMap;

use crate::time::Time;
use crate::value::ExtReal;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TraceError {
    #[error("variable `{var}`: timestamp {time} is negative")]
    NegativeTime { var: String, time: Time },
    #[error("variable `{var}`: value at time {time} is not finite")]
    NonFiniteValue { var: String, time: Time },
    #[error("variable `{var}`: timestamp {time} does not strictly increase (previous {previous})")]
    NonMonotone { var: String, time: Time, previous: Time },
    #[error("variable `{0}` has no samples")]
    EmptySignal(String),
    #[error("trace has no samples")]
    Empty,
}

/// One `(timestamp, value)` observation of a variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub time: Time,
    pub value: f64,
}

impl Sample {
    pub fn new(time: impl Into<Time>, value: f64) -> Sample {
        Sample { time: time.into(), value }
    }
}

/// Per-variable sample sequences with strictly increasing timestamps and
/// finite values.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trace {
    signals: BTreeMap<String, Vec<Sample>>,
}

impl Trace {
    pub fn new() -> Trace {
        Trace::default()
    }

    /// Adds (or replaces) a variable's signal after validating it.
    pub fn insert(&mut self, var: impl Into<String>, samples: Vec<Sample>) -> Result<(), TraceError> {
        let var = var.into();
        validate(&var, &samples)?;
        self.signals.insert(var, samples);
        Ok(())
    }

    /// Builder form of [`Trace::insert`].
    pub fn with_signal<T: Into<Time>>(
        mut self,
        var: impl Into<String>,
        samples: impl IntoIterator<Item = (T, f64)>,
    ) -> Result<Trace, TraceError> {
        let samples = samples.into_iter().map(|(t, v)| Sample::new(t, v)).collect();
        self.insert(var, samples)?;
        Ok(self)
    }

    /// Builds a uniformly sampled trace: sample `i` of every column is at `i * period`.
    pub fn uniform<'a>(
        period: Time,
        columns: impl IntoIterator<Item = (&'a str, &'a [f64])>,
    ) -> Result<Trace, TraceError> {
        let mut trace = Trace::new();
        for (name, values) in columns {
            let samples = values
                .iter()
                .enumerate()
                .map(|(i, &v)| Sample::new(period * i as i64, v))
                .collect();
            trace.insert(name, samples)?;
        }
        Ok(trace)
    }

    pub fn signal(&self, var: &str) -> Option<&[Sample]> {
        self.signals.get(var).map(Vec::as_slice)
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.signals.keys().map(String::as_str)
    }

    pub fn signals(&self) -> impl Iterator<Item = (&str, &[Sample])> {
        self.signals.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    pub fn is_empty(&self) -> bool {
        self.signals.values().all(Vec::is_empty)
    }

    /// Appends samples to a variable, keeping timestamps strictly increasing.
    pub fn push(&mut self, var: &str, sample: Sample) -> Result<(), TraceError> {
        check_sample(var, &sample)?;
        let signal = self.signals.entry(var.to_string()).or_default();
        if let Some(last) = signal.last() {
            if sample.time <= last.time {
                return Err(TraceError::NonMonotone {
                    var: var.to_string(),
                    time: sample.time,
                    previous: last.time,
                });
            }
        }
        signal.push(sample);
        Ok(())
    }

    /// Drops, per variable, every sample strictly before the last sample at or
    /// before `cut`, so the signal value on `[cut, ..)` is unchanged.
    pub(crate) fn trim_before(&mut self, cut: Time) {
        for samples in self.signals.values_mut() {
            let keep_from = samples.partition_point(|s| s.time <= cut).saturating_sub(1);
            if keep_from > 0 {
                samples.drain(..keep_from);
            }
        }
    }
}

fn check_sample(var: &str, sample: &Sample) -> Result<(), TraceError> {
    if sample.time.is_negative() {
        return Err(TraceError::NegativeTime { var: var.to_string(), time: sample.time });
    }
    if !sample.value.is_finite() {
        return Err(TraceError::NonFiniteValue { var: var.to_string(), time: sample.time });
    }
    Ok(())
}

fn validate(var: &str, samples: &[Sample]) -> Result<(), TraceError> {
    for s in samples {
        check_sample(var, s)?;
    }
    for w in samples.windows(2) {
        if w[1].time <= w[0].time {
            return Err(TraceError::NonMonotone {
                var: var.to_string(),
                time: w[1].time,
                previous: w[0].time,
            });
        }
    }
    Ok(())
}

/// Timestamped robustness values with strictly increasing timestamps.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RobustnessSeries {
    points: Vec<(Time, ExtReal)>,
}

impl RobustnessSeries {
    pub fn new() -> RobustnessSeries {
        RobustnessSeries::default()
    }

    pub(crate) fn from_points(points: Vec<(Time, ExtReal)>) -> RobustnessSeries {
        debug_assert!(points.windows(2).all(|w| w[0].0 < w[1].0));
        RobustnessSeries { points }
    }

    pub fn points(&self) -> &[(Time, ExtReal)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, time: Time) -> Option<ExtReal> {
        self.points
            .binary_search_by(|(t, _)| t.cmp(&time))
            .ok()
            .map(|i| self.points[i].1)
    }

    pub fn values(&self) -> impl Iterator<Item = ExtReal> + '_ {
        self.points.iter().map(|&(_, v)| v)
    }

    pub fn first(&self) -> Option<(Time, ExtReal)> {
        self.points.first().copied()
    }
}

impl IntoIterator for RobustnessSeries {
    type Item = (Time, ExtReal);
    type IntoIter = std::vec::IntoIter<(Time, ExtReal)>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.into_iter()
    }
}
