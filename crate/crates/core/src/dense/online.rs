use super::offline::evaluate_dense_formula;
use super::signal::Knot;
use super::DenseError;
use crate::iastl::Semantics;
use crate::rewrite::temporal_depth;
use crate::syntax::Formula;
use crate::time::{Time, TimeBound};
use crate::trace::{Sample, Trace};

/// Online dense-time monitor.
///
/// Keeps the received prefix, re-evaluates it offline on every update, and
/// emits the knots that can no longer change: those strictly before
/// `frontier - horizon`, where the frontier is the latest instant up to which
/// every variable is known. Samples older than the formula's past lookback
/// are dropped, so memory is bounded when all past intervals are.
#[derive(Debug, Clone)]
pub struct DenseMonitor {
    formula: Formula,
    semantics: Semantics,
    vars: Vec<String>,
    buffer: Trace,
    horizon: Time,
    lookback: Option<Time>,
    emitted: Option<Time>,
    done: bool,
}

impl DenseMonitor {
    pub fn new(f: &Formula, semantics: &Semantics) -> Result<DenseMonitor, DenseError> {
        let horizon = match temporal_depth(f, Time::ZERO) {
            TimeBound::Finite(h) => h,
            TimeBound::Infinite => {
                let op = f.first_future_operator().map_or("until", Formula::operator_name);
                return Err(DenseError::UnboundedOnline { operator: op });
            }
        };
        if let Some(op) = find_sampled(f) {
            return Err(DenseError::UnsupportedOperator { operator: op });
        }
        Ok(DenseMonitor {
            formula: f.clone(),
            semantics: semantics.clone(),
            vars: f.variables().into_iter().collect(),
            buffer: Trace::new(),
            horizon,
            lookback: lookback(f),
            emitted: None,
            done: false,
        })
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    /// How far ahead of an output instant the inputs must be known.
    pub fn horizon(&self) -> Time {
        self.horizon
    }

    /// Samples currently held.
    pub fn buffered(&self) -> usize {
        self.buffer.signals().map(|(_, s)| s.len()).sum()
    }

    /// Adds samples (per variable, increasing in time) and returns the newly
    /// determined output knots. Variables the formula does not use are ignored,
    /// unless it uses none: then every variable counts towards the domain,
    /// and since more variables may still arrive, all output waits for
    /// [`finish`](DenseMonitor::finish).
    pub fn update<S: AsRef<str>>(
        &mut self,
        samples: impl IntoIterator<Item = (S, Sample)>,
    ) -> Result<Vec<Knot>, DenseError> {
        for (var, sample) in samples {
            if self.vars.is_empty() || self.vars.iter().any(|v| v == var.as_ref()) {
                self.buffer.push(var.as_ref(), sample)?;
            }
        }
        let Some(frontier) = self.frontier() else {
            return Ok(Vec::new());
        };
        let limit = frontier - self.horizon;
        if self.emitted.is_some_and(|e| limit <= e) {
            return Ok(Vec::new());
        }
        let out = self.emit(Some(limit))?;
        self.emitted = Some(limit);
        self.trim();
        Ok(out)
    }

    /// Flushes everything still pending: the tail of the offline result on
    /// the full received trace.
    pub fn finish(&mut self) -> Result<Vec<Knot>, DenseError> {
        if self.done || self.buffer.is_empty() {
            return Ok(Vec::new());
        }
        self.done = true;
        self.emit(None)
    }

    fn frontier(&self) -> Option<Time> {
        if self.vars.is_empty() {
            return None;
        }
        self.vars.iter().map(|v| self.buffer.signal(v).and_then(|s| s.last()).map(|s| s.time)).min().flatten()
    }

    fn emit(&self, limit: Option<Time>) -> Result<Vec<Knot>, DenseError> {
        let out = match evaluate_dense_formula(&self.formula, &self.buffer, &self.semantics) {
            Ok(s) => s,
            // the prefix may not yet reach past the top-level offsets
            Err(DenseError::NoOverlap { .. }) if limit.is_some() => return Ok(Vec::new()),
            Err(e) => return Err(e),
        };
        Ok(out
            .knots()
            .iter()
            .filter(|k| self.emitted.is_none_or(|e| k.time >= e) && limit.is_none_or(|l| k.time < l))
            .copied()
            .collect())
    }

    fn trim(&mut self) {
        if let (Some(l), Some(e)) = (self.lookback, self.emitted) {
            self.buffer.trim_before(e - l - Time::from(1));
        }
    }
}

fn find_sampled(f: &Formula) -> Option<&'static str> {
    if matches!(f, Formula::Next(_) | Formula::Previous(_) | Formula::Rise(_) | Formula::Fall(_)) {
        return Some(f.operator_name());
    }
    f.children().into_iter().find_map(find_sampled)
}

/// How far into the past an output instant can look; `None` if unbounded.
fn lookback(f: &Formula) -> Option<Time> {
    let inner = f.children().into_iter().map(lookback).try_fold(Time::ZERO, |acc, l| l.map(|l| acc.max(l)))?;
    match f {
        Formula::Once(i, _) | Formula::Historically(i, _) | Formula::Since(i, ..) | Formula::Precedes(i, ..) => {
            match i.hi() {
                TimeBound::Finite(b) => Some(inner + b),
                TimeBound::Infinite => None,
            }
        }
        _ => Some(inner),
    }
}
