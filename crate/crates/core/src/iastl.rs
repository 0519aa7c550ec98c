//! Interface-aware robustness: predicates over fixed variables count only
//! qualitatively, predicates over untracked variables not at all.

use std::collections::BTreeSet;

use crate::dense::{evaluate_dense_formula, DenseError, StepSignal};
use crate::discrete::{evaluate_formula, DiscreteError};
use crate::syntax::{Formula, Predicate, Specification};
use crate::time::Time;
use crate::trace::{RobustnessSeries, Trace};
use crate::value::ExtReal;

/// How a predicate contributes under a given semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredicateMode {
    /// `f(w) - c`.
    Quantitative,
    /// `+inf` if `f(w) - c > 0`, else `-inf`.
    Qualitative,
    /// Always 0.
    Neutral,
}

/// Predicate-evaluation strategy plugged into both engines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum Semantics {
    #[default]
    Classic,
    /// Relative robustness measured over `measured` (U) with `fixed` (V)
    /// held constant.
    Relative { measured: BTreeSet<String>, fixed: BTreeSet<String> },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IaError {
    #[error("specification declares no input or output variables")]
    NoRoleDeclarations,
    #[error("variable `{0}` is both measured and fixed")]
    OverlappingSets(String),
    #[error("time {0} is outside the evaluated domain")]
    OutsideDomain(Time),
    #[error(transparent)]
    Discrete(#[from] DiscreteError),
    #[error(transparent)]
    Dense(#[from] DenseError),
}

/// Time interpretation for the one-shot [`relative_robustness`] query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeMode {
    Discrete { period: Time },
    Dense,
}

/// `rho_U^V(f, w, t)`: classic robustness except at predicates, which are
/// scored by [`Semantics::mode`].
pub fn relative_robustness(
    f: &Formula,
    trace: &Trace,
    measured: &BTreeSet<String>,
    fixed: &BTreeSet<String>,
    t: Time,
    mode: TimeMode,
) -> Result<ExtReal, IaError> {
    let sem = Semantics::relative(measured.clone(), fixed.clone())?;
    let v = match mode {
        TimeMode::Discrete { period } => evaluate_formula(f, trace, period, &sem)?.get(t),
        TimeMode::Dense => evaluate_dense_formula(f, trace, &sem)?.value_at(t),
    };
    v.ok_or(IaError::OutsideDomain(t))
}

/// Output robustness over the discrete time domain of the spec's period.
pub fn output_robustness(spec: &Specification, trace: &Trace) -> Result<RobustnessSeries, IaError> {
    let sem = Semantics::output_robustness(spec)?;
    Ok(evaluate_formula(&spec.formula, trace, spec.period, &sem)?)
}

/// Input vacuity over the discrete time domain of the spec's period.
pub fn input_vacuity(spec: &Specification, trace: &Trace) -> Result<RobustnessSeries, IaError> {
    let sem = Semantics::input_vacuity(spec)?;
    Ok(evaluate_formula(&spec.formula, trace, spec.period, &sem)?)
}

pub fn output_robustness_dense(spec: &Specification, trace: &Trace) -> Result<StepSignal, IaError> {
    let sem = Semantics::output_robustness(spec)?;
    Ok(evaluate_dense_formula(&spec.formula, trace, &sem)?)
}

pub fn input_vacuity_dense(spec: &Specification, trace: &Trace) -> Result<StepSignal, IaError> {
    let sem = Semantics::input_vacuity(spec)?;
    Ok(evaluate_dense_formula(&spec.formula, trace, &sem)?)
}

impl Semantics {
    pub fn relative(measured: BTreeSet<String>, fixed: BTreeSet<String>) -> Result<Semantics, IaError> {
        if let Some(v) = measured.intersection(&fixed).next() {
            return Err(IaError::OverlappingSets(v.clone()));
        }
        Ok(Semantics::Relative { measured, fixed })
    }

    /// `U = X_V` (outputs), `V = X \ X_V`: every other variable of the
    /// formula is held fixed.
    pub fn output_robustness(spec: &Specification) -> Result<Semantics, IaError> {
        if !spec.has_roles() {
            return Err(IaError::NoRoleDeclarations);
        }
        let outputs = spec.outputs();
        let fixed = spec.formula.variables().into_iter().filter(|v| !outputs.contains(v)).collect();
        Semantics::relative(outputs, fixed)
    }

    /// `U = X_U` (inputs), `V = {}`.
    pub fn input_vacuity(spec: &Specification) -> Result<Semantics, IaError> {
        if !spec.has_roles() {
            return Err(IaError::NoRoleDeclarations);
        }
        Semantics::relative(spec.inputs(), BTreeSet::new())
    }

    pub fn mode(&self, p: &Predicate) -> PredicateMode {
        match self {
            Semantics::Classic => PredicateMode::Quantitative,
            Semantics::Relative { measured, fixed } => {
                let vars = p.term.variables();
                if !vars.iter().all(|v| measured.contains(v) || fixed.contains(v)) {
                    PredicateMode::Neutral
                } else if !vars.iter().all(|v| fixed.contains(v)) {
                    PredicateMode::Quantitative
                } else {
                    PredicateMode::Qualitative
                }
            }
        }
    }
}
