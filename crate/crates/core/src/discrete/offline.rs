use super::window::{sliding, Extremum};
use super::{check_period, step_bounds, steps, DiscreteError};
use crate::compile::{top_offsets, Compiled, Node};
use crate::iastl::Semantics;
use crate::syntax::{Formula, Specification};
use crate::time::Time;
use crate::trace::{RobustnessSeries, Trace};
use crate::value::ExtReal;

const NEG_INF: ExtReal = ExtReal::NEG_INFINITY;
const INF: ExtReal = ExtReal::INFINITY;

/// Robustness of the specification's formula at every sample index whose
/// top-level windows meet the trace.
pub fn evaluate_discrete(spec: &Specification, trace: &Trace) -> Result<RobustnessSeries, DiscreteError> {
    evaluate_formula(&spec.formula, trace, spec.period, &Semantics::Classic)
}

pub fn evaluate_formula(
    f: &Formula,
    trace: &Trace,
    period: Time,
    semantics: &Semantics,
) -> Result<RobustnessSeries, DiscreteError> {
    let values = raw_robustness(f, trace, period, semantics)?;
    let n = values.len() as i64;
    let (p, q) = top_offsets(f, period);
    let (first, last) = (steps(p, period)?, n - 1 - steps(q, period)?);
    let points = (first..=last).map(|t| (period * t, values[t as usize])).collect();
    Ok(RobustnessSeries::from_points(points))
}

/// Robustness at every sample index, including edge indices where a window
/// is empty (those get the empty sup/inf values).
pub fn raw_robustness(
    f: &Formula,
    trace: &Trace,
    period: Time,
    semantics: &Semantics,
) -> Result<Vec<ExtReal>, DiscreteError> {
    check_period(period)?;
    let compiled = Compiled::new(f, semantics);
    let columns = columns(&compiled.vars, trace, period)?;
    let n = match columns.first() {
        Some(c) => c.len(),
        None => trace.signals().map(|(_, s)| s.len()).max().ok_or(DiscreteError::EmptyTrace)?,
    };
    if n == 0 {
        return Err(DiscreteError::EmptyTrace);
    }
    let mut out: Vec<Vec<ExtReal>> = Vec::with_capacity(compiled.nodes.len());
    let mut row = vec![0.0; compiled.vars.len()];
    for node in &compiled.nodes {
        let v = |i: usize| &out[i];
        let values = match node {
            Node::Const(b) => vec![if *b { INF } else { NEG_INF }; n],
            Node::Pred(p) => (0..n)
                .map(|t| {
                    for (slot, col) in row.iter_mut().zip(&columns) {
                        *slot = col[t];
                    }
                    p.score(&row)
                })
                .collect(),
            Node::Not(x) => v(*x).iter().map(|&r| -r).collect(),
            Node::And(x, y) => zip(v(*x), v(*y), ExtReal::min),
            Node::Or(x, y) => zip(v(*x), v(*y), ExtReal::max),
            Node::Implies(x, y) => zip(v(*x), v(*y), |a, b| (-a).max(b)),
            Node::Eventually(i, x) | Node::Always(i, x) => {
                let (a, b) = step_bounds(i, period)?;
                let kind = if matches!(node, Node::Eventually(..)) { Extremum::Max } else { Extremum::Min };
                sliding(v(*x), Some(a), b, kind)
            }
            Node::Once(i, x) | Node::Historically(i, x) => {
                let (a, b) = step_bounds(i, period)?;
                let kind = if matches!(node, Node::Once(..)) { Extremum::Max } else { Extremum::Min };
                sliding(v(*x), b.map(|b| -b), Some(-a), kind)
            }
            Node::Until(i, x, y) => {
                let (a, b) = step_bounds(i, period)?;
                until(v(*x), v(*y), a, b)
            }
            Node::Since(i, x, y) => {
                let (a, b) = step_bounds(i, period)?;
                since(v(*x), v(*y), a, b)
            }
            Node::Precedes(i, x, y) => {
                let (a, b) = step_bounds(i, period)?;
                let b = b.expect("precedes is bounded");
                precedes(v(*x), v(*y), a, b)
            }
            Node::Next(x) => shift(v(*x), 1),
            Node::Previous(x) => shift(v(*x), -1),
            Node::Rise(x) => {
                let neg: Vec<ExtReal> = v(*x).iter().map(|&r| -r).collect();
                zip(&shift(&neg, -1), v(*x), ExtReal::min)
            }
            Node::Fall(x) => {
                let neg: Vec<ExtReal> = v(*x).iter().map(|&r| -r).collect();
                zip(&shift(v(*x), -1), &neg, ExtReal::min)
            }
        };
        out.push(values);
    }
    Ok(out.pop().expect("formula has a root"))
}

fn columns(vars: &[String], trace: &Trace, period: Time) -> Result<Vec<Vec<f64>>, DiscreteError> {
    let mut cols = Vec::with_capacity(vars.len());
    for var in vars {
        let samples = trace.signal(var).ok_or_else(|| DiscreteError::UnknownVariable(var.clone()))?;
        if let Some(first) = cols.first().map(Vec::len) {
            if samples.len() != first {
                return Err(DiscreteError::LengthMismatch {
                    var: var.clone(),
                    expected: first,
                    found: samples.len(),
                });
            }
        }
        for (i, s) in samples.iter().enumerate() {
            let expected = period * i as i64;
            if s.time != expected {
                return Err(DiscreteError::NonUniformTrace { var: var.clone(), index: i, expected, found: s.time });
            }
        }
        cols.push(samples.iter().map(|s| s.value).collect());
    }
    Ok(cols)
}

fn zip(a: &[ExtReal], b: &[ExtReal], op: impl Fn(ExtReal, ExtReal) -> ExtReal) -> Vec<ExtReal> {
    a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect()
}

/// `out[t] = v[t + k]`, or `-inf` outside the trace.
fn shift(v: &[ExtReal], k: i64) -> Vec<ExtReal> {
    let n = v.len() as i64;
    (0..n).map(|t| if (0..n).contains(&(t + k)) { v[(t + k) as usize] } else { NEG_INF }).collect()
}

/// `x U_[a,b] y` as `min(inf x over [t, t+a), W(t+a))` with
/// `W = min(F_[0,b-a] y, x U y)` (just `x U y` when `b` is unbounded).
fn until(x: &[ExtReal], y: &[ExtReal], a: i64, b: Option<i64>) -> Vec<ExtReal> {
    let n = x.len();
    let mut w = vec![NEG_INF; n];
    let mut acc = NEG_INF;
    for s in (0..n).rev() {
        acc = y[s].max(x[s].min(acc));
        w[s] = acc;
    }
    if let Some(b) = b {
        let reach = sliding(y, Some(0), Some(b - a), Extremum::Max);
        w = zip(&reach, &w, ExtReal::min);
    }
    let head = if a > 0 { sliding(x, Some(0), Some(a - 1), Extremum::Min) } else { vec![INF; n] };
    (0..n)
        .map(|t| {
            let s = t + a as usize;
            if s < n {
                head[t].min(w[s])
            } else {
                NEG_INF
            }
        })
        .collect()
}

/// Mirror image of [`until`]: `min(inf x over (t-a, t], W(t-a))` with
/// `W = min(O_[0,b-a] y, x S y)`.
fn since(x: &[ExtReal], y: &[ExtReal], a: i64, b: Option<i64>) -> Vec<ExtReal> {
    let n = x.len();
    let mut w = vec![NEG_INF; n];
    let mut acc = NEG_INF;
    for s in 0..n {
        acc = y[s].max(x[s].min(acc));
        w[s] = acc;
    }
    if let Some(b) = b {
        let reach = sliding(y, Some(a - b), Some(0), Extremum::Max);
        w = zip(&reach, &w, ExtReal::min);
    }
    let head = if a > 0 { sliding(x, Some(1 - a), Some(0), Extremum::Min) } else { vec![INF; n] };
    (0..n)
        .map(|t| if t as i64 >= a { head[t].min(w[t - a as usize]) } else { NEG_INF })
        .collect()
}

/// `x P_[a,b] y` at `t` is `x U_[a,b] y` at `t - b`, with `x = +inf` and
/// `y = -inf` before the trace starts.
fn precedes(x: &[ExtReal], y: &[ExtReal], a: i64, b: i64) -> Vec<ExtReal> {
    let pad = b as usize;
    let xp: Vec<ExtReal> = std::iter::repeat_n(INF, pad).chain(x.iter().copied()).collect();
    let yp: Vec<ExtReal> = std::iter::repeat_n(NEG_INF, pad).chain(y.iter().copied()).collect();
    let mut u = until(&xp, &yp, a, Some(b));
    u.truncate(x.len());
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(text: &str) -> Specification {
        Specification::new(text.parse().unwrap())
    }

    fn trace(x: &[f64]) -> Trace {
        Trace::uniform(Time::from(1), [("x", x)]).unwrap()
    }

    fn values(s: &RobustnessSeries) -> Vec<f64> {
        s.values().map(ExtReal::get).collect()
    }

    #[test]
    fn predicate_series() {
        let s = evaluate_discrete(&spec("x > 0"), &trace(&[5.0, 5.0, 5.0])).unwrap();
        assert_eq!(s.points().iter().map(|p| p.0).collect::<Vec<_>>(), vec![0.into(), 1.into(), 2.into()]);
        assert_eq!(values(&s), vec![5.0, 5.0, 5.0]);
    }

    #[test]
    fn historically_running_min() {
        let s = evaluate_discrete(&spec("historically(x > 0)"), &trace(&[3.0, -1.0, 4.0])).unwrap();
        assert_eq!(values(&s), vec![3.0, -1.0, -1.0]);
    }

    #[test]
    fn truncates_to_nonempty_top_window() {
        let s = evaluate_discrete(&spec("eventually[2:3](x > 0)"), &trace(&[1.0, 2.0, 3.0, 4.0, 5.0])).unwrap();
        assert_eq!(values(&s), vec![4.0, 5.0, 5.0]);
        let p = evaluate_discrete(&spec("once[1:1](x > 0)"), &trace(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(p.first(), Some((Time::from(1), ExtReal::finite(1.0))));
    }

    #[test]
    fn rejects_bad_input() {
        let t = trace(&[1.0, 2.0]);
        assert_eq!(
            evaluate_discrete(&spec("y > 0"), &t),
            Err(DiscreteError::UnknownVariable("y".into()))
        );
        let half = spec("once[1/2:1](x > 0)");
        assert!(matches!(evaluate_discrete(&half, &t), Err(DiscreteError::MisalignedInterval { .. })));
        let gap = Trace::new().with_signal("x", [(0, 1.0), (2, 2.0)]).unwrap();
        assert!(matches!(evaluate_discrete(&spec("x > 0"), &gap), Err(DiscreteError::NonUniformTrace { .. })));
    }

    #[test]
    fn period_scales_timestamps() {
        let t = Trace::uniform(Time::new(1, 10), [("x", &[1.0, 2.0, 3.0][..])]).unwrap();
        let f = Specification::new("once[1/10:1/10](x > 0)".parse().unwrap()).with_period(Time::new(1, 10));
        let s = evaluate_discrete(&f, &t).unwrap();
        assert_eq!(s.points(), &[(Time::new(1, 10), ExtReal::finite(1.0)), (Time::new(1, 5), ExtReal::finite(2.0))]);
    }
}
