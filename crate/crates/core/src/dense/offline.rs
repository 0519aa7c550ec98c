use super::signal::{align, Knot, StepSignal};
use super::window::{window, Edge};
use super::DenseError;
use crate::compile::{top_offsets, Compiled, Node};
use crate::discrete::window::Extremum;
use crate::iastl::Semantics;
use crate::syntax::{Formula, Specification};
use crate::time::{Interval, Time, TimeBound};
use crate::trace::{Sample, Trace};
use crate::value::ExtReal;

const NEG_INF: ExtReal = ExtReal::NEG_INFINITY;
const INF: ExtReal = ExtReal::INFINITY;

/// Robustness of the specification's formula as a step signal over the part
/// of the common trace domain where the top-level windows are nonempty.
pub fn evaluate_dense(spec: &Specification, trace: &Trace) -> Result<StepSignal, DenseError> {
    evaluate_dense_formula(&spec.formula, trace, &Semantics::Classic)
}

pub fn evaluate_dense_formula(f: &Formula, trace: &Trace, semantics: &Semantics) -> Result<StepSignal, DenseError> {
    let raw = raw_dense(f, trace, semantics)?;
    let (s, e) = (raw.start().expect("nonempty"), raw.end().expect("nonempty"));
    let (p, q) = top_offsets(f, Time::ZERO);
    Ok(raw.restrict(s + p, e - q))
}

/// Robustness over the whole common domain, edges included.
pub fn raw_dense(f: &Formula, trace: &Trace, semantics: &Semantics) -> Result<StepSignal, DenseError> {
    if let Some(op) = unsupported(f) {
        return Err(DenseError::UnsupportedOperator { operator: op });
    }
    let compiled = Compiled::new(f, semantics);
    let signals = compiled
        .vars
        .iter()
        .map(|v| trace.signal(v).ok_or_else(|| DenseError::UnknownVariable(v.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let (s, e) = domain(&signals, trace)?;
    let mut out: Vec<StepSignal> = Vec::with_capacity(compiled.nodes.len());
    let len = e - s;
    for node in &compiled.nodes {
        let v = |i: usize| &out[i];
        let sig = match node {
            Node::Const(b) => StepSignal::constant(s, e, if *b { INF } else { NEG_INF }),
            Node::Pred(p) => predicate(&signals, s, e, |row| p.score(row)),
            Node::Not(x) => v(*x).map(|r| -r),
            Node::And(x, y) => v(*x).zip(v(*y), ExtReal::min),
            Node::Or(x, y) => v(*x).zip(v(*y), ExtReal::max),
            Node::Implies(x, y) => v(*x).zip(v(*y), |a, b| (-a).max(b)),
            Node::Eventually(i, x) | Node::Always(i, x) => {
                let kind = if matches!(node, Node::Eventually(..)) { Extremum::Max } else { Extremum::Min };
                let (a, b) = bounds(i, len);
                window(v(*x), Edge::closed(a), Edge::closed(b), kind)
            }
            Node::Once(i, x) | Node::Historically(i, x) => {
                let kind = if matches!(node, Node::Once(..)) { Extremum::Max } else { Extremum::Min };
                let (a, b) = bounds(i, len);
                window(v(*x), Edge::closed(-b), Edge::closed(-a), kind)
            }
            Node::Until(i, x, y) => until(v(*x), v(*y), i.lo(), finite(i)),
            Node::Since(i, x, y) => since(v(*x), v(*y), i.lo(), finite(i)),
            Node::Precedes(i, x, y) => {
                let b = finite(i).expect("precedes is bounded");
                precedes(v(*x), v(*y), i.lo(), b)
            }
            Node::Next(_) | Node::Previous(_) | Node::Rise(_) | Node::Fall(_) => unreachable!("rejected above"),
        };
        out.push(sig);
    }
    Ok(out.pop().expect("formula has a root"))
}

fn unsupported(f: &Formula) -> Option<&'static str> {
    if matches!(f, Formula::Next(_) | Formula::Previous(_) | Formula::Rise(_) | Formula::Fall(_)) {
        return Some(f.operator_name());
    }
    f.children().into_iter().find_map(unsupported)
}

/// `[max of first timestamps, min of last timestamps]` over the formula's
/// variables (all trace variables for a variable-free formula).
fn domain(signals: &[&[Sample]], trace: &Trace) -> Result<(Time, Time), DenseError> {
    let all: Vec<&[Sample]> = if signals.is_empty() { trace.signals().map(|(_, s)| s).collect() } else { signals.to_vec() };
    let mut s: Option<Time> = None;
    let mut e: Option<Time> = None;
    for sig in all {
        let (Some(first), Some(last)) = (sig.first(), sig.last()) else {
            return Err(DenseError::EmptyTrace);
        };
        s = Some(s.map_or(first.time, |s| s.max(first.time)));
        e = Some(e.map_or(last.time, |e| e.min(last.time)));
    }
    match (s, e) {
        (Some(s), Some(e)) if s <= e => Ok((s, e)),
        (Some(start), Some(end)) => Err(DenseError::NoOverlap { start, end }),
        _ => Err(DenseError::EmptyTrace),
    }
}

fn bounds(i: &Interval, len: Time) -> (Time, Time) {
    match i.hi() {
        TimeBound::Finite(b) => (i.lo(), b),
        TimeBound::Infinite => (i.lo(), len.max(i.lo())),
    }
}

fn finite(i: &Interval) -> Option<Time> {
    match i.hi() {
        TimeBound::Finite(b) => Some(b),
        TimeBound::Infinite => None,
    }
}

/// Predicate over piecewise-constant inputs: a knot at every sample time of
/// any variable, holding the score of the latest values.
fn predicate(signals: &[&[Sample]], s: Time, e: Time, score: impl Fn(&[f64]) -> ExtReal) -> StepSignal {
    let mut times: Vec<Time> =
        signals.iter().flat_map(|sig| sig.iter().map(|x| x.time)).filter(|&t| s <= t && t <= e).collect();
    times.push(s);
    times.push(e);
    times.sort();
    times.dedup();
    let mut idx = vec![0usize; signals.len()];
    let mut row = vec![0.0; signals.len()];
    let mut knots = Vec::with_capacity(times.len());
    for t in times {
        for (k, sig) in signals.iter().enumerate() {
            while idx[k] + 1 < sig.len() && sig[idx[k] + 1].time <= t {
                idx[k] += 1;
            }
            row[k] = sig[idx[k]].value;
        }
        let r = score(&row);
        knots.push(Knot::new(t, r, r));
    }
    StepSignal::new(knots)
}

/// `x U y` (unbounded, from each instant to the domain end) by a backward
/// pass over alternating point and gap pieces.
fn until_unbounded(x: &StepSignal, y: &StepSignal) -> StepSignal {
    let (times, p) = align(&[x, y]);
    let (xs, ys) = (&p[0], &p[1]);
    let n = xs.len();
    let mut u = vec![NEG_INF; n];
    for i in (0..n).rev() {
        u[i] = if i + 1 == n {
            ys[i]
        } else if i % 2 == 0 {
            // point: witness here, inside the next gap, or from the next knot on
            ys[i].max(xs[i].min(xs[i + 1]).min(ys[i + 1].max(u[i + 2])))
        } else {
            ys[i].max(xs[i].min(u[i + 1]))
        };
    }
    StepSignal::from_pieces(&times, &u)
}

/// Mirror image of [`until_unbounded`], forward from the domain start.
fn since_unbounded(x: &StepSignal, y: &StepSignal) -> StepSignal {
    let (times, p) = align(&[x, y]);
    let (xs, ys) = (&p[0], &p[1]);
    let n = xs.len();
    let mut u = vec![NEG_INF; n];
    for i in 0..n {
        u[i] = if i == 0 {
            ys[0]
        } else if i % 2 == 0 {
            ys[i].max(xs[i].min(xs[i - 1]).min(ys[i - 1].max(u[i - 2])))
        } else {
            ys[i].max(xs[i].min(u[i - 1]))
        };
    }
    StepSignal::from_pieces(&times, &u)
}

/// `min(inf x over [t, t+a), W(t+a))`, `W = min(F_[0,b-a] y, x U y)`.
fn until(x: &StepSignal, y: &StepSignal, a: Time, b: Option<Time>) -> StepSignal {
    let (s, e) = (x.start().expect("nonempty"), x.end().expect("nonempty"));
    let mut w = until_unbounded(x, y);
    if let Some(b) = b {
        let reach = window(y, Edge::closed(Time::ZERO), Edge::closed(b - a), Extremum::Max);
        w = reach.zip(&w, ExtReal::min);
    }
    let shifted = w.reframe(a, s, e, NEG_INF);
    if a > Time::ZERO {
        let head = window(x, Edge::closed(Time::ZERO), Edge::open(a), Extremum::Min);
        head.zip(&shifted, ExtReal::min)
    } else {
        shifted
    }
}

/// `min(inf x over (t-a, t], W(t-a))`, `W = min(O_[0,b-a] y, x S y)`.
fn since(x: &StepSignal, y: &StepSignal, a: Time, b: Option<Time>) -> StepSignal {
    let (s, e) = (x.start().expect("nonempty"), x.end().expect("nonempty"));
    let mut w = since_unbounded(x, y);
    if let Some(b) = b {
        let reach = window(y, Edge::closed(a - b), Edge::closed(Time::ZERO), Extremum::Max);
        w = reach.zip(&w, ExtReal::min);
    }
    let shifted = w.reframe(-a, s, e, NEG_INF);
    if a > Time::ZERO {
        let head = window(x, Edge::open(-a), Edge::closed(Time::ZERO), Extremum::Min);
        head.zip(&shifted, ExtReal::min)
    } else {
        shifted
    }
}

/// `x P_[a,b] y` at `t` is `x U_[a,b] y` at `t - b`, with `x = +inf` and
/// `y = -inf` before the domain starts.
fn precedes(x: &StepSignal, y: &StepSignal, a: Time, b: Time) -> StepSignal {
    let (s, e) = (x.start().expect("nonempty"), x.end().expect("nonempty"));
    let xp = x.reframe(Time::ZERO, s - b, e, INF);
    let yp = y.reframe(Time::ZERO, s - b, e, NEG_INF);
    until(&xp, &yp, a, Some(b)).reframe(-b, s, e, NEG_INF)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(text: &str) -> Specification {
        Specification::new(text.parse().unwrap())
    }

    fn v(x: f64) -> ExtReal {
        ExtReal::finite(x)
    }

    #[test]
    fn until_witness_at_an_instant() {
        // y only reaches 1 exactly at t = 1 in the dense reading of p, q
        let trace = Trace::new().with_signal("p", [(0, -1.0), (1, 1.0)]).unwrap().with_signal("q", [(0, 1.0), (1, -1.0)]).unwrap();
        let s = evaluate_dense(&spec("(p > 0) since (q > 0)"), &trace).unwrap();
        assert_eq!(s.value_at(Time::from(1)), Some(v(-1.0)));
        let u = evaluate_dense(&spec("(q > 0) until (p > 0)"), &trace).unwrap();
        assert_eq!(u.value_at(Time::from(0)), Some(v(1.0)));
    }

    #[test]
    fn eventually_restricts_domain() {
        let trace = Trace::new().with_signal("x", [(0, 1.0), (2, 3.0), (4, 0.0), (6, 0.0)]).unwrap();
        let s = evaluate_dense(&spec("eventually[1:2](x > 0)"), &trace).unwrap();
        assert_eq!(s.start(), Some(Time::from(0)));
        assert_eq!(s.end(), Some(Time::from(5)));
        assert_eq!(s.value_at(Time::from(0)), Some(v(3.0)));
        assert_eq!(s.value_after(Time::from(3)), Some(v(0.0)));
    }

    #[test]
    fn rejects_sampled_operators() {
        let trace = Trace::new().with_signal("x", [(0, 1.0)]).unwrap();
        assert_eq!(
            evaluate_dense(&spec("next(x > 0)"), &trace),
            Err(DenseError::UnsupportedOperator { operator: "next" })
        );
    }
}
