//! Discrete time: the domain is the sample index set `0..n`.

use stlmon::syntax::Formula;
use stlmon::time::{Interval, Time, TimeBound};
use stlmon::trace::Trace;
use stlmon::value::ExtReal;

use crate::{classic, inf, sup, truth, Valuation};

struct Ctx<'a> {
    trace: &'a Trace,
    n: usize,
    step: Time,
    val: Valuation<'a>,
}

/// Number of samples of a uniformly sampled trace (panics otherwise).
pub fn length(trace: &Trace, step: Time) -> usize {
    let mut n = None;
    for (var, samples) in trace.signals() {
        for (i, s) in samples.iter().enumerate() {
            assert_eq!(s.time, step * i as i64, "oracle needs uniform samples ({var})");
        }
        match n {
            None => n = Some(samples.len()),
            Some(m) => assert_eq!(m, samples.len(), "oracle needs equal-length signals"),
        }
    }
    n.expect("trace has no variables")
}

/// Classical robustness at every sample index.
pub fn robustness(f: &Formula, trace: &Trace, step: Time) -> Vec<ExtReal> {
    robustness_with(f, trace, step, &classic)
}

/// Qualitative satisfaction at every sample index.
pub fn boolean(f: &Formula, trace: &Trace, step: Time) -> Vec<bool> {
    robustness_with(f, trace, step, &truth).into_iter().map(|v| v > ExtReal::ZERO).collect()
}

pub fn robustness_with(f: &Formula, trace: &Trace, step: Time, val: Valuation) -> Vec<ExtReal> {
    let n = length(trace, step);
    Ctx { trace, n, step, val }.eval(f)
}

/// Sample indices whose top-level windows meet the domain.
pub fn defined_indices(f: &Formula, n: usize, step: Time) -> Vec<usize> {
    (0..n).filter(|&t| top_window_nonempty(f, t as i64, n as i64, step)).collect()
}

fn steps(t: Time, step: Time) -> i64 {
    t.steps_of(step).expect("interval bound not a multiple of the period")
}

fn bounds(i: &Interval, step: Time, n: i64) -> (i64, i64) {
    let a = steps(i.lo(), step);
    let b = match i.hi() {
        TimeBound::Finite(b) => steps(b, step),
        TimeBound::Infinite => n,
    };
    (a, b)
}

fn top_window_nonempty(f: &Formula, t: i64, n: i64, step: Time) -> bool {
    match f {
        Formula::Not(x) => top_window_nonempty(x, t, n, step),
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) => {
            top_window_nonempty(x, t, n, step) && top_window_nonempty(y, t, n, step)
        }
        Formula::Eventually(i, _) | Formula::Always(i, _) | Formula::Until(i, ..) => {
            t + bounds(i, step, n).0 < n
        }
        Formula::Once(i, _) | Formula::Historically(i, _) | Formula::Since(i, ..) => {
            t - bounds(i, step, n).0 >= 0
        }
        Formula::Next(_) => t + 1 < n,
        Formula::Previous(_) | Formula::Rise(_) | Formula::Fall(_) => t >= 1,
        _ => true,
    }
}

impl Ctx<'_> {
    fn value(&self, var: &str, t: usize) -> f64 {
        self.trace.signal(var).unwrap_or_else(|| panic!("no signal `{var}`"))[t].value
    }

    fn range(&self, lo: i64, hi: i64) -> impl Iterator<Item = usize> {
        let lo = lo.max(0);
        let hi = hi.min(self.n as i64 - 1);
        (lo..=hi).map(|i| i as usize)
    }

    fn eval(&self, f: &Formula) -> Vec<ExtReal> {
        let n = self.n;
        let ni = n as i64;
        let per_t = |g: &dyn Fn(i64) -> ExtReal| (0..ni).map(g).collect::<Vec<_>>();
        match f {
            Formula::Const(b) => vec![if *b { ExtReal::INFINITY } else { ExtReal::NEG_INFINITY }; n],
            Formula::Predicate(p) => (0..n).map(|t| (self.val)(p, &|v| self.value(v, t))).collect(),
            Formula::Not(x) => self.eval(x).into_iter().map(|v| -v).collect(),
            Formula::And(x, y) => zip(self.eval(x), self.eval(y), |a, b| a.min(b)),
            Formula::Or(x, y) => zip(self.eval(x), self.eval(y), |a, b| a.max(b)),
            Formula::Implies(x, y) => zip(self.eval(x), self.eval(y), |a, b| (-a).max(b)),
            Formula::Eventually(i, x) => {
                let r = self.eval(x);
                let (a, b) = bounds(i, self.step, ni);
                per_t(&|t| sup(self.range(t + a, t + b).map(|u| r[u])))
            }
            Formula::Always(i, x) => {
                let r = self.eval(x);
                let (a, b) = bounds(i, self.step, ni);
                per_t(&|t| inf(self.range(t + a, t + b).map(|u| r[u])))
            }
            Formula::Once(i, x) => {
                let r = self.eval(x);
                let (a, b) = bounds(i, self.step, ni);
                per_t(&|t| sup(self.range(t - b, t - a).map(|u| r[u])))
            }
            Formula::Historically(i, x) => {
                let r = self.eval(x);
                let (a, b) = bounds(i, self.step, ni);
                per_t(&|t| inf(self.range(t - b, t - a).map(|u| r[u])))
            }
            Formula::Until(i, x, y) => {
                let (r1, r2) = (self.eval(x), self.eval(y));
                let (a, b) = bounds(i, self.step, ni);
                per_t(&|t| {
                    sup(self.range(t + a, t + b).map(|u| {
                        // t'' in [t, t')
                        r2[u].min(inf(self.range(t, u as i64 - 1).map(|k| r1[k])))
                    }))
                })
            }
            Formula::Since(i, x, y) => {
                let (r1, r2) = (self.eval(x), self.eval(y));
                let (a, b) = bounds(i, self.step, ni);
                per_t(&|t| {
                    sup(self.range(t - b, t - a).map(|u| {
                        // t'' in (t', t]
                        r2[u].min(inf(self.range(u as i64 + 1, t).map(|k| r1[k])))
                    }))
                })
            }
            Formula::Precedes(i, x, y) => {
                let (r1, r2) = (self.eval(x), self.eval(y));
                let (a, b) = bounds(i, self.step, ni);
                per_t(&|t| {
                    sup(self.range(t - b + a, t).map(|u| {
                        // t'' in [t - b, t')
                        r2[u].min(inf(self.range(t - b, u as i64 - 1).map(|k| r1[k])))
                    }))
                })
            }
            Formula::Next(x) => {
                let r = self.eval(x);
                per_t(&|t| if t + 1 < ni { r[(t + 1) as usize] } else { ExtReal::NEG_INFINITY })
            }
            Formula::Previous(x) => {
                let r = self.eval(x);
                per_t(&|t| if t >= 1 { r[(t - 1) as usize] } else { ExtReal::NEG_INFINITY })
            }
            Formula::Rise(x) => {
                let r = self.eval(x);
                per_t(&|t| {
                    let before = if t >= 1 { -r[(t - 1) as usize] } else { ExtReal::NEG_INFINITY };
                    before.min(r[t as usize])
                })
            }
            Formula::Fall(x) => {
                let r = self.eval(x);
                per_t(&|t| {
                    let before = if t >= 1 { r[(t - 1) as usize] } else { ExtReal::NEG_INFINITY };
                    before.min(-r[t as usize])
                })
            }
        }
    }
}

fn zip(a: Vec<ExtReal>, b: Vec<ExtReal>, op: impl Fn(ExtReal, ExtReal) -> ExtReal) -> Vec<ExtReal> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(v: &[f64]) -> Vec<ExtReal> {
        v.iter().map(|&x| ExtReal::finite(x)).collect()
    }

    fn one() -> Time {
        Time::from(1)
    }

    #[test]
    fn negation_and_disjunction_clauses() {
        let tr = Trace::uniform(one(), [("x", &[1.0, -2.0, 3.0][..]), ("y", &[0.5, 0.5, 4.0][..])]).unwrap();
        assert_eq!(robustness(&"not (x > 0)".parse().unwrap(), &tr, one()), fin(&[-1.0, 2.0, -3.0]));
        assert_eq!(robustness(&"x > 0 or y > 0".parse().unwrap(), &tr, one()), fin(&[1.0, 0.5, 4.0]));
    }

    #[test]
    fn hand_computed_until() {
        // p = [1, 3, -1, 2, 5], q = [-4, 0, 2, -3, 1]
        let tr = Trace::uniform(
            one(),
            [("p", &[1.0, 3.0, -1.0, 2.0, 5.0][..]), ("q", &[-4.0, 0.0, 2.0, -3.0, 1.0][..])],
        )
        .unwrap();
        let f: Formula = "(p > 0) until[1:2] (q > 0)".parse().unwrap();
        // t=0: t'=1: min(0, inf{1}) = 0; t'=2: min(2, inf{1,3}) = 1 -> 1
        // t=1: t'=2: min(2, 3) = 2; t'=3: min(-3, ..) = -3 -> 2
        // t=2: t'=3: min(-3, -1) = -3; t'=4: min(1, min(-1,2)) = -1 -> -1
        // t=3: t'=4: min(1, 2) = 1 -> 1
        // t=4: empty window -> -inf
        let mut expected = fin(&[1.0, 2.0, -1.0, 1.0]);
        expected.push(ExtReal::NEG_INFINITY);
        assert_eq!(robustness(&f, &tr, one()), expected);
        assert_eq!(defined_indices(&f, 5, one()), vec![0, 1, 2, 3]);
    }

    #[test]
    fn hand_computed_since_and_precedes() {
        let tr = Trace::uniform(
            one(),
            [("p", &[1.0, 3.0, -1.0, 2.0][..]), ("q", &[2.0, -1.0, 0.5, 4.0][..])],
        )
        .unwrap();
        let s: Formula = "(p > 0) since[0:1] (q > 0)".parse().unwrap();
        // t=0: t'=0 -> min(2, +inf) = 2
        // t=1: t'=1 -> -1; t'=0 -> min(2, inf{3}) = 2 -> 2
        // t=2: t'=2 -> 0.5; t'=1 -> min(-1, ..) -> 0.5
        // t=3: t'=3 -> 4 -> 4
        assert_eq!(robustness(&s, &tr, one()), fin(&[2.0, 2.0, 0.5, 4.0]));
        let p: Formula = "(p > 0) precedes[1:2] (q > 0)".parse().unwrap();
        // P(t) = sup_{t' in [t-1, t]} min(q(t'), inf_{[t-2, t')} p)
        // t=0: t'=0: inf over empty -> 2
        // t=1: t'=0 -> 2; t'=1 -> min(-1, 1) -> 2
        // t=2: t'=1 -> min(-1, 1) = -1; t'=2 -> min(0.5, min(1,3)) = 0.5 -> 0.5
        // t=3: t'=2 -> min(0.5, 3) = 0.5; t'=3 -> min(4, min(3,-1)) = -1 -> 0.5
        assert_eq!(robustness(&p, &tr, one()), fin(&[2.0, 2.0, 0.5, 0.5]));
    }

    #[test]
    fn boolean_true_predicate() {
        let tr = Trace::uniform(one(), [("x", &[1.0, 2.0][..])]).unwrap();
        assert_eq!(boolean(&"x > 0".parse().unwrap(), &tr, one()), vec![true, true]);
    }
}
