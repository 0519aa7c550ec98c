//! Dense time over piecewise-constant signals.
//!
//! Each signal holds its last sampled value until the next sample. The domain
//! is `[S, E]`, from the latest first timestamp to the earliest last one.
//! Every node gets a finite breakpoint set outside of which its value is
//! locally constant; sup/inf over a window then reduce to the window
//! endpoints, the breakpoints inside it and the midpoints between those.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use stlmon::syntax::Formula;
use stlmon::time::{Time, TimeBound};
use stlmon::trace::Trace;
use stlmon::value::ExtReal;

use crate::{classic, inf, sup, truth, Valuation};

pub struct Dense<'a> {
    trace: &'a Trace,
    start: Time,
    end: Time,
    val: Valuation<'a>,
    memo: RefCell<HashMap<(usize, Time), ExtReal>>,
    bps: RefCell<HashMap<usize, Vec<Time>>>,
}

/// `[S, E]` of the variables used by `f`.
pub fn domain(f: &Formula, trace: &Trace) -> (Time, Time) {
    let vars = f.variables();
    let signals: Vec<_> = if vars.is_empty() {
        trace.signals().map(|(_, s)| s).collect()
    } else {
        vars.iter().map(|v| trace.signal(v).unwrap_or_else(|| panic!("no signal `{v}`"))).collect()
    };
    let start = signals.iter().map(|s| s[0].time).max().expect("no signals");
    let end = signals.iter().map(|s| s.last().unwrap().time).min().unwrap();
    assert!(start <= end, "signals do not overlap");
    (start, end)
}

/// The part of the domain where the top-level windows meet it, if any.
pub fn defined_domain(f: &Formula, trace: &Trace) -> Option<(Time, Time)> {
    let (s, e) = domain(f, trace);
    let (p, q) = offsets(f);
    (s + p <= e - q).then_some((s + p, e - q))
}

fn offsets(f: &Formula) -> (Time, Time) {
    match f {
        Formula::Not(x) => offsets(x),
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) => {
            let (a, b) = (offsets(x), offsets(y));
            (a.0.max(b.0), a.1.max(b.1))
        }
        Formula::Eventually(i, _) | Formula::Always(i, _) | Formula::Until(i, ..) => (Time::ZERO, i.lo()),
        Formula::Once(i, _) | Formula::Historically(i, _) | Formula::Since(i, ..) => (i.lo(), Time::ZERO),
        _ => (Time::ZERO, Time::ZERO),
    }
}

pub fn value_at(f: &Formula, trace: &Trace, t: Time) -> ExtReal {
    Dense::new(f, trace, &classic).at(f, t)
}

pub fn boolean_at(f: &Formula, trace: &Trace, t: Time) -> bool {
    Dense::new(f, trace, &truth).at(f, t) > ExtReal::ZERO
}

/// Times worth checking: breakpoints of `f` in its defined domain and the
/// midpoints between consecutive ones.
pub fn check_points(f: &Formula, trace: &Trace) -> Vec<Time> {
    let Some((lo, hi)) = defined_domain(f, trace) else {
        return Vec::new();
    };
    let d = Dense::new(f, trace, &classic);
    let mut pts: BTreeSet<Time> = d.breakpoints(f).into_iter().filter(|&t| lo <= t && t <= hi).collect();
    pts.insert(lo);
    pts.insert(hi);
    with_midpoints(pts.into_iter().collect())
}

fn with_midpoints(points: Vec<Time>) -> Vec<Time> {
    let mut out = Vec::with_capacity(points.len() * 2);
    for (i, &p) in points.iter().enumerate() {
        if i > 0 {
            out.push(points[i - 1].midpoint(p));
        }
        out.push(p);
    }
    out
}

fn key(f: &Formula) -> usize {
    f as *const Formula as usize
}

impl<'a> Dense<'a> {
    /// Evaluator for `root` and its subformulas (addresses are memo keys, so
    /// only nodes of `root` may be evaluated).
    pub fn new(root: &Formula, trace: &'a Trace, val: Valuation<'a>) -> Dense<'a> {
        let (start, end) = domain(root, trace);
        Dense { trace, start, end, val, memo: RefCell::default(), bps: RefCell::default() }
    }

    fn signal_value(&self, var: &str, t: Time) -> f64 {
        let s = self.trace.signal(var).unwrap_or_else(|| panic!("no signal `{var}`"));
        let idx = s.partition_point(|x| x.time <= t);
        assert!(idx > 0, "time {t} before first sample of `{var}`");
        s[idx - 1].value
    }

    fn clip(&self, pts: impl IntoIterator<Item = Time>) -> Vec<Time> {
        let mut set: BTreeSet<Time> = pts.into_iter().filter(|&t| self.start <= t && t <= self.end).collect();
        set.insert(self.start);
        set.insert(self.end);
        set.into_iter().collect()
    }

    pub fn breakpoints(&self, f: &Formula) -> Vec<Time> {
        if let Some(b) = self.bps.borrow().get(&key(f)) {
            return b.clone();
        }
        let kids: Vec<Time> = f.children().into_iter().flat_map(|c| self.breakpoints(c)).collect();
        let out = match f {
            Formula::Const(_) => self.clip([]),
            Formula::Predicate(p) => {
                let mut pts = Vec::new();
                for v in p.term.variables() {
                    pts.extend(self.trace.signal(&v).expect("signal").iter().map(|s| s.time));
                }
                self.clip(pts)
            }
            Formula::Eventually(i, _) | Formula::Always(i, _) | Formula::Until(i, ..) => {
                let mut pts = kids.clone();
                for &p in &kids {
                    pts.push(p - i.lo());
                    if let TimeBound::Finite(b) = i.hi() {
                        pts.push(p - b);
                    }
                }
                self.clip(pts)
            }
            Formula::Once(i, _) | Formula::Historically(i, _) | Formula::Since(i, ..) => {
                let mut pts = kids.clone();
                for &p in &kids {
                    pts.push(p + i.lo());
                    if let TimeBound::Finite(b) = i.hi() {
                        pts.push(p + b);
                    }
                }
                self.clip(pts)
            }
            Formula::Precedes(i, ..) => {
                let b = i.hi().finite().expect("bounded precedes");
                let mut pts = kids.clone();
                for &p in &kids {
                    pts.push(p + b - i.lo());
                    pts.push(p + b);
                }
                self.clip(pts)
            }
            Formula::Next(_) | Formula::Previous(_) | Formula::Rise(_) | Formula::Fall(_) => {
                panic!("`{}` has no dense-time meaning", f.operator_name())
            }
            _ => self.clip(kids),
        };
        self.bps.borrow_mut().insert(key(f), out.clone());
        out
    }

    /// Points covering `[lo, hi]` (closed ends as given) for sup/inf of a
    /// node with breakpoints `bps`.
    fn cover(&self, lo: Time, lo_closed: bool, hi: Time, hi_closed: bool, bps: &[Time]) -> Vec<Time> {
        if lo > hi || (lo == hi && !(lo_closed && hi_closed)) {
            return Vec::new();
        }
        let mut pts: Vec<Time> = vec![lo];
        pts.extend(bps.iter().copied().filter(|&p| lo < p && p < hi));
        if hi > lo {
            pts.push(hi);
        }
        let all = with_midpoints(pts);
        all.into_iter()
            .filter(|&t| (t != lo || lo_closed) && (t != hi || hi_closed))
            .collect()
    }

    pub fn at(&self, f: &Formula, t: Time) -> ExtReal {
        assert!(self.start <= t && t <= self.end, "time {t} outside [{}, {}]", self.start, self.end);
        if let Some(v) = self.memo.borrow().get(&(key(f), t)) {
            return *v;
        }
        let v = self.compute(f, t);
        self.memo.borrow_mut().insert((key(f), t), v);
        v
    }

    fn hi_clip(&self, t: Time, hi: TimeBound) -> Time {
        match hi {
            TimeBound::Finite(b) => (t + b).min(self.end),
            TimeBound::Infinite => self.end,
        }
    }

    fn lo_clip(&self, t: Time, hi: TimeBound) -> Time {
        match hi {
            TimeBound::Finite(b) => (t - b).max(self.start),
            TimeBound::Infinite => self.start,
        }
    }

    fn compute(&self, f: &Formula, t: Time) -> ExtReal {
        match f {
            Formula::Const(b) => {
                if *b {
                    ExtReal::INFINITY
                } else {
                    ExtReal::NEG_INFINITY
                }
            }
            Formula::Predicate(p) => (self.val)(p, &|v| self.signal_value(v, t)),
            Formula::Not(x) => -self.at(x, t),
            Formula::And(x, y) => self.at(x, t).min(self.at(y, t)),
            Formula::Or(x, y) => self.at(x, t).max(self.at(y, t)),
            Formula::Implies(x, y) => (-self.at(x, t)).max(self.at(y, t)),
            Formula::Eventually(i, x) | Formula::Always(i, x) => {
                let bps = self.breakpoints(x);
                let pts = self.cover(t + i.lo(), true, self.hi_clip(t, i.hi()), true, &bps);
                let vals = pts.into_iter().map(|u| self.at(x, u));
                if matches!(f, Formula::Eventually(..)) {
                    sup(vals)
                } else {
                    inf(vals)
                }
            }
            Formula::Once(i, x) | Formula::Historically(i, x) => {
                let bps = self.breakpoints(x);
                let pts = self.cover(self.lo_clip(t, i.hi()), true, t - i.lo(), true, &bps);
                let vals = pts.into_iter().map(|u| self.at(x, u));
                if matches!(f, Formula::Once(..)) {
                    sup(vals)
                } else {
                    inf(vals)
                }
            }
            Formula::Until(i, x, y) => {
                let (b1, b2) = (self.breakpoints(x), self.breakpoints(y));
                let mut both: Vec<Time> = b1.iter().chain(&b2).copied().collect();
                both.push(t);
                both.sort();
                let outer = self.cover(t + i.lo(), true, self.hi_clip(t, i.hi()), true, &both);
                sup(outer.into_iter().map(|u| {
                    // t'' in [t, t')
                    let inner = self.cover(t, true, u, false, &b1);
                    self.at(y, u).min(inf(inner.into_iter().map(|k| self.at(x, k))))
                }))
            }
            Formula::Since(i, x, y) => {
                let (b1, b2) = (self.breakpoints(x), self.breakpoints(y));
                let mut both: Vec<Time> = b1.iter().chain(&b2).copied().collect();
                both.push(t);
                both.sort();
                let outer = self.cover(self.lo_clip(t, i.hi()), true, t - i.lo(), true, &both);
                sup(outer.into_iter().map(|u| {
                    // t'' in (t', t]
                    let inner = self.cover(u, false, t, true, &b1);
                    self.at(y, u).min(inf(inner.into_iter().map(|k| self.at(x, k))))
                }))
            }
            Formula::Precedes(i, x, y) => {
                let b = i.hi().finite().expect("bounded precedes");
                let (b1, b2) = (self.breakpoints(x), self.breakpoints(y));
                let inner_lo = (t - b).max(self.start);
                let mut both: Vec<Time> = b1.iter().chain(&b2).copied().collect();
                both.push(inner_lo);
                both.sort();
                let outer = self.cover((t - b + i.lo()).max(self.start), true, t, true, &both);
                sup(outer.into_iter().map(|u| {
                    // t'' in [t - b, t')
                    let inner = self.cover(inner_lo, true, u, false, &b1);
                    self.at(y, u).min(inf(inner.into_iter().map(|k| self.at(x, k))))
                }))
            }
            Formula::Next(_) | Formula::Previous(_) | Formula::Rise(_) | Formula::Fall(_) => {
                panic!("`{}` has no dense-time meaning", f.operator_name())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: i64) -> Time {
        Time::from(n)
    }

    #[test]
    fn step_signal_lookup_and_window() {
        // x = 1 on [0,2), 5 on [2,4), 0 on [4,6]
        let tr = Trace::new().with_signal("x", [(0, 1.0), (2, 5.0), (4, 0.0), (6, 0.0)]).unwrap();
        let f: Formula = "always[0:2](x > 0)".parse().unwrap();
        let d = Dense::new(&f, &tr, &classic);
        assert_eq!(d.at(&f, t(0)), ExtReal::finite(1.0));
        assert_eq!(d.at(&f, Time::new(5, 2)), ExtReal::finite(0.0));
        assert_eq!(d.at(&f, t(1)), ExtReal::finite(1.0));
        assert_eq!(defined_domain(&f, &tr), Some((t(0), t(6))));
        let g: Formula = "eventually[1:2](x > 0)".parse().unwrap();
        assert_eq!(defined_domain(&g, &tr), Some((t(0), t(5))));
    }

    #[test]
    fn since_inner_interval_is_left_open() {
        // p = -1 on [0,1), 1 at [1,2]; q = 1 on [0,1), -1 on [1,2]
        let tr = Trace::new()
            .with_signal("p", [(0, -1.0), (1, 1.0), (2, 1.0)])
            .unwrap()
            .with_signal("q", [(0, 1.0), (1, -1.0), (2, -1.0)])
            .unwrap();
        let f: Formula = "(p > 0) since (q > 0)".parse().unwrap();
        // any t' < 1 with q = 1 has (t', 1] containing points where p = -1
        assert_eq!(value_at(&f, &tr, t(1)), ExtReal::finite(-1.0));
    }

    #[test]
    fn until_with_open_gap() {
        // p = 2 on [0,3]; q = -1 on [0,1), 4 on [1,3]
        let tr = Trace::new()
            .with_signal("p", [(0, 2.0), (3, 2.0)])
            .unwrap()
            .with_signal("q", [(0, -1.0), (1, 4.0), (3, 4.0)])
            .unwrap();
        let f: Formula = "(p > 0) until[0:2] (q > 0)".parse().unwrap();
        assert_eq!(value_at(&f, &tr, Time::new(1, 2)), ExtReal::finite(2.0));
        assert_eq!(value_at(&f, &tr, t(3)), ExtReal::finite(4.0));
    }
}
