use crate::time::Time;
use crate::value::ExtReal;

/// A change point of a [`StepSignal`]: the value exactly at `time`, and the
/// value on the open gap up to the next knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Knot {
    pub time: Time,
    pub at: ExtReal,
    pub after: ExtReal,
}

impl Knot {
    pub fn new(time: Time, at: ExtReal, after: ExtReal) -> Knot {
        Knot { time, at, after }
    }
}

/// Piecewise-constant signal on `[first knot, last knot]`.
///
/// Robustness of dense-time formulas can differ at a single instant from the
/// surrounding gaps (e.g. `x U y` where `y` only holds at a sample instant),
/// so each knot carries both its point value and the value that follows.
/// Knots are canonical: an interior knot is dropped when the signal is
/// constant across it. The last knot's `after` equals its `at`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StepSignal {
    knots: Vec<Knot>,
}

impl StepSignal {
    pub fn new(mut knots: Vec<Knot>) -> StepSignal {
        assert!(knots.windows(2).all(|w| w[0].time < w[1].time), "knot times must increase");
        if let Some(last) = knots.last_mut() {
            last.after = last.at;
        }
        let mut out: Vec<Knot> = Vec::with_capacity(knots.len());
        let n = knots.len();
        for (i, k) in knots.into_iter().enumerate() {
            if let Some(prev) = out.last() {
                if i + 1 < n && prev.after == k.at && k.at == k.after {
                    continue;
                }
            }
            out.push(k);
        }
        StepSignal { knots: out }
    }

    pub fn empty() -> StepSignal {
        StepSignal::default()
    }

    pub fn constant(start: Time, end: Time, v: ExtReal) -> StepSignal {
        let mut knots = vec![Knot::new(start, v, v)];
        if end > start {
            knots.push(Knot::new(end, v, v));
        }
        StepSignal { knots }
    }

    /// Left-closed steps: `values[i].1` holds on `[values[i].0, values[i+1].0)`,
    /// and the last value up to and including `end`.
    pub fn from_steps(values: &[(Time, ExtReal)], end: Time) -> StepSignal {
        let mut knots: Vec<Knot> = values.iter().filter(|(t, _)| *t <= end).map(|&(t, v)| Knot::new(t, v, v)).collect();
        if let Some(&last) = knots.last() {
            if last.time < end {
                knots.push(Knot::new(end, last.after, last.after));
            }
        }
        StepSignal::new(knots)
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn is_empty(&self) -> bool {
        self.knots.is_empty()
    }

    pub fn start(&self) -> Option<Time> {
        self.knots.first().map(|k| k.time)
    }

    pub fn end(&self) -> Option<Time> {
        self.knots.last().map(|k| k.time)
    }

    fn locate(&self, t: Time) -> Option<usize> {
        let (s, e) = (self.start()?, self.end()?);
        if t < s || t > e {
            return None;
        }
        Some(self.knots.partition_point(|k| k.time <= t) - 1)
    }

    /// Value at instant `t`, if `t` is in the domain.
    pub fn value_at(&self, t: Time) -> Option<ExtReal> {
        let i = self.locate(t)?;
        let k = &self.knots[i];
        Some(if k.time == t { k.at } else { k.after })
    }

    /// Value just after `t` (the right limit); at the domain end, the value there.
    pub fn value_after(&self, t: Time) -> Option<ExtReal> {
        self.locate(t).map(|i| self.knots[i].after)
    }

    /// Piece values `[k0.at, k0.after, k1.at, .., kn.at]`.
    pub(crate) fn pieces(&self) -> Vec<ExtReal> {
        let mut out = Vec::with_capacity(self.knots.len() * 2);
        for (i, k) in self.knots.iter().enumerate() {
            out.push(k.at);
            if i + 1 < self.knots.len() {
                out.push(k.after);
            }
        }
        out
    }

    pub(crate) fn from_pieces(times: &[Time], pieces: &[ExtReal]) -> StepSignal {
        debug_assert_eq!(pieces.len(), (times.len() * 2).saturating_sub(1));
        let knots = times
            .iter()
            .enumerate()
            .map(|(i, &t)| Knot::new(t, pieces[2 * i], *pieces.get(2 * i + 1).unwrap_or(&pieces[2 * i])))
            .collect();
        StepSignal::new(knots)
    }

    pub(crate) fn map(&self, f: impl Fn(ExtReal) -> ExtReal) -> StepSignal {
        StepSignal::new(self.knots.iter().map(|k| Knot::new(k.time, f(k.at), f(k.after))).collect())
    }

    /// Pointwise combination of two signals over the same domain.
    pub(crate) fn zip(&self, other: &StepSignal, f: impl Fn(ExtReal, ExtReal) -> ExtReal) -> StepSignal {
        let (times, pieces) = align(&[self, other]);
        let out: Vec<ExtReal> = pieces[0].iter().zip(&pieces[1]).map(|(&a, &b)| f(a, b)).collect();
        StepSignal::from_pieces(&times, &out)
    }

    /// Signal on `[start, end]` whose value at `t` is `self(t + delta)`, or
    /// `fill` where `t + delta` is outside this signal's domain.
    pub(crate) fn reframe(&self, delta: Time, start: Time, end: Time, fill: ExtReal) -> StepSignal {
        let (Some(s), Some(e)) = (self.start(), self.end()) else {
            return StepSignal::constant(start, end, fill);
        };
        let mut times: Vec<Time> = Vec::with_capacity(self.knots.len() + 4);
        times.push(start);
        times.extend(self.knots.iter().map(|k| k.time - delta));
        times.push(s - delta);
        times.push(e - delta);
        times.push(end);
        times.retain(|&t| start <= t && t <= end);
        times.sort();
        times.dedup();
        let mut cursor = Cursor::new(self);
        let mut pieces = Vec::with_capacity(times.len() * 2);
        for (i, &t) in times.iter().enumerate() {
            let u = t + delta;
            pieces.push(if u < s || u > e { fill } else { cursor.at(u) });
            if i + 1 < times.len() {
                pieces.push(if u < s || u >= e { fill } else { cursor.after(u) });
            }
        }
        StepSignal::from_pieces(&times, &pieces)
    }

    /// The part on `[lo, hi]`; empty if `lo > hi`.
    pub(crate) fn restrict(&self, lo: Time, hi: Time) -> StepSignal {
        if lo > hi || self.is_empty() {
            return StepSignal::empty();
        }
        self.reframe(Time::ZERO, lo, hi, ExtReal::ZERO)
    }
}

/// Forward-only lookup for increasing query times.
pub(crate) struct Cursor<'a> {
    knots: &'a [Knot],
    i: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(s: &'a StepSignal) -> Cursor<'a> {
        Cursor { knots: &s.knots, i: 0 }
    }

    fn seek(&mut self, t: Time) -> &Knot {
        while self.i + 1 < self.knots.len() && self.knots[self.i + 1].time <= t {
            self.i += 1;
        }
        &self.knots[self.i]
    }

    pub fn at(&mut self, t: Time) -> ExtReal {
        let k = self.seek(t);
        if k.time == t {
            k.at
        } else {
            k.after
        }
    }

    pub fn after(&mut self, t: Time) -> ExtReal {
        self.seek(t).after
    }
}

/// Common knot grid of signals sharing a domain, with each signal's piece
/// values on it.
pub(crate) fn align(signals: &[&StepSignal]) -> (Vec<Time>, Vec<Vec<ExtReal>>) {
    let mut times: Vec<Time> = signals.iter().flat_map(|s| s.knots.iter().map(|k| k.time)).collect();
    times.sort();
    times.dedup();
    let pieces = signals
        .iter()
        .map(|s| {
            let mut c = Cursor::new(s);
            let mut out = Vec::with_capacity(times.len() * 2);
            for (i, &t) in times.iter().enumerate() {
                out.push(c.at(t));
                if i + 1 < times.len() {
                    out.push(c.after(t));
                }
            }
            out
        })
        .collect();
    (times, pieces)
}
