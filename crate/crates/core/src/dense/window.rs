use super::signal::{Knot, StepSignal};
use crate::discrete::window::{Extremum, MonoDeque};
use crate::time::Time;

/// One end of a relative window `t + offset`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Edge {
    pub offset: Time,
    pub closed: bool,
}

impl Edge {
    pub fn closed(offset: Time) -> Edge {
        Edge { offset, closed: true }
    }

    pub fn open(offset: Time) -> Edge {
        Edge { offset, closed: false }
    }
}

/// Extremum of `s` over the forward window `[t, t + width]`, clipped to the
/// domain.
pub fn window_extremum(s: &StepSignal, width: Time, kind: Extremum) -> StepSignal {
    assert!(!width.is_negative(), "window width must be non-negative");
    window(s, Edge::closed(Time::ZERO), Edge::closed(width), kind)
}

/// Signal whose value at `t` is the extremum of `sig` over the window from
/// `t + lo.offset` to `t + hi.offset` clipped to the domain, or the identity
/// where that is empty.
///
/// The output only changes where a window edge crosses an input knot, so it
/// is evaluated on that grid (points and the open gaps between them). Both
/// edges move forward, giving a monotonic-deque sweep over input pieces.
pub(crate) fn window(sig: &StepSignal, lo: Edge, hi: Edge, kind: Extremum) -> StepSignal {
    let (Some(s), Some(e)) = (sig.start(), sig.end()) else {
        return StepSignal::empty();
    };
    if lo.offset > hi.offset || (lo.offset == hi.offset && !(lo.closed && hi.closed)) {
        return StepSignal::constant(s, e, kind.identity());
    }
    let knots = sig.knots();
    let pieces = sig.pieces();
    let mut grid: Vec<Time> = Vec::with_capacity(2 * knots.len() + 2);
    grid.push(s);
    grid.push(e);
    for k in knots {
        grid.push(k.time - lo.offset);
        grid.push(k.time - hi.offset);
    }
    grid.retain(|&t| s <= t && t <= e);
    grid.sort();
    grid.dedup();

    let last_piece = pieces.len() as i64 - 1;
    let mut lo_cur = 0usize;
    let mut hi_cur = 0usize;
    let seek = |cur: &mut usize, t: Time| {
        while *cur + 1 < knots.len() && knots[*cur + 1].time <= t {
            *cur += 1;
        }
        *cur
    };
    let mut range = |t: Time| -> (i64, i64) {
        let x = t + lo.offset;
        let left = if x < s {
            0
        } else if x > e {
            last_piece + 1
        } else {
            let i = seek(&mut lo_cur, x) as i64;
            if knots[i as usize].time == x && lo.closed {
                2 * i
            } else {
                2 * i + 1
            }
        };
        let y = t + hi.offset;
        let right = if y > e {
            last_piece
        } else if y < s {
            -1
        } else {
            let i = seek(&mut hi_cur, y) as i64;
            if knots[i as usize].time == y {
                if hi.closed {
                    2 * i
                } else {
                    2 * i - 1
                }
            } else {
                2 * i + 1
            }
        };
        (left, right)
    };

    let mut dq = MonoDeque::new(pieces.len(), kind);
    let mut next = 0i64;
    let mut value = |(left, right): (i64, i64)| {
        if left > right {
            return kind.identity();
        }
        while next <= right {
            dq.push(next, pieces[next as usize]);
            next += 1;
        }
        dq.expire(left);
        dq.extremum()
    };

    let mut out = Vec::with_capacity(grid.len());
    for (j, &t) in grid.iter().enumerate() {
        let at = value(range(t));
        let after = match grid.get(j + 1) {
            Some(&u) => value(range(t.midpoint(u))),
            None => at,
        };
        out.push(Knot::new(t, at, after));
    }
    StepSignal::new(out)
}
