//! Fixed-capacity buffers for sliding windows.

use crate::value::ExtReal;

/// Ring buffer that never reallocates after construction.
#[derive(Debug, Clone)]
pub(crate) struct Ring<T: Copy + Default> {
    buf: Vec<T>,
    head: usize,
    len: usize,
}

impl<T: Copy + Default> Ring<T> {
    pub fn with_capacity(cap: usize) -> Ring<T> {
        Ring { buf: vec![T::default(); cap], head: 0, len: 0 }
    }

    pub fn capacity(&self) -> usize {
        self.buf.capacity()
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.len
    }

    #[cfg(test)]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_full(&self) -> bool {
        self.len == self.buf.len()
    }

    pub fn push_back(&mut self, v: T) {
        assert!(!self.is_full(), "ring buffer overflow");
        let cap = self.buf.len();
        self.buf[(self.head + self.len) % cap] = v;
        self.len += 1;
    }

    pub fn pop_front(&mut self) -> Option<T> {
        if self.len == 0 {
            return None;
        }
        let v = self.buf[self.head];
        self.head = (self.head + 1) % self.buf.len();
        self.len -= 1;
        Some(v)
    }

    pub fn pop_back(&mut self) -> Option<T> {
        if self.len == 0 {
            return None;
        }
        self.len -= 1;
        Some(self.buf[(self.head + self.len) % self.buf.len()])
    }

    pub fn front(&self) -> Option<T> {
        (self.len > 0).then(|| self.buf[self.head])
    }

    pub fn back(&self) -> Option<T> {
        (self.len > 0).then(|| self.buf[(self.head + self.len - 1) % self.buf.len()])
    }
}

/// Which extremum a sliding window computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Min,
    Max,
}

impl Extremum {
    pub fn identity(self) -> ExtReal {
        match self {
            Extremum::Min => ExtReal::INFINITY,
            Extremum::Max => ExtReal::NEG_INFINITY,
        }
    }

    /// True if `a` makes `b` redundant in a window where `a` is newer.
    fn dominates(self, a: ExtReal, b: ExtReal) -> bool {
        match self {
            Extremum::Min => a <= b,
            Extremum::Max => a >= b,
        }
    }
}

/// Monotonic deque of `(index, value)`: values are non-decreasing (min) or
/// non-increasing (max) from front to back, so the front is the extremum.
#[derive(Debug, Clone)]
pub(crate) struct MonoDeque {
    ring: Ring<(i64, ExtReal)>,
    kind: Extremum,
}

impl MonoDeque {
    pub fn new(width: usize, kind: Extremum) -> MonoDeque {
        MonoDeque { ring: Ring::with_capacity(width.max(1)), kind }
    }

    /// Drops entries with index below `lo`.
    pub fn expire(&mut self, lo: i64) {
        while matches!(self.ring.front(), Some((i, _)) if i < lo) {
            self.ring.pop_front();
        }
    }

    pub fn push(&mut self, index: i64, v: ExtReal) {
        while matches!(self.ring.back(), Some((_, b)) if self.kind.dominates(v, b)) {
            self.ring.pop_back();
        }
        self.ring.push_back((index, v));
    }

    pub fn extremum(&self) -> ExtReal {
        self.ring.front().map_or(self.kind.identity(), |(_, v)| v)
    }

    pub fn capacity(&self) -> usize {
        self.ring.capacity()
    }

    #[cfg(test)]
    pub fn is_monotone(&self) -> bool {
        let mut r = self.ring.clone();
        let mut prev: Option<ExtReal> = None;
        while let Some((_, v)) = r.pop_front() {
            if let Some(p) = prev {
                if self.kind.dominates(v, p) && v != p {
                    return false;
                }
            }
            prev = Some(v);
        }
        true
    }
}

/// `out[t]` = extremum of `values[t + lo ..= t + hi]` clipped to the array;
/// the identity when that range is empty. `None` bounds mean unbounded.
pub(crate) fn sliding(values: &[ExtReal], lo: Option<i64>, hi: Option<i64>, kind: Extremum) -> Vec<ExtReal> {
    let n = values.len() as i64;
    let width = match (lo, hi) {
        (Some(l), Some(h)) => (h - l + 1).clamp(1, n.max(1)),
        _ => n.max(1),
    } as usize;
    let mut dq = MonoDeque::new(width, kind);
    let mut next = 0i64;
    let mut out = Vec::with_capacity(values.len());
    for t in 0..n {
        let left = lo.map_or(0, |l| (t + l).max(0));
        let right = hi.map_or(n - 1, |h| (t + h).min(n - 1));
        dq.expire(left);
        while next <= right {
            if next >= left {
                dq.push(next, values[next as usize]);
            }
            next += 1;
        }
        out.push(if left > right { kind.identity() } else { dq.extremum() });
    }
    out
}

/// Until-monoid element `(A, B)`: `A` is the robustness of "`y` occurs in
/// the segment with `x` holding before it", `B` the min of `x` over it.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct UntilPair {
    pub a: ExtReal,
    pub b: ExtReal,
}

impl UntilPair {
    pub const IDENTITY: UntilPair = UntilPair { a: ExtReal::NEG_INFINITY, b: ExtReal::INFINITY };

    /// `older` followed by `newer`.
    pub fn combine(older: UntilPair, newer: UntilPair) -> UntilPair {
        UntilPair { a: older.a.max(older.b.min(newer.a)), b: older.b.min(newer.b) }
    }
}

/// FIFO queue with an O(1) amortized fold of its contents (oldest first)
/// under the until monoid. Two fixed-capacity stacks.
#[derive(Debug, Clone)]
pub(crate) struct TwoStack {
    /// Oldest on top; each entry carries the fold from itself to the newest
    /// front entry.
    front: Vec<(UntilPair, UntilPair)>,
    back: Vec<UntilPair>,
    back_agg: UntilPair,
    cap: usize,
}

impl TwoStack {
    pub fn new(cap: usize) -> TwoStack {
        TwoStack {
            front: Vec::with_capacity(cap),
            back: Vec::with_capacity(cap),
            back_agg: UntilPair::IDENTITY,
            cap,
        }
    }

    pub fn len(&self) -> usize {
        self.front.len() + self.back.len()
    }

    pub fn push(&mut self, e: UntilPair) {
        assert!(self.len() < self.cap, "window overflow");
        self.back.push(e);
        self.back_agg = UntilPair::combine(self.back_agg, e);
    }

    pub fn pop(&mut self) {
        if self.front.is_empty() {
            let mut agg = UntilPair::IDENTITY;
            while let Some(e) = self.back.pop() {
                agg = UntilPair::combine(e, agg);
                self.front.push((e, agg));
            }
            self.back_agg = UntilPair::IDENTITY;
        }
        self.front.pop();
    }

    pub fn fold(&self) -> UntilPair {
        let f = self.front.last().map_or(UntilPair::IDENTITY, |&(_, agg)| agg);
        UntilPair::combine(f, self.back_agg)
    }

    pub fn capacity(&self) -> usize {
        self.front.capacity() + self.back.capacity()
    }
}

/// Delay line: yields the value pushed `delay` calls earlier.
#[derive(Debug, Clone)]
pub(crate) struct Delay {
    ring: Ring<ExtReal>,
    delay: usize,
}

impl Delay {
    pub fn new(delay: usize) -> Delay {
        Delay { ring: Ring::with_capacity(delay), delay }
    }

    pub fn push(&mut self, v: ExtReal) -> Option<ExtReal> {
        if self.delay == 0 {
            return Some(v);
        }
        let out = if self.ring.is_full() { self.ring.pop_front() } else { None };
        self.ring.push_back(v);
        out
    }

    pub fn capacity(&self) -> usize {
        self.ring.capacity()
    }
}
