use super::{map_children, temporal_depth};
use crate::syntax::{Direction, Formula};
use crate::time::{Interval, Time, TimeBound};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("formula has an unbounded future horizon (operator `{operator}`)")]
    UnboundedHorizon { operator: &'static str },
    #[error("cannot pastify `{outer}` containing `{inner}`: past and future operators are nested")]
    MixedPastFuture { outer: &'static str, inner: &'static str },
}

/// Rewrites a bounded-future formula into a past-only one whose value at
/// `t + H(f)` equals the value of `f` at `t`, where `H` is
/// [`temporal_depth`](super::temporal_depth).
///
/// Past-only subformulas that are not under a future operator are delayed
/// as a whole. Past operators below future ones, and future operators below
/// past ones, are rejected.
pub fn pastify(f: &Formula, step: Time) -> Result<Formula, RewriteError> {
    check_nesting(f, None)?;
    let depth = match temporal_depth(f, step) {
        TimeBound::Finite(d) => d,
        TimeBound::Infinite => {
            let op = f
                .first_future_operator_matching(&|g| g.interval().is_some_and(|i| !i.is_bounded()))
                .map_or("?", Formula::operator_name);
            return Err(RewriteError::UnboundedHorizon { operator: op });
        }
    };
    Ok(pi(f, depth, step))
}

fn check_nesting(f: &Formula, temporal_ancestor: Option<&Formula>) -> Result<(), RewriteError> {
    let dir = f.direction();
    if let Some(outer) = temporal_ancestor {
        if dir != Direction::Present && dir != outer.direction() {
            return Err(RewriteError::MixedPastFuture {
                outer: outer.operator_name(),
                inner: f.operator_name(),
            });
        }
    }
    let next = if dir == Direction::Present { temporal_ancestor } else { Some(f) };
    for c in f.children() {
        check_nesting(c, next)?;
    }
    Ok(())
}

fn delay(f: Formula, d: Time) -> Formula {
    if d.is_zero() {
        f
    } else {
        Formula::once(Interval::point(d), f)
    }
}

fn window(lo_zero_hi: Time, f: Formula, max: bool) -> Formula {
    if lo_zero_hi.is_zero() {
        return f;
    }
    let i = Interval::new(Time::ZERO, TimeBound::Finite(lo_zero_hi)).expect("non-negative width");
    if max {
        Formula::once(i, f)
    } else {
        Formula::historically(i, f)
    }
}

fn upper(i: &Interval) -> Time {
    i.hi().finite().expect("bounded by the horizon check")
}

fn pi(f: &Formula, d: Time, step: Time) -> Formula {
    if !f.has_future() {
        return match f {
            Formula::Const(_) => f.clone(),
            _ if !f.has_past() => match f {
                Formula::Predicate(_) => delay(f.clone(), d),
                _ => map_children(f, &|c| pi(c, d, step)),
            },
            _ => delay(f.clone(), d),
        };
    }
    match f {
        Formula::Next(x) => pi(x, d - step, step),
        Formula::Eventually(i, x) => {
            let b = upper(i);
            window(b - i.lo(), pi(x, d - b, step), true)
        }
        Formula::Always(i, x) => {
            let b = upper(i);
            window(b - i.lo(), pi(x, d - b, step), false)
        }
        Formula::Until(i, x, y) => {
            let b = upper(i);
            Formula::precedes(*i, pi(x, d - b, step), pi(y, d - b, step))
        }
        _ => map_children(f, &|c| pi(c, d, step)),
    }
}

impl Formula {
    fn first_future_operator_matching(&self, pred: &impl Fn(&Formula) -> bool) -> Option<&Formula> {
        if self.direction() == Direction::Future && pred(self) {
            return Some(self);
        }
        self.children().into_iter().find_map(|c| c.first_future_operator_matching(pred))
    }
}
