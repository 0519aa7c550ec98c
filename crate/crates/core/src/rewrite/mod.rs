//! Formula transformations: comparison normalization, desugaring into the
//! primitive operators, temporal depth and pastification.

mod pastify;

pub use pastify::{pastify, RewriteError};

use crate::syntax::{Comparison, Formula, Predicate, Term};
use crate::time::{Interval, Time, TimeBound};

/// Rewrites every predicate to the `term > 0` form with the same robustness,
/// and `a implies b` to `not a or b`.
pub fn normalize(f: &Formula) -> Formula {
    map_children(&normalize_node(f), &normalize)
}

fn normalize_node(f: &Formula) -> Formula {
    match f {
        Formula::Predicate(p) => Formula::Predicate(normalize_predicate(p)),
        Formula::Implies(a, b) => Formula::or(Formula::not((**a).clone()), (**b).clone()),
        other => other.clone(),
    }
}

fn normalize_predicate(p: &Predicate) -> Predicate {
    let c = p.constant;
    let shifted = || {
        if c == 0.0 {
            p.term.clone()
        } else {
            p.term.clone().sub(Term::Const(c))
        }
    };
    let term = match p.op {
        Comparison::Gt | Comparison::Ge => shifted(),
        Comparison::Lt | Comparison::Le => Term::Const(c).sub(p.term.clone()),
        Comparison::Eq => Term::Neg(Box::new(Term::Abs(Box::new(p.term.clone().sub(Term::Const(c)))))),
        Comparison::Ne => Term::Abs(Box::new(p.term.clone().sub(Term::Const(c)))),
    };
    Predicate::new(term, Comparison::Gt, 0.0)
}

/// Rebuilds `f` with `g` applied to each direct child.
pub(crate) fn map_children(f: &Formula, g: &impl Fn(&Formula) -> Formula) -> Formula {
    let b = |x: &Formula| Box::new(g(x));
    match f {
        Formula::Const(_) | Formula::Predicate(_) => f.clone(),
        Formula::Not(x) => Formula::Not(b(x)),
        Formula::And(x, y) => Formula::And(b(x), b(y)),
        Formula::Or(x, y) => Formula::Or(b(x), b(y)),
        Formula::Implies(x, y) => Formula::Implies(b(x), b(y)),
        Formula::Eventually(i, x) => Formula::Eventually(*i, b(x)),
        Formula::Always(i, x) => Formula::Always(*i, b(x)),
        Formula::Until(i, x, y) => Formula::Until(*i, b(x), b(y)),
        Formula::Once(i, x) => Formula::Once(*i, b(x)),
        Formula::Historically(i, x) => Formula::Historically(*i, b(x)),
        Formula::Since(i, x, y) => Formula::Since(*i, b(x), b(y)),
        Formula::Precedes(i, x, y) => Formula::Precedes(*i, b(x), b(y)),
        Formula::Next(x) => Formula::Next(b(x)),
        Formula::Previous(x) => Formula::Previous(b(x)),
        Formula::Rise(x) => Formula::Rise(b(x)),
        Formula::Fall(x) => Formula::Fall(b(x)),
    }
}

/// Expresses every operator through predicates, constants, `not`, `and`,
/// `or`, `until`, `since` and `precedes`. `step` is the sampling period used
/// for `next`, `prev`, `rise` and `fall`.
pub fn desugar(f: &Formula, step: Time) -> Formula {
    let d = |x: &Formula| desugar(x, step);
    let tt = || Formula::Const(true);
    let unit = Interval::point(step);
    match f {
        Formula::Const(_) | Formula::Predicate(_) => f.clone(),
        Formula::Not(x) => Formula::not(d(x)),
        Formula::And(x, y) => Formula::and(d(x), d(y)),
        Formula::Or(x, y) => Formula::or(d(x), d(y)),
        Formula::Implies(x, y) => Formula::or(Formula::not(d(x)), d(y)),
        Formula::Eventually(i, x) => Formula::until(*i, tt(), d(x)),
        Formula::Always(i, x) => Formula::not(Formula::until(*i, tt(), Formula::not(d(x)))),
        Formula::Until(i, x, y) => Formula::until(*i, d(x), d(y)),
        Formula::Once(i, x) => Formula::since(*i, tt(), d(x)),
        Formula::Historically(i, x) => Formula::not(Formula::since(*i, tt(), Formula::not(d(x)))),
        Formula::Since(i, x, y) => Formula::since(*i, d(x), d(y)),
        Formula::Precedes(i, x, y) => Formula::precedes(*i, d(x), d(y)),
        Formula::Next(x) => Formula::until(unit, tt(), d(x)),
        Formula::Previous(x) => Formula::since(unit, tt(), d(x)),
        Formula::Rise(x) => Formula::and(Formula::since(unit, tt(), Formula::not(d(x))), d(x)),
        Formula::Fall(x) => Formula::and(Formula::since(unit, tt(), d(x)), Formula::not(d(x))),
    }
}

/// How far into the future evaluation at `t` may look. `next` counts one
/// `step`; past operators add nothing of their own.
pub fn temporal_depth(f: &Formula, step: Time) -> TimeBound {
    let children = f
        .children()
        .into_iter()
        .map(|c| temporal_depth(c, step))
        .fold(TimeBound::Finite(Time::ZERO), TimeBound::max);
    match f {
        Formula::Eventually(i, _) | Formula::Always(i, _) | Formula::Until(i, ..) => match i.hi() {
            TimeBound::Finite(b) => children.plus(b),
            TimeBound::Infinite => TimeBound::Infinite,
        },
        Formula::Next(_) => children.plus(step),
        _ => children,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(text: &str) -> Formula {
        text.parse().unwrap()
    }

    #[test]
    fn normalizes_comparisons() {
        assert_eq!(normalize(&f("x <= 1.1")), f("1.1 - x > 0"));
        assert_eq!(normalize(&f("x >= 3")), f("x - 3 > 0"));
        assert_eq!(normalize(&f("a > 0 implies b > 0")), f("not (a > 0) or b > 0"));
        assert_eq!(normalize(&f("x == 2")), f("-abs(x - 2) > 0"));
        assert_eq!(normalize(&f("x != 2")), f("abs(x - 2) > 0"));
    }

    #[test]
    fn normalize_is_idempotent() {
        let g = normalize(&f("always(x <= 1 implies eventually[0:2](y == 3))"));
        assert_eq!(normalize(&g), g);
    }

    #[test]
    fn desugars_derived_operators() {
        let one = Time::from(1);
        assert_eq!(desugar(&f("always[0:5](p > 0)"), one), f("not ((true) until[0:5] (not (p > 0)))"));
        assert_eq!(desugar(&f("rise (p > 0)"), one), f("(true) since[1:1] (not (p > 0)) and p > 0"));
        assert_eq!(desugar(&f("next (p > 0)"), one), f("(true) until[1:1] (p > 0)"));
    }

    #[test]
    fn depth_examples() {
        let one = Time::from(1);
        assert_eq!(temporal_depth(&f("eventually[0:5](gnt >= 3)"), one), TimeBound::Finite(Time::from(5)));
        assert_eq!(
            temporal_depth(&f("req >= 3 implies eventually[0:5](gnt >= 3)"), one),
            TimeBound::Finite(Time::from(5))
        );
        assert_eq!(temporal_depth(&f("next next (p > 0)"), one), TimeBound::Finite(Time::from(2)));
        assert_eq!(temporal_depth(&f("once[0:9](p > 0)"), one), TimeBound::Finite(Time::ZERO));
        assert_eq!(temporal_depth(&f("always(p > 0)"), one), TimeBound::Infinite);
        assert_eq!(
            temporal_depth(&f("always[1:2](eventually[0:3](p > 0))"), one),
            TimeBound::Finite(Time::from(5))
        );
    }
}
