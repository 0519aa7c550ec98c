//! Brute-force reference semantics for testing `stlmon`.
//!
//! Everything here is a direct transcription of the sup/inf definitions with
//! explicit iteration over candidate time points. It is slow on purpose.

pub mod dense;
pub mod discrete;
pub mod gen;

use stlmon::syntax::{Comparison, Predicate};
use stlmon::value::ExtReal;

/// How a predicate is scored, given a variable lookup at the current time.
pub type Valuation<'a> = &'a dyn Fn(&Predicate, &dyn Fn(&str) -> f64) -> ExtReal;

/// Classical robustness `f(w) - c` (with the comparison's orientation).
pub fn classic(p: &Predicate, lookup: &dyn Fn(&str) -> f64) -> ExtReal {
    ExtReal::finite(p.robustness(&|v: &str| lookup(v)))
}

/// Qualitative truth encoded as `+inf` / `-inf`; the min/max clauses then
/// coincide with conjunction/disjunction and the quantifiers.
pub fn truth(p: &Predicate, lookup: &dyn Fn(&str) -> f64) -> ExtReal {
    let lhs = p.term.eval(&|v: &str| lookup(v));
    let c = p.constant;
    let holds = match p.op {
        Comparison::Gt => lhs > c,
        Comparison::Ge => lhs >= c,
        Comparison::Lt => lhs < c,
        Comparison::Le => lhs <= c,
        Comparison::Eq => lhs == c,
        Comparison::Ne => lhs != c,
    };
    if holds {
        ExtReal::INFINITY
    } else {
        ExtReal::NEG_INFINITY
    }
}

/// Relative robustness of a predicate: measured over `u`, qualitative over `v`.
pub fn relative<'a>(
    u: &'a [&'a str],
    v: &'a [&'a str],
) -> impl Fn(&Predicate, &dyn Fn(&str) -> f64) -> ExtReal + 'a {
    move |p, lookup| {
        let vars = p.term.variables();
        let in_u_or_v = vars.iter().all(|x| u.contains(&x.as_str()) || v.contains(&x.as_str()));
        let in_v = vars.iter().all(|x| v.contains(&x.as_str()));
        let r = classic(p, lookup);
        if !in_u_or_v {
            ExtReal::ZERO
        } else if !in_v {
            r
        } else if r.get() > 0.0 {
            ExtReal::INFINITY
        } else {
            ExtReal::NEG_INFINITY
        }
    }
}

pub(crate) fn sup(values: impl IntoIterator<Item = ExtReal>) -> ExtReal {
    values.into_iter().fold(ExtReal::NEG_INFINITY, |a, b| if b > a { b } else { a })
}

pub(crate) fn inf(values: impl IntoIterator<Item = ExtReal>) -> ExtReal {
    values.into_iter().fold(ExtReal::INFINITY, |a, b| if b < a { b } else { a })
}
