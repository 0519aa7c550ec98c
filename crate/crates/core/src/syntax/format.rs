use std::fmt::{self, Write};

use super::ast::{Formula, Term};
use crate::time::Interval;

/// Renders a formula in the concrete syntax accepted by the parser.
pub fn format_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f, 0).expect("writing to a String cannot fail");
    out
}

pub fn format_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, t, 0).expect("writing to a String cannot fail");
    out
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_formula(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_term(self))
    }
}

const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const BINARY_TEMPORAL: u8 = 4;
const UNARY: u8 = 5;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => IMPLIES,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Until(..) | Formula::Since(..) | Formula::Precedes(..) => BINARY_TEMPORAL,
        _ => UNARY,
    }
}

fn interval_suffix(i: &Interval, force: bool) -> String {
    if i.is_default() && !force {
        String::new()
    } else {
        i.to_string()
    }
}

fn write_formula(out: &mut String, f: &Formula, min_prec: u8) -> fmt::Result {
    let parens = precedence(f) < min_prec;
    if parens {
        out.push('(');
    }
    match f {
        Formula::Const(b) => write!(out, "{b}")?,
        Formula::Predicate(p) => {
            write_term(out, &p.term, 0)?;
            write!(out, " {} {}", p.op.symbol(), p.constant)?;
        }
        Formula::Not(g) => write_prefixed(out, "not", None, g)?,
        Formula::Next(g) => write_prefixed(out, "next", None, g)?,
        Formula::Previous(g) => write_prefixed(out, "prev", None, g)?,
        Formula::Rise(g) => write_prefixed(out, "rise", None, g)?,
        Formula::Fall(g) => write_prefixed(out, "fall", None, g)?,
        Formula::Eventually(i, g) => write_prefixed(out, "eventually", Some(i), g)?,
        Formula::Always(i, g) => write_prefixed(out, "always", Some(i), g)?,
        Formula::Once(i, g) => write_prefixed(out, "once", Some(i), g)?,
        Formula::Historically(i, g) => write_prefixed(out, "historically", Some(i), g)?,
        Formula::And(a, b) => {
            write_formula(out, a, AND)?;
            out.push_str(" and ");
            write_formula(out, b, AND + 1)?;
        }
        Formula::Or(a, b) => {
            write_formula(out, a, OR)?;
            out.push_str(" or ");
            write_formula(out, b, OR + 1)?;
        }
        Formula::Implies(a, b) => {
            write_formula(out, a, IMPLIES + 1)?;
            out.push_str(" implies ");
            write_formula(out, b, IMPLIES)?;
        }
        Formula::Until(i, a, b) => write_infix(out, "until", i, a, b, false)?,
        Formula::Since(i, a, b) => write_infix(out, "since", i, a, b, false)?,
        Formula::Precedes(i, a, b) => write_infix(out, "precedes", i, a, b, true)?,
    }
    if parens {
        out.push(')');
    }
    Ok(())
}

fn write_prefixed(out: &mut String, name: &str, interval: Option<&Interval>, g: &Formula) -> fmt::Result {
    out.push_str(name);
    if let Some(i) = interval {
        out.push_str(&interval_suffix(i, false));
    } else {
        out.push(' ');
    }
    out.push('(');
    write_formula(out, g, 0)?;
    out.push(')');
    Ok(())
}

fn write_infix(
    out: &mut String,
    name: &str,
    i: &Interval,
    a: &Formula,
    b: &Formula,
    force_interval: bool,
) -> fmt::Result {
    out.push('(');
    write_formula(out, a, 0)?;
    write!(out, ") {name}{} (", interval_suffix(i, force_interval))?;
    write_formula(out, b, 0)?;
    out.push(')');
    Ok(())
}

fn term_precedence(t: &Term) -> u8 {
    match t {
        Term::Add(..) | Term::Sub(..) => 1,
        Term::Mul(..) | Term::Div(..) => 2,
        Term::Neg(_) => 3,
        Term::Const(c) if *c < 0.0 || (*c == 0.0 && c.is_sign_negative()) => 3,
        _ => 4,
    }
}

fn write_term(out: &mut String, t: &Term, min_prec: u8) -> fmt::Result {
    let parens = term_precedence(t) < min_prec;
    if parens {
        out.push('(');
    }
    match t {
        Term::Const(c) => write!(out, "{c}")?,
        Term::Var(v) => out.push_str(v),
        Term::Neg(inner) => {
            out.push('-');
            write_term(out, inner, 3)?;
        }
        Term::Abs(inner) => {
            out.push_str("abs(");
            write_term(out, inner, 0)?;
            out.push(')');
        }
        Term::Add(a, b) => write_binary_term(out, a, " + ", b, 1)?,
        Term::Sub(a, b) => write_binary_term(out, a, " - ", b, 1)?,
        Term::Mul(a, b) => write_binary_term(out, a, " * ", b, 2)?,
        Term::Div(a, b) => write_binary_term(out, a, " / ", b, 2)?,
    }
    if parens {
        out.push(')');
    }
    Ok(())
}

fn write_binary_term(out: &mut String, a: &Term, op: &str, b: &Term, prec: u8) -> fmt::Result {
    write_term(out, a, prec)?;
    out.push_str(op);
    write_term(out, b, prec + 1)
}
