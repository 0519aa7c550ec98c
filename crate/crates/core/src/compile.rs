//! Flattened formula representation shared by the engines.

use std::collections::BTreeMap;

use crate::iastl::{PredicateMode, Semantics};
use crate::syntax::{Comparison, Formula, Term};
use crate::time::{Interval, Time};
use crate::value::ExtReal;

/// Term with variables resolved to column indices.
#[derive(Debug, Clone)]
pub(crate) enum CTerm {
    Const(f64),
    Var(usize),
    Neg(Box<CTerm>),
    Abs(Box<CTerm>),
    Add(Box<CTerm>, Box<CTerm>),
    Sub(Box<CTerm>, Box<CTerm>),
    Mul(Box<CTerm>, Box<CTerm>),
    Div(Box<CTerm>, Box<CTerm>),
}

impl CTerm {
    fn eval(&self, vals: &[f64]) -> f64 {
        match self {
            CTerm::Const(c) => *c,
            CTerm::Var(i) => vals[*i],
            CTerm::Neg(t) => -t.eval(vals),
            CTerm::Abs(t) => t.eval(vals).abs(),
            CTerm::Add(a, b) => a.eval(vals) + b.eval(vals),
            CTerm::Sub(a, b) => a.eval(vals) - b.eval(vals),
            CTerm::Mul(a, b) => a.eval(vals) * b.eval(vals),
            CTerm::Div(a, b) => a.eval(vals) / b.eval(vals),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct CPredicate {
    pub term: CTerm,
    pub op: Comparison,
    pub constant: f64,
    pub mode: PredicateMode,
}

impl CPredicate {
    pub fn score(&self, vals: &[f64]) -> ExtReal {
        let r = self.op.robustness(self.term.eval(vals), self.constant);
        let r = ExtReal::new(r).unwrap_or(ExtReal::ZERO);
        match self.mode {
            PredicateMode::Quantitative => r,
            PredicateMode::Qualitative => r.sign_infinity(),
            PredicateMode::Neutral => ExtReal::ZERO,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Node {
    Const(bool),
    Pred(CPredicate),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Eventually(Interval, usize),
    Always(Interval, usize),
    Until(Interval, usize, usize),
    Once(Interval, usize),
    Historically(Interval, usize),
    Since(Interval, usize, usize),
    Precedes(Interval, usize, usize),
    Next(usize),
    Previous(usize),
    Rise(usize),
    Fall(usize),
}

/// Nodes in post-order (children before parents); the root is last.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub nodes: Vec<Node>,
    pub vars: Vec<String>,
}

impl Compiled {
    pub fn new(f: &Formula, semantics: &Semantics) -> Compiled {
        let vars: Vec<String> = f.variables().into_iter().collect();
        let index: BTreeMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut nodes = Vec::with_capacity(f.size());
        push(f, &index, semantics, &mut nodes);
        Compiled { nodes, vars }
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }
}

fn term(t: &Term, index: &BTreeMap<&str, usize>) -> CTerm {
    let b = |x: &Term| Box::new(term(x, index));
    match t {
        Term::Const(c) => CTerm::Const(*c),
        Term::Var(v) => CTerm::Var(index[v.as_str()]),
        Term::Neg(x) => CTerm::Neg(b(x)),
        Term::Abs(x) => CTerm::Abs(b(x)),
        Term::Add(x, y) => CTerm::Add(b(x), b(y)),
        Term::Sub(x, y) => CTerm::Sub(b(x), b(y)),
        Term::Mul(x, y) => CTerm::Mul(b(x), b(y)),
        Term::Div(x, y) => CTerm::Div(b(x), b(y)),
    }
}

fn push(f: &Formula, index: &BTreeMap<&str, usize>, sem: &Semantics, nodes: &mut Vec<Node>) -> usize {
    let c = |g: &Formula, nodes: &mut Vec<Node>| push(g, index, sem, nodes);
    let node = match f {
        Formula::Const(b) => Node::Const(*b),
        Formula::Predicate(p) => Node::Pred(CPredicate {
            term: term(&p.term, index),
            op: p.op,
            constant: p.constant,
            mode: sem.mode(p),
        }),
        Formula::Not(x) => Node::Not(c(x, nodes)),
        Formula::And(x, y) => Node::And(c(x, nodes), c(y, nodes)),
        Formula::Or(x, y) => Node::Or(c(x, nodes), c(y, nodes)),
        Formula::Implies(x, y) => Node::Implies(c(x, nodes), c(y, nodes)),
        Formula::Eventually(i, x) => Node::Eventually(*i, c(x, nodes)),
        Formula::Always(i, x) => Node::Always(*i, c(x, nodes)),
        Formula::Until(i, x, y) => Node::Until(*i, c(x, nodes), c(y, nodes)),
        Formula::Once(i, x) => Node::Once(*i, c(x, nodes)),
        Formula::Historically(i, x) => Node::Historically(*i, c(x, nodes)),
        Formula::Since(i, x, y) => Node::Since(*i, c(x, nodes), c(y, nodes)),
        Formula::Precedes(i, x, y) => Node::Precedes(*i, c(x, nodes), c(y, nodes)),
        Formula::Next(x) => Node::Next(c(x, nodes)),
        Formula::Previous(x) => Node::Previous(c(x, nodes)),
        Formula::Rise(x) => Node::Rise(c(x, nodes)),
        Formula::Fall(x) => Node::Fall(c(x, nodes)),
    };
    nodes.push(node);
    nodes.len() - 1
}

/// How much of the domain the top-level operators cut off: `(start, end)`
/// offsets such that evaluation at `t` has a nonempty window iff
/// `S + start <= t <= E - end`. `step` is the length of `next`/`prev`.
pub(crate) fn top_offsets(f: &Formula, step: Time) -> (Time, Time) {
    match f {
        Formula::Not(x) => top_offsets(x, step),
        Formula::And(x, y) | Formula::Or(x, y) | Formula::Implies(x, y) => {
            let (a, b) = (top_offsets(x, step), top_offsets(y, step));
            (a.0.max(b.0), a.1.max(b.1))
        }
        Formula::Eventually(i, _) | Formula::Always(i, _) | Formula::Until(i, ..) => (Time::ZERO, i.lo()),
        Formula::Once(i, _) | Formula::Historically(i, _) | Formula::Since(i, ..) => (i.lo(), Time::ZERO),
        Formula::Next(_) => (Time::ZERO, step),
        Formula::Previous(_) | Formula::Rise(_) | Formula::Fall(_) => (step, Time::ZERO),
        _ => (Time::ZERO, Time::ZERO),
    }
}
