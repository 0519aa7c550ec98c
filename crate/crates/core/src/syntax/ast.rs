use std::collections::BTreeSet;

use crate::time::Interval;

/// Arithmetic term over signal variables.
#[derive(Debug, Clone, PartialEq)]
pub enum Term {
    Const(f64),
    Var(String),
    Neg(Box<Term>),
    Abs(Box<Term>),
    Add(Box<Term>, Box<Term>),
    Sub(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    /// Division by a nonzero constant.
    Div(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(value: f64) -> Term {
        Term::Const(value)
    }

    pub fn add(self, rhs: Term) -> Term {
        Term::Add(Box::new(self), Box::new(rhs))
    }

    pub fn sub(self, rhs: Term) -> Term {
        Term::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Const(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Neg(t) | Term::Abs(t) => t.collect_variables(out),
            Term::Add(a, b) | Term::Sub(a, b) | Term::Mul(a, b) | Term::Div(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
        }
    }

    /// Evaluates with a variable lookup.
    pub fn eval(&self, lookup: &impl Fn(&str) -> f64) -> f64 {
        match self {
            Term::Const(c) => *c,
            Term::Var(v) => lookup(v),
            Term::Neg(t) => -t.eval(lookup),
            Term::Abs(t) => t.eval(lookup).abs(),
            Term::Add(a, b) => a.eval(lookup) + b.eval(lookup),
            Term::Sub(a, b) => a.eval(lookup) - b.eval(lookup),
            Term::Mul(a, b) => a.eval(lookup) * b.eval(lookup),
            Term::Div(a, b) => a.eval(lookup) / b.eval(lookup),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Lt => "<",
            Comparison::Le => "<=",
            Comparison::Gt => ">",
            Comparison::Ge => ">=",
            Comparison::Eq => "==",
            Comparison::Ne => "!=",
        }
    }

    /// Robustness of `lhs <op> constant`.
    ///
    /// Strict and non-strict comparisons coincide; `==` scores `-|lhs - c|`
    /// and `!=` scores `|lhs - c|`.
    pub fn robustness(self, lhs: f64, constant: f64) -> f64 {
        match self {
            Comparison::Gt | Comparison::Ge => lhs - constant,
            Comparison::Lt | Comparison::Le => constant - lhs,
            Comparison::Eq => -(lhs - constant).abs(),
            Comparison::Ne => (lhs - constant).abs(),
        }
    }
}

/// Numeric predicate `term <op> constant`.
#[derive(Debug, Clone, PartialEq)]
pub struct Predicate {
    pub term: Term,
    pub op: Comparison,
    pub constant: f64,
}

impl Predicate {
    pub fn new(term: Term, op: Comparison, constant: f64) -> Predicate {
        Predicate { term, op, constant }
    }

    pub fn robustness(&self, lookup: &impl Fn(&str) -> f64) -> f64 {
        self.op.robustness(self.term.eval(lookup), self.constant)
    }
}

/// STL formula with derived, past and auxiliary operators.
#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    Const(bool),
    Predicate(Predicate),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Eventually(Interval, Box<Formula>),
    Always(Interval, Box<Formula>),
    Until(Interval, Box<Formula>, Box<Formula>),
    Once(Interval, Box<Formula>),
    Historically(Interval, Box<Formula>),
    Since(Interval, Box<Formula>, Box<Formula>),
    /// Bounded until read backwards from the end of its horizon; produced by
    /// pastification.
    Precedes(Interval, Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Previous(Box<Formula>),
    Rise(Box<Formula>),
    Fall(Box<Formula>),
}

/// Coarse classification of operators by the direction of time they inspect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Present,
    Future,
    Past,
}

impl Formula {
    pub fn pred(term: Term, op: Comparison, constant: f64) -> Formula {
        Formula::Predicate(Predicate::new(term, op, constant))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn eventually(i: Interval, f: Formula) -> Formula {
        Formula::Eventually(i, Box::new(f))
    }

    pub fn always(i: Interval, f: Formula) -> Formula {
        Formula::Always(i, Box::new(f))
    }

    pub fn until(i: Interval, a: Formula, b: Formula) -> Formula {
        Formula::Until(i, Box::new(a), Box::new(b))
    }

    pub fn once(i: Interval, f: Formula) -> Formula {
        Formula::Once(i, Box::new(f))
    }

    pub fn historically(i: Interval, f: Formula) -> Formula {
        Formula::Historically(i, Box::new(f))
    }

    pub fn since(i: Interval, a: Formula, b: Formula) -> Formula {
        Formula::Since(i, Box::new(a), Box::new(b))
    }

    pub fn precedes(i: Interval, a: Formula, b: Formula) -> Formula {
        Formula::Precedes(i, Box::new(a), Box::new(b))
    }

    pub fn direction(&self) -> Direction {
        match self {
            Formula::Eventually(..)
            | Formula::Always(..)
            | Formula::Until(..)
            | Formula::Next(_) => Direction::Future,
            Formula::Once(..)
            | Formula::Historically(..)
            | Formula::Since(..)
            | Formula::Precedes(..)
            | Formula::Previous(_)
            | Formula::Rise(_)
            | Formula::Fall(_) => Direction::Past,
            _ => Direction::Present,
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Const(_) | Formula::Predicate(_) => vec![],
            Formula::Not(f)
            | Formula::Eventually(_, f)
            | Formula::Always(_, f)
            | Formula::Once(_, f)
            | Formula::Historically(_, f)
            | Formula::Next(f)
            | Formula::Previous(f)
            | Formula::Rise(f)
            | Formula::Fall(f) => vec![f],
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Until(_, a, b)
            | Formula::Since(_, a, b)
            | Formula::Precedes(_, a, b) => vec![a, b],
        }
    }

    pub fn interval(&self) -> Option<Interval> {
        match self {
            Formula::Eventually(i, _)
            | Formula::Always(i, _)
            | Formula::Until(i, ..)
            | Formula::Once(i, _)
            | Formula::Historically(i, _)
            | Formula::Since(i, ..)
            | Formula::Precedes(i, ..) => Some(*i),
            _ => None,
        }
    }

    /// True if any node satisfies `pred`.
    pub fn any(&self, pred: &impl Fn(&Formula) -> bool) -> bool {
        pred(self) || self.children().into_iter().any(|c| c.any(pred))
    }

    pub fn has_future(&self) -> bool {
        self.any(&|f| f.direction() == Direction::Future)
    }

    pub fn has_past(&self) -> bool {
        self.any(&|f| f.direction() == Direction::Past)
    }

    pub fn is_past_only(&self) -> bool {
        !self.has_future()
    }

    /// Operators that only make sense over sampled time.
    pub fn has_discrete_only(&self) -> bool {
        self.any(&|f| {
            matches!(f, Formula::Next(_) | Formula::Previous(_) | Formula::Rise(_) | Formula::Fall(_))
        })
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<String>) {
        if let Formula::Predicate(p) = self {
            out.extend(p.term.variables());
        }
        for c in self.children() {
            c.collect_variables(out);
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    /// Name of the operator at the root, as written in the concrete syntax.
    pub fn operator_name(&self) -> &'static str {
        match self {
            Formula::Const(true) => "true",
            Formula::Const(false) => "false",
            Formula::Predicate(_) => "predicate",
            Formula::Not(_) => "not",
            Formula::And(..) => "and",
            Formula::Or(..) => "or",
            Formula::Implies(..) => "implies",
            Formula::Eventually(..) => "eventually",
            Formula::Always(..) => "always",
            Formula::Until(..) => "until",
            Formula::Once(..) => "once",
            Formula::Historically(..) => "historically",
            Formula::Since(..) => "since",
            Formula::Precedes(..) => "precedes",
            Formula::Next(_) => "next",
            Formula::Previous(_) => "prev",
            Formula::Rise(_) => "rise",
            Formula::Fall(_) => "fall",
        }
    }

    /// First future operator in pre-order, if any.
    pub fn first_future_operator(&self) -> Option<&Formula> {
        if self.direction() == Direction::Future {
            return Some(self);
        }
        self.children().into_iter().find_map(Formula::first_future_operator)
    }
}
