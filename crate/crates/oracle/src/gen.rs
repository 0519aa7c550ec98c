//! Random formulas and traces.

use rand::seq::SliceRandom;
use rand::Rng;

use stlmon::syntax::{Comparison, Formula, Term};
use stlmon::time::{Interval, Time, TimeBound};
use stlmon::trace::{Sample, Trace};

/// Which operators a generated formula may contain.
#[derive(Debug, Clone)]
pub struct Fragment {
    pub future: bool,
    pub past: bool,
    pub unbounded: bool,
    /// `next`, `prev`, `rise`, `fall`.
    pub sampled_only: bool,
    pub since: bool,
    pub precedes: bool,
    pub constants: bool,
}

impl Fragment {
    /// Everything the discrete engine accepts.
    pub fn discrete() -> Fragment {
        Fragment {
            future: true,
            past: true,
            unbounded: true,
            sampled_only: true,
            since: true,
            precedes: true,
            constants: true,
        }
    }

    /// Everything the dense engine accepts.
    pub fn dense() -> Fragment {
        Fragment { sampled_only: false, ..Fragment::discrete() }
    }

    /// Bounded-future formulas without past operators.
    pub fn bounded_future() -> Fragment {
        Fragment {
            future: true,
            past: false,
            unbounded: false,
            sampled_only: true,
            since: false,
            precedes: false,
            constants: true,
        }
    }

    /// What an online monitor accepts.
    pub fn past_only() -> Fragment {
        Fragment { future: false, ..Fragment::discrete() }
    }
}

#[derive(Debug, Clone)]
pub struct FormulaGen {
    pub vars: Vec<String>,
    pub depth: u32,
    /// Largest finite interval bound, in multiples of `grain`.
    pub max_bound: i64,
    pub grain: Time,
    pub fragment: Fragment,
}

impl FormulaGen {
    pub fn new(vars: &[&str], depth: u32, max_bound: i64, fragment: Fragment) -> FormulaGen {
        FormulaGen {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            depth,
            max_bound,
            grain: Time::from(1),
            fragment,
        }
    }

    pub fn with_grain(mut self, grain: Time) -> FormulaGen {
        self.grain = grain;
        self
    }

    pub fn formula(&self, rng: &mut impl Rng) -> Formula {
        let d = rng.gen_range(0..=self.depth);
        self.node(rng, d)
    }

    fn interval(&self, rng: &mut impl Rng, bounded: bool) -> Interval {
        let lo = rng.gen_range(0..=self.max_bound.min(3));
        if !bounded && self.fragment.unbounded && rng.gen_bool(0.2) {
            return Interval::new(self.grain * lo, TimeBound::Infinite).unwrap();
        }
        let hi = rng.gen_range(lo..=self.max_bound.max(lo));
        Interval::bounded(self.grain * lo, self.grain * hi).unwrap()
    }

    fn node(&self, rng: &mut impl Rng, depth: u32) -> Formula {
        if depth == 0 {
            if self.fragment.constants && rng.gen_bool(0.05) {
                return Formula::Const(rng.gen());
            }
            return self.predicate(rng);
        }
        let fr = &self.fragment;
        let mut ops = vec!["not", "and", "or", "implies"];
        if fr.future {
            ops.extend(["eventually", "always", "until"]);
            if fr.sampled_only {
                ops.push("next");
            }
        }
        if fr.past {
            ops.extend(["once", "historically"]);
            if fr.since {
                ops.push("since");
            }
            if fr.precedes {
                ops.push("precedes");
            }
            if fr.sampled_only {
                ops.extend(["prev", "rise", "fall"]);
            }
        }
        let op = *ops.choose(rng).unwrap();
        let sub = |rng: &mut _| self.node(rng, depth - 1);
        match op {
            "not" => Formula::not(sub(rng)),
            "and" => Formula::and(sub(rng), sub(rng)),
            "or" => Formula::or(sub(rng), sub(rng)),
            "implies" => Formula::implies(sub(rng), sub(rng)),
            "eventually" => Formula::eventually(self.interval(rng, false), sub(rng)),
            "always" => Formula::always(self.interval(rng, false), sub(rng)),
            "until" => Formula::until(self.interval(rng, false), sub(rng), sub(rng)),
            "once" => Formula::once(self.interval(rng, false), sub(rng)),
            "historically" => Formula::historically(self.interval(rng, false), sub(rng)),
            "since" => Formula::since(self.interval(rng, false), sub(rng), sub(rng)),
            "precedes" => Formula::precedes(self.interval(rng, true), sub(rng), sub(rng)),
            "next" => Formula::Next(Box::new(sub(rng))),
            "prev" => Formula::Previous(Box::new(sub(rng))),
            "rise" => Formula::Rise(Box::new(sub(rng))),
            _ => Formula::Fall(Box::new(sub(rng))),
        }
    }

    fn var(&self, rng: &mut impl Rng) -> Term {
        Term::var(self.vars.choose(rng).unwrap().clone())
    }

    pub fn term(&self, rng: &mut impl Rng) -> Term {
        match rng.gen_range(0..10) {
            0 => self.var(rng).add(self.var(rng)),
            1 => self.var(rng).sub(self.var(rng)),
            2 => Term::Abs(Box::new(self.var(rng).sub(self.var(rng)))),
            3 => Term::Mul(Box::new(Term::Const(rng.gen_range(-2..=2) as f64)), Box::new(self.var(rng))),
            4 => Term::Neg(Box::new(self.var(rng))),
            5 => Term::Div(Box::new(self.var(rng)), Box::new(Term::Const(2.0))),
            _ => self.var(rng),
        }
    }

    pub fn predicate(&self, rng: &mut impl Rng) -> Formula {
        let op = *[
            Comparison::Gt,
            Comparison::Ge,
            Comparison::Lt,
            Comparison::Le,
            Comparison::Eq,
            Comparison::Ne,
        ]
        .choose(rng)
        .unwrap();
        let c = rng.gen_range(-6..=6) as f64 / 2.0;
        Formula::pred(self.term(rng), op, c)
    }
}

fn value(rng: &mut impl Rng) -> f64 {
    rng.gen_range(-10..=10) as f64 / 2.0
}

/// Every variable sampled at `0, step, .., (n-1) step`.
pub fn uniform_trace(rng: &mut impl Rng, vars: &[&str], n: usize, step: Time) -> Trace {
    let mut trace = Trace::new();
    for v in vars {
        let samples = (0..n).map(|i| Sample::new(step * i as i64, value(rng))).collect();
        trace.insert(*v, samples).unwrap();
    }
    trace
}

/// Per-variable timestamps on a `grain` grid with gaps of 1 to 4 grains;
/// `segments` samples per variable, first sample at 0 or `grain`.
pub fn dense_trace(rng: &mut impl Rng, vars: &[&str], segments: usize, grain: Time) -> Trace {
    let mut trace = Trace::new();
    for v in vars {
        let mut t = grain * rng.gen_range(0..=1);
        let mut samples = Vec::with_capacity(segments);
        for _ in 0..segments {
            samples.push(Sample::new(t, value(rng)));
            t = t + grain * rng.gen_range(1..=4);
        }
        trace.insert(*v, samples).unwrap();
    }
    trace
}
