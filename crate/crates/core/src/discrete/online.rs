use std::collections::HashMap;

use super::window::{Delay, Extremum, MonoDeque, TwoStack, UntilPair};
use super::{check_period, step_bounds, steps, DiscreteError};
use crate::compile::{top_offsets, Compiled, Node};
use crate::iastl::Semantics;
use crate::syntax::{Formula, Specification};
use crate::time::Time;
use crate::value::ExtReal;

const NEG_INF: ExtReal = ExtReal::NEG_INFINITY;
const INF: ExtReal = ExtReal::INFINITY;

#[derive(Debug, Clone)]
enum State {
    Stateless,
    /// `once`/`historically` with a bounded interval.
    Window { a: i64, b: i64, delay: Delay, dq: MonoDeque },
    /// `once`/`historically` with an unbounded interval.
    Running { delay: Delay, acc: ExtReal, kind: Extremum },
    Since {
        a: i64,
        c: Option<i64>,
        unbounded: ExtReal,
        reach: Option<MonoDeque>,
        delay: Delay,
        head: Option<MonoDeque>,
    },
    Precedes { a: i64, b: i64, delay: Delay, head: Option<MonoDeque>, stack: TwoStack },
    Previous { last: ExtReal },
}

/// Capacities of the buffers held for one temporal operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BufferReport {
    pub operator: &'static str,
    /// Slots for window contents (deques, aggregation stacks).
    pub window: usize,
    /// Slots for delay lines.
    pub delay: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Footprint {
    pub buffers: Vec<BufferReport>,
}

impl Footprint {
    pub fn total_slots(&self) -> usize {
        self.buffers.iter().map(|b| b.window + b.delay).sum()
    }
}

/// Incremental monitor for past-only formulas over a uniformly sampled
/// stream. Each [`update`](DiscreteMonitor::update) consumes one sample per
/// variable and returns the robustness at that sample.
#[derive(Debug, Clone)]
pub struct DiscreteMonitor {
    compiled: Compiled,
    states: Vec<State>,
    current: Vec<ExtReal>,
    row: Vec<f64>,
    index: i64,
    first_defined: i64,
    period: Time,
}

pub fn make_online_monitor(spec: &Specification) -> Result<DiscreteMonitor, DiscreteError> {
    DiscreteMonitor::new(&spec.formula, spec.period, &Semantics::Classic)
}

impl DiscreteMonitor {
    pub fn new(f: &Formula, period: Time, semantics: &Semantics) -> Result<DiscreteMonitor, DiscreteError> {
        check_period(period)?;
        if let Some(op) = f.first_future_operator() {
            return Err(DiscreteError::FutureOperatorPresent { operator: op.operator_name() });
        }
        let compiled = Compiled::new(f, semantics);
        let mut states = Vec::with_capacity(compiled.nodes.len());
        for node in &compiled.nodes {
            states.push(match node {
                Node::Once(i, _) | Node::Historically(i, _) => {
                    let kind = if matches!(node, Node::Once(..)) { Extremum::Max } else { Extremum::Min };
                    let (a, b) = step_bounds(i, period)?;
                    match b {
                        Some(b) => State::Window {
                            a,
                            b,
                            delay: Delay::new(a as usize),
                            dq: MonoDeque::new((b - a + 1) as usize, kind),
                        },
                        None => State::Running { delay: Delay::new(a as usize), acc: kind.identity(), kind },
                    }
                }
                Node::Since(i, ..) => {
                    let (a, b) = step_bounds(i, period)?;
                    let c = b.map(|b| b - a);
                    State::Since {
                        a,
                        c,
                        unbounded: NEG_INF,
                        reach: c.map(|c| MonoDeque::new((c + 1) as usize, Extremum::Max)),
                        delay: Delay::new(a as usize),
                        head: (a > 0).then(|| MonoDeque::new(a as usize, Extremum::Min)),
                    }
                }
                Node::Precedes(i, ..) => {
                    let (a, b) = step_bounds(i, period)?;
                    let b = b.expect("precedes is bounded");
                    let c = b - a;
                    State::Precedes {
                        a,
                        b,
                        delay: Delay::new((c + 1) as usize),
                        head: (a > 0).then(|| MonoDeque::new(a as usize, Extremum::Min)),
                        stack: TwoStack::new((c + 1) as usize),
                    }
                }
                Node::Previous(_) | Node::Rise(_) | Node::Fall(_) => State::Previous { last: NEG_INF },
                _ => State::Stateless,
            });
        }
        let first_defined = steps(top_offsets(f, period).0, period)?;
        let n = compiled.nodes.len();
        let vars = compiled.vars.len();
        Ok(DiscreteMonitor {
            compiled,
            states,
            current: vec![NEG_INF; n],
            row: vec![0.0; vars],
            index: 0,
            first_defined,
            period,
        })
    }

    /// Variables expected by [`update_row`](DiscreteMonitor::update_row), in order.
    pub fn variables(&self) -> &[String] {
        &self.compiled.vars
    }

    /// Index of the next sample.
    pub fn index(&self) -> u64 {
        self.index as u64
    }

    /// Timestamp of the next sample.
    pub fn time(&self) -> Time {
        self.period * self.index
    }

    /// First sample index at which the top-level windows are nonempty;
    /// earlier results are the empty-window values.
    pub fn first_defined_index(&self) -> u64 {
        self.first_defined as u64
    }

    pub fn update(&mut self, values: &HashMap<String, f64>) -> Result<ExtReal, DiscreteError> {
        for (slot, var) in self.row.iter_mut().zip(&self.compiled.vars) {
            *slot = *values.get(var).ok_or_else(|| DiscreteError::MissingVariable(var.clone()))?;
        }
        self.step()
    }

    /// Like [`update`](DiscreteMonitor::update) with values in
    /// [`variables`](DiscreteMonitor::variables) order.
    pub fn update_row(&mut self, values: &[f64]) -> Result<ExtReal, DiscreteError> {
        if values.len() != self.row.len() {
            let missing = self.compiled.vars.get(values.len()).cloned().unwrap_or_default();
            return Err(DiscreteError::MissingVariable(missing));
        }
        self.row.copy_from_slice(values);
        self.step()
    }

    fn step(&mut self) -> Result<ExtReal, DiscreteError> {
        if let Some(i) = self.row.iter().position(|v| !v.is_finite()) {
            return Err(DiscreteError::NonFiniteValue(self.compiled.vars[i].clone()));
        }
        let t = self.index;
        for (k, node) in self.compiled.nodes.iter().enumerate() {
            let cur = &self.current;
            let value = match (node, &mut self.states[k]) {
                (Node::Const(b), _) => {
                    if *b {
                        INF
                    } else {
                        NEG_INF
                    }
                }
                (Node::Pred(p), _) => p.score(&self.row),
                (Node::Not(x), _) => -cur[*x],
                (Node::And(x, y), _) => cur[*x].min(cur[*y]),
                (Node::Or(x, y), _) => cur[*x].max(cur[*y]),
                (Node::Implies(x, y), _) => (-cur[*x]).max(cur[*y]),
                (Node::Once(_, x) | Node::Historically(_, x), State::Window { a, b, delay, dq }) => {
                    if let Some(v) = delay.push(cur[*x]) {
                        dq.expire(t - *b);
                        dq.push(t - *a, v);
                    }
                    dq.extremum()
                }
                (Node::Once(_, x) | Node::Historically(_, x), State::Running { delay, acc, kind }) => {
                    if let Some(v) = delay.push(cur[*x]) {
                        *acc = match kind {
                            Extremum::Max => ExtReal::max(*acc, v),
                            Extremum::Min => ExtReal::min(*acc, v),
                        };
                    }
                    *acc
                }
                (Node::Since(_, x, y), State::Since { a, c, unbounded, reach, delay, head }) => {
                    let (xv, yv) = (cur[*x], cur[*y]);
                    *unbounded = yv.max(xv.min(*unbounded));
                    let w = match (reach, c) {
                        (Some(dq), Some(c)) => {
                            dq.expire(t - *c);
                            dq.push(t, yv);
                            dq.extremum().min(*unbounded)
                        }
                        _ => *unbounded,
                    };
                    let delayed = delay.push(w).unwrap_or(NEG_INF);
                    let h = match head {
                        Some(dq) => {
                            dq.expire(t - *a + 1);
                            dq.push(t, xv);
                            dq.extremum()
                        }
                        None => INF,
                    };
                    h.min(delayed)
                }
                (Node::Precedes(_, x, y), State::Precedes { a, b, delay, head, stack }) => {
                    let (xv, yv) = (cur[*x], cur[*y]);
                    let c = *b - *a;
                    if stack.len() as i64 == c + 1 {
                        stack.pop();
                    }
                    stack.push(UntilPair { a: yv, b: xv });
                    let q = stack.fold().a;
                    let delayed = delay.push(xv);
                    let m = match head {
                        Some(dq) => {
                            if let Some(v) = delayed {
                                dq.expire(t - *b);
                                dq.push(t - c - 1, v);
                            }
                            dq.extremum()
                        }
                        None => INF,
                    };
                    m.min(q)
                }
                (Node::Previous(x), State::Previous { last }) => std::mem::replace(last, cur[*x]),
                (Node::Rise(x), State::Previous { last }) => {
                    let before = -std::mem::replace(last, cur[*x]);
                    let before = if t == 0 { NEG_INF } else { before };
                    before.min(cur[*x])
                }
                (Node::Fall(x), State::Previous { last }) => {
                    let before = std::mem::replace(last, cur[*x]);
                    before.min(-cur[*x])
                }
                (node, _) => unreachable!("no online state for {node:?}"),
            };
            self.current[k] = value;
        }
        self.index += 1;
        Ok(self.current[self.compiled.root()])
    }

    /// Buffer capacities per temporal operator. Fixed at construction.
    pub fn footprint(&self) -> Footprint {
        let mut buffers = Vec::new();
        for (node, state) in self.compiled.nodes.iter().zip(&self.states) {
            let operator = match node {
                Node::Once(..) => "once",
                Node::Historically(..) => "historically",
                Node::Since(..) => "since",
                Node::Precedes(..) => "precedes",
                _ => continue,
            };
            let (window, delay) = match state {
                State::Window { delay, dq, .. } => (dq.capacity(), delay.capacity()),
                State::Running { delay, .. } => (0, delay.capacity()),
                State::Since { reach, delay, head, .. } => (
                    reach.as_ref().map_or(0, MonoDeque::capacity) + head.as_ref().map_or(0, MonoDeque::capacity),
                    delay.capacity(),
                ),
                State::Precedes { delay, head, stack, .. } => {
                    (stack.capacity() + head.as_ref().map_or(0, MonoDeque::capacity), delay.capacity())
                }
                _ => continue,
            };
            buffers.push(BufferReport { operator, window, delay });
        }
        Footprint { buffers }
    }
}
