//! Scaling benchmarks: robustness of the request/grant formulas over growing
//! traces, and of `G[0,k](a + b >= -2)` over growing windows.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::dense::evaluate_dense_formula;
use crate::discrete::{evaluate_formula, DiscreteMonitor};
use crate::iastl::Semantics;
use crate::rewrite::pastify;
use crate::syntax::Formula;
use crate::time::Time;
use crate::trace::{Sample, Trace};

/// The four formulas of the trace-length benchmark, by name.
pub const FORMULAS: [(&str, &str); 4] = [
    ("phi1", "req >= 3"),
    ("phi2", "req >= 3 implies gnt >= 3"),
    ("phi3", "req >= 3 implies eventually[0:5](gnt >= 3)"),
    ("phi4", "historically((req >= 3) implies ((not (req >= 3)) until[0:5] (gnt >= 3)))"),
];

pub const WINDOWS: [i64; 5] = [100, 1_000, 10_000, 100_000, 1_000_000];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Discrete,
    Dense,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Discrete => "discrete",
            Mode::Dense => "dense",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub suite: &'static str,
    pub formula: String,
    pub mode: &'static str,
    pub n: usize,
    pub reps: usize,
    pub mean_seconds: f64,
}

impl BenchRow {
    pub fn per_sample_seconds(&self) -> f64 {
        self.mean_seconds / self.n as f64
    }

    pub const HEADER: [&'static str; 7] = ["suite", "formula", "mode", "n", "reps", "mean_seconds", "per_sample_seconds"];

    pub fn record(&self) -> [String; 7] {
        [
            self.suite.to_string(),
            self.formula.clone(),
            self.mode.to_string(),
            self.n.to_string(),
            self.reps.to_string(),
            format!("{:e}", self.mean_seconds),
            format!("{:e}", self.per_sample_seconds()),
        ]
    }
}

/// Request/grant trace with values in `[0, 6)`. Dense traces get irregular
/// integer timestamps (gaps of 1 to 3) and independent sampling per variable.
pub fn request_grant_trace(n: usize, mode: Mode, seed: u64) -> Trace {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut trace = Trace::new();
    for var in ["req", "gnt"] {
        let mut t = 0i64;
        let mut samples = Vec::with_capacity(n);
        for _ in 0..n {
            samples.push(Sample::new(t, rng.gen_range(0.0..6.0)));
            t += match mode {
                Mode::Discrete => 1,
                Mode::Dense => rng.gen_range(1..=3),
            };
        }
        trace.insert(var, samples).expect("generated trace is valid");
    }
    trace
}

/// Mean offline evaluation time of each formula for each trace length.
pub fn formula_scaling(sizes: &[usize], reps: usize, modes: &[Mode]) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for &(name, text) in &FORMULAS {
        let f: Formula = text.parse().expect("benchmark formula parses");
        for &mode in modes {
            for &n in sizes {
                let trace = request_grant_trace(n, mode, n as u64);
                let mean_seconds = mean_time(reps, || match mode {
                    Mode::Discrete => {
                        evaluate_formula(&f, &trace, Time::from(1), &Semantics::Classic).expect("evaluates");
                    }
                    Mode::Dense => {
                        evaluate_dense_formula(&f, &trace, &Semantics::Classic).expect("evaluates");
                    }
                });
                rows.push(BenchRow { suite: "formula-scaling", formula: name.to_string(), mode: mode.name(), n, reps, mean_seconds });
            }
        }
    }
    rows
}

/// Online monitor for pastified `G[0,k](a + b >= -2)`: one update per sample.
pub fn window_monitor(k: i64) -> DiscreteMonitor {
    let f: Formula = format!("always[0:{k}](a + b >= -2)").parse().expect("benchmark formula parses");
    let past = pastify(&f, Time::from(1)).expect("bounded formula");
    DiscreteMonitor::new(&past, Time::from(1), &Semantics::Classic).expect("past-only formula")
}

/// Seconds to feed `n` random samples through [`window_monitor`]`(k)`.
pub fn time_window_run(k: i64, n: usize, seed: u64) -> f64 {
    let mut rng = StdRng::seed_from_u64(seed);
    let rows: Vec<[f64; 2]> = (0..n).map(|_| [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)]).collect();
    let mut m = window_monitor(k);
    let start = Instant::now();
    for row in &rows {
        std::hint::black_box(m.update_row(row).expect("update"));
    }
    start.elapsed().as_secs_f64()
}

pub fn window_scaling(windows: &[i64], n: usize, reps: usize) -> Vec<BenchRow> {
    windows
        .iter()
        .map(|&k| {
            let total: f64 = (0..reps).map(|r| time_window_run(k, n, r as u64)).sum();
            BenchRow {
                suite: "window-scaling",
                formula: format!("always[0:{k}](a + b >= -2)"),
                mode: "discrete-online",
                n,
                reps,
                mean_seconds: total / reps as f64,
            }
        })
        .collect()
}

fn mean_time(reps: usize, mut f: impl FnMut()) -> f64 {
    let start = Instant::now();
    for _ in 0..reps {
        f();
    }
    start.elapsed().as_secs_f64() / reps.max(1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn benchmark_formulas_parse_and_run() {
        let rows = formula_scaling(&[50], 1, &[Mode::Discrete, Mode::Dense]);
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.mean_seconds >= 0.0));
        let w = window_scaling(&[10], 100, 1);
        assert_eq!(w[0].n, 100);
    }
}
