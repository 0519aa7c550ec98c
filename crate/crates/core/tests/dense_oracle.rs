use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use stlmon::dense::{evaluate_dense_formula, window_extremum, DenseMonitor, Extremum, Knot, StepSignal};
use stlmon::iastl::Semantics;
use stlmon::syntax::Formula;
use stlmon::time::{Interval, Time};
use stlmon::trace::{Sample, Trace};
use stlmon::value::ExtReal;
use stlmon_oracle::dense as oracle;
use stlmon_oracle::gen::{dense_trace, Fragment, FormulaGen};

const VARS: [&str; 3] = ["p", "q", "r"];

fn close(a: ExtReal, b: ExtReal) -> bool {
    a == b || (a.is_finite() && b.is_finite() && (a.get() - b.get()).abs() <= 1e-9)
}

fn half() -> Time {
    Time::new(1, 2)
}

/// Knot times plus the midpoints between them.
fn probe_points(s: &StepSignal) -> Vec<Time> {
    let ts: Vec<Time> = s.knots().iter().map(|k| k.time).collect();
    let mut out = ts.clone();
    out.extend(ts.windows(2).map(|w| w[0].midpoint(w[1])));
    out
}

fn check_against_oracle(f: &Formula, trace: &Trace, got: &StepSignal, case: usize) {
    match oracle::defined_domain(f, trace) {
        None => assert!(got.is_empty(), "case {case}: {f}: expected empty output"),
        Some((lo, hi)) => {
            assert_eq!((got.start(), got.end()), (Some(lo), Some(hi)), "case {case}: {f}");
        }
    }
    let mut points = oracle::check_points(f, trace);
    points.extend(probe_points(got));
    for t in points {
        let want = oracle::value_at(f, trace, t);
        let v = got.value_at(t).expect("inside domain");
        assert!(close(v, want), "case {case}: {f} at {t}: {v} vs {want}");
    }
}

#[test]
fn offline_matches_oracle() {
    let mut rng = StdRng::seed_from_u64(3);
    let gen = FormulaGen::new(&VARS, 3, 6, Fragment::dense()).with_grain(half());
    for case in 0..1000 {
        let f = gen.formula(&mut rng);
        let segments = rng.gen_range(1..=10);
        let trace = dense_trace(&mut rng, &VARS, segments, half());
        let (s, e) = domain_of(&f, &trace);
        if s > e {
            continue;
        }
        let got = evaluate_dense_formula(&f, &trace, &Semantics::Classic).unwrap();
        check_against_oracle(&f, &trace, &got, case);
    }
}

fn domain_of(f: &Formula, trace: &Trace) -> (Time, Time) {
    let mut vars = f.variables();
    if vars.is_empty() {
        vars = trace.variables().map(String::from).collect();
    }
    let firsts = vars.iter().map(|v| trace.signal(v).unwrap()[0].time);
    let lasts = vars.iter().map(|v| trace.signal(v).unwrap().last().unwrap().time);
    (firsts.max().unwrap(), lasts.min().unwrap())
}

/// Random arrival order consistent with per-variable time order, split into
/// random chunks.
fn chunks(rng: &mut StdRng, trace: &Trace) -> Vec<Vec<(String, Sample)>> {
    let mut all: Vec<(String, Sample)> =
        trace.signals().flat_map(|(v, s)| s.iter().map(move |x| (v.to_string(), *x))).collect();
    all.sort_by_key(|(v, s)| (s.time, v.clone()));
    let mut out = Vec::new();
    let mut i = 0;
    while i < all.len() {
        let k = rng.gen_range(1..=4).min(all.len() - i);
        out.push(all[i..i + k].to_vec());
        i += k;
    }
    out
}

#[test]
fn online_matches_offline_and_oracle() {
    let mut rng = StdRng::seed_from_u64(5);
    let fragment = Fragment { unbounded: false, ..Fragment::dense() };
    let gen = FormulaGen::new(&VARS, 3, 6, fragment).with_grain(half());
    let mut checked = 0;
    for case in 0..1000 {
        let f = gen.formula(&mut rng);
        let segments = rng.gen_range(1..=10);
        let trace = dense_trace(&mut rng, &VARS, segments, half());
        if f.variables().is_empty() {
            continue;
        }
        let (s, e) = domain_of(&f, &trace);
        if s > e {
            continue;
        }
        let offline = evaluate_dense_formula(&f, &trace, &Semantics::Classic).unwrap();
        let mut m = DenseMonitor::new(&f, &Semantics::Classic).unwrap();
        let mut got: Vec<Knot> = Vec::new();
        for chunk in chunks(&mut rng, &trace) {
            got.extend(m.update(chunk).unwrap());
        }
        got.extend(m.finish().unwrap());
        assert_eq!(got, offline.knots(), "case {case}: {f}");
        check_against_oracle(&f, &trace, &StepSignal::new(got), case);
        checked += 1;
    }
    assert!(checked > 900, "only {checked} cases exercised");
}

#[test]
fn chunking_does_not_matter() {
    let mut rng = StdRng::seed_from_u64(9);
    let fragment = Fragment { unbounded: false, ..Fragment::dense() };
    let gen = FormulaGen::new(&VARS, 3, 4, fragment).with_grain(half());
    for case in 0..200 {
        let f = gen.formula(&mut rng);
        if f.variables().is_empty() {
            continue;
        }
        let trace = dense_trace(&mut rng, &VARS, 12, half());
        let runs: Vec<Vec<Knot>> = (0..3)
            .map(|_| {
                let mut m = DenseMonitor::new(&f, &Semantics::Classic).unwrap();
                let mut out = Vec::new();
                for chunk in chunks(&mut rng, &trace) {
                    out.extend(m.update(chunk).unwrap());
                }
                out.extend(m.finish().unwrap());
                out
            })
            .collect();
        assert_eq!(runs[0], runs[1], "case {case}: {f}");
        assert_eq!(runs[0], runs[2], "case {case}: {f}");
    }
}

#[test]
fn window_extremum_matches_naive() {
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..300 {
        let n = rng.gen_range(1..=100);
        let mut t = Time::ZERO;
        let mut steps = Vec::new();
        for _ in 0..n {
            steps.push((t, ExtReal::finite(rng.gen_range(-5..=5) as f64)));
            t = t + half() * rng.gen_range(1..=3);
        }
        let end = t;
        let s = StepSignal::from_steps(&steps, end);
        let width = half() * rng.gen_range(0..=8);
        let kind = if rng.gen() { Extremum::Min } else { Extremum::Max };
        let w = window_extremum(&s, width, kind);
        for p in probe_points(&w).into_iter().chain(probe_points(&s)) {
            // the input is constant between its knots, so knots and midpoints
            // inside [p, p + width] cover every value it takes there
            let hi = (p + width).min(end);
            let mut cands = vec![p, hi];
            for k in s.knots() {
                if p <= k.time && k.time <= hi {
                    cands.push(k.time);
                }
            }
            cands.sort();
            cands.dedup();
            let mids: Vec<Time> = cands.windows(2).map(|c| c[0].midpoint(c[1])).collect();
            cands.extend(mids);
            let vals = cands.iter().map(|&c| s.value_at(c).unwrap());
            let want = match kind {
                Extremum::Min => vals.fold(ExtReal::INFINITY, ExtReal::min),
                Extremum::Max => vals.fold(ExtReal::NEG_INFINITY, ExtReal::max),
            };
            assert_eq!(w.value_at(p), Some(want), "width {width} at {p}");
        }
        assert!(w.knots().len() <= 2 * s.knots().len() + 2);
    }
}

#[test]
fn window_spec_examples() {
    let v = ExtReal::finite;
    let s = StepSignal::from_steps(&[(0.into(), v(1.0)), (2.into(), v(5.0)), (4.into(), v(0.0))], 6.into());
    let w = window_extremum(&s, 2.into(), Extremum::Min);
    assert_eq!(w.value_at(0.into()), Some(v(1.0)));
    assert_eq!(w.value_at(2.into()), Some(v(0.0)));
    assert_eq!(window_extremum(&s, Time::ZERO, Extremum::Max), s);
    let c = StepSignal::constant(0.into(), 6.into(), v(3.0));
    assert_eq!(window_extremum(&c, 4.into(), Extremum::Max), c);
}

#[test]
fn de_morgan_pointwise() {
    let mut rng = StdRng::seed_from_u64(17);
    let gen = FormulaGen::new(&VARS, 2, 4, Fragment::dense()).with_grain(half());
    for _ in 0..200 {
        let g = gen.formula(&mut rng);
        let i = Interval::bounded(Time::ZERO, half() * rng.gen_range(0..=6)).unwrap();
        let trace = dense_trace(&mut rng, &VARS, 8, half());
        if !g.variables().is_empty() {
            let (s, e) = domain_of(&g, &trace);
            if s > e {
                continue;
            }
        }
        let f = Formula::eventually(i, g.clone());
        let d = Formula::not(Formula::always(i, Formula::not(g)));
        let a = evaluate_dense_formula(&f, &trace, &Semantics::Classic).unwrap();
        let b = evaluate_dense_formula(&d, &trace, &Semantics::Classic).unwrap();
        assert_eq!(a, b, "{f}");
    }
}
