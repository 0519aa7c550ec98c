use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use stlmon::discrete::{evaluate_formula, raw_robustness, DiscreteMonitor};
use stlmon::iastl::Semantics;
use stlmon::time::Time;
use stlmon::value::ExtReal;
use stlmon_oracle::gen::{uniform_trace, Fragment, FormulaGen};
use stlmon_oracle::discrete as oracle;

const VARS: [&str; 3] = ["p", "q", "r"];

fn close(a: ExtReal, b: ExtReal) -> bool {
    a == b || (a.is_finite() && b.is_finite() && (a.get() - b.get()).abs() <= 1e-9)
}

#[test]
fn offline_matches_oracle() {
    let mut rng = StdRng::seed_from_u64(7);
    let gen = FormulaGen::new(&VARS, 4, 8, Fragment::discrete());
    let one = Time::from(1);
    for case in 0..1000 {
        let f = gen.formula(&mut rng);
        let n = rng.gen_range(1..=50);
        let trace = uniform_trace(&mut rng, &VARS, n, one);
        let want = oracle::robustness(&f, &trace, one);
        let got = evaluate_formula(&f, &trace, one, &Semantics::Classic).unwrap();
        let idx = oracle::defined_indices(&f, n, one);
        let times: Vec<Time> = idx.iter().map(|&i| Time::from(i as i64)).collect();
        let got_times: Vec<Time> = got.points().iter().map(|p| p.0).collect();
        assert_eq!(got_times, times, "case {case}: {f}");
        for (&i, &(_, v)) in idx.iter().zip(got.points()) {
            assert!(close(v, want[i]), "case {case}: {f} at {i}: {v} vs {}", want[i]);
        }
    }
}

#[test]
fn non_unit_period() {
    let mut rng = StdRng::seed_from_u64(11);
    let step = Time::new(1, 4);
    let gen = FormulaGen::new(&VARS, 3, 6, Fragment::discrete()).with_grain(step);
    for _ in 0..200 {
        let f = gen.formula(&mut rng);
        let n = rng.gen_range(1..=30);
        let trace = uniform_trace(&mut rng, &VARS, n, step);
        let want = oracle::robustness(&f, &trace, step);
        let got = raw_robustness(&f, &trace, step, &Semantics::Classic).unwrap();
        assert_eq!(got, want, "{f}");
    }
}

#[test]
fn online_matches_offline_and_oracle() {
    let mut rng = StdRng::seed_from_u64(21);
    let gen = FormulaGen::new(&VARS, 4, 8, Fragment::past_only());
    let one = Time::from(1);
    for case in 0..1000 {
        let f = gen.formula(&mut rng);
        let n = rng.gen_range(1..=50);
        let trace = uniform_trace(&mut rng, &VARS, n, one);
        let offline = raw_robustness(&f, &trace, one, &Semantics::Classic).unwrap();
        let want = oracle::robustness(&f, &trace, one);
        let mut m = DiscreteMonitor::new(&f, one, &Semantics::Classic).unwrap();
        for t in 0..n {
            let row: HashMap<String, f64> =
                VARS.iter().map(|v| (v.to_string(), trace.signal(v).unwrap()[t].value)).collect();
            let v = m.update(&row).unwrap();
            assert_eq!(v, offline[t], "case {case}: {f} at {t}");
            assert!(close(v, want[t]), "case {case}: {f} at {t}");
        }
    }
}
