//! Symmetry laws and sign consistency of the reference semantics itself.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use stlmon::syntax::Formula;
use stlmon::time::Time;
use stlmon::trace::Trace;
use stlmon::value::ExtReal;
use stlmon_oracle::gen::{dense_trace, uniform_trace, Fragment, FormulaGen};
use stlmon_oracle::{dense, discrete};

const VARS: [&str; 3] = ["p", "q", "r"];

#[test]
fn negation_and_disjunction_laws() {
    let mut rng = StdRng::seed_from_u64(71);
    let one = Time::from(1);
    let gen = FormulaGen::new(&VARS, 3, 5, Fragment::discrete());
    for _ in 0..300 {
        let (f, g) = (gen.formula(&mut rng), gen.formula(&mut rng));
        let n = rng.gen_range(1..=20);
        let trace = uniform_trace(&mut rng, &VARS, n, one);
        let rf = discrete::robustness(&f, &trace, one);
        let rg = discrete::robustness(&g, &trace, one);
        let neg = discrete::robustness(&Formula::not(f.clone()), &trace, one);
        let or = discrete::robustness(&Formula::or(f.clone(), g.clone()), &trace, one);
        for t in 0..n {
            assert_eq!(neg[t], -rf[t], "not {f} at {t}");
            assert_eq!(or[t], rf[t].max(rg[t]), "{f} or {g} at {t}");
        }
    }
}

#[test]
fn dense_negation_law() {
    let mut rng = StdRng::seed_from_u64(73);
    let half = Time::new(1, 2);
    let gen = FormulaGen::new(&VARS, 3, 4, Fragment::dense()).with_grain(half);
    for _ in 0..200 {
        let f = gen.formula(&mut rng);
        let trace = dense_trace(&mut rng, &VARS, 6, half);
        let (lo, hi) = dense::domain(&f, &trace);
        if lo > hi {
            continue;
        }
        let neg = Formula::not(f.clone());
        for t in dense::check_points(&f, &trace) {
            assert_eq!(dense::value_at(&neg, &trace, t), -dense::value_at(&f, &trace, t), "{f} at {t}");
        }
    }
}

#[test]
fn robustness_sign_decides_satisfaction() {
    let mut rng = StdRng::seed_from_u64(79);
    let one = Time::from(1);
    let gen = FormulaGen::new(&VARS, 3, 5, Fragment::discrete());
    let (mut sat, mut unsat) = (0, 0);
    for _ in 0..500 {
        let f = gen.formula(&mut rng);
        let n = rng.gen_range(1..=20);
        let trace = uniform_trace(&mut rng, &VARS, n, one);
        let rob = discrete::robustness(&f, &trace, one);
        let holds = discrete::boolean(&f, &trace, one);
        for t in 0..n {
            if rob[t] > ExtReal::ZERO {
                assert!(holds[t], "{f} at {t}: robustness {} but false", rob[t]);
                sat += 1;
            } else if rob[t] < ExtReal::ZERO {
                assert!(!holds[t], "{f} at {t}: robustness {} but true", rob[t]);
                unsat += 1;
            }
        }
    }
    assert!(sat > 100 && unsat > 100, "{sat} / {unsat}");
}

#[test]
fn dense_sign_decides_satisfaction() {
    let mut rng = StdRng::seed_from_u64(83);
    let half = Time::new(1, 2);
    let gen = FormulaGen::new(&VARS, 3, 4, Fragment::dense()).with_grain(half);
    for _ in 0..200 {
        let f = gen.formula(&mut rng);
        let trace = dense_trace(&mut rng, &VARS, 6, half);
        let (lo, hi) = dense::domain(&f, &trace);
        if lo > hi {
            continue;
        }
        for t in dense::check_points(&f, &trace) {
            let rob = dense::value_at(&f, &trace, t);
            if rob != ExtReal::ZERO {
                assert_eq!(dense::boolean_at(&f, &trace, t), rob > ExtReal::ZERO, "{f} at {t}: {rob}");
            }
        }
    }
}

#[test]
fn bounded_value_is_violated_exactly_when_robustness_is_negative() {
    let mut rng = StdRng::seed_from_u64(89);
    let one = Time::from(1);
    let f: Formula = "always(x <= 1.1)".parse().unwrap();
    for _ in 0..300 {
        let n = rng.gen_range(1..=30);
        let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.2)).collect();
        let trace = Trace::uniform(one, [("x", &xs[..])]).unwrap();
        let rob = discrete::robustness(&f, &trace, one)[0];
        let holds = discrete::boolean(&f, &trace, one)[0];
        assert_eq!(!holds, rob < ExtReal::ZERO, "{xs:?}: {rob}");
    }
}
