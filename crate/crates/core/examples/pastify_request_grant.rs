// Turning a bounded-future formula into a past-only one that reports the
// same robustness `H` steps later.

use std::error::Error;

use stlmon::discrete::evaluate_formula;
use stlmon::iastl::Semantics;
use stlmon::rewrite::{pastify, temporal_depth};
use stlmon::syntax::Formula;
use stlmon::time::{Time, TimeBound};
use stlmon::trace::Trace;

pub fn run_example() -> Result<Formula, Box<dyn Error>> {
    let one = Time::from(1);
    let f: Formula = "(req >= 3) implies eventually[0:5](gnt >= 3)".parse()?;
    let past = pastify(&f, one)?;
    let TimeBound::Finite(h) = temporal_depth(&f, one) else { unreachable!("bounded formula") };
    println!("{f}\n  pastified: {past}\n  horizon: {h}");

    let req = [6.0, 0.0, 4.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    let gnt = [0.0, 0.0, 0.0, 5.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0];
    let trace = Trace::uniform(one, [("req", &req[..]), ("gnt", &gnt[..])])?;
    let original = evaluate_formula(&f, &trace, one, &Semantics::Classic)?;
    let shifted = evaluate_formula(&past, &trace, one, &Semantics::Classic)?;
    for &(t, v) in original.points() {
        if let Some(w) = shifted.get(t + h) {
            assert_eq!(v, w);
            println!("  rho(f, {t}) = {v} = rho(past, {})", t + h);
        }
    }
    Ok(past)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()?;
    Ok(())
}
