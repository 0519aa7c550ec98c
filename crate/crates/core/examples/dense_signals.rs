// Dense time: irregularly sampled signals held piecewise constant, evaluated
// offline and by the online monitor.

use std::error::Error;

use stlmon::dense::{evaluate_dense_formula, DenseMonitor, Knot, StepSignal};
use stlmon::iastl::Semantics;
use stlmon::syntax::Formula;
use stlmon::time::Time;
use stlmon::trace::{Sample, Trace};

pub fn run_example() -> Result<StepSignal, Box<dyn Error>> {
    let trace = Trace::new()
        .with_signal("x", [(Time::ZERO, 1.0), (Time::new(3, 2), 4.0), (Time::from(4), 0.5), (Time::from(6), 2.0)])?
        .with_signal("y", [(Time::ZERO, 2.0), (Time::new(5, 2), 3.0), (Time::from(6), 3.0)])?;
    let f: Formula = "eventually[0:1](x > y)".parse()?;

    let offline = evaluate_dense_formula(&f, &trace, &Semantics::Classic)?;
    println!("{f}:");
    for k in offline.knots() {
        println!("  at {}: {}, then {}", k.time, k.at, k.after);
    }

    // The monitor emits a knot once nothing after it can change it.
    let mut monitor = DenseMonitor::new(&f, &Semantics::Classic)?;
    let mut online: Vec<Knot> = Vec::new();
    let mut arrivals: Vec<(&str, Sample)> =
        trace.signals().flat_map(|(v, s)| s.iter().map(move |x| (v, *x))).collect();
    arrivals.sort_by_key(|(_, s)| s.time);
    for (var, sample) in arrivals {
        let knots = monitor.update([(var, sample)])?;
        if !knots.is_empty() {
            println!("  after {var}@{}: {} knot(s) final", sample.time, knots.len());
        }
        online.extend(knots);
    }
    online.extend(monitor.finish()?);
    assert_eq!(online, offline.knots());
    Ok(offline)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()?;
    Ok(())
}
