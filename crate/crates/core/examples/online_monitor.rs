// Feeding samples one at a time to the online monitor of a past-only formula.

use std::collections::HashMap;
use std::error::Error;

use stlmon::discrete::DiscreteMonitor;
use stlmon::iastl::Semantics;
use stlmon::syntax::Formula;
use stlmon::time::Time;
use stlmon::value::ExtReal;

pub fn run_example() -> Result<Vec<(Time, ExtReal)>, Box<dyn Error>> {
    // Every grant must follow a request within the last 3 steps.
    let f: Formula = "historically[0:10]((gnt >= 3) implies once[0:3](req >= 3))".parse()?;
    let mut monitor = DiscreteMonitor::new(&f, Time::from(1), &Semantics::Classic)?;

    let stream = [(5.0, 0.0), (0.0, 0.0), (0.0, 4.0), (0.0, 0.0), (0.0, 0.0), (0.0, 6.0)];
    let mut out = Vec::new();
    for (req, gnt) in stream {
        let t = monitor.time();
        let row = HashMap::from([("req".to_string(), req), ("gnt".to_string(), gnt)]);
        let v = monitor.update(&row)?;
        println!("t = {t}: req {req}, gnt {gnt} -> {v}");
        out.push((t, v));
    }
    println!("buffer slots held: {}", monitor.footprint().total_slots());
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()?;
    Ok(())
}
