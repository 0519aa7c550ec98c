// Offline robustness of a request/grant specification over a sampled trace.

use std::error::Error;

use stlmon::discrete::evaluate_discrete;
use stlmon::syntax::parse_specification;
use stlmon::time::Time;
use stlmon::trace::{RobustnessSeries, Trace};

const SPEC: &str = "\
name request_grant
input float req
output float gnt
output float rob
period 1 s
rob = always[0:4]((req >= 3) implies eventually[0:2](gnt >= 3))
";

pub fn run_example() -> Result<RobustnessSeries, Box<dyn Error>> {
    let spec = parse_specification(SPEC)?;
    let req = [6.0, 0.0, 0.0, 4.0, 0.0, 0.0, 0.0, 0.0];
    let gnt = [0.0, 1.0, 5.0, 0.0, 0.0, 3.5, 0.0, 0.0];
    let trace = Trace::uniform(Time::from(1), [("req", &req[..]), ("gnt", &gnt[..])])?;

    let series = evaluate_discrete(&spec, &trace)?;
    println!("{} = {}", spec.target, spec.formula);
    for (t, v) in series.points() {
        println!("  t = {t}: {v}");
    }
    Ok(series)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()?;
    Ok(())
}
