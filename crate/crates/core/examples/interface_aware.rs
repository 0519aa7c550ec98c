// Interface-aware robustness: how much the outputs (resp. inputs) alone
// could change before the verdict flips.

use std::error::Error;

use stlmon::discrete::evaluate_discrete;
use stlmon::iastl::{input_vacuity, output_robustness};
use stlmon::syntax::parse_specification;
use stlmon::time::Time;
use stlmon::trace::Trace;
use stlmon::value::ExtReal;

const SPEC: &str = "\
name request_grant
input float req
output float gnt
output float rob
period 1 s
rob = always((req >= 3) implies eventually[0:5](gnt >= 3))
";

fn scenario(req0: f64, req_rest: f64, gnt2: f64) -> Result<Trace, Box<dyn Error>> {
    let req: Vec<f64> = (0..11).map(|t| if t == 0 { req0 } else { req_rest }).collect();
    let gnt: Vec<f64> = (0..11).map(|t| if t == 2 { gnt2 } else { 0.0 }).collect();
    Ok(Trace::uniform(Time::from(1), [("req", &req[..]), ("gnt", &gnt[..])])?)
}

/// `(classic, output robustness, input vacuity)` at time 0 per scenario.
pub type Verdicts = (ExtReal, ExtReal, ExtReal);

pub fn run_example() -> Result<Vec<Verdicts>, Box<dyn Error>> {
    let spec = parse_specification(SPEC)?;
    let scenarios = [
        ("request granted in time", scenario(6.0, 0.0, 6.0)?),
        ("no request", scenario(2.0, 2.0, 0.0)?),
        ("grant too weak", scenario(6.0, 0.0, 1.0)?),
        ("weak request, weak grant", scenario(4.0, 0.0, 1.0)?),
    ];
    let mut out = Vec::new();
    for (name, trace) in scenarios {
        let at0 = |s: stlmon::trace::RobustnessSeries| s.get(Time::ZERO).unwrap_or(ExtReal::NEG_INFINITY);
        let row = (
            at0(evaluate_discrete(&spec, &trace)?),
            at0(output_robustness(&spec, &trace)?),
            at0(input_vacuity(&spec, &trace)?),
        );
        println!("{name:>26}: classic {:>4}  output {:>4}  input vacuity {:>4}", row.0, row.1, row.2);
        out.push(row);
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()?;
    Ok(())
}
