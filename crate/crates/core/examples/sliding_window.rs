// Streaming minimum and maximum of a step signal over a forward window.

use std::error::Error;

use stlmon::dense::{window_extremum, Extremum, StepSignal};
use stlmon::time::Time;
use stlmon::value::ExtReal;

pub fn run_example() -> Result<(StepSignal, StepSignal), Box<dyn Error>> {
    let steps: Vec<(Time, ExtReal)> = [(0, 3.0), (1, 1.0), (2, 4.0), (4, 2.0), (5, 5.0)]
        .into_iter()
        .map(|(t, v)| (Time::from(t), ExtReal::finite(v)))
        .collect();
    let s = StepSignal::from_steps(&steps, Time::from(7));
    let width = Time::from(2);
    let lo = window_extremum(&s, width, Extremum::Min);
    let hi = window_extremum(&s, width, Extremum::Max);
    println!("min and max over [t, t + {width}]:");
    for t in 0..=5 {
        let t = Time::from(t);
        if let (Some(a), Some(b)) = (lo.value_at(t), hi.value_at(t)) {
            println!("  t = {t}: {a} .. {b}");
        }
    }
    Ok((lo, hi))
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()?;
    Ok(())
}
