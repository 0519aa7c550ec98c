// Per-sample cost of the online monitor for `G[0,k](a + b >= -2)` as the
// window grows: it stays flat.

use std::error::Error;

use stlmon::bench::window_scaling;

pub fn run_example() -> Result<Vec<f64>, Box<dyn Error>> {
    let rows = window_scaling(&[10, 1_000, 100_000], 200_000, 1);
    for r in &rows {
        println!("{}: {:.1} ns per sample", r.formula, r.per_sample_seconds() * 1e9);
    }
    Ok(rows.iter().map(|r| r.per_sample_seconds()).collect())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()?;
    Ok(())
}
