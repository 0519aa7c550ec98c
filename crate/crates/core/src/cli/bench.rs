use std::io::Write;

use super::{Suite, TimeArg};
use crate::bench::{formula_scaling, window_scaling, BenchRow, Mode};
use crate::io::IoError;

pub(super) fn run(
    suite: Suite,
    reps: Option<usize>,
    sizes: &[usize],
    windows: &[i64],
    samples: usize,
    time: Option<TimeArg>,
) -> Vec<BenchRow> {
    match suite {
        Suite::FormulaScaling => {
            let modes: &[Mode] = match time {
                Some(TimeArg::Discrete) => &[Mode::Discrete],
                Some(TimeArg::Dense) => &[Mode::Dense],
                None => &[Mode::Discrete, Mode::Dense],
            };
            formula_scaling(sizes, reps.unwrap_or(50), modes)
        }
        Suite::WindowScaling => window_scaling(windows, samples, reps.unwrap_or(3)),
    }
}

pub(super) fn write(out: &mut dyn Write, rows: &[BenchRow]) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(BenchRow::HEADER)?;
    for row in rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(())
}
