use std::path::Path;

use super::{load_spec, Blame, CliError, SemanticsArg, TimeArg};
use crate::dense::evaluate_dense;
use crate::discrete::evaluate_discrete;
use crate::iastl::{input_vacuity, input_vacuity_dense, output_robustness, output_robustness_dense};
use crate::io::{dense_rows, read_trace_csv};
use crate::time::Time;
use crate::value::ExtReal;

/// Offline evaluation: the rows `eval` writes.
pub(super) fn run(
    spec_path: &Path,
    trace_path: &Path,
    time: TimeArg,
    semantics: SemanticsArg,
) -> Result<Vec<(Time, ExtReal)>, CliError> {
    let spec = load_spec(spec_path)?;
    let file = std::fs::File::open(trace_path).map_err(|e| CliError::trace(trace_path.display(), e))?;
    let trace = read_trace_csv(std::io::BufReader::new(file), time == TimeArg::Dense)
        .map_err(|e| CliError::trace(trace_path.display(), e))?;
    let context = "evaluation";
    Ok(match time {
        TimeArg::Discrete => {
            let series = match semantics {
                SemanticsArg::Classic => evaluate_discrete(&spec, &trace).map_err(|e| e.into_cli(context))?,
                SemanticsArg::OutRob => output_robustness(&spec, &trace).map_err(|e| e.into_cli(context))?,
                SemanticsArg::InVac => input_vacuity(&spec, &trace).map_err(|e| e.into_cli(context))?,
            };
            series.points().to_vec()
        }
        TimeArg::Dense => {
            let signal = match semantics {
                SemanticsArg::Classic => evaluate_dense(&spec, &trace).map_err(|e| e.into_cli(context))?,
                SemanticsArg::OutRob => output_robustness_dense(&spec, &trace).map_err(|e| e.into_cli(context))?,
                SemanticsArg::InVac => input_vacuity_dense(&spec, &trace).map_err(|e| e.into_cli(context))?,
            };
            dense_rows(&signal)
        }
    })
}
