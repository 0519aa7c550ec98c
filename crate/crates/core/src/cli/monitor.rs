use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::Path;

use super::{load_spec, Blame, CliError, TimeArg};
use crate::dense::DenseMonitor;
use crate::discrete::DiscreteMonitor;
use crate::iastl::Semantics;
use crate::io::{format_time, knot_rows, parse_record};
use crate::rewrite::{pastify, temporal_depth};
use crate::syntax::Unit;
use crate::time::{Time, TimeBound};
use crate::trace::Sample;
use crate::value::ExtReal;

pub(super) struct Options {
    pub time: TimeArg,
    pub period: Option<Time>,
    pub unit: Option<Unit>,
    pub pastify: bool,
}

pub(super) fn run(
    spec_path: &Path,
    options: Options,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let spec = load_spec(spec_path)?;
    let period = match options.period {
        Some(p) => spec.unit.convert(p, options.unit.unwrap_or(spec.unit)),
        None => spec.period,
    };
    if period <= Time::ZERO {
        return Err(CliError::Spec(format!("period must be positive, got {period}")));
    }
    let mut formula = spec.formula.clone();
    if options.pastify {
        if let TimeBound::Finite(h) = temporal_depth(&formula, period) {
            formula = pastify(&formula, period).map_err(|e| e.into_cli("pastify"))?;
            writeln!(stderr, "pastified: outputs are delayed by the horizon {h} {}", spec.unit)?;
        } else {
            // Let pastify name the offending operator.
            pastify(&formula, period).map_err(|e| e.into_cli("pastify"))?;
        }
    } else if let Some(op) = formula.first_future_operator() {
        return Err(CliError::Spec(format!(
            "future operator `{}` cannot be monitored online; rerun with --pastify",
            op.operator_name()
        )));
    }

    writeln!(stdout, "time,robustness")?;
    match options.time {
        TimeArg::Discrete => {
            let monitor = DiscreteMonitor::new(&formula, period, &Semantics::Classic).map_err(|e| e.into_cli("monitor"))?;
            discrete(monitor, stdin, stdout)
        }
        TimeArg::Dense => {
            let monitor = DenseMonitor::new(&formula, &Semantics::Classic).map_err(|e| e.into_cli("monitor"))?;
            dense(monitor, stdin, stdout)
        }
    }
}

fn records(stdin: &mut dyn BufRead) -> impl Iterator<Item = Result<(usize, String), CliError>> + '_ {
    stdin.lines().enumerate().filter_map(|(i, line)| match line {
        Ok(l) if l.trim().is_empty() || l.trim_start().starts_with('#') => None,
        Ok(l) => Some(Ok((i + 1, l))),
        Err(e) => Some(Err(CliError::trace("standard input", e))),
    })
}

fn write_row(out: &mut dyn Write, t: Time, v: ExtReal) -> Result<(), CliError> {
    writeln!(out, "{},{v}", format_time(t))?;
    Ok(())
}

/// One output per record once the top-level windows are filled. Variables
/// missing from a record keep their previous value.
fn discrete(mut m: DiscreteMonitor, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), CliError> {
    let mut values: HashMap<String, f64> = HashMap::new();
    let mut seen = false;
    for record in records(stdin) {
        let (line, text) = record?;
        let context = format!("input line {line}");
        let (t, fields) = parse_record(&text).map_err(|e| CliError::trace(&context, e))?;
        let expected = m.time();
        if t != expected {
            return Err(CliError::Trace(format!("{context}: timestamp {t}, expected {expected} (uniform sampling)")));
        }
        values.extend(fields);
        let v = m.update(&values).map_err(|e| e.into_cli(&context))?;
        seen = true;
        if m.index() > m.first_defined_index() {
            write_row(out, t, v)?;
        }
    }
    if !seen {
        return Err(CliError::Trace("standard input: no records".to_string()));
    }
    out.flush()?;
    Ok(())
}

/// Knots as they become final; the rest when the input ends.
fn dense(mut m: DenseMonitor, stdin: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), CliError> {
    let mut seen = false;
    for record in records(stdin) {
        let (line, text) = record?;
        let context = format!("input line {line}");
        let (t, fields) = parse_record(&text).map_err(|e| CliError::trace(&context, e))?;
        let knots = m.update(fields.into_iter().map(|(var, x)| (var, Sample::new(t, x)))).map_err(|e| e.into_cli(&context))?;
        seen = true;
        for (t, v) in knot_rows(&knots) {
            write_row(out, t, v)?;
        }
        out.flush()?;
    }
    if !seen {
        return Err(CliError::Trace("standard input: no records".to_string()));
    }
    let knots = m.finish().map_err(|e| e.into_cli("end of input"))?;
    for (t, v) in knot_rows(&knots) {
        write_row(out, t, v)?;
    }
    out.flush()?;
    Ok(())
}
