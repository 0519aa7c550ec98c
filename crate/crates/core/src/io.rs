//! CSV traces and robustness output, and the line records read by the
//! streaming monitor.

use std::io::{Read, Write};

use crate::dense::{Knot, StepSignal};
use crate::time::Time;
use crate::trace::{Sample, Trace, TraceError};
use crate::value::ExtReal;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("first header column must be `time`, found `{0}`")]
    BadHeader(String),
    #[error("header names no variables")]
    NoVariables,
    #[error("line {line}: invalid timestamp `{text}`")]
    BadTime { line: u64, text: String },
    #[error("line {line}, column `{column}`: invalid value `{text}`")]
    BadValue { line: u64, column: String, text: String },
    #[error("line {line}, column `{column}`: empty cell (only allowed for dense traces)")]
    EmptyCell { line: u64, column: String },
    #[error("trace file has no rows")]
    NoRows,
    #[error("invalid record `{text}`: {message}")]
    BadRecord { text: String, message: String },
    #[error(transparent)]
    Trace(#[from] TraceError),
}

/// Reads `time,<var>,..` CSV. With `allow_gaps`, an empty cell means the
/// variable has no sample at that row's time.
pub fn read_trace_csv(input: impl Read, allow_gaps: bool) -> Result<Trace, IoError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = reader.headers()?.clone();
    let first = headers.get(0).unwrap_or("");
    if !first.eq_ignore_ascii_case("time") {
        return Err(IoError::BadHeader(first.to_string()));
    }
    let vars: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    if vars.is_empty() {
        return Err(IoError::NoVariables);
    }
    let mut trace = Trace::new();
    let mut rows = 0;
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let time_text = record.get(0).unwrap_or("");
        let time: Time =
            time_text.parse().map_err(|_| IoError::BadTime { line, text: time_text.to_string() })?;
        for (var, cell) in vars.iter().zip(record.iter().skip(1)) {
            if cell.is_empty() {
                if allow_gaps {
                    continue;
                }
                return Err(IoError::EmptyCell { line, column: var.clone() });
            }
            let value: f64 =
                cell.parse().map_err(|_| IoError::BadValue { line, column: var.clone(), text: cell.to_string() })?;
            trace.push(var, Sample::new(time, value))?;
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(IoError::NoRows);
    }
    Ok(trace)
}

/// Writes `time,robustness` rows.
pub fn write_series_csv(
    out: impl Write,
    points: impl IntoIterator<Item = (Time, ExtReal)>,
) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["time", "robustness"])?;
    for (t, v) in points {
        w.write_record([format_time(t), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Rows for a dense result: one per knot, and a second row at the same time
/// when the value right after the knot differs from the value at it.
pub fn dense_rows(s: &StepSignal) -> Vec<(Time, ExtReal)> {
    knot_rows(s.knots())
}

/// [`dense_rows`] for knots emitted by an online monitor.
pub fn knot_rows(knots: &[Knot]) -> Vec<(Time, ExtReal)> {
    let mut rows = Vec::with_capacity(knots.len());
    for k in knots {
        rows.push((k.time, k.at));
        if k.after != k.at {
            rows.push((k.time, k.after));
        }
    }
    rows
}

/// Exact decimal when the value has one, otherwise `num/den`.
pub fn format_time(t: Time) -> String {
    let (n, d) = (t.numer(), t.denom());
    let mut rest = d;
    let (mut twos, mut fives) = (0u32, 0u32);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    if rest != 1 {
        return t.to_string();
    }
    let digits = twos.max(fives);
    if digits == 0 {
        return n.to_string();
    }
    let scale = 10i128.pow(digits);
    let scaled = n as i128 * (scale / d as i128);
    let sign = if scaled < 0 { "-" } else { "" };
    let abs = scaled.unsigned_abs();
    let int = abs / scale as u128;
    let frac = abs % scale as u128;
    let frac = format!("{frac:0width$}", width = digits as usize);
    format!("{sign}{int}.{}", frac.trim_end_matches('0'))
}

/// Parses a streamed record `time,var=value[,var=value..]`.
pub fn parse_record(line: &str) -> Result<(Time, Vec<(String, f64)>), IoError> {
    let bad = |message: &str| IoError::BadRecord { text: line.to_string(), message: message.to_string() };
    let mut parts = line.split(',').map(str::trim);
    let time: Time = parts.next().unwrap_or("").parse().map_err(|_| bad("invalid timestamp"))?;
    let mut values = Vec::new();
    for part in parts {
        let (var, value) = part.split_once('=').ok_or_else(|| bad("expected `var=value`"))?;
        let value: f64 = value.trim().parse().map_err(|_| bad("invalid value"))?;
        values.push((var.trim().to_string(), value));
    }
    if values.is_empty() {
        return Err(bad("no values"));
    }
    Ok((time, values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_dense_gaps() {
        let csv = "time,x,y\n0,1,\n1/2,,5\n1.5,2,6\n";
        let t = read_trace_csv(csv.as_bytes(), true).unwrap();
        assert_eq!(t.signal("x").unwrap().len(), 2);
        assert_eq!(t.signal("y").unwrap()[0].time, Time::new(1, 2));
        assert!(matches!(read_trace_csv(csv.as_bytes(), false), Err(IoError::EmptyCell { line: 2, .. })));
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(read_trace_csv("t,x\n0,1\n".as_bytes(), false), Err(IoError::BadHeader(_))));
        assert!(matches!(read_trace_csv("time,x\n".as_bytes(), false), Err(IoError::NoRows)));
        assert!(matches!(read_trace_csv("time,x\n0,a\n".as_bytes(), false), Err(IoError::BadValue { .. })));
        assert!(matches!(read_trace_csv("time,x\n1,1\n0,1\n".as_bytes(), false), Err(IoError::Trace(_))));
    }

    #[test]
    fn writes_infinities_and_decimals() {
        let mut buf = Vec::new();
        write_series_csv(&mut buf, [(Time::new(1, 4), ExtReal::INFINITY), (Time::new(1, 3), ExtReal::finite(-0.5))])
            .unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "time,robustness\n0.25,inf\n1/3,-0.5\n");
        assert_eq!(format_time(Time::new(-3, 2)), "-1.5");
        assert_eq!(format_time(Time::from(7)), "7");
    }

    #[test]
    fn parses_records() {
        let (t, v) = parse_record("0.5, x=1, y=-2").unwrap();
        assert_eq!(t, Time::new(1, 2));
        assert_eq!(v, vec![("x".to_string(), 1.0), ("y".to_string(), -2.0)]);
        assert!(parse_record("1").is_err());
        assert!(parse_record("1,x").is_err());
    }
}
