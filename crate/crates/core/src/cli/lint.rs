use std::io::Write;
use std::path::Path;

use super::{load_spec, CliError};
use crate::rewrite::{normalize, pastify, temporal_depth};
use crate::time::TimeBound;

pub(super) fn run(path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = load_spec(path)?;
    let f = &spec.formula;
    write!(out, "{spec}")?;
    writeln!(out, "# normalized: {}", normalize(f))?;
    let depth = match temporal_depth(f, spec.period) {
        TimeBound::Finite(h) => format!("{h} {}", spec.unit),
        TimeBound::Infinite => "unbounded".to_string(),
    };
    writeln!(out, "# temporal depth: {depth}")?;
    if f.has_future() {
        match pastify(f, spec.period) {
            Ok(p) => writeln!(out, "# pastified: {p}")?,
            Err(e) => writeln!(out, "# not pastifiable: {e}")?,
        }
    } else {
        writeln!(out, "# past-only: monitorable online as is")?;
    }
    // Role-dependent semantics need declarations; report, but do not fail.
    if !spec.has_roles() {
        writeln!(out, "# no input/output declarations: out-rob and in-vac are unavailable")?;
    }
    Ok(())
}
