//! Command-line front end. [`run`] takes the argument list and the three
//! standard streams, so tests can drive it without a subprocess.
//!
//! Exit codes: 0 success, 1 output failure, 2 specification error, 3 trace error.

mod bench;
mod eval;
mod lint;
mod monitor;

use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::dense::DenseError;
use crate::discrete::DiscreteError;
use crate::iastl::IaError;
use crate::io::IoError;
use crate::rewrite::RewriteError;
use crate::syntax::{parse_specification, SpecError, Specification, Unit};
use crate::time::Time;

#[derive(Debug, Parser)]
#[command(name = "stlmon", version, about = "Signal Temporal Logic robustness monitor")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a specification over a CSV trace.
    Eval {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        #[arg(long, value_enum, default_value_t = TimeArg::Discrete)]
        time: TimeArg,
        #[arg(long, value_enum, default_value_t = SemanticsArg::Classic)]
        semantics: SemanticsArg,
        /// Output CSV; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monitor `time,var=value,..` records read from standard input.
    Monitor {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = TimeArg::Discrete)]
        time: TimeArg,
        /// Sampling period, overriding the specification's.
        #[arg(long)]
        period: Option<Time>,
        /// Unit of `--period`; defaults to the specification's unit.
        #[arg(long)]
        unit: Option<Unit>,
        /// Rewrite bounded future operators into past ones first.
        #[arg(long)]
        pastify: bool,
    },
    /// Run a scaling benchmark and write the timings as CSV.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Repetitions per configuration [default: 50 for formula-scaling, 3 for window-scaling].
        #[arg(long)]
        reps: Option<usize>,
        /// Trace lengths for formula-scaling.
        #[arg(long, value_delimiter = ',', default_values_t = [1_000, 10_000, 100_000, 1_000_000])]
        sizes: Vec<usize>,
        /// Window sizes k for window-scaling.
        #[arg(long, value_delimiter = ',', default_values_t = crate::bench::WINDOWS)]
        windows: Vec<i64>,
        /// Trace length for window-scaling.
        #[arg(long, default_value_t = 2_000_000)]
        samples: usize,
        /// Restrict formula-scaling to one time model.
        #[arg(long, value_enum)]
        time: Option<TimeArg>,
    },
    /// Check a specification and print its normalized form.
    Lint {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TimeArg {
    Discrete,
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Classic,
    OutRob,
    InVac,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    FormulaScaling,
    WindowScaling,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Spec(String),
    #[error("{0}")]
    Trace(String),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Output(_) => 1,
            CliError::Spec(_) => 2,
            CliError::Trace(_) => 3,
        }
    }

    fn spec(context: impl std::fmt::Display, e: impl std::fmt::Display) -> CliError {
        CliError::Spec(format!("{context}: {e}"))
    }

    fn trace(context: impl std::fmt::Display, e: impl std::fmt::Display) -> CliError {
        CliError::Trace(format!("{context}: {e}"))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Output(e.to_string())
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> CliError {
        CliError::Output(e.to_string())
    }
}

/// Which side an engine error is on: the formula (2) or the data (3).
pub(crate) trait Blame: std::fmt::Display {
    fn is_spec_error(&self) -> bool;

    fn into_cli(self, context: &str) -> CliError
    where
        Self: Sized,
    {
        if self.is_spec_error() {
            CliError::spec(context, self)
        } else {
            CliError::trace(context, self)
        }
    }
}

impl Blame for DiscreteError {
    fn is_spec_error(&self) -> bool {
        matches!(
            self,
            DiscreteError::MisalignedInterval { .. }
                | DiscreteError::FutureOperatorPresent { .. }
                | DiscreteError::BadPeriod(_)
        )
    }
}

impl Blame for DenseError {
    fn is_spec_error(&self) -> bool {
        matches!(self, DenseError::UnsupportedOperator { .. } | DenseError::UnboundedOnline { .. })
    }
}

impl Blame for IaError {
    fn is_spec_error(&self) -> bool {
        match self {
            IaError::NoRoleDeclarations | IaError::OverlappingSets(_) => true,
            IaError::OutsideDomain(_) => false,
            IaError::Discrete(e) => e.is_spec_error(),
            IaError::Dense(e) => e.is_spec_error(),
        }
    }
}

impl Blame for RewriteError {
    fn is_spec_error(&self) -> bool {
        true
    }
}

impl Blame for SpecError {
    fn is_spec_error(&self) -> bool {
        true
    }
}

pub(crate) fn load_spec(path: &Path) -> Result<Specification, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::spec(path.display(), e))?;
    parse_specification(&text).map_err(|e| CliError::spec(path.display(), e))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return e.exit_code();
        }
    };
    match execute(cli.command, stdin, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(
    command: Command,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Eval { spec, trace, time, semantics, out } => {
            let rows = eval::run(&spec, &trace, time, semantics)?;
            with_output(out.as_deref(), stdout, |w| crate::io::write_series_csv(w, rows))
        }
        Command::Monitor { spec, time, period, unit, pastify } => {
            let options = monitor::Options { time, period, unit, pastify };
            monitor::run(&spec, options, stdin, stdout, stderr)
        }
        Command::Bench { suite, out, reps, sizes, windows, samples, time } => {
            let rows = bench::run(suite, reps, &sizes, &windows, samples, time);
            with_output(out.as_deref(), stdout, |w| bench::write(w, &rows))
        }
        Command::Lint { spec } => lint::run(&spec, stdout),
    }
}

fn with_output(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    write: impl FnOnce(&mut dyn Write) -> Result<(), IoError>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut file = std::io::BufWriter::new(std::fs::File::create(p)?);
            write(&mut file)?;
            file.flush()?;
        }
        None => write(stdout)?,
    }
    Ok(())
}
