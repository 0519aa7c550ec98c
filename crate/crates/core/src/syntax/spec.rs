use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use super::ast::Formula;
use super::parser::{is_keyword, Parser};
use super::SyntaxError;
use crate::time::Time;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Input,
    Output,
    Internal,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Input => "input",
            Role::Output => "output",
            Role::Internal => "internal",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Unit {
    #[default]
    S,
    Ms,
    Us,
    Ns,
}

impl Unit {
    /// Length of one unit in nanoseconds.
    pub fn nanos(self) -> i64 {
        match self {
            Unit::S => 1_000_000_000,
            Unit::Ms => 1_000_000,
            Unit::Us => 1_000,
            Unit::Ns => 1,
        }
    }

    /// Converts `amount` expressed in `from` into this unit, exactly.
    pub fn convert(self, amount: Time, from: Unit) -> Time {
        amount * Time::from(Ratio::new(from.nanos(), self.nanos()))
    }
}

impl FromStr for Unit {
    type Err = String;

    fn from_str(s: &str) -> Result<Unit, String> {
        match s {
            "s" => Ok(Unit::S),
            "ms" => Ok(Unit::Ms),
            "us" => Ok(Unit::Us),
            "ns" => Ok(Unit::Ns),
            other => Err(format!("unknown time unit `{other}` (expected s, ms, us or ns)")),
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::S => "s",
            Unit::Ms => "ms",
            Unit::Us => "us",
            Unit::Ns => "ns",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Declaration {
    pub name: String,
    pub role: Role,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
    #[error("line {line}: variable `{name}` is declared twice")]
    DuplicateDeclaration { name: String, line: usize },
    #[error("missing assignment line `<output> = <formula>`")]
    MissingAssignment,
    #[error("line {line}: {message}")]
    UnknownUnit { line: usize, message: String },
    #[error("line {line}: unsupported type `{ty}` (only `float` is supported)")]
    UnsupportedType { ty: String, line: usize },
    #[error("line {line}: assignment target `{name}` is not a declared output")]
    TargetNotOutput { name: String, line: usize },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// A named formula with variable roles, a sampling period and the output
/// variable that receives its robustness.
#[derive(Debug, Clone, PartialEq)]
pub struct Specification {
    pub name: String,
    pub declarations: Vec<Declaration>,
    /// Sampling period, in `unit`s. Timestamps and interval bounds use the same unit.
    pub period: Time,
    pub unit: Unit,
    pub formula: Formula,
    pub target: String,
}

impl Specification {
    /// Specification without role declarations, period 1 s.
    pub fn new(formula: Formula) -> Specification {
        Specification {
            name: "spec".to_string(),
            declarations: Vec::new(),
            period: Time::from(1),
            unit: Unit::S,
            formula,
            target: "rob".to_string(),
        }
    }

    pub fn with_period(mut self, period: impl Into<Time>) -> Specification {
        self.period = period.into();
        self
    }

    pub fn with_role(mut self, name: &str, role: Role) -> Specification {
        self.declarations.retain(|d| d.name != name);
        self.declarations.push(Declaration { name: name.to_string(), role });
        self
    }

    pub fn role(&self, name: &str) -> Option<Role> {
        self.declarations.iter().find(|d| d.name == name).map(|d| d.role)
    }

    fn with_role_set(&self, role: Role) -> BTreeSet<String> {
        self.declarations
            .iter()
            .filter(|d| d.role == role && d.name != self.target)
            .map(|d| d.name.clone())
            .collect()
    }

    /// X_U: declared inputs.
    pub fn inputs(&self) -> BTreeSet<String> {
        self.with_role_set(Role::Input)
    }

    /// X_V: declared outputs other than the assignment target.
    pub fn outputs(&self) -> BTreeSet<String> {
        self.with_role_set(Role::Output)
    }

    pub fn has_roles(&self) -> bool {
        self.declarations.iter().any(|d| d.name != self.target && d.role != Role::Internal)
    }
}

impl fmt::Display for Specification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name {}", self.name)?;
        for d in &self.declarations {
            writeln!(f, "{} float {}", d.role, d.name)?;
        }
        writeln!(f, "period {} {}", self.period, self.unit)?;
        writeln!(f, "{} = {}", self.target, self.formula)
    }
}

/// Parses the line-oriented specification format:
///
/// ```text
/// name request_grant
/// input float req
/// output float rob
/// period 1 s
/// rob = always(req >= 3 implies eventually[0:5](gnt >= 3))
/// ```
///
/// The assignment comes last and may span several lines.
pub fn parse_specification(text: &str) -> Result<Specification, SpecError> {
    let mut name = None;
    let mut declarations: Vec<Declaration> = Vec::new();
    let mut period = None;
    let lines: Vec<&str> = text.lines().collect();

    for (idx, raw) in lines.iter().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some((lhs, rhs_start)) = assignment(raw) {
            let target = lhs.to_string();
            let decl = declarations.iter().find(|d| d.name == target);
            if decl.map(|d| d.role) != Some(Role::Output) {
                return Err(SpecError::TargetNotOutput { name: target, line: line_no });
            }
            let declared: BTreeSet<String> = declarations
                .iter()
                .filter(|d| d.name != target)
                .map(|d| d.name.clone())
                .collect();
            // Re-assemble the formula text so parse errors keep file positions.
            let mut body = "\n".repeat(idx);
            body.push_str(&" ".repeat(rhs_start));
            body.push_str(&raw[rhs_start..]);
            for rest in &lines[idx + 1..] {
                body.push('\n');
                body.push_str(rest);
            }
            let formula = Parser::new(&body, Some(&declared))?.parse_complete()?;
            let (period, unit) = period.unwrap_or((Time::from(1), Unit::S));
            return Ok(Specification {
                name: name.unwrap_or_else(|| "spec".to_string()),
                declarations,
                period,
                unit,
                formula,
                target,
            });
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["name", n] => name = Some(n.to_string()),
            [role @ ("input" | "output" | "internal"), ty, var] => {
                if *ty != "float" {
                    return Err(SpecError::UnsupportedType { ty: ty.to_string(), line: line_no });
                }
                if !is_identifier(var) {
                    return Err(SpecError::Malformed {
                        line: line_no,
                        message: format!("`{var}` is not a valid variable name"),
                    });
                }
                if declarations.iter().any(|d| d.name == *var) {
                    return Err(SpecError::DuplicateDeclaration { name: var.to_string(), line: line_no });
                }
                let role = match *role {
                    "input" => Role::Input,
                    "output" => Role::Output,
                    _ => Role::Internal,
                };
                declarations.push(Declaration { name: var.to_string(), role });
            }
            ["period", amount, unit] => {
                let unit: Unit =
                    unit.parse().map_err(|message| SpecError::UnknownUnit { line: line_no, message })?;
                let amount: Time = amount.parse().map_err(|e| SpecError::Malformed {
                    line: line_no,
                    message: format!("{e}"),
                })?;
                if amount <= Time::ZERO {
                    return Err(SpecError::Malformed {
                        line: line_no,
                        message: "period must be positive".to_string(),
                    });
                }
                period = Some((amount, unit));
            }
            _ => {
                return Err(SpecError::Malformed {
                    line: line_no,
                    message: format!("unrecognized line `{line}`"),
                })
            }
        }
    }
    Err(SpecError::MissingAssignment)
}

/// Splits `<ident> = ...` (but not `==`) into the target and the byte offset
/// of the formula text.
fn assignment(raw: &str) -> Option<(&str, usize)> {
    let eq = raw.find('=')?;
    if raw[eq + 1..].starts_with('=') {
        return None;
    }
    let lhs = raw[..eq].trim();
    if !is_identifier(lhs) || raw[..eq].contains('#') {
        return None;
    }
    Some((lhs, eq + 1))
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !is_keyword(s)
}
