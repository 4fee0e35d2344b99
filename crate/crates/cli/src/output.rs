//! Report rendering: a human table or one JSON record per line.

use std::io::{self, Write};

use clap::ValueEnum;
use hom3lie::report::{Outcome, Report};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Records,
}

/// One line of output.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Record {
    Report(Report),
    /// A computed space: dimension plus basis elements in file form.
    Space {
        what: String,
        dimension: usize,
        basis: Vec<Value>,
    },
    /// Named boolean results that are not pass/fail checks.
    Flags { what: String, flags: Value },
    /// A file written by a construction command.
    Written { what: String, path: String },
    Error { message: String },
}

impl Record {
    pub fn failed(&self) -> bool {
        matches!(self, Record::Report(r) if !r.passed())
    }
}

fn short(values: &[String]) -> String {
    format!("[{}]", values.join(", "))
}

fn human(out: &mut impl Write, r: &Record) -> io::Result<()> {
    match r {
        Record::Report(rep) => {
            match &rep.outcome {
                Outcome::Pass => writeln!(out, "PASS  {:<24} {}", rep.check, rep.identity)?,
                Outcome::Fail { witness } => {
                    writeln!(out, "FAIL  {:<24} {}", rep.check, rep.identity)?;
                    let cond = witness.condition.map(|c| format!(" condition {c}")).unwrap_or_default();
                    writeln!(out, "      at {:?}{cond}", witness.tuple)?;
                    if !witness.lhs.is_empty() || !witness.rhs.is_empty() {
                        writeln!(out, "      lhs {}", short(&witness.lhs))?;
                        writeln!(out, "      rhs {}", short(&witness.rhs))?;
                    }
                    if !witness.detail.is_empty() {
                        writeln!(out, "      {}", witness.detail)?;
                    }
                }
            }
            for note in &rep.notes {
                writeln!(out, "      note: {note}")?;
            }
        }
        Record::Space { what, dimension, basis } => {
            writeln!(out, "{what}: dimension {dimension}")?;
            for (i, b) in basis.iter().enumerate() {
                writeln!(out, "  [{i}] {b}")?;
            }
        }
        Record::Flags { what, flags } => {
            writeln!(out, "{what}:")?;
            if let Value::Object(map) = flags {
                for (k, v) in map {
                    writeln!(out, "  {k:<12} {v}")?;
                }
            } else {
                writeln!(out, "  {flags}")?;
            }
        }
        Record::Written { what, path } => writeln!(out, "wrote {what} to {path}")?,
        Record::Error { message } => writeln!(out, "error: {message}")?,
    }
    Ok(())
}

pub fn emit(out: &mut impl Write, format: Format, records: &[Record]) -> io::Result<()> {
    for r in records {
        match format {
            Format::Human => human(out, r)?,
            Format::Records => {
                serde_json::to_writer(&mut *out, r).map_err(io::Error::other)?;
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
