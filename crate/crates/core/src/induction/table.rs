use std::fmt::Write;
use std::str::FromStr;

use super::InductionCertificate;
use crate::error::{Error, Result};
use crate::euler::EulerRecord;
use crate::oracle::ExponentMultiset;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Tsv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "markdown" => Ok(TableFormat::Markdown),
            "tsv" => Ok(TableFormat::Tsv),
            "json" => Ok(TableFormat::Json),
            _ => Err(Error::InvalidParameters(format!("unknown format {s:?}"))),
        }
    }
}

const HEADER: [&str; 4] = ["exp(A', nu')", "alpha_H", "exp(A'', nu*)", "Euler data"];

fn join(e: &ExponentMultiset) -> String {
    e.values().iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
}

/// Drops up to `z` zeros: exponents contributed by the center.
fn essential_part(e: &ExponentMultiset, z: usize) -> ExponentMultiset {
    e.strip_zeros(z.min(e.count(0))).unwrap()
}

fn euler_cell(records: &[EulerRecord]) -> String {
    records
        .iter()
        .map(|r| {
            format!(
                "k={} nu0={} nu1={} |nu_X|={} nu*={} ({})",
                r.k, r.nu0, r.nu1, r.order, r.value, r.path
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// Table rows as cells: exponents with the target's center zeros removed.
pub fn table_rows(cert: &InductionCertificate) -> Vec<[String; 4]> {
    let z = cert.target.dim() - cert.target.rank();
    let mut rows: Vec<[String; 4]> = cert
        .steps
        .iter()
        .map(|s| {
            [
                join(&essential_part(&s.exp_before, z)),
                s.added_form.to_string(),
                join(&essential_part(&s.exp_restricted, z)),
                euler_cell(&s.euler_data),
            ]
        })
        .collect();
    if let Some(last) = cert.steps.last() {
        rows.push([
            join(&essential_part(&last.exp_after, z)),
            String::new(),
            String::new(),
            String::new(),
        ]);
    }
    rows
}

/// Renders an induction table, one row per step plus the final exponents.
pub fn emit_table(cert: &InductionCertificate, format: TableFormat) -> Result<String> {
    let mut out = String::new();
    match format {
        TableFormat::Json => return Ok(cert.to_json()?),
        TableFormat::Tsv => {
            writeln!(out, "{}", HEADER.join("\t")).unwrap();
            for r in table_rows(cert) {
                writeln!(out, "{}", r.join("\t")).unwrap();
            }
        }
        TableFormat::Markdown => {
            writeln!(out, "| {} |", HEADER.join(" | ")).unwrap();
            writeln!(out, "|{}", "---|".repeat(HEADER.len())).unwrap();
            for r in table_rows(cert) {
                let cells: Vec<String> = r.iter().map(|c| c.replace('|', "\\|")).collect();
                writeln!(out, "| {} |", cells.join(" | ")).unwrap();
            }
        }
    }
    Ok(out)
}
