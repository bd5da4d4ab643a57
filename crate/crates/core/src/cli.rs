//! The `multiarr` command line: argument parsing and verb dispatch.
//!
//! Exit codes: 0 on success, 1 on a mathematical failure or an inconclusive
//! search, 2 on malformed input.

use std::fmt::Write as _;
use std::io::Read;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::arrangement::{LinearForm, Multiarrangement};
use crate::catalog::{run_catalog, CatalogEntry};
use crate::error::{Error, Result};
use crate::euler::{restriction, triple, Provenance};
use crate::induction::{
    emit_table, search, table_rows, verify, InductionCertificate, SearchConfig, Strategy, TableFormat, BUDGET_ENV,
    DEFAULT_BUDGET,
};
use crate::oracle::{oracle_exponents, ExponentMultiset, OracleOutcome};

#[derive(Debug, Parser)]
#[command(
    name = "multiarr",
    version,
    about = "Exact computations on hyperplane multiarrangements"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exponents of D(A, nu) from the graded oracle.
    Exps {
        input: String,
        #[arg(long)]
        degree_cap: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Free, not free or unknown, with a basis when free.
    Free {
        input: String,
        #[arg(long)]
        degree_cap: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Restriction to a hyperplane with its Euler multiplicity.
    Restrict {
        input: String,
        /// Index of H0 in the input's form list.
        #[arg(long)]
        hyperplane: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Original, deletion and restriction with respect to a hyperplane.
    Triple {
        input: String,
        #[arg(long)]
        hyperplane: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search for an inductive-freeness certificate.
    Induce {
        input: String,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Induction table of a stored certificate, or of a fresh search.
    Table {
        input: String,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build catalog entries and compare computed with expected exponents.
    /// `grid` expands to every entry of the reproduction grid.
    Catalog {
        #[arg(required = true)]
        keys: Vec<String>,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Re-check a stored certificate.
    Verify {
        input: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// markdown, tsv or json.
    #[arg(long, value_parser = parse_format)]
    pub format: Option<TableFormat>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// paper-order, greedy or exhaustive.
    #[arg(long, default_value = "paper-order", value_parser = parse_strategy)]
    pub strategy: Strategy,
    /// Maximum number of attempted addition steps.
    #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Do not reuse plans across coordinate relabelings.
    #[arg(long)]
    pub no_perm_canon: bool,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            strategy: self.strategy,
            budget: self.budget,
            perm_canon: !self.no_perm_canon,
        }
    }
}

fn parse_format(s: &str) -> Result<TableFormat> {
    s.parse()
}

fn parse_strategy(s: &str) -> Result<Strategy> {
    s.parse()
}

/// JSON output of `restrict`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictReport {
    pub distinguished: LinearForm,
    pub restricted: Multiarrangement,
    pub restricted_coords: Vec<usize>,
    pub provenance: Vec<Provenance>,
}

/// JSON output of `catalog`, one per key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReportJson {
    pub key: String,
    pub expected: ExponentMultiset,
    pub computed: Option<ExponentMultiset>,
    pub pass: bool,
    pub certificate: Option<Arc<InductionCertificate>>,
}

/// JSON output of `verify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub exponents: Option<ExponentMultiset>,
    pub error: Option<String>,
}

/// Result of one invocation: exit code and what to print on stdout / stderr.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli.command),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } | Error::DegreeCapExhausted { .. } => 1,
        Error::Inconsistent(_) | Error::Verification(_) | Error::PatternMismatch(_) => 1,
        _ => 2,
    }
}

pub fn execute(command: &Command) -> Outcome {
    let mut out = String::new();
    match dispatch(command, &mut out) {
        Ok(code) => Outcome {
            code,
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => {
            let code = exit_code(&e);
            let msg = match e {
                Error::BudgetExceeded { .. } | Error::DegreeCapExhausted { .. } => format!("inconclusive: {e}\n"),
                _ => format!("error: {e}\n"),
            };
            Outcome {
                code,
                stdout: out,
                stderr: msg,
            }
        }
    }
}

fn read_source(src: &str) -> Result<String> {
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(src)?)
    }
}

fn is_catalog_key(src: &str) -> bool {
    src.starts_with("braid:") || src.starts_with("mixed:")
}

/// Inline JSON, a catalog key, `-` for stdin, or a file path.
pub fn load_arrangement(src: &str) -> Result<Multiarrangement> {
    let src = src.trim();
    if is_catalog_key(src) {
        return src.parse::<CatalogEntry>()?.build();
    }
    let text = if src.starts_with('{') {
        src.to_string()
    } else {
        read_source(src)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn load_text(src: &str) -> Result<String> {
    let src = src.trim();
    if src.starts_with('{') {
        Ok(src.to_string())
    } else {
        read_source(src)
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn dispatch(command: &Command, out: &mut String) -> Result<i32> {
    match command {
        Command::Exps {
            input,
            degree_cap,
            output,
        } => {
            let m = load_arrangement(input)?;
            let outcome = oracle_exponents(&m, *degree_cap)?;
            let exps = outcome.exponents().cloned();
            match output.format {
                Some(TableFormat::Json) => out.push_str(&json(&exps)?),
                _ => match &exps {
                    Some(e) => writeln!(out, "{e}").unwrap(),
                    None => writeln!(out, "not free").unwrap(),
                },
            }
            Ok(if exps.is_some() { 0 } else { 1 })
        }
        Command::Free {
            input,
            degree_cap,
            output,
        } => {
            let m = load_arrangement(input)?;
            let outcome = match oracle_exponents(&m, *degree_cap) {
                Err(Error::DegreeCapExhausted { cap, needed }) => {
                    if output.format == Some(TableFormat::Json) {
                        out.push_str("{\"status\": \"unknown\"}\n");
                    } else {
                        writeln!(
                            out,
                            "unknown: degree cap {cap} reached before {needed} generators were found"
                        )
                        .unwrap();
                    }
                    return Ok(1);
                }
                r => r?,
            };
            if output.format == Some(TableFormat::Json) {
                out.push_str(&json(&outcome)?);
                return Ok(0);
            }
            match &outcome {
                OracleOutcome::Free(w) => {
                    writeln!(out, "free").unwrap();
                    writeln!(out, "exponents {}", w.exponents).unwrap();
                    writeln!(out, "saito constant {}", w.saito_constant).unwrap();
                    for (i, g) in w.generators.iter().enumerate() {
                        writeln!(out, "theta{} = {g}", i + 1).unwrap();
                    }
                }
                OracleOutcome::NotFree(c) => {
                    writeln!(out, "not free").unwrap();
                    writeln!(
                        out,
                        "independent generators of degrees {:?} exceed |nu| = {}",
                        c.degrees,
                        m.order()
                    )
                    .unwrap();
                }
            }
            Ok(0)
        }
        Command::Restrict {
            input,
            hyperplane,
            output,
        } => {
            let m = load_arrangement(input)?;
            let r = restriction(&m, *hyperplane)?;
            let report = RestrictReport {
                distinguished: m.forms()[*hyperplane].clone(),
                restricted: r.multiarrangement.clone(),
                restricted_coords: r.coords.clone(),
                provenance: r.provenance(),
            };
            match output.format {
                Some(TableFormat::Json) => out.push_str(&json(&report)?),
                Some(TableFormat::Tsv) => {
                    writeln!(out, "hyperplane\tmultiplicity\tflat\tk\tnu0\tnu1\t|nu_X|\trule").unwrap();
                    for p in &report.provenance {
                        writeln!(out, "{}", provenance_cells(p, &r.coords).join("\t")).unwrap();
                    }
                }
                Some(TableFormat::Markdown) | None => {
                    writeln!(
                        out,
                        "restriction to {}: {}",
                        report.distinguished,
                        coords_label(&r.coords)
                    )
                    .unwrap();
                    writeln!(out, "{}", report.restricted).unwrap();
                    writeln!(out).unwrap();
                    writeln!(
                        out,
                        "| hyperplane | multiplicity | flat | k | nu0 | nu1 | \\|nu_X\\| | rule |"
                    )
                    .unwrap();
                    writeln!(out, "|---|---|---|---|---|---|---|---|").unwrap();
                    for p in &report.provenance {
                        writeln!(out, "| {} |", provenance_cells(p, &r.coords).join(" | ")).unwrap();
                    }
                }
            }
            Ok(0)
        }
        Command::Triple {
            input,
            hyperplane,
            output,
        } => {
            let m = load_arrangement(input)?;
            let t = triple(&m, *hyperplane)?;
            match output.format {
                Some(TableFormat::Json) | None => out.push_str(&json(&t)?),
                Some(_) => {
                    writeln!(out, "original     {}", t.original).unwrap();
                    writeln!(out, "deletion     {}", t.deleted).unwrap();
                    writeln!(
                        out,
                        "restriction  {} on {}",
                        t.restricted.multiarrangement,
                        coords_label(&t.restricted.coords)
                    )
                    .unwrap();
                }
            }
            Ok(0)
        }
        Command::Induce {
            input,
            search: s,
            output,
        } => {
            let m = load_arrangement(input)?;
            let config = s.config();
            match search(&m, &config)? {
                Some(cert) => {
                    let exps = verify(&cert)?;
                    match output.format {
                        Some(TableFormat::Json) => out.push_str(&json(&*cert)?),
                        f => {
                            writeln!(out, "inductively free, exponents {exps}").unwrap();
                            writeln!(out, "base: {}, {} steps", cert.base.name(), cert.steps.len()).unwrap();
                            writeln!(out).unwrap();
                            out.push_str(&emit_table(&cert, f.unwrap_or(TableFormat::Markdown))?);
                        }
                    }
                    Ok(0)
                }
                None => {
                    writeln!(out, "no certificate found with strategy {}", config.strategy).unwrap();
                    Ok(1)
                }
            }
        }
        Command::Table {
            input,
            search: s,
            output,
        } => {
            let cert = if is_catalog_key(input.trim()) {
                None
            } else {
                let text = load_text(input)?;
                match InductionCertificate::from_json(&text) {
                    Ok(c) => Some(Arc::new(c)),
                    Err(_) => {
                        let m: Multiarrangement = serde_json::from_str(&text)?;
                        return certify_and_tabulate(&m, s, output, out);
                    }
                }
            };
            let cert = match cert {
                Some(c) => c,
                None => return certify_and_tabulate(&load_arrangement(input)?, s, output, out),
            };
            verify(&cert)?;
            out.push_str(&emit_table(&cert, output.format.unwrap_or(TableFormat::Markdown))?);
            Ok(0)
        }
        Command::Catalog {
            keys,
            search: s,
            output,
        } => {
            let entries = expand_keys(keys)?;
            let config = s.config();
            let mut all_pass = true;
            let mut reports = Vec::new();
            for entry in &entries {
                let report = run_catalog(entry, &config)?;
                all_pass &= report.passed();
                let verdict = if report.passed() { "PASS" } else { "FAIL" };
                let computed = report
                    .computed
                    .as_ref()
                    .map_or_else(|| "none".to_string(), |e| e.to_string());
                match output.format {
                    Some(TableFormat::Json) => reports.push(CatalogReportJson {
                        key: entry.to_string(),
                        expected: report.expected.clone(),
                        computed: report.computed.clone(),
                        pass: report.passed(),
                        certificate: report.certificate.clone(),
                    }),
                    Some(TableFormat::Tsv) => {
                        writeln!(out, "{entry}\t{}\t{computed}\t{verdict}", report.expected).unwrap();
                    }
                    Some(TableFormat::Markdown) | None => {
                        writeln!(out, "## {entry}").unwrap();
                        writeln!(out).unwrap();
                        if entries.len() == 1 {
                            if let Some(c) = &report.certificate {
                                out.push_str(&emit_table(c, TableFormat::Markdown)?);
                                writeln!(out).unwrap();
                            }
                        }
                        writeln!(out, "expected {}", report.expected).unwrap();
                        writeln!(out, "computed {computed}").unwrap();
                        writeln!(out, "{verdict}").unwrap();
                        writeln!(out).unwrap();
                    }
                }
            }
            if output.format == Some(TableFormat::Json) {
                out.push_str(&json(&reports)?);
            }
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Verify { input, output } => {
            let cert = InductionCertificate::from_json(&load_text(input)?)?;
            let result = verify(&cert);
            let report = VerifyReport {
                valid: result.is_ok(),
                exponents: result.as_ref().ok().cloned(),
                error: result.as_ref().err().map(|e| e.to_string()),
            };
            match output.format {
                Some(TableFormat::Json) => out.push_str(&json(&report)?),
                _ => match &result {
                    Ok(e) => {
                        writeln!(out, "valid").unwrap();
                        writeln!(out, "exponents {e}").unwrap();
                        writeln!(out, "{} rows", table_rows(&cert).len()).unwrap();
                    }
                    Err(e) => writeln!(out, "invalid: {e}").unwrap(),
                },
            }
            Ok(if report.valid { 0 } else { 1 })
        }
    }
}

fn certify_and_tabulate(m: &Multiarrangement, s: &SearchArgs, output: &OutputArgs, out: &mut String) -> Result<i32> {
    let Some(cert) = search(m, &s.config())? else {
        writeln!(out, "no certificate found with strategy {}", s.strategy).unwrap();
        return Ok(1);
    };
    verify(&cert)?;
    out.push_str(&emit_table(&cert, output.format.unwrap_or(TableFormat::Markdown))?);
    Ok(0)
}

fn coords_label(coords: &[usize]) -> String {
    let names: Vec<String> = coords.iter().map(|c| format!("x{}", c + 1)).collect();
    format!("coordinates ({})", names.join(", "))
}

fn provenance_cells(p: &Provenance, coords: &[usize]) -> Vec<String> {
    let flat: Vec<String> = p.flat.iter().map(|f| f.to_string()).collect();
    vec![
        relabel(&p.hyperplane, coords),
        p.multiplicity.to_string(),
        flat.join(", "),
        p.euler.k.to_string(),
        p.euler.nu0.to_string(),
        p.euler.nu1.to_string(),
        p.euler.order.to_string(),
        p.euler.path.to_string(),
    ]
}

/// Prints a restricted form in the original coordinate names.
fn relabel(form: &LinearForm, coords: &[usize]) -> String {
    let dim = coords.iter().max().map_or(0, |&c| c + 1);
    form.embedded(coords, dim).to_string()
}

/// Keys of the reproduction grid.
pub fn grid_entries() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for ell in 3..=5 {
        let top = if ell == 3 { 6 } else { 4 };
        for m in 1..=top {
            out.push(CatalogEntry::constant(ell, m));
        }
    }
    for ell in 3..=4 {
        for m in 1..=3 {
            for q in 1..=3 {
                if ell == 3 || m + q <= 4 {
                    out.push(CatalogEntry::mixed(ell, m, q));
                }
            }
        }
    }
    out
}

fn expand_keys(keys: &[String]) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for k in keys {
        if k == "grid" {
            out.extend(grid_entries());
        } else {
            out.push(k.parse()?);
        }
    }
    Ok(out)
}
