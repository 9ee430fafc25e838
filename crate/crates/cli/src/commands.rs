use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use connobs_core::fixtures::{builtin_catalog, select, CatalogEntry};
use connobs_core::input::{parse_input, InputDocument};
use connobs_core::modules::PresentedModule;
use connobs_core::obstructions::{der, full_report, report, ObstructionReport, Stages};
use connobs_core::AlgebraError;
use rayon::prelude::*;

use crate::render::{document_json, matrix_json, render_table, table_row, verdict_row, TABLE_HEADER};

/// Process exit status; larger values win when combining.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass = 0,
    Mismatch = 1,
    InputError = 2,
    Internal = 3,
}

impl Status {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Algebra { module: Option<String>, error: AlgebraError },
    Io(String),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Algebra { error: AlgebraError::InternalInconsistency(_), .. } => Status::Internal,
            _ => Status::InputError,
        }
    }

    fn algebra(module: &str, error: AlgebraError) -> Self {
        CliError::Algebra { module: Some(module.to_string()), error }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Io(m) => f.write_str(m),
            CliError::Algebra { module: Some(m), error } => write!(f, "module `{m}`: {error}"),
            CliError::Algebra { module: None, error } => write!(f, "{error}"),
        }
    }
}

impl std::error::Error for CliError {}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io(format!("write failed: {e}"))
}

/// Reads an input file; a path that does not exist but names a builtin
/// catalog entry loads that entry's document instead.
pub fn load_document(path: &Path) -> Result<InputDocument, CliError> {
    if !path.exists() {
        if let Some(id) = path.to_str() {
            let cat = builtin_catalog().map_err(|error| CliError::Algebra { module: None, error })?;
            if let Some(e) = cat.iter().find(|e| e.id == id) {
                return Ok(e.document());
            }
        }
    }
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_input(&text).map_err(|e| CliError::Input(format!("{}:{e}", path.display())))
}

fn build_modules(doc: &InputDocument) -> Result<Vec<(String, PresentedModule)>, CliError> {
    doc.build_modules().map_err(|error| CliError::Algebra { module: None, error })
}

/// Runs the stages on every module in parallel; results keep declaration
/// order.
pub fn run_modules(
    modules: &[(String, PresentedModule)],
    stages: Stages,
) -> Result<Vec<ObstructionReport>, CliError> {
    modules
        .par_iter()
        .map(|(name, m)| report(name, m, stages).map_err(|e| CliError::algebra(name, e)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    fs::write(path, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// `connobs run`: stages come from the flag, then the document, then the
/// table default; the JSON path likewise.
pub fn run_command(
    path: &Path,
    stages: Option<Stages>,
    json: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let doc = load_document(path)?;
    let stages = stages.or(doc.stages).unwrap_or_default();
    let modules = build_modules(&doc)?;
    let reports = run_modules(&modules, stages)?;
    out.write_all(render_table(&reports).as_bytes()).map_err(io_err)?;
    if let Some(p) = json.or_else(|| doc.output.as_ref().map(PathBuf::from)) {
        write_json(&p, &document_json(&doc.ring, &reports))?;
    }
    Ok(Status::Pass)
}

/// `connobs der`: generators of `Der_k(A)` and their relations.
pub fn der_command(path: &Path, out: &mut dyn Write) -> Result<Status, CliError> {
    let doc = load_document(path)?;
    let d = der(&doc.ring).map_err(|error| CliError::Algebra { module: None, error })?;
    let mut s = format!("Der_k(A): {} generators\n", d.len());
    for (i, g) in d.generators().iter().enumerate() {
        s.push_str(&format!("  D{} = {g}\n", i + 1));
    }
    let rel = matrix_json(d.presentation());
    if d.presentation().ncols() > 0 {
        s.push_str("relations (columns):\n");
        for row in rel {
            s.push_str(&format!("  [{}]\n", row.join(", ")));
        }
    } else {
        s.push_str("relations: none (free)\n");
    }
    out.write_all(s.as_bytes()).map_err(io_err)?;
    Ok(Status::Pass)
}

fn selection<'a>(cat: &'a [CatalogEntry], pattern: Option<&str>) -> Result<Vec<&'a CatalogEntry>, CliError> {
    let pattern = pattern.unwrap_or("*");
    let picked = select(cat, pattern);
    if picked.is_empty() {
        let ids: Vec<&str> = cat.iter().map(|e| e.id.as_str()).collect();
        return Err(CliError::Input(format!(
            "no catalog entry matches `{pattern}`; available ids: {}",
            ids.join(", ")
        )));
    }
    Ok(picked)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CatalogOptions {
    pub verify: bool,
    pub show: bool,
}

/// `connobs catalog`: lists entries, prints them in input syntax, or runs
/// and checks them against their expected verdicts.
pub fn catalog_command(
    pattern: Option<&str>,
    opts: CatalogOptions,
    json: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let cat = builtin_catalog().map_err(|error| CliError::Algebra { module: None, error })?;
    let picked = selection(&cat, pattern)?;
    let mut s = String::new();
    if opts.show {
        for e in &picked {
            s.push_str(&format!("// {}: {}\n{}\n", e.id, e.description, e.document().to_text()));
        }
    }
    if !opts.verify {
        if !opts.show {
            for e in &picked {
                let names: Vec<&str> = e.modules.iter().map(|m| m.name.as_str()).collect();
                s.push_str(&format!("{:<20} {:<28} modules: {}\n", e.id, e.description, names.join(", ")));
            }
        }
        out.write_all(s.as_bytes()).map_err(io_err)?;
        return Ok(Status::Pass);
    }

    let jobs: Vec<(usize, usize)> =
        picked.iter().enumerate().flat_map(|(i, e)| (0..e.modules.len()).map(move |j| (i, j))).collect();
    let results: Vec<Result<ObstructionReport, CliError>> = jobs
        .par_iter()
        .map(|&(i, j)| {
            let m = &picked[i].modules[j];
            full_report(&m.name, &m.module).map_err(|e| CliError::algebra(&format!("{}/{}", picked[i].id, m.name), e))
        })
        .collect();
    let mut status = Status::Pass;
    let mut mismatches = 0usize;
    let mut by_entry: Vec<Vec<ObstructionReport>> = picked.iter().map(|_| Vec::new()).collect();
    for (&(i, j), res) in jobs.iter().zip(results) {
        let e = picked[i];
        if by_entry[i].is_empty() && j == 0 {
            s.push_str(&format!("# {} ({})\n{TABLE_HEADER}\n", e.id, e.description));
        }
        let rep = match res {
            Ok(r) => r,
            Err(err) => {
                status = status.max(err.status());
                s.push_str(&format!("{} | error: {err}\n", e.modules[j].name));
                continue;
            }
        };
        let expected = e.modules[j].expected;
        let verdict = if expected.matches(rep.verdicts()) {
            "ok".to_string()
        } else {
            mismatches += 1;
            status = status.max(Status::Mismatch);
            let c = |v: Option<u8>| v.map_or("*".to_string(), |v| v.to_string());
            format!("MISMATCH (expected {} | {} | {})", c(expected.aclass), c(expected.kskernel), c(expected.lclass))
        };
        s.push_str(&format!("{}  {verdict}\n", table_row(&rep)));
        by_entry[i].push(rep);
    }
    s.push_str(&format!("{} modules checked, {mismatches} mismatches\n", jobs.len()));
    out.write_all(s.as_bytes()).map_err(io_err)?;
    if let Some(p) = json {
        let docs: Vec<_> = picked
            .iter()
            .zip(&by_entry)
            .map(|(e, reps)| serde_json::json!({ "id": e.id, "document": document_json(&e.ring, reps) }))
            .collect();
        write_json(&p, &docs)?;
    }
    Ok(status)
}

/// The verdict rows alone, as printed in tables.
pub fn verdict_rows(reports: &[ObstructionReport]) -> Vec<String> {
    reports.iter().map(verdict_row).collect()
}
