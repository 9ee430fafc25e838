//! Command-line front end: runs obstruction pipelines on input documents
//! and on the built-in catalog, printing verdict tables and JSON reports.

mod commands;
pub mod render;

pub use commands::{
    catalog_command, der_command, load_document, run_command, run_modules, verdict_rows, CatalogOptions, CliError,
    Status,
};
