//! Table and JSON views of obstruction reports. Both are derived from the
//! same `ObstructionReport`, so they cannot disagree.

use std::collections::BTreeMap;

use connobs_core::obstructions::{ObstructionReport, Stage};
use connobs_core::{PolyMatrix, Ring};
use serde::Serialize;

pub const TABLE_HEADER: &str = "Module | AClass | KSKernel | LClass | Time (ms)";

fn cell(v: Option<u8>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn total_ms(r: &ObstructionReport) -> f64 {
    r.timings.iter().map(|(_, d)| d.as_secs_f64() * 1e3).sum()
}

/// `name | a | k | l`, with `-` for stages that were not run.
pub fn verdict_row(r: &ObstructionReport) -> String {
    let (a, k, l) = r.verdicts();
    format!("{} | {} | {} | {}", r.module, cell(a), cell(k), cell(l))
}

pub fn table_row(r: &ObstructionReport) -> String {
    format!("{} | {:.1}", verdict_row(r), total_ms(r))
}

pub fn render_table(reports: &[ObstructionReport]) -> String {
    let mut s = String::from(TABLE_HEADER);
    s.push('\n');
    for r in reports {
        s.push_str(&table_row(r));
        s.push('\n');
    }
    s
}

#[derive(Debug, Serialize)]
pub struct RingJson {
    pub vars: Vec<String>,
    pub order: String,
    pub ideal: Vec<String>,
}

impl RingJson {
    pub fn new(ring: &Ring) -> Self {
        RingJson {
            vars: ring.vars().to_vec(),
            order: ring.order().name(),
            ideal: ring.ideal_gens().iter().map(|p| ring.fmt_poly(p)).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AClassJson {
    pub vanishes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Serialize)]
pub struct KsKernelJson {
    pub proper: bool,
    pub generators: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct LClassJson {
    pub vanishes: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ConnectionJson {
    pub generators: Vec<String>,
    pub operators: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Serialize)]
pub struct DerJson {
    pub generators: Vec<String>,
    pub relations: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub module: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub der: Option<DerJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aclass: Option<AClassJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kskernel: Option<KsKernelJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lclass: Option<LClassJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection: Option<ConnectionJson>,
    pub timings_ms: BTreeMap<String, f64>,
}

#[derive(Debug, Serialize)]
pub struct DocumentJson {
    pub ring: RingJson,
    pub reports: Vec<ReportJson>,
}

pub fn matrix_json(m: &PolyMatrix) -> Vec<Vec<String>> {
    let r = m.ring();
    (0..m.nrows()).map(|i| m.row(i).iter().map(|p| r.fmt_poly(p)).collect()).collect()
}

pub fn report_json(r: &ObstructionReport) -> ReportJson {
    let der = r.der.as_ref().map(|d| DerJson {
        generators: d.generators().iter().map(|g| g.to_string()).collect(),
        relations: matrix_json(d.presentation()),
    });
    let aclass = r.aclass.as_ref().map(|a| AClassJson {
        vanishes: a.vanishes,
        certificate: a.certificate.as_ref().map(matrix_json),
    });
    let kskernel = r.ks.as_ref().map(|k| KsKernelJson {
        proper: k.proper,
        generators: k.v.generators().iter().map(|g| g.to_string()).collect(),
    });
    let lclass = r.lclass.as_ref().map(|l| LClassJson { vanishes: l.vanishes, note: l.note.clone() });
    let connection = r.connection.as_ref().map(|c| ConnectionJson {
        generators: c.vfield_gens.generators().iter().map(|g| g.to_string()).collect(),
        operators: c.operators.iter().map(matrix_json).collect(),
    });
    let timings_ms = [Stage::Der, Stage::AClass, Stage::KsKernel, Stage::LClass]
        .into_iter()
        .filter_map(|s| r.timing(s).map(|d| (s.name().to_string(), d.as_secs_f64() * 1e3)))
        .collect();
    ReportJson { module: r.module.clone(), der, aclass, kskernel, lclass, connection, timings_ms }
}

pub fn document_json(ring: &Ring, reports: &[ObstructionReport]) -> DocumentJson {
    DocumentJson { ring: RingJson::new(ring), reports: reports.iter().map(report_json).collect() }
}
