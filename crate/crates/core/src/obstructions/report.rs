use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use super::classes::{atiyah_class, ks_kernel, KsKernel};
use super::connection::{check_connection, lclass_with, Connection};
use super::der::{der, DerModule};
use super::ext1::ObstructionResult;
use crate::error::{AlgebraError, Result};
use crate::modules::PresentedModule;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Der,
    AClass,
    KsKernel,
    LClass,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Der => "der",
            Stage::AClass => "aclass",
            Stage::KsKernel => "kskernel",
            Stage::LClass => "lclass",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stage {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "der" => Ok(Stage::Der),
            "aclass" => Ok(Stage::AClass),
            "kskernel" => Ok(Stage::KsKernel),
            "lclass" => Ok(Stage::LClass),
            other => Err(AlgebraError::InvalidParameters(format!(
                "unknown stage `{other}` (expected der, aclass, kskernel, lclass)"
            ))),
        }
    }
}

/// Which stages to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stages {
    pub der: bool,
    pub aclass: bool,
    pub kskernel: bool,
    pub lclass: bool,
}

impl Stages {
    pub fn all() -> Self {
        Stages { der: true, aclass: true, kskernel: true, lclass: true }
    }

    /// The three table columns, without the standalone `Der` listing.
    pub fn table() -> Self {
        Stages { der: false, ..Self::all() }
    }

    pub fn none() -> Self {
        Stages { der: false, aclass: false, kskernel: false, lclass: false }
    }

    pub fn with(mut self, s: Stage) -> Self {
        match s {
            Stage::Der => self.der = true,
            Stage::AClass => self.aclass = true,
            Stage::KsKernel => self.kskernel = true,
            Stage::LClass => self.lclass = true,
        }
        self
    }

    /// Parses a comma-separated list such as `aclass,lclass`.
    pub fn parse_list(s: &str) -> Result<Self> {
        s.split(',').filter(|t| !t.trim().is_empty()).try_fold(Self::none(), |acc, t| Ok(acc.with(t.parse()?)))
    }
}

impl Default for Stages {
    fn default() -> Self {
        Self::table()
    }
}

/// Everything computed for one module.
#[derive(Debug)]
pub struct ObstructionReport {
    pub module: String,
    pub der: Option<DerModule>,
    pub aclass: Option<ObstructionResult>,
    pub ks: Option<KsKernel>,
    pub lclass: Option<ObstructionResult>,
    pub connection: Option<Connection>,
    pub timings: Vec<(Stage, Duration)>,
}

impl ObstructionReport {
    pub fn ks_proper(&self) -> Option<bool> {
        self.ks.as_ref().map(|k| k.proper)
    }

    /// `(AClass, KSKernel, LClass)` with 1 meaning "obstruction present".
    pub fn verdicts(&self) -> (Option<u8>, Option<u8>, Option<u8>) {
        (
            self.aclass.as_ref().map(|r| r.verdict()),
            self.ks_proper().map(u8::from),
            self.lclass.as_ref().map(|r| r.verdict()),
        )
    }

    pub fn timing(&self, s: Stage) -> Option<Duration> {
        self.timings.iter().find(|(t, _)| *t == s).map(|(_, d)| *d)
    }
}

fn timed<T>(timings: &mut Vec<(Stage, Duration)>, s: Stage, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let start = Instant::now();
    let out = f()?;
    timings.push((s, start.elapsed()));
    Ok(out)
}

/// Runs the requested stages. `LClass` implies computing the
/// Kodaira-Spencer kernel; an extracted connection is always verified.
pub fn report(name: &str, m: &PresentedModule, stages: Stages) -> Result<ObstructionReport> {
    let mut timings = Vec::new();
    let der_mod = if stages.der { Some(timed(&mut timings, Stage::Der, || der(m.ring()))?) } else { None };
    let aclass = if stages.aclass { Some(timed(&mut timings, Stage::AClass, || atiyah_class(m))?) } else { None };
    let ks = if stages.kskernel || stages.lclass {
        Some(timed(&mut timings, Stage::KsKernel, || ks_kernel(m))?)
    } else {
        None
    };
    let (lclass, connection) = match (&ks, stages.lclass) {
        (Some(k), true) => {
            let out = timed(&mut timings, Stage::LClass, || lclass_with(m, k))?;
            if let Some(c) = &out.connection {
                check_connection(c).map_err(|d| {
                    AlgebraError::InternalInconsistency(format!("extracted connection fails verification: {d}"))
                })?;
            }
            (Some(out.result), out.connection)
        }
        _ => (None, None),
    };
    Ok(ObstructionReport { module: name.to_string(), der: der_mod, aclass, ks, lclass, connection, timings })
}

/// All three obstructions.
pub fn full_report(name: &str, m: &PresentedModule) -> Result<ObstructionReport> {
    report(name, m, Stages::table())
}
