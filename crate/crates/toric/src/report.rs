//! Database scanning and report serialization.
//!
//! Databases are JSON lines: one fan object per line, with an optional
//! "name" field next to the fan data. Reports are plain JSON with a fixed
//! field layout, big values checked into 64-bit range and rationals written
//! as "p/q" strings, so identical input bytes always produce identical
//! report bytes regardless of parallelism.

use crate::error::{Error, Result};
use crate::fan::{Fan, FanJson};
use crate::fano::{self, FanoReport, SurfacePairing};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DbLine {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(flatten)]
    fan: FanJson,
}

/// One parsed database entry; `line` is 1-based.
pub struct DbEntry {
    pub line: usize,
    pub name: Option<String>,
    pub fan: Fan,
}

/// A line that failed to parse or validate.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ScanError {
    pub line: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub error: String,
}

/// Splits a JSON-lines database into validated fans and per-line errors.
/// Blank lines are skipped; nothing is fatal.
pub fn parse_database(input: &str) -> (Vec<DbEntry>, Vec<ScanError>) {
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let lineno = idx + 1;
        match serde_json::from_str::<DbLine>(line) {
            Err(e) => errors.push(ScanError {
                line: lineno,
                name: None,
                error: format!("line {lineno}: {e}"),
            }),
            Ok(raw) => match Fan::from_parts(raw.fan) {
                Ok(fan) => entries.push(DbEntry { line: lineno, name: raw.name, fan }),
                Err(e) => errors.push(ScanError {
                    line: lineno,
                    name: raw.name,
                    error: format!("line {lineno}: {e}"),
                }),
            },
        }
    }
    (entries, errors)
}

/// Serializes one database line; inverse of `parse_database` line-wise.
pub fn database_line(name: Option<&str>, fan: &Fan) -> Result<String> {
    let line = DbLine { name: name.map(str::to_string), fan: fan.to_json()? };
    serde_json::to_string(&line).map_err(|e| Error::Json { detail: e.to_string() })
}

/// Checks a big integer into the 64-bit wire range.
pub fn to_i64(value: &BigInt) -> Result<i64> {
    i64::try_from(value).map_err(|_| Error::Overflow { value: value.to_string() })
}

/// Integer-valued rationals print as plain integers, others as "p/q".
pub fn rational_string(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WallWitnessJson {
    pub wall: Vec<usize>,
    pub degree: i64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PairingJson {
    pub cone: Vec<usize>,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<i64>,
    pub pairing: String,
}

/// JSON layout of one fan's analysis inside a scan report.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FanRecordJson {
    pub index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub n_rays: usize,
    pub picard: usize,
    pub euler: i64,
    pub c1_top: i64,
    pub is_fano: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fano_witness: Option<WallWitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma_value: Option<i64>,
    pub lemma_pass: bool,
    pub surfaces_swept: bool,
    pub pairings: Vec<PairingJson>,
    pub is_two_fano: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_fano_witness: Option<PairingJson>,
}

fn pairing_json(p: &SurfacePairing) -> Result<PairingJson> {
    Ok(PairingJson {
        cone: p.cone.to_vec(),
        kind: p.kind.clone(),
        alpha: p.alpha.as_ref().map(to_i64).transpose()?,
        pairing: rational_string(&p.pairing),
    })
}

pub fn fano_report_json(
    index: usize,
    name: Option<&str>,
    report: &FanoReport,
) -> Result<FanRecordJson> {
    Ok(FanRecordJson {
        index,
        name: name.map(str::to_string),
        dim: report.dim,
        n_rays: report.n_rays,
        picard: report.picard,
        euler: to_i64(&report.euler)?,
        c1_top: to_i64(&report.c1_top)?,
        is_fano: report.is_fano,
        fano_witness: report
            .fano_witness
            .as_ref()
            .map(|w| Ok(WallWitnessJson { wall: w.wall.to_vec(), degree: to_i64(&w.degree)? }))
            .transpose()?,
        lemma_value: report.lemma_value.as_ref().map(to_i64).transpose()?,
        lemma_pass: report.lemma_pass,
        surfaces_swept: report.surfaces_swept,
        pairings: report.pairings.iter().map(pairing_json).collect::<Result<_>>()?,
        is_two_fano: report.is_two_fano,
        two_fano_witness: report.two_fano_witness.as_ref().map(pairing_json).transpose()?,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Aggregate {
    pub total: usize,
    pub fano: usize,
    pub lemma_pass: usize,
    pub two_fano: usize,
    pub errors: usize,
}

/// The whole scan: provenance, per-fan records in input order, per-line
/// errors, and the aggregate fold of the records.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ScanReport {
    pub version: String,
    pub input_digest: String,
    pub assumptions: Vec<String>,
    pub aggregate: Aggregate,
    pub fans: Vec<FanRecordJson>,
    pub errors: Vec<ScanError>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ScanOptions {
    /// Skip the surface sweep for fans the Fano test or degree filter
    /// already rules out.
    pub fast: bool,
    /// Worker threads; None uses the global default pool.
    pub jobs: Option<usize>,
}

const ASSUMPTIONS: [&str; 3] = [
    "ch2 nefness is decided against torus-invariant surfaces",
    "ampleness of -K is decided against torus-invariant curves",
    "projectivity of input fans is not checked",
];

/// Scans a JSON-lines database. Per-fan analysis runs on a worker pool;
/// results keep input order, and the report contains nothing dependent on
/// scheduling, so output bytes are identical for any job count.
pub fn scan_database(input: &str, opts: ScanOptions) -> ScanReport {
    let digest = hex_digest(input.as_bytes());
    let (entries, mut errors) = parse_database(input);

    let analyze = |entry: &DbEntry| -> (usize, Option<String>, Result<FanRecordJson>) {
        let record = fano::analyze_fan(&entry.fan, opts.fast)
            .and_then(|report| fano_report_json(entry.line, entry.name.as_deref(), &report));
        (entry.line, entry.name.clone(), record)
    };
    let results: Vec<_> = match opts.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .expect("worker pool construction cannot fail for positive thread counts");
            pool.install(|| entries.par_iter().map(analyze).collect())
        }
        None => entries.par_iter().map(analyze).collect(),
    };

    let mut fans = Vec::new();
    for (line, name, result) in results {
        match result {
            Ok(record) => fans.push(record),
            Err(e) => errors.push(ScanError { line, name, error: format!("line {line}: {e}") }),
        }
    }
    errors.sort_by_key(|e| e.line);

    let aggregate = Aggregate {
        total: fans.len() + errors.len(),
        fano: fans.iter().filter(|f| f.is_fano).count(),
        lemma_pass: fans.iter().filter(|f| f.lemma_pass).count(),
        two_fano: fans.iter().filter(|f| f.is_two_fano).count(),
        errors: errors.len(),
    };
    ScanReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        input_digest: digest,
        assumptions: ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
        aggregate,
        fans,
        errors,
    }
}

pub fn hex_digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("{:x}", hasher.finalize())
}
