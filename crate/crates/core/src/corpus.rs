//! Bundled regression corpus: one JSON file per example with its expected
//! structure.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::center::center_basis;
use crate::decompose::{classify, decompose_form, lds_witness, DecomposeError, ExtendPolicy};
use crate::jacobian::is_reconstructible;
use crate::multipoly::parse_form;
use crate::symtensor::SymTensor;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed corpus file {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expect {
    pub essential_rank: usize,
    pub center_dim: usize,
    pub classification: String,
    pub summand_count_q: usize,
    pub summand_count_split: Option<usize>,
    pub reconstructible: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub n: usize,
    pub form: String,
    pub expect: Expect,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryResult {
    pub name: String,
    pub passed: bool,
    pub mismatches: Vec<String>,
    pub elapsed_ms: u64,
}

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// All `*.json` entries of `dir`, sorted by name.
pub fn load_dir(dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let io = |source| CorpusError::Io { path: dir.to_path_buf(), source };
    let mut out = Vec::new();
    for item in fs::read_dir(dir).map_err(io)? {
        let path = item.map_err(io)?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let text = fs::read_to_string(&path).map_err(|source| CorpusError::Io { path: path.clone(), source })?;
        let entry = serde_json::from_str(&text).map_err(|source| CorpusError::Json { path: path.clone(), source })?;
        out.push(entry);
    }
    out.sort_by(|a: &CorpusEntry, b| a.name.cmp(&b.name));
    Ok(out)
}

pub fn load_default() -> Result<Vec<CorpusEntry>, CorpusError> {
    load_dir(&default_dir())
}

fn check<T: PartialEq + std::fmt::Debug>(out: &mut Vec<String>, what: &str, expected: &T, got: &T) {
    if expected != got {
        out.push(format!("{what}: expected {expected:?}, got {got:?}"));
    }
}

/// Run the full pipeline on one entry and compare with its expectations.
pub fn run_entry(e: &CorpusEntry) -> EntryResult {
    let start = Instant::now();
    let mismatches = match evaluate(e) {
        Ok(m) => m,
        Err(msg) => vec![msg],
    };
    EntryResult {
        name: e.name.clone(),
        passed: mismatches.is_empty(),
        mismatches,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn evaluate(e: &CorpusEntry) -> Result<Vec<String>, String> {
    let f = parse_form(&e.form, e.n).map_err(|err| format!("parse error: {err}"))?;
    let mut out = Vec::new();
    let t = SymTensor::from_form(&f);
    let (_, reduced) = t.reduce_nondegenerate().map_err(|err| err.to_string())?;
    check(&mut out, "essential_rank", &e.expect.essential_rank, &reduced.n());
    let c = classify(&f).map_err(|err| err.to_string())?;
    check(&mut out, "center_dim", &e.expect.center_dim, &c.center_dim);
    check(&mut out, "classification", &e.expect.classification.as_str(), &c.tag.name());
    let q = decompose_form(&f, ExtendPolicy::Never).map_err(|err| err.to_string())?;
    check(&mut out, "summand_count_q", &e.expect.summand_count_q, &q.summands.len());
    let split = match decompose_form(&f, ExtendPolicy::Auto) {
        Ok(d) => Some(d.summands.len()),
        Err(DecomposeError::TowerRequired { .. }) => None,
        Err(err) => return Err(err.to_string()),
    };
    check(&mut out, "summand_count_split", &e.expect.summand_count_split, &split);
    let z = center_basis(&reduced).map_err(|err| err.to_string())?;
    if !z.is_semisimple {
        match lds_witness(&f) {
            Ok(w) if w.verified => {}
            Ok(_) => out.push("LDS witness does not verify".into()),
            Err(err) => out.push(format!("LDS witness: {err}")),
        }
    }
    let rec = if reduced.n() == f.n() {
        Some(is_reconstructible(&f).map_err(|err| err.to_string())?.reconstructible)
    } else {
        None
    };
    check(&mut out, "reconstructible", &e.expect.reconstructible, &rec);
    Ok(out)
}

/// Entries named `only` (all when `None`), run in parallel and
/// returned in name order.
pub fn run(entries: &[CorpusEntry], only: Option<&str>) -> Vec<EntryResult> {
    let picked: Vec<&CorpusEntry> = entries.iter().filter(|e| only.map_or(true, |o| e.name == o)).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = picked.iter().map(|e| s.spawn(move || run_entry(e))).collect();
        handles.into_iter().map(|h| h.join().expect("corpus worker panicked")).collect()
    })
}
