//! One-call analysis of a form, as printed by the command line.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::center::center_basis;
use crate::decompose::{classify, decompose_form, lds_witness, DecomposeError, ExtendPolicy};
use crate::jacobian::{is_reconstructible, JacobianError};
use crate::multipoly::Form;
use crate::symtensor::SymTensor;
use crate::unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error("{0}")]
    Input(String),
    #[error("splitting needs a tower of extensions; certificates: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))]
    TowerRequired(Vec<UniPoly>),
    #[error("{0}")]
    Internal(String),
}

impl From<DecomposeError> for AnalyzeError {
    fn from(e: DecomposeError) -> Self {
        match e {
            DecomposeError::TowerRequired { certificates } => AnalyzeError::TowerRequired(certificates),
            DecomposeError::ZeroForm | DecomposeError::DegreeTooLow(_) => AnalyzeError::Input(e.to_string()),
            other => AnalyzeError::Internal(other.to_string()),
        }
    }
}

impl From<JacobianError> for AnalyzeError {
    fn from(e: JacobianError) -> Self {
        AnalyzeError::Internal(e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub n: usize,
    pub d: usize,
    pub form: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputEcho,
    pub essential_rank: usize,
    /// Center of the nondegenerate reduction.
    pub center: Value,
    pub classification: Value,
    pub decomposition: Option<Value>,
    pub lds_witness: Option<Value>,
    pub reconstruction: Option<Value>,
    pub timing_ms: u64,
}

impl Report {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn analyze(f: &Form, extend: ExtendPolicy) -> Result<Report, AnalyzeError> {
    let start = Instant::now();
    let c = classify(f)?;
    let t = SymTensor::from_form(f);
    let (_, reduced) = t.reduce_nondegenerate().map_err(|e| AnalyzeError::Internal(e.to_string()))?;
    let z = center_basis(&reduced).map_err(|e| AnalyzeError::Internal(e.to_string()))?;
    let decomposition = decompose_form(f, extend)?;
    let witness = if z.is_semisimple { None } else { Some(lds_witness(f)?.to_json()) };
    let reconstruction = if reduced.n() == f.n() { Some(is_reconstructible(f)?.to_json()) } else { None };
    Ok(Report {
        input: InputEcho { n: f.n(), d: f.degree(), form: f.to_string() },
        essential_rank: reduced.n(),
        center: z.to_json(),
        classification: c.to_json(),
        decomposition: Some(decomposition.to_json()),
        lds_witness: witness,
        reconstruction,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

fn show(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Matrix entry: a rational string, or coordinates `c0, c1, ..` printed in `a`.
fn show_entry(v: &Value) -> String {
    let Some(coords) = v.as_array() else {
        return show(v);
    };
    let terms: Vec<String> = coords
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() != Some("0"))
        .map(|(i, c)| match i {
            0 => show(c),
            1 => format!("({})*a", show(c)),
            _ => format!("({})*a^{i}", show(c)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "form: {} (n = {}, d = {})", self.input.form, self.input.n, self.input.d)?;
        writeln!(f, "essential rank: {}", self.essential_rank)?;
        writeln!(
            f,
            "center: dimension {}, {}",
            self.center["dimension"],
            if self.center["semisimple"] == Value::Bool(true) {
                "semisimple".to_string()
            } else {
                format!("radical of dimension {}", self.center["radical_dimension"])
            }
        )?;
        writeln!(f, "classification: {}", show(&self.classification["tag"]))?;
        if let Some(c) = self.classification.get("certificate") {
            writeln!(f, "  splitting certificate: {}", show(c))?;
        }
        if let Some(d) = &self.decomposition {
            match show(&d["field"]["minpoly"]).as_str() {
                "t" => writeln!(f, "decomposition over Q:")?,
                m => writeln!(f, "decomposition over Q[t]/({m}), a = t mod ({m}):")?,
            }
            if let (Some(blocks), Some(summands)) = (d["blocks"].as_array(), d["summands"].as_array()) {
                for (b, s) in blocks.iter().zip(summands) {
                    writeln!(f, "  block {}: {}", b, show(s))?;
                }
            }
            writeln!(f, "  change of variables x = P y, P =")?;
            for row in d["matrix"].as_array().into_iter().flatten() {
                let cells: Vec<String> = row.as_array().into_iter().flatten().map(show_entry).collect();
                writeln!(f, "    [{}]", cells.join(", "))?;
            }
            writeln!(f, "  verified: {}", d["verified"])?;
        }
        if let Some(w) = &self.lds_witness {
            writeln!(f, "LDS witness: l = {}, h = {}, g = {}, verified: {}", w["l"], show(&w["h"]), show(&w["g"]), w["verified"])?;
        }
        match &self.reconstruction {
            Some(r) if r["reconstructible"] == Value::Bool(true) => writeln!(f, "reconstructible from J(f): yes")?,
            Some(r) => writeln!(f, "reconstructible from J(f): no, e.g. {}", show(&r["counterexample"]))?,
            None => writeln!(f, "reconstructible from J(f): not decided (degenerate input)")?,
        }
        write!(f, "time: {} ms", self.timing_ms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipoly::parse_form;

    #[test]
    fn report_round_trips() {
        let f = parse_form("x1^3 + x2^3", 2).unwrap();
        let r = analyze(&f, ExtendPolicy::Never).unwrap();
        let back: Report = serde_json::from_str(&r.to_json_string()).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.classification["tag"], "decomposable-semisimple");
        assert!(r.to_string().contains("block [1]: x1^3"));
    }

    #[test]
    fn errors_map_to_input() {
        let f = parse_form("x1^2 + x2^2", 2).unwrap();
        assert!(matches!(analyze(&f, ExtendPolicy::Never), Err(AnalyzeError::Input(_))));
    }
}
