//! Shared plumbing: scenario loading, error-to-exit-code mapping, and the
//! base objects (sequence, dual vector, recurrence matrix) every command
//! starts from.

use std::fs;
use std::path::Path;

use dops_core::banded::BandedHessenberg;
use dops_core::dops::{
    self, dual_functional_vector, generate_sequence, required_horizon, sequence_from_functionals,
    DOPSequence,
};
use dops_core::functional::FunctionalVector;
use dops_core::geronimus::GeronimusConfig;
use dops_core::scalar::Scalar;
use dops_core::Error as CoreError;

use crate::model::{parse_scalar, parse_scalar_rows, InputError, Scenario, Source};

/// Command failure carrying the exit code and a one-object JSON diagnostic.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    diagnostic: serde_json::Value,
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError {
            code: 1,
            diagnostic: serde_json::json!({"error": "malformed-input", "message": msg.into()}),
        }
    }

    pub fn identity_failure(detail: serde_json::Value) -> Self {
        CliError {
            code: 4,
            diagnostic: serde_json::json!({"error": "identity-failure", "detail": detail}),
        }
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }

    pub fn diagnostic(&self) -> String {
        self.diagnostic.to_string()
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::input(e.0)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let (code, kind, detail) = match &e {
            CoreError::RegularityFailure { degree } => {
                (2, "regularity-failure", serde_json::json!({"degree": degree}))
            }
            CoreError::DegeneracyFailure { degree, j, m } => (
                2,
                "degeneracy-failure",
                serde_json::json!({"degree": degree, "j": j, "m": m}),
            ),
            CoreError::ChainBroken { level } => {
                (2, "chain-broken", serde_json::json!({"level": level}))
            }
            CoreError::ZeroAtShift { degree } => {
                (2, "zero-at-shift", serde_json::json!({"degree": degree}))
            }
            CoreError::BandViolation { row, col } => {
                (3, "band-violation", serde_json::json!({"row": row, "col": col}))
            }
            CoreError::ZeroLowBand { row } => {
                (3, "zero-low-band", serde_json::json!({"row": row}))
            }
            CoreError::ZeroEdgeBand { row } => {
                (3, "zero-edge-band", serde_json::json!({"row": row}))
            }
            _ => (1, "malformed-input", serde_json::Value::Null),
        };
        CliError {
            code,
            diagnostic: serde_json::json!({
                "error": kind,
                "message": e.to_string(),
                "detail": detail,
            }),
        }
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let scenario: Scenario = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("bad scenario JSON: {e}")))?;
    scenario.validate()?;
    if let Ok(cap) = std::env::var("DOPS_MAX_DEGREE") {
        let cap: usize = cap
            .parse()
            .map_err(|_| CliError::input("DOPS_MAX_DEGREE must be an integer"))?;
        if scenario.n > cap {
            return Err(CliError::input(format!(
                "N = {} exceeds DOPS_MAX_DEGREE = {cap}",
                scenario.n
            )));
        }
    }
    Ok(scenario)
}

/// Base objects shared by all commands: full-horizon sequence, its dual (or
/// given) vector of orthogonality, and the recurrence section.
pub struct Base {
    pub d: usize,
    pub n: usize,
    /// Sequence up to the full working degree (>= N).
    pub sequence: DOPSequence,
    pub vector: FunctionalVector,
    pub j_matrix: BandedHessenberg,
}

impl Base {
    pub fn window(&self) -> usize {
        self.n + 1 - self.d
    }
}

pub fn build_base(scenario: &Scenario) -> Result<Base, CliError> {
    let d = scenario.d;
    let n = scenario.n;
    let need = required_horizon(d, n);
    match &scenario.source {
        Source::Hessenberg(rows) => {
            let bands = parse_scalar_rows(rows)?;
            if bands.len() < need {
                return Err(CliError::input(format!(
                    "hessenberg source has {} rows; degree {n} with d = {d} needs {need}",
                    bands.len()
                )));
            }
            let j = BandedHessenberg::new(d, bands)?;
            let sequence = generate_sequence(&j, need);
            let vector = dual_functional_vector(&sequence, need);
            Ok(Base { d, n, sequence, vector, j_matrix: j })
        }
        Source::Moments(rows) => {
            let entries = parse_scalar_rows(rows)?
                .into_iter()
                .map(dops_core::functional::MomentFunctional::new)
                .collect();
            let vector = FunctionalVector::new(entries);
            if vector.horizon() < need {
                return Err(CliError::input(format!(
                    "moment horizon {} too small; degree {n} with d = {d} needs {need}",
                    vector.horizon()
                )));
            }
            // build to the largest degree the horizon supports so the dual
            // pairings of downstream levels stay within range
            let mut top = n;
            while required_horizon(d, top + 1) <= vector.horizon() {
                top += 1;
            }
            let sequence = sequence_from_functionals(&vector, top)?;
            let j_matrix = dops::recurrence_from_sequence(&sequence.truncated(n))?;
            Ok(Base { d, n, sequence, vector, j_matrix })
        }
    }
}

pub fn geronimus_config(scenario: &Scenario) -> Result<GeronimusConfig, CliError> {
    let g = scenario
        .geronimus
        .as_ref()
        .ok_or_else(|| CliError::input("scenario has no geronimus section"))?;
    let a: Scalar = parse_scalar(&g.a)?;
    let masses = g
        .masses
        .iter()
        .map(|s| parse_scalar(s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GeronimusConfig::new(a, masses))
}

pub fn write_json<T: serde::Serialize>(out: &Path, name: &str, value: &T) -> Result<(), CliError> {
    fs::create_dir_all(out)
        .map_err(|e| CliError::input(format!("cannot create {}: {e}", out.display())))?;
    let path = out.join(name);
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::input(format!("serialization failed: {e}")))?;
    text.push('\n');
    fs::write(&path, text)
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}
