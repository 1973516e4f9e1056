//! JSON models and conversions between wire types and `dops-core` values.
//! Rationals travel as "p/q" strings (or "p" when q = 1); there are no
//! floats anywhere in any artifact.

use std::fmt;
use std::str::FromStr;

use dops_core::banded::{BandedHessenberg, BandedLowerTriangular, BandedN};
use dops_core::dops::{DOPSequence, OrthogonalityReport, SequenceSource};
use dops_core::factorization::{BidiagonalChain, IdentityReport};
use dops_core::functional::{FunctionalVector, MomentFunctional};
use dops_core::poly::Polynomial;
use dops_core::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// Input-shape or value errors surfaced before any kernel runs.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for InputError {}

pub fn parse_scalar(s: &str) -> Result<Scalar, InputError> {
    Scalar::from_str(s.trim()).map_err(|e| InputError(format!("bad rational {s:?}: {e}")))
}

pub fn scalar_string(x: &Scalar) -> String {
    x.to_string()
}

pub fn parse_scalar_rows(rows: &[Vec<String>]) -> Result<Vec<Vec<Scalar>>, InputError> {
    rows.iter()
        .map(|row| row.iter().map(|s| parse_scalar(s)).collect())
        .collect()
}

fn scalar_rows(rows: &[Vec<Scalar>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(scalar_string).collect()).collect()
}

// ---- scenario ----

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub source: Source,
    #[serde(default)]
    pub geronimus: Option<GeronimusJson>,
    #[serde(default)]
    pub checks: Option<Vec<String>>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Band rows of the recurrence matrix J: row n lists a_{n,n-k} for
    /// columns max(0, n-d)..=n in ascending column order.
    Hessenberg(Vec<Vec<String>>),
    /// Per-functional moment lists (d of them, equal length).
    Moments(Vec<Vec<String>>),
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GeronimusJson {
    pub a: String,
    pub masses: Vec<String>,
}

impl Scenario {
    pub fn validate(&self) -> Result<(), InputError> {
        if self.d == 0 {
            return Err(InputError("d must be positive".into()));
        }
        if self.n < self.d + 2 {
            return Err(InputError(format!("N = {} must be at least d + 2 = {}", self.n, self.d + 2)));
        }
        if let Some(g) = &self.geronimus {
            if g.masses.len() != self.d {
                return Err(InputError(format!(
                    "expected {} masses, got {}",
                    self.d,
                    g.masses.len()
                )));
            }
        }
        if let Source::Moments(rows) = &self.source {
            if rows.len() != self.d {
                return Err(InputError(format!(
                    "moments source must list {} functionals, got {}",
                    self.d,
                    rows.len()
                )));
            }
        }
        Ok(())
    }
}

// ---- artifacts ----

#[derive(Debug, Serialize, Deserialize)]
pub struct SequenceJson {
    pub d: usize,
    pub source: String,
    pub polynomials: Vec<Vec<String>>,
}

impl SequenceJson {
    pub fn from_core(s: &DOPSequence) -> Self {
        SequenceJson {
            d: s.d(),
            source: s.source().as_str().to_string(),
            polynomials: s
                .polys()
                .iter()
                .map(|p| p.coeffs().iter().map(scalar_string).collect())
                .collect(),
        }
    }

    pub fn to_core(&self) -> Result<DOPSequence, InputError> {
        let polys = self
            .polynomials
            .iter()
            .map(|cs| {
                Ok(Polynomial::from_coeffs(
                    cs.iter().map(|s| parse_scalar(s)).collect::<Result<_, _>>()?,
                ))
            })
            .collect::<Result<Vec<_>, InputError>>()?;
        Ok(DOPSequence::new(self.d, polys, SequenceSource::FromMoments))
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FunctionalJson {
    pub moments: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FunctionalVectorJson {
    pub d: usize,
    pub entries: Vec<FunctionalJson>,
}

impl FunctionalVectorJson {
    pub fn from_core(v: &FunctionalVector) -> Self {
        FunctionalVectorJson {
            d: v.d(),
            entries: v
                .entries()
                .iter()
                .map(|u| FunctionalJson {
                    moments: u.moments().iter().map(scalar_string).collect(),
                })
                .collect(),
        }
    }

    pub fn to_core(&self) -> Result<FunctionalVector, InputError> {
        let entries = self
            .entries
            .iter()
            .map(|f| {
                Ok(MomentFunctional::new(
                    f.moments.iter().map(|s| parse_scalar(s)).collect::<Result<_, _>>()?,
                ))
            })
            .collect::<Result<Vec<_>, InputError>>()?;
        Ok(FunctionalVector::new(entries))
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HessenbergJson {
    pub size: usize,
    pub d: usize,
    pub bands: Vec<Vec<String>>,
}

impl HessenbergJson {
    pub fn from_core(j: &BandedHessenberg) -> Self {
        HessenbergJson {
            size: j.band_rows().len(),
            d: j.d(),
            bands: scalar_rows(j.band_rows()),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LowerJson {
    pub size: usize,
    pub q: usize,
    pub bands: Vec<Vec<String>>,
}

impl LowerJson {
    pub fn from_core(l: &BandedLowerTriangular) -> Self {
        LowerJson { size: l.band_rows().len(), q: l.q(), bands: scalar_rows(l.band_rows()) }
    }

    pub fn to_core(&self) -> Result<BandedLowerTriangular, InputError> {
        BandedLowerTriangular::new(self.q, parse_scalar_rows(&self.bands)?)
            .map_err(|e| InputError(format!("bad lower factor: {e}")))
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct NJson {
    pub size: usize,
    pub d: usize,
    pub q: usize,
    pub bands: Vec<Vec<String>>,
}

impl NJson {
    pub fn from_core(n: &BandedN) -> Self {
        NJson {
            size: n.band_rows().len(),
            d: n.d(),
            q: n.q(),
            bands: scalar_rows(n.band_rows()),
        }
    }

    pub fn to_core(&self) -> Result<BandedN, InputError> {
        BandedN::new(self.d, self.q, parse_scalar_rows(&self.bands)?)
            .map_err(|e| InputError(format!("bad N factor: {e}")))
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ChainJson {
    pub a: String,
    pub l_factors: Vec<LowerJson>,
    pub u: NJson,
}

impl ChainJson {
    pub fn from_core(c: &BidiagonalChain) -> Self {
        ChainJson {
            a: scalar_string(&c.a),
            l_factors: c.l_factors.iter().map(LowerJson::from_core).collect(),
            u: NJson::from_core(&c.u),
        }
    }

    pub fn to_core(&self) -> Result<BidiagonalChain, InputError> {
        Ok(BidiagonalChain {
            a: parse_scalar(&self.a)?,
            l_factors: self
                .l_factors
                .iter()
                .map(|l| l.to_core())
                .collect::<Result<_, _>>()?,
            u: self.u.to_core()?,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TransformLevelJson {
    pub m: usize,
    pub a: String,
    pub masses: Vec<String>,
    pub determinants: Vec<String>,
    pub vector: FunctionalVectorJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<SequenceJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OrthogonalityCheckJson {
    pub j: usize,
    pub m: usize,
    pub n: usize,
    pub kind: String,
    pub pass: bool,
    pub value: String,
}

pub fn orthogonality_json(r: &OrthogonalityReport) -> Vec<OrthogonalityCheckJson> {
    r.checks
        .iter()
        .map(|c| OrthogonalityCheckJson {
            j: c.j,
            m: c.m,
            n: c.n,
            kind: c.kind.as_str().to_string(),
            pass: c.pass,
            value: scalar_string(&c.value),
        })
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MismatchJson {
    pub i: usize,
    pub j: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IdentityReportJson {
    pub identity: String,
    pub window: usize,
    pub pass: bool,
    pub mismatches: Vec<MismatchJson>,
}

pub fn identity_json(r: &IdentityReport) -> IdentityReportJson {
    IdentityReportJson {
        identity: r.identity.clone(),
        window: r.window,
        pass: r.pass(),
        mismatches: r
            .mismatches
            .iter()
            .map(|m| MismatchJson {
                i: m.i,
                j: m.j,
                lhs: scalar_string(&m.lhs),
                rhs: scalar_string(&m.rhs),
            })
            .collect(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CheckResultJson {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub identities: Vec<IdentityReportJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReportJson {
    pub pass: bool,
    pub window: usize,
    pub checks: Vec<CheckResultJson>,
}
