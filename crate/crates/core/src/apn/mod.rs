//! Construction and machine-checkable verification of the APN families built
//! from the quadratic bent map B(X) = X^(q+1), q = 2^(n/2).

pub mod families;
pub mod gcond;
pub mod iso;
pub mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FieldError;
use crate::poly::PolyError;
use crate::spectrum::{SpectrumError, VecFn};

#[derive(Debug, Error)]
pub enum ApnError {
    #[error("family constructions require an even degree, got {0}")]
    OddDegree(u32),
    #[error("n = {0} exceeds the cap {1} for this operation")]
    SizeCap(u32, u32),
    #[error("parameter out of range: {0}")]
    ParamRange(&'static str),
    #[error("family B needs n/2 - 1 = {expected} half-field entries r_i, got {got}")]
    WrongRLength { expected: usize, got: usize },
    #[error("the given parameters do not define a bijective L")]
    NonBijectiveL,
    #[error("family C supports only exponent degrees 2^i + 1 <= 5, got {0}")]
    UnsupportedDegree(u64),
    #[error("unknown family name {0:?}")]
    UnknownFamily(String),
    #[error("malformed certificate: {0}")]
    BadCertificate(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The constructive families of the reduction theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyId {
    #[serde(rename = "A_FAUX")]
    AFaux,
    #[serde(rename = "A_OPTIMAL")]
    AOptimal,
    B,
    C,
    D,
    E,
}

impl FamilyId {
    pub fn parse(s: &str) -> Result<FamilyId, ApnError> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "A_FAUX" | "AFAUX" => Ok(FamilyId::AFaux),
            "A_OPTIMAL" | "AOPTIMAL" | "A" => Ok(FamilyId::AOptimal),
            "B" => Ok(FamilyId::B),
            "C" => Ok(FamilyId::C),
            "D" => Ok(FamilyId::D),
            "E" => Ok(FamilyId::E),
            other => Err(ApnError::UnknownFamily(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyId::AFaux => "A_FAUX",
            FamilyId::AOptimal => "A_OPTIMAL",
            FamilyId::B => "B",
            FamilyId::C => "C",
            FamilyId::D => "D",
            FamilyId::E => "E",
        }
    }
}

/// One named hypothesis with its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl HypothesisCheck {
    pub fn new(name: &str, passed: bool) -> HypothesisCheck {
        HypothesisCheck {
            name: name.to_string(),
            passed,
            detail: None,
        }
    }

    pub fn with_detail(name: &str, passed: bool, detail: String) -> HypothesisCheck {
        HypothesisCheck {
            name: name.to_string(),
            passed,
            detail: Some(detail),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "APN_VERIFIED")]
    ApnVerified,
    #[serde(rename = "HYPOTHESIS_FAIL")]
    HypothesisFail,
    #[serde(rename = "NOT_APN")]
    NotApn,
}

/// Serialized choice of the linear isomorphism L.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LSpec {
    /// L(u, v) = u + ω v.
    Omega { omega: String },
    /// L(u, v) = u + s u^(2^i) + v.
    Gener { s: String, i: u32 },
    /// L(u, v) = c u + Σ r_k u^(2^k) + v.
    FamB { c: String, r: Vec<String> },
}

/// Family parameters as stored in certificates (field elements in hex).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s_exp: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub s_elem: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub l: Option<LSpec>,
}

/// The machine-checkable record: parameters, hypothesis outcomes, measured
/// uniformity and the function table (inline up to n = 10, hashed always).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApnCertificate {
    pub family: FamilyId,
    pub n: u32,
    /// Reduction polynomial of the ambient field, hex.
    pub poly: String,
    pub params: CertParams,
    pub hypothesis_report: Vec<HypothesisCheck>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub uniformity: Option<u32>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub table: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub table_hash: Option<String>,
}

impl ApnCertificate {
    pub fn all_hypotheses_pass(&self) -> bool {
        self.hypothesis_report.iter().all(|h| h.passed)
    }

    /// The structural invariant: APN_VERIFIED means every hypothesis passed
    /// and the measured uniformity is exactly 2.
    pub fn is_consistent(&self) -> bool {
        match self.verdict {
            Verdict::ApnVerified => self.all_hypotheses_pass() && self.uniformity == Some(2),
            Verdict::HypothesisFail => !self.all_hypotheses_pass(),
            Verdict::NotApn => self.uniformity.is_some_and(|u| u > 2),
        }
    }

    pub fn vacuous(&self) -> bool {
        self.hypothesis_report
            .iter()
            .any(|h| !h.passed && h.name == families::VACUOUS_CHECK)
    }
}

/// FNV-1a over the little-endian table words; cheap content fingerprint.
pub fn table_hash(f: &VecFn) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &v in f.table() {
        for byte in v.to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    format!("fnv1a64:{h:016x}")
}

pub(crate) fn hex(bits: u64) -> String {
    format!("{bits:x}")
}

pub(crate) fn parse_hex(s: &str) -> Result<u64, ApnError> {
    let t = s.trim().trim_start_matches("0x").trim_start_matches("0X");
    u64::from_str_radix(t, 16).map_err(|e| ApnError::BadCertificate(format!("hex {s:?}: {e}")))
}
