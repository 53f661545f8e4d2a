//! The bent-monomial scan: for each even k and every exponent i, decide
//! whether Tr(x^i) on GF(2^k) is bent, and record the sign of χ̂(0).

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use apnlab_core::spectrum::classes::walsh_monomial_by_classes;
use apnlab_core::spectrum::{
    bent_sign_check, trace_monomial, walsh_fast, walsh_naive, Sign, WalshSpectrum,
};
use apnlab_core::FieldSpec;

/// Default ceiling on k; the full published range needs an explicit override.
pub const SCAN_DEFAULT_CAP: u32 = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Naive,
    Fast,
    Classes,
}

impl Method {
    pub fn parse(s: &str) -> Result<Method, String> {
        match s.to_ascii_lowercase().as_str() {
            "naive" => Ok(Method::Naive),
            "fast" => Ok(Method::Fast),
            "classes" => Ok(Method::Classes),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

/// One bent hit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanRecord {
    pub k: u32,
    pub i: u64,
    /// Coefficient a of Tr(a x^i); the scan fixes a = 1.
    pub a: String,
    pub bent: bool,
    pub chi_zero_sign: String,
    pub runtime_ms: f64,
    pub method: Method,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    pub k_min: u32,
    pub k_max: u32,
    pub method: Method,
    /// Even dimensions only: bent functions need an even k.
    pub scanned_k: Vec<u32>,
    pub records: Vec<ScanRecord>,
}

pub fn spectrum_by_method(
    field: &FieldSpec,
    i: u64,
    method: Method,
) -> Result<WalshSpectrum, String> {
    match method {
        Method::Classes => Ok(walsh_monomial_by_classes(field, field.one(), i)
            .map_err(|e| e.to_string())?
            .spectrum),
        Method::Fast => {
            let f = trace_monomial(field, field.one(), i).map_err(|e| e.to_string())?;
            walsh_fast(field, &f).map_err(|e| e.to_string())
        }
        Method::Naive => {
            let f = trace_monomial(field, field.one(), i).map_err(|e| e.to_string())?;
            walsh_naive(field, &f).map_err(|e| e.to_string())
        }
    }
}

/// Scans even k in k_min..=k_max. The cap at k = 14 needs `override_caps` to
/// lift; the sign of every hit is checked against the gcd dichotomy.
pub fn bent_scan(
    k_min: u32,
    k_max: u32,
    method: Method,
    override_caps: bool,
) -> Result<ScanReport, String> {
    if k_min < 2 || k_min > k_max {
        return Err(format!("bad k range {k_min}..={k_max}"));
    }
    if k_max > SCAN_DEFAULT_CAP && !override_caps {
        return Err(format!(
            "k = {k_max} beyond the default cap {SCAN_DEFAULT_CAP}; pass --override-caps"
        ));
    }
    let mut scanned_k = Vec::new();
    let mut records = Vec::new();
    for k in k_min..=k_max {
        if k % 2 != 0 {
            continue; // bent requires even dimension
        }
        scanned_k.push(k);
        let field = FieldSpec::with_default_poly(k).map_err(|e| e.to_string())?;
        field.dual_coords_table(); // build shared tables before the parallel loop
        let ord = field.order();
        let hits: Vec<ScanRecord> = (1..=ord - 1)
            .into_par_iter()
            .map(|i| -> Result<Option<ScanRecord>, String> {
                let start = Instant::now();
                let f = trace_monomial(&field, field.one(), i).map_err(|e| e.to_string())?;
                // balanced functions are never bent; this also covers every
                // exponent with gcd(i, 2^k - 1) = 1, where x^i permutes the
                // field and Tr(x^i) is balanced outright
                if f.is_balanced() {
                    return Ok(None);
                }
                if apnlab_core::field::gcd_u64(i, ord) == 1 {
                    return Err(format!(
                        "Tr(x^{i}) must be balanced at k={k}: gcd(i, 2^k-1) = 1"
                    ));
                }
                let spectrum = spectrum_by_method(&field, i, method)?;
                if !spectrum.is_bent_spectrum() {
                    return Ok(None);
                }
                let sign = bent_sign_check(&field, field.one(), i).map_err(|e| e.to_string())?;
                Ok(Some(ScanRecord {
                    k,
                    i,
                    a: "1".to_string(),
                    bent: true,
                    chi_zero_sign: match sign {
                        Sign::Plus => "PLUS".to_string(),
                        Sign::Minus => "MINUS".to_string(),
                    },
                    runtime_ms: start.elapsed().as_secs_f64() * 1e3,
                    method,
                }))
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
        records.extend(hits);
    }
    Ok(ScanReport {
        k_min,
        k_max,
        method,
        scanned_k,
        records,
    })
}
