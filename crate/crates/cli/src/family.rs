//! The family build / search / verify subcommands over the certificate
//! machinery.

use apnlab_core::apn::families::{
    build_family_a, build_family_b, build_family_c, build_family_d, build_family_e,
    rebuild_certificate,
};
use apnlab_core::apn::iso::IsoL;
use apnlab_core::apn::search::search_family;
use apnlab_core::apn::{ApnCertificate, FamilyId, Verdict};
use apnlab_core::{FieldElem, FieldSpec};
use serde_json::json;

use crate::opts::Opts;

/// exit 0 = verified, 3 = hypothesis failure, 4 = not APN.
pub fn verdict_exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::ApnVerified => 0,
        Verdict::HypothesisFail => 3,
        Verdict::NotApn => 4,
    }
}

fn field_from_opts(opts: &Opts) -> Result<FieldSpec, String> {
    let n = opts.u32_req("n")?;
    match opts.hex_opt("poly")? {
        Some(p) => FieldSpec::new(n, p).map_err(|e| e.to_string()),
        None => FieldSpec::with_default_poly(n).map_err(|e| e.to_string()),
    }
}

fn elem(field: &FieldSpec, opts: &Opts, name: &str) -> Result<FieldElem, String> {
    let bits = opts.hex_req(name)?;
    field.try_elem(bits).ok_or_else(|| {
        format!(
            "--{name}: {bits:#x} out of range for GF(2^{})",
            field.degree()
        )
    })
}

fn elem_or(
    field: &FieldSpec,
    opts: &Opts,
    name: &str,
    default: FieldElem,
) -> Result<FieldElem, String> {
    match opts.hex_opt(name)? {
        None => Ok(default),
        Some(bits) => field
            .try_elem(bits)
            .ok_or_else(|| format!("--{name}: {bits:#x} out of range")),
    }
}

pub fn build(opts: &Opts) -> Result<(String, i32), (i32, String)> {
    let parsed = (|| -> Result<ApnCertificate, String> {
        let family = FamilyId::parse(opts.require("name")?).map_err(|e| e.to_string())?;
        let field = field_from_opts(opts)?;
        let cert = match family {
            FamilyId::AFaux | FamilyId::AOptimal => build_family_a(
                &field,
                opts.u64_req("i")?,
                elem(&field, opts, "c")?,
                elem_or(&field, opts, "b", field.one())?,
                family,
            ),
            FamilyId::B => {
                let r_bits = opts.hex_list("r")?;
                let r: Vec<FieldElem> = r_bits
                    .iter()
                    .map(|&b| {
                        field
                            .try_elem(b)
                            .ok_or_else(|| format!("--r entry {b:#x} out of range"))
                    })
                    .collect::<Result<_, _>>()?;
                let r = if r.is_empty() {
                    vec![field.zero(); (field.degree() / 2 - 1) as usize]
                } else {
                    r
                };
                build_family_b(
                    &field,
                    opts.u64_req("s-exp")?,
                    elem(&field, opts, "b")?,
                    elem(&field, opts, "c")?,
                    &r,
                )
            }
            FamilyId::C => {
                let s_default = field
                    .elements()
                    .find(|&x| !field.is_in_subfield(x, field.degree() / 2).unwrap_or(true))
                    .ok_or("no element outside the half subfield")?;
                build_family_c(
                    &field,
                    opts.u64_req("i")?,
                    elem(&field, opts, "c")?,
                    elem_or(&field, opts, "s-elem", s_default)?,
                )
            }
            FamilyId::D => {
                let l = IsoL::default_omega(&field).map_err(|e| e.to_string())?;
                build_family_d(
                    &field,
                    opts.u64_req("i")?,
                    elem(&field, opts, "c")?,
                    elem_or(&field, opts, "t", field.zero())?,
                    &l,
                )
            }
            FamilyId::E => {
                let l = IsoL::default_omega(&field).map_err(|e| e.to_string())?;
                build_family_e(
                    &field,
                    opts.u64_opt("i")?.unwrap_or(0),
                    opts.u64_req("j")?,
                    elem(&field, opts, "c")?,
                    &l,
                )
            }
        };
        cert.map_err(|e| e.to_string())
    })();
    match parsed {
        Err(msg) => Err((2, msg)),
        Ok(cert) => {
            let out = serde_json::to_string_pretty(&cert).expect("certificate serializes");
            Ok((out, verdict_exit_code(cert.verdict)))
        }
    }
}

pub fn search(opts: &Opts) -> Result<(String, i32), (i32, String)> {
    let run = (|| -> Result<String, String> {
        let family = FamilyId::parse(opts.require("name")?).map_err(|e| e.to_string())?;
        let field = field_from_opts(opts)?;
        let budget = opts.u64_opt("budget")?.unwrap_or(1) as usize;
        let outcome = search_family(&field, family, budget).map_err(|e| e.to_string())?;
        let doc = json!({
            "family": family.name(),
            "n": field.degree(),
            "budget": budget,
            "certificates": outcome.certificates,
            "diagnostics": outcome.diagnostics,
        });
        Ok(serde_json::to_string_pretty(&doc).expect("search outcome serializes"))
    })();
    run.map(|out| (out, 0)).map_err(|msg| (2, msg))
}

/// Re-runs the build recorded in a certificate file and compares the result
/// field by field. exit 0 iff the certificate reproduces bit-exactly.
pub fn verify(path: &str) -> Result<(String, i32), (i32, String)> {
    let text = std::fs::read_to_string(path).map_err(|e| (2, format!("{path}: {e}")))?;
    let cert: ApnCertificate =
        serde_json::from_str(&text).map_err(|e| (2, format!("{path}: {e}")))?;
    let rebuilt = rebuild_certificate(&cert).map_err(|e| (2, e.to_string()))?;
    let mut mismatches = Vec::new();
    if rebuilt.hypothesis_report != cert.hypothesis_report {
        mismatches.push("hypothesis_report");
    }
    if rebuilt.uniformity != cert.uniformity {
        mismatches.push("uniformity");
    }
    if rebuilt.verdict != cert.verdict {
        mismatches.push("verdict");
    }
    if rebuilt.table_hash != cert.table_hash {
        mismatches.push("table_hash");
    }
    if rebuilt.table != cert.table {
        mismatches.push("table");
    }
    let doc = json!({
        "certificate": path,
        "reproduced": mismatches.is_empty(),
        "mismatches": mismatches,
        "verdict": rebuilt.verdict,
        "uniformity": rebuilt.uniformity,
    });
    let out = serde_json::to_string_pretty(&doc).expect("verify outcome serializes");
    Ok((out, if mismatches.is_empty() { 0 } else { 1 }))
}
