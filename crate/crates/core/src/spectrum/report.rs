//! The spectrum report emitted for ingested S-boxes and monomials.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::differential::differential_spectrum;
use super::{walsh_fast, BoolFn, SpectrumError, VecFn, WALSH_FAST_CAP};
use crate::field::FieldSpec;

/// Machine-readable audit of an (n, m)-function.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SboxReport {
    pub n: u32,
    pub m: u32,
    pub source: String,
    /// max over nonzero components v and all u of |χ̂_{Tr(vF)}(u)|.
    pub walsh_max_abs: i64,
    pub nonlinearity: i64,
    pub is_balanced: bool,
    pub is_bent: bool,
    pub differential_uniformity: u32,
    pub is_apn: bool,
    /// Sorted (solution count, cells) pairs over all (a != 0, b).
    pub histogram: Vec<(u32, u64)>,
}

/// Runs the full audit. Component functions are x -> Tr_m(v F(x)) with the
/// inner product on the output side taken in GF(2^m) (default polynomial).
pub fn audit(
    field: &FieldSpec,
    f: &VecFn,
    source: &str,
    override_cap: bool,
) -> Result<SboxReport, SpectrumError> {
    let n = f.n();
    let m = f.m();
    if n != field.degree() {
        return Err(SpectrumError::LengthMismatch(
            f.table().len(),
            field.degree(),
        ));
    }
    if n > WALSH_FAST_CAP {
        return Err(SpectrumError::SizeCap(n, WALSH_FAST_CAP));
    }
    // the component sweep runs 2^m - 1 transforms of size 2^n
    if m > n.max(8) {
        return Err(SpectrumError::SizeCap(m, n.max(8)));
    }
    // refuse before the component sweep, not after it: the differential pass
    // enforces the same cap but only runs at the end
    if n > super::SWEEP_CAP && !override_cap {
        return Err(SpectrumError::SizeCap(n, super::SWEEP_CAP));
    }
    let out_field = FieldSpec::with_default_poly(m)?;
    let bent_possible = n % 2 == 0;
    let results: Vec<(i64, bool)> = (1u64..(1u64 << m))
        .into_par_iter()
        .map(|v| {
            let comp = BoolFn::from_fn(n, |x| {
                out_field.abs_trace_raw(out_field.mul_raw(v, f.get(x) as u64)) == 1
            });
            let spectrum = walsh_fast(field, &comp).expect("n is within the fast cap");
            (spectrum.max_abs(), spectrum.is_bent_spectrum())
        })
        .collect();
    let walsh_max_abs = results.iter().map(|r| r.0).max().unwrap_or(0);
    let is_bent = bent_possible && !results.is_empty() && results.iter().all(|r| r.1);
    let diff = differential_spectrum(f, override_cap)?;
    Ok(SboxReport {
        n,
        m,
        source: source.to_string(),
        walsh_max_abs,
        nonlinearity: (1i64 << (n - 1)) - walsh_max_abs / 2,
        is_balanced: f.is_balanced(),
        is_bent,
        differential_uniformity: diff.uniformity,
        is_apn: n == m && diff.uniformity <= 2,
        histogram: diff.histogram.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(n: u32) -> FieldSpec {
        FieldSpec::with_default_poly(n).unwrap()
    }

    #[test]
    fn identity_sbox_is_linear() {
        let field = gf(4);
        let f = VecFn::from_fn(4, 4, |x| x as u32);
        let r = audit(&field, &f, "identity", false).unwrap();
        assert!(r.is_balanced);
        assert_eq!(r.differential_uniformity, 16); // constant derivatives
        assert_eq!(r.walsh_max_abs, 16); // linear components
        assert_eq!(r.nonlinearity, 0);
        assert!(!r.is_apn);
        assert!(!r.is_bent);
    }

    #[test]
    fn gold_cube_n5_audit() {
        let field = gf(5);
        let f = VecFn::power_map(&field, 3);
        let r = audit(&field, &f, "x^3", false).unwrap();
        assert!(r.is_apn);
        assert_eq!(r.differential_uniformity, 2);
        assert!(r.is_balanced); // gcd(3, 31) = 1
                                // Gold functions are almost bent at odd n: |χ̂| <= 2^((n+1)/2)
        assert_eq!(r.walsh_max_abs, 8);
    }

    #[test]
    fn inversion_map_profile_n8() {
        // x -> x^254 (field inversion extended by 0 -> 0): differential
        // uniformity 4, nonlinearity 112, max |Walsh| 32
        let field = gf(8);
        let f = VecFn::power_map(&field, 254);
        let r = audit(&field, &f, "x^254", false).unwrap();
        assert_eq!(r.differential_uniformity, 4);
        assert_eq!(r.walsh_max_abs, 32);
        assert_eq!(r.nonlinearity, 112);
        assert!(!r.is_apn);
        assert!(r.is_balanced);
    }

    #[test]
    fn oversized_output_width_rejected() {
        // a 4-entry table of wide values must not trigger a 2^m component sweep
        let field = gf(2);
        let f = VecFn::from_table(2, 31, vec![0x7fff_ffff, 1, 2, 3]).unwrap();
        assert!(matches!(
            audit(&field, &f, "junk", false),
            Err(SpectrumError::SizeCap(31, _))
        ));
    }

    #[test]
    fn boolean_bent_audit() {
        let field = gf(8);
        let g = super::super::trace_monomial(&field, field.one(), 15).unwrap();
        let f = VecFn::from_fn(8, 1, |x| g.get(x) as u32);
        let r = audit(&field, &f, "Tr(x^15)", false).unwrap();
        assert!(r.is_bent);
        assert_eq!(r.walsh_max_abs, 16);
        assert!(!r.is_balanced); // bent functions are never balanced
    }
}
