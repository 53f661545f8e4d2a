//! Timing comparison of the three Walsh evaluation strategies for monomial
//! trace functions. Spectra are cross-checked for equality before any timing
//! is reported.

use std::time::Instant;

use apnlab_core::field::gcd_u64;
use apnlab_core::FieldSpec;

use crate::scan::{spectrum_by_method, Method};

pub struct BenchRow {
    pub n: u32,
    pub i: u64,
    pub d: u64,
    /// Representative evaluations the class method performs: (2^n-1)/d + 1.
    pub class_evals: u64,
    pub naive_ms: f64,
    pub fast_ms: f64,
    pub classes_ms: f64,
    pub spectra_equal: bool,
}

fn median_ms(mut samples: Vec<f64>) -> f64 {
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    samples[samples.len() / 2]
}

fn time_method(field: &FieldSpec, i: u64, method: Method, reps: usize) -> Result<f64, String> {
    let mut samples = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        let s = spectrum_by_method(field, i, method)?;
        std::hint::black_box(s.chi_zero());
        samples.push(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(median_ms(samples))
}

pub fn bench_walsh(n: u32, exponents: &[u64], reps: usize) -> Result<Vec<BenchRow>, String> {
    if n > 16 {
        return Err(format!("bench capped at n = 16, got {n}"));
    }
    if exponents.is_empty() {
        return Err("at least one exponent is required".into());
    }
    let reps = reps.max(1);
    let field = FieldSpec::with_default_poly(n).map_err(|e| e.to_string())?;
    // warm the shared tables so the first timed run is not charged for them
    field.dual_coords_table();
    spectrum_by_method(&field, 1, Method::Classes)?;
    let mut rows = Vec::new();
    for &i in exponents {
        let d = gcd_u64(i, field.order());
        let reference = spectrum_by_method(&field, i, Method::Naive)?;
        let fast = spectrum_by_method(&field, i, Method::Fast)?;
        let classes = spectrum_by_method(&field, i, Method::Classes)?;
        let equal = reference == fast && reference == classes;
        if !equal {
            return Err(format!("method disagreement at n={n}, i={i}"));
        }
        rows.push(BenchRow {
            n,
            i,
            d,
            class_evals: field.order() / d + 1,
            naive_ms: time_method(&field, i, Method::Naive, reps)?,
            fast_ms: time_method(&field, i, Method::Fast, reps)?,
            classes_ms: time_method(&field, i, Method::Classes, reps)?,
            spectra_equal: equal,
        });
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("n,i,d,class_evals,naive_ms,fast_ms,classes_ms,spectra_equal\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{:.4},{:.4},{:.4},{}\n",
            r.n, r.i, r.d, r.class_evals, r.naive_ms, r.fast_ms, r.classes_ms, r.spectra_equal
        ));
    }
    out
}
