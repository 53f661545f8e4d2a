//! Differential spectra: solution counts of D_aF(x) = F(x+a) + F(x) = b,
//! differential uniformity and the APN predicate, plus the derivative checks
//! for the quadratic bent map B(X) = X^(q+1).

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{SpectrumError, VecFn, SWEEP_CAP};
use crate::field::FieldSpec;

/// Histogram of solution counts over all (a != 0, b) cells, and the maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffSpectrum {
    /// count value -> number of (a, b) cells with that many solutions.
    pub histogram: BTreeMap<u32, u64>,
    /// Differential uniformity: the largest solution count.
    pub uniformity: u32,
}

/// Full differential sweep. Solution counts are gathered per derivative
/// direction a with a reused count vector; directions are processed in
/// parallel and merged in a fixed order.
pub fn differential_spectrum(f: &VecFn, override_cap: bool) -> Result<DiffSpectrum, SpectrumError> {
    let n = f.n();
    if n > SWEEP_CAP && !override_cap {
        return Err(SpectrumError::SizeCap(n, SWEEP_CAP));
    }
    let size = 1u64 << n;
    let out_size = 1usize << f.m();
    let per_a: Vec<(u32, Vec<u64>)> = (1..size)
        .into_par_iter()
        .map_init(
            || vec![0u32; out_size],
            |counts, a| {
                counts.iter_mut().for_each(|c| *c = 0);
                for x in 0..size {
                    let b = f.get(x ^ a) ^ f.get(x);
                    counts[b as usize] += 1;
                }
                let mut max = 0u32;
                // count-of-counts for this direction, indexed by count
                let mut histo: Vec<u64> = Vec::new();
                for &c in counts.iter() {
                    if c as usize >= histo.len() {
                        histo.resize(c as usize + 1, 0);
                    }
                    histo[c as usize] += 1;
                    max = max.max(c);
                }
                (max, histo)
            },
        )
        .collect();

    let mut histogram = BTreeMap::new();
    let mut uniformity = 0u32;
    for (max, histo) in per_a {
        uniformity = uniformity.max(max);
        for (count, cells) in histo.into_iter().enumerate() {
            if cells > 0 {
                *histogram.entry(count as u32).or_insert(0) += cells;
            }
        }
    }
    Ok(DiffSpectrum {
        histogram,
        uniformity,
    })
}

pub fn differential_uniformity(f: &VecFn, override_cap: bool) -> Result<u32, SpectrumError> {
    Ok(differential_spectrum(f, override_cap)?.uniformity)
}

/// APN: an (n, n)-function whose derivative equations all have at most 2
/// solutions.
pub fn is_apn(f: &VecFn, override_cap: bool) -> Result<bool, SpectrumError> {
    if f.n() != f.m() {
        return Err(SpectrumError::NotSquareMap(f.n(), f.m()));
    }
    Ok(differential_uniformity(f, override_cap)? <= 2)
}

/// Every nonzero derivative of `f` is balanced (each output value is hit
/// exactly 2^(n-m) times). This characterizes bentness of (n, m)-functions.
pub fn derivative_balance_check(f: &VecFn) -> Result<bool, SpectrumError> {
    let n = f.n();
    if n % 2 != 0 {
        return Err(SpectrumError::OddDimension(n));
    }
    if n > SWEEP_CAP {
        return Err(SpectrumError::SizeCap(n, SWEEP_CAP));
    }
    let size = 1u64 << n;
    let expect = 1u64 << (n - f.m());
    let out_size = 1usize << f.m();
    Ok((1..size).into_par_iter().all(|a| {
        let mut counts = vec![0u64; out_size];
        for x in 0..size {
            counts[(f.get(x ^ a) ^ f.get(x)) as usize] += 1;
        }
        counts.into_iter().all(|c| c == expect)
    }))
}

/// The derivative identity for B(X) = X^(q+1), q = 2^(n/2):
/// D_aB(X) = Tr(a^q X) + a^(q+1) with Tr the relative trace, checked
/// pointwise over every (a != 0, X).
pub fn mm_derivative_identity_check(field: &FieldSpec) -> Result<bool, SpectrumError> {
    let n = field.degree();
    if n % 2 != 0 {
        return Err(SpectrumError::OddDimension(n));
    }
    if n > 12 {
        return Err(SpectrumError::SizeCap(n, 12));
    }
    let q = 1u64 << (n / 2);
    let size = 1u64 << n;
    Ok((1..size).into_par_iter().all(|a| {
        let aq = field.pow_raw(a, q);
        let aq1 = field.pow_raw(a, q + 1);
        (0..size).all(|x| {
            let lhs = field.pow_raw(x ^ a, q + 1) ^ field.pow_raw(x, q + 1);
            let rhs = field.rel_trace_half_raw(field.mul_raw(aq, x)) ^ aq1;
            lhs == rhs
        })
    }))
}

/// The bent map B as an (n, n/2) table with values in the standalone half
/// field, through the cached subfield identification.
pub fn bent_b_table(field: &FieldSpec) -> Result<VecFn, SpectrumError> {
    let n = field.degree();
    let m = field.half_degree()?;
    if n > SWEEP_CAP {
        return Err(SpectrumError::SizeCap(n, SWEEP_CAP));
    }
    let q = 1u64 << m;
    let emb = field.half_embedding()?;
    Ok(VecFn::from_fn(n, m, |x| {
        let v = field.pow_raw(x, q + 1);
        emb.project_bits(v)
            .expect("x^(q+1) lies in the half subfield") as u32
    }))
}
