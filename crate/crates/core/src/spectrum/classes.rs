//! Walsh evaluation of monomial trace functions through the coset structure
//! of the power map: χ̂ of f(x) = Tr(a x^i) is constant on each coset of
//! Ker(F_d), d = gcd(i, 2^n - 1), so one evaluation per coset suffices.
//!
//! The spectrum is assembled from the rewrite
//! χ̂(β) = 1 + Σ_{x in I} (-1)^Tr(a x^i) · Σ_k (-1)^Tr(β x ξ^k),
//! where the inner sum only depends on the coset of βx.

use super::{SpectrumError, WalshSpectrum};
use crate::field::{FieldElem, FieldSpec};

/// Class-based spectrum of f(x) = Tr(a x^i), plus the number of genuinely
/// evaluated points (class count + 1 for β = 0).
pub struct ClassWalsh {
    pub spectrum: WalshSpectrum,
    /// Representative evaluations performed: (2^n - 1)/d + 1.
    pub evaluations: u64,
}

/// Computes the spectrum of f(x) = Tr(a x^i) via the class decomposition.
pub fn walsh_monomial_by_classes(
    field: &FieldSpec,
    a: FieldElem,
    i: u64,
) -> Result<ClassWalsh, SpectrumError> {
    if a.is_zero() {
        return Err(SpectrumError::ZeroCoefficient);
    }
    if i == 0 {
        return Err(SpectrumError::ZeroExponent);
    }
    let n = field.degree();
    let ord = field.order();
    let tables = field.log_tables()?;
    let d = crate::field::gcd_u64(i, ord);
    let m = ord / d; // class count

    // sign of Tr(a x^i) for one representative x per class: x^i only depends
    // on the class of x, and log(x^i) = i*log(x) mod ord
    let la = tables.log[a.bits() as usize] as u128;
    let ie = (i % ord) as u128;
    let mut rep_sign = vec![0i64; m as usize];
    for (c, s) in rep_sign.iter_mut().enumerate() {
        let e = ((la + ie * c as u128) % ord as u128) as usize;
        let v = tables.exp[e] as u64;
        *s = if field.abs_trace_raw(v) == 1 { -1 } else { 1 };
    }

    // coset_sum[c] = Σ over the coset with log ≡ c (mod m) of (-1)^Tr(y)
    let mut coset_sum = vec![0i64; m as usize];
    for (j, &bits) in tables.exp.iter().enumerate() {
        let c = (j as u64 % m) as usize;
        coset_sum[c] += if field.abs_trace_raw(bits as u64) == 1 {
            -1
        } else {
            1
        };
    }

    // value at one representative per class of β, then broadcast
    let mut class_value = vec![0i64; m as usize];
    for (cb, val) in class_value.iter_mut().enumerate() {
        let mut acc = 1i64; // the x = 0 term
        for cx in 0..m as usize {
            acc += rep_sign[cx] * coset_sum[(cb + cx) % m as usize];
        }
        *val = acc;
    }
    let chi_zero = 1 + d as i64 * rep_sign.iter().sum::<i64>();

    let mut values = vec![0i64; (ord + 1) as usize];
    values[0] = chi_zero;
    for (j, &bits) in tables.exp.iter().enumerate() {
        values[bits as usize] = class_value[(j as u64 % m) as usize];
    }
    Ok(ClassWalsh {
        spectrum: WalshSpectrum { n, values },
        evaluations: m + 1,
    })
}
