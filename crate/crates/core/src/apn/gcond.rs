//! The reduction theorem's G-condition and the Gold-map identities.

use rayon::prelude::*;

use super::ApnError;
use crate::field::{gcd_u64, FieldElem, FieldSpec};
use crate::spectrum::VecFn;

/// Cap for the G-condition sweep (cost 2^(2n) * 2^(n/2) derivative points).
pub const G_CONDITION_CAP: u32 = 10;

/// Decides whether, for every a != 0, b in F_{2^n} and d in the half field,
/// the equation G(aX + b) + G(aX + b + a) = d has at most two solutions X in
/// the (embedded) half field. By the reduction theorem this is equivalent to
/// L(B, G) being APN for any linear isomorphism L.
pub fn g_condition_check(field: &FieldSpec, g: &VecFn) -> Result<bool, ApnError> {
    let n = field.degree();
    if n % 2 != 0 {
        return Err(ApnError::OddDegree(n));
    }
    if n > G_CONDITION_CAP {
        return Err(ApnError::SizeCap(n, G_CONDITION_CAP));
    }
    if g.n() != n || g.m() != n / 2 {
        return Err(ApnError::ParamRange("G must be an (n, n/2) table"));
    }
    let emb = field.half_embedding().map_err(ApnError::Field)?;
    let sub: Vec<u64> = emb.embedded_elements().to_vec();
    let size = 1u64 << n;
    let out_size = 1usize << (n / 2);
    let ok = (1..size).into_par_iter().all(|a| {
        let arow: Vec<u64> = sub.iter().map(|&x| field.mul_raw(a, x)).collect();
        let mut counts = vec![0u32; out_size];
        let mut stamp = vec![u64::MAX; out_size];
        for b in 0..size {
            for &ax in &arow {
                let p = ax ^ b;
                let d = (g.get(p) ^ g.get(p ^ a)) as usize;
                if stamp[d] != b {
                    stamp[d] = b;
                    counts[d] = 0;
                }
                counts[d] += 1;
                if counts[d] > 2 {
                    return false;
                }
            }
        }
        true
    });
    Ok(ok)
}

/// Both parts of the Gold lemma on this field:
/// (i) the pointwise expansion of (aX+b)^(2^k + 2^j) + (aX+a+b)^(2^k + 2^j),
/// (ii) X^(2^i) + X + c has 0 or 2 solutions for every c, when
/// gcd(i, n) = 1 with i = |k - j| (skipped for i = 0 or gcd > 1).
pub fn gold_identity_check(
    field: &FieldSpec,
    a: FieldElem,
    b: FieldElem,
    k: u32,
    j: u32,
) -> Result<bool, ApnError> {
    if k > 30 || j > 30 {
        return Err(ApnError::ParamRange("exponent indices must be <= 30"));
    }
    let n = field.degree();
    let e = (1u64 << k) + (1u64 << j);
    let (ab, bb) = (a.bits(), b.bits());
    let a_e = field.pow_raw(ab, e);
    let cst = field.mul_raw(field.pow_raw(bb, 1 << k), field.pow_raw(ab, 1 << j))
        ^ field.mul_raw(field.pow_raw(bb, 1 << j), field.pow_raw(ab, 1 << k));
    let identity = (0..(1u64 << n)).all(|x| {
        let lhs = field.pow_raw(field.mul_raw(ab, x) ^ bb, e)
            ^ field.pow_raw(field.mul_raw(ab, x) ^ ab ^ bb, e);
        let xk = field.pow_raw(x, 1 << k);
        let xj = field.pow_raw(x, 1 << j);
        let rhs = field.mul_raw(a_e, xk ^ xj ^ 1) ^ cst;
        lhs == rhs
    });
    let i = k.abs_diff(j);
    let solutions_ok = if i == 0 || gcd_u64(i as u64, n as u64) != 1 {
        true
    } else {
        let counts_fine = (0..(1u64 << n)).all(|c| {
            let cnt = (0..(1u64 << n))
                .filter(|&x| field.pow_raw(x, 1 << i) ^ x ^ c == 0)
                .count();
            cnt == 0 || cnt == 2
        });
        counts_fine
    };
    Ok(identity && solutions_ok)
}
