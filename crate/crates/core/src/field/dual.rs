//! Self-dual basis for the trace bilinear form B(x, y) = Tr(xy).
//!
//! The fast Walsh transform works on the standard GF(2)^n inner product, while
//! the library's inner product is the field form Tr(ux). A basis e_1..e_n with
//! Tr(e_i e_j) = δ_ij makes the two agree: in self-dual coordinates the trace
//! form is the plain dot product, and the coordinate map is x -> (Tr(e_i x))_i.

use super::{FieldElem, FieldError, FieldSpec};

/// Orthonormalizes the polynomial basis against Tr(xy) over GF(2).
///
/// Standard form reduction: pick a vector of unit norm, project the rest onto
/// its orthogonal complement, repeat. When the remaining space turns
/// alternating (all norms zero), a hyperbolic pair (a, b) is combined with the
/// last output vector e into the orthonormal triple (e+a, e+b, e+a+b).
pub(crate) fn self_dual_basis(field: &FieldSpec) -> Vec<u64> {
    let n = field.degree() as usize;
    let b = |x: u64, y: u64| field.abs_trace_raw(field.mul_raw(x, y));
    let mut work: Vec<u64> = (0..n).map(|k| 1u64 << k).collect();
    let mut out: Vec<u64> = Vec::with_capacity(n);
    while !work.is_empty() {
        if let Some(idx) = work.iter().position(|&v| b(v, v) == 1) {
            let u = work.swap_remove(idx);
            for w in work.iter_mut() {
                if b(*w, u) == 1 {
                    *w ^= u;
                }
            }
            out.push(u);
        } else {
            // alternating remainder: find a hyperbolic pair
            let (i, j) = find_pair(&work, &b);
            let a = work[i];
            let c = work[j];
            let (hi, lo) = (i.max(j), i.min(j));
            work.swap_remove(hi);
            work.swap_remove(lo);
            let e = out.pop().expect("the trace form is not alternating");
            let triple = [e ^ a, e ^ c, e ^ a ^ c];
            for &f in &triple {
                for w in work.iter_mut() {
                    if b(*w, f) == 1 {
                        *w ^= f;
                    }
                }
            }
            out.extend_from_slice(&triple);
        }
    }
    debug_assert_eq!(out.len(), n);
    out
}

fn find_pair(work: &[u64], b: &dyn Fn(u64, u64) -> u8) -> (usize, usize) {
    for i in 0..work.len() {
        for j in i + 1..work.len() {
            if b(work[i], work[j]) == 1 {
                return (i, j);
            }
        }
    }
    unreachable!("non-degenerate form has no totally isotropic complement")
}

impl FieldSpec {
    /// Permutation table mapping element bits to self-dual coordinates.
    ///
    /// The map is GF(2)-linear, so the table is folded from the images of the
    /// polynomial basis in O(2^n).
    pub fn dual_coords_table(&self) -> &[u32] {
        self.dual_perm.get_or_init(|| {
            let n = self.degree();
            let basis = self_dual_basis(self);
            let coord_of = |x: u64| -> u32 {
                let mut c = 0u32;
                for (i, &e) in basis.iter().enumerate() {
                    c |= (self.abs_trace_raw(self.mul_raw(e, x)) as u32) << i;
                }
                c
            };
            let basis_coords: Vec<u32> = (0..n).map(|k| coord_of(1u64 << k)).collect();
            let size = 1usize << n;
            let mut perm = vec![0u32; size];
            for x in 1..size {
                let k = x.trailing_zeros();
                perm[x] = perm[x & (x - 1)] ^ basis_coords[k as usize];
            }
            perm
        })
    }

    /// Self-dual basis elements (mostly for inspection and tests).
    pub fn self_dual_basis_elems(&self) -> Result<Vec<FieldElem>, FieldError> {
        Ok(self_dual_basis(self)
            .into_iter()
            .map(|b| self.elem(b))
            .collect())
    }
}
