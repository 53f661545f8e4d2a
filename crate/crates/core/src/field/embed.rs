//! Embeddings of one binary field into another.
//!
//! A subfield of GF(2^n) of degree m | n consists of the fixed points of
//! x -> x^(2^m). The embedding identifies a standalone GF(2^m) with that
//! fixed-point set by sending its primitive element to a root of the same
//! minimal polynomial inside the big field.

use std::collections::HashMap;

use super::{FieldElem, FieldError, FieldSpec};

/// A concrete field isomorphism from a standalone GF(2^m) onto the degree-m
/// subfield of a larger GF(2^n), m | n, with lookup tables in both directions.
pub struct SubfieldEmbedding {
    /// The standalone small field.
    pub sub: FieldSpec,
    /// to_ext[small bits] = embedded bits inside the big field.
    to_ext: Vec<u64>,
    /// embedded bits -> small bits.
    from_ext: HashMap<u64, u64>,
    /// Embedded subfield elements in increasing-bits order.
    elems: Vec<u64>,
}

impl SubfieldEmbedding {
    /// Builds the embedding of GF(2^m) (with the default reduction polynomial)
    /// into `ext`, for m | n.
    pub fn new(ext: &FieldSpec, m: u32) -> Result<SubfieldEmbedding, FieldError> {
        if m == 0 || ext.degree() % m != 0 {
            return Err(FieldError::NotASubfield(m, ext.degree()));
        }
        SubfieldEmbedding::with_sub(ext, FieldSpec::with_default_poly(m)?)
    }

    /// Embedding of an explicitly constructed small field (any reduction
    /// polynomial) into `ext`.
    pub fn with_sub(ext: &FieldSpec, sub: FieldSpec) -> Result<SubfieldEmbedding, FieldError> {
        let m = sub.degree();
        if m == 0 || ext.degree() % m != 0 {
            return Err(FieldError::NotASubfield(m, ext.degree()));
        }
        // minimal polynomial over GF(2) of the small field's primitive element
        let minpoly = minimal_poly_gf2(&sub, sub.primitive_elem());
        // a root of that polynomial inside the big field generates the subfield
        let root = (0..=ext.order())
            .map(|b| ext.elem(b))
            .find(|&x| ext_eval_gf2(ext, minpoly, x) == ext.zero())
            .expect("the minimal polynomial splits in any field of divisible degree");

        let sub_size = 1usize << m;
        let mut to_ext = vec![0u64; sub_size];
        let mut from_ext = HashMap::with_capacity(sub_size);
        from_ext.insert(0, 0);
        let mut small = sub.one();
        let mut big = ext.one();
        for _ in 0..sub.order() {
            to_ext[small.bits() as usize] = big.bits();
            from_ext.insert(big.bits(), small.bits());
            small = sub.mul(small, sub.primitive_elem());
            big = ext.mul(big, root);
        }
        let mut elems: Vec<u64> = to_ext.clone();
        elems.sort_unstable();
        Ok(SubfieldEmbedding {
            sub,
            to_ext,
            from_ext,
            elems,
        })
    }

    /// Image of a small-field element inside the big field.
    pub fn embed_bits(&self, small_bits: u64) -> u64 {
        self.to_ext[small_bits as usize]
    }

    /// Preimage of an embedded subfield element; None if not in the subfield.
    pub fn project_bits(&self, big_bits: u64) -> Option<u64> {
        self.from_ext.get(&big_bits).copied()
    }

    /// Embedded subfield elements in increasing-bits order.
    pub fn embedded_elements(&self) -> &[u64] {
        &self.elems
    }
}

/// Minimal polynomial over GF(2) of an element, as a bitmask: the product of
/// (X + conjugates). Coefficients must land in {0, 1}.
fn minimal_poly_gf2(field: &FieldSpec, x: FieldElem) -> u64 {
    let mut conjugates = vec![x];
    let mut c = field.square(x);
    while c != x {
        conjugates.push(c);
        c = field.square(c);
    }
    // multiply out (X + c_1)...(X + c_k) with coefficients in the field
    let mut coeffs = vec![field.one()];
    for &c in &conjugates {
        let mut next = vec![field.zero(); coeffs.len() + 1];
        for (k, &a) in coeffs.iter().enumerate() {
            next[k + 1] = field.add(next[k + 1], a);
            next[k] = field.add(next[k], field.mul(a, c));
        }
        coeffs = next;
    }
    let mut mask = 0u64;
    for (k, &a) in coeffs.iter().enumerate() {
        assert!(
            a.bits() <= 1,
            "minimal polynomial must have GF(2) coefficients"
        );
        mask |= a.bits() << k;
    }
    mask
}

fn ext_eval_gf2(ext: &FieldSpec, poly_mask: u64, x: FieldElem) -> FieldElem {
    let mut acc = ext.zero();
    for k in (0..=super::gf2::degree(poly_mask)).rev() {
        acc = ext.mul(acc, x);
        if (poly_mask >> k) & 1 == 1 {
            acc = ext.add(acc, ext.one());
        }
    }
    acc
}

impl FieldSpec {
    /// The cached identification of the half subfield with a standalone
    /// GF(2^(n/2)); n must be even.
    pub fn half_embedding(&self) -> Result<&SubfieldEmbedding, FieldError> {
        let m = self.half_degree()?;
        if self.half.get().is_none() {
            let emb = SubfieldEmbedding::new(self, m)?;
            let _ = self.half.set(Box::new(emb));
        }
        Ok(self.half.get().expect("just initialized"))
    }

    /// Generic embedding of GF(2^m) (default polynomial) into this field.
    pub fn subfield_embedding(&self, m: u32) -> Result<SubfieldEmbedding, FieldError> {
        SubfieldEmbedding::new(self, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_embedding_is_a_field_isomorphism() {
        for n in [2u32, 4, 6, 8, 10, 12] {
            let f = FieldSpec::with_default_poly(n).unwrap();
            let emb = f.half_embedding().unwrap();
            let m = n / 2;
            // image = fixed points of x -> x^(2^m)
            for x in f.elements() {
                let fixed = f.is_in_subfield(x, m).unwrap();
                assert_eq!(emb.project_bits(x.bits()).is_some(), fixed);
            }
            // additive and multiplicative over the whole small field
            for a in emb.sub.elements() {
                for b in emb.sub.elements() {
                    let ea = f.elem(emb.embed_bits(a.bits()));
                    let eb = f.elem(emb.embed_bits(b.bits()));
                    assert_eq!(
                        emb.embed_bits(emb.sub.add(a, b).bits()),
                        f.add(ea, eb).bits()
                    );
                    assert_eq!(
                        emb.embed_bits(emb.sub.mul(a, b).bits()),
                        f.mul(ea, eb).bits()
                    );
                }
            }
        }
    }

    #[test]
    fn embedding_roundtrip() {
        let f = FieldSpec::with_default_poly(12).unwrap();
        for m in [1u32, 2, 3, 4, 6] {
            let emb = f.subfield_embedding(m).unwrap();
            assert_eq!(emb.embedded_elements().len(), 1 << m);
            for small in 0..(1u64 << m) {
                assert_eq!(emb.project_bits(emb.embed_bits(small)), Some(small));
            }
        }
        assert!(f.subfield_embedding(5).is_err());
    }

    #[test]
    fn relative_trace_projects_into_half_image() {
        let f = FieldSpec::with_default_poly(6).unwrap();
        let emb = f.half_embedding().unwrap();
        for x in f.elements() {
            let t = f.rel_trace_half(x).unwrap();
            assert!(emb.project_bits(t.bits()).is_some());
        }
    }

    #[test]
    fn trace_transitivity_through_embedding() {
        // absolute trace = (absolute trace of the half field) ∘ (relative trace)
        for n in [2u32, 4, 6, 8, 10] {
            let f = FieldSpec::with_default_poly(n).unwrap();
            let emb = f.half_embedding().unwrap();
            for x in f.elements() {
                let rel = f.rel_trace_half(x).unwrap();
                let small = emb.sub.elem(emb.project_bits(rel.bits()).unwrap());
                assert_eq!(f.abs_trace(x), emb.sub.abs_trace(small), "n={n} x={x}");
            }
        }
    }
}
