//! Linear isomorphisms L : F_q x F_q -> F_{2^n} used to fold the pair
//! (B(x), G(x)) back into a univariate (n, n)-function.

use super::{hex, parse_hex, ApnError, LSpec};
use crate::field::FieldSpec;

/// A verified-bijective GF(2)-linear map on half-field pairs. Inputs and the
/// output are subfield-embedded bits of the ambient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoL {
    /// L(u, v) = u + ω v, ω outside the half field.
    Omega { omega: u64 },
    /// L(u, v) = u + s u^(2^i) + v, s outside the half field.
    Gener { s: u64, i: u32 },
    /// L(u, v) = c u + Σ r_k u^(2^k) + v, c outside the half field,
    /// r_k in the half field (k = 1..n/2-1).
    FamB { c: u64, r: Vec<u64> },
}

impl IsoL {
    /// Validates bijectivity by an image-cardinality sweep over all pairs.
    pub fn new(field: &FieldSpec, kind: IsoL) -> Result<IsoL, ApnError> {
        let n = field.degree();
        if n % 2 != 0 {
            return Err(ApnError::OddDegree(n));
        }
        if let IsoL::FamB { r, .. } = &kind {
            let expected = (n / 2 - 1) as usize;
            if r.len() != expected {
                return Err(ApnError::WrongRLength {
                    expected,
                    got: r.len(),
                });
            }
        }
        let emb = field.half_embedding().map_err(ApnError::Field)?;
        let sub = emb.embedded_elements();
        let size = 1usize << n;
        let mut seen = vec![false; size];
        for &u in sub {
            for &v in sub {
                let w = kind.apply(field, u, v) as usize;
                if seen[w] {
                    return Err(ApnError::NonBijectiveL);
                }
                seen[w] = true;
            }
        }
        Ok(kind)
    }

    /// The canonical choice: L(u, v) = u + ω v with the constructed ω.
    pub fn default_omega(field: &FieldSpec) -> Result<IsoL, ApnError> {
        let omega = field.find_omega().map_err(ApnError::Field)?;
        IsoL::new(
            field,
            IsoL::Omega {
                omega: omega.bits(),
            },
        )
    }

    /// Applies L to subfield-embedded inputs.
    #[inline]
    pub fn apply(&self, field: &FieldSpec, u: u64, v: u64) -> u64 {
        match self {
            IsoL::Omega { omega } => u ^ field.mul_raw(*omega, v),
            IsoL::Gener { s, i } => u ^ field.mul_raw(*s, field.pow_raw(u, 1u64 << i)) ^ v,
            IsoL::FamB { c, r } => {
                let mut acc = field.mul_raw(*c, u) ^ v;
                for (k, &rk) in r.iter().enumerate() {
                    acc ^= field.mul_raw(rk, field.pow_raw(u, 1u64 << (k + 1)));
                }
                acc
            }
        }
    }

    pub fn to_spec(&self) -> LSpec {
        match self {
            IsoL::Omega { omega } => LSpec::Omega { omega: hex(*omega) },
            IsoL::Gener { s, i } => LSpec::Gener { s: hex(*s), i: *i },
            IsoL::FamB { c, r } => LSpec::FamB {
                c: hex(*c),
                r: r.iter().map(|&b| hex(b)).collect(),
            },
        }
    }

    pub fn from_spec(field: &FieldSpec, spec: &LSpec) -> Result<IsoL, ApnError> {
        let kind = match spec {
            LSpec::Omega { omega } => IsoL::Omega {
                omega: parse_hex(omega)?,
            },
            LSpec::Gener { s, i } => IsoL::Gener {
                s: parse_hex(s)?,
                i: *i,
            },
            LSpec::FamB { c, r } => IsoL::FamB {
                c: parse_hex(c)?,
                r: r.iter().map(|x| parse_hex(x)).collect::<Result<_, _>>()?,
            },
        };
        IsoL::new(field, kind)
    }
}
