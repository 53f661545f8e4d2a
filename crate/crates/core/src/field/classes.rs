//! Power maps x -> x^i on GF(2^n): permutation criterion, power residues and
//! the coset decomposition of F* by the kernel of the d-th power map.

use super::{gcd_u64, FieldElem, FieldError, FieldSpec};

/// Summary of the i-th power map on the multiplicative group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerMapAnalysis {
    /// d = gcd(i, 2^n - 1).
    pub d: u64,
    /// x -> x^i permutes the field iff d = 1.
    pub is_permutation: bool,
    /// Number of nonzero i-th powers, (2^n - 1) / d.
    pub residue_count: u64,
}

/// The coset partition of F* induced by x -> x^i: the kernel of the d-th
/// power map and one smallest-bits representative per coset.
#[derive(Debug, Clone)]
pub struct ClassDecomposition {
    /// d = gcd(i, 2^n - 1); every kernel element z satisfies z^d = 1.
    pub d: u64,
    /// Ker(F_d) = {ξ^k : k = 0..d-1}, in that order.
    pub kernel: Vec<FieldElem>,
    /// Smallest-bits element of each of the (2^n - 1)/d cosets,
    /// indexed by log(x) mod ((2^n - 1)/d).
    pub representatives: Vec<FieldElem>,
    /// ξ = α^((2^n - 1)/d), generator of the kernel.
    pub xi: FieldElem,
}

impl ClassDecomposition {
    /// Number of cosets.
    pub fn class_count(&self) -> u64 {
        self.representatives.len() as u64
    }
}

impl FieldSpec {
    /// Permutation criterion and residue count of x -> x^i (i >= 1).
    pub fn power_map_analysis(&self, i: u64) -> Result<PowerMapAnalysis, FieldError> {
        if i == 0 {
            return Err(FieldError::ZeroExponent);
        }
        let d = gcd_u64(i, self.order());
        Ok(PowerMapAnalysis {
            d,
            is_permutation: d == 1,
            residue_count: self.order() / d,
        })
    }

    /// True iff nonzero x is a k-th power: x^((2^n - 1)/gcd(k, 2^n - 1)) = 1.
    pub fn is_kth_power(&self, x: FieldElem, k: u64) -> Result<bool, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroOperand);
        }
        if k == 0 {
            return Err(FieldError::ZeroExponent);
        }
        let d = gcd_u64(k, self.order());
        Ok(self.pow(x, self.order() / d) == self.one())
    }

    /// Coset decomposition of F* for the exponent i.
    pub fn class_decomposition(&self, i: u64) -> Result<ClassDecomposition, FieldError> {
        if i == 0 {
            return Err(FieldError::ZeroExponent);
        }
        let tables = self.log_tables()?;
        let ord = self.order();
        let d = gcd_u64(i, ord);
        let m = ord / d; // class count; kernel logs are the multiples of m
        let mut reps = vec![u64::MAX; m as usize];
        for (j, &bits) in tables.exp.iter().enumerate() {
            let c = (j as u64 % m) as usize;
            if (bits as u64) < reps[c] {
                reps[c] = bits as u64;
            }
        }
        let kernel = (0..d)
            .map(|k| self.elem(tables.exp[(k * m) as usize] as u64))
            .collect();
        let xi = self.elem(tables.exp[(m % ord) as usize] as u64);
        Ok(ClassDecomposition {
            d,
            kernel,
            representatives: reps.into_iter().map(|b| self.elem(b)).collect(),
            xi,
        })
    }

    /// Index of a nonzero element's coset, given the class count of the
    /// decomposition: log(x) mod class_count.
    pub fn coset_index(&self, bits: u64, class_count: u64) -> Result<u64, FieldError> {
        debug_assert!(bits != 0);
        let tables = self.log_tables()?;
        Ok(tables.log[bits as usize] as u64 % class_count)
    }
}
