//! Boolean and vectorial function tables, Walsh transforms and the
//! bent/balanced predicates.
//!
//! Truth tables are indexed by element bits, and the inner product is always
//! the field form Tr(ux), never the plain GF(2)^n dot product. The fast
//! transform bridges the two through self-dual coordinates.

pub mod classes;
pub mod differential;
pub mod report;

use thiserror::Error;

use crate::field::{gcd_u64, FieldElem, FieldError, FieldSpec};

/// Cap for the quadratic-cost reference transform.
pub const WALSH_NAIVE_CAP: u32 = 20;
/// Cap for the butterfly transform.
pub const WALSH_FAST_CAP: u32 = 24;
/// Default cap for exhaustive differential sweeps.
pub const SWEEP_CAP: u32 = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("n = {0} exceeds the cap {1} for this operation")]
    SizeCap(u32, u32),
    #[error("function table length {0} does not match 2^{1}")]
    LengthMismatch(usize, u32),
    #[error("bentness requires an even dimension, got {0}")]
    OddDimension(u32),
    #[error("the function is not bent")]
    NotBent,
    #[error("coefficient a must be nonzero")]
    ZeroCoefficient,
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("measured Walsh sign contradicts the gcd case for i = {0}")]
    SignProposition(u64),
    #[error("expected an (n, n) function, got ({0}, {1})")]
    NotSquareMap(u32, u32),
    #[error("output values must fit in {0} bits")]
    ValueRange(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Truth table of a Boolean function on 2^n points, bit-packed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolFn {
    n: u32,
    words: Vec<u64>,
}

impl BoolFn {
    pub fn zero(n: u32) -> BoolFn {
        BoolFn {
            n,
            words: vec![0u64; BoolFn::word_count(n)],
        }
    }

    fn word_count(n: u32) -> usize {
        1usize.max((1usize << n) >> 6)
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(u64) -> bool) -> BoolFn {
        let mut out = BoolFn::zero(n);
        for x in 0..(1u64 << n) {
            if f(x) {
                out.set(x, true);
            }
        }
        out
    }

    pub fn from_words(n: u32, words: Vec<u64>) -> Result<BoolFn, SpectrumError> {
        if words.len() != BoolFn::word_count(n) {
            return Err(SpectrumError::LengthMismatch(words.len(), n));
        }
        let mut f = BoolFn { n, words };
        f.mask_top();
        Ok(f)
    }

    fn mask_top(&mut self) {
        if self.n < 6 {
            self.words[0] &= (1u64 << (1 << self.n)) - 1;
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> u64 {
        1u64 << self.n
    }

    #[inline]
    pub fn get(&self, x: u64) -> bool {
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    pub fn set(&mut self, x: u64, v: bool) {
        let w = &mut self.words[(x >> 6) as usize];
        if v {
            *w |= 1u64 << (x & 63);
        } else {
            *w &= !(1u64 << (x & 63));
        }
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// χ̂(0) = 0: the function takes both values equally often.
    pub fn is_balanced(&self) -> bool {
        2 * self.weight() == self.size()
    }
}

/// Value table of an (n, m)-function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VecFn {
    n: u32,
    m: u32,
    table: Vec<u32>,
}

impl VecFn {
    pub fn from_table(n: u32, m: u32, table: Vec<u32>) -> Result<VecFn, SpectrumError> {
        if table.len() != 1usize << n {
            return Err(SpectrumError::LengthMismatch(table.len(), n));
        }
        if m < 32 && table.iter().any(|&v| v >> m != 0) {
            return Err(SpectrumError::ValueRange(m));
        }
        Ok(VecFn { n, m, table })
    }

    pub fn from_fn(n: u32, m: u32, mut f: impl FnMut(u64) -> u32) -> VecFn {
        let table = (0..(1u64 << n)).map(|x| f(x)).collect();
        VecFn::from_table(n, m, table).expect("generator stays in range")
    }

    /// The power map x -> x^e on the field, as an (n, n)-function.
    pub fn power_map(field: &FieldSpec, e: u64) -> VecFn {
        VecFn::from_fn(field.degree(), field.degree(), |x| {
            field.pow_raw(x, e) as u32
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn get(&self, x: u64) -> u32 {
        self.table[x as usize]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// Every output value is taken the same number of times.
    pub fn is_balanced(&self) -> bool {
        if self.m > self.n {
            return false;
        }
        let expect = 1u64 << (self.n - self.m);
        let mut counts = vec![0u64; 1usize << self.m];
        for &v in &self.table {
            counts[v as usize] += 1;
        }
        counts.into_iter().all(|c| c == expect)
    }
}

/// Walsh spectrum: values[u] = χ̂_f(u) = Σ_x (-1)^(f(x) + Tr(ux)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    n: u32,
    values: Vec<i64>,
}

impl WalshSpectrum {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn at(&self, u: u64) -> i64 {
        self.values[u as usize]
    }

    pub fn chi_zero(&self) -> i64 {
        self.values[0]
    }

    pub fn max_abs(&self) -> i64 {
        self.values.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// 2^(n-1) - max|χ̂|/2.
    pub fn nonlinearity(&self) -> i64 {
        (1i64 << (self.n - 1)) - self.max_abs() / 2
    }

    /// Σ χ̂(u)^2, exactly.
    pub fn parseval_sum(&self) -> u128 {
        self.values
            .iter()
            .map(|&v| (v as i128 * v as i128) as u128)
            .sum()
    }

    /// Evenness, range bound and Parseval.
    pub fn verify_invariants(&self) -> bool {
        let bound = 1i64 << self.n;
        self.values.iter().all(|&v| v % 2 == 0 && v.abs() <= bound)
            && self.parseval_sum() == 1u128 << (2 * self.n)
    }

    /// All values equal ±2^(n/2).
    pub fn is_bent_spectrum(&self) -> bool {
        if self.n % 2 != 0 {
            return false;
        }
        let target = 1i64 << (self.n / 2);
        self.values.iter().all(|&v| v.abs() == target)
    }
}

/// Reference transform: evaluates the defining double sum exactly, bit-sliced
/// 64 points at a time. The inner product rows come straight from field
/// multiplication and the trace, independent of the butterfly path.
pub fn walsh_naive(field: &FieldSpec, f: &BoolFn) -> Result<WalshSpectrum, SpectrumError> {
    let n = check_dims(field, f, WALSH_NAIVE_CAP)?;
    let size = 1u64 << n;
    let basis_rows: Vec<BoolFn> = (0..n)
        .map(|k| BoolFn::from_fn(n, |x| field.abs_trace_raw(field.mul_raw(1u64 << k, x)) == 1))
        .collect();
    let mut values = vec![0i64; size as usize];
    // Gray-code walk over u: each step XORs one basis row into the running
    // table of f(x) + Tr(ux)
    let mut cur = f.clone();
    values[0] = size as i64 - 2 * cur.weight() as i64;
    for j in 1..size {
        let k = j.trailing_zeros() as usize;
        for (w, b) in cur.words.iter_mut().zip(&basis_rows[k].words) {
            *w ^= b;
        }
        let u = j ^ (j >> 1);
        values[u as usize] = size as i64 - 2 * cur.weight() as i64;
    }
    Ok(WalshSpectrum { n, values })
}

/// Butterfly transform in self-dual coordinates; bit-identical to
/// `walsh_naive`, in O(n 2^n).
pub fn walsh_fast(field: &FieldSpec, f: &BoolFn) -> Result<WalshSpectrum, SpectrumError> {
    let n = check_dims(field, f, WALSH_FAST_CAP)?;
    let size = 1usize << n;
    let perm = field.dual_coords_table();
    let mut t = vec![0i64; size];
    for x in 0..size {
        t[perm[x] as usize] = if f.get(x as u64) { -1 } else { 1 };
    }
    fwht_inplace(&mut t);
    let values = (0..size).map(|u| t[perm[u] as usize]).collect();
    Ok(WalshSpectrum { n, values })
}

fn check_dims(field: &FieldSpec, f: &BoolFn, cap: u32) -> Result<u32, SpectrumError> {
    let n = f.n();
    if n != field.degree() {
        return Err(SpectrumError::LengthMismatch(f.words.len(), field.degree()));
    }
    if n > cap {
        return Err(SpectrumError::SizeCap(n, cap));
    }
    Ok(n)
}

pub(crate) fn fwht_inplace(v: &mut [i64]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for r in (0..n).step_by(2 * h) {
            for i in r..r + h {
                let (a, b) = (v[i], v[i + h]);
                v[i] = a + b;
                v[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Truth table of f(x) = Tr(a x^i).
pub fn trace_monomial(field: &FieldSpec, a: FieldElem, i: u64) -> Result<BoolFn, SpectrumError> {
    if i == 0 {
        return Err(SpectrumError::ZeroExponent);
    }
    let n = field.degree();
    let a_bits = a.bits();
    if a_bits == 0 {
        return Ok(BoolFn::zero(n));
    }
    if let Ok(tables) = field.log_tables() {
        let ord = field.order();
        let la = tables.log[a_bits as usize] as u64;
        let ie = i % ord;
        let mut out = BoolFn::zero(n);
        for j in 0..ord {
            let e = ((la as u128 + ie as u128 * j as u128) % ord as u128) as usize;
            let v = tables.exp[e] as u64;
            if field.abs_trace_raw(v) == 1 {
                out.set(tables.exp[j as usize] as u64, true);
            }
        }
        Ok(out)
    } else {
        Ok(BoolFn::from_fn(n, |x| {
            field.abs_trace_raw(field.mul_raw(a_bits, field.pow_raw(x, i))) == 1
        }))
    }
}

/// Bentness of f via the fast transform; n must be even.
pub fn is_bent(field: &FieldSpec, f: &BoolFn) -> Result<bool, SpectrumError> {
    if f.n() % 2 != 0 {
        return Err(SpectrumError::OddDimension(f.n()));
    }
    Ok(walsh_fast(field, f)?.is_bent_spectrum())
}

/// χ̂_f(β) = χ̂_g(β/b) for f(x) = Tr(b^i x^i) and g(x) = Tr(x^i): verifies the
/// identity over every β.
pub fn bent_monomial_equivalence_check(
    field: &FieldSpec,
    b: FieldElem,
    i: u64,
) -> Result<bool, SpectrumError> {
    if b.is_zero() {
        return Err(SpectrumError::ZeroCoefficient);
    }
    let a = field.pow(b, i);
    let f = trace_monomial(field, a, i)?;
    let g = trace_monomial(field, field.one(), i)?;
    let sf = walsh_fast(field, &f)?;
    let sg = walsh_fast(field, &g)?;
    let b_inv = field.inverse(b)?;
    Ok(field
        .elements()
        .all(|beta| sf.at(beta.bits()) == sg.at(field.mul(beta, b_inv).bits())))
}

/// Sign of χ̂(0) for a bent monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// For bent f(x) = Tr(a x^i): measures the sign of χ̂(0) and checks it against
/// the gcd dichotomy (+2^(n/2) iff gcd(i, 2^(n/2)+1) = 1, -2^(n/2) iff
/// gcd(i, 2^(n/2)-1) = 1).
pub fn bent_sign_check(field: &FieldSpec, a: FieldElem, i: u64) -> Result<Sign, SpectrumError> {
    if a.is_zero() {
        return Err(SpectrumError::ZeroCoefficient);
    }
    let n = field.degree();
    if n % 2 != 0 {
        return Err(SpectrumError::OddDimension(n));
    }
    let f = trace_monomial(field, a, i)?;
    let spectrum = walsh_fast(field, &f)?;
    if !spectrum.is_bent_spectrum() {
        return Err(SpectrumError::NotBent);
    }
    let q = 1u64 << (n / 2);
    let sign = if spectrum.chi_zero() > 0 {
        Sign::Plus
    } else {
        Sign::Minus
    };
    let plus_case = gcd_u64(i, q + 1) == 1;
    let minus_case = gcd_u64(i, q - 1) == 1;
    if (sign == Sign::Plus) != plus_case || (sign == Sign::Minus) != minus_case {
        return Err(SpectrumError::SignProposition(i));
    }
    Ok(sign)
}
