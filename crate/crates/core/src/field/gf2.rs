//! Polynomials over GF(2) packed into `u64` bitmasks (bit k = coefficient of X^k).
//!
//! This is the bootstrap layer: it knows nothing about extension fields and is
//! used to pick and validate reduction polynomials.

/// Carryless (XOR) product of two bitmask polynomials.
///
/// The combined degree must stay below 64.
pub fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    acc
}

/// Degree of a nonzero bitmask polynomial.
pub fn degree(p: u64) -> u32 {
    debug_assert!(p != 0);
    63 - p.leading_zeros()
}

/// Remainder of `a` modulo `m` (m nonzero).
pub fn poly_rem(a: u64, m: u64) -> u64 {
    debug_assert!(m != 0);
    let dm = degree(m);
    let mut r = a;
    while r != 0 && degree(r) >= dm {
        r ^= m << (degree(r) - dm);
    }
    r
}

/// Polynomial gcd of two bitmasks, not both zero.
pub fn poly_gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// X^(2^k) mod m, computed by repeated squaring of the residue.
fn pow_x_2k_mod(k: u32, m: u64) -> u64 {
    let mut r = poly_rem(0b10, m);
    for _ in 0..k {
        r = poly_rem(clmul(r, r), m);
    }
    r
}

/// Irreducibility over GF(2) via the Rabin test: P of degree n is irreducible
/// iff X^(2^n) = X (mod P) and gcd(X^(2^(n/p)) - X, P) = 1 for every prime p | n.
pub fn is_irreducible(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let n = degree(p);
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = 0b10u64;
    if pow_x_2k_mod(n, p) != poly_rem(x, p) {
        return false;
    }
    let mut rem = n;
    let mut q = 2;
    while q * q <= rem {
        if rem % q == 0 {
            let h = pow_x_2k_mod(n / q, p) ^ poly_rem(x, p);
            if h == 0 || degree(poly_gcd(p, h)) > 0 {
                return false;
            }
            while rem % q == 0 {
                rem /= q;
            }
        }
        q += 1;
    }
    if rem > 1 {
        let h = pow_x_2k_mod(n / rem, p) ^ poly_rem(x, p);
        if h == 0 || degree(poly_gcd(p, h)) > 0 {
            return false;
        }
    }
    true
}

/// Lexicographically least irreducible polynomial of each degree 1..=32,
/// indexed by degree (entry 0 unused). Verified against root search and a
/// below-mask rescan in the test suite.
pub const DEFAULT_POLYS: [u64; 33] = [
    0,
    0x2,         // X
    0x7,         // X^2+X+1
    0xb,         // X^3+X+1
    0x13,        // X^4+X+1
    0x25,        // X^5+X^2+1
    0x43,        // X^6+X+1
    0x83,        // X^7+X+1
    0x11b,       // X^8+X^4+X^3+X+1
    0x203,       // X^9+X+1
    0x409,       // X^10+X^3+1
    0x805,       // X^11+X^2+1
    0x1009,      // X^12+X^3+1
    0x201b,      // X^13+X^4+X^3+X+1
    0x4021,      // X^14+X^5+1
    0x8003,      // X^15+X+1
    0x1002b,     // X^16+X^5+X^3+X+1
    0x20009,     // X^17+X^3+1
    0x40009,     // X^18+X^3+1
    0x80027,     // X^19+X^5+X^2+X+1
    0x100009,    // X^20+X^3+1
    0x200005,    // X^21+X^2+1
    0x400003,    // X^22+X+1
    0x800021,    // X^23+X^5+1
    0x100001b,   // X^24+X^4+X^3+X+1
    0x2000009,   // X^25+X^3+1
    0x400001b,   // X^26+X^4+X^3+X+1
    0x8000027,   // X^27+X^5+X^2+X+1
    0x10000003,  // X^28+X+1
    0x20000005,  // X^29+X^2+1
    0x40000003,  // X^30+X+1
    0x80000009,  // X^31+X^3+1
    0x10000008d, // X^32+X^7+X^3+X^2+1
];
