//! Arithmetic in the prime field GF(p) for odd primes p below 2^31.
//!
//! Elements are plain `u32` values in `[0, p)`; the field itself is a small
//! copyable descriptor holding the modulus.  All operations are exact.
//! Multiplication reduces by a precomputed Barrett factor instead of a
//! hardware division; inversion uses the extended Euclidean algorithm.
//! Primality of the modulus is checked on construction by trial division,
//! which is cheap for the 31-bit range supported here.

use thiserror::Error;

/// Errors arising when constructing a [`PrimeField`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    /// The requested modulus is not a prime number.
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    /// The modulus is outside the supported range of odd primes below 2^31.
    #[error("modulus {0} out of range: need an odd prime below 2^31")]
    OutOfRange(u64),
}

/// The finite field GF(p) for an odd prime p < 2^31.
///
/// The struct is tiny and `Copy`; pass it by value.  Field elements are
/// `u32` values already reduced into `[0, p)`.  Operations assume their
/// inputs are reduced and guarantee reduced outputs.
#[derive(Debug, Clone, Copy)]
pub struct PrimeField {
    p: u32,
    /// Barrett factor `floor(2^64 / p)`, fixed by `p`.
    barrett: u64,
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

impl std::hash::Hash for PrimeField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p.hash(state);
    }
}

impl PrimeField {
    /// Constructs GF(p), validating that `p` is an odd prime below 2^31.
    pub fn new(p: u64) -> Result<Self, GfError> {
        if p < 3 || p >= (1 << 31) || p % 2 == 0 {
            return Err(GfError::OutOfRange(p));
        }
        if !is_prime_odd(p) {
            return Err(GfError::NotPrime(p));
        }
        Ok(PrimeField {
            p: p as u32,
            // floor(2^64 / p); equals floor((2^64 - 1) / p) because the odd
            // prime p never divides 2^64.
            barrett: u64::MAX / p,
        })
    }

    /// The field characteristic.
    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// Additive identity.
    #[inline]
    pub fn zero(self) -> u32 {
        0
    }

    /// Multiplicative identity.
    #[inline]
    pub fn one(self) -> u32 {
        1
    }

    /// Reduces an arbitrary signed integer into `[0, p)`.
    #[inline]
    pub fn from_i64(self, x: i64) -> u32 {
        let p = self.p as i64;
        let r = x % p;
        (if r < 0 { r + p } else { r }) as u32
    }

    /// Reduces an arbitrary `i128` into `[0, p)`.
    #[inline]
    pub fn from_i128(self, x: i128) -> u32 {
        let p = self.p as i128;
        let r = x % p;
        (if r < 0 { r + p } else { r }) as u32
    }

    /// Lifts an element to the symmetric range `(-p/2, p/2]`.
    ///
    /// Used by the canonical printer so that e.g. `p - 1` displays as `-1`.
    #[inline]
    pub fn lift_symmetric(self, a: u32) -> i64 {
        debug_assert!(a < self.p);
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// `a + b (mod p)`.
    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.p && b < self.p);
        let s = a + b; // p < 2^31, so no u32 overflow
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    /// `a - b (mod p)`.
    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.p && b < self.p);
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    /// `-a (mod p)`.
    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        debug_assert!(a < self.p);
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// `a * b (mod p)`.
    ///
    /// Barrett reduction: with `m = floor(2^64/p)` and `x < 2^64`, the
    /// estimate `q = floor(x·m / 2^64)` is `floor(x/p)` or one less, so a
    /// single conditional subtraction completes the reduction.
    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.p && b < self.p);
        let x = a as u64 * b as u64;
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p as u64;
        if r >= self.p as u64 {
            r -= self.p as u64;
        }
        debug_assert!(r == x % self.p as u64);
        r as u32
    }

    /// `a^-1 (mod p)` via the extended Euclidean algorithm.
    ///
    /// Panics if `a == 0`.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "attempted to invert 0 in GF({})", self.p);
        debug_assert!(a < self.p);
        // Invariant: t * a == r (mod p) throughout.
        let (mut t, mut new_t): (i64, i64) = (0, 1);
        let (mut r, mut new_r): (i64, i64) = (self.p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert!(r == 1, "gcd(a, p) != 1: p not prime?");
        self.from_i64(t)
    }

    /// `a / b (mod p)`.  Panics if `b == 0`.
    #[inline]
    pub fn div(self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    /// `a^e (mod p)` by binary exponentiation; `pow(0, 0) == 1`.
    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        debug_assert!(a < self.p);
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Dot product of two equal-length coefficient slices.
    ///
    /// Uses a lazily reduced `u64` accumulator: products are summed without
    /// intermediate reductions and folded modulo p only every `chunk` terms,
    /// where `chunk` is the largest number of worst-case products that fit
    /// in a `u64` alongside a reduced carry.
    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        assert_eq!(a.len(), b.len(), "dot product length mismatch");
        let p = self.p as u64;
        let max_term = (p - 1) * (p - 1);
        let chunk = ((u64::MAX - (p - 1)) / max_term).max(1) as usize;
        let mut acc: u64 = 0;
        for (ca, cb) in a.chunks(chunk).zip(b.chunks(chunk)) {
            for (&x, &y) in ca.iter().zip(cb.iter()) {
                acc += x as u64 * y as u64;
            }
            acc %= p;
        }
        acc as u32
    }
}

/// Trial-division primality test for odd `n >= 3`.
fn is_prime_odd(n: u64) -> bool {
    debug_assert!(n >= 3 && n % 2 == 1);
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
