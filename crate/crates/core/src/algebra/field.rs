//! Arithmetic in the prime field F_p, with p < 2^16 + 1 so that products of
//! two residues fit comfortably in a `u64`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u32 = 1 << 16;

/// A residue class modulo the prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElement {
    value: u32,
    p: u32,
}

impl FpElement {
    /// Reduces `value` modulo `p`. Negative inputs are reduced to their
    /// non-negative representative.
    pub fn new(value: i64, p: u32) -> Self {
        Self {
            value: reduce_i64(value, p),
            p,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

/// Multiplicative inverse in F_p.
pub fn ff_inv(a: FpElement) -> Result<FpElement> {
    let value = inv(a.value, a.p)?;
    Ok(FpElement { value, p: a.p })
}

#[inline]
pub(crate) fn add(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}


#[inline]
pub(crate) fn neg(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub(crate) fn mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn inv(a: u32, p: u32) -> Result<u32> {
    let a = a % p;
    if a == 0 {
        return Err(Error::DivisionByZero);
    }
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Ok(reduce_i64(t0, p))
}

pub(crate) fn reduce_i64(value: i64, p: u32) -> u32 {
    value.rem_euclid(p as i64) as u32
}

/// Symmetric representative in (-p/2, p/2], used for printing.
pub(crate) fn symmetric(a: u32, p: u32) -> i64 {
    if a as u64 * 2 > p as u64 {
        a as i64 - p as i64
    } else {
        a as i64
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
