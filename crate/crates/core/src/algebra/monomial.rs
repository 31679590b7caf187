use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard limit on the number of variables, including the auxiliary variables
/// adjoined internally for elimination.
pub const MAX_VARS: usize = 10;

/// Exponents must stay strictly below this bound.
pub const EXPONENT_LIMIT: u64 = 1 << 31;

/// Monomial orders. `Elimination(k)` compares the total degree in the first
/// `k` variables first (grevlex inside that block), then grevlex on the rest;
/// it is only used for rings created internally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    Grlex,
    Grevlex,
    Elimination(u8),
}

impl MonomialOrder {
    pub fn name(self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Grlex => "grlex".into(),
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Elimination(k) => format!("elim{k}"),
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" => Ok(MonomialOrder::Grlex),
            "grevlex" => Ok(MonomialOrder::Grevlex),
            other => Err(Error::BadOrder(other.to_string())),
        }
    }

    /// Total order on monomials with the same number of variables.
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = a.n as usize;
        match self {
            MonomialOrder::Lex => lex(&a.exps[..n], &b.exps[..n]),
            MonomialOrder::Grlex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| lex(&a.exps[..n], &b.exps[..n])),
            MonomialOrder::Grevlex => grevlex(&a.exps[..n], &b.exps[..n]),
            MonomialOrder::Elimination(k) => {
                let k = (k as usize).min(n);
                grevlex(&a.exps[..k], &b.exps[..k])
                    .then_with(|| grevlex(&a.exps[k..n], &b.exps[k..n]))
            }
        }
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            match x.cmp(y) {
                Ordering::Equal => continue,
                other => return other.reverse(),
            }
        }
        Ordering::Equal
    })
}

/// Compares two exponent vectors under `order`.
pub fn monomial_compare(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    if a.n != b.n {
        return Err(Error::BadIndex(format!(
            "monomials have {} and {} variables",
            a.n, b.n
        )));
    }
    Ok(order.cmp(a, b))
}

/// Exponent vector of a monomial in at most [`MAX_VARS`] variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u32; MAX_VARS],
    n: u8,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        debug_assert!(n <= MAX_VARS);
        Self {
            exps: [0; MAX_VARS],
            n: n as u8,
        }
    }

    pub fn new(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVars(exps.len()));
        }
        let mut m = Self::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            if e as u64 >= EXPONENT_LIMIT {
                return Err(Error::Overflow(format!("exponent {e} too large")));
            }
            m.exps[i] = e;
        }
        Ok(m)
    }

    pub fn variable(n: usize, index: usize, power: u32) -> Self {
        let mut m = Self::one(n);
        m.exps[index] = power;
        m
    }

    pub fn nvars(&self) -> usize {
        self.n as usize
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps[..self.n as usize]
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub(crate) fn set_exponent(&mut self, i: usize, e: u32) {
        self.exps[i] = e;
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Product; fails loudly on exponent overflow.
    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = *self;
        for i in 0..MAX_VARS {
            let e = self.exps[i] as u64 + other.exps[i] as u64;
            if e >= EXPONENT_LIMIT {
                return Err(Error::Overflow(format!("exponent {e} too large")));
            }
            out.exps[i] = e as u32;
        }
        Ok(out)
    }

    /// Product without the overflow check; callers guarantee bounded degrees.
    #[inline]
    pub(crate) fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] += other.exps[i];
        }
        out
    }

    pub fn checked_scale(&self, factor: u64) -> Result<Monomial> {
        let mut out = *self;
        for i in 0..MAX_VARS {
            let e = self.exps[i] as u64 * factor;
            if e >= EXPONENT_LIMIT {
                return Err(Error::Overflow(format!(
                    "exponent {} times {factor} too large",
                    self.exps[i]
                )));
            }
            out.exps[i] = e as u32;
        }
        Ok(out)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub(crate) fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut out = *other;
        for i in 0..MAX_VARS {
            out.exps[i] -= self.exps[i];
        }
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Bit mask of the variables with positive exponent.
    pub fn support(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Same exponents viewed in a ring with `n` variables, where the first
    /// `shift` variables are new and carry exponent zero.
    pub(crate) fn embed(&self, n: usize, shift: usize) -> Monomial {
        let mut out = Monomial::one(n);
        for i in 0..self.n as usize {
            out.exps[i + shift] = self.exps[i];
        }
        out
    }

    /// Drops the first `shift` variables, which must have exponent zero.
    pub(crate) fn project(&self, n: usize, shift: usize) -> Monomial {
        let mut out = Monomial::one(n);
        for i in 0..n {
            out.exps[i] = self.exps[i + shift];
        }
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    #[test]
    fn compare_examples() {
        // x^2 y vs x y^2 in grevlex
        assert_eq!(
            monomial_compare(&m(&[2, 1]), &m(&[1, 2]), MonomialOrder::Grevlex).unwrap(),
            Ordering::Greater
        );
        // x vs y^3 in lex with x > y
        assert_eq!(
            monomial_compare(&m(&[1, 0]), &m(&[0, 3]), MonomialOrder::Lex).unwrap(),
            Ordering::Greater
        );
        for order in [MonomialOrder::Lex, MonomialOrder::Grlex, MonomialOrder::Grevlex] {
            assert_eq!(
                monomial_compare(&m(&[3, 1, 4]), &m(&[3, 1, 4]), order).unwrap(),
                Ordering::Equal
            );
        }
    }

    #[test]
    fn grevlex_differs_from_grlex() {
        // x z^2 vs y^3? no: classic x y^2... use x^1 z^2 vs y^3 (deg 3 both)
        let a = m(&[1, 0, 2]);
        let b = m(&[0, 3, 0]);
        assert_eq!(MonomialOrder::Grlex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(matches!(
            monomial_compare(&m(&[1]), &m(&[1, 0]), MonomialOrder::Lex),
            Err(Error::BadIndex(_))
        ));
    }

    #[test]
    fn elimination_order_puts_block_first() {
        let order = MonomialOrder::Elimination(1);
        // t * 1 beats any power of x
        assert_eq!(order.cmp(&m(&[1, 0]), &m(&[0, 50])), Ordering::Greater);
        assert_eq!(order.cmp(&m(&[0, 2]), &m(&[0, 1])), Ordering::Greater);
    }

    #[test]
    fn overflow_is_loud() {
        let big = m(&[1 << 30]);
        assert!(big.checked_mul(&big).is_err());
        assert!(big.checked_scale(2).is_err());
        assert!(Monomial::new(&[1 << 31]).is_err());
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0]).is_coprime(&m(&[0, 4])));
    }
}
