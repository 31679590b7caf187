//! Sparse multivariate polynomials over F_p.
//!
//! Terms are kept sorted in descending monomial order with no zero
//! coefficients, so equality is structural and the leading term is `terms[0]`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::field;
use crate::algebra::monomial::{Monomial, EXPONENT_LIMIT};
use crate::algebra::ring::{same_ring, Ring};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Self {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let c = field::reduce_i64(c, ring.p());
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    /// The variable with the given index.
    pub fn var(ring: &Ring, index: usize) -> Result<Self> {
        if index >= ring.nvars() {
            return Err(Error::BadIndex(format!(
                "variable {index} in a ring with {} variables",
                ring.nvars()
            )));
        }
        Ok(Self::monomial(
            ring,
            Monomial::variable(ring.nvars(), index, 1),
            1,
        ))
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: u32) -> Self {
        let c = c % ring.p();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zeros.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let p = ring.p();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let slot = acc.entry(m).or_insert(0);
            *slot = field::add(*slot, c % p, p);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, u32>) -> Self {
        let order = ring.order();
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        terms.sort_unstable_by(|a, b| order.cmp(&b.0, &a.0));
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms already sorted descending, distinct, nonzero.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|&(_, c)| c != 0 && c < ring.p()));
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<(Monomial, u32)> {
        self.terms.first().copied()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Bit mask of variables occurring in some term.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support())
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        let order = self.ring.order();
        self.terms
            .binary_search_by(|(t, _)| order.cmp(m, t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, 1, &Monomial::one(self.ring.nvars())))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let p = self.ring.p();
        Ok(self.add_scaled(other, field::neg(1, p), &Monomial::one(self.ring.nvars())))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let bound = self.total_degree_per_var();
        let other_bound = other.total_degree_per_var();
        if bound
            .iter()
            .zip(&other_bound)
            .any(|(a, b)| a + b >= EXPONENT_LIMIT)
        {
            return Err(Error::Overflow("product exponent too large".into()));
        }
        Ok(self.mul_unchecked(other))
    }

    fn total_degree_per_var(&self) -> Vec<u64> {
        let n = self.ring.nvars();
        let mut out = vec![0u64; n];
        for (m, _) in &self.terms {
            for (i, slot) in out.iter_mut().enumerate() {
                *slot = (*slot).max(m.exponent(i) as u64);
            }
        }
        out
    }

    /// `self + c * m * other`, merging the two sorted term lists.
    pub(crate) fn add_scaled(&self, other: &Polynomial, c: u32, m: &Monomial) -> Polynomial {
        let p = self.ring.p();
        let order = self.ring.order();
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            let bm = b[j].0.mul(m);
            match order.cmp(&a[i].0, &bm) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, field::mul(b[j].1, c, p)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = field::add(a[i].1, field::mul(b[j].1, c, p), p);
                    if s != 0 {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(bm, bc)| (bm.mul(m), field::mul(bc, c, p))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            return self.mul_term(other.terms[0].1, &other.terms[0].0);
        }
        if self.terms.len() == 1 {
            return other.mul_term(self.terms[0].1, &self.terms[0].0);
        }
        let p = self.ring.p() as u64;
        let mut acc: HashMap<Monomial, u64> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let slot = acc.entry(ma.mul(mb)).or_insert(0);
                *slot = (*slot + *ca as u64 * *cb as u64) % p;
            }
        }
        Polynomial::from_map(
            &self.ring,
            acc.into_iter().map(|(m, c)| (m, c as u32)).collect(),
        )
    }

    /// `c * m * self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, c: u32, m: &Monomial) -> Polynomial {
        let p = self.ring.p();
        let c = c % p;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, tc)| (t.mul(m), field::mul(*tc, c, p)))
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        self.mul_term(c, &Monomial::one(self.ring.nvars()))
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(field::inv(c, self.ring.p()).expect("nonzero")),
        }
    }

    /// `self^n` by repeated squaring, with an overflow check on the result.
    pub fn pow(&self, n: u64) -> Result<Polynomial> {
        let degs = self.total_degree_per_var();
        if degs.iter().any(|&d| d.saturating_mul(n) >= EXPONENT_LIMIT) {
            return Err(Error::Overflow(format!("power {n} too large")));
        }
        // Expand n in base p and use Frobenius on each digit.
        let p = self.ring.p() as u64;
        let mut acc = Polynomial::one(&self.ring);
        let mut rest = n;
        let mut level = 0u32;
        while rest > 0 {
            let digit = rest % p;
            if digit > 0 {
                let mut piece = self.pow_small(digit);
                piece = piece.frobenius_scale(p.pow(level))?;
                acc = acc.mul_unchecked(&piece);
            }
            rest /= p;
            level += 1;
        }
        Ok(acc)
    }

    fn pow_small(&self, n: u64) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Maps every term `c x^a` to `c x^{q a}`. For q a power of p this is
    /// `self^q`, since coefficients in F_p are fixed by Frobenius.
    fn frobenius_scale(&self, q: u64) -> Result<Polynomial> {
        if q == 1 {
            return Ok(self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.checked_scale(q)?, *c)))
            .collect::<Result<Vec<_>>>()?;
        // scaling all exponents by q preserves every supported order
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// `self^(p^e)` computed by exponent scaling.
    pub fn pow_charp(&self, e: u32) -> Result<Polynomial> {
        let q = (self.ring.p() as u64)
            .checked_pow(e)
            .filter(|&q| q < EXPONENT_LIMIT)
            .ok_or_else(|| Error::Overflow(format!("p^{e} too large")))?;
        self.frobenius_scale(q)
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial> {
        if index >= self.ring.nvars() {
            return Err(Error::BadIndex(format!(
                "variable {index} in a ring with {} variables",
                self.ring.nvars()
            )));
        }
        let p = self.ring.p();
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(index);
            let coeff = field::mul(*c, e % p, p);
            if coeff == 0 {
                return None;
            }
            let mut dm = *m;
            dm.set_exponent(index, e - 1);
            Some((dm, coeff))
        });
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// The unique decomposition `self = sum_a g_a^(p^e) x^a` with every
    /// component of `a` below `p^e`. Only nonzero `g_a` are returned.
    pub fn pe_decompose(&self, e: u32) -> Result<BTreeMap<Vec<u32>, Polynomial>> {
        if e == 0 {
            return Err(Error::Invalid("pe_decompose needs e >= 1".into()));
        }
        let q = (self.ring.p() as u64)
            .checked_pow(e)
            .filter(|&q| q < EXPONENT_LIMIT)
            .ok_or_else(|| Error::Overflow(format!("p^{e} too large")))? as u32;
        let n = self.ring.nvars();
        let mut parts: BTreeMap<Vec<u32>, Vec<(Monomial, u32)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rem = vec![0u32; n];
            let mut quot = Monomial::one(n);
            for (i, r) in rem.iter_mut().enumerate() {
                *r = m.exponent(i) % q;
                quot.set_exponent(i, m.exponent(i) / q);
            }
            parts.entry(rem).or_default().push((quot, *c));
        }
        // dividing exponents by q keeps the relative order within one residue class
        Ok(parts
            .into_iter()
            .map(|(a, terms)| {
                let poly = Polynomial::from_terms(&self.ring, terms);
                (a, poly)
            })
            .collect())
    }

    /// Drops every term divisible by one of `gens`: reduction modulo a
    /// monomial ideal.
    pub fn truncate(&self, gens: &[Monomial]) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !gens.iter().any(|g| g.divides(m)))
                .copied()
                .collect(),
        }
    }

    /// `self^n` reduced modulo the monomial ideal generated by `gens`,
    /// truncating after every multiplication.
    pub fn pow_truncated(&self, n: u64, gens: &[Monomial]) -> Result<Polynomial> {
        let p = self.ring.p() as u64;
        let base = self.truncate(gens);
        let mut acc = Polynomial::one(&self.ring).truncate(gens);
        let mut rest = n;
        let mut level = 0u32;
        while rest > 0 && !acc.is_zero() {
            let digit = rest % p;
            if digit > 0 {
                let mut piece = Polynomial::one(&self.ring);
                for _ in 0..digit {
                    piece = piece.mul_unchecked(&base).truncate(gens);
                }
                let q = p
                    .checked_pow(level)
                    .ok_or_else(|| Error::Overflow("power too large".into()))?;
                let piece = piece.frobenius_scale(q)?.truncate(gens);
                acc = acc.mul_unchecked(&piece).truncate(gens);
            }
            rest /= p;
            level += 1;
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `i + shift` (the first `shift` variables of `target` unused).
    pub(crate) fn embed(&self, target: &Ring, shift: usize) -> Polynomial {
        let n = target.nvars();
        Polynomial::from_terms(target, self.terms.iter().map(|(m, c)| (m.embed(n, shift), *c)))
    }

    /// Inverse of [`embed`](Self::embed); the first `shift` variables must not
    /// occur.
    pub(crate) fn project(&self, target: &Ring, shift: usize) -> Polynomial {
        let n = target.nvars();
        Polynomial::from_terms(target, self.terms.iter().map(|(m, c)| (m.project(n, shift), *c)))
    }

    /// Same polynomial, re-sorted for a ring that differs only in its order.
    pub fn reorder(&self, target: &Ring) -> Polynomial {
        Polynomial::from_terms(target, self.terms.iter().copied())
    }

    /// Exact quotient by `divisor`; `None` if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = divisor.leading_term()?;
        let p = self.ring.p();
        let lc_inv = field::inv(lc, p).ok()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = field::mul(c, lc_inv, p);
            quot.push((qm, qc));
            rem = rem.add_scaled(divisor, field::neg(qc, p), &qm);
        }
        Some(Polynomial::from_terms(&self.ring, quot))
    }
}

/// Exact product of two polynomials in the same ring.
pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    a.checked_mul(b)
}

/// `f^(p^e)` by exponent scaling.
pub fn poly_pow_charp(f: &Polynomial, e: u32) -> Result<Polynomial> {
    f.pow_charp(e)
}

pub fn partial_derivative(f: &Polynomial, var_index: usize) -> Result<Polynomial> {
    f.partial_derivative(var_index)
}

pub fn pe_decompose(f: &Polynomial, e: u32) -> Result<BTreeMap<Vec<u32>, Polynomial>> {
    f.pe_decompose(e)
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch or overflow in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.ring.p() - 1)
    }
}

/// Formats a monomial with the ring's variable names (`1` for the empty one).
pub fn format_monomial(ring: &Ring, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, name) in ring.vars().iter().enumerate() {
        match m.exponent(i) {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let p = self.ring.p();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = field::symmetric(*c, p);
            let (sign, mag) = if s < 0 { ("-", -s) } else { ("+", s) };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{}", format_monomial(&self.ring, m))?;
            } else {
                write!(f, "{mag}*{}", format_monomial(&self.ring, m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::MonomialOrder;
    use crate::algebra::ring::RingSpec;

    fn ring(p: u64, vars: &[&str]) -> Ring {
        RingSpec::new(
            p,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    fn v(r: &Ring, i: usize) -> Polynomial {
        Polynomial::var(r, i).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    #[test]
    fn mul_examples() {
        let r = ring(7, &["x", "y"]);
        let (x, y) = (v(&r, 0), v(&r, 1));
        let prod = poly_mul(&(&x + &y), &(&x - &y)).unwrap();
        assert_eq!(prod, &(&x * &x) - &(&y * &y));

        let r2 = ring(2, &["x", "y"]);
        let (x, y) = (v(&r2, 0), v(&r2, 1));
        let s = &x + &y;
        assert_eq!(&s * &s, &(&x * &x) + &(&y * &y));

        let r3 = ring(3, &["x"]);
        let x = v(&r3, 0);
        let zero = Polynomial::zero(&r3);
        assert!(poly_mul(&(&x + &Polynomial::one(&r3)), &zero).unwrap().is_zero());
    }

    #[test]
    fn mul_rejects_ring_mismatch() {
        let a = v(&ring(7, &["x"]), 0);
        let b = v(&ring(5, &["x"]), 0);
        assert_eq!(poly_mul(&a, &b), Err(Error::RingMismatch));
    }

    #[test]
    fn charp_power_examples() {
        let r = ring(7, &["x", "y"]);
        let f = &v(&r, 0) + &v(&r, 1);
        let expected = Polynomial::from_terms(&r, [(mono(&[7, 0]), 1), (mono(&[0, 7]), 1)]);
        assert_eq!(poly_pow_charp(&f, 1).unwrap(), expected);
        assert_eq!(poly_pow_charp(&f, 0).unwrap(), f);

        let r2 = ring(2, &["x", "y", "z"]);
        let f = &(&v(&r2, 0) + &v(&r2, 1)) + &v(&r2, 2);
        let expected = Polynomial::from_terms(
            &r2,
            [(mono(&[4, 0, 0]), 1), (mono(&[0, 4, 0]), 1), (mono(&[0, 0, 4]), 1)],
        );
        assert_eq!(poly_pow_charp(&f, 2).unwrap(), expected);
    }

    #[test]
    fn charp_power_overflow() {
        let r = ring(7, &["x"]);
        let f = Polynomial::monomial(&r, mono(&[1 << 20]), 1);
        assert!(matches!(poly_pow_charp(&f, 4), Err(Error::Overflow(_))));
    }

    #[test]
    fn derivative_examples() {
        let r = ring(7, &["x0", "x1", "x2", "x3"]);
        let f = Polynomial::from_terms(
            &r,
            [
                (mono(&[2, 0, 0, 0]), 1),
                (mono(&[0, 6, 2, 0]), 6),
                (mono(&[0, 0, 0, 3]), 1),
            ],
        );
        assert_eq!(
            partial_derivative(&f, 0).unwrap(),
            Polynomial::monomial(&r, mono(&[1, 0, 0, 0]), 2)
        );
        // -6 = 1 mod 7
        assert_eq!(
            partial_derivative(&f, 1).unwrap(),
            Polynomial::monomial(&r, mono(&[0, 5, 2, 0]), 1)
        );
        let r3 = ring(3, &["x"]);
        let cube = Polynomial::monomial(&r3, mono(&[3]), 1);
        assert!(partial_derivative(&cube, 0).unwrap().is_zero());
        assert!(matches!(partial_derivative(&cube, 1), Err(Error::BadIndex(_))));
    }

    #[test]
    fn decompose_examples() {
        let r = ring(2, &["x", "y"]);
        let f = Polynomial::from_terms(&r, [(mono(&[2, 0]), 1), (mono(&[1, 1]), 1)]);
        let parts = pe_decompose(&f, 1).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&vec![0, 0]], v(&r, 0));
        assert_eq!(parts[&vec![1, 1]], Polynomial::one(&r));

        let r3 = ring(3, &["x"]);
        let parts = pe_decompose(&Polynomial::monomial(&r3, mono(&[4]), 1), 1).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&vec![1]], v(&r3, 0));

        assert!(pe_decompose(&Polynomial::zero(&r), 1).unwrap().is_empty());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let r = ring(3, &["x", "y"]);
        let f = &(&v(&r, 0) + &v(&r, 1).scale(2)) + &Polynomial::one(&r);
        let mut naive = Polynomial::one(&r);
        for k in 0..=11u64 {
            assert_eq!(f.pow(k).unwrap(), naive, "k={k}");
            naive = &naive * &f;
        }
    }

    #[test]
    fn truncated_power_agrees_with_full_power() {
        let r = ring(3, &["x", "y"]);
        let f = &(&v(&r, 0) + &v(&r, 1)) + &(&v(&r, 0) * &v(&r, 1));
        let gens = [mono(&[9, 0]), mono(&[0, 9])];
        let full = f.pow(8).unwrap().truncate(&gens);
        assert_eq!(f.pow_truncated(8, &gens).unwrap(), full);
    }

    #[test]
    fn exact_division() {
        let r = ring(5, &["x", "y"]);
        let a = &v(&r, 0) + &v(&r, 1);
        let b = &v(&r, 0) - &Polynomial::one(&r);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert!((&prod + &Polynomial::one(&r)).exact_div(&b).is_none());
    }

    #[test]
    fn display_uses_symmetric_coefficients() {
        let r = ring(7, &["x0", "x1", "x2", "x3"]);
        let f = Polynomial::from_terms(
            &r,
            [
                (mono(&[2, 0, 0, 0]), 1),
                (mono(&[0, 6, 2, 0]), 6),
                (mono(&[0, 0, 0, 3]), 1),
            ],
        );
        assert_eq!(f.to_string(), "-x1^6*x2^2 + x3^3 + x0^2");
    }
}
