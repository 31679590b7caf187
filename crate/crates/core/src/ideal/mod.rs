//! Ideals of `F_p[x]`: Groebner bases, membership, intersection, colon,
//! length and dimension.

pub mod cache;
mod groebner;
mod quotient;

use std::fmt;
use std::sync::Arc;

use crate::algebra::monomial::{Monomial, MonomialOrder};
use crate::algebra::poly::Polynomial;
use crate::algebra::ring::{same_ring, Ring};
use crate::error::{Error, Result};

pub(crate) use groebner::reduce_by;
pub use quotient::{
    colon_length, count_standard_monomials, quotient_mult_kernel, quotient_mult_kernel_with_cap,
    QuotientBasis, DEFAULT_QUOTIENT_CAP,
};

/// An ideal given by generators, optionally carrying its reduced Groebner
/// basis for the ring's monomial order.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    gb: Option<Arc<[Polynomial]>>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Ideal> {
        if generators.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: None,
        })
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::from_reduced_gb(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::from_reduced_gb(ring, vec![Polynomial::one(ring)])
    }

    /// The homogeneous maximal ideal generated by all variables.
    pub fn maximal(ring: &Ring) -> Ideal {
        let mut gens: Vec<Polynomial> = (0..ring.nvars())
            .map(|i| Polynomial::var(ring, i).expect("in range"))
            .collect();
        sort_descending(&mut gens, ring.order());
        Ideal::from_reduced_gb(ring, gens)
    }

    /// Ideal generated by the given monomials.
    pub fn monomial(ring: &Ring, monomials: &[Monomial]) -> Result<Ideal> {
        let gens = monomials
            .iter()
            .map(|m| {
                if m.nvars() != ring.nvars() {
                    return Err(Error::BadIndex(format!(
                        "monomial with {} variables in a ring with {}",
                        m.nvars(),
                        ring.nvars()
                    )));
                }
                Ok(Polynomial::monomial(ring, *m, 1))
            })
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    /// Wraps a basis known to be the reduced Groebner basis.
    pub(crate) fn from_reduced_gb(ring: &Ring, gb: Vec<Polynomial>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators: gb.clone(),
            gb: Some(gb.into()),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Cached reduced Groebner basis, if computed.
    pub fn gb(&self) -> Option<&[Polynomial]> {
        self.gb.as_deref()
    }

    /// This ideal with its reduced Groebner basis attached.
    pub fn with_gb(&self) -> Result<Ideal> {
        groebner_basis(self)
    }

    fn basis(&self) -> Result<Arc<[Polynomial]>> {
        match &self.gb {
            Some(gb) => Ok(gb.clone()),
            None => Ok(groebner_basis(self)?.gb.expect("just computed")),
        }
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> Result<bool> {
        let gb = self.basis()?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    /// Every generator is a single term.
    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(|g| g.len() == 1)
    }

    /// Every generator vanishes at the origin, i.e. the ideal lies in the
    /// homogeneous maximal ideal.
    pub fn in_maximal(&self) -> bool {
        self.generators.iter().all(|g| g.constant_term() == 0)
    }

    /// Leading monomials of the reduced Groebner basis.
    pub fn leading_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self
            .basis()?
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero"))
            .collect())
    }

    pub fn contains(&self, g: &Polynomial) -> Result<bool> {
        ideal_member(g, self)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let gb = self.basis()?;
        for g in &other.generators {
            if !reduce_by(g, &gb)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, decided by comparing reduced Groebner bases.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(*self.basis()? == *other.basis()?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// The ideal `g * self`.
    pub fn scaled_by(&self, g: &Polynomial) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|h| h.checked_mul(g))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// Generators (the reduced basis when cached) as display strings.
    pub fn to_strings(&self) -> Vec<String> {
        let gens = self.gb.as_deref().unwrap_or(&self.generators);
        gens.iter().map(|g| g.to_string()).collect()
    }

    /// The same ideal in a ring differing only in monomial order.
    pub fn reorder(&self, target: &Ring) -> Ideal {
        Ideal {
            ring: target.clone(),
            generators: self.generators.iter().map(|g| g.reorder(target)).collect(),
            gb: None,
        }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

fn sort_descending(polys: &mut [Polynomial], order: MonomialOrder) {
    polys.sort_by(|a, b| order.cmp(&b.leading_monomial().unwrap(), &a.leading_monomial().unwrap()));
}

/// Attaches the reduced Groebner basis, consulting the on-disk cache when
/// one is installed.
pub fn groebner_basis(ideal: &Ideal) -> Result<Ideal> {
    if ideal.gb.is_some() {
        return Ok(ideal.clone());
    }
    let ring = &ideal.ring;
    let gb = match cache::lookup(ring, &ideal.generators) {
        Some(gb) => gb,
        None => {
            let gb = groebner::buchberger(ring, &ideal.generators)?;
            cache::store(ring, &ideal.generators, &gb);
            gb
        }
    };
    Ok(Ideal {
        ring: ring.clone(),
        generators: ideal.generators.clone(),
        gb: Some(gb.into()),
    })
}

/// Remainder of `g` on division by the cached Groebner basis of `ideal`.
pub fn normal_form(g: &Polynomial, ideal: &Ideal) -> Result<Polynomial> {
    if !same_ring(g.ring(), &ideal.ring) {
        return Err(Error::RingMismatch);
    }
    let gb = ideal.gb.as_ref().ok_or(Error::NeedsGB)?;
    reduce_by(g, gb)
}

pub fn ideal_member(g: &Polynomial, ideal: &Ideal) -> Result<bool> {
    if !same_ring(g.ring(), &ideal.ring) {
        return Err(Error::RingMismatch);
    }
    if g.is_zero() {
        return Ok(true);
    }
    Ok(reduce_by(g, &ideal.basis()?)?.is_zero())
}

/// `I ∩ J` by eliminating `t` from `t*I + (1-t)*J`.
pub fn ideal_intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    if !same_ring(&i.ring, &j.ring) {
        return Err(Error::RingMismatch);
    }
    let ring = &i.ring;
    if i.is_zero_ideal() || j.is_zero_ideal() {
        return Ok(Ideal::zero(ring));
    }
    let ext = ring.with_eliminated_prefix(1)?;
    let t = Polynomial::var(&ext, 0)?;
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens = Vec::new();
    for g in &i.generators {
        gens.push(g.embed(&ext, 1).checked_mul(&t)?);
    }
    for g in &j.generators {
        gens.push(g.embed(&ext, 1).checked_mul(&one_minus_t)?);
    }
    let gb = groebner::buchberger(&ext, &gens)?;
    let projected: Vec<Polynomial> = gb
        .iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponent(0) == 0))
        .map(|g| g.project(ring, 1))
        .collect();
    if ring.order() == MonomialOrder::Grevlex {
        // the elimination order restricts to grevlex, so this is already the
        // reduced basis
        return Ok(Ideal::from_reduced_gb(ring, projected));
    }
    groebner_basis(&Ideal::new(ring, projected)?)
}

/// `(I : g) = {h : h g ∈ I}`. Zero-dimensional `I` with a small enough
/// quotient goes through linear algebra on `R/I`; everything else through
/// intersection with `(g)`.
pub fn ideal_colon(i: &Ideal, g: &Polynomial) -> Result<Ideal> {
    if !same_ring(g.ring(), &i.ring) {
        return Err(Error::RingMismatch);
    }
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let i = i.with_gb()?;
    if i.is_unit()? || g.is_constant() {
        return Ok(i);
    }
    match quotient::colon_zero_dim(&i, g, DEFAULT_QUOTIENT_CAP) {
        Ok(j) => Ok(j),
        Err(Error::NotZeroDim) | Err(Error::TooLarge { .. }) => ideal_colon_groebner(&i, g),
        Err(e) => Err(e),
    }
}

/// Colon through `(I ∩ (g)) / g`, never using the linear-algebra path.
pub fn ideal_colon_groebner(i: &Ideal, g: &Polynomial) -> Result<Ideal> {
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let principal = Ideal::new(&i.ring, vec![g.clone()])?;
    let meet = ideal_intersect(i, &principal)?;
    let gens = meet
        .generators
        .iter()
        .map(|h| {
            h.exact_div(g)
                .ok_or_else(|| Error::Invalid("intersection element not divisible by g".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    groebner_basis(&Ideal::new(&i.ring, gens)?)
}

/// Colon computed by linear algebra on the quotient; requires a
/// zero-dimensional `I` whose quotient fits under `cap`.
pub fn ideal_colon_fast(i: &Ideal, g: &Polynomial, cap: u64) -> Result<Ideal> {
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    quotient::colon_zero_dim(&i.with_gb()?, g, cap)
}

/// `dim_k R/I` for zero-dimensional `I`; the unit ideal has length 0.
pub fn zero_dim_length(i: &Ideal) -> Result<u64> {
    if i.is_unit()? {
        return Ok(0);
    }
    count_standard_monomials(&i.leading_monomials()?, i.ring.nvars())
}

/// Krull dimension of `R/I`: the largest set of variables containing no
/// leading monomial of the Groebner basis in their support.
pub fn krull_dimension(i: &Ideal) -> Result<usize> {
    if i.is_unit()? {
        return Err(Error::UnitIdeal);
    }
    let n = i.ring.nvars();
    let supports: Vec<u32> = i.leading_monomials()?.iter().map(|m| m.support()).collect();
    let mut best = 0;
    for subset in 0u32..(1 << n) {
        let size = subset.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !subset != 0) {
            best = size;
        }
    }
    Ok(best)
}

/// `g ∈ √I`, decided by whether `I + (1 - t g)` is the unit ideal.
pub fn radical_member(g: &Polynomial, i: &Ideal) -> Result<bool> {
    if !same_ring(g.ring(), &i.ring) {
        return Err(Error::RingMismatch);
    }
    let ext = i.ring.with_eliminated_prefix(1)?;
    let t = Polynomial::var(&ext, 0)?;
    let mut gens: Vec<Polynomial> = i.generators.iter().map(|h| h.embed(&ext, 1)).collect();
    gens.push(&Polynomial::one(&ext) - &t.checked_mul(&g.embed(&ext, 1))?);
    let gb = groebner::buchberger(&ext, &gens)?;
    Ok(gb.len() == 1 && gb[0].is_constant())
}
