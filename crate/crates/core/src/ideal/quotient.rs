//! Linear algebra on finite-dimensional quotients `R/M`.
//!
//! Multiplication by `g` is a linear map on `R/M` whose matrix, in the basis
//! of standard monomials, has roughly `#terms(g)` entries per column. The
//! columns are eliminated in increasing monomial order; a column that reduces
//! to zero yields a kernel element whose leading monomial is that column's
//! monomial and whose tail involves only pivot monomials. Those elements,
//! taken at the minimal non-pivot monomials, together with the basis of `M`
//! form the reduced Groebner basis of `(M : g)`.

use std::collections::HashMap;

use crate::algebra::field;
use crate::algebra::monomial::Monomial;
use crate::algebra::poly::Polynomial;
use crate::algebra::ring::{Ring, RingSpec};
use crate::budget;
use crate::error::{Error, Result};
use crate::ideal::groebner::{reduce_basis, reduce_by};
use crate::ideal::Ideal;

/// Largest quotient dimension handled by the linear-algebra path.
pub const DEFAULT_QUOTIENT_CAP: u64 = 3_000_000;

/// Number of monomials outside the monomial ideal generated by `lms`, in `n`
/// variables. Fails with `NotZeroDim` when some variable has no pure power
/// among the generators.
pub fn count_standard_monomials(lms: &[Monomial], n: usize) -> Result<u64> {
    if lms.iter().any(|m| m.is_one()) {
        return Ok(0);
    }
    for i in 0..n {
        if !lms.iter().any(|m| m.support() == 1 << i) {
            return Err(Error::NotZeroDim);
        }
    }
    let gens: Vec<Vec<u32>> = lms.iter().map(|m| m.exponents().to_vec()).collect();
    Ok(count_rec(&gens))
}

fn count_rec(gens: &[Vec<u32>]) -> u64 {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return 0;
    }
    let k = gens[0].len();
    if k == 0 {
        return 1;
    }
    let pure = |g: &Vec<u32>, i: usize| g.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0));
    if gens.iter().all(|g| g.iter().filter(|&&e| e > 0).count() == 1) {
        return (0..k)
            .map(|i| {
                gens.iter()
                    .filter(|g| pure(g, i))
                    .map(|g| g[i] as u64)
                    .min()
                    .unwrap_or(0)
            })
            .fold(1u64, |acc, d| acc.saturating_mul(d));
    }
    let d = gens
        .iter()
        .filter(|g| pure(g, 0))
        .map(|g| g[0])
        .min()
        .expect("zero-dimensional");
    // the slice at x0^a only changes when a crosses a generator's x0-exponent
    let mut cuts: Vec<u32> = gens.iter().map(|g| g[0]).filter(|&e| e < d).collect();
    cuts.push(d);
    cuts.sort_unstable();
    cuts.dedup();
    let mut total = 0u64;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let slice: Vec<Vec<u32>> = gens
            .iter()
            .filter(|g| g[0] <= a)
            .map(|g| g[1..].to_vec())
            .collect();
        total = total.saturating_add(count_rec(&slice).saturating_mul((b - a) as u64));
    }
    total
}

enum Lookup {
    /// Modulus generated by pure powers `x_i^{dims[i]}`; `pos` maps the
    /// mixed-radix index to the position in sorted order.
    Box { dims: Vec<u32>, pos: Vec<u32> },
    Map(HashMap<Monomial, u32>),
}

/// The standard monomials of a zero-dimensional ideal, sorted increasingly
/// in the ring's monomial order.
pub struct QuotientBasis {
    modulus: Ideal,
    standard: Vec<Monomial>,
    lookup: Lookup,
    monomial: bool,
}

impl QuotientBasis {
    pub fn new(modulus: &Ideal) -> Result<QuotientBasis> {
        Self::with_cap(modulus, DEFAULT_QUOTIENT_CAP)
    }

    pub fn with_cap(modulus: &Ideal, cap: u64) -> Result<QuotientBasis> {
        let modulus = modulus.with_gb()?;
        let ring = modulus.ring().clone();
        let n = ring.nvars();
        let lms = modulus.leading_monomials()?;
        let length = count_standard_monomials(&lms, n)?;
        if length > cap {
            return Err(Error::TooLarge { length, cap });
        }
        let monomial = modulus.gb().expect("computed").iter().all(|g| g.len() == 1);
        let is_box = monomial && lms.iter().all(|m| m.support().count_ones() == 1);

        let mut standard = Vec::with_capacity(length as usize);
        if length > 0 {
            enumerate_staircase(&lms, n, &mut standard)?;
        }
        let order = ring.order();
        standard.sort_unstable_by(|a, b| order.cmp(a, b));

        let lookup = if is_box {
            let mut dims = vec![0u32; n];
            for m in &lms {
                let i = m.support().trailing_zeros() as usize;
                dims[i] = m.exponent(i);
            }
            let mut pos = vec![0u32; standard.len()];
            for (k, m) in standard.iter().enumerate() {
                pos[radix(&dims, m)] = k as u32;
            }
            Lookup::Box { dims, pos }
        } else {
            Lookup::Map(
                standard
                    .iter()
                    .enumerate()
                    .map(|(k, m)| (*m, k as u32))
                    .collect(),
            )
        };
        Ok(QuotientBasis {
            modulus,
            standard,
            lookup,
            monomial,
        })
    }

    pub fn modulus(&self) -> &Ideal {
        &self.modulus
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn len(&self) -> usize {
        self.standard.len()
    }

    pub fn is_empty(&self) -> bool {
        self.standard.is_empty()
    }

    /// Position of a standard monomial; `None` for monomials in the modulus.
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        match &self.lookup {
            Lookup::Box { dims, pos } => {
                if dims.iter().enumerate().all(|(i, &d)| m.exponent(i) < d) {
                    Some(pos[radix(dims, m)] as usize)
                } else {
                    None
                }
            }
            Lookup::Map(map) => map.get(m).map(|&k| k as usize),
        }
    }

    fn ring(&self) -> &Ring {
        self.modulus.ring()
    }

    /// Coordinates of `g * b` modulo the modulus, ascending by position.
    fn image(&self, g: &Polynomial, b: &Monomial) -> Result<Vec<(u32, u32)>> {
        let mut out: Vec<(u32, u32)> = if self.monomial {
            g.terms()
                .iter()
                .filter_map(|(t, c)| self.index_of(&t.mul(b)).map(|k| (k as u32, *c)))
                .collect()
        } else {
            let prod = g.mul_term(1, b);
            let nf = reduce_by(&prod, self.modulus.gb().expect("computed"))?;
            nf.terms()
                .iter()
                .map(|(m, c)| (self.index_of(m).expect("normal form is standard") as u32, *c))
                .collect()
        };
        out.sort_unstable_by_key(|e| e.0);
        Ok(out)
    }

    fn to_poly(&self, v: &[(u32, u32)]) -> Polynomial {
        let terms = v
            .iter()
            .rev()
            .map(|&(k, c)| (self.standard[k as usize], c))
            .collect();
        Polynomial::from_sorted_terms(self.ring(), terms)
    }
}

fn radix(dims: &[u32], m: &Monomial) -> usize {
    let mut idx = 0usize;
    for (i, &d) in dims.iter().enumerate() {
        idx = idx * d as usize + m.exponent(i) as usize;
    }
    idx
}

/// Depth-first walk over the staircase: each monomial is reached along its
/// unique path of nondecreasing variable indices, all of whose prefixes are
/// divisors and therefore standard.
fn enumerate_staircase(lms: &[Monomial], n: usize, out: &mut Vec<Monomial>) -> Result<()> {
    let mut stack = vec![(Monomial::one(n), 0usize)];
    while let Some((m, first)) = stack.pop() {
        out.push(m);
        if out.len() % 65536 == 0 {
            budget::check()?;
        }
        for i in first..n {
            let mut next = m;
            next.set_exponent(i, m.exponent(i) + 1);
            if !lms.iter().any(|l| l.divides(&next)) {
                stack.push((next, i));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Rank,
    Minimal,
    All,
}

struct Elimination {
    rank: u64,
    /// Kernel elements at every non-pivot monomial (mode `All`) or only at
    /// the minimal ones (mode `Minimal`).
    kernel: Vec<Polynomial>,
}

/// `v + s * w` for sparse vectors sorted by position.
fn axpy(v: &[(u32, u32)], w: &[(u32, u32)], s: u32, p: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() && j < w.len() {
        if v[i].0 < w[j].0 {
            out.push(v[i]);
            i += 1;
        } else if v[i].0 > w[j].0 {
            out.push((w[j].0, field::mul(w[j].1, s, p)));
            j += 1;
        } else {
            let c = field::add(v[i].1, field::mul(w[j].1, s, p), p);
            if c != 0 {
                out.push((v[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&v[i..]);
    out.extend(w[j..].iter().map(|&(k, c)| (k, field::mul(c, s, p))));
    out
}

const NO_PIVOT: u32 = u32::MAX;

fn eliminate(qb: &QuotientBasis, g: &Polynomial, mode: Mode) -> Result<Elimination> {
    let p = qb.ring().p();
    let len = qb.len();
    let track = mode != Mode::Rank;
    let mut pivot_of = vec![NO_PIVOT; len];
    let mut stored: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut combos: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut is_pivot_column = vec![false; if track { len } else { 0 }];
    let mut kernel = Vec::new();

    for j in 0..len {
        if j % 1024 == 0 {
            budget::check()?;
        }
        let b = qb.standard[j];
        let mut v = qb.image(g, &b)?;
        let mut h: Vec<(u32, u32)> = if track { vec![(j as u32, 1)] } else { Vec::new() };
        while let Some(&(lead, c)) = v.last() {
            let id = pivot_of[lead as usize];
            if id == NO_PIVOT {
                break;
            }
            let s = field::neg(c, p);
            v = axpy(&v, &stored[id as usize], s, p);
            if track {
                h = axpy(&h, &combos[id as usize], s, p);
            }
        }
        match v.last() {
            Some(&(lead, c)) => {
                let inv = field::inv(c, p).expect("nonzero");
                for e in v.iter_mut() {
                    e.1 = field::mul(e.1, inv, p);
                }
                pivot_of[lead as usize] = stored.len() as u32;
                stored.push(v);
                if track {
                    for e in h.iter_mut() {
                        e.1 = field::mul(e.1, inv, p);
                    }
                    combos.push(h);
                    is_pivot_column[j] = true;
                }
            }
            None => {
                let keep = match mode {
                    Mode::Rank => false,
                    Mode::All => true,
                    Mode::Minimal => (0..b.nvars()).all(|i| {
                        if b.exponent(i) == 0 {
                            return true;
                        }
                        let mut d = b;
                        d.set_exponent(i, b.exponent(i) - 1);
                        is_pivot_column[qb.index_of(&d).expect("divisor is standard")]
                    }),
                };
                if keep {
                    kernel.push(qb.to_poly(&h));
                }
            }
        }
    }
    Ok(Elimination {
        rank: stored.len() as u64,
        kernel,
    })
}

/// Pure-power exponents when the reduced basis is `{x_i^{d_i}}`.
fn box_dims(i: &Ideal) -> Option<Vec<u32>> {
    let gb = i.gb()?;
    let n = i.ring().nvars();
    if gb.len() != n || gb.iter().any(|g| g.len() != 1) {
        return None;
    }
    let mut dims = vec![0u32; n];
    for g in gb {
        let m = g.leading_monomial()?;
        if m.support().count_ones() != 1 {
            return None;
        }
        let k = m.support().trailing_zeros() as usize;
        dims[k] = m.exponent(k);
    }
    Some(dims)
}

/// Splitting of `R/M = R_S/M_S ⊗ k[rest]/(powers)` when `M` is a box and
/// `g` only involves the variables in `S`.
struct Blocks {
    vars: Vec<usize>,
    modulus: Ideal,
    g: Polynomial,
    /// Product of the box sides over the absent variables.
    factor: u64,
    absent: Vec<(usize, u32)>,
}

fn split_blocks(i: &Ideal, g: &Polynomial) -> Option<Blocks> {
    let dims = box_dims(i)?;
    let ring = i.ring();
    let support = g.support();
    let n = ring.nvars();
    let vars: Vec<usize> = (0..n).filter(|&k| support & (1 << k) != 0).collect();
    if vars.is_empty() || vars.len() == n {
        return None;
    }
    let names = vars.iter().map(|&k| ring.vars()[k].clone()).collect();
    let sub = RingSpec::new(ring.p() as u64, names, ring.order()).ok()?;
    let powers = vars
        .iter()
        .enumerate()
        .map(|(s, &k)| Polynomial::monomial(&sub, Monomial::variable(vars.len(), s, dims[k]), 1))
        .collect();
    let modulus = Ideal::new(&sub, powers).ok()?;
    let absent: Vec<(usize, u32)> = (0..n).filter(|k| !vars.contains(k)).map(|k| (k, dims[k])).collect();
    let factor = absent.iter().fold(1u64, |acc, &(_, d)| acc.saturating_mul(d as u64));
    Some(Blocks {
        g: restrict(g, &sub, &vars),
        vars,
        modulus,
        factor,
        absent,
    })
}

fn restrict(g: &Polynomial, sub: &Ring, vars: &[usize]) -> Polynomial {
    let k = vars.len();
    Polynomial::from_terms(
        sub,
        g.terms().iter().map(|(m, c)| {
            let mut r = Monomial::one(k);
            for (s, &v) in vars.iter().enumerate() {
                r.set_exponent(s, m.exponent(v));
            }
            (r, *c)
        }),
    )
}

fn extend(g: &Polynomial, full: &Ring, vars: &[usize]) -> Polynomial {
    let n = full.nvars();
    Polynomial::from_terms(
        full,
        g.terms().iter().map(|(m, c)| {
            let mut r = Monomial::one(n);
            for (s, &v) in vars.iter().enumerate() {
                r.set_exponent(v, m.exponent(s));
            }
            (r, *c)
        }),
    )
}

/// `g` reduced modulo the (Groebner-based) ideal `i`.
fn reduce_mod(i: &Ideal, g: &Polynomial) -> Result<Polynomial> {
    reduce_by(g, i.gb().expect("basis attached"))
}

/// `(I : g)` for zero-dimensional `I` (basis attached) by linear algebra.
pub(crate) fn colon_zero_dim(i: &Ideal, g: &Polynomial, cap: u64) -> Result<Ideal> {
    let ring = i.ring().clone();
    if i.is_unit()? {
        return Ok(i.clone());
    }
    count_standard_monomials(&i.leading_monomials()?, ring.nvars())?;
    let g = reduce_mod(i, g)?;
    if g.is_zero() {
        return Ok(Ideal::unit(&ring));
    }
    if g.is_constant() {
        return Ok(i.clone());
    }
    if let Some(blocks) = split_blocks(i, &g) {
        let inner = colon_zero_dim(&blocks.modulus.with_gb()?, &blocks.g, cap)?;
        let mut gens: Vec<Polynomial> = inner
            .gb()
            .expect("reduced")
            .iter()
            .map(|h| extend(h, &ring, &blocks.vars))
            .collect();
        gens.extend(
            blocks
                .absent
                .iter()
                .map(|&(k, d)| Polynomial::monomial(&ring, Monomial::variable(ring.nvars(), k, d), 1)),
        );
        return Ok(Ideal::from_reduced_gb(&ring, reduce_basis(gens)?));
    }
    let qb = QuotientBasis::with_cap(i, cap)?;
    let elim = eliminate(&qb, &g, Mode::Minimal)?;
    let mut gens = elim.kernel;
    gens.extend(i.gb().expect("basis attached").iter().cloned());
    Ok(Ideal::from_reduced_gb(&ring, reduce_basis(gens)?))
}

/// `λ(R/(I : g))` for zero-dimensional `I`, as the rank of multiplication by
/// `g` on `R/I`. Never builds the colon ideal.
pub fn colon_length(i: &Ideal, g: &Polynomial, cap: u64) -> Result<u64> {
    if g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let i = i.with_gb()?;
    if i.is_unit()? {
        return Ok(0);
    }
    let n = i.ring().nvars();
    let total = count_standard_monomials(&i.leading_monomials()?, n)?;
    let g = reduce_mod(&i, g)?;
    if g.is_zero() {
        return Ok(0);
    }
    if g.is_constant() {
        return Ok(total);
    }
    if let Some(blocks) = split_blocks(&i, &g) {
        let inner = colon_length(&blocks.modulus, &blocks.g, cap)?;
        return Ok(inner.saturating_mul(blocks.factor));
    }
    let qb = QuotientBasis::with_cap(&i, cap)?;
    Ok(eliminate(&qb, &g, Mode::Rank)?.rank)
}

/// Kernel of multiplication by `g` on `R/M` for a monomial `m`-primary `M`,
/// plus the rank of that map (which equals `λ(R/(M : g))`).
pub fn quotient_mult_kernel(m: &Ideal, g: &Polynomial) -> Result<(Vec<Polynomial>, u64)> {
    quotient_mult_kernel_with_cap(m, g, DEFAULT_QUOTIENT_CAP)
}

pub fn quotient_mult_kernel_with_cap(
    m: &Ideal,
    g: &Polynomial,
    cap: u64,
) -> Result<(Vec<Polynomial>, u64)> {
    let m = m.with_gb()?;
    if !m.gb().expect("computed").iter().all(|h| h.len() == 1) {
        return Err(Error::Invalid("modulus must be a monomial ideal".into()));
    }
    let ring = m.ring().clone();
    let total = count_standard_monomials(&m.leading_monomials()?, ring.nvars())?;
    if total > cap {
        return Err(Error::TooLarge { length: total, cap });
    }
    let g = g.truncate(&m.leading_monomials()?);
    if let Some(blocks) = split_blocks(&m, &g) {
        let (inner, rank) = quotient_mult_kernel_with_cap(&blocks.modulus, &blocks.g, cap)?;
        // tensor the inner kernel with every standard monomial of the absent box
        let mut outer = vec![Monomial::one(ring.nvars())];
        for &(k, d) in &blocks.absent {
            outer = outer
                .iter()
                .flat_map(|u| {
                    (0..d).map(move |e| {
                        let mut v = *u;
                        v.set_exponent(k, e);
                        v
                    })
                })
                .collect();
        }
        let mut kernel = Vec::with_capacity(inner.len() * outer.len());
        for h in &inner {
            let h = extend(h, &ring, &blocks.vars);
            for u in &outer {
                kernel.push(h.mul_term(1, u));
            }
        }
        return Ok((kernel, rank.saturating_mul(blocks.factor)));
    }
    let qb = QuotientBasis::with_cap(&m, cap)?;
    let elim = eliminate(&qb, &g, Mode::All)?;
    Ok((elim.kernel, elim.rank))
}
