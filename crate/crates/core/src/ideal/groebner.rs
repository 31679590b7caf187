//! Buchberger's algorithm with the Gebauer–Möller pair update.

use std::cmp::Ordering;

use crate::algebra::field;
use crate::algebra::monomial::{Monomial, MonomialOrder};
use crate::algebra::poly::Polynomial;
use crate::algebra::ring::Ring;
use crate::budget;
use crate::error::Result;

/// Divisor lookup over a list of monic polynomials.
pub(crate) struct Reducer<'a> {
    polys: Vec<&'a Polynomial>,
    heads: Vec<(Monomial, u32)>,
    sugar: Vec<u64>,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new(polys: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        Self::with_sugar(polys.into_iter().map(|p| (p, p.total_degree())))
    }

    /// Reducer whose elements carry a sugar degree.
    fn with_sugar(polys: impl IntoIterator<Item = (&'a Polynomial, u64)>) -> Self {
        let (polys, sugar): (Vec<&Polynomial>, Vec<u64>) = polys.into_iter().filter(|(p, _)| !p.is_zero()).unzip();
        let heads = polys
            .iter()
            .map(|p| {
                let m = p.leading_monomial().expect("nonzero");
                (m, m.support())
            })
            .collect();
        Self { polys, heads, sugar }
    }

    #[inline]
    fn find(&self, m: &Monomial) -> Option<usize> {
        let s = m.support();
        self.heads
            .iter()
            .position(|(h, hs)| hs & !s == 0 && h.divides(m))
    }

    /// Full normal form: no remaining term is divisible by a leading
    /// monomial of the reducer.
    pub(crate) fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        Ok(self.run(f, 0, false)?.0)
    }

    /// Reduces only while the leading term is divisible; the tail is left
    /// as it is. Returns the sugar of the result.
    fn top_reduce(&self, f: &Polynomial, sugar: u64) -> Result<(Polynomial, u64)> {
        self.run(f, sugar, true)
    }

    fn run(&self, f: &Polynomial, mut sugar: u64, top_only: bool) -> Result<(Polynomial, u64)> {
        let ring = f.ring();
        let p = ring.p();
        let order = ring.order();
        let mut cur: Vec<(Monomial, u32)> = f.terms().to_vec();
        let mut pos = 0;
        let mut out = Vec::new();
        let mut steps = 0u32;
        while pos < cur.len() {
            let (m, c) = cur[pos];
            match self.find(&m) {
                Some(k) => {
                    steps = steps.wrapping_add(1);
                    if steps % 256 == 0 {
                        budget::check()?;
                    }
                    let b = self.polys[k];
                    let (lm, lc) = b.leading_term().expect("nonzero");
                    let scale = field::neg(field::mul(c, field::inv(lc, p).expect("unit"), p), p);
                    let shift = lm.quotient_of(&m);
                    sugar = sugar.max(self.sugar[k] + shift.degree());
                    cur = merge_scaled(&cur[pos + 1..], &b.terms()[1..], scale, &shift, order, p);
                    pos = 0;
                }
                None if top_only => {
                    out.extend_from_slice(&cur);
                    break;
                }
                None => {
                    out.push((m, c));
                    pos += 1;
                }
            }
        }
        Ok((Polynomial::from_sorted_terms(ring, out), sugar))
    }
}

/// `a + c * shift * b` for descending term lists.
fn merge_scaled(
    a: &[(Monomial, u32)],
    b: &[(Monomial, u32)],
    c: u32,
    shift: &Monomial,
    order: MonomialOrder,
    p: u32,
) -> Vec<(Monomial, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].0.mul(shift);
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
    out.extend(b[j..].iter().map(|(m, bc)| (m.mul(shift), field::mul(*bc, c, p))));
    out
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let p = f.ring().p();
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let a = f.mul_term(field::inv(fc, p).expect("unit"), &fm.quotient_of(lcm));
    let b = g.mul_term(field::inv(gc, p).expect("unit"), &gm.quotient_of(lcm));
    a.add_scaled(&b, field::neg(1, p), &Monomial::one(lcm.nvars()))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

/// Reduced Groebner basis of the ideal generated by `gens`, sorted by
/// descending leading monomial. The unit ideal gives `[1]`.
pub(crate) fn buchberger(ring: &Ring, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let order = ring.order();
    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if input.iter().any(|g| g.is_constant()) {
        return Ok(vec![Polynomial::one(ring)]);
    }
    // small leading monomials first keeps early reductions cheap
    input.sort_by(|a, b| {
        order.cmp(&a.leading_monomial().unwrap(), &b.leading_monomial().unwrap())
    });

    let mut polys: Vec<Polynomial> = Vec::new();
    let mut sugar: Vec<u64> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut queue: Vec<Polynomial> = input;
    queue.reverse();
    loop {
        budget::check()?;
        let (h, s) = if let Some(f) = queue.pop() {
            let s = f.total_degree();
            (f, s)
        } else if let Some(k) = select_pair(&pairs, order) {
            let pair = pairs.swap_remove(k);
            (s_polynomial(&polys[pair.i], &polys[pair.j], &pair.lcm), pair.sugar)
        } else {
            break;
        };
        let (h, s) = {
            let reducer = Reducer::with_sugar(active.iter().map(|&k| (&polys[k], sugar[k])));
            // tails are left for reduce_basis; reducing them here swells lex runs
            reducer.top_reduce(&h, s)?
        };
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        let h = h.monic();
        polys.push(h);
        sugar.push(s);
        let new = polys.len() - 1;
        update(&polys, &sugar, &mut active, &mut pairs, new);
    }

    let basis: Vec<Polynomial> = active.into_iter().map(|k| polys[k].clone()).collect();
    reduce_basis(basis)
}

fn select_pair(pairs: &[Pair], order: MonomialOrder) -> Option<usize> {
    // sugar strategy, ties broken by the smallest lcm
    let mut best: Option<usize> = None;
    for (k, pair) in pairs.iter().enumerate() {
        best = match best {
            None => Some(k),
            Some(b) => {
                let cur = &pairs[b];
                let ord = pair
                    .sugar
                    .cmp(&cur.sugar)
                    .then_with(|| pair.lcm.degree().cmp(&cur.lcm.degree()))
                    .then_with(|| order.cmp(&pair.lcm, &cur.lcm));
                if ord == Ordering::Less {
                    Some(k)
                } else {
                    Some(b)
                }
            }
        };
    }
    best
}

/// Gebauer–Möller installation of the new element `h` into the basis.
fn update(polys: &[Polynomial], sugar: &[u64], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let hm = polys[h].leading_monomial().unwrap();
    let lm = |k: usize| polys[k].leading_monomial().unwrap();

    let candidates: Vec<(usize, Monomial)> = active.iter().map(|&g| (g, hm.lcm(&lm(g)))).collect();
    // chain criterion among the new pairs; coprime pairs are kept for now so
    // they can eliminate others, then dropped by the product criterion
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (idx, (g, l)) in candidates.iter().enumerate() {
        let coprime = hm.is_coprime(&lm(*g));
        let dominated = candidates[idx + 1..]
            .iter()
            .chain(kept.iter())
            .any(|(_, other)| other.divides(l));
        if coprime || !dominated {
            kept.push((*g, *l));
        }
    }
    // among pairs with equal lcm keep just one
    let mut fresh: Vec<(usize, Monomial)> = Vec::new();
    for (g, l) in kept {
        if hm.is_coprime(&lm(g)) {
            continue;
        }
        if fresh.iter().any(|(_, other)| *other == l) {
            continue;
        }
        fresh.push((g, l));
    }

    pairs.retain(|pair| {
        !(hm.divides(&pair.lcm)
            && hm.lcm(&lm(pair.i)) != pair.lcm
            && hm.lcm(&lm(pair.j)) != pair.lcm)
    });
    let pair_sugar = |g: usize, l: &Monomial| {
        let side = |k: usize| sugar[k] + l.degree() - lm(k).degree();
        side(g).max(side(h))
    };
    pairs.extend(fresh.into_iter().map(|(g, l)| Pair {
        i: g,
        j: h,
        sugar: pair_sugar(g, &l),
        lcm: l,
    }));

    active.retain(|&g| !hm.divides(&lm(g)));
    active.push(h);
}

/// Turns a Groebner basis into the reduced one: monic, minimal, tails fully
/// reduced, sorted by descending leading monomial.
pub(crate) fn reduce_basis(basis: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = basis.into_iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let Some(first) = basis.first() else {
        return Ok(basis);
    };
    let ring = first.ring().clone();
    if basis.iter().any(|g| g.is_constant()) {
        return Ok(vec![Polynomial::one(&ring)]);
    }
    let order = ring.order();
    basis.sort_by(|a, b| order.cmp(&a.leading_monomial().unwrap(), &b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let m = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(&m)) {
            minimal.push(g);
        }
    }
    let mut out: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let others = Reducer::new(
                minimal
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .map(|(_, g)| g),
            );
            let g = &minimal[k];
            let (lm, lc) = g.leading_term().unwrap();
            let tail = Polynomial::from_sorted_terms(&ring, g.terms()[1..].to_vec());
            let head = Polynomial::monomial(&ring, lm, lc);
            head.checked_add(&others.reduce(&tail)?)
        })
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| order.cmp(&b.leading_monomial().unwrap(), &a.leading_monomial().unwrap()));
    Ok(out)
}

/// Normal form with respect to a basis; a thin wrapper used by `Ideal`.
pub(crate) fn reduce_by(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    Reducer::new(basis.iter()).reduce(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_poly, parse_ring_spec};

    fn setup(spec: &str, gens: &[&str]) -> (Ring, Vec<Polynomial>) {
        let r = parse_ring_spec(spec).unwrap();
        let g = gens.iter().map(|s| parse_poly(s, &r).unwrap()).collect();
        (r, g)
    }

    #[test]
    fn trivial_bases() {
        let (r, g) = setup("p=7 vars=x y", &["x", "y"]);
        assert_eq!(buchberger(&r, &g).unwrap(), g);
        let (r, g) = setup("p=7 vars=x y", &["x", "x+1"]);
        assert_eq!(buchberger(&r, &g).unwrap(), vec![Polynomial::one(&r)]);
    }

    #[test]
    fn coprime_leading_terms_are_already_a_basis() {
        let (r, g) = setup("p=7 vars=x y order=grevlex", &["x^2-y", "y^2-x"]);
        assert_eq!(buchberger(&r, &g).unwrap(), g);
    }

    #[test]
    fn textbook_completion() {
        // x^3 - 2xy, x^2 y - 2y^2 + x in grlex: reduced basis x^2, xy, y^2 - x/2
        let (r, g) = setup("p=7 vars=x y order=grlex", &["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"]);
        let gb = buchberger(&r, &g).unwrap();
        let expected: Vec<Polynomial> = ["x^2", "x*y", "y^2 - 4*x"]
            .iter()
            .map(|s| parse_poly(s, &r).unwrap())
            .collect();
        assert_eq!(gb, expected);
    }

    #[test]
    fn lex_elimination() {
        // x - y^2, y^3 - 1 in lex: already a GB
        let (r, g) = setup("p=5 vars=x y order=lex", &["x - y^2", "y^3 - 1", "x*y - 1"]);
        let gb = buchberger(&r, &g).unwrap();
        assert_eq!(gb.len(), 2);
        assert_eq!(gb[0].to_string(), "x - y^2");
    }

    #[test]
    fn long_reductions_respect_the_budget() {
        // x^600 against x - 1 takes 600 steps
        let (r, g) = setup("p=7 vars=x", &["x - 1"]);
        let f = parse_poly("x^600", &r).unwrap();
        let reducer = Reducer::new(g.iter());
        assert_eq!(reducer.reduce(&f).unwrap(), Polynomial::one(&r));
        let out = budget::with_deadline(Some(std::time::Duration::ZERO), || reducer.reduce(&f));
        assert_eq!(out, Err(crate::error::Error::BudgetExceeded));
    }

    #[test]
    fn sugar_and_top_reduction_keep_bases_reduced() {
        let (r, g) = setup("p=5 vars=x y z order=lex", &["x^2*y - z", "x*y^2 - x", "y*z - 1"]);
        let gb = buchberger(&r, &g).unwrap();
        for (k, h) in gb.iter().enumerate() {
            let others: Vec<Polynomial> = gb.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, q)| q.clone()).collect();
            assert_eq!(&reduce_by(h, &others).unwrap(), h);
        }
    }
}
