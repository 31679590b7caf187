#![allow(dead_code)]

use frobsplit::algebra::{Monomial, MonomialOrder, Polynomial, Ring, RingSpec};
use proptest::prelude::*;

pub const NAMES: [&str; 4] = ["x", "y", "z", "w"];

pub fn ring(p: u64, n: usize) -> Ring {
    ring_with(p, n, MonomialOrder::Grevlex)
}

pub fn ring_with(p: u64, n: usize, order: MonomialOrder) -> Ring {
    let names = NAMES[..n].iter().map(|s| s.to_string()).collect();
    RingSpec::new(p, names, order).unwrap()
}

pub type Terms = Vec<(Vec<u32>, u32)>;

/// Raw terms over at most four variables; `poly` truncates to the ring.
pub fn terms(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, 4), 0u32..1000), 0..=max_terms)
}

/// Terms whose exponent vectors all have total degree `d`.
pub fn homogeneous_terms(d: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0u32..4, d as usize), 1u32..1000), 1..=max_terms).prop_map(
        |raw| {
            raw.into_iter()
                .map(|(slots, c)| {
                    let mut e = vec![0u32; 4];
                    for s in slots {
                        e[s as usize] += 1;
                    }
                    (e, c)
                })
                .collect()
        },
    )
}

pub fn poly(r: &Ring, terms: &Terms) -> Polynomial {
    let n = r.nvars();
    Polynomial::from_terms(
        r,
        terms.iter().map(|(e, c)| {
            // fold the unused variables onto the last one so degrees are kept
            let mut exps = e[..n].to_vec();
            exps[n - 1] += e[n..].iter().sum::<u32>();
            (Monomial::new(&exps).unwrap(), *c)
        }),
    )
}

/// Orders a ring can be declared with.
pub fn ring_order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::Lex),
        Just(MonomialOrder::Grlex),
        Just(MonomialOrder::Grevlex),
    ]
}

/// Every order, including the elimination orders used internally.
pub fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![ring_order(), (1u8..4).prop_map(MonomialOrder::Elimination)]
}

/// All exponent vectors of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial::new(prefix).unwrap());
            prefix.pop();
            return;
        }
        for k in 0..=d {
            prefix.push(k);
            go(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, &mut Vec::new(), &mut out);
    out
}

/// Rank over F_p of the coefficient vectors of `rows`, by plain Gaussian
/// elimination on a dense matrix.
pub fn rank(rows: &[Polynomial], p: u32) -> usize {
    let mut cols: std::collections::HashMap<Monomial, usize> = std::collections::HashMap::new();
    for r in rows {
        for (m, _) in r.terms() {
            let next = cols.len();
            cols.entry(*m).or_insert(next);
        }
    }
    let p = p as u64;
    let mut mat: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut v = vec![0u64; cols.len()];
            for (m, c) in r.terms() {
                v[cols[m]] = *c as u64;
            }
            v
        })
        .collect();
    let inv = |a: u64| {
        let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for col in 0..cols.len() {
        let Some(pivot) = (rank..mat.len()).find(|&i| mat[i][col] != 0) else {
            continue;
        };
        mat.swap(rank, pivot);
        let s = inv(mat[rank][col]);
        for v in mat[rank].iter_mut() {
            *v = *v * s % p;
        }
        for i in 0..mat.len() {
            if i != rank && mat[i][col] != 0 {
                let f = mat[i][col];
                for j in 0..cols.len() {
                    mat[i][j] = (mat[i][j] + (p - f) * mat[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The degree-`d` part of the ideal generated by homogeneous `gens`, as a
/// spanning list.
pub fn graded_piece(r: &Ring, gens: &[Polynomial], d: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.total_degree() as u32;
        if dg <= d {
            for m in monomials_of_degree(r.nvars(), d - dg) {
                out.push(g.mul_term(1, &m));
            }
        }
    }
    out
}
