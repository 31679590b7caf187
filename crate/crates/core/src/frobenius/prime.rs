//! The splitting prime `P = ∩_e I_e`, computed through compatible ideals.
//!
//! An ideal `J` is compatible when `f^(p-1) J ⊆ J^[p]`, equivalently
//! `root(f^(p-1) J) ⊆ J`. For F-pure `R/(f)`, `P` is the largest compatible
//! ideal inside `m`, so:
//!
//! * `P = m` exactly when `m` itself is compatible;
//! * the compatible closure `L` of `Jac(f) + (f)` lies in the test ideal, so
//!   `L ⊄ m` means `R/(f)` is strongly F-regular and `P = (f)`;
//! * otherwise `L ⊆ P`, and `c ∈ P` iff the compatible closure of `L + (c)`
//!   stays inside `m`.
//!
//! The enlarged `L` is certified equal to `P` when `dim R/L ≤ 1` (then `P` is
//! the unique minimal prime of `L` at the origin), or when `L` is generated
//! by variables `x_T` and `f^(p-1)` contains `x_T^(p-1)` with nonzero
//! coefficient (the induced splitting of `R/L` is then a unit multiple of the
//! trace, which has no proper nonzero compatible ideals).

use serde::{Deserialize, Serialize};

use crate::algebra::monomial::Monomial;
use crate::algebra::poly::Polynomial;
use crate::error::{Error, Result};
use crate::frobenius::{fedder_fpure, frobenius_root, jacobian_ideal, splitting_ideal, HypersurfaceContext};
use crate::ideal::{krull_dimension, Ideal};

pub const DEFAULT_MAX_ITER: usize = 50;
pub const DEFAULT_CROSS_CHECK_E: u32 = 3;

/// How much is known about primality of the computed ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Primality {
    /// `P = m`.
    Maximal,
    /// `P = (f)`: the splitting prime of `R/(f)` is zero.
    Zero,
    /// Generated by variables, hence prime.
    Variables,
    Unverified,
}

#[derive(Debug, Clone)]
pub struct SplittingPrime {
    /// Lift of the splitting prime to `R`, with reduced Groebner basis.
    pub ideal: Ideal,
    pub primality: Primality,
    /// Closure iterations spent.
    pub iterations: usize,
    /// `P ⊆ I_e` was verified for `e` up to this level.
    pub cross_checked: u32,
}

impl SplittingPrime {
    /// The splitting prime of `R/(f)` is the zero ideal.
    pub fn is_zero(&self) -> bool {
        self.primality == Primality::Zero
    }
}

enum Closure {
    Inside(Ideal),
    Escapes,
}

/// Smallest compatible ideal containing `start`, or `Escapes` as soon as it
/// leaves the maximal ideal.
fn compatible_closure(start: &Ideal, u: &Polynomial, max_iter: usize, spent: &mut usize) -> Result<Closure> {
    let mut k = start.with_gb()?;
    for _ in 0..max_iter {
        if !k.in_maximal() || k.is_unit()? {
            return Ok(Closure::Escapes);
        }
        *spent += 1;
        let basis = Ideal::new(k.ring(), k.gb().expect("computed").to_vec())?;
        let root = frobenius_root(&basis.scaled_by(u)?, 1)?;
        if !root.in_maximal() {
            return Ok(Closure::Escapes);
        }
        if k.contains_ideal(&root)? {
            return Ok(Closure::Inside(k));
        }
        k = basis.sum(&root)?.with_gb()?;
    }
    Err(Error::NoStabilize(format!(
        "compatible closure did not stabilise within {max_iter} iterations"
    )))
}

/// `P = m`, decided by whether `m` is compatible.
pub fn prime_is_maximal(ctx: &HypersurfaceContext) -> Result<bool> {
    let u = ctx.f().pow(ctx.p() as u64 - 1)?;
    let root = frobenius_root(&Ideal::maximal(ctx.ring()).scaled_by(&u)?, 1)?;
    Ok(root.in_maximal())
}

fn variable_indices(i: &Ideal) -> Option<Vec<usize>> {
    i.gb()?
        .iter()
        .map(|g| {
            let m = g.leading_monomial()?;
            (g.len() == 1 && m.degree() == 1).then(|| m.support().trailing_zeros() as usize)
        })
        .collect()
}

/// Splitting prime of `R/(f)`, lifted to `R`.
///
/// `max_iter` bounds each compatible-closure computation; the result is
/// checked against `I_e` for `e ≤ cross_check_e`.
pub fn splitting_prime(ctx: &HypersurfaceContext, max_iter: usize, cross_check_e: u32) -> Result<SplittingPrime> {
    if !fedder_fpure(ctx)? {
        return Err(Error::NotFPure);
    }
    let ring = ctx.ring();
    let f = ctx.f();
    let p = ctx.p();
    let u = f.pow(p as u64 - 1)?;
    let mut spent = 0;

    let (ideal, primality) = if prime_is_maximal(ctx)? {
        (Ideal::maximal(ring), Primality::Maximal)
    } else {
        let start = jacobian_ideal(f)?.sum(&Ideal::new(ring, vec![f.clone()])?)?;
        match compatible_closure(&start, &u, max_iter, &mut spent)? {
            Closure::Escapes => (Ideal::new(ring, vec![f.clone()])?.with_gb()?, Primality::Zero),
            Closure::Inside(mut l) => {
                let mut candidates: Vec<Polynomial> =
                    (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect::<Result<_>>()?;
                candidates.extend(splitting_ideal(ctx, 1)?.with_gb()?.gb().unwrap_or(&[]).iter().cloned());
                for c in candidates {
                    if l.contains(&c)? {
                        continue;
                    }
                    let grown = l.sum(&Ideal::new(ring, vec![c])?)?;
                    if let Closure::Inside(bigger) = compatible_closure(&grown, &u, max_iter, &mut spent)? {
                        l = bigger;
                    }
                }
                let vars = variable_indices(&l);
                let dim = krull_dimension(&l)?;
                let unit_trace = vars.as_ref().is_some_and(|t| {
                    let mut m = Monomial::one(ring.nvars());
                    for &i in t {
                        m.set_exponent(i, p - 1);
                    }
                    u.coefficient(&m) != 0
                });
                if dim > 1 && !unit_trace {
                    return Err(Error::NoStabilize(format!(
                        "compatible ideal {l} of dimension {dim} could not be certified as the splitting prime"
                    )));
                }
                let primality = if vars.is_some() { Primality::Variables } else { Primality::Unverified };
                (l, primality)
            }
        }
    };

    for e in 1..=cross_check_e {
        for c in ideal.gb().expect("computed") {
            if !ctx.level_member(c, e)? {
                return Err(Error::Invalid(format!(
                    "splitting prime generator {c} is not in I_{e}"
                )));
            }
        }
    }
    Ok(SplittingPrime {
        ideal,
        primality,
        iterations: spent,
        cross_checked: cross_check_e,
    })
}
