//! Characteristic-p invariants of a hypersurface `R/(f)`, `R = F_p[x]`:
//! bracket powers, Frobenius roots, Fedder's criterion, splitting ideals,
//! splitting numbers and splitting primes.

mod battery;
mod prime;
mod report;

use num_rational::Ratio;

use crate::algebra::monomial::Monomial;
use crate::algebra::poly::Polynomial;
use crate::algebra::ring::{same_ring, Ring};
use crate::error::{Error, Result};
use crate::ideal::{
    colon_length, count_standard_monomials, ideal_colon, ideal_colon_fast, ideal_member,
    krull_dimension, Ideal, DEFAULT_QUOTIENT_CAP,
};

pub use battery::{glassbrenner_witness, equivalence_battery, BatteryLevel, BatteryRecord, WitnessOutcome};
pub use prime::{prime_is_maximal, splitting_prime, Primality, SplittingPrime, DEFAULT_CROSS_CHECK_E, DEFAULT_MAX_ITER};
pub use report::{splitting_report, LevelEntry, PrimeEntry, RingEntry, SplittingReport, REPORT_VERSION};

/// A hypersurface `f` in the maximal ideal of `R`, with the system of
/// parameters `(x)` and socle representative `u` used for the splitting
/// ideals `I_e = (((x)^[q] : u^q) : f^(q-1))`.
#[derive(Clone, Debug)]
pub struct HypersurfaceContext {
    ring: Ring,
    f: Polynomial,
    sop: Vec<Polynomial>,
    u: Polynomial,
    cap: u64,
}

impl HypersurfaceContext {
    /// Context with the variables as system of parameters and `u = 1`.
    pub fn new(f: Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::Invalid("f must be nonzero".into()));
        }
        if f.constant_term() != 0 {
            return Err(Error::Invalid("f must vanish at the origin".into()));
        }
        let ring = f.ring().clone();
        let sop = (0..ring.nvars())
            .map(|i| Polynomial::var(&ring, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            u: Polynomial::one(&ring),
            ring,
            f,
            sop,
            cap: DEFAULT_QUOTIENT_CAP,
        })
    }

    /// Replaces the system of parameters and socle representative.
    pub fn with_sop(mut self, sop: Vec<Polynomial>, u: Polynomial) -> Result<Self> {
        if sop.iter().chain(Some(&u)).any(|g| !same_ring(g.ring(), &self.ring)) {
            return Err(Error::RingMismatch);
        }
        if u.is_zero() {
            return Err(Error::Invalid("socle representative must be nonzero".into()));
        }
        let ideal = Ideal::new(&self.ring, sop.clone())?;
        if !ideal.in_maximal() {
            return Err(Error::Invalid("system of parameters must lie in the maximal ideal".into()));
        }
        count_standard_monomials(&ideal.leading_monomials()?, self.ring.nvars())?;
        self.sop = sop;
        self.u = u;
        Ok(self)
    }

    /// Cap on quotient dimensions handled by linear algebra.
    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn p(&self) -> u32 {
        self.ring.p()
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Variables as parameters and `u = 1`.
    pub fn is_standard(&self) -> bool {
        self.u.is_constant()
            && self.sop.len() == self.ring.nvars()
            && self
                .sop
                .iter()
                .enumerate()
                .all(|(i, g)| g.len() == 1 && g.leading_monomial() == Some(Monomial::variable(self.ring.nvars(), i, 1)))
    }

    /// `q = p^e`, failing loudly when it does not fit an exponent.
    pub fn q(&self, e: u32) -> Result<u64> {
        q_of(self.p(), e)
    }

    /// `((x)^[q] : u^q)`; `m^[q]` in the standard case.
    pub fn level_ideal(&self, e: u32) -> Result<Ideal> {
        let sop = Ideal::new(&self.ring, self.sop.clone())?;
        let bracket = bracket_power(&sop, e)?;
        if self.u.is_constant() {
            return Ok(bracket);
        }
        ideal_colon(&bracket, &self.u.pow_charp(e)?)
    }

    /// Pure powers `x_i^q` generating `m^[q]`.
    fn box_gens(&self, q: u64) -> Result<Vec<Monomial>> {
        let q = u32::try_from(q).map_err(|_| Error::Overflow(format!("q = {q}")))?;
        Ok((0..self.ring.nvars())
            .map(|i| Monomial::variable(self.ring.nvars(), i, q))
            .collect())
    }

    /// `f^(q-1)` reduced modulo `m^[q]`.
    pub(crate) fn truncated_power(&self, e: u32) -> Result<Polynomial> {
        let q = self.q(e)?;
        self.f.pow_truncated(q - 1, &self.box_gens(q)?)
    }

    /// Whether `c f^(q-1)` lies in the level ideal; in the standard case by
    /// truncated powers, otherwise by Groebner membership.
    pub fn level_member(&self, c: &Polynomial, e: u32) -> Result<bool> {
        if self.is_standard() {
            let q = self.q(e)?;
            let gens = self.box_gens(q)?;
            let fq = self.truncated_power(e)?;
            return Ok(c.truncate(&gens).checked_mul(&fq)?.truncate(&gens).is_zero());
        }
        let g = c.checked_mul(&self.f.pow(self.q(e)? - 1)?)?;
        ideal_member(&g, &self.level_ideal(e)?)
    }
}

pub(crate) fn q_of(p: u32, e: u32) -> Result<u64> {
    (p as u64)
        .checked_pow(e)
        .filter(|&q| q < (1u64 << 31))
        .ok_or_else(|| Error::Overflow(format!("{p}^{e} too large")))
}

/// `I^[p^e]`, generated by the `p^e`-th powers of the generators.
pub fn bracket_power(i: &Ideal, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Err(Error::Invalid("bracket power needs e >= 1".into()));
    }
    let gens = i
        .generators()
        .iter()
        .map(|g| g.pow_charp(e))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(i.ring(), gens)
}

/// The smallest `J` with `I ⊆ J^[p^e]`: generated by the coefficients `g_a`
/// of every generator written as `sum_a g_a^(p^e) x^a`.
pub fn frobenius_root(i: &Ideal, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Err(Error::Invalid("Frobenius root needs e >= 1".into()));
    }
    let mut gens = Vec::new();
    for g in i.generators() {
        gens.extend(g.pe_decompose(e)?.into_values());
    }
    Ideal::new(i.ring(), gens)
}

/// Fedder's criterion: `R/(f)` is F-pure iff `f^(p-1) ∉ m^[p]`.
pub fn fedder_fpure(ctx: &HypersurfaceContext) -> Result<bool> {
    Ok(!ctx.level_member(&Polynomial::one(&ctx.ring), 1)?)
}

/// Ideal of the partial derivatives of `f`; zero partials are dropped.
pub fn jacobian_ideal(f: &Polynomial) -> Result<Ideal> {
    let ring = f.ring();
    let gens = (0..ring.nvars())
        .map(|i| f.partial_derivative(i))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

/// Lift of the e-th splitting ideal, `I_e = (((x)^[q] : u^q) : f^(q-1))`.
///
/// For `e >= 2` this uses `I_e = (I_{e-1}^[p] : f^(p-1))`, which follows from
/// flatness of Frobenius and keeps the quotients small. The unit ideal means
/// the e-th splitting does not exist.
pub fn splitting_ideal(ctx: &HypersurfaceContext, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Err(Error::Invalid("splitting ideals are indexed by e >= 1".into()));
    }
    let p = ctx.p() as u64;
    let fp = ctx.f.pow(p - 1)?;
    if e == 1 {
        return ideal_colon_fast(&ctx.level_ideal(1)?, &fp, ctx.cap);
    }
    let prev = splitting_ideal(ctx, e - 1)?;
    if prev.is_unit()? {
        return Ok(prev);
    }
    ideal_colon_fast(&bracket_power(&prev, 1)?, &fp, ctx.cap)
}

/// `a_e = λ(R/I_e)`; 0 when the e-th splitting does not exist.
pub fn splitting_number(ctx: &HypersurfaceContext, e: u32) -> Result<u64> {
    if e == 0 {
        return Err(Error::Invalid("splitting numbers are indexed by e >= 1".into()));
    }
    let p = ctx.p() as u64;
    let fp = ctx.f.pow(p - 1)?;
    if e == 1 {
        return colon_length(&ctx.level_ideal(1)?, &fp, ctx.cap);
    }
    let prev = splitting_ideal(ctx, e - 1)?;
    if prev.is_unit()? {
        return Ok(0);
    }
    colon_length(&bracket_power(&prev, 1)?, &fp, ctx.cap)
}

/// `a_e` straight from `λ(R/((x)^[q] : u^q f^(q-1)))` without the recursion;
/// used to cross-check [`splitting_number`].
pub fn splitting_number_direct(ctx: &HypersurfaceContext, e: u32) -> Result<u64> {
    let q = ctx.q(e)?;
    colon_length(&ctx.level_ideal(e)?, &ctx.f.pow(q - 1)?, ctx.cap)
}

/// `dim R/P` for the splitting prime `P` (lifted to `R`).
pub fn splitting_dimension(ctx: &HypersurfaceContext) -> Result<usize> {
    let prime = splitting_prime(ctx, DEFAULT_MAX_ITER, DEFAULT_CROSS_CHECK_E)?;
    krull_dimension(&prime.ideal)
}

/// `a_e / p^(e n)` with `n` the splitting dimension, as an exact rational.
pub fn splitting_ratio_estimate(ctx: &HypersurfaceContext, e: u32) -> Result<Ratio<u64>> {
    let a = splitting_number(ctx, e)?;
    let n = splitting_dimension(ctx)?;
    ratio(ctx.p(), e, n, a)
}

pub(crate) fn ratio(p: u32, e: u32, n: usize, a: u64) -> Result<Ratio<u64>> {
    let exp = e
        .checked_mul(n as u32)
        .ok_or_else(|| Error::Overflow("ratio exponent".into()))?;
    let den = (p as u64)
        .checked_pow(exp)
        .ok_or_else(|| Error::Overflow(format!("{p}^{exp} does not fit 64 bits")))?;
    Ok(Ratio::new(a, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_poly, parse_ring_spec};

    fn ctx(spec: &str, f: &str) -> HypersurfaceContext {
        let r = parse_ring_spec(spec).unwrap();
        HypersurfaceContext::new(parse_poly(f, &r).unwrap()).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| parse_poly(s, r).unwrap()).collect()).unwrap()
    }

    const EX41: &str = "p=7 vars=x0 x1 x2 x3 order=grevlex";

    #[test]
    fn bracket_examples() {
        let r = parse_ring_spec("p=2 vars=x y").unwrap();
        let b = bracket_power(&ideal(&r, &["x", "y"]), 2).unwrap();
        assert!(b.same_ideal(&ideal(&r, &["x^4", "y^4"])).unwrap());
        let r3 = parse_ring_spec("p=3 vars=x y").unwrap();
        let b = bracket_power(&ideal(&r3, &["x + y"]), 1).unwrap();
        assert_eq!(b.generators()[0].to_string(), "x^3 + y^3");
    }

    #[test]
    fn root_examples() {
        let r3 = parse_ring_spec("p=3 vars=x").unwrap();
        assert!(frobenius_root(&ideal(&r3, &["x^3"]), 1)
            .unwrap()
            .same_ideal(&ideal(&r3, &["x"]))
            .unwrap());
        let r2 = parse_ring_spec("p=2 vars=x y").unwrap();
        assert!(frobenius_root(&ideal(&r2, &["x^2*y^3"]), 1)
            .unwrap()
            .same_ideal(&ideal(&r2, &["x*y"]))
            .unwrap());
    }

    #[test]
    fn fedder_examples() {
        assert!(fedder_fpure(&ctx(EX41, "x0^2 - x1^6*x2^2 + x3^3")).unwrap());
        assert!(fedder_fpure(&ctx("p=7 vars=x y z w", "x^3 + y^3 + z^3")).unwrap());
        assert!(!fedder_fpure(&ctx("p=2 vars=x y", "x^2 + y^2")).unwrap());
    }

    #[test]
    fn splitting_ideal_examples() {
        let c = ctx("p=3 vars=x y", "x*y");
        let r = c.ring().clone();
        assert!(splitting_ideal(&c, 1).unwrap().same_ideal(&ideal(&r, &["x", "y"])).unwrap());
        let c = ctx("p=2 vars=x y", "x");
        let r = c.ring().clone();
        assert!(splitting_ideal(&c, 1).unwrap().same_ideal(&ideal(&r, &["x", "y^2"])).unwrap());
        let c = ctx(EX41, "x0^2 - x1^6*x2^2 + x3^3");
        let i1 = splitting_ideal(&c, 1).unwrap();
        assert!(!i1.contains(&parse_poly("x2", c.ring()).unwrap()).unwrap());
        assert!(!i1.is_unit().unwrap());
    }

    #[test]
    fn splitting_number_examples() {
        assert_eq!(splitting_number(&ctx("p=7 vars=x y z w", "x^3+y^3+z^3"), 1).unwrap(), 7);
        let c = ctx("p=3 vars=x y", "x*y");
        assert_eq!(splitting_number(&c, 1).unwrap(), 1);
        assert_eq!(splitting_number(&c, 2).unwrap(), 1);
        assert_eq!(splitting_number(&ctx("p=2 vars=x y", "x"), 1).unwrap(), 2);
        assert_eq!(splitting_number(&ctx("p=2 vars=x y", "x^2+y^2"), 1).unwrap(), 0);
    }

    #[test]
    fn recursion_agrees_with_direct_colon() {
        for (spec, f) in [
            ("p=3 vars=x y z", "x^2 + y^2 + z^2"),
            ("p=2 vars=x y z", "x*y + z^3"),
            ("p=3 vars=x y", "x^2*y + y^3"),
            ("p=5 vars=x y", "x^2 + y^3"),
        ] {
            let c = ctx(spec, f);
            for e in 1..=2 {
                assert_eq!(
                    splitting_number(&c, e).unwrap(),
                    splitting_number_direct(&c, e).unwrap(),
                    "{f} e={e}"
                );
            }
        }
    }

    #[test]
    fn jacobian_examples() {
        let c = ctx(EX41, "x0^2 - x1^6*x2^2 + x3^3");
        let jac = jacobian_ideal(c.f()).unwrap();
        let strs: Vec<String> = jac.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(strs, ["2*x0", "x1^5*x2^2", "-2*x1^6*x2", "3*x3^2"]);
        let c = ctx("p=7 vars=x y z w", "x^3 + y^3 + z^3");
        assert_eq!(jacobian_ideal(c.f()).unwrap().generators().len(), 3);
        let r = parse_ring_spec("p=5 vars=x").unwrap();
        assert!(jacobian_ideal(&parse_poly("x^5", &r).unwrap()).unwrap().is_zero_ideal());
    }

    #[test]
    fn ratio_examples() {
        let c = ctx("p=2 vars=x y", "x");
        assert_eq!(splitting_ratio_estimate(&c, 1).unwrap(), Ratio::from_integer(1));
        let c = ctx("p=3 vars=x y", "x*y");
        assert_eq!(splitting_ratio_estimate(&c, 2).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn custom_sop_gives_the_same_splitting_ideal() {
        // (x, y) with u = 1 versus (x^2, y) with socle element u = x
        let c = ctx("p=3 vars=x y", "x^2 + y^3");
        let r = c.ring().clone();
        let custom = c
            .clone()
            .with_sop(
                vec![parse_poly("x^2", &r).unwrap(), parse_poly("y", &r).unwrap()],
                parse_poly("x", &r).unwrap(),
            )
            .unwrap();
        assert!(!custom.is_standard());
        for e in 1..=2 {
            assert!(splitting_ideal(&c, e)
                .unwrap()
                .same_ideal(&splitting_ideal(&custom, e).unwrap())
                .unwrap());
        }
        assert_eq!(fedder_fpure(&c).unwrap(), fedder_fpure(&custom).unwrap());
    }
}
