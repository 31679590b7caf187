//! Strong F-regularity witnesses and the equivalence battery for `P = m`.

use serde::{Deserialize, Serialize};

use crate::algebra::poly::Polynomial;
use crate::algebra::ring::same_ring;
use crate::error::{Error, Result};
use crate::frobenius::prime::prime_is_maximal;
use crate::frobenius::{fedder_fpure, jacobian_ideal, splitting_ideal, splitting_number, HypersurfaceContext};
use crate::ideal::{radical_member, Ideal};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOutcome {
    pub verdict: bool,
    /// Smallest `e` with `c f^(q-1) ∉ m^[q]`, reported only with a positive
    /// verdict.
    pub witness_e: Option<u32>,
    /// Smallest such `e` regardless of the radical condition.
    pub nonmembership_e: Option<u32>,
    /// `c ∈ √(Jac(f) + (f))`, so `R/(f)` is regular away from `V(c)`.
    pub c_in_singular_radical: bool,
}

/// Glassbrenner's criterion: `R/(f)` is strongly F-regular when some `c`
/// with regular localization `R_c/(f)` has `c f^(q-1) ∉ m^[q]`.
pub fn glassbrenner_witness(ctx: &HypersurfaceContext, c: &Polynomial, max_e: u32) -> Result<WitnessOutcome> {
    if c.is_zero() {
        return Err(Error::BadWitness("c must be nonzero".into()));
    }
    if !same_ring(c.ring(), ctx.ring()) {
        return Err(Error::RingMismatch);
    }
    let mut nonmembership_e = None;
    for e in 1..=max_e {
        if !ctx.level_member(c, e)? {
            nonmembership_e = Some(e);
            break;
        }
    }
    let singular = jacobian_ideal(ctx.f())?.sum(&Ideal::new(ctx.ring(), vec![ctx.f().clone()])?)?;
    let c_in_singular_radical = radical_member(c, &singular)?;
    let verdict = nonmembership_e.is_some() && c_in_singular_radical;
    Ok(WitnessOutcome {
        verdict,
        witness_e: if verdict { nonmembership_e } else { None },
        nonmembership_e,
        c_in_singular_radical,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryLevel {
    pub e: u32,
    pub a_e: u64,
    pub a_e_is_one: bool,
    pub ideal_is_m: bool,
}

/// Outcome of the three computable characterisations of `P = m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryRecord {
    pub levels: Vec<BatteryLevel>,
    pub prime_is_m: bool,
    /// All predicates agree across every level.
    pub consistent: bool,
}

/// Evaluates `a_e = 1`, `I_e = m` for `e = 1..=max_e`, and `P = m`.
pub fn equivalence_battery(ctx: &HypersurfaceContext, max_e: u32) -> Result<BatteryRecord> {
    if !fedder_fpure(ctx)? {
        return Err(Error::NotFPure);
    }
    let m = Ideal::maximal(ctx.ring());
    let mut levels = Vec::new();
    for e in 1..=max_e {
        let a_e = splitting_number(ctx, e)?;
        let ideal_is_m = splitting_ideal(ctx, e)?.same_ideal(&m)?;
        levels.push(BatteryLevel {
            e,
            a_e,
            a_e_is_one: a_e == 1,
            ideal_is_m,
        });
    }
    let prime_is_m = prime_is_maximal(ctx)?;
    let consistent = levels
        .iter()
        .all(|l| l.a_e_is_one == prime_is_m && l.ideal_is_m == prime_is_m);
    Ok(BatteryRecord {
        levels,
        prime_is_m,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_poly, parse_ring_spec};

    fn ctx(spec: &str, f: &str) -> HypersurfaceContext {
        let r = parse_ring_spec(spec).unwrap();
        HypersurfaceContext::new(parse_poly(f, &r).unwrap()).unwrap()
    }

    #[test]
    fn witness_examples() {
        let c = ctx("p=7 vars=x y z w", "x^3 + y^3 + z^3 + w^2");
        let w = parse_poly("w", c.ring()).unwrap();
        let out = glassbrenner_witness(&c, &w, 2).unwrap();
        assert!(out.verdict);
        assert_eq!(out.witness_e, Some(1));

        let c = ctx("p=7 vars=x y z w", "x^3 + y^3 + z^3");
        let w = parse_poly("w", c.ring()).unwrap();
        let out = glassbrenner_witness(&c, &w, 2).unwrap();
        assert!(!out.verdict);
        assert_eq!(out.witness_e, None);
        assert!(!out.c_in_singular_radical);

        let c = ctx("p=2 vars=x y", "x");
        let one = Polynomial::one(c.ring());
        assert_eq!(glassbrenner_witness(&c, &one, 1).unwrap().witness_e, Some(1));
        assert!(matches!(
            glassbrenner_witness(&c, &Polynomial::zero(c.ring()), 1),
            Err(Error::BadWitness(_))
        ));
    }

    #[test]
    fn battery_examples() {
        let rec = equivalence_battery(&ctx("p=3 vars=x y", "x*y"), 2).unwrap();
        assert!(rec.prime_is_m && rec.consistent);
        assert!(rec.levels.iter().all(|l| l.a_e_is_one && l.ideal_is_m));

        let rec = equivalence_battery(&ctx("p=7 vars=x0 x1 x2 x3", "x0^2 - x1^6*x2^2 + x3^3"), 1).unwrap();
        assert!(!rec.prime_is_m && rec.consistent);
        assert!(!rec.levels[0].ideal_is_m);

        let rec = equivalence_battery(&ctx("p=2 vars=x y", "x"), 2).unwrap();
        assert!(!rec.prime_is_m && rec.consistent);
        assert_eq!(rec.levels[0].a_e, 2);
    }
}
