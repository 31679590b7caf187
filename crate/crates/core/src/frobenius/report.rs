use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frobenius::prime::{splitting_prime, Primality};
use crate::frobenius::{fedder_fpure, ratio, splitting_ideal, splitting_number, HypersurfaceContext};
use crate::ideal::{krull_dimension, Ideal};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingEntry {
    pub p: u32,
    pub vars: Vec<String>,
    pub order: String,
}

impl RingEntry {
    pub fn of(ring: &crate::algebra::ring::Ring) -> Self {
        Self {
            p: ring.p(),
            vars: ring.vars().to_vec(),
            order: ring.order().name(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelEntry {
    pub e: u32,
    /// Reduced Groebner basis of `I_e`.
    pub ideal: Vec<String>,
    pub a_e: u64,
    pub is_m: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub generators: Vec<String>,
    pub zero: bool,
    pub primality: Primality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub v: u32,
    pub ring: RingEntry,
    pub f: String,
    pub fpure: bool,
    pub levels: Vec<LevelEntry>,
    pub splitting_prime: Option<PrimeEntry>,
    pub splitting_dimension: Option<usize>,
    /// `a_e / p^(e n)` as reduced fractions, `"1"` or `"5/49"`.
    pub ratio_estimates: Vec<String>,
    /// Reasons for any field left empty.
    pub notes: Vec<String>,
}

/// Computes every per-level invariant for `e = 1..=max_e`. When `R/(f)` is
/// not F-pure the levels are still reported (with `a_e = 0`) and the prime
/// fields are left empty.
pub fn splitting_report(
    ctx: &HypersurfaceContext,
    max_e: u32,
    max_iter: usize,
    cross_check_e: u32,
) -> Result<SplittingReport> {
    let ring = ctx.ring();
    let fpure = fedder_fpure(ctx)?;
    let m = Ideal::maximal(ring);
    let mut levels = Vec::new();
    for e in 1..=max_e {
        let ideal = splitting_ideal(ctx, e)?;
        levels.push(LevelEntry {
            e,
            is_m: ideal.same_ideal(&m)?,
            ideal: ideal.to_strings(),
            a_e: splitting_number(ctx, e)?,
        });
    }
    let mut notes = Vec::new();
    let mut prime_entry = None;
    let mut dimension = None;
    let mut ratios = Vec::new();
    if !fpure {
        notes.push("not F-pure: the splitting prime is undefined".to_string());
    } else {
        match splitting_prime(ctx, max_iter, cross_check_e.min(max_e.max(1))) {
            Ok(prime) => {
                let n = krull_dimension(&prime.ideal)?;
                prime_entry = Some(PrimeEntry {
                    generators: prime.ideal.to_strings(),
                    zero: prime.is_zero(),
                    primality: prime.primality,
                });
                dimension = Some(n);
                for l in &levels {
                    let r = ratio(ctx.p(), l.e, n, l.a_e)?;
                    ratios.push(r.to_string());
                }
            }
            Err(err @ Error::NoStabilize(_)) => notes.push(err.to_string()),
            Err(err) => return Err(err),
        }
    }
    Ok(SplittingReport {
        v: REPORT_VERSION,
        ring: RingEntry::of(ring),
        f: ctx.f().to_string(),
        fpure,
        levels,
        splitting_prime: prime_entry,
        splitting_dimension: dimension,
        ratio_estimates: ratios,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_poly, parse_ring_spec};

    #[test]
    fn report_for_a_cone() {
        let r = parse_ring_spec("p=7 vars=x y z w").unwrap();
        let ctx = HypersurfaceContext::new(parse_poly("x^3 + y^3 + z^3", &r).unwrap()).unwrap();
        let rep = splitting_report(&ctx, 1, 20, 1).unwrap();
        assert!(rep.fpure);
        assert_eq!(rep.levels[0].a_e, 7);
        assert_eq!(rep.splitting_dimension, Some(1));
        assert_eq!(rep.ratio_estimates, ["1"]);
        let json = serde_json::to_string(&rep).unwrap();
        let back: SplittingReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn report_without_f_purity() {
        let r = parse_ring_spec("p=2 vars=x y").unwrap();
        let ctx = HypersurfaceContext::new(parse_poly("x^2 + y^3", &r).unwrap()).unwrap();
        let rep = splitting_report(&ctx, 2, 20, 1).unwrap();
        assert!(!rep.fpure);
        assert!(rep.levels.iter().all(|l| l.a_e == 0 && l.ideal == ["1"]));
        assert!(rep.splitting_prime.is_none());
        assert_eq!(rep.notes.len(), 1);
    }
}
