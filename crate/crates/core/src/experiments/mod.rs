//! Perturbation harnesses, golden example runs and seeded random campaigns.
//!
//! Two perturbation families are exercised:
//!
//! * `ε ∈ P^[p]` for the splitting prime `P` of `R/(f)`, where every `a_e`
//!   must be unchanged;
//! * `ε ∈ m^[p^e0]`, where the splitting dimension may only grow, provided
//!   `f + ε` stays F-pure.

mod campaign;
mod golden;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::monomial::Monomial;
use crate::algebra::poly::Polynomial;
use crate::algebra::ring::{same_ring, Ring};
use crate::error::{Error, Result};
use crate::frobenius::{
    bracket_power, fedder_fpure, splitting_number, splitting_prime, HypersurfaceContext, RingEntry,
    SplittingPrime, REPORT_VERSION,
};
use crate::ideal::{krull_dimension, Ideal};

pub use campaign::{
    random_campaign, Aggregates, BatteryCounts, CampaignConfig, CampaignReport, CampaignTrial, Reproduction,
    Timings, TrialStatus,
};
pub use golden::{run_fermat_cone_example, run_two_component_example, GoldenCheck, GoldenReport};

/// Cross-check depth used by the harnesses; kept small since every trial
/// recomputes splitting primes.
const HARNESS_CROSS_CHECK_E: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PerturbationKind {
    /// `ε ∈ P^[p]`: splitting numbers are preserved.
    PrimeBracket,
    /// `ε ∈ m^[p^e0]`: splitting dimension does not drop.
    MaximalBracket,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipReason {
    NotFPure,
    Budget,
    Overflow,
    /// The splitting prime of `f + ε` could not be certified.
    Uncertified,
}

impl SkipReason {
    /// Expected failure modes become skip reasons; anything else is a bug
    /// and is passed through.
    pub fn classify(err: Error) -> Result<(SkipReason, String)> {
        let reason = match err {
            Error::NotFPure => SkipReason::NotFPure,
            Error::BudgetExceeded | Error::TooLarge { .. } => SkipReason::Budget,
            Error::Overflow(_) => SkipReason::Overflow,
            Error::NoStabilize(_) => SkipReason::Uncertified,
            other => return Err(other),
        };
        Ok((reason, err.to_string()))
    }

    pub fn code(self) -> &'static str {
        match self {
            SkipReason::NotFPure => "not-f-pure",
            SkipReason::Budget => "budget",
            SkipReason::Overflow => "overflow",
            SkipReason::Uncertified => "uncertified",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbationOutcome {
    pub kind: PerturbationKind,
    pub f: String,
    pub eps: String,
    /// `ε` satisfies the membership hypothesis of its family.
    pub in_hypothesis: bool,
    pub e_range: Vec<u32>,
    pub a_before: Vec<u64>,
    pub a_after: Vec<u64>,
    pub p_before: Vec<String>,
    pub p_after: Option<Vec<String>>,
    pub dim_before: usize,
    pub dim_after: Option<usize>,
    /// `a_e(f) = a_e(f + ε)` over `e_range`; absent for maximal-bracket
    /// perturbations, where it is not predicted.
    pub verdict_a: Option<bool>,
    pub verdict_b: Option<bool>,
    pub strict_b: Option<bool>,
}

impl PerturbationOutcome {
    /// The prediction of this family failed although its hypothesis held.
    pub fn is_violation(&self) -> bool {
        if !self.in_hypothesis {
            return false;
        }
        match self.kind {
            PerturbationKind::PrimeBracket => self.verdict_a == Some(false),
            PerturbationKind::MaximalBracket => self.verdict_b == Some(false),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Trial {
    Completed {
        outcome: PerturbationOutcome,
    },
    Skipped {
        eps: Option<String>,
        reason: SkipReason,
        detail: String,
    },
}

impl Trial {
    pub fn outcome(&self) -> Option<&PerturbationOutcome> {
        match self {
            Trial::Completed { outcome } => Some(outcome),
            Trial::Skipped { .. } => None,
        }
    }

    fn skipped(eps: Option<&Polynomial>, err: Error) -> Result<Trial> {
        let (reason, detail) = SkipReason::classify(err)?;
        Ok(Trial::Skipped {
            eps: eps.map(|e| e.to_string()),
            reason,
            detail,
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessCounts {
    pub completed: usize,
    pub skipped: usize,
    pub passed: usize,
    pub failed: usize,
    pub strict: usize,
}

impl HarnessCounts {
    pub fn tally<'a>(trials: impl IntoIterator<Item = &'a Trial>) -> Self {
        let mut c = HarnessCounts::default();
        for t in trials {
            c.add(t);
        }
        c
    }

    pub(crate) fn add(&mut self, t: &Trial) {
        match t.outcome() {
            None => self.skipped += 1,
            Some(o) => {
                self.completed += 1;
                if o.is_violation() {
                    self.failed += 1;
                } else {
                    self.passed += 1;
                }
                if o.strict_b == Some(true) {
                    self.strict += 1;
                }
            }
        }
    }
}

/// Standalone perturbation run, for reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbationReport {
    pub v: u32,
    pub ring: RingEntry,
    pub f: Option<String>,
    pub seed: Option<u64>,
    pub trials: Vec<Trial>,
    pub aggregates: HarnessCounts,
    pub timings: Option<Timings>,
}

impl PerturbationReport {
    pub fn new(ctx: &HypersurfaceContext, seed: Option<u64>, trials: Vec<Trial>) -> Self {
        Self {
            v: REPORT_VERSION,
            ring: RingEntry::of(ctx.ring()),
            f: Some(ctx.f().to_string()),
            seed,
            aggregates: HarnessCounts::tally(&trials),
            trials,
            timings: None,
        }
    }
}

/// Splitting prime and `dim R/P` of `f`, the baseline of every harness.
#[derive(Debug, Clone)]
pub struct Baseline {
    pub prime: SplittingPrime,
    pub dimension: usize,
}

impl Baseline {
    pub fn compute(ctx: &HypersurfaceContext, max_iter: usize) -> Result<Baseline> {
        let prime = splitting_prime(ctx, max_iter, HARNESS_CROSS_CHECK_E)?;
        let dimension = krull_dimension(&prime.ideal)?;
        Ok(Baseline { prime, dimension })
    }
}

/// Stream-separated generator for sample `index` of a run seeded by `seed`.
pub(crate) fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_monomial(rng: &mut impl Rng, n: usize, degree: u32) -> Monomial {
    let mut m = Monomial::one(n);
    for _ in 0..degree {
        let i = rng.gen_range(0..n);
        m.set_exponent(i, m.exponent(i) + 1);
    }
    m
}

/// Sum of `1..=max_terms` random terms with degrees in `min_deg..=max_deg`
/// and nonzero coefficients; may cancel to zero.
pub(crate) fn random_polynomial(
    rng: &mut impl Rng,
    ring: &Ring,
    min_deg: u32,
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    let n = ring.nvars();
    let count = rng.gen_range(1..=max_terms);
    let terms: Vec<(Monomial, u32)> = (0..count)
        .map(|_| {
            let d = rng.gen_range(min_deg..=max_deg);
            (random_monomial(rng, n, d), rng.gen_range(1..ring.p()))
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

const MULTIPLIER_DEGREE: u32 = 3;
const MULTIPLIER_TERMS: usize = 2;
const RESAMPLE_LIMIT: usize = 16;

/// `Σ r_g g^[p]` over the reduced basis of `P`, with sparse random `r_g` of
/// degree at most 3.
pub fn sample_prime_bracket(rng: &mut impl Rng, prime: &Ideal) -> Result<Polynomial> {
    let ring = prime.ring();
    let gb = prime.with_gb()?;
    let gens = gb.gb().expect("computed");
    for _ in 0..RESAMPLE_LIMIT {
        let mut eps = Polynomial::zero(ring);
        for g in gens {
            let r = random_polynomial(rng, ring, 0, MULTIPLIER_DEGREE, MULTIPLIER_TERMS);
            eps = &eps + &(&r * &g.pow_charp(1)?);
        }
        if !eps.is_zero() {
            return Ok(eps);
        }
    }
    Err(Error::Invalid("could not draw a nonzero perturbation".into()))
}

/// `Σ r_i x_i^q` over a random nonempty set of variables, `q = p^e0`.
pub fn sample_maximal_bracket(rng: &mut impl Rng, ring: &Ring, e0: u32) -> Result<Polynomial> {
    let n = ring.nvars();
    let q = crate::frobenius::q_of(ring.p(), e0)?;
    let q = u32::try_from(q).map_err(|_| Error::Overflow(format!("p^{e0}")))?;
    for _ in 0..RESAMPLE_LIMIT {
        let mut eps = Polynomial::zero(ring);
        for i in 0..n {
            if rng.gen_bool(0.5) {
                continue;
            }
            let r = random_polynomial(rng, ring, 0, MULTIPLIER_DEGREE, MULTIPLIER_TERMS);
            eps = &eps + &r.mul_term(1, &Monomial::variable(n, i, q));
        }
        if !eps.is_zero() {
            return Ok(eps);
        }
    }
    Err(Error::Invalid("could not draw a nonzero perturbation".into()))
}

fn perturbed(ctx: &HypersurfaceContext, eps: &Polynomial) -> Result<HypersurfaceContext> {
    if !same_ring(eps.ring(), ctx.ring()) {
        return Err(Error::RingMismatch);
    }
    if eps.is_zero() {
        return Err(Error::Invalid("ε must be nonzero".into()));
    }
    let g = ctx.f() + eps;
    if g.is_zero() {
        return Err(Error::Invalid("f + ε must be nonzero".into()));
    }
    Ok(HypersurfaceContext::new(g)?.with_cap(ctx.cap()))
}

fn numbers(ctx: &HypersurfaceContext, e_range: &[u32]) -> Result<Vec<u64>> {
    e_range.iter().map(|&e| splitting_number(ctx, e)).collect()
}

/// Splitting prime of the perturbed context if it can be certified.
fn optional_prime(ctx: &HypersurfaceContext, max_iter: usize) -> Result<Option<Baseline>> {
    match Baseline::compute(ctx, max_iter) {
        Ok(b) => Ok(Some(b)),
        Err(err) => SkipReason::classify(err).map(|_| None),
    }
}

/// Compares `f` and `f + ε` for one prime-bracket perturbation.
pub fn compare_prime_bracket(
    ctx: &HypersurfaceContext,
    base: &Baseline,
    eps: &Polynomial,
    e_range: &[u32],
    max_iter: usize,
) -> Result<Trial> {
    let run = || -> Result<PerturbationOutcome> {
        let after = perturbed(ctx, eps)?;
        let in_hypothesis = bracket_power(&base.prime.ideal, 1)?.contains(eps)?;
        let a_before = numbers(ctx, e_range)?;
        let a_after = numbers(&after, e_range)?;
        let after_prime = optional_prime(&after, max_iter)?;
        let dim_after = after_prime.as_ref().map(|b| b.dimension);
        Ok(PerturbationOutcome {
            kind: PerturbationKind::PrimeBracket,
            f: ctx.f().to_string(),
            eps: eps.to_string(),
            in_hypothesis,
            e_range: e_range.to_vec(),
            verdict_a: Some(a_before == a_after),
            a_before,
            a_after,
            p_before: base.prime.ideal.to_strings(),
            p_after: after_prime.map(|b| b.prime.ideal.to_strings()),
            dim_before: base.dimension,
            dim_after,
            verdict_b: dim_after.map(|d| base.dimension <= d),
            strict_b: dim_after.map(|d| base.dimension < d),
        })
    };
    match run() {
        Ok(outcome) => Ok(Trial::Completed { outcome }),
        Err(err) => Trial::skipped(Some(eps), err),
    }
}

/// Compares `f` and `f + ε` for one maximal-bracket perturbation with
/// `ε ∈ m^[p^e0]`. Trials where `f + ε` is not F-pure are skipped.
pub fn compare_maximal_bracket(
    ctx: &HypersurfaceContext,
    base: &Baseline,
    eps: &Polynomial,
    e0: u32,
    max_iter: usize,
) -> Result<Trial> {
    let run = || -> Result<PerturbationOutcome> {
        let after = perturbed(ctx, eps)?;
        let in_hypothesis = bracket_power(&Ideal::maximal(ctx.ring()), e0)?.contains(eps)?;
        if !fedder_fpure(&after)? {
            return Err(Error::NotFPure);
        }
        let b = Baseline::compute(&after, max_iter)?;
        Ok(PerturbationOutcome {
            kind: PerturbationKind::MaximalBracket,
            f: ctx.f().to_string(),
            eps: eps.to_string(),
            in_hypothesis,
            e_range: Vec::new(),
            a_before: Vec::new(),
            a_after: Vec::new(),
            p_before: base.prime.ideal.to_strings(),
            p_after: Some(b.prime.ideal.to_strings()),
            dim_before: base.dimension,
            dim_after: Some(b.dimension),
            verdict_a: None,
            verdict_b: Some(base.dimension <= b.dimension),
            strict_b: Some(base.dimension < b.dimension),
        })
    };
    match run() {
        Ok(outcome) => Ok(Trial::Completed { outcome }),
        Err(err) => Trial::skipped(Some(eps), err),
    }
}

/// `samples` random perturbations `ε ∈ P^[p]`, comparing `a_e` for
/// `e ∈ e_range`. Sample `k` uses stream `k` of `seed`.
pub fn perturb_in_prime_bracket(
    ctx: &HypersurfaceContext,
    samples: usize,
    e_range: &[u32],
    seed: u64,
    max_iter: usize,
) -> Result<Vec<Trial>> {
    let base = Baseline::compute(ctx, max_iter)?;
    prime_bracket_trials(ctx, &base, samples, e_range, seed, max_iter)
}

pub(crate) fn prime_bracket_trials(
    ctx: &HypersurfaceContext,
    base: &Baseline,
    samples: usize,
    e_range: &[u32],
    seed: u64,
    max_iter: usize,
) -> Result<Vec<Trial>> {
    (0..samples)
        .map(|k| {
            let eps = sample_prime_bracket(&mut sample_rng(seed, k as u64), &base.prime.ideal)?;
            compare_prime_bracket(ctx, base, &eps, e_range, max_iter)
        })
        .collect()
}

/// `samples` random perturbations `ε ∈ m^[p^e0]`, comparing splitting
/// dimensions.
pub fn perturb_in_maximal_bracket(
    ctx: &HypersurfaceContext,
    samples: usize,
    e0: u32,
    seed: u64,
    max_iter: usize,
) -> Result<Vec<Trial>> {
    let base = Baseline::compute(ctx, max_iter)?;
    maximal_bracket_trials(ctx, &base, samples, e0, seed, max_iter)
}

pub(crate) fn maximal_bracket_trials(
    ctx: &HypersurfaceContext,
    base: &Baseline,
    samples: usize,
    e0: u32,
    seed: u64,
    max_iter: usize,
) -> Result<Vec<Trial>> {
    if e0 == 0 {
        return Err(Error::Invalid("e0 must be at least 1".into()));
    }
    (0..samples)
        .map(|k| {
            let eps = sample_maximal_bracket(&mut sample_rng(seed, k as u64), ctx.ring(), e0)?;
            compare_maximal_bracket(ctx, base, &eps, e0, max_iter)
        })
        .collect()
}
