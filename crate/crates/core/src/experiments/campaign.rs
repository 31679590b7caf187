use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::monomial::MonomialOrder;
use crate::algebra::ring::{Ring, RingSpec, MAX_USER_VARS};
use crate::budget;
use crate::error::{Error, Result};
use crate::experiments::{
    maximal_bracket_trials, prime_bracket_trials, random_polynomial, sample_rng, Baseline, HarnessCounts,
    SkipReason, Trial,
};
use crate::frobenius::{equivalence_battery, fedder_fpure, BatteryRecord, HypersurfaceContext, RingEntry, REPORT_VERSION};

const VAR_NAMES: [&str; 8] = ["x", "y", "z", "w", "u", "v", "s", "t"];
const MAX_F_TERMS: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub p: u32,
    pub n_vars: usize,
    /// Total degree bound for the random `f` (terms have degree at least 2).
    pub degree: u32,
    pub trials: usize,
    pub seed: u64,
    /// Levels for splitting-number comparisons and the battery.
    pub e_range: Vec<u32>,
    /// Perturbations drawn per family and per `f`.
    pub eps_samples: usize,
    pub e0: u32,
    pub max_iter: usize,
    /// Wall-clock budget per trial; budget skips depend on machine speed.
    pub budget_seconds: Option<f64>,
    pub record_timings: bool,
}

impl CampaignConfig {
    pub fn new(p: u32, n_vars: usize, degree: u32, trials: usize, seed: u64) -> Self {
        Self {
            p,
            n_vars,
            degree,
            trials,
            seed,
            e_range: vec![1, 2],
            eps_samples: 3,
            e0: 1,
            max_iter: crate::frobenius::DEFAULT_MAX_ITER,
            budget_seconds: Some(60.0),
            record_timings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_vars == 0 || self.n_vars > MAX_USER_VARS.min(VAR_NAMES.len()) {
            return Err(Error::TooManyVars(self.n_vars));
        }
        if self.degree < 2 {
            return Err(Error::Invalid("degree bound must be at least 2".into()));
        }
        if self.e_range.is_empty() || self.e_range.contains(&0) {
            return Err(Error::Invalid("e_range must be nonempty and positive".into()));
        }
        if self.eps_samples == 0 || self.e0 == 0 || self.max_iter == 0 {
            return Err(Error::Invalid("eps_samples, e0 and max_iter must be positive".into()));
        }
        if self.budget_seconds.is_some_and(|b| !(b > 0.0 && b.is_finite())) {
            return Err(Error::Invalid("budget must be positive".into()));
        }
        self.ring().map(|_| ())
    }

    pub fn ring(&self) -> Result<Ring> {
        let vars = VAR_NAMES[..self.n_vars].iter().map(|s| s.to_string()).collect();
        RingSpec::new(self.p as u64, vars, MonomialOrder::Grevlex)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrialStatus {
    Completed,
    Skipped,
    /// An unexpected error: counted as a failure.
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignTrial {
    pub index: usize,
    pub f: String,
    pub status: TrialStatus,
    pub reason: Option<SkipReason>,
    pub detail: Option<String>,
    pub prime: Option<Vec<String>>,
    pub dimension: Option<usize>,
    pub prime_bracket: Vec<Trial>,
    pub maximal_bracket: Vec<Trial>,
    pub battery: Option<BatteryRecord>,
}

/// Everything needed to rerun a failing comparison by hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reproduction {
    pub trial: usize,
    pub kind: String,
    pub ring: String,
    pub f: String,
    pub eps: Option<String>,
    pub seed: u64,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryCounts {
    pub checked: usize,
    pub consistent: usize,
    pub inconsistent: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aggregates {
    pub trials: usize,
    pub fpure: usize,
    pub completed: usize,
    pub errors: usize,
    /// Trial-level skips by reason code.
    pub skipped: BTreeMap<String, usize>,
    pub prime_bracket: HarnessCounts,
    pub maximal_bracket: HarnessCounts,
    pub battery: BatteryCounts,
    pub violations: Vec<Reproduction>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: u64,
    pub trial_ms: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub v: u32,
    pub ring: RingEntry,
    /// Random campaigns draw a fresh `f` per trial.
    pub f: Option<String>,
    pub seed: u64,
    pub config: CampaignConfig,
    pub trials: Vec<CampaignTrial>,
    pub aggregates: Aggregates,
    pub timings: Option<Timings>,
}

impl CampaignReport {
    pub fn violation_count(&self) -> usize {
        self.aggregates.violations.len()
    }
}

fn skipped_trial(index: usize, f: String, err: Error) -> CampaignTrial {
    let mut t = CampaignTrial {
        index,
        f,
        status: TrialStatus::Skipped,
        reason: None,
        detail: None,
        prime: None,
        dimension: None,
        prime_bracket: Vec::new(),
        maximal_bracket: Vec::new(),
        battery: None,
    };
    match SkipReason::classify(err) {
        Ok((reason, detail)) => {
            t.reason = Some(reason);
            t.detail = Some(detail);
        }
        Err(err) => {
            t.status = TrialStatus::Error;
            t.detail = Some(format!("{} ({})", err, err.code()));
        }
    }
    t
}

fn run_trial(config: &CampaignConfig, ring: &Ring, index: usize) -> CampaignTrial {
    let mut rng = sample_rng(config.seed, index as u64);
    let f = loop {
        let f = random_polynomial(&mut rng, ring, 2, config.degree, MAX_F_TERMS);
        if !f.is_zero() {
            break f;
        }
    };
    let seed_a: u64 = rng.gen();
    let seed_b: u64 = rng.gen();
    let f_text = f.to_string();
    let limit = config.budget_seconds.map(Duration::from_secs_f64);
    let body = || -> Result<CampaignTrial> {
        let ctx = HypersurfaceContext::new(f)?;
        if !fedder_fpure(&ctx)? {
            return Err(Error::NotFPure);
        }
        let base = Baseline::compute(&ctx, config.max_iter)?;
        let prime_bracket = prime_bracket_trials(&ctx, &base, config.eps_samples, &config.e_range, seed_a, config.max_iter)?;
        let maximal_bracket = maximal_bracket_trials(&ctx, &base, config.eps_samples, config.e0, seed_b, config.max_iter)?;
        let max_e = config.e_range.iter().copied().max().unwrap_or(1);
        // the battery is optional: a budget skip there keeps the harness results
        let battery = match equivalence_battery(&ctx, max_e) {
            Ok(b) => Some(b),
            Err(err) => SkipReason::classify(err).map(|_| None)?,
        };
        Ok(CampaignTrial {
            index,
            f: f_text.clone(),
            status: TrialStatus::Completed,
            reason: None,
            detail: None,
            prime: Some(base.prime.ideal.to_strings()),
            dimension: Some(base.dimension),
            prime_bracket,
            maximal_bracket,
            battery,
        })
    };
    match budget::with_deadline(limit, body) {
        Ok(t) => t,
        Err(err) => skipped_trial(index, f_text.clone(), err),
    }
}

fn aggregate(config: &CampaignConfig, ring: &Ring, trials: &[CampaignTrial]) -> Aggregates {
    let mut agg = Aggregates {
        trials: trials.len(),
        ..Aggregates::default()
    };
    let ring_text = ring.to_spec_text();
    let bundle = |t: &CampaignTrial, kind: &str, eps: Option<String>, detail: String| Reproduction {
        trial: t.index,
        kind: kind.to_string(),
        ring: ring_text.clone(),
        f: t.f.clone(),
        eps,
        seed: config.seed,
        detail,
    };
    for t in trials {
        match t.status {
            TrialStatus::Completed => {
                agg.completed += 1;
                agg.fpure += 1;
            }
            TrialStatus::Skipped => {
                let code = t.reason.map_or("unknown", SkipReason::code);
                *agg.skipped.entry(code.to_string()).or_default() += 1;
                if t.reason != Some(SkipReason::NotFPure) {
                    agg.fpure += 1;
                }
            }
            TrialStatus::Error => {
                agg.errors += 1;
                agg.violations.push(bundle(t, "error", None, t.detail.clone().unwrap_or_default()));
            }
        }
        for (trials, counts, kind) in [
            (&t.prime_bracket, &mut agg.prime_bracket, "prime-bracket"),
            (&t.maximal_bracket, &mut agg.maximal_bracket, "maximal-bracket"),
        ] {
            for tr in trials {
                counts.add(tr);
                if let Some(o) = tr.outcome().filter(|o| o.is_violation()) {
                    let detail = match kind {
                        "prime-bracket" => format!("a_e {:?} became {:?}", o.a_before, o.a_after),
                        _ => format!("dimension {} became {:?}", o.dim_before, o.dim_after),
                    };
                    agg.violations.push(bundle(t, kind, Some(o.eps.clone()), detail));
                }
            }
        }
        match &t.battery {
            Some(b) => {
                agg.battery.checked += 1;
                if b.consistent {
                    agg.battery.consistent += 1;
                } else {
                    agg.battery.inconsistent += 1;
                    agg.violations.push(bundle(t, "battery", None, format!("{b:?}")));
                }
            }
            None if t.status == TrialStatus::Completed => agg.battery.skipped += 1,
            None => {}
        }
    }
    agg
}

/// Runs `config.trials` independent trials in parallel; results are merged
/// in trial order, so reports depend only on the configuration (and, when a
/// budget is set, on whether any trial ran out of time).
pub fn random_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    config.validate()?;
    let ring = config.ring()?;
    let start = Instant::now();
    let results: Vec<(CampaignTrial, u64)> = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let t0 = Instant::now();
            let t = run_trial(config, &ring, i);
            (t, t0.elapsed().as_millis() as u64)
        })
        .collect();
    let (trials, trial_ms): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let timings = config.record_timings.then(|| Timings {
        total_ms: start.elapsed().as_millis() as u64,
        trial_ms,
    });
    Ok(CampaignReport {
        v: REPORT_VERSION,
        ring: RingEntry::of(&ring),
        f: None,
        seed: config.seed,
        aggregates: aggregate(config, &ring, &trials),
        config: config.clone(),
        trials,
        timings,
    })
}
