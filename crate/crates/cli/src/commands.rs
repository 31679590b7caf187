use std::fmt::Write as _;
use std::fs;
use std::time::Duration;

use frobsplit::algebra::{Polynomial, Ring};
use frobsplit::experiments::{
    compare_maximal_bracket, compare_prime_bracket, perturb_in_maximal_bracket, perturb_in_prime_bracket,
    random_campaign, run_fermat_cone_example, run_two_component_example, Baseline, CampaignConfig, GoldenReport,
    PerturbationReport, Trial,
};
use frobsplit::frobenius::{
    fedder_fpure, glassbrenner_witness, jacobian_ideal, splitting_ideal, splitting_number, splitting_prime,
    splitting_ratio_estimate, splitting_report, HypersurfaceContext, PrimeEntry, RingEntry, DEFAULT_CROSS_CHECK_E,
    REPORT_VERSION,
};
use frobsplit::ideal::{cache, krull_dimension, Ideal};
use frobsplit::parser::{parse_poly, parse_ring_file, parse_ring_spec};
use frobsplit::{budget, Error};
use serde_json::{json, Value};

use crate::{Cli, Command, ExampleName, Family, Input};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_COMPUTATION: u8 = 3;
pub const EXIT_VIOLATION: u8 = 4;

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

#[derive(Debug)]
pub struct Failure {
    pub reason: String,
    pub message: String,
    pub code: u8,
}

impl Failure {
    fn usage(reason: &str, message: impl Into<String>) -> Self {
        Self {
            reason: reason.to_string(),
            message: message.into(),
            code: EXIT_USAGE,
        }
    }
}

/// Errors raised while reading input are usage errors; the rest happen
/// during computation.
fn input_error(err: Error) -> Failure {
    Failure::usage(err.code(), err.to_string())
}

fn computation_error(err: Error) -> Failure {
    Failure {
        reason: err.code().to_string(),
        message: err.to_string(),
        code: EXIT_COMPUTATION,
    }
}

struct Loaded {
    ring: Ring,
    f: Polynomial,
    eps: Option<Polynomial>,
    c: Option<Polynomial>,
}

fn load(input: &Input) -> Result<Loaded, Failure> {
    if let Some(path) = &input.input {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::usage("io", format!("cannot read {}: {e}", path.display())))?;
        let file = parse_ring_file(&text).map_err(input_error)?;
        let f = file
            .f
            .ok_or_else(|| Failure::usage("missing-f", format!("{} does not define f", path.display())))?;
        return Ok(Loaded {
            ring: file.ring,
            f,
            eps: file.eps,
            c: file.c,
        });
    }
    match (&input.ring, &input.f) {
        (Some(ring), Some(f)) => {
            let ring = parse_ring_spec(ring).map_err(input_error)?;
            let f = parse_poly(f, &ring).map_err(input_error)?;
            Ok(Loaded {
                ring,
                f,
                eps: None,
                c: None,
            })
        }
        _ => Err(Failure::usage("missing-input", "give -i FILE or both --ring and --f")),
    }
}

fn context(l: &Loaded) -> Result<HypersurfaceContext, Failure> {
    HypersurfaceContext::new(l.f.clone()).map_err(input_error)
}

fn extra(ring: &Ring, inline: &Option<String>, from_file: &Option<Polynomial>, name: &str) -> Result<Polynomial, Failure> {
    match inline {
        Some(text) => parse_poly(text, ring).map_err(input_error),
        None => from_file
            .clone()
            .ok_or_else(|| Failure::usage("missing-input", format!("--{name} is required"))),
    }
}

fn header(ctx: &HypersurfaceContext) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("v".into(), json!(REPORT_VERSION));
    m.insert("ring".into(), json!(RingEntry::of(ctx.ring())));
    m.insert("f".into(), json!(ctx.f().to_string()));
    m
}

fn with_header(ctx: &HypersurfaceContext, fields: Value) -> Value {
    let mut m = header(ctx);
    if let Value::Object(extra) = fields {
        m.extend(extra);
    }
    Value::Object(m)
}

fn ideal_text(i: &Ideal) -> String {
    format!("({})", i.to_strings().join(", "))
}

fn emit(json_mode: bool, value: &Value, text: String, code: u8) -> Outcome {
    let stdout = if json_mode {
        let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
        s.push('\n');
        s
    } else {
        text
    };
    Outcome { stdout, code }
}

/// Parses and validates everything first, then computes under the budget.
pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let job = prepare(cli)?;
    if let Some(dir) = &cli.cache_dir {
        cache::install_gb_cache(dir).map_err(|e| Failure::usage("cache-dir", e.to_string()))?;
    }
    // campaigns apply the budget per trial instead
    let limit = match cli.command {
        Command::Campaign { .. } => None,
        _ => cli.budget_seconds.map(Duration::from_secs_f64),
    };
    budget::with_deadline(limit, || job(cli.json)).map_err(computation_error)
}

type Job<'a> = Box<dyn FnOnce(bool) -> frobsplit::Result<Outcome> + 'a>;

fn prepare(cli: &Cli) -> Result<Job<'_>, Failure> {
    Ok(match &cli.command {
        Command::Fpure { input } => {
            let ctx = context(&load(input)?)?;
            Box::new(move |js| {
                let fp = fedder_fpure(&ctx)?;
                Ok(emit(js, &with_header(&ctx, json!({ "fpure": fp })), format!("F-pure: {fp}\n"), EXIT_OK))
            })
        }
        Command::SplittingIdeal { input, e } => {
            let ctx = context(&load(input)?)?;
            let e = *e;
            Box::new(move |js| {
                let i = splitting_ideal(&ctx, e)?.with_gb()?;
                let is_m = i.same_ideal(&Ideal::maximal(ctx.ring()))?;
                let value = with_header(&ctx, json!({ "e": e, "ideal": i.to_strings(), "is_m": is_m }));
                Ok(emit(js, &value, format!("I_{e} = {}\n", ideal_text(&i)), EXIT_OK))
            })
        }
        Command::SplittingNumbers { input, max_e, max_iter } => {
            let ctx = context(&load(input)?)?;
            let (max_e, max_iter) = (*max_e, *max_iter as usize);
            Box::new(move |js| {
                let rep = splitting_report(&ctx, max_e, max_iter, DEFAULT_CROSS_CHECK_E.min(max_e))?;
                let mut text = format!("F-pure: {}\n{:>3}  {:>10}  {:>7}  {}\n", rep.fpure, "e", "a_e", "I_e = m", "ratio");
                for (k, l) in rep.levels.iter().enumerate() {
                    let r = rep.ratio_estimates.get(k).map_or("-", String::as_str);
                    let _ = writeln!(text, "{:>3}  {:>10}  {:>7}  {}", l.e, l.a_e, l.is_m, r);
                }
                if let Some(p) = &rep.splitting_prime {
                    let _ = writeln!(text, "splitting prime: ({})", p.generators.join(", "));
                }
                if let Some(n) = rep.splitting_dimension {
                    let _ = writeln!(text, "splitting dimension: {n}");
                }
                for note in &rep.notes {
                    let _ = writeln!(text, "note: {note}");
                }
                Ok(emit(js, &json!(rep), text, EXIT_OK))
            })
        }
        Command::SplittingPrime { input, max_iter, max_e } => {
            let ctx = context(&load(input)?)?;
            let (max_iter, max_e) = (*max_iter as usize, *max_e);
            Box::new(move |js| {
                let prime = splitting_prime(&ctx, max_iter, max_e)?;
                let entry = PrimeEntry {
                    generators: prime.ideal.to_strings(),
                    zero: prime.is_zero(),
                    primality: prime.primality,
                };
                let mut value = with_header(&ctx, json!(entry));
                value["iterations"] = json!(prime.iterations);
                value["cross_checked"] = json!(prime.cross_checked);
                let mut text = format!("splitting prime: {}\n", ideal_text(&prime.ideal));
                let _ = writeln!(text, "primality: {}", json!(prime.primality).as_str().unwrap_or("?"));
                if prime.is_zero() {
                    text.push_str("the splitting prime of R/(f) is zero\n");
                }
                Ok(emit(js, &value, text, EXIT_OK))
            })
        }
        Command::Dimension { input, max_iter } => {
            let ctx = context(&load(input)?)?;
            let max_iter = *max_iter as usize;
            Box::new(move |js| {
                let prime = splitting_prime(&ctx, max_iter, DEFAULT_CROSS_CHECK_E)?;
                let n = krull_dimension(&prime.ideal)?;
                let value = with_header(&ctx, json!({ "splitting_dimension": n }));
                Ok(emit(js, &value, format!("splitting dimension: {n}\n"), EXIT_OK))
            })
        }
        Command::Ratio { input, e } => {
            let ctx = context(&load(input)?)?;
            let e = *e;
            Box::new(move |js| {
                let a = splitting_number(&ctx, e)?;
                let r = splitting_ratio_estimate(&ctx, e)?;
                let value = with_header(&ctx, json!({ "e": e, "a_e": a, "ratio": r.to_string() }));
                Ok(emit(js, &value, format!("a_{e} = {a}\nratio: {r}\n"), EXIT_OK))
            })
        }
        Command::Jacobian { input } => {
            let ctx = context(&load(input)?)?;
            Box::new(move |js| {
                let jac = jacobian_ideal(ctx.f())?;
                let gens: Vec<String> = jac.generators().iter().map(|g| g.to_string()).collect();
                let value = with_header(&ctx, json!({ "jacobian": gens }));
                Ok(emit(js, &value, format!("Jac(f) = ({})\n", gens.join(", ")), EXIT_OK))
            })
        }
        Command::SfrCheck { input, c, max_e } => {
            let loaded = load(input)?;
            let c = extra(&loaded.ring, c, &loaded.c, "c")?;
            if c.is_zero() {
                return Err(Failure::usage("bad-witness", "c must be nonzero"));
            }
            let ctx = context(&loaded)?;
            let max_e = *max_e;
            Box::new(move |js| {
                let w = glassbrenner_witness(&ctx, &c, max_e)?;
                let mut value = with_header(&ctx, json!(w));
                value["c"] = json!(c.to_string());
                let mut text = format!("strongly F-regular (witness {c}): {}\n", w.verdict);
                let _ = writeln!(text, "c f^(q-1) outside m^[q] first at e = {}", w.nonmembership_e.map_or("-".into(), |e| e.to_string()));
                let _ = writeln!(text, "c in radical of Jac(f) + (f): {}", w.c_in_singular_radical);
                Ok(emit(js, &value, text, EXIT_OK))
            })
        }
        Command::Perturb {
            input,
            theorem,
            eps,
            seed,
            samples,
            e,
            max_e,
            max_iter,
        } => {
            let loaded = load(input)?;
            let random = seed.is_some() || samples.is_some();
            let eps = if random { None } else { Some(extra(&loaded.ring, eps, &loaded.eps, "eps")?) };
            if eps.as_ref().is_some_and(Polynomial::is_zero) {
                return Err(Failure::usage("invalid", "ε must be nonzero"));
            }
            let ctx = context(&loaded)?;
            let (family, e0, max_iter) = (*theorem, *e, *max_iter as usize);
            let e_range: Vec<u32> = (1..=*max_e).collect();
            let seed = seed.unwrap_or(0);
            let samples = samples.unwrap_or(1) as usize;
            Box::new(move |js| {
                let trials = match (&eps, family) {
                    (Some(eps), Family::A) => {
                        let base = Baseline::compute(&ctx, max_iter)?;
                        vec![compare_prime_bracket(&ctx, &base, eps, &e_range, max_iter)?]
                    }
                    (Some(eps), Family::B) => {
                        let base = Baseline::compute(&ctx, max_iter)?;
                        vec![compare_maximal_bracket(&ctx, &base, eps, e0, max_iter)?]
                    }
                    (None, Family::A) => perturb_in_prime_bracket(&ctx, samples, &e_range, seed, max_iter)?,
                    (None, Family::B) => perturb_in_maximal_bracket(&ctx, samples, e0, seed, max_iter)?,
                };
                let rep = PerturbationReport::new(&ctx, eps.is_none().then_some(seed), trials);
                let code = if rep.aggregates.failed > 0 { EXIT_VIOLATION } else { EXIT_OK };
                Ok(emit(js, &json!(rep), perturbation_text(&rep), code))
            })
        }
        Command::Example { name } => {
            let name = *name;
            Box::new(move |js| {
                let rep = match name {
                    ExampleName::TwoComponent => run_two_component_example()?,
                    ExampleName::FermatCone => run_fermat_cone_example()?,
                };
                let code = if rep.passed { EXIT_OK } else { EXIT_VIOLATION };
                if let Some(c) = rep.first_divergence() {
                    eprintln!("golden mismatch in {}: expected {}, got {}", c.field, c.expected, c.actual);
                }
                Ok(emit(js, &json!(rep), golden_text(&rep), code))
            })
        }
        Command::Campaign {
            p,
            n_vars,
            degree,
            trials,
            seed,
            max_e,
            samples,
            e,
            timings,
        } => {
            let mut config = CampaignConfig::new(*p, *n_vars, *degree, *trials, *seed);
            config.e_range = (1..=*max_e).collect();
            config.eps_samples = *samples as usize;
            config.e0 = *e;
            config.budget_seconds = cli.budget_seconds;
            config.record_timings = *timings;
            config.validate().map_err(input_error)?;
            Box::new(move |js| {
                let rep = random_campaign(&config)?;
                let a = &rep.aggregates;
                let mut text = format!("trials: {}  F-pure: {}  completed: {}  errors: {}\n", a.trials, a.fpure, a.completed, a.errors);
                for (reason, n) in &a.skipped {
                    let _ = writeln!(text, "skipped ({reason}): {n}");
                }
                for (name, c) in [("A", &a.prime_bracket), ("B", &a.maximal_bracket)] {
                    let _ = writeln!(
                        text,
                        "family {name}: {} completed, {} skipped, {} passed, {} failed, {} strict",
                        c.completed, c.skipped, c.passed, c.failed, c.strict
                    );
                }
                let _ = writeln!(text, "battery: {} checked, {} inconsistent", a.battery.checked, a.battery.inconsistent);
                for v in &a.violations {
                    let _ = writeln!(text, "violation ({}) trial {}: f = {}, eps = {:?}: {}", v.kind, v.trial, v.f, v.eps, v.detail);
                }
                let code = if rep.violation_count() > 0 { EXIT_VIOLATION } else { EXIT_OK };
                Ok(emit(js, &json!(rep), text, code))
            })
        }
    })
}

fn perturbation_text(rep: &PerturbationReport) -> String {
    let mut text = String::new();
    for t in &rep.trials {
        match t {
            Trial::Completed { outcome: o } => {
                let _ = writeln!(text, "eps = {}", o.eps);
                let _ = writeln!(text, "  in hypothesis: {}", o.in_hypothesis);
                if !o.e_range.is_empty() {
                    let _ = writeln!(text, "  a_e before {:?} after {:?}", o.a_before, o.a_after);
                }
                let dim_after = o.dim_after.map_or("-".into(), |d| d.to_string());
                let _ = writeln!(text, "  dimension before {} after {}", o.dim_before, dim_after);
                if let Some(p) = &o.p_after {
                    let _ = writeln!(text, "  splitting prime after: ({})", p.join(", "));
                }
                let _ = writeln!(text, "  violation: {}", o.is_violation());
            }
            Trial::Skipped { eps, reason, detail } => {
                let _ = writeln!(text, "eps = {}: skipped ({}) {detail}", eps.as_deref().unwrap_or("?"), reason.code());
            }
        }
    }
    text
}

fn golden_text(rep: &GoldenReport) -> String {
    let mut text = format!("{} (f = {})\n", rep.name, rep.f);
    for c in &rep.checks {
        let mark = if c.pass { "ok" } else if c.optional && c.actual.is_null() { "skipped" } else { "MISMATCH" };
        let _ = writeln!(text, "  {:<28} {:<8} {}", c.field, mark, c.actual);
    }
    let _ = writeln!(text, "passed: {}", rep.passed);
    text
}
