//! Experiment driver. Every subcommand prints one report (json by default)
//! and exits 0 when the checked properties hold, 1 when a property fails
//! (the report is still printed), 2 on usage errors.
//!
//! Seeding: trial `t` of a run with base seed `s` uses the library's
//! `seeds::mix(s, t)` stream split (a SplitMix64 finalizer), feeding a
//! ChaCha8 generator, so any single trial can be reproduced in isolation.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cube_spectra::chebyshev::{level_l1_bound, sup_norm_bound};
use cube_spectra::extremal::{
    chebyshev_sharpness_check, random_sign_homogeneous, scaled_chebyshev_function,
};
use cube_spectra::filter::{build_filter, cos_moment};
use cube_spectra::io::{read_function, read_recorded_samples, ParsedFunction};
use cube_spectra::learning::{
    capacity, learn, model_error, sample_complexity, LearnConfig, QueryOracle,
};
use cube_spectra::pisier::{check_norm_axioms, pisier_check, LpNorm};
use cube_spectra::proxy::{extract_level, proxy_profile, ProxyVariant};
use cube_spectra::realrooted::{sequence_checks, suffix_sign_check};
use cube_spectra::{corpus, seeds, Error};

use report::{render, Format, Report};

#[derive(Parser)]
#[command(
    name = "cube-spectra",
    version,
    about = "Experiments on the Fourier spectrum of bounded functions on the hypercube"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one spectral filter: grid values, cosine moments, mean absolute
    /// value, and its closed-form reference.
    Filter {
        /// Filter degree, 1..=30.
        #[arg(long)]
        d: usize,
        /// Level the filter pins, same parity as the degree.
        #[arg(long)]
        ell: usize,
        /// Highest moment to print (default d + 1).
        #[arg(long)]
        moments: Option<usize>,
    },
    /// Check the level sup-norm and L1 ceilings on random bounded functions
    /// of degree d.
    Bounds {
        /// Number of variables.
        #[arg(long)]
        n: usize,
        /// Degree of the random functions.
        #[arg(long)]
        d: usize,
        /// Level to project onto.
        #[arg(long)]
        ell: usize,
        /// Number of random functions.
        #[arg(long, default_value_t = 20)]
        trials: u64,
        /// Base seed; trial t uses mix(seed, t).
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print a proxy level profile and its exact mean absolute value
    /// against the analytic ceiling.
    Proxy {
        /// Number of variables.
        #[arg(long)]
        n: usize,
        /// Degree budget.
        #[arg(long)]
        d: usize,
        /// Level the proxy extracts.
        #[arg(long)]
        ell: usize,
        /// Which moment profile to build.
        #[arg(long, value_enum, default_value = "degree-bound")]
        variant: VariantArg,
    },
    /// Sweep random positive-rooted polynomials for suffix sign violations
    /// and coefficient shape failures.
    Realrooted {
        /// Number of random polynomials.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Degrees cycle through 1..=max-deg.
        #[arg(long = "max-deg", default_value_t = 12)]
        max_deg: usize,
        /// Base seed; trial t uses mix(seed, t).
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Extremal constructions.
    Extremal {
        #[command(subcommand)]
        which: ExtremalCommand,
    },
    /// Learn the low-degree spectrum of a bounded function from samples.
    Learn {
        /// Function file: point table or sparse spectrum.
        #[arg(long = "fn", value_name = "FILE", conflicts_with = "samples_file")]
        function: Option<PathBuf>,
        /// Recorded sample file: lines `<x-bitmask-hex> <value>`.
        #[arg(long = "samples-file", value_name = "FILE")]
        samples_file: Option<PathBuf>,
        /// Degree to learn up to.
        #[arg(long)]
        d: usize,
        /// Squared-error budget.
        #[arg(long)]
        eps: f64,
        /// Failure probability budget.
        #[arg(long)]
        delta: f64,
        /// Sample count override; without it the derived count is used,
        /// which is refused when impractically large.
        #[arg(long)]
        samples: Option<u64>,
        /// Oracle and config seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Variable count override for sparse or recorded input (must be at
        /// least the inferred count).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Check the level projection ratio of random vector-valued functions
    /// against the closed-form constant.
    Pisier {
        /// Number of variables.
        #[arg(long)]
        n: usize,
        /// Vector dimension.
        #[arg(long)]
        m: usize,
        /// Level to project onto.
        #[arg(long)]
        ell: usize,
        /// Norm exponent (>= 1, `inf` accepted).
        #[arg(long)]
        p: f64,
        /// Number of random functions.
        #[arg(long, default_value_t = 20)]
        trials: u64,
        /// Base seed; trial t uses mix(seed, t).
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the full invariant suite at reduced trial counts.
    Selftest {
        /// Base seed for every reduced sweep.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum ExtremalCommand {
    /// Sharpness of the level-coefficient ceiling on the scaled Chebyshev
    /// function.
    Prop1 {
        /// Number of variables.
        #[arg(long)]
        n: usize,
        /// Chebyshev degree, same parity as the level.
        #[arg(long)]
        d: usize,
        /// Level to extract.
        #[arg(long)]
        ell: usize,
    },
    /// Random-sign homogeneous witness with small sup norm and large level
    /// weight.
    Prop2 {
        /// Number of variables.
        #[arg(long)]
        n: usize,
        /// Homogeneity level.
        #[arg(long)]
        ell: usize,
        /// Construction seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resampling budget for the sup-norm acceptance loop.
        #[arg(long = "max-tries", default_value_t = 64)]
        max_tries: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    DegreeBound,
    Pisier,
}

impl VariantArg {
    fn to_library(self) -> ProxyVariant {
        match self {
            VariantArg::DegreeBound => ProxyVariant::DegreeBound,
            VariantArg::Pisier => ProxyVariant::Pisier,
        }
    }

    fn label(self) -> &'static str {
        match self {
            VariantArg::DegreeBound => "degree-bound",
            VariantArg::Pisier => "pisier",
        }
    }
}

/// parameters, seed, per-trial records, summary, pass.
type Outcome = (Value, Option<u64>, Vec<Value>, Value, bool);

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(message) = apply_dense_cap_env() {
        eprintln!("error: {message}");
        return ExitCode::from(2);
    }
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    match run(&cli.command) {
        Ok((parameters, seed, trials, summary, pass)) => {
            let wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
            let report = Report {
                command,
                parameters,
                seed,
                trials,
                summary,
            };
            println!("{}", render(&report, cli.format, wall_time_ms));
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn apply_dense_cap_env() -> Result<(), String> {
    match std::env::var("CUBE_SPECTRA_NCAP") {
        Ok(raw) => {
            let cap: usize = raw
                .trim()
                .parse()
                .map_err(|_| format!("CUBE_SPECTRA_NCAP must be an integer, got {raw:?}"))?;
            cube_spectra::set_dense_cap(cap);
            Ok(())
        }
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(e) => Err(format!("CUBE_SPECTRA_NCAP is unreadable: {e}")),
    }
}

fn run(command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Filter { d, ell, moments } => run_filter(*d, *ell, *moments),
        Command::Bounds {
            n,
            d,
            ell,
            trials,
            seed,
        } => run_bounds(*n, *d, *ell, *trials, *seed),
        Command::Proxy { n, d, ell, variant } => run_proxy(*n, *d, *ell, *variant),
        Command::Realrooted {
            trials,
            max_deg,
            seed,
        } => run_realrooted(*trials, *max_deg, *seed),
        Command::Extremal { which } => match which {
            ExtremalCommand::Prop1 { n, d, ell } => run_prop1(*n, *d, *ell),
            ExtremalCommand::Prop2 {
                n,
                ell,
                seed,
                max_tries,
            } => run_prop2(*n, *ell, *seed, *max_tries),
        },
        Command::Learn {
            function,
            samples_file,
            d,
            eps,
            delta,
            samples,
            seed,
            n,
        } => run_learn(
            function.as_deref(),
            samples_file.as_deref(),
            *d,
            *eps,
            *delta,
            *samples,
            *seed,
            *n,
        ),
        Command::Pisier {
            n,
            m,
            ell,
            p,
            trials,
            seed,
        } => run_pisier(*n, *m, *ell, *p, *trials, *seed),
        Command::Selftest { seed } => run_selftest(*seed),
    }
}

fn run_filter(d: usize, ell: usize, moments: Option<usize>) -> Result<Outcome, Error> {
    let phi = build_filter::<f64>(d, ell)?;
    let k_max = moments.unwrap_or(d + 1);
    let values: Vec<f64> = phi.values().to_vec();
    let moment_table: Vec<f64> = (0..=k_max).map(|k| phi.moment(k)).collect();
    let abs_mean = phi.abs_mean();
    let reference = phi.abs_mean_reference();
    let tolerance = 1e-8 * (1u64 << d) as f64;

    // the moment identity is only promised up to k = d + 1
    let mut pass = (abs_mean - reference).abs() <= tolerance;
    for (k, &value) in moment_table.iter().enumerate().take(d + 2) {
        let target = if k == ell { 1.0 } else { 0.0 };
        pass &= (value - target).abs() <= tolerance;
    }

    Ok((
        json!({"d": d, "ell": ell, "moments": k_max}),
        None,
        Vec::new(),
        json!({
            "values": values,
            "moments": moment_table,
            "abs_mean": abs_mean,
            "abs_mean_reference": reference,
            "tolerance": tolerance,
            "pass": pass,
        }),
        pass,
    ))
}

fn run_bounds(n: usize, d: usize, ell: usize, trials: u64, seed: u64) -> Result<Outcome, Error> {
    if trials == 0 {
        return Err(Error::Argument("need at least one trial".into()));
    }
    let sup_ceiling = sup_norm_bound::<f64>(d, ell)?;
    let l1_ceiling = if ell >= 1 {
        Some(level_l1_bound::<f64>(n, d, ell)?)
    } else {
        None
    };

    let mut records = Vec::new();
    let mut violations = 0u64;
    let mut worst_sup_ratio = 0.0f64;
    let mut worst_l1_ratio = 0.0f64;
    for t in 0..trials {
        let f = corpus::random_bounded_degree::<f64>(n, d, seeds::mix(seed, t))?;
        let sup = f.homogeneous_part(ell)?.synthesize().sup_norm();
        let weight = f.level_l1(ell);
        worst_sup_ratio = worst_sup_ratio.max(sup / sup_ceiling);
        if sup > sup_ceiling * (1.0 + 1e-9) {
            violations += 1;
        }
        if let Some(ceiling) = l1_ceiling {
            worst_l1_ratio = worst_l1_ratio.max(weight / ceiling);
            if weight > ceiling {
                violations += 1;
            }
        }
        records.push(json!({"trial": t, "sup_level": sup, "level_l1": weight}));
    }
    let pass = violations == 0;

    Ok((
        json!({"n": n, "d": d, "ell": ell, "trials": trials}),
        Some(seed),
        records,
        json!({
            "sup_ceiling": sup_ceiling,
            "level_l1_ceiling": l1_ceiling.map(Value::from).unwrap_or(Value::Null),
            "worst_sup_ratio": worst_sup_ratio,
            "worst_l1_ratio": if l1_ceiling.is_some() { json!(worst_l1_ratio) } else { Value::Null },
            "violations": violations,
            "pass": pass,
        }),
        pass,
    ))
}

fn run_proxy(n: usize, d: usize, ell: usize, variant: VariantArg) -> Result<Outcome, Error> {
    let profile = proxy_profile::<f64>(n, d, ell, variant.to_library())?;
    let l1 = profile.l1()?;
    let tolerance = 1e-9 * (1u64 << d) as f64;
    let pass = l1.exact <= l1.ceiling + tolerance;

    Ok((
        json!({"n": n, "d": d, "ell": ell, "variant": variant.label()}),
        None,
        Vec::new(),
        json!({
            "d_effective": profile.d_effective(),
            "profile": profile.coeffs(),
            "l1_exact": l1.exact,
            "l1_ceiling": l1.ceiling,
            "tolerance": tolerance,
            "pass": pass,
        }),
        pass,
    ))
}

fn run_realrooted(trials: u64, max_deg: usize, seed: u64) -> Result<Outcome, Error> {
    if trials == 0 || max_deg == 0 {
        return Err(Error::Argument(
            "need at least one trial and max-deg >= 1".into(),
        ));
    }
    let mut violations = 0u64;
    let mut shape_failures = 0u64;
    let mut worst_margin = f64::INFINITY;
    for t in 0..trials {
        let degree = 1 + (t % max_deg as u64) as usize;
        let p = corpus::random_rooted_poly::<f64>(degree, seeds::mix(seed, t))?;
        let suffix = suffix_sign_check(&p);
        violations += suffix.violations.len() as u64;
        worst_margin = worst_margin.min(suffix.min_signed / suffix.scale);
        let magnitudes: Vec<f64> = p.coeffs().iter().map(|c| c.abs()).collect();
        let shape = sequence_checks(&magnitudes)?;
        if !(shape.log_concave && shape.unimodal) {
            shape_failures += 1;
        }
    }
    let pass = violations == 0 && shape_failures == 0;

    Ok((
        json!({"trials": trials, "max_deg": max_deg}),
        Some(seed),
        Vec::new(),
        json!({
            "violations": violations,
            "shape_failures": shape_failures,
            "worst_margin": worst_margin,
            "pass": pass,
        }),
        pass,
    ))
}

fn run_prop1(n: usize, d: usize, ell: usize) -> Result<Outcome, Error> {
    let report = chebyshev_sharpness_check(n, d, ell)?;
    Ok((
        json!({"n": n, "d": d, "ell": ell}),
        None,
        Vec::new(),
        json!({
            "lhs": report.lhs,
            "rhs": report.rhs,
            "lemma_rhs": report.lemma_rhs,
            "vacuous": report.vacuous,
            "pass": report.pass,
        }),
        report.pass,
    ))
}

fn run_prop2(n: usize, ell: usize, seed: u64, max_tries: usize) -> Result<Outcome, Error> {
    let f = random_sign_homogeneous::<f64>(n, ell, seed, max_tries)?;
    let sup = f.synthesize().sup_norm();
    let weight = f.level_l1(ell);
    let target = 0.5 * (binom_f64(n, ell) / n as f64).sqrt();
    let pass = sup <= 1.0 + 1e-12 && (weight - target).abs() <= 1e-9 * target.max(1.0);

    Ok((
        json!({"n": n, "ell": ell, "max_tries": max_tries}),
        Some(seed),
        Vec::new(),
        json!({
            "sup_norm": sup,
            "level_l1": weight,
            "level_l1_target": target,
            "pass": pass,
        }),
        pass,
    ))
}

#[allow(clippy::too_many_arguments)]
fn run_learn(
    function: Option<&std::path::Path>,
    samples_file: Option<&std::path::Path>,
    d: usize,
    eps: f64,
    delta: f64,
    samples: Option<u64>,
    seed: u64,
    n_override: Option<usize>,
) -> Result<Outcome, Error> {
    let (mut oracle, truth, source, kind) = match (function, samples_file) {
        (Some(path), None) => {
            let parsed = read_function::<f64>(path, n_override)?;
            let (table, truth) = match parsed {
                ParsedFunction::Points(t) => {
                    let s = t.analyze();
                    (t, s)
                }
                ParsedFunction::Coefficients(s) => (s.synthesize(), s),
            };
            (
                QueryOracle::from_table(table, seed)?,
                Some(truth),
                path.display().to_string(),
                "function",
            )
        }
        (None, Some(path)) => {
            let (n, records) = read_recorded_samples::<f64>(path, n_override)?;
            (
                QueryOracle::from_samples(n, records)?,
                None,
                path.display().to_string(),
                "recorded",
            )
        }
        _ => {
            return Err(Error::Argument(
                "pass exactly one of --fn and --samples-file".into(),
            ))
        }
    };

    let n = oracle.n();
    let mut cfg = LearnConfig::new(n, d, eps, delta, seed)?;
    // a recorded oracle defaults to spending everything it holds
    let effective = samples.or(oracle.remaining().map(|count| count as u64));
    if let Some(count) = effective {
        cfg = cfg.with_samples(count)?;
    }
    let derived = sample_complexity(&cfg)?;
    let model = learn(&mut oracle, &cfg)?;
    let error = match &truth {
        Some(spectrum) => Some(model_error(spectrum, &model)?),
        None => None,
    };
    let pass = error.map_or(true, |e| e <= eps);
    let entries: Vec<Value> = model
        .iter()
        .map(|(mask, estimate)| json!({"mask": format!("{mask:#x}"), "estimate": estimate}))
        .collect();

    Ok((
        json!({
            "source": source,
            "kind": kind,
            "n": n,
            "d": d,
            "eps": eps,
            "delta": delta,
            "samples": samples.map(Value::from).unwrap_or(Value::Null),
        }),
        Some(seed),
        Vec::new(),
        json!({
            "capacity": capacity(n, d)?,
            "derived_samples": derived as f64,
            "samples_used": model.n_samples(),
            "threshold": model.threshold(),
            "retained": entries.len(),
            "truncated": model.truncated(),
            "model": entries,
            "model_error": error.map(Value::from).unwrap_or(Value::Null),
            "pass": pass,
        }),
        pass,
    ))
}

fn run_pisier(
    n: usize,
    m: usize,
    ell: usize,
    p: f64,
    trials: u64,
    seed: u64,
) -> Result<Outcome, Error> {
    if trials == 0 {
        return Err(Error::Argument("need at least one trial".into()));
    }
    let norm = LpNorm::new(p)?;
    let mut records = Vec::new();
    let mut failures = 0u64;
    let mut worst_ratio = 0.0f64;
    let mut bound = 0.0f64;
    for t in 0..trials {
        let f = corpus::random_vector_table::<f64>(n, m, seeds::mix(seed, t))?;
        let check = pisier_check(&f, ell, &norm)?;
        bound = check.bound;
        worst_ratio = worst_ratio.max(check.ratio);
        if !check.pass {
            failures += 1;
        }
        records.push(json!({"trial": t, "ratio": check.ratio}));
    }
    let pass = failures == 0;

    Ok((
        json!({
            "n": n,
            "m": m,
            "ell": ell,
            "p": if p.is_finite() { json!(p) } else { json!("inf") },
            "trials": trials,
        }),
        Some(seed),
        records,
        json!({
            "bound": bound,
            "worst_ratio": worst_ratio,
            "failures": failures,
            "pass": pass,
        }),
        pass,
    ))
}

fn run_selftest(seed: u64) -> Result<Outcome, Error> {
    let mut checks: Vec<(&'static str, bool)> = Vec::new();

    // transform round trip and energy identity
    let mut ok = true;
    for t in 0..5u64 {
        let n = 2 + (t as usize % 7);
        let f = corpus::random_bounded_degree::<f64>(n, n, seeds::mix(seed, 100 + t))?;
        let table = f.synthesize();
        let back = table.analyze();
        ok &= f
            .coeffs()
            .iter()
            .zip(back.coeffs())
            .all(|(a, b)| (a - b).abs() <= 1e-10);
        let energy: f64 = f.coeffs().iter().map(|c| c * c).sum();
        ok &= (table.mean_square() - energy).abs() <= 1e-10;
    }
    checks.push(("transform round trip", ok));

    // cos-power moments: 0 below the degree, 2^(1-d) at it
    let mut ok = true;
    for d in 1..=10usize {
        for k in 0..=d {
            let value: f64 = cos_moment(d, k)?;
            let target = if k == d { 2f64.powi(1 - d as i32) } else { 0.0 };
            ok &= (value - target).abs() <= 1e-12;
        }
    }
    checks.push(("cos moments", ok));

    // filter moments pin one level; mean absolute value matches its reference
    let mut ok = true;
    for d in 1..=8usize {
        let tol = 1e-8 * (1u64 << d) as f64;
        for l in (d % 2..=d).step_by(2) {
            let phi = build_filter::<f64>(d, l)?;
            for k in 0..=d + 1 {
                let target = if k == l { 1.0 } else { 0.0 };
                ok &= (phi.moment(k) - target).abs() <= tol;
            }
            ok &= (phi.abs_mean() - phi.abs_mean_reference()).abs() <= tol;
        }
    }
    checks.push(("filter moments", ok));

    // proxy profiles hit the target level and leak nothing below the degree
    let mut ok = true;
    for variant in [ProxyVariant::DegreeBound, ProxyVariant::Pisier] {
        for d in 1..=4usize {
            let tol = 1e-8 * (1u64 << d) as f64;
            for l in 0..=d {
                let profile = proxy_profile::<f64>(10, d, l, variant)?;
                ok &= (profile.coeffs()[l] - 1.0).abs() <= tol;
                let zero_ceiling = match variant {
                    ProxyVariant::Pisier => profile.d_effective() + 1,
                    ProxyVariant::DegreeBound => profile.d_effective(),
                };
                for k in 0..=zero_ceiling.min(10) {
                    if k != l {
                        ok &= profile.coeffs()[k].abs() <= tol;
                    }
                }
            }
        }
    }
    checks.push(("proxy profiles", ok));

    // convolving with the proxy equals the direct level projection
    let mut ok = true;
    for t in 0..5u64 {
        let f = corpus::random_bounded_degree::<f64>(8, 3, seeds::mix(seed, 200 + t))?;
        let total: f64 = f.coeffs().iter().map(|c| c.abs()).sum();
        for l in 0..=3usize {
            let via = extract_level(&f, 3, l)?;
            let direct = f.homogeneous_part(l)?;
            ok &= via
                .coeffs()
                .iter()
                .zip(direct.coeffs())
                .all(|(a, b)| (a - b).abs() <= 1e-9 * total);
        }
    }
    checks.push(("level extraction", ok));

    // sup and L1 ceilings on a small random corpus
    let mut ok = true;
    for t in 0..10u64 {
        let d = 1 + (t as usize % 3);
        let f = corpus::random_bounded_degree::<f64>(10, d, seeds::mix(seed, 300 + t))?;
        for l in 0..=d {
            let sup = f.homogeneous_part(l)?.synthesize().sup_norm();
            ok &= sup <= sup_norm_bound::<f64>(d, l)? * (1.0 + 1e-9);
            if l >= 1 {
                ok &= f.level_l1(l) <= level_l1_bound::<f64>(10, d, l)?;
            }
        }
    }
    checks.push(("level ceilings", ok));

    // sharpness of the level-coefficient ceiling, plus the symmetric fast path
    let report = chebyshev_sharpness_check(1000, 2, 2)?;
    let mut ok = report.pass && !report.vacuous;
    let g = scaled_chebyshev_function::<f64>(10, 2)?;
    let dense = g.to_point_table()?.analyze();
    for l in 0..=10usize {
        let fast = g.level_coefficient(l)?;
        ok &= (fast - dense.coeff((1u64 << l) - 1)).abs() <= 1e-9;
    }
    checks.push(("symmetric sharpness", ok));

    // random-sign homogeneous witness
    let f = random_sign_homogeneous::<f64>(12, 3, seeds::mix(seed, 600), 64)?;
    let sup = f.synthesize().sup_norm();
    let weight = f.level_l1(3);
    let target = 0.5 * (binom_f64(12, 3) / 12.0).sqrt();
    checks.push((
        "random sign witness",
        sup <= 1.0 + 1e-12 && (weight - target).abs() <= 1e-9 * target,
    ));

    // positive-rooted polynomials: suffix signs and coefficient shape
    let mut ok = true;
    for t in 0..200u64 {
        let degree = 1 + (t % 10) as usize;
        let p = corpus::random_rooted_poly::<f64>(degree, seeds::mix(seed, 700 + t))?;
        ok &= suffix_sign_check(&p).violations.is_empty();
        let magnitudes: Vec<f64> = p.coeffs().iter().map(|c| c.abs()).collect();
        let shape = sequence_checks(&magnitudes)?;
        ok &= shape.log_concave && shape.unimodal;
    }
    checks.push(("rooted suffix signs", ok));

    // random restrictions keep enough weight one level down
    let f = corpus::random_homogeneous::<f64>(10, 3, seeds::mix(seed, 800))?;
    let trials = 2000u64;
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for t in 0..trials {
        let g = f.random_restriction(3, seeds::mix(seed, 900 + t))?;
        let w = g.level_l1(2);
        sum += w;
        sum_sq += w * w;
    }
    let mean = sum / trials as f64;
    let variance = (sum_sq / trials as f64 - mean * mean).max(0.0);
    let se = (variance / trials as f64).sqrt();
    let floor = (3.0 / 20.0f64).sqrt() / 1f64.exp();
    checks.push(("restriction decay", mean >= floor - 3.0 * se));

    // sampling-based learning hits its error budget
    let mut ok = true;
    for t in 0..3u64 {
        let trial_seed = seeds::mix(seed, 400 + t);
        let f = corpus::random_bounded_degree::<f64>(8, 2, trial_seed)?;
        let cfg = LearnConfig::new(8, 2, 0.1, 0.1, trial_seed)?.with_samples(20_000)?;
        let mut oracle = QueryOracle::from_table(f.synthesize(), seeds::mix(trial_seed, 1))?;
        let model = learn(&mut oracle, &cfg)?;
        ok &= model_error(&f, &model)? <= 0.1;
    }
    checks.push(("low degree learning", ok));

    // vector projection ratios under the closed-form constant, and the norm
    // hook's axiom spot checks
    let mut ok = true;
    for l in [1usize, 2] {
        for p in [2.0f64, f64::INFINITY] {
            let norm = LpNorm::new(p)?;
            for t in 0..3u64 {
                let f = corpus::random_vector_table::<f64>(8, 2, seeds::mix(seed, 500 + t))?;
                ok &= pisier_check(&f, l, &norm)?.pass;
            }
        }
    }
    for p in [1.0f64, 2.0, f64::INFINITY] {
        let norm = LpNorm::new(p)?;
        ok &= check_norm_axioms::<f64, _>(&norm, 3, seeds::mix(seed, 550), 10)?.pass;
    }
    checks.push(("vector projections", ok));

    let failures = checks.iter().filter(|(_, pass)| !pass).count();
    let pass = failures == 0;
    let listed: Vec<Value> = checks
        .iter()
        .map(|(name, pass)| json!({"check": name, "pass": pass}))
        .collect();

    Ok((
        json!({}),
        Some(seed),
        Vec::new(),
        json!({"checks": listed, "failures": failures, "pass": pass}),
        pass,
    ))
}

/// Binomial coefficient as a float; exact for every size this binary accepts.
fn binom_f64(n: usize, k: usize) -> f64 {
    let k = k.min(n - k.min(n));
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}
