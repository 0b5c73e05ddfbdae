//! Sampling-based learner for low-degree bounded functions on the cube.
//!
//! All coefficients up to the degree cut are estimated from one shared
//! sample of (X, f(X)) pairs, then thresholded. The theoretical sample
//! count is astronomically large at any usable scale, so an explicit
//! override is a first-class part of the configuration; the derived count
//! is still exposed for inspection.

use crate::chebyshev::binomial_exact;
use crate::error::{Error, Result};
use crate::hypercube::{weight_masks, PointTable, Spectrum};
use crate::scalar::{s, to_f64, Scalar};
use crate::seeds;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Derived sample counts above this refuse to run without an override.
const MATERIALIZE_LIMIT: u128 = 1 << 32;

enum Source<S> {
    Table { table: PointTable<S>, rng: ChaCha8Rng },
    Recorded { samples: Vec<(u64, S)>, cursor: usize },
}

/// Source of i.i.d. pairs (X, f(X)) with X uniform on the cube. Either
/// synthesized from a stored table plus a seed, or replayed from a
/// recorded list (which exhausts).
pub struct QueryOracle<S> {
    n: usize,
    source: Source<S>,
}

impl<S: Scalar> QueryOracle<S> {
    /// In-process oracle; draws are reproducible from the seed.
    pub fn from_table(table: PointTable<S>, seed: u64) -> Result<Self> {
        check_range(table.sup_norm())?;
        Ok(QueryOracle {
            n: table.n(),
            source: Source::Table {
                table,
                rng: seeds::rng(seed),
            },
        })
    }

    /// Replays recorded pairs in order; errors once they run out.
    pub fn from_samples(n: usize, samples: Vec<(u64, S)>) -> Result<Self> {
        if n == 0 || n > 63 {
            return Err(Error::Argument(format!("need 1 <= n <= 63, got {n}")));
        }
        let limit = 1u64 << n;
        for (index, &(x, v)) in samples.iter().enumerate() {
            if x >= limit {
                return Err(Error::Argument(format!(
                    "sample {index} mentions variables beyond n={n}"
                )));
            }
            if !v.is_finite() {
                return Err(Error::NonFinite { index });
            }
            check_range(v.abs())?;
        }
        Ok(QueryOracle {
            n,
            source: Source::Recorded { samples, cursor: 0 },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Remaining draws, or None when unlimited.
    pub fn remaining(&self) -> Option<usize> {
        match &self.source {
            Source::Table { .. } => None,
            Source::Recorded { samples, cursor } => Some(samples.len() - cursor),
        }
    }

    /// Next pair (X as a bitmask, f(X)).
    pub fn draw(&mut self) -> Result<(u64, S)> {
        match &mut self.source {
            Source::Table { table, rng } => {
                let mask_all = if table.n() == 64 {
                    u64::MAX
                } else {
                    (1u64 << table.n()) - 1
                };
                let x = rng.gen::<u64>() & mask_all;
                Ok((x, table.value(x)))
            }
            Source::Recorded { samples, cursor } => {
                if *cursor >= samples.len() {
                    return Err(Error::Exhausted { drawn: *cursor });
                }
                let pair = samples[*cursor];
                *cursor += 1;
                Ok(pair)
            }
        }
    }
}

fn check_range<S: Scalar>(sup: S) -> Result<()> {
    if to_f64(sup) > 1.0 + 1e-9 {
        return Err(Error::Argument(format!(
            "oracle values must lie in [-1, 1], got sup norm {}",
            to_f64(sup)
        )));
    }
    Ok(())
}

/// Learner parameters. `seed` is what callers use to build in-process
/// oracles; recorded-sample oracles ignore it.
#[derive(Debug, Clone, Copy)]
pub struct LearnConfig {
    pub n: usize,
    pub d: usize,
    pub eps: f64,
    pub delta: f64,
    pub seed: u64,
    pub sample_override: Option<u64>,
}

impl LearnConfig {
    pub fn new(n: usize, d: usize, eps: f64, delta: f64, seed: u64) -> Result<Self> {
        if d == 0 || d > n {
            return Err(Error::Argument(format!(
                "need 1 <= d <= n, got d={d} n={n}"
            )));
        }
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::Argument(format!("need 0 < eps <= 1, got {eps}")));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::Argument(format!("need 0 < delta < 1, got {delta}")));
        }
        Ok(LearnConfig {
            n,
            d,
            eps,
            delta,
            seed,
            sample_override: None,
        })
    }

    pub fn with_samples(mut self, count: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::Argument("need at least one sample".into()));
        }
        self.sample_override = Some(count);
        Ok(self)
    }
}

/// `L(n, d) = (d+1) d^d e^{binom(d+2, 2)} n^{(d-1)/2}`, the closed-form
/// cap on the total low-level spectral L1 weight of a bounded degree-d
/// function.
pub fn capacity(n: usize, d: usize) -> Result<f64> {
    if d == 0 || n == 0 {
        return Err(Error::Argument(format!(
            "need n, d >= 1, got n={n} d={d}"
        )));
    }
    let d_f = d as f64;
    let choose = (d_f + 2.0) * (d_f + 1.0) / 2.0;
    Ok((d_f + 1.0) * d_f.powi(d as i32) * choose.exp() * (n as f64).powf((d_f - 1.0) / 2.0))
}

/// `ceil(2 * 16^2 * eps^-3 * L^2 * ln(2 * (number of candidate sets) / delta))`,
/// saturating instead of overflowing.
pub fn sample_complexity(cfg: &LearnConfig) -> Result<u128> {
    let l = capacity(cfg.n, cfg.d)?;
    let sets: f64 = (0..=cfg.d)
        .map(|k| binomial_exact(cfg.n as u64, k as u64).to_f64().unwrap())
        .sum();
    let raw = 512.0 * cfg.eps.powi(-3) * l * l * (2.0 * sets / cfg.delta).ln();
    if !raw.is_finite() || raw >= u128::MAX as f64 {
        return Ok(u128::MAX);
    }
    Ok((raw.ceil() as u128).max(1))
}

/// `2 exp(-lambda^2 N / 2)`, the per-coefficient deviation probability.
pub fn chernoff_bound(lambda: f64, n_samples: u64) -> f64 {
    2.0 * (-lambda * lambda * n_samples as f64 / 2.0).exp()
}

/// Empirical coefficients from one shared sample, in mask order grouped
/// by level.
#[derive(Debug, Clone)]
pub struct CoefficientEstimates<S> {
    n: usize,
    d: usize,
    n_samples: u64,
    masks: Vec<u64>,
    values: Vec<S>,
}

impl<S: Scalar> CoefficientEstimates<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, S)> + '_ {
        self.masks.iter().copied().zip(self.values.iter().copied())
    }

    pub fn estimate(&self, mask: u64) -> Option<S> {
        self.masks
            .iter()
            .position(|&m| m == mask)
            .map(|i| self.values[i])
    }
}

/// Averages `f(X_i) chi_S(X_i)` over one sample of size `n_samples` for
/// every `|S| <= d` simultaneously.
pub fn estimate_coefficients<S: Scalar>(
    oracle: &mut QueryOracle<S>,
    n_samples: u64,
    d: usize,
) -> Result<CoefficientEstimates<S>> {
    if n_samples == 0 {
        return Err(Error::Argument("need at least one sample".into()));
    }
    let n = oracle.n();
    if d > n {
        return Err(Error::Argument(format!(
            "degree cut {d} exceeds variable count {n}"
        )));
    }
    let masks: Vec<u64> = (0..=d).flat_map(|k| weight_masks(n, k)).collect();
    let mut sums = vec![S::zero(); masks.len()];
    for _ in 0..n_samples {
        let (x, value) = oracle.draw()?;
        for (mask, sum) in masks.iter().zip(sums.iter_mut()) {
            // chi_S(x) = (-1)^{|S & x|} under the sign convention in use
            if (mask & x).count_ones() % 2 == 0 {
                *sum = *sum + value;
            } else {
                *sum = *sum - value;
            }
        }
    }
    let scale = s::<S>(1.0 / n_samples as f64);
    let values = sums.into_iter().map(|t| t * scale).collect();
    Ok(CoefficientEstimates {
        n,
        d,
        n_samples,
        masks,
        values,
    })
}

/// Thresholded hypothesis `g = sum_{S in B} alpha_S chi_S`.
#[derive(Debug, Clone)]
pub struct LearnedModel<S> {
    n: usize,
    d: usize,
    threshold: f64,
    n_samples: u64,
    masks: Vec<u64>,
    estimates: Vec<S>,
    truncated: bool,
}

impl<S: Scalar> LearnedModel<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Retention threshold `eps / (4 L(n, d))` the estimates were cut at.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn n_samples(&self) -> u64 {
        self.n_samples
    }

    /// True when the size cap forced dropping above-threshold sets.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, S)> + '_ {
        self.masks
            .iter()
            .copied()
            .zip(self.estimates.iter().copied())
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.masks.contains(&mask)
    }

    /// Dense spectrum of the hypothesis (subject to the dense-n cap).
    pub fn spectrum(&self) -> Result<Spectrum<S>> {
        let entries: Vec<(u64, S)> = self.iter().collect();
        Spectrum::from_sparse(self.n, &entries)
    }
}

/// Runs the full pipeline: pick N (override or the derived count), draw
/// one shared sample, estimate, threshold at `eps / (4L)`, and cap the
/// retained family at `64 L^2 / eps^2` keeping the largest estimates.
pub fn learn<S: Scalar>(oracle: &mut QueryOracle<S>, cfg: &LearnConfig) -> Result<LearnedModel<S>> {
    if oracle.n() != cfg.n {
        return Err(Error::VariableMismatch {
            left: oracle.n(),
            right: cfg.n,
        });
    }
    let n_samples = match cfg.sample_override {
        Some(count) => count,
        None => {
            let needed = sample_complexity(cfg)?;
            if needed > MATERIALIZE_LIMIT {
                return Err(Error::SampleBudget { needed });
            }
            needed as u64
        }
    };
    let estimates = estimate_coefficients(oracle, n_samples, cfg.d)?;
    let l = capacity(cfg.n, cfg.d)?;
    let threshold = cfg.eps / (4.0 * l);
    let mut kept: Vec<(u64, S)> = estimates
        .iter()
        .filter(|&(_, a)| to_f64(a.abs()) >= threshold)
        .collect();
    let cap = 64.0 * l * l / (cfg.eps * cfg.eps);
    let mut truncated = false;
    if (kept.len() as f64) > cap {
        // deterministic order: largest magnitude first, mask breaks ties
        kept.sort_by(|a, b| {
            to_f64(b.1.abs())
                .partial_cmp(&to_f64(a.1.abs()))
                .unwrap()
                .then(a.0.cmp(&b.0))
        });
        kept.truncate(cap as usize);
        kept.sort_by_key(|&(mask, _)| (mask.count_ones(), mask));
        truncated = true;
    }
    let (masks, estimates): (Vec<u64>, Vec<S>) = kept.into_iter().unzip();
    Ok(LearnedModel {
        n: cfg.n,
        d: cfg.d,
        threshold,
        n_samples,
        masks,
        estimates,
        truncated,
    })
}

/// Exact squared Fourier distance `sum_S (f_hat(S) - g_hat(S))^2` between
/// a known spectrum and a learned hypothesis.
pub fn model_error<S: Scalar>(f: &Spectrum<S>, model: &LearnedModel<S>) -> Result<S> {
    if f.n() != model.n {
        return Err(Error::VariableMismatch {
            left: f.n(),
            right: model.n,
        });
    }
    let mut total = S::zero();
    for &c in f.coeffs() {
        total = total + c * c;
    }
    for (mask, alpha) in model.iter() {
        let c = f.coeff(mask);
        total = total - c * c;
        let diff = c - alpha;
        total = total + diff * diff;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn capacity_worked_values() {
        let e3 = 3f64.exp();
        assert!((capacity(4, 1).unwrap() - 2.0 * e3).abs() <= 1e-9);
        assert!((capacity(4, 1).unwrap() - 40.171).abs() <= 1e-3);
        // exponent (d-1)/2 vanishes at d = 1, so n drops out
        assert_eq!(capacity(4, 1).unwrap(), capacity(777, 1).unwrap());
        let e6 = 6f64.exp();
        assert!((capacity(9, 2).unwrap() - 36.0 * e6).abs() <= 1e-6 * e6);
        assert!(capacity(4, 0).is_err());
    }

    #[test]
    fn sample_complexity_worked_value() {
        let cfg = LearnConfig::new(4, 1, 1.0, 0.5, 0).unwrap();
        let l = 2.0 * 3f64.exp();
        let expected = (512.0 * l * l * 20f64.ln()).ceil() as u128;
        assert_eq!(sample_complexity(&cfg).unwrap(), expected);
    }

    #[test]
    fn sample_complexity_scales_cubically_in_eps() {
        let coarse = LearnConfig::new(6, 2, 0.5, 0.1, 0).unwrap();
        let fine = LearnConfig::new(6, 2, 0.25, 0.1, 0).unwrap();
        let a = sample_complexity(&coarse).unwrap() as f64;
        let b = sample_complexity(&fine).unwrap() as f64;
        assert!((b / a - 8.0).abs() <= 1e-6);
        let floor = 512.0 * capacity(6, 2).unwrap().powi(2) * (2.0 / 0.1f64).ln();
        assert!(a >= floor);
    }

    #[test]
    fn config_validation() {
        assert!(LearnConfig::new(4, 0, 0.5, 0.5, 0).is_err());
        assert!(LearnConfig::new(4, 5, 0.5, 0.5, 0).is_err());
        assert!(LearnConfig::new(4, 2, 0.0, 0.5, 0).is_err());
        assert!(LearnConfig::new(4, 2, 1.5, 0.5, 0).is_err());
        assert!(LearnConfig::new(4, 2, 0.5, 1.0, 0).is_err());
        assert!(LearnConfig::new(4, 2, 0.5, 0.5, 0)
            .unwrap()
            .with_samples(0)
            .is_err());
    }

    #[test]
    fn constant_function_estimates_exactly() {
        let table = PointTable::constant(5, 1.0f64).unwrap();
        let mut oracle = QueryOracle::from_table(table, 11).unwrap();
        let est = estimate_coefficients(&mut oracle, 400, 2).unwrap();
        assert_eq!(est.estimate(0).unwrap(), 1.0);
        for (mask, value) in est.iter() {
            assert!(value.abs() <= 1.0, "mask {mask:#x}");
        }
    }

    #[test]
    fn character_targets_estimate_exactly() {
        // f = chi_{0,1}: every sampled product f(X) chi(X) is +1
        let spec = Spectrum::from_sparse(6, &[(0b11u64, 1.0f64)]).unwrap();
        let table = spec.synthesize();
        let mut oracle = QueryOracle::from_table(table, 5).unwrap();
        let est = estimate_coefficients(&mut oracle, 300, 2).unwrap();
        assert_eq!(est.estimate(0b11).unwrap(), 1.0);
    }

    #[test]
    fn chernoff_radius_holds_across_seeds() {
        let spec = Spectrum::from_sparse(6, &[(0b1u64, 0.5f64)]).unwrap();
        let table = spec.synthesize();
        let mut hits = 0;
        for seed in 0..100u64 {
            let mut oracle = QueryOracle::from_table(table.clone(), seed).unwrap();
            let est = estimate_coefficients(&mut oracle, 10_000, 1).unwrap();
            if (est.estimate(0b1).unwrap() - 0.5).abs() <= 0.05 {
                hits += 1;
            }
        }
        assert!(hits >= 99, "only {hits} of 100 seeds within radius");
    }

    #[test]
    fn recorded_oracles_replay_then_exhaust() {
        let samples = vec![(0b00u64, 1.0f64), (0b01, -1.0), (0b10, 0.25)];
        let mut oracle = QueryOracle::from_samples(2, samples.clone()).unwrap();
        assert_eq!(oracle.remaining(), Some(3));
        for &expect in &samples {
            assert_eq!(oracle.draw().unwrap(), expect);
        }
        match oracle.draw() {
            Err(Error::Exhausted { drawn: 3 }) => {}
            other => panic!("expected exhaustion, got {other:?}"),
        }
        assert!(QueryOracle::from_samples(2, vec![(0b100, 0.0f64)]).is_err());
        assert!(QueryOracle::from_samples(2, vec![(0, 2.0f64)]).is_err());
    }

    #[test]
    fn learner_recovers_a_character() {
        let spec = Spectrum::from_sparse(8, &[(0b11u64, 1.0f64)]).unwrap();
        let table = spec.synthesize();
        for seed in 0..5u64 {
            let cfg = LearnConfig::new(8, 2, 0.1, 0.1, seed)
                .unwrap()
                .with_samples(20_000)
                .unwrap();
            let mut oracle = QueryOracle::from_table(table.clone(), seed).unwrap();
            let model = learn(&mut oracle, &cfg).unwrap();
            assert!(model.contains(0b11), "seed {seed}");
            let err = model_error(&spec, &model).unwrap();
            assert!(err <= 0.1, "seed {seed}: error {err}");
        }
    }

    #[test]
    fn learner_recovers_a_constant() {
        let table = PointTable::constant(6, 0.5).unwrap();
        let spec = table.analyze();
        let cfg = LearnConfig::new(6, 1, 0.2, 0.1, 3)
            .unwrap()
            .with_samples(5_000)
            .unwrap();
        let mut oracle = QueryOracle::from_table(table, 3).unwrap();
        let model = learn(&mut oracle, &cfg).unwrap();
        assert!(model.contains(0));
        let alpha = model.iter().find(|&(m, _)| m == 0).unwrap().1;
        assert_eq!(alpha, 0.5); // constant values average exactly
        assert!(model_error(&spec, &model).unwrap() <= 0.2);
    }

    #[test]
    fn threshold_soundness_as_stored() {
        let f = corpus::random_bounded_degree::<f64>(8, 2, 21).unwrap();
        let table = f.synthesize();
        let cfg = LearnConfig::new(8, 2, 0.3, 0.1, 21)
            .unwrap()
            .with_samples(4_000)
            .unwrap();
        let mut oracle = QueryOracle::from_table(table, 21).unwrap();
        let model = learn(&mut oracle, &cfg).unwrap();
        for (mask, alpha) in model.iter() {
            assert!(
                alpha.abs() >= model.threshold(),
                "mask {mask:#x} below threshold"
            );
            assert!(mask.count_ones() as usize <= 2);
        }
        assert!(!model.truncated());
    }

    #[test]
    fn derived_count_refuses_to_materialize() {
        let cfg = LearnConfig::new(10, 2, 0.1, 0.1, 0).unwrap();
        let table = PointTable::constant(10, 0.0).unwrap();
        let mut oracle = QueryOracle::from_table(table, 0).unwrap();
        match learn(&mut oracle, &cfg) {
            Err(Error::SampleBudget { needed }) => {
                assert_eq!(needed, sample_complexity(&cfg).unwrap());
            }
            other => panic!("expected budget refusal, got {other:?}"),
        }
    }

    #[test]
    fn model_error_identities() {
        let f = Spectrum::from_sparse(4, &[(0b101u64, 1.0f64)]).unwrap();
        let empty = LearnedModel::<f64> {
            n: 4,
            d: 2,
            threshold: 0.0,
            n_samples: 1,
            masks: vec![],
            estimates: vec![],
            truncated: false,
        };
        assert_eq!(model_error(&f, &empty).unwrap(), 1.0);
        let exact = LearnedModel {
            n: 4,
            d: 2,
            threshold: 0.0,
            n_samples: 1,
            masks: vec![0b101],
            estimates: vec![1.0],
            truncated: false,
        };
        assert_eq!(model_error(&f, &exact).unwrap(), 0.0);
        let wrong_n = Spectrum::<f64>::zero(3).unwrap();
        assert!(model_error(&wrong_n, &exact).is_err());
    }

    #[test]
    fn model_error_matches_point_domain() {
        let f = corpus::random_bounded_degree::<f64>(7, 3, 9).unwrap();
        let table = f.synthesize();
        let cfg = LearnConfig::new(7, 3, 0.5, 0.1, 9)
            .unwrap()
            .with_samples(2_000)
            .unwrap();
        let mut oracle = QueryOracle::from_table(table.clone(), 9).unwrap();
        let model = learn(&mut oracle, &cfg).unwrap();
        let g = model.spectrum().unwrap().synthesize();
        let mut mean_sq = 0.0;
        for b in 0..table.len() as u64 {
            let diff = table.value(b) - g.value(b);
            mean_sq += diff * diff;
        }
        mean_sq /= table.len() as f64;
        let via_model = model_error(&f, &model).unwrap();
        assert!((via_model - mean_sq).abs() <= 1e-10);
    }

    #[test]
    fn learning_is_deterministic_per_seed() {
        let spec = Spectrum::from_sparse(6, &[(0b11u64, 0.7f64), (0b100, 0.3)]).unwrap();
        let table = spec.synthesize();
        let cfg = LearnConfig::new(6, 2, 0.2, 0.1, 77)
            .unwrap()
            .with_samples(3_000)
            .unwrap();
        let mut o1 = QueryOracle::from_table(table.clone(), 77).unwrap();
        let mut o2 = QueryOracle::from_table(table, 77).unwrap();
        let m1 = learn(&mut o1, &cfg).unwrap();
        let m2 = learn(&mut o2, &cfg).unwrap();
        let pairs1: Vec<_> = m1.iter().collect();
        let pairs2: Vec<_> = m2.iter().collect();
        assert_eq!(pairs1, pairs2);
    }

    #[test]
    fn chernoff_bound_shape() {
        assert!((chernoff_bound(0.1, 2000) - 2.0 * (-10.0f64).exp()).abs() <= 1e-12);
        assert!(chernoff_bound(0.05, 2000) > chernoff_bound(0.1, 2000));
    }
}
