//! Numerical checks of the higher-level projection inequality for
//! vector-valued functions: the RMS norm of the level-`l` part is at most
//! `(4 + 6 log2(m+1) / l)^l` times the RMS norm of the function, for any
//! norm on the m-dimensional target.
//!
//! Only l_p norms ship; anything else comes in through the `Norm` hook,
//! whose axioms can be spot-checked on random pairs.

use crate::error::{Error, Result};
use crate::hypercube::{weight_masks, Spectrum, VectorPointTable};
use crate::scalar::{s, to_f64, Scalar};
use crate::seeds;
use rand::Rng;

/// Norm on the target space, evaluated one row at a time.
pub trait Norm<S> {
    fn eval(&self, v: &[S]) -> S;
}

impl<S, F: Fn(&[S]) -> S> Norm<S> for F {
    fn eval(&self, v: &[S]) -> S {
        self(v)
    }
}

/// The l_p norms, p in [1, inf].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LpNorm {
    P(f64),
    Inf,
}

impl LpNorm {
    pub fn new(p: f64) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::Argument(format!("need p >= 1, got {p}")));
        }
        if p.is_infinite() {
            return Ok(LpNorm::Inf);
        }
        Ok(LpNorm::P(p))
    }
}

impl<S: Scalar> Norm<S> for LpNorm {
    fn eval(&self, v: &[S]) -> S {
        match *self {
            LpNorm::Inf => v.iter().fold(S::zero(), |acc, x| acc.max(x.abs())),
            LpNorm::P(p) => {
                if p == 1.0 {
                    v.iter().fold(S::zero(), |acc, x| acc + x.abs())
                } else if p == 2.0 {
                    v.iter()
                        .fold(S::zero(), |acc, x| acc + *x * *x)
                        .sqrt()
                } else {
                    let total = v
                        .iter()
                        .fold(S::zero(), |acc, x| acc + x.abs().powf(s::<S>(p)));
                    total.powf(s::<S>(1.0 / p))
                }
            }
        }
    }
}

/// `L_l = sum over |S| = l of chi_S`; convolution with it is exact
/// level projection.
pub fn level_function<S: Scalar>(n: usize, l: usize) -> Result<Spectrum<S>> {
    if l > n {
        return Err(Error::Argument(format!(
            "level {l} exceeds variable count {n}"
        )));
    }
    let entries: Vec<(u64, S)> = weight_masks(n, l).map(|mask| (mask, S::one())).collect();
    Spectrum::from_sparse(n, &entries)
}

/// `sqrt(E ||F(X)||^2)` over the uniform cube.
pub fn rms_norm<S: Scalar, N: Norm<S>>(f: &VectorPointTable<S>, norm: &N) -> S {
    let mut total = S::zero();
    for b in 0..f.len() as u64 {
        let v = norm.eval(f.row(b));
        total = total + v * v;
    }
    (total / s::<S>(f.len() as f64)).sqrt()
}

/// `(4 + 6 log2(m+1) / l)^l`.
pub fn pisier_bound(m: usize, l: usize) -> Result<f64> {
    if m == 0 || l == 0 {
        return Err(Error::Argument(format!("need m, l >= 1, got m={m} l={l}")));
    }
    let base = 4.0 + 6.0 * ((m + 1) as f64).log2() / l as f64;
    Ok(base.powi(l as i32))
}

/// Per-coordinate projection onto level `l`.
pub fn level_projection<S: Scalar>(
    f: &VectorPointTable<S>,
    l: usize,
) -> Result<VectorPointTable<S>> {
    f.convolve_with(&level_function(f.n(), l)?)
}

#[derive(Debug, Clone, Copy)]
pub struct PisierReport {
    pub n: usize,
    pub m: usize,
    pub level: usize,
    /// rms of the level part over rms of the function.
    pub ratio: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Compares the projection ratio against the closed-form constant.
pub fn pisier_check<S: Scalar, N: Norm<S>>(
    f: &VectorPointTable<S>,
    l: usize,
    norm: &N,
) -> Result<PisierReport> {
    let denominator = to_f64(rms_norm(f, norm));
    if denominator == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let numerator = to_f64(rms_norm(&level_projection(f, l)?, norm));
    let ratio = numerator / denominator;
    let bound = pisier_bound(f.m(), l)?;
    Ok(PisierReport {
        n: f.n(),
        m: f.m(),
        level: l,
        ratio,
        bound,
        pass: ratio <= bound,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct NormAxiomReport {
    /// Worst relative defect of `||c v|| = |c| ||v||`.
    pub homogeneity_defect: f64,
    /// Most negative slack of `||u|| + ||v|| - ||u + v||` (>= 0 when the
    /// triangle inequality holds).
    pub triangle_slack: f64,
    pub zero_maps_to_zero: bool,
    pub pass: bool,
}

/// Spot-checks the norm axioms on random pairs; callers supplying their
/// own `Norm` hook should run this before trusting a sweep.
pub fn check_norm_axioms<S: Scalar, N: Norm<S>>(
    norm: &N,
    m: usize,
    seed: u64,
    trials: usize,
) -> Result<NormAxiomReport> {
    if m == 0 || trials == 0 {
        return Err(Error::Argument(format!(
            "need m, trials >= 1, got m={m} trials={trials}"
        )));
    }
    let mut rng = seeds::rng(seed);
    let mut homogeneity_defect = 0.0f64;
    let mut triangle_slack = f64::INFINITY;
    for _ in 0..trials {
        let u: Vec<S> = (0..m).map(|_| s::<S>(rng.gen::<f64>() * 2.0 - 1.0)).collect();
        let v: Vec<S> = (0..m).map(|_| s::<S>(rng.gen::<f64>() * 2.0 - 1.0)).collect();
        let c = rng.gen::<f64>() * 4.0 - 2.0;
        let scaled: Vec<S> = u.iter().map(|&x| x * s::<S>(c)).collect();
        let nu = to_f64(norm.eval(&u));
        let defect = (to_f64(norm.eval(&scaled)) - c.abs() * nu).abs() / (1.0 + c.abs() * nu);
        homogeneity_defect = homogeneity_defect.max(defect);
        let sum: Vec<S> = u.iter().zip(&v).map(|(&a, &b)| a + b).collect();
        let slack = nu + to_f64(norm.eval(&v)) - to_f64(norm.eval(&sum));
        triangle_slack = triangle_slack.min(slack);
    }
    let zero_maps_to_zero = to_f64(norm.eval(&vec![S::zero(); m])).abs() <= 1e-12;
    let pass = homogeneity_defect <= 1e-9 && triangle_slack >= -1e-9 && zero_maps_to_zero;
    Ok(NormAxiomReport {
        homogeneity_defect,
        triangle_slack,
        zero_maps_to_zero,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::hypercube::PointTable;

    #[test]
    fn level_function_shapes() {
        let l1: Spectrum<f64> = level_function(2, 1).unwrap();
        assert_eq!(l1.coeffs(), &[0.0, 1.0, 1.0, 0.0]);
        let l0: Spectrum<f64> = level_function(5, 0).unwrap();
        assert_eq!(l0.coeff(0), 1.0);
        assert_eq!(l0.level_l1(0), 1.0);
        let l2: Spectrum<f64> = level_function(6, 2).unwrap();
        assert_eq!(l2.level_l1(2), 15.0);
        assert!(level_function::<f64>(3, 4).is_err());
    }

    #[test]
    fn convolving_the_level_function_projects() {
        let f = corpus::random_bounded_degree::<f64>(8, 4, 17).unwrap();
        for l in 0..=4usize {
            let projected = f.convolve(&level_function(8, l).unwrap()).unwrap();
            let direct = f.homogeneous_part(l).unwrap();
            for (a, b) in projected.coeffs().iter().zip(direct.coeffs()) {
                assert!((a - b).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn lp_norm_values() {
        let v = [3.0f64, -4.0];
        assert_eq!(LpNorm::new(1.0).unwrap().eval(&v), 7.0);
        assert_eq!(LpNorm::new(2.0).unwrap().eval(&v), 5.0);
        assert_eq!(LpNorm::Inf.eval(&v), 4.0);
        assert_eq!(LpNorm::new(f64::INFINITY).unwrap(), LpNorm::Inf);
        let p3 = LpNorm::new(3.0).unwrap().eval(&v);
        assert!((p3 - (27.0f64 + 64.0).powf(1.0 / 3.0)).abs() <= 1e-12);
        assert!(LpNorm::new(0.5).is_err());
        assert!(LpNorm::new(f64::NAN).is_err());
    }

    #[test]
    fn rms_of_constant_rows_is_the_row_norm() {
        let m = 3;
        let row = [0.5f64, -1.0, 0.25];
        let values: Vec<f64> = (0..1 << 4).flat_map(|_| row).collect();
        let f = VectorPointTable::new(4, m, values).unwrap();
        for norm in [LpNorm::new(1.0).unwrap(), LpNorm::new(2.0).unwrap(), LpNorm::Inf] {
            let expect = norm.eval(&row);
            assert!((rms_norm(&f, &norm) - expect).abs() <= 1e-12);
        }
    }

    #[test]
    fn rms_matches_a_direct_loop() {
        let f = corpus::random_vector_table::<f64>(6, 3, 5).unwrap();
        let norm = LpNorm::new(2.0).unwrap();
        let mut total = 0.0;
        for b in 0..f.len() as u64 {
            let sq: f64 = f.row(b).iter().map(|x| x * x).sum();
            total += sq;
        }
        let direct = (total / f.len() as f64).sqrt();
        assert!((rms_norm(&f, &norm) - direct).abs() <= 1e-12);
    }

    #[test]
    fn scalar_rms_is_the_root_mean_square() {
        let table = PointTable::new(3, vec![1.0f64, -1.0, 2.0, 0.0, 1.0, 1.0, -2.0, 0.0]).unwrap();
        let f = VectorPointTable::from_coordinates(std::slice::from_ref(&table)).unwrap();
        let expect = table.mean_square().sqrt();
        assert!((rms_norm(&f, &LpNorm::new(2.0).unwrap()) - expect).abs() <= 1e-12);
    }

    #[test]
    fn bound_worked_values() {
        assert!((pisier_bound(1, 1).unwrap() - 10.0).abs() <= 1e-12);
        assert!((pisier_bound(3, 2).unwrap() - 100.0).abs() <= 1e-12);
        for m in 1..6 {
            for l in 1..5 {
                assert!(pisier_bound(m, l).unwrap() >= 4f64.powi(l as i32));
            }
        }
        assert!(pisier_bound(0, 1).is_err());
    }

    #[test]
    fn constant_functions_project_to_zero() {
        let values = vec![1.0f64; (1 << 5) * 2];
        let f = VectorPointTable::new(5, 2, values).unwrap();
        let report = pisier_check(&f, 2, &LpNorm::Inf).unwrap();
        assert_eq!(report.ratio, 0.0);
        assert!(report.pass);
    }

    #[test]
    fn pure_characters_have_unit_ratio() {
        let spec = Spectrum::from_sparse(6, &[(0b111u64, 1.0f64)]).unwrap();
        let table = spec.synthesize();
        let f = VectorPointTable::from_coordinates(std::slice::from_ref(&table)).unwrap();
        let report = pisier_check(&f, 3, &LpNorm::new(2.0).unwrap()).unwrap();
        assert!((report.ratio - 1.0).abs() <= 1e-12);
        assert!(report.pass);
    }

    #[test]
    fn zero_functions_are_rejected() {
        let f = VectorPointTable::new(4, 2, vec![0.0f64; (1 << 4) * 2]).unwrap();
        match pisier_check(&f, 1, &LpNorm::Inf) {
            Err(Error::ZeroFunction) => {}
            other => panic!("expected zero-function error, got {other:?}"),
        }
    }

    #[test]
    fn random_sweep_passes_at_small_scale() {
        let mut trial = 0u64;
        for m in [2usize, 4] {
            for l in [1usize, 2] {
                for p in [LpNorm::new(1.0).unwrap(), LpNorm::new(2.0).unwrap(), LpNorm::Inf] {
                    for _ in 0..5 {
                        let f = corpus::random_vector_table::<f64>(6, m, trial).unwrap();
                        let report = pisier_check(&f, l, &p).unwrap();
                        assert!(
                            report.pass,
                            "m={m} l={l} trial={trial}: ratio {} vs bound {}",
                            report.ratio, report.bound
                        );
                        trial += 1;
                    }
                }
            }
        }
    }

    #[test]
    fn lp_norms_satisfy_the_axioms() {
        for norm in [LpNorm::new(1.0).unwrap(), LpNorm::new(2.5).unwrap(), LpNorm::Inf] {
            let report = check_norm_axioms::<f64, _>(&norm, 4, 9, 200).unwrap();
            assert!(report.pass, "{norm:?}: {report:?}");
        }
    }

    #[test]
    fn squared_norm_hook_fails_the_axioms() {
        let bogus = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
        let report = check_norm_axioms(&bogus, 3, 4, 200).unwrap();
        assert!(!report.pass);
    }

    #[test]
    fn norm_hooks_plug_into_the_check() {
        let f = corpus::random_vector_table::<f64>(5, 3, 8).unwrap();
        let weighted = |v: &[f64]| v.iter().map(|x| x.abs()).sum::<f64>() * 0.5;
        let report = pisier_check(&f, 1, &weighted).unwrap();
        assert!(report.pass);
    }
}
