//! Suffix-sign structure of monic polynomials with positive real roots.
//!
//! For such a polynomial the coefficients alternate in sign, their absolute
//! values are log-concave, and at any root `r` every coefficient suffix
//! satisfies `(-1)^(d-k-1) p_{>k}(r) >= 0`. The module exposes the checks
//! and the sequence lemmas (log-concavity, unimodality, alternating prefix
//! sums) the proof runs on.

use crate::error::{Error, Result};
use crate::poly::RealPolynomial;
use crate::scalar::{s, Scalar};

/// Monic polynomial carried with its (positive) roots.
#[derive(Debug, Clone)]
pub struct RootedPolynomial<S> {
    roots: Vec<S>,
    coeffs: Vec<S>,
}

impl<S: Scalar> RootedPolynomial<S> {
    /// Expands `prod (z - r_i)` by incremental root multiplication.
    pub fn from_roots(roots: &[S]) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::Argument("need at least one root".into()));
        }
        if let Some(bad) = roots.iter().find(|r| !(**r > S::zero()) || !r.is_finite()) {
            return Err(Error::Argument(format!(
                "roots must be positive reals, got {bad}"
            )));
        }
        let mut p = RealPolynomial::new(vec![S::one()]);
        for &r in roots {
            p = p.mul_linear(r);
        }
        Ok(RootedPolynomial {
            roots: roots.to_vec(),
            coeffs: p.coeffs().to_vec(),
        })
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[S] {
        &self.roots
    }

    /// Monic coefficients, low to high.
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn eval(&self, z: S) -> S {
        RealPolynomial::new(self.coeffs.clone()).eval(z)
    }

    /// `p_{>k}(r) = sum_{j=k+1}^{d} c_j r^j`.
    pub fn suffix_eval(&self, k: usize, r: S) -> S {
        let d = self.degree();
        if k >= d {
            return S::zero();
        }
        let mut acc = S::zero();
        for j in (k + 1..=d).rev() {
            acc = acc * r + self.coeffs[j];
        }
        acc * r.powi(k as i32 + 1)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuffixViolation<S> {
    pub root_index: usize,
    pub k: usize,
    pub signed_value: S,
}

#[derive(Debug, Clone)]
pub struct SuffixSignReport<S> {
    /// Smallest signed suffix value seen over all roots and cut points.
    pub min_signed: S,
    /// `max_j |c_j| * max(1, r)^d` at the worst root, the natural size of
    /// the quantities being signed.
    pub scale: S,
    pub violations: Vec<SuffixViolation<S>>,
    pub pass: bool,
}

/// Checks `(-1)^(d-k-1) p_{>k}(r) >= 0` at every stored root and every
/// `k in 0..=d`, flagging anything below `-1e-9 * scale`.
pub fn suffix_sign_check<S: Scalar>(p: &RootedPolynomial<S>) -> SuffixSignReport<S> {
    let d = p.degree();
    let max_coeff = p
        .coeffs()
        .iter()
        .fold(S::zero(), |acc, c| acc.max(c.abs()));
    let mut min_signed = S::infinity();
    let mut worst_scale = S::zero();
    let mut violations = Vec::new();
    for (root_index, &r) in p.roots().iter().enumerate() {
        let scale = max_coeff * r.max(S::one()).powi(d as i32);
        worst_scale = worst_scale.max(scale);
        for k in 0..=d {
            // parity of d - k - 1, with the k = d case degenerate (suffix 0)
            let flip = (d as i64 - k as i64 - 1).rem_euclid(2) == 1;
            let suffix = p.suffix_eval(k, r);
            let signed = if flip { -suffix } else { suffix };
            min_signed = min_signed.min(signed);
            if signed < -s::<S>(1e-9) * scale {
                violations.push(SuffixViolation {
                    root_index,
                    k,
                    signed_value: signed,
                });
            }
        }
    }
    let pass = violations.is_empty();
    SuffixSignReport {
        min_signed,
        scale: worst_scale,
        violations,
        pass,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceChecks {
    pub log_concave: bool,
    pub unimodal: bool,
}

/// Log-concavity (`a_j^2 >= a_{j-1} a_{j+1}`, slack `1e-12 * scale`) and
/// single-peak unimodality of a nonnegative sequence.
pub fn sequence_checks<S: Scalar>(a: &[S]) -> Result<SequenceChecks> {
    if a.is_empty() {
        return Err(Error::Argument("empty sequence".into()));
    }
    let peak = a.iter().fold(S::zero(), |acc, v| acc.max(v.abs()));
    let slack = s::<S>(1e-12) * peak * peak;
    let mut log_concave = true;
    for j in 1..a.len().saturating_sub(1) {
        if a[j] * a[j] < a[j - 1] * a[j + 1] - slack {
            log_concave = false;
        }
    }
    let tol = s::<S>(1e-12) * peak;
    let mut i = 0;
    while i + 1 < a.len() && a[i + 1] >= a[i] - tol {
        i += 1;
    }
    while i + 1 < a.len() && a[i + 1] <= a[i] + tol {
        i += 1;
    }
    Ok(SequenceChecks {
        log_concave,
        unimodal: i + 1 == a.len() || a.len() == 1,
    })
}

#[derive(Debug, Clone)]
pub enum PrefixCheckOutcome<S> {
    /// A precondition (positivity, unimodality, vanishing alternating sum)
    /// failed; the prefix claim is not asserted.
    NotApplicable { reason: String },
    Checked { pass: bool, min_margin: S },
}

/// For a positive unimodal sequence with vanishing alternating sum, every
/// signed prefix `(-1)^k sum_{j<=k} (-1)^j a_j` is nonnegative.
pub fn alternating_prefix_check<S: Scalar>(a: &[S]) -> PrefixCheckOutcome<S> {
    if a.is_empty() {
        return PrefixCheckOutcome::NotApplicable {
            reason: "empty sequence".into(),
        };
    }
    if a.iter().any(|v| !(*v > S::zero())) {
        return PrefixCheckOutcome::NotApplicable {
            reason: "sequence is not strictly positive".into(),
        };
    }
    let total = a.iter().fold(S::zero(), |acc, v| acc + *v);
    let tol = s::<S>(1e-10) * total;
    match sequence_checks(a) {
        Ok(checks) if checks.unimodal => {}
        _ => {
            return PrefixCheckOutcome::NotApplicable {
                reason: "sequence is not unimodal".into(),
            }
        }
    }
    let mut alternating = S::zero();
    for (j, &v) in a.iter().enumerate() {
        alternating = if j % 2 == 0 {
            alternating + v
        } else {
            alternating - v
        };
    }
    if alternating.abs() > tol {
        return PrefixCheckOutcome::NotApplicable {
            reason: "alternating sum does not vanish".into(),
        };
    }
    let mut prefix = S::zero();
    let mut min_margin = S::infinity();
    for (k, &v) in a.iter().enumerate() {
        prefix = if k % 2 == 0 { prefix + v } else { prefix - v };
        let signed = if k % 2 == 0 { prefix } else { -prefix };
        min_margin = min_margin.min(signed);
    }
    PrefixCheckOutcome::Checked {
        pass: min_margin >= -tol,
        min_margin,
    }
}
