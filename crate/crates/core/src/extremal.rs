//! Constructions that (nearly) attain the level bounds, plus the exact
//! symmetric-function machinery needed to evaluate them at large `n`.
//!
//! A symmetric function is stored by its value profile over coordinate
//! sums. Its level-`l` Fourier coefficient has the closed form
//! `2^-n sum_i sum_j (-1)^i binom(l,i) binom(n-l,j) F(n-2(i+j))`, evaluated
//! here by grouping on `t = i + j` (a Krawtchouk-style fast path) in exact
//! big-integer arithmetic over the dyadic decompositions of the profile
//! values; floating point appears only in the final conversion. This keeps
//! the alternating sum exact even at `n = 10^4`, where log-space summation
//! would cancel catastrophically.

use crate::chebyshev::{binomial_exact, cheb_coeff_exact, eval_chebyshev};
use crate::error::{Error, Result};
use crate::hypercube::{weight_masks, PointTable, Spectrum};
use crate::scalar::{s, to_f64, Scalar};
use crate::seeds;
use num_bigint::{BigInt, BigUint};
use num_traits::{Float, Signed, ToPrimitive, Zero};
use rand::Rng;

/// Function of the coordinate sum: `profile[k]` is the value at every point
/// with exactly `k` coordinates equal to `-1`, i.e. at sum `n - 2k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricFunction<S> {
    n: usize,
    profile: Vec<S>,
}

impl<S: Scalar> SymmetricFunction<S> {
    pub fn new(n: usize, profile: Vec<S>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("need at least one variable".into()));
        }
        if profile.len() != n + 1 {
            return Err(Error::Length {
                expected: n + 1,
                actual: profile.len(),
            });
        }
        if let Some(index) = profile.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(SymmetricFunction { n, profile })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Values indexed by the number of `-1` coordinates.
    pub fn profile(&self) -> &[S] {
        &self.profile
    }

    /// Value at coordinate sum `s` (same parity as `n`, `|s| <= n`).
    pub fn value_at_sum(&self, sum: i64) -> Result<S> {
        let n = self.n as i64;
        if sum.abs() > n || (n - sum) % 2 != 0 {
            return Err(Error::Argument(format!(
                "sum {sum} is not attainable on {n} variables"
            )));
        }
        Ok(self.profile[((n - sum) / 2) as usize])
    }

    /// Dense table; the bit convention makes `popcount` the `-1` count.
    pub fn to_point_table(&self) -> Result<PointTable<S>> {
        crate::hypercube::check_n(self.n)?;
        let values = (0..1u64 << self.n)
            .map(|b| self.profile[b.count_ones() as usize])
            .collect();
        PointTable::new(self.n, values)
    }

    /// The common Fourier coefficient of the level-`l` subsets.
    pub fn level_coefficient(&self, l: usize) -> Result<S> {
        let (num, shift) = self.level_coefficient_dyadic(l)?;
        Ok(s::<S>(dyadic_to_f64(&num, shift)))
    }

    /// Exact value as `num / 2^shift`.
    fn level_coefficient_dyadic(&self, l: usize) -> Result<(BigInt, i64)> {
        if l > self.n {
            return Err(Error::Argument(format!(
                "level {l} exceeds variable count {}",
                self.n
            )));
        }
        let decoded: Vec<(BigInt, i64)> = self
            .profile
            .iter()
            .map(|v| dyadic_parts(to_f64(*v)))
            .collect();
        let e_min = decoded
            .iter()
            .filter(|(m, _)| !m.is_zero())
            .map(|&(_, e)| e)
            .min();
        let e_min = match e_min {
            Some(e) => e,
            None => return Ok((BigInt::zero(), 0)), // all-zero profile
        };
        let scaled: Vec<BigInt> = decoded
            .into_iter()
            .map(|(m, e)| m << (e - e_min) as u64)
            .collect();
        let sum = krawtchouk_weighted_sum(self.n, l, &scaled);
        Ok((sum, self.n as i64 - e_min))
    }
}

/// `sum_t K_t m_t` with `K_t = sum_i (-1)^i binom(l, i) binom(n-l, t-i)`.
fn krawtchouk_weighted_sum(n: usize, l: usize, m: &[BigInt]) -> BigInt {
    debug_assert_eq!(m.len(), n + 1);
    let small: Vec<BigInt> = (0..=l).map(|i| binomial_exact(l as u64, i as u64)).collect();
    let mut large: Vec<BigInt> = Vec::with_capacity(n - l + 1);
    large.push(BigInt::from(1));
    for j in 0..n - l {
        let next = (&large[j] * (n - l - j)) / (j + 1);
        large.push(next);
    }
    let mut total = BigInt::zero();
    for (t, m_t) in m.iter().enumerate() {
        if m_t.is_zero() {
            continue;
        }
        let lo = t.saturating_sub(n - l);
        let hi = l.min(t);
        let mut k_t = BigInt::zero();
        for i in lo..=hi {
            let term = &small[i] * &large[t - i];
            if i % 2 == 1 {
                k_t -= term;
            } else {
                k_t += term;
            }
        }
        total += k_t * m_t;
    }
    total
}

/// Signed mantissa and exponent with `x = m * 2^e`, exact for finite `x`.
fn dyadic_parts(x: f64) -> (BigInt, i64) {
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let (mantissa, exponent, sign) = Float::integer_decode(x);
    let m = BigInt::from(mantissa) * BigInt::from(sign as i64);
    (m, exponent as i64)
}

/// Rounds `num / 2^shift` into `f64`, keeping 64 leading bits of the
/// numerator so the conversion is accurate to well under one part in 1e15
/// regardless of how large the exact integers grew.
fn dyadic_to_f64(num: &BigInt, shift: i64) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let mag: &BigUint = num.magnitude();
    let bits = mag.bits() as i64;
    let drop = (bits - 64).max(0);
    let top = (mag >> drop as u64).to_u64().expect("at most 64 bits remain") as f64;
    let signed = if num.is_negative() { -top } else { top };
    ldexp(signed, drop - shift)
}

fn ldexp(x: f64, mut e: i64) -> f64 {
    let mut r = x;
    while e > 600 {
        r *= 2f64.powi(600);
        e -= 600;
    }
    while e < -600 {
        r *= 2f64.powi(-600);
        e += 600;
    }
    r * 2f64.powi(e as i32)
}

/// `F(s) = T_d(s/n)`, the scaled Chebyshev symmetric function.
pub fn scaled_chebyshev_function<S: Scalar>(n: usize, d: usize) -> Result<SymmetricFunction<S>> {
    if n == 0 {
        return Err(Error::Argument("need at least one variable".into()));
    }
    let profile = (0..=n)
        .map(|k| {
            let z = ((n as f64 - 2.0 * k as f64) / n as f64).clamp(-1.0, 1.0);
            eval_chebyshev(d, s::<S>(z))
        })
        .collect();
    SymmetricFunction::new(n, profile)
}

/// Level-`l` coefficient of the power sum `(x_1 + ... + x_n)^j`, exact
/// through the same integer path (`j <= 30`).
pub fn power_sum_level_coefficient<S: Scalar>(n: usize, j: usize, l: usize) -> Result<S> {
    if j > 30 {
        return Err(Error::Argument(format!(
            "power {j} exceeds the supported ceiling 30"
        )));
    }
    if l > n || n == 0 {
        return Err(Error::Argument(format!(
            "need 1 <= n and level <= n, got n={n} l={l}"
        )));
    }
    let values: Vec<BigInt> = (0..=n)
        .map(|t| BigInt::from(n as i64 - 2 * t as i64).pow(j as u32))
        .collect();
    let sum = krawtchouk_weighted_sum(n, l, &values);
    Ok(s::<S>(dyadic_to_f64(&sum, n as i64)))
}

/// Outcome of the scaled-Chebyshev sharpness check.
#[derive(Debug, Clone, Copy)]
pub struct SharpnessReport {
    pub n: usize,
    pub d: usize,
    pub level: usize,
    /// `|binom(n, l) f_hat(S)| = |f_l(1^n)|`, the attained level value.
    pub lhs: f64,
    /// `|C(d, l)| - 2 e^d (d+1)! / n`.
    pub rhs: f64,
    /// `|C(d, l)| - 2 (d+1)! max_{j >= l} |C(d, j)| / n`.
    pub lemma_rhs: f64,
    /// True when the headline floor `rhs` is nonpositive (small n).
    pub vacuous: bool,
    pub pass: bool,
}

/// Verifies that `T_d` of the mean attains the level-`l` sup bound up to
/// an `O(1/n)` defect: computes `|f_l(1^n)|` exactly and compares against
/// both closed-form floors.
pub fn chebyshev_sharpness_check(n: usize, d: usize, l: usize) -> Result<SharpnessReport> {
    if d == 0 || l > d {
        return Err(Error::Argument(format!(
            "need 1 <= d and level <= d, got d={d} l={l}"
        )));
    }
    if (d - l) % 2 != 0 {
        return Err(Error::Parity(format!(
            "level {l} and degree {d} must agree mod 2"
        )));
    }
    let f: SymmetricFunction<f64> = scaled_chebyshev_function(n, d)?;
    let (num, shift) = f.level_coefficient_dyadic(l)?;
    let scaled = num * binomial_exact(n as u64, l as u64);
    let lhs = dyadic_to_f64(&scaled, shift).abs();

    let c = cheb_coeff_exact(d, l)?.abs().to_f64().unwrap();
    let mut factorial = 1.0f64;
    for i in 2..=d + 1 {
        factorial *= i as f64;
    }
    let rhs = c - 2.0 * (d as f64).exp() * factorial / n as f64;
    let max_tail = (l..=d)
        .map(|j| cheb_coeff_exact(d, j).unwrap().abs())
        .max()
        .unwrap()
        .to_f64()
        .unwrap();
    let lemma_rhs = c - 2.0 * factorial * max_tail / n as f64;
    let vacuous = rhs <= 0.0;
    let pass = lhs >= rhs - 1e-9 && lhs >= lemma_rhs - 1e-9;
    Ok(SharpnessReport {
        n,
        d,
        level: l,
        lhs,
        rhs,
        lemma_rhs,
        vacuous,
        pass,
    })
}

/// Homogeneous level-`l` function with uniform random signs, rejected and
/// redrawn until the synthesized sup norm is at most `2 sqrt(n binom(n,l))`,
/// then scaled by that bound. The result is bounded by 1 in sup norm and
/// carries level-`l` L1 weight exactly `binom(n,l) / (2 sqrt(n binom(n,l)))
/// = sqrt(binom(n,l)/n) / 2`.
pub fn random_sign_homogeneous<S: Scalar>(
    n: usize,
    l: usize,
    seed: u64,
    max_tries: usize,
) -> Result<Spectrum<S>> {
    if l == 0 || l > n {
        return Err(Error::Argument(format!(
            "need 1 <= level <= n, got l={l} n={n}"
        )));
    }
    if max_tries == 0 {
        return Err(Error::Argument("need at least one attempt".into()));
    }
    crate::hypercube::check_n(n)?;
    let count = binomial_exact(n as u64, l as u64).to_f64().unwrap();
    let bound = 2.0 * (n as f64 * count).sqrt();
    for attempt in 0..max_tries {
        let mut rng = seeds::trial_rng(seed, attempt as u64);
        let entries: Vec<(u64, S)> = weight_masks(n, l)
            .map(|mask| {
                let sign = if rng.gen::<f64>() < 0.5 {
                    S::one()
                } else {
                    -S::one()
                };
                (mask, sign)
            })
            .collect();
        let g = Spectrum::from_sparse(n, &entries)?;
        if to_f64(g.synthesize().sup_norm()) <= bound {
            return Ok(g.scale(s::<S>(1.0 / bound)));
        }
    }
    Err(Error::MaxTries { tries: max_tries })
}
