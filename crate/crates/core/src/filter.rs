//! Level-extraction filters on the angle grid `theta_t = t pi / d`.
//!
//! On the `2d`-point grid the function `phi(theta) = 2^(d-1) cos(d theta)
//! psi(cos theta)`, with `psi` the shifted suffix of the node polynomial
//! `Q(z) = prod_j (z - cos(j pi / d))`, satisfies the moment identities
//! `E[phi cos^k] = [k = l]` for every `k <= d + 1` and attains the smallest
//! possible mean absolute value `E|phi| = |C(d, l)|` among all such tables.
//! The suffix is taken by coefficient shift; nothing is divided numerically.

use crate::chebyshev::cheb_coeff_exact;
use crate::error::{Error, Result};
use crate::poly::RealPolynomial;
use crate::scalar::{s, Scalar};
use num_complex::Complex;
use num_traits::{Signed, ToPrimitive};

/// Largest filter degree the module accepts.
pub const MAX_FILTER_DEGREE: usize = 30;

/// `cos(t pi / d)` for `0 <= t < 2d`, with the symmetries applied in exact
/// arithmetic: the value at `t` and `2d - t` coincide, `t = d/2` gives
/// exactly zero, and mirrored angles negate exactly.
pub fn cos_pi_ratio<S: Scalar>(t: usize, d: usize) -> S {
    debug_assert!(d >= 1);
    let t = t % (2 * d);
    if t > d {
        return cos_pi_ratio(2 * d - t, d);
    }
    // Now 0 <= t <= d: fold onto [0, d/2] with an exact sign flip.
    if 2 * t > d {
        return -cos_pi_ratio::<S>(d - t, d);
    }
    if t == 0 {
        return S::one();
    }
    if 2 * t == d {
        return S::zero();
    }
    s::<S>((t as f64 * std::f64::consts::PI / d as f64).cos())
}

/// `sin(t pi / d)` with the matching exact symmetries.
fn sin_pi_ratio<S: Scalar>(t: usize, d: usize) -> S {
    debug_assert!(d >= 1);
    let t = t % (2 * d);
    if t > d {
        return -sin_pi_ratio::<S>(t - d, d);
    }
    if 2 * t > d {
        return sin_pi_ratio::<S>(d - t, d);
    }
    if t == 0 {
        return S::zero();
    }
    if 2 * t == d {
        return S::one();
    }
    s::<S>((t as f64 * std::f64::consts::PI / d as f64).sin())
}

/// The `2d` equally spaced angles `t pi / d`, each carrying weight `1/(2d)`.
#[derive(Debug, Clone)]
pub struct AngleGrid<S> {
    d: usize,
    angles: Vec<S>,
}

impl<S: Scalar> AngleGrid<S> {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Argument("grid degree must be at least 1".into()));
        }
        if d > MAX_FILTER_DEGREE {
            return Err(Error::Argument(format!(
                "grid degree {d} exceeds the supported ceiling {MAX_FILTER_DEGREE}"
            )));
        }
        let angles = (0..2 * d)
            .map(|t| s::<S>(t as f64 * std::f64::consts::PI / d as f64))
            .collect();
        Ok(AngleGrid { d, angles })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        2 * self.d
    }

    pub fn angles(&self) -> &[S] {
        &self.angles
    }

    /// Uniform weight of every grid point.
    pub fn weight(&self) -> S {
        S::one() / s::<S>((2 * self.d) as f64)
    }
}

/// `E[e^(i a theta)]` over the grid: exactly 1 when `2d | a`, and a full
/// cancellation (zero up to rounding) otherwise. The phase is reduced mod
/// `2d` in integer arithmetic before any trigonometry.
pub fn exp_moment<S: Scalar>(grid: &AngleGrid<S>, a: i64) -> Complex<S> {
    let d = grid.d;
    let modulus = (2 * d) as i128;
    let mut sum = Complex::new(S::zero(), S::zero());
    for t in 0..2 * d {
        let phase = (a as i128 * t as i128).rem_euclid(modulus) as usize;
        sum = sum + Complex::new(cos_pi_ratio(phase, d), sin_pi_ratio(phase, d));
    }
    sum * grid.weight()
}

/// Monic node polynomial `Q(z) = prod_{j=0}^{d} (z - cos(j pi / d))`,
/// degree `d + 1`. The roots pair as `(r, -r)` (plus a root at zero when
/// `d` is even), so the product is assembled in the variable `y = z^2`;
/// the parity class of coefficients that must vanish is then exactly zero.
pub fn node_polynomial<S: Scalar>(d: usize) -> Result<RealPolynomial<S>> {
    if d == 0 {
        return Err(Error::Argument("node polynomial needs degree >= 1".into()));
    }
    if d > MAX_FILTER_DEGREE {
        return Err(Error::Argument(format!(
            "degree {d} exceeds the supported ceiling {MAX_FILTER_DEGREE}"
        )));
    }
    let mut q = RealPolynomial::new(vec![S::one()]);
    for j in 0..=(d - 1) / 2 {
        let r = cos_pi_ratio::<S>(j, d);
        q = q.mul_linear(r * r);
    }
    let odd_offset = if d % 2 == 0 { 1 } else { 0 };
    let mut coeffs = vec![S::zero(); d + 2];
    for (k, &c) in q.coeffs().iter().enumerate() {
        coeffs[2 * k + odd_offset] = c;
    }
    Ok(RealPolynomial::new(coeffs))
}

/// `psi(z) = sum_{j > l} c_j z^(j - l - 1)`, the suffix of `q` above index
/// `l` shifted down by `z^(l+1)`. Requires the retained parity class below
/// the suffix to vanish: `c_j = 0` for every `j <= l` with `j = l (mod 2)`,
/// which holds for `node_polynomial(d)` exactly when `d = l (mod 2)`.
pub fn shifted_suffix<S: Scalar>(q: &RealPolynomial<S>, l: usize) -> Result<RealPolynomial<S>> {
    let scale = q
        .coeffs()
        .iter()
        .fold(S::zero(), |acc, c| acc.max(c.abs()))
        .max(S::one());
    let tol = s::<S>(1e-12) * scale;
    for j in (0..=l.min(q.degree())).rev() {
        if j % 2 == l % 2 && q.coeff(j).abs() > tol {
            return Err(Error::Parity(format!(
                "coefficient at index {j} must vanish before shifting past {l}"
            )));
        }
    }
    let mut coeffs = Vec::new();
    for j in l + 1..=q.degree() {
        coeffs.push(q.coeff(j));
    }
    Ok(RealPolynomial::new(coeffs))
}

/// Filter values on the grid of degree `d`, extracting level `l`.
#[derive(Debug, Clone)]
pub struct ChebFilter<S> {
    d: usize,
    level: usize,
    values: Vec<S>,
}

/// Builds `phi` for a degree/level pair of equal parity. On the grid,
/// `cos(d theta_t) = (-1)^t` exactly, so the filter is evaluated as
/// `2^(d-1) (-1)^t psi(cos theta_t)` with no trigonometry on the factor
/// that carries the sign.
pub fn build_filter<S: Scalar>(d: usize, l: usize) -> Result<ChebFilter<S>> {
    if d == 0 {
        return Err(Error::Argument("filter degree must be at least 1".into()));
    }
    if l > d {
        return Err(Error::Argument(format!(
            "level {l} exceeds filter degree {d}"
        )));
    }
    if (d - l) % 2 != 0 {
        return Err(Error::Parity(format!(
            "level {l} and degree {d} must agree mod 2"
        )));
    }
    let q = node_polynomial::<S>(d)?;
    let psi = shifted_suffix(&q, l)?;
    let amp = s::<S>((1u64 << (d - 1)) as f64);
    let values = (0..2 * d)
        .map(|t| {
            let sign = if t % 2 == 0 { S::one() } else { -S::one() };
            amp * sign * psi.eval(cos_pi_ratio(t, d))
        })
        .collect();
    Ok(ChebFilter {
        d,
        level: l,
        values,
    })
}

impl<S: Scalar> ChebFilter<S> {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Value at each grid angle, in grid order.
    pub fn values(&self) -> &[S] {
        &self.values
    }

    /// `E[phi cos^k]` over the grid. Identity-bearing only for
    /// `k <= d + 1`; larger `k` are reported as computed.
    pub fn moment(&self, k: usize) -> S {
        let d = self.d;
        let mut sum = S::zero();
        for (t, &v) in self.values.iter().enumerate() {
            sum = sum + v * cos_pi_ratio::<S>(t, d).powi(k as i32);
        }
        sum / s::<S>((2 * d) as f64)
    }

    /// `E|phi|`, which the optimality bound pins to `|C(d, l)|`.
    pub fn abs_mean(&self) -> S {
        let sum = self
            .values
            .iter()
            .fold(S::zero(), |acc, v| acc + v.abs());
        sum / s::<S>(self.values.len() as f64)
    }

    /// Reference value `|C(d, l)|` for the mean absolute value.
    pub fn abs_mean_reference(&self) -> S {
        let c = cheb_coeff_exact(self.d, self.level).expect("level within degree");
        s::<S>(c.abs().to_f64().unwrap())
    }

    /// True when `sign(phi(theta_t))` equals a single global sign times
    /// `sign(cos(d theta_t)) = (-1)^t` wherever `phi` is nonzero.
    pub fn sign_tracks_cos(&self, tol: S) -> bool {
        let mut global = S::zero();
        for (t, &v) in self.values.iter().enumerate() {
            if v.abs() <= tol {
                continue;
            }
            let track = if t % 2 == 0 { v } else { -v };
            if global == S::zero() {
                global = track.signum();
            } else if track.signum() != global {
                return false;
            }
        }
        true
    }
}

/// `E[cos(d theta) cos^k(theta)]` over the grid of degree `d`: zero when
/// `k` and `d` differ in parity or `k < d`, and `2^(1-d)` at `k = d`.
pub fn cos_moment<S: Scalar>(d: usize, k: usize) -> Result<S> {
    let grid = AngleGrid::<S>::new(d)?;
    let mut sum = S::zero();
    for t in 0..grid.len() {
        let sign = if t % 2 == 0 { S::one() } else { -S::one() };
        sum = sum + sign * cos_pi_ratio::<S>(t, d).powi(k as i32);
    }
    Ok(sum / s::<S>(grid.len() as f64))
}
