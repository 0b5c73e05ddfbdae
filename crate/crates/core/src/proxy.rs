//! Proxy polynomials: symmetric spectra built from filter moments whose
//! convolution against a degree-bounded function extracts one level part.
//!
//! The degree-bound variant has coefficients `m_k = E[phi cos^k]` on every
//! level `k`, so convolving kills levels `k <= d, k != l` and fixes level
//! `l`; its mean absolute value is at most `|C(d, l)|`. The scaled variant
//! (used by the vector-valued projection experiments) carries
//! `m_k = 2^(l-k) E[phi cos^k]`, keeps the same extraction property for
//! degree-`d` inputs, and pays a factor `2^l` in the mean absolute value
//! while its tail above level `d` contracts geometrically.

use crate::error::{Error, Result};
use crate::filter::{build_filter, ChebFilter};
use crate::hypercube::Spectrum;
use crate::scalar::{s, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProxyVariant {
    DegreeBound,
    Pisier,
}

/// Level-indexed coefficients of a symmetric proxy spectrum.
#[derive(Debug, Clone)]
pub struct LevelProfile<S> {
    n: usize,
    d_requested: usize,
    d_effective: usize,
    level: usize,
    variant: ProxyVariant,
    coeffs: Vec<S>,
}

/// Mean absolute value of the proxy together with its analytic ceiling.
#[derive(Debug, Clone, Copy)]
pub struct ProxyL1<S> {
    pub exact: S,
    pub ceiling: S,
}

/// Builds the proxy profile for `n` variables. When `d` and `l` differ in
/// parity the construction silently drops to `d - 1`, which changes nothing
/// for inputs of degree at most `d - 1 < d` of the mismatched parity class
/// and is the tightest grid the filter admits.
pub fn proxy_profile<S: Scalar>(
    n: usize,
    d: usize,
    l: usize,
    variant: ProxyVariant,
) -> Result<LevelProfile<S>> {
    if d == 0 || d > n {
        return Err(Error::Argument(format!(
            "need 1 <= degree <= variables, got d={d} n={n}"
        )));
    }
    if l > d {
        return Err(Error::Argument(format!(
            "level {l} exceeds degree {d}"
        )));
    }
    let d_effective = if (d - l) % 2 == 0 { d } else { d - 1 };
    // d drops to 0 only for (d, l) = (1, 0); the proxy is plain expectation
    let coeffs = if d_effective == 0 {
        let mut m = vec![S::zero(); n + 1];
        m[0] = S::one();
        m
    } else {
        let phi: ChebFilter<S> = build_filter(d_effective, l)?;
        (0..=n)
            .map(|k| {
                let m = phi.moment(k);
                match variant {
                    ProxyVariant::DegreeBound => m,
                    ProxyVariant::Pisier => m * s::<S>(2.0).powi(l as i32 - k as i32),
                }
            })
            .collect()
    };
    Ok(LevelProfile {
        n,
        d_requested: d,
        d_effective,
        level: l,
        variant,
        coeffs,
    })
}

impl<S: Scalar> LevelProfile<S> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d_requested(&self) -> usize {
        self.d_requested
    }

    pub fn d_effective(&self) -> usize {
        self.d_effective
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn variant(&self) -> ProxyVariant {
        self.variant
    }

    /// Coefficient per level, indices `0..=n`.
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Analytic ceiling on the mean absolute value of the expanded proxy:
    /// `|C(d, l)|`, scaled by `2^l` for the contracted variant.
    pub fn ceiling(&self) -> S {
        let base = if self.d_effective == 0 {
            S::one() // |C(0, 0)|
        } else {
            build_filter::<S>(self.d_effective, self.level)
                .expect("profile was built from the same pair")
                .abs_mean_reference()
        };
        match self.variant {
            ProxyVariant::DegreeBound => base,
            ProxyVariant::Pisier => s::<S>((1u64 << self.level) as f64) * base,
        }
    }

    /// Dense spectrum with `P_hat(S) = m_{|S|}`.
    pub fn expand(&self) -> Result<Spectrum<S>> {
        crate::hypercube::check_n(self.n)?;
        let coeffs: Vec<S> = (0..1u64 << self.n)
            .map(|mask| self.coeffs[mask.count_ones() as usize])
            .collect();
        Spectrum::new(self.n, coeffs)
    }

    /// Exact `E|P|` by enumerating the cube, with the ceiling attached.
    pub fn l1(&self) -> Result<ProxyL1<S>> {
        let table = self.expand()?.synthesize();
        let sum = table
            .values()
            .iter()
            .fold(S::zero(), |acc, v| acc + v.abs());
        Ok(ProxyL1 {
            exact: sum / s::<S>(table.len() as f64),
            ceiling: self.ceiling(),
        })
    }
}

/// Extracts the level-`l` part of a degree-at-most-`d` spectrum by proxy
/// convolution. Exactly `homogeneous_part` on its contract domain, but
/// routed through the filter construction.
pub fn extract_level<S: Scalar>(f: &Spectrum<S>, d: usize, l: usize) -> Result<Spectrum<S>> {
    let degree = f.degree();
    if degree > d {
        return Err(Error::DegreeContract { degree, bound: d });
    }
    let profile = proxy_profile::<S>(f.n(), d, l, ProxyVariant::DegreeBound)?;
    f.convolve(&profile.expand()?)
}
