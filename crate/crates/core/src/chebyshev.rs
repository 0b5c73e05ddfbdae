//! Chebyshev polynomials of the first kind and the growth bounds their
//! coefficients give for level parts of bounded low-degree functions.
//!
//! Coefficients are computed in exact big-integer arithmetic (the values
//! exceed 64 bits well before degree 64) and converted to floating point
//! only at the API edges. `C(d, l)` denotes the coefficient of `z^l` in
//! `T_d(z)`; it vanishes unless `l` and `d` have equal parity, and obeys
//! `|C(d, l)| <= d^l / l!`.

use crate::error::{Error, Result};
use crate::poly::RealPolynomial;
use crate::scalar::{s, Scalar};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

fn check_level(d: usize, l: usize) -> Result<()> {
    if l > d {
        return Err(Error::Argument(format!(
            "coefficient index {l} exceeds degree {d}"
        )));
    }
    Ok(())
}

/// Exact coefficient list of `T_d`, low to high, via the recurrence
/// `T_{k+1} = 2 z T_k - T_{k-1}`.
pub fn chebyshev_coeffs_exact(d: usize) -> Vec<BigInt> {
    let mut prev: Vec<BigInt> = vec![BigInt::from(1)]; // T_0
    if d == 0 {
        return prev;
    }
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::from(1)]; // T_1
    for _ in 1..d {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (j, c) in cur.iter().enumerate() {
            next[j + 1] += 2 * c;
        }
        for (j, c) in prev.iter().enumerate() {
            next[j] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `T_d` with coefficients rounded into the requested scalar.
pub fn chebyshev_poly<S: Scalar>(d: usize) -> RealPolynomial<S> {
    let coeffs = chebyshev_coeffs_exact(d)
        .iter()
        .map(|c| s::<S>(c.to_f64().unwrap_or(f64::INFINITY)))
        .collect();
    RealPolynomial::new(coeffs)
}

/// Exact closed form for the coefficient of `z^l` in `T_d`:
/// `(-1)^((d-l)/2) 2^l (d/(d+l)) binom((d+l)/2, l)` when the parities
/// match, zero otherwise, and 1 at `d = l = 0`.
pub fn cheb_coeff_exact(d: usize, l: usize) -> Result<BigInt> {
    check_level(d, l)?;
    if d == 0 {
        return Ok(BigInt::from(1)); // T_0 = 1
    }
    if (d - l) % 2 != 0 {
        return Ok(BigInt::zero());
    }
    let binom = binomial_exact(((d + l) / 2) as u64, l as u64);
    let numer = BigInt::from(2).pow(l as u32) * BigInt::from(d as u64) * binom;
    let (q, r) = num_integer::Integer::div_rem(&numer, &BigInt::from((d + l) as u64));
    debug_assert!(r.is_zero(), "closed form is integral");
    Ok(if (d - l) / 2 % 2 == 1 { -q } else { q })
}

/// Floating-point view of [`cheb_coeff_exact`].
pub fn cheb_coeff<S: Scalar>(d: usize, l: usize) -> Result<S> {
    Ok(s::<S>(cheb_coeff_exact(d, l)?.to_f64().unwrap()))
}

/// Ceiling on the sup norm of the level-`l` part of any function of degree
/// at most `d` that is bounded by 1: `|C(d, l)|` when the parities match,
/// `|C(d-1, l)|` otherwise.
pub fn sup_norm_bound<S: Scalar>(d: usize, l: usize) -> Result<S> {
    if d == 0 {
        return Err(Error::Argument("degree must be at least 1".into()));
    }
    check_level(d, l)?;
    let eff = if (d - l) % 2 == 0 { d } else { d - 1 };
    let c = cheb_coeff_exact(eff, l)?;
    Ok(s::<S>(c.abs().to_f64().unwrap()))
}

/// The simple factorial ceiling `d^l / l!` on `|C(d, l)|`.
pub fn sup_norm_bound_simple<S: Scalar>(d: usize, l: usize) -> Result<S> {
    check_level(d, l)?;
    let mut value = 1.0f64;
    for j in 1..=l {
        value *= d as f64 / j as f64;
    }
    Ok(s::<S>(value))
}

/// Ceiling on the level-`l` Fourier weight in L1: for a degree-`d` function
/// on `n` variables bounded by 1,
/// `sum_{|S|=l} |f_hat(S)| <= n^((l-1)/2) d^l e^(binom(l+1,2))`.
pub fn level_l1_bound<S: Scalar>(n: usize, d: usize, l: usize) -> Result<S> {
    if l == 0 {
        return Err(Error::Argument("the L1 ceiling needs level >= 1".into()));
    }
    if l > d || d > n {
        return Err(Error::Argument(format!(
            "need level <= degree <= variables, got l={l} d={d} n={n}"
        )));
    }
    let choose2 = (l + 1) * l / 2;
    let value = (n as f64).powf((l as f64 - 1.0) / 2.0)
        * (d as f64).powi(l as i32)
        * (choose2 as f64).exp();
    Ok(s::<S>(value))
}

/// Evaluates `T_d` itself: through `cos(d acos z)` on `[-1, 1]` (exactly
/// bounded there) and through the recurrence outside.
pub fn eval_chebyshev<S: Scalar>(d: usize, z: S) -> S {
    if z.abs() <= S::one() {
        return (s::<S>(d as f64) * z.acos()).cos();
    }
    let mut prev = S::one();
    let mut cur = z;
    if d == 0 {
        return prev;
    }
    for _ in 1..d {
        let next = s::<S>(2.0) * z * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact binomial coefficient.
pub fn binomial_exact(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}
