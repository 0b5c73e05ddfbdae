//! Fourier analysis of bounded low-degree functions on the Boolean hypercube.
//!
//! The crate provides dense point tables and spectra over `{-1,+1}^n` with
//! fast Walsh-Hadamard transforms, exact Chebyshev coefficient arithmetic,
//! trigonometric level-extraction filters and the proxy polynomials built
//! from them, sharpness constructions for the level bounds, suffix-sign
//! checks for positive-rooted polynomials, a sampling-based low-degree
//! learner, and projection-norm (Pisier-type) experiments for vector-valued
//! functions.
//!
//! All numeric kernels are generic over a floating scalar (see [`Scalar`]);
//! the aliases at the crate root fix `f64`, which is what the command-line
//! driver and the test suites use. Exact big-integer arithmetic backs the
//! Chebyshev coefficients and the symmetric-function fast paths, with
//! conversion to floating point only at the API edges.

pub mod chebyshev;
pub mod corpus;
pub mod error;
pub mod extremal;
pub mod filter;
pub mod hypercube;
pub mod io;
pub mod learning;
pub mod pisier;
pub mod poly;
pub mod proxy;
pub mod realrooted;
pub mod scalar;
pub mod seeds;

pub use error::{Error, Result};
pub use scalar::Scalar;

use std::sync::atomic::{AtomicUsize, Ordering};

/// Dense-representation aliases over `f64`.
pub type PointTable = hypercube::PointTable<f64>;
pub type Spectrum = hypercube::Spectrum<f64>;
pub type VectorPointTable = hypercube::VectorPointTable<f64>;
pub type RealPolynomial = poly::RealPolynomial<f64>;
pub type AngleGrid = filter::AngleGrid<f64>;
pub type ChebFilter = filter::ChebFilter<f64>;
pub type LevelProfile = proxy::LevelProfile<f64>;
pub type RootedPolynomial = realrooted::RootedPolynomial<f64>;
pub type SymmetricFunction = extremal::SymmetricFunction<f64>;
pub type QueryOracle = learning::QueryOracle<f64>;
pub type LearnedModel = learning::LearnedModel<f64>;

/// Default ceiling on `n` for anything that materializes all `2^n` points.
pub const DEFAULT_DENSE_CAP: usize = 24;

static DENSE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DENSE_CAP);

/// Current ceiling on `n` for dense tables and spectra.
pub fn dense_cap() -> usize {
    DENSE_CAP.load(Ordering::Relaxed)
}

/// Overrides the dense ceiling process-wide. The driver wires this to the
/// `CUBE_SPECTRA_NCAP` environment variable; raising it is at the caller's
/// own risk (memory grows as `2^n`).
pub fn set_dense_cap(cap: usize) {
    DENSE_CAP.store(cap.clamp(1, 63), Ordering::Relaxed);
}
