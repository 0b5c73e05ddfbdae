//! Seeded random instances for property sweeps. Draw order is fixed and
//! documented per generator so a (seed, index) pair always denotes the
//! same object, independent of how many trials run.

use crate::error::{Error, Result};
use crate::hypercube::{weight_masks, Spectrum, VectorPointTable};
use crate::realrooted::RootedPolynomial;
use crate::scalar::{s, Scalar};
use crate::seeds;
use rand::Rng;
use rand_distr::StandardNormal;

/// Random function with spectrum supported on levels <= d, scaled so the
/// sup norm is exactly 1. Coefficients are i.i.d. standard normal, drawn
/// levels ascending and masks ascending within each level.
pub fn random_bounded_degree<S: Scalar>(n: usize, d: usize, seed: u64) -> Result<Spectrum<S>> {
    if d > n {
        return Err(Error::Argument(format!(
            "degree {d} exceeds variable count {n}"
        )));
    }
    let mut rng = seeds::rng(seed);
    let mut entries = Vec::new();
    for l in 0..=d {
        for mask in weight_masks(n, l) {
            entries.push((mask, s::<S>(rng.sample(StandardNormal))));
        }
    }
    let f = Spectrum::from_sparse(n, &entries)?;
    let sup = f.synthesize().sup_norm();
    Ok(f.scale(S::one() / sup))
}

/// Random homogeneous level-l spectrum normalized to unit level L1 weight.
/// Same draw order contract as `random_bounded_degree`.
pub fn random_homogeneous<S: Scalar>(n: usize, l: usize, seed: u64) -> Result<Spectrum<S>> {
    if l == 0 || l > n {
        return Err(Error::Argument(format!(
            "need 1 <= level <= n, got l={l} n={n}"
        )));
    }
    let mut rng = seeds::rng(seed);
    let entries: Vec<(u64, S)> = weight_masks(n, l)
        .map(|mask| (mask, s::<S>(rng.sample(StandardNormal))))
        .collect();
    let f = Spectrum::from_sparse(n, &entries)?;
    let weight = f.level_l1(l);
    Ok(f.scale(S::one() / weight))
}

/// Vector-valued table with entries uniform in [-1, 1], drawn row-major
/// (point index outer, coordinate inner).
pub fn random_vector_table<S: Scalar>(n: usize, m: usize, seed: u64) -> Result<VectorPointTable<S>> {
    if m == 0 {
        return Err(Error::Argument("need at least one coordinate".into()));
    }
    crate::hypercube::check_n(n)?;
    let mut rng = seeds::rng(seed);
    let values = (0..(1usize << n) * m)
        .map(|_| s::<S>(rng.gen::<f64>() * 2.0 - 1.0))
        .collect();
    VectorPointTable::new(n, m, values)
}

/// Vector-valued function whose every coordinate has degree <= d;
/// coordinate j uses the sub-seed mix(seed, j).
pub fn random_vector_bounded_degree<S: Scalar>(
    n: usize,
    m: usize,
    d: usize,
    seed: u64,
) -> Result<VectorPointTable<S>> {
    if m == 0 {
        return Err(Error::Argument("need at least one coordinate".into()));
    }
    let tables: Vec<_> = (0..m)
        .map(|j| {
            random_bounded_degree::<S>(n, d, seeds::mix(seed, j as u64))
                .map(|f| f.synthesize())
        })
        .collect::<Result<_>>()?;
    VectorPointTable::from_coordinates(&tables)
}

/// Monic polynomial with `degree` roots drawn uniformly from (0, 10].
pub fn random_rooted_poly<S: Scalar>(degree: usize, seed: u64) -> Result<RootedPolynomial<S>> {
    if degree == 0 {
        return Err(Error::Argument("need degree >= 1".into()));
    }
    let mut rng = seeds::rng(seed);
    let roots: Vec<S> = (0..degree)
        .map(|_| s::<S>(10.0 * (1.0 - rng.gen::<f64>())))
        .collect();
    RootedPolynomial::from_roots(&roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounded_degree_is_sup_normalized() {
        let f = random_bounded_degree::<f64>(8, 3, 1).unwrap();
        assert!(f.degree() <= 3);
        let sup = f.synthesize().sup_norm();
        assert!((sup - 1.0).abs() <= 1e-12);
        let again = random_bounded_degree::<f64>(8, 3, 1).unwrap();
        assert_eq!(f.coeffs(), again.coeffs());
        let other = random_bounded_degree::<f64>(8, 3, 2).unwrap();
        assert_ne!(f.coeffs(), other.coeffs());
    }

    #[test]
    fn homogeneous_has_unit_level_weight() {
        let f = random_homogeneous::<f64>(10, 3, 4).unwrap();
        assert!((f.level_l1(3) - 1.0).abs() <= 1e-12);
        for l in 0..=10usize {
            if l != 3 {
                assert_eq!(f.level_l1(l), 0.0);
            }
        }
        assert!(random_homogeneous::<f64>(4, 0, 1).is_err());
    }

    #[test]
    fn vector_tables_are_bounded_and_seeded() {
        let f = random_vector_table::<f64>(5, 3, 7).unwrap();
        assert_eq!(f.n(), 5);
        assert_eq!(f.m(), 3);
        for b in 0..f.len() as u64 {
            for &v in f.row(b) {
                assert!(v.abs() <= 1.0);
            }
        }
        let again = random_vector_table::<f64>(5, 3, 7).unwrap();
        assert_eq!(f.row(17), again.row(17));
    }

    #[test]
    fn vector_bounded_degree_caps_every_coordinate() {
        let f = random_vector_bounded_degree::<f64>(6, 3, 2, 11).unwrap();
        for j in 0..3 {
            let table = f.coordinate(j).unwrap();
            // the round trip through value space leaves dust, not mass
            let spec = table.analyze();
            for l in 3..=6usize {
                assert!(spec.level_l1(l) <= 1e-12, "coordinate {j} level {l}");
            }
            assert!((table.sup_norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn rooted_polys_have_roots_in_range() {
        let p = random_rooted_poly::<f64>(12, 3).unwrap();
        assert_eq!(p.degree(), 12);
        for &r in p.roots() {
            assert!(r > 0.0 && r <= 10.0);
        }
        assert!(random_rooted_poly::<f64>(0, 1).is_err());
    }
}
