//! Dense functions on `{-1,+1}^n` and their Fourier spectra.
//!
//! Points are indexed by bitmask: bit `j` of an index `b` stores coordinate
//! `j` as `x_j = 1 - 2*bit_j(b)`, so bit 0 means `+1` and index 0 is the
//! all-ones point. Subsets `S` use the same packing, and the character is
//! `chi_S(x(b)) = (-1)^{popcount(S & b)}`.
//!
//! `analyze` carries the `2^-n` normalization, so `f_hat(S) = E[f chi_S]`;
//! `synthesize` is the plain character sum and the two are mutually inverse.

use crate::error::{Error, Result};
use crate::scalar::{s, Scalar};
use crate::seeds;
use rand::Rng;

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Argument("need at least one variable".into()));
    }
    let cap = crate::dense_cap();
    if n > cap {
        return Err(Error::Capacity { n, cap });
    }
    Ok(())
}

fn check_values<S: Scalar>(n: usize, values: &[S]) -> Result<()> {
    let expected = 1usize << n;
    if values.len() != expected {
        return Err(Error::Length {
            expected,
            actual: values.len(),
        });
    }
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    Ok(())
}

/// In-place unnormalized Walsh-Hadamard butterfly, `O(n 2^n)`.
fn wht_in_place<S: Scalar>(v: &mut [S]) {
    debug_assert!(v.len().is_power_of_two());
    let mut h = 1;
    while h < v.len() {
        let mut block = 0;
        while block < v.len() {
            for i in block..block + h {
                let a = v[i];
                let b = v[i + h];
                v[i] = a + b;
                v[i + h] = a - b;
            }
            block += h * 2;
        }
        h *= 2;
    }
}

/// Iterator over all `n`-bit masks of popcount `l`, ascending (Gosper).
pub fn weight_masks(n: usize, l: usize) -> impl Iterator<Item = u64> {
    let end = 1u64 << n;
    let mut next = if l > n { end } else { (1u64 << l) - 1 };
    std::iter::from_fn(move || {
        if next >= end {
            return None;
        }
        let cur = next;
        if cur == 0 {
            next = end; // only the empty set at l = 0
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            next = (((r ^ cur) >> 2) / c) | r;
        }
        Some(cur)
    })
}

/// Function given by its value on every point of the cube.
#[derive(Debug, Clone, PartialEq)]
pub struct PointTable<S> {
    n: usize,
    values: Vec<S>,
}

impl<S: Scalar> PointTable<S> {
    pub fn new(n: usize, values: Vec<S>) -> Result<Self> {
        check_n(n)?;
        check_values(n, &values)?;
        Ok(PointTable { n, values })
    }

    pub fn constant(n: usize, c: S) -> Result<Self> {
        check_n(n)?;
        if !c.is_finite() {
            return Err(Error::NonFinite { index: 0 });
        }
        Ok(PointTable {
            n,
            values: vec![c; 1 << n],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn value(&self, point: u64) -> S {
        self.values[point as usize]
    }

    /// Fourier coefficients `f_hat(S) = 2^-n sum_b f(b) (-1)^{|S & b|}`.
    pub fn analyze(&self) -> Spectrum<S> {
        let mut coeffs = self.values.clone();
        wht_in_place(&mut coeffs);
        let scale = s::<S>(1.0) / s::<S>((1u64 << self.n) as f64);
        for c in coeffs.iter_mut() {
            *c = *c * scale;
        }
        Spectrum {
            n: self.n,
            coeffs,
        }
    }

    pub fn sup_norm(&self) -> S {
        self.values
            .iter()
            .fold(S::zero(), |acc, v| acc.max(v.abs()))
    }

    /// Max absolute value together with the smallest attaining index.
    pub fn sup_norm_attained(&self) -> (S, u64) {
        let mut best = S::zero();
        let mut arg = 0u64;
        for (b, v) in self.values.iter().enumerate() {
            if v.abs() > best {
                best = v.abs();
                arg = b as u64;
            }
        }
        (best, arg)
    }

    /// `E[f^2]`, i.e. the squared L2 norm under the uniform measure.
    pub fn mean_square(&self) -> S {
        let sum = self
            .values
            .iter()
            .fold(S::zero(), |acc, v| acc + *v * *v);
        sum / s::<S>(self.values.len() as f64)
    }

    pub fn scale(&self, factor: S) -> PointTable<S> {
        PointTable {
            n: self.n,
            values: self.values.iter().map(|v| *v * factor).collect(),
        }
    }
}

/// Fourier expansion given by one coefficient per subset mask.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<S> {
    n: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> Spectrum<S> {
    pub fn new(n: usize, coeffs: Vec<S>) -> Result<Self> {
        check_n(n)?;
        check_values(n, &coeffs)?;
        Ok(Spectrum { n, coeffs })
    }

    pub fn zero(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Spectrum {
            n,
            coeffs: vec![S::zero(); 1 << n],
        })
    }

    pub fn from_sparse(n: usize, entries: &[(u64, S)]) -> Result<Self> {
        let mut out = Spectrum::zero(n)?;
        for &(mask, c) in entries {
            if mask >= (1u64 << n) {
                return Err(Error::Argument(format!(
                    "subset mask {mask:#x} does not fit {n} variables"
                )));
            }
            if !c.is_finite() {
                return Err(Error::NonFinite {
                    index: mask as usize,
                });
            }
            out.coeffs[mask as usize] = out.coeffs[mask as usize] + c;
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: u64) -> S {
        self.coeffs[mask as usize]
    }

    /// Plain character sum; inverse of [`PointTable::analyze`].
    pub fn synthesize(&self) -> PointTable<S> {
        let mut values = self.coeffs.clone();
        wht_in_place(&mut values);
        PointTable {
            n: self.n,
            values,
        }
    }

    /// Largest `|S|` carrying a (exactly) nonzero coefficient; 0 if none.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != S::zero())
            .map(|(mask, _)| mask.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Keeps exactly the coefficients with `|S| = l`.
    pub fn homogeneous_part(&self, l: usize) -> Result<Spectrum<S>> {
        if l > self.n {
            return Err(Error::Argument(format!(
                "level {l} exceeds variable count {}",
                self.n
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, c)| {
                if mask.count_ones() as usize == l {
                    *c
                } else {
                    S::zero()
                }
            })
            .collect();
        Ok(Spectrum {
            n: self.n,
            coeffs,
        })
    }

    /// Spectrum of the cube convolution: coefficients multiply pointwise.
    pub fn convolve(&self, other: &Spectrum<S>) -> Result<Spectrum<S>> {
        if self.n != other.n {
            return Err(Error::VariableMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| *a * *b)
            .collect();
        Ok(Spectrum {
            n: self.n,
            coeffs,
        })
    }

    /// `sum_{|S| = l} |f_hat(S)|`; zero when `l > n`.
    pub fn level_l1(&self, l: usize) -> S {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(mask, _)| mask.count_ones() as usize == l)
            .fold(S::zero(), |acc, (_, c)| acc + c.abs())
    }

    pub fn scale(&self, factor: S) -> Spectrum<S> {
        Spectrum {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| *c * factor).collect(),
        }
    }

    /// Restriction of the level-`l` part under an explicit realization:
    /// coordinates in `r_mask` are fixed to the signs in `z_mask` (bit set
    /// means `-1`), the rest stay live. Each surviving monomial keeps its
    /// coefficient times the sign its fixed coordinates contribute.
    pub fn restriction_with(
        &self,
        l: usize,
        r_mask: u64,
        z_mask: u64,
    ) -> Result<Spectrum<S>> {
        let f = self.homogeneous_part(l)?;
        let mut out = vec![S::zero(); self.coeffs.len()];
        for (mask, c) in f.coeffs.iter().enumerate() {
            if *c == S::zero() {
                continue;
            }
            let kept = mask as u64 & !r_mask;
            let fixed = mask as u64 & r_mask;
            let flip = (fixed & z_mask).count_ones() % 2 == 1;
            let signed = if flip { -*c } else { *c };
            out[kept as usize] = out[kept as usize] + signed;
        }
        Ok(Spectrum {
            n: self.n,
            coeffs: out,
        })
    }

    /// Seeded random restriction of the level-`l` part: each variable joins
    /// the fixed set independently with probability `1/l`, then the fixed
    /// coordinates get uniform signs. Draw order is documented: one uniform
    /// in `[0,1)` per variable for membership (bit set when `u < 1/l`), then
    /// one per variable for the sign (bit set, meaning `-1`, when `u < 1/2`),
    /// from `seeds::rng(seed)`.
    pub fn random_restriction(&self, l: usize, seed: u64) -> Result<Spectrum<S>> {
        if l < 2 {
            return Err(Error::Argument(
                "random restriction needs level at least 2".into(),
            ));
        }
        if l > self.n {
            return Err(Error::Argument(format!(
                "level {l} exceeds variable count {}",
                self.n
            )));
        }
        let mut rng = seeds::rng(seed);
        let p = 1.0 / l as f64;
        let mut r_mask = 0u64;
        for j in 0..self.n {
            if rng.gen::<f64>() < p {
                r_mask |= 1 << j;
            }
        }
        let mut z_mask = 0u64;
        for j in 0..self.n {
            if rng.gen::<f64>() < 0.5 {
                z_mask |= 1 << j;
            }
        }
        self.restriction_with(l, r_mask, z_mask)
    }
}

/// Vector-valued function: one `m`-dimensional row per cube point.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorPointTable<S> {
    n: usize,
    m: usize,
    values: Vec<S>, // row-major, 2^n rows of length m
}

impl<S: Scalar> VectorPointTable<S> {
    pub fn new(n: usize, m: usize, values: Vec<S>) -> Result<Self> {
        check_n(n)?;
        if m == 0 {
            return Err(Error::Argument("need at least one coordinate".into()));
        }
        let expected = (1usize << n) * m;
        if values.len() != expected {
            return Err(Error::Length {
                expected,
                actual: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(VectorPointTable { n, m, values })
    }

    pub fn from_coordinates(tables: &[PointTable<S>]) -> Result<Self> {
        let first = tables
            .first()
            .ok_or_else(|| Error::Argument("need at least one coordinate".into()))?;
        let n = first.n();
        let m = tables.len();
        let mut values = Vec::with_capacity((1usize << n) * m);
        for b in 0..1usize << n {
            for t in tables {
                if t.n() != n {
                    return Err(Error::VariableMismatch {
                        left: n,
                        right: t.n(),
                    });
                }
                values.push(t.values()[b]);
            }
        }
        VectorPointTable::new(n, m, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of points, 2^n.
    pub fn len(&self) -> usize {
        1usize << self.n
    }

    pub fn row(&self, point: u64) -> &[S] {
        let start = point as usize * self.m;
        &self.values[start..start + self.m]
    }

    /// Extracts coordinate `j` as a scalar table.
    pub fn coordinate(&self, j: usize) -> Result<PointTable<S>> {
        if j >= self.m {
            return Err(Error::Argument(format!(
                "coordinate {j} out of range for dimension {}",
                self.m
            )));
        }
        let values = (0..1usize << self.n)
            .map(|b| self.values[b * self.m + j])
            .collect();
        PointTable::new(self.n, values)
    }

    /// Convolves every coordinate with the same spectrum.
    pub fn convolve_with(&self, g: &Spectrum<S>) -> Result<VectorPointTable<S>> {
        if g.n() != self.n {
            return Err(Error::VariableMismatch {
                left: self.n,
                right: g.n(),
            });
        }
        let mut columns = Vec::with_capacity(self.m);
        for j in 0..self.m {
            let f = self.coordinate(j)?;
            let conv = f.analyze().convolve(g)?;
            columns.push(conv.synthesize());
        }
        VectorPointTable::from_coordinates(&columns)
    }
}
