//! Dense univariate polynomials with compensated Horner evaluation.

use crate::scalar::Scalar;

/// Polynomial stored as `coeffs[j]` = coefficient of `z^j`. The leading
/// stored coefficient is nonzero except for the zero polynomial, which is
/// stored as the single coefficient `0` and has degree 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> RealPolynomial<S> {
    /// Builds from low-to-high coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&S::zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(S::zero());
        }
        RealPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RealPolynomial {
            coeffs: vec![S::zero()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [S::zero()]
    }

    /// Index of the last stored coefficient; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `z^j`, zero beyond the stored degree.
    pub fn coeff(&self, j: usize) -> S {
        self.coeffs.get(j).copied().unwrap_or_else(S::zero)
    }

    /// Multiplies by the linear factor `(z - root)`.
    pub fn mul_linear(&self, root: S) -> Self {
        let mut out = vec![S::zero(); self.coeffs.len() + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[j + 1] = out[j + 1] + c;
            out[j] = out[j] - root * c;
        }
        RealPolynomial::new(out)
    }

    /// Horner evaluation with error-free transformations: the running
    /// rounding error is accumulated alongside the value and added back at
    /// the end, so results behave as if computed in doubled precision.
    /// Chebyshev expansions near the ends of `[-1, 1]` cancel heavily, and
    /// plain Horner loses too much there.
    pub fn eval(&self, z: S) -> S {
        let mut acc = *self.coeffs.last().expect("nonempty");
        let mut err = S::zero();
        for &c in self.coeffs.iter().rev().skip(1) {
            let (p, dp) = two_prod(acc, z);
            let (sum, ds) = two_sum(p, c);
            acc = sum;
            err = err * z + (dp + ds);
        }
        acc + err
    }
}

#[inline]
fn two_sum<S: Scalar>(a: S, b: S) -> (S, S) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod<S: Scalar>(a: S, b: S) -> (S, S) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_trailing_zeros() {
        let p = RealPolynomial::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert_eq!(p.coeffs(), &[1.0, 2.0]);
        assert_eq!(p.coeff(5), 0.0);
    }

    #[test]
    fn zero_polynomial_has_degree_zero() {
        assert_eq!(RealPolynomial::<f64>::new(vec![]).degree(), 0);
        assert!(RealPolynomial::<f64>::new(vec![0.0, 0.0]).is_zero());
    }

    #[test]
    fn evaluates_by_horner() {
        // 1 - 3z + 2z^3 at z = 2: 1 - 6 + 16 = 11.
        let p = RealPolynomial::new(vec![1.0, -3.0, 0.0, 2.0]);
        assert_eq!(p.eval(2.0), 11.0);
        assert_eq!(p.eval(0.0), 1.0);
    }

    #[test]
    fn root_products_expand() {
        // (z - 1)(z + 2) = z^2 + z - 2
        let p = RealPolynomial::new(vec![1.0]).mul_linear(1.0).mul_linear(-2.0);
        assert_eq!(p.coeffs(), &[-2.0, 1.0, 1.0]);
    }
}
