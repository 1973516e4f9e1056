//! Dense polynomials over exact rationals.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::scalar::{self, Scalar};

/// Dense polynomial, coefficient k = coefficient of x^k.
///
/// The zero polynomial stores no coefficients; otherwise the last stored
/// coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![scalar::one()] }
    }

    /// Builds from raw coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// Monomial x^k.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![scalar::zero(); k + 1];
        coeffs[k] = scalar::one();
        Polynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c == &scalar::one())
    }

    /// Horner evaluation at `a`.
    pub fn eval(&self, a: &Scalar) -> Scalar {
        let mut acc = scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * a + c;
        }
        acc
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Polynomial::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Polynomial::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// x * p.
    pub fn mul_x(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(scalar::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// (x - a) * p.
    pub fn mul_x_minus_a(&self, a: &Scalar) -> Polynomial {
        self.mul_x().sub(&self.scale(a))
    }
}
