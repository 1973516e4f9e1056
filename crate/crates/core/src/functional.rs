//! Moment-sequence representation of linear functionals on polynomials.
//!
//! A functional is identified with its moments ⟨u, x^k⟩ up to an explicit
//! horizon. Multiplication by (x - a) loses one moment, Geronimus division
//! gains one; operations fail loudly instead of truncating silently.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentFunctional {
    moments: Vec<Scalar>,
}

impl MomentFunctional {
    /// Builds from the moment list (entry k = ⟨u, x^k⟩). Must be nonempty.
    pub fn new(moments: Vec<Scalar>) -> Self {
        assert!(!moments.is_empty());
        MomentFunctional { moments }
    }

    /// Dirac delta at `a`: moments a^k.
    pub fn dirac(a: &Scalar, horizon: usize) -> Self {
        MomentFunctional { moments: scalar::dirac_moments(a, horizon) }
    }

    pub fn horizon(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn moments(&self) -> &[Scalar] {
        &self.moments
    }

    pub fn moment(&self, k: usize) -> Result<&Scalar> {
        self.moments
            .get(k)
            .ok_or(Error::HorizonExceeded { needed: k, horizon: self.horizon() })
    }

    /// ⟨u, p⟩ = Σ c_k μ_k.
    pub fn pair(&self, p: &Polynomial) -> Result<Scalar> {
        match p.degree() {
            None => Ok(scalar::zero()),
            Some(deg) => {
                if deg > self.horizon() {
                    return Err(Error::HorizonExceeded { needed: deg, horizon: self.horizon() });
                }
                let mut acc = scalar::zero();
                for (k, c) in p.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        acc += c * &self.moments[k];
                    }
                }
                Ok(acc)
            }
        }
    }

    /// ⟨u, x^m p⟩, without materializing x^m p.
    pub fn pair_shifted(&self, m: usize, p: &Polynomial) -> Result<Scalar> {
        match p.degree() {
            None => Ok(scalar::zero()),
            Some(deg) => {
                if deg + m > self.horizon() {
                    return Err(Error::HorizonExceeded {
                        needed: deg + m,
                        horizon: self.horizon(),
                    });
                }
                let mut acc = scalar::zero();
                for (k, c) in p.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        acc += c * &self.moments[k + m];
                    }
                }
                Ok(acc)
            }
        }
    }

    /// (x - a) u: moments μ'_k = μ_{k+1} - a μ_k. Horizon drops by one.
    pub fn multiply_by_x_minus_a(&self, a: &Scalar) -> Result<MomentFunctional> {
        if self.horizon() == 0 {
            return Err(Error::HorizonExceeded { needed: 1, horizon: 0 });
        }
        let moments = (0..self.horizon())
            .map(|k| &self.moments[k + 1] - a * &self.moments[k])
            .collect();
        Ok(MomentFunctional { moments })
    }

    /// u/(x - a) + M δ_a, pinned by ⟨u/(x-a), p⟩ = ⟨u, (p(x)-p(a))/(x-a)⟩.
    /// Moments satisfy ν_0 = M, ν_k = a ν_{k-1} + μ_{k-1}; horizon grows by
    /// one; multiplying back by (x - a) recovers u exactly.
    pub fn geronimus_divide(&self, a: &Scalar, mass: &Scalar) -> MomentFunctional {
        let mut moments = Vec::with_capacity(self.moments.len() + 1);
        moments.push(mass.clone());
        for k in 0..self.moments.len() {
            let v = a * &moments[k] + &self.moments[k];
            moments.push(v);
        }
        MomentFunctional { moments }
    }

    /// Drops moments beyond `horizon`.
    pub fn truncated(&self, horizon: usize) -> Result<MomentFunctional> {
        if horizon > self.horizon() {
            return Err(Error::HorizonExceeded { needed: horizon, horizon: self.horizon() });
        }
        Ok(MomentFunctional { moments: self.moments[..=horizon].to_vec() })
    }

    pub fn add_scaled(&self, other: &MomentFunctional, c: &Scalar) -> MomentFunctional {
        let h = self.horizon().min(other.horizon());
        let moments =
            (0..=h).map(|k| &self.moments[k] + c * &other.moments[k]).collect();
        MomentFunctional { moments }
    }
}

/// Ordered d-tuple (u_1, ..., u_d) with a shared horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalVector {
    entries: Vec<MomentFunctional>,
    horizon: usize,
}

impl FunctionalVector {
    pub fn new(entries: Vec<MomentFunctional>) -> Self {
        assert!(!entries.is_empty());
        let horizon = entries.iter().map(|u| u.horizon()).min().unwrap();
        let entries = entries.iter().map(|u| u.truncated(horizon).unwrap()).collect();
        FunctionalVector { entries, horizon }
    }

    pub fn d(&self) -> usize {
        self.entries.len()
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn entries(&self) -> &[MomentFunctional] {
        &self.entries
    }

    /// u_j with 1-based j, matching the functional-vector indexing.
    pub fn entry(&self, j: usize) -> &MomentFunctional {
        &self.entries[j - 1]
    }

    /// Unitriangular recombination v_j = u_j + Σ_{i<j} λ[j][i] u_i.
    ///
    /// `lambda` must be d x d with unit diagonal and zeros above it.
    pub fn recombine(&self, lambda: &[Vec<Scalar>]) -> Result<FunctionalVector> {
        let d = self.d();
        if lambda.len() != d {
            return Err(Error::BadShape);
        }
        for (j, row) in lambda.iter().enumerate() {
            if row.len() != d {
                return Err(Error::BadShape);
            }
            if row[j] != scalar::one() {
                return Err(Error::BadShape);
            }
            if row[j + 1..].iter().any(|c| !c.is_zero()) {
                return Err(Error::BadShape);
            }
        }
        let entries = (0..d)
            .map(|j| {
                let mut v = self.entries[j].clone();
                for i in 0..j {
                    if !lambda[j][i].is_zero() {
                        v = v.add_scaled(&self.entries[i], &lambda[j][i]);
                    }
                }
                v
            })
            .collect();
        Ok(FunctionalVector { entries, horizon: self.horizon })
    }
}
