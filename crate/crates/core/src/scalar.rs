//! Exact rational scalar type.
//!
//! `Scalar` is an arbitrary-precision rational kept in canonical form
//! (positive denominator, reduced fraction) by `num-rational`. Every
//! coefficient, moment, mass and matrix entry in the crate is one of these.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Scalar = BigRational;

/// Integer-valued scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// The rational p/q. Panics on q = 0.
pub fn rat(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    int(0)
}

pub fn one() -> Scalar {
    int(1)
}

/// a^k for k >= 0 by repeated multiplication.
pub fn pow(a: &Scalar, k: usize) -> Scalar {
    let mut acc = one();
    for _ in 0..k {
        acc *= a;
    }
    acc
}

/// Moment sequence of the Dirac delta at `a`: (1, a, a^2, ..., a^horizon).
pub fn dirac_moments(a: &Scalar, horizon: usize) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(horizon + 1);
    let mut acc = one();
    for _ in 0..=horizon {
        out.push(acc.clone());
        acc *= a;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let x = rat(2, -4);
        assert_eq!(x, rat(-1, 2));
        assert!(x.denom() > &BigInt::from(0));
    }

    #[test]
    fn dirac_powers() {
        let m = dirac_moments(&rat(1, 2), 3);
        assert_eq!(m, alloc::vec![int(1), rat(1, 2), rat(1, 4), rat(1, 8)]);
    }
}
