//! Exact dense linear algebra: Gaussian elimination solves and
//! fraction-free (Bareiss) determinants.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::banded::DenseSection;
use crate::scalar::{self, Scalar};

/// Solves A x = b exactly. Returns None when A is singular.
pub fn solve(a: &DenseSection, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = a.nrows();
    assert_eq!(a.ncols(), n);
    assert_eq!(b.len(), n);
    // augmented working copy
    let mut m: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut row: Vec<Scalar> = (0..n).map(|j| a.get(i, j).clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &inv;
            for c in col..=n {
                let v = &m[r][c] - &factor * &m[col][c];
                m[r][c] = v;
            }
        }
    }
    let mut x = vec![scalar::zero(); n];
    for row in (0..n).rev() {
        let mut acc = m[row][n].clone();
        for c in row + 1..n {
            acc -= &m[row][c] * &x[c];
        }
        x[row] = acc / &m[row][row];
    }
    Some(x)
}

/// Determinant by clearing denominators row by row, then Bareiss
/// fraction-free elimination over the integers.
pub fn determinant(a: &DenseSection) -> Scalar {
    let n = a.nrows();
    assert_eq!(a.ncols(), n);
    if n == 0 {
        return scalar::one();
    }
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut lcm = BigInt::one();
        for j in 0..n {
            lcm = lcm.lcm(a.get(i, j).denom());
        }
        let row = (0..n)
            .map(|j| {
                let e = a.get(i, j);
                e.numer() * (&lcm / e.denom())
            })
            .collect();
        scale *= &lcm;
        m.push(row);
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for col in 0..n - 1 {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return scalar::zero(),
        };
        if pivot != col {
            m.swap(col, pivot);
            sign = -sign;
        }
        for r in col + 1..n {
            for c in col + 1..n {
                let v = (&m[col][col] * &m[r][c] - &m[r][col] * &m[col][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[col][col].clone();
    }
    let mut det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det = -det;
    }
    BigRational::new(det, scale)
}

/// Determinant by cofactor expansion along the first row. Exponential cost;
/// test oracle only.
pub fn determinant_cofactor(a: &DenseSection) -> Scalar {
    let n = a.nrows();
    assert_eq!(a.ncols(), n);
    if n == 0 {
        return scalar::one();
    }
    if n == 1 {
        return a.get(0, 0).clone();
    }
    let mut acc = scalar::zero();
    for j in 0..n {
        let c = a.get(0, j);
        if c.is_zero() {
            continue;
        }
        let minor = DenseSection::from_fn(n - 1, n - 1, |r, s| {
            a.get(r + 1, if s < j { s } else { s + 1 }).clone()
        });
        let term = c * determinant_cofactor(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// |det| sanity helper for tests.
pub fn is_singular(a: &DenseSection) -> bool {
    determinant(a).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn solve_2x2() {
        let a = DenseSection::from_fn(2, 2, |i, j| rat((i + j + 1) as i64, 2));
        // [[1/2, 1], [1, 3/2]] x = [1, 2]
        let x = solve(&a, &[int(1), int(2)]).unwrap();
        assert_eq!(a.get(0, 0) * &x[0] + a.get(0, 1) * &x[1], int(1));
        assert_eq!(a.get(1, 0) * &x[0] + a.get(1, 1) * &x[1], int(2));
    }

    #[test]
    fn singular_detected() {
        let a = DenseSection::from_fn(2, 2, |_, j| int(j as i64 + 1));
        assert!(solve(&a, &[int(0), int(1)]).is_none());
        assert!(is_singular(&a));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let a = DenseSection::from_fn(4, 4, |i, j| {
            rat((3 * i + 5 * j + 1) as i64, (i + j + 1) as i64)
        });
        assert_eq!(determinant(&a), determinant_cofactor(&a));
    }

    #[test]
    fn empty_determinant_is_one() {
        let a = DenseSection::zeros(0, 0);
        assert_eq!(determinant(&a), int(1));
    }
}
