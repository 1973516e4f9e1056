//! Band-compressed finite sections of the recurrence and connection matrices.
//!
//! Each type stores only its bands; unit diagonals/superdiagonals are implicit
//! and never stored. A section with `rows` stored rows is treated as the
//! leading rows of an infinite matrix: every entry in those rows is known
//! exactly (entries outside the bands are structural zeros or implicit ones),
//! which is what makes truncated products exact on a safe window.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// A matrix whose leading `rows()` rows are known exactly, in every column.
pub trait BandMatrix {
    fn rows(&self) -> usize;
    /// Number of nonzero superdiagonals (0 or 1 for everything in this crate).
    fn super_reach(&self) -> usize;
    /// Entry (i, j); valid for i < rows(), any j.
    fn entry(&self, i: usize, j: usize) -> Scalar;
}

/// Dense rectangular block of exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseSection {
    nrows: usize,
    ncols: usize,
    data: Vec<Scalar>,
}

impl DenseSection {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        DenseSection { nrows, ncols, data: vec![scalar::zero(); nrows * ncols] }
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                data.push(f(i, j));
            }
        }
        DenseSection { nrows, ncols, data }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.ncols + j] = v;
    }
}

/// Exact `window x window` leading principal submatrix of the infinite
/// product `factors[0] * factors[1] * ... * factors[p-1]`.
///
/// Factor t must have at least `window + (superdiagonal reach of factors
/// 0..t)` stored rows; otherwise truncation would contaminate the result and
/// the call fails with `WindowTooLarge`.
pub fn product_section(factors: &[&dyn BandMatrix], window: usize) -> Result<DenseSection> {
    assert!(!factors.is_empty());
    let mut prefix = 0usize;
    let mut needs = Vec::with_capacity(factors.len());
    for f in factors {
        needs.push(window + prefix);
        prefix += f.super_reach();
    }
    for (f, &need) in factors.iter().zip(&needs) {
        if f.rows() < need {
            return Err(Error::WindowTooLarge { window, available: f.rows() });
        }
    }
    let last = factors.len() - 1;
    let mut acc =
        DenseSection::from_fn(needs[last], window, |i, j| factors[last].entry(i, j));
    for t in (0..last).rev() {
        let f = factors[t];
        let rows = needs[t];
        let mut next = DenseSection::zeros(rows, window);
        for i in 0..rows {
            for k in 0..acc.nrows {
                let a = f.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..window {
                    let v = next.get(i, j) + &a * acc.get(k, j);
                    next.set(i, j, v);
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Product of two banded sections on a window (see `product_section`).
pub fn banded_multiply(
    a: &dyn BandMatrix,
    b: &dyn BandMatrix,
    window: usize,
) -> Result<DenseSection> {
    product_section(&[a, b], window)
}

/// Finite section of the (d+2)-banded lower Hessenberg recurrence matrix J.
/// The superdiagonal is implicitly 1. Row n stores a_{n,n-k} for
/// k = 0..min(n,d), kept here in ascending column order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandedHessenberg {
    d: usize,
    bands: Vec<Vec<Scalar>>,
}

impl BandedHessenberg {
    /// `bands[n]` holds the entries of row n for columns
    /// max(0, n-d)..=n in ascending column order.
    ///
    /// Rejects rows of the wrong length and sections with a_{n,n-d} = 0.
    pub fn new(d: usize, bands: Vec<Vec<Scalar>>) -> Result<Self> {
        assert!(d >= 1);
        for (n, row) in bands.iter().enumerate() {
            let expect = n.min(d) + 1;
            if row.len() != expect {
                return Err(Error::BandViolation { row: n, col: row.len() });
            }
            if n >= d && row[0].is_zero() {
                return Err(Error::ZeroLowBand { row: n });
            }
        }
        Ok(BandedHessenberg { d, bands })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn band_rows(&self) -> &[Vec<Scalar>] {
        &self.bands
    }

    /// a_{n,n-k}; panics if out of the stored section.
    pub fn coeff(&self, n: usize, k: usize) -> &Scalar {
        let lo = n.saturating_sub(self.d);
        &self.bands[n][n - k - lo]
    }

    /// Leading principal section of J - aI as a dense block.
    pub fn shifted_section(&self, a: &Scalar, window: usize) -> Result<DenseSection> {
        if window > self.rows() {
            return Err(Error::WindowTooLarge { window, available: self.rows() });
        }
        Ok(DenseSection::from_fn(window, window, |i, j| {
            let mut v = self.entry(i, j);
            if i == j {
                v -= a;
            }
            v
        }))
    }
}

impl BandMatrix for BandedHessenberg {
    fn rows(&self) -> usize {
        self.bands.len()
    }

    fn super_reach(&self) -> usize {
        1
    }

    fn entry(&self, i: usize, j: usize) -> Scalar {
        if j == i + 1 {
            return scalar::one();
        }
        let lo = i.saturating_sub(self.d);
        if j >= lo && j <= i {
            self.bands[i][j - lo].clone()
        } else {
            scalar::zero()
        }
    }
}

/// Lower triangular connection matrix with implicit unit diagonal and at
/// most `q` stored subdiagonals (the L^(r,q) of the change of basis between
/// transformation levels).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandedLowerTriangular {
    q: usize,
    bands: Vec<Vec<Scalar>>,
}

impl BandedLowerTriangular {
    /// `bands[n]` holds γ_{n,s} for s = max(0, n-q)..n in ascending order
    /// (so row n stores min(n, q) entries).
    pub fn new(q: usize, bands: Vec<Vec<Scalar>>) -> Result<Self> {
        assert!(q >= 1);
        for (n, row) in bands.iter().enumerate() {
            if row.len() != n.min(q) {
                return Err(Error::BandViolation { row: n, col: row.len() });
            }
        }
        Ok(BandedLowerTriangular { q, bands })
    }

    pub fn identity(q: usize, size: usize) -> Self {
        let bands = (0..size).map(|n| vec![scalar::zero(); n.min(q)]).collect();
        BandedLowerTriangular { q, bands }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn band_rows(&self) -> &[Vec<Scalar>] {
        &self.bands
    }

    /// γ_{n,s}; panics outside the band.
    pub fn gamma(&self, n: usize, s: usize) -> &Scalar {
        let lo = n.saturating_sub(self.q);
        &self.bands[n][s - lo]
    }
}

impl BandMatrix for BandedLowerTriangular {
    fn rows(&self) -> usize {
        self.bands.len()
    }

    fn super_reach(&self) -> usize {
        0
    }

    fn entry(&self, i: usize, j: usize) -> Scalar {
        if i == j {
            return scalar::one();
        }
        let lo = i.saturating_sub(self.q);
        if j >= lo && j < i {
            self.bands[i][j - lo].clone()
        } else {
            scalar::zero()
        }
    }
}

/// The (d+2-q)-banded lower Hessenberg matrix N^(r,q): implicit unit
/// superdiagonal, diagonal plus d-q stored subdiagonals. The case q = d is
/// the upper bidiagonal U.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BandedN {
    d: usize,
    q: usize,
    bands: Vec<Vec<Scalar>>,
}

impl BandedN {
    /// `bands[n]` holds α_{n,s} for s = max(0, n-(d-q))..=n ascending.
    pub fn new(d: usize, q: usize, bands: Vec<Vec<Scalar>>) -> Result<Self> {
        assert!(q >= 1 && q <= d);
        let depth = d - q;
        for (n, row) in bands.iter().enumerate() {
            if row.len() != n.min(depth) + 1 {
                return Err(Error::BandViolation { row: n, col: row.len() });
            }
        }
        Ok(BandedN { d, q, bands })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn band_rows(&self) -> &[Vec<Scalar>] {
        &self.bands
    }

    /// α_{n,s}; panics outside the band.
    pub fn alpha(&self, n: usize, s: usize) -> &Scalar {
        let lo = n.saturating_sub(self.d - self.q);
        &self.bands[n][s - lo]
    }

    /// Diagonal entries α_{n,n}.
    pub fn diagonal(&self) -> Vec<Scalar> {
        self.bands.iter().map(|row| row.last().unwrap().clone()).collect()
    }
}

impl BandMatrix for BandedN {
    fn rows(&self) -> usize {
        self.bands.len()
    }

    fn super_reach(&self) -> usize {
        1
    }

    fn entry(&self, i: usize, j: usize) -> Scalar {
        if j == i + 1 {
            return scalar::one();
        }
        let lo = i.saturating_sub(self.d - self.q);
        if j >= lo && j <= i {
            self.bands[i][j - lo].clone()
        } else {
            scalar::zero()
        }
    }
}
