//! Geronimus transformation of functional vectors: level construction,
//! regularity determinants, the bordered-determinant formula for the
//! transformed sequences, and forbidden masses.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::banded::DenseSection;
use crate::dops::{DOPSequence, SequenceSource};
use crate::error::{Error, Result};
use crate::functional::FunctionalVector;
use crate::linalg;
use crate::poly::Polynomial;
use crate::scalar::{self, Scalar};

/// Shift point and the d free Dirac masses M_1..M_d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeronimusConfig {
    pub a: Scalar,
    pub masses: Vec<Scalar>,
}

impl GeronimusConfig {
    pub fn new(a: Scalar, masses: Vec<Scalar>) -> Self {
        GeronimusConfig { a, masses }
    }

    pub fn check_mass_count(&self, d: usize) -> Result<()> {
        if self.masses.len() != d {
            return Err(Error::BadMassCount { expected: d, got: self.masses.len() });
        }
        Ok(())
    }
}

/// One Geronimus step: divides u_d by (x - a) with mass `m` into slot 1 and
/// shifts the remaining entries down by one.
pub fn transform_vector_step(
    v: &FunctionalVector,
    a: &Scalar,
    mass: &Scalar,
) -> Result<FunctionalVector> {
    let d = v.d();
    if v.horizon() < 1 {
        return Err(Error::HorizonExceeded { needed: 1, horizon: 0 });
    }
    let mut entries = Vec::with_capacity(d);
    entries.push(v.entry(d).geronimus_divide(a, mass));
    for i in 1..d {
        entries.push(v.entry(i).clone());
    }
    Ok(FunctionalVector::new(entries))
}

/// Level-m vector built directly from the level-0 vector:
/// entry j = u_{d-m+j} / (x - a) + M_{m-j+1} δ_a for j <= m, and the
/// unshifted u_{j-m} for j > m. Equals the m-fold step composition with
/// masses M_1..M_m whenever both are computed.
pub fn build_level(
    v0: &FunctionalVector,
    cfg: &GeronimusConfig,
    m: usize,
) -> Result<FunctionalVector> {
    let d = v0.d();
    assert!(m >= 1 && m <= d, "level must satisfy 1 <= m <= d");
    if cfg.masses.len() < m {
        return Err(Error::BadMassCount { expected: m, got: cfg.masses.len() });
    }
    let mut entries = Vec::with_capacity(d);
    for j in 1..=d {
        if j <= m {
            entries.push(v0.entry(d - m + j).geronimus_divide(&cfg.a, &cfg.masses[m - j]));
        } else {
            entries.push(v0.entry(j - m).clone());
        }
    }
    Ok(FunctionalVector::new(entries))
}

/// The bordered pairing block used by both the regularity determinants and
/// the determinant formula: pairings ⟨u^(m)_j, P_{row}⟩ with j = 1..cols.
fn pairing_block(
    vm: &FunctionalVector,
    s: &DOPSequence,
    first_row: usize,
    rows: usize,
    cols: usize,
) -> Result<DenseSection> {
    let mut out = DenseSection::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let val = vm.entry(j + 1).pair(s.poly(first_row + i))?;
            out.set(i, j, val);
        }
    }
    Ok(out)
}

/// Regularity determinants d^(m)_1..d^(m)_nmax: the m x m pairing
/// determinant (rows P_{n-m}..P_{n-1}) for m <= n, the n x n one (rows
/// P_0..P_{n-1}, columns u_1..u_n) for m > n. d^(m)_0 is the empty
/// determinant 1.
pub fn regularity_determinants(
    vm: &FunctionalVector,
    s: &DOPSequence,
    m: usize,
    nmax: usize,
) -> Result<Vec<Scalar>> {
    let mut out = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        let k = m.min(n);
        let block = pairing_block(vm, s, n - k, k, k)?;
        out.push(linalg::determinant(&block));
    }
    Ok(out)
}

/// Transformed sequence via the bordered-determinant formula. For n >= m
/// the (m+1) x (m+1) determinant bordered by P_{n-m}(x)..P_n(x) is expanded
/// along its last column and normalized by d^(m)_n; for n < m the analogous
/// construction with rows P_0..P_n and columns u_1..u_n is used.
pub fn transformed_sequence_determinant(
    vm: &FunctionalVector,
    s: &DOPSequence,
    m: usize,
    max_degree: usize,
) -> Result<DOPSequence> {
    let d = vm.d();
    let mut polys = Vec::with_capacity(max_degree + 1);
    polys.push(Polynomial::one());
    for n in 1..=max_degree {
        let k = m.min(n);
        // pairing block with rows P_{n-k}..P_n (k+1 rows, k columns)
        let block = pairing_block(vm, s, n - k, k + 1, k)?;
        let dn = {
            let top = DenseSection::from_fn(k, k, |i, j| block.get(i, j).clone());
            linalg::determinant(&top)
        };
        if dn.is_zero() {
            return Err(Error::RegularityFailure { degree: n });
        }
        // expand the bordered determinant along the last column: the
        // coefficient of P_{n-k+i} is (-1)^{i+k} times the minor with row i
        // removed.
        let mut acc = Polynomial::zero();
        for i in 0..=k {
            let minor = DenseSection::from_fn(k, k, |r, c| {
                block.get(if r < i { r } else { r + 1 }, c).clone()
            });
            let mut cof = linalg::determinant(&minor);
            if (i + k) % 2 == 1 {
                cof = -cof;
            }
            if !cof.is_zero() {
                acc = acc.add(&s.poly(n - k + i).scale(&cof));
            }
        }
        polys.push(acc.scale(&(scalar::one() / &dn)));
    }
    Ok(DOPSequence::new(d, polys, SequenceSource::FromDeterminantFormula))
}

/// Excluded values of M_1 over a degree range: those making
/// d^(1)_n = ⟨u_d/(x-a), P_{n-1}⟩ + M_1 P_{n-1}(a) vanish. Degrees with
/// P_{n-1}(a) = 0 impose no constraint on M_1 and are skipped.
pub fn forbidden_masses(
    v0: &FunctionalVector,
    s: &DOPSequence,
    a: &Scalar,
    n_range: impl IntoIterator<Item = usize>,
) -> Result<Vec<Scalar>> {
    let d = v0.d();
    let divided = v0.entry(d).geronimus_divide(a, &scalar::zero());
    let mut out: Vec<Scalar> = Vec::new();
    for n in n_range {
        assert!(n >= 1);
        let p = s.poly(n - 1);
        let pa = p.eval(a);
        if pa.is_zero() {
            continue;
        }
        let base = divided.pair(p)?;
        let excluded = -base / pa;
        if !out.contains(&excluded) {
            out.push(excluded);
        }
    }
    Ok(out)
}
