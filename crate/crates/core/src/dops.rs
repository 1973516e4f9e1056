//! Monic d-orthogonal polynomial sequences: generation from the banded
//! recurrence, recovery of the recurrence, the canonical dual vector of
//! orthogonality, and the direct moment-solve construction used as the
//! independent oracle.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::banded::{BandMatrix, BandedHessenberg, DenseSection};
use crate::error::{Error, Result};
use crate::functional::{FunctionalVector, MomentFunctional};
use crate::linalg;
use crate::poly::Polynomial;
use crate::scalar::{self, Scalar};

/// How a sequence was produced; carried along for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceSource {
    FromMatrix,
    FromMoments,
    FromDeterminantFormula,
}

impl SequenceSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            SequenceSource::FromMatrix => "from-matrix",
            SequenceSource::FromMoments => "from-moments",
            SequenceSource::FromDeterminantFormula => "from-determinant-formula",
        }
    }
}

/// Monic sequence P_0..P_N with deg P_n = n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DOPSequence {
    d: usize,
    polys: Vec<Polynomial>,
    source: SequenceSource,
}

impl DOPSequence {
    pub fn new(d: usize, polys: Vec<Polynomial>, source: SequenceSource) -> Self {
        for (n, p) in polys.iter().enumerate() {
            assert_eq!(p.degree(), Some(n), "P_{n} must have degree {n}");
            assert!(p.is_monic(), "P_{n} must be monic");
        }
        DOPSequence { d, polys, source }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Highest degree N.
    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn poly(&self, n: usize) -> &Polynomial {
        &self.polys[n]
    }

    pub fn source(&self) -> SequenceSource {
        self.source
    }

    pub fn truncated(&self, max_degree: usize) -> DOPSequence {
        DOPSequence {
            d: self.d,
            polys: self.polys[..=max_degree].to_vec(),
            source: self.source,
        }
    }
}

/// Moment horizon required to build/check a d-OPS up to degree `n`:
/// the deepest pairing is ⟨u_j, x^m P_n⟩ with m ≤ (n-1)/d.
pub fn required_horizon(d: usize, n: usize) -> usize {
    if n == 0 {
        0
    } else {
        n + (n - 1) / d
    }
}

/// Runs the (d+2)-term recurrence x P_n = P_{n+1} + Σ_k a_{n,n-k} P_{n-k}
/// forward from P_0 = 1, producing P_0..P_N.
pub fn generate_sequence(j: &BandedHessenberg, max_degree: usize) -> DOPSequence {
    let d = j.d();
    assert!(j.rows() >= max_degree, "section too short: {} rows for degree {}", j.rows(), max_degree);
    let mut polys: Vec<Polynomial> = Vec::with_capacity(max_degree + 1);
    polys.push(Polynomial::one());
    for n in 0..max_degree {
        let mut next = polys[n].mul_x();
        for k in 0..=n.min(d) {
            let c = j.coeff(n, k);
            if !c.is_zero() {
                next = next.sub(&polys[n - k].scale(c));
            }
        }
        polys.push(next);
    }
    DOPSequence::new(d, polys, SequenceSource::FromMatrix)
}

/// Expands `p` in the monic graded basis `basis` (basis[k] has degree k) by
/// leading-coefficient elimination. Returns the coefficient list c_0..c_deg.
pub fn expand_in_basis(p: &Polynomial, basis: &[Polynomial]) -> Vec<Scalar> {
    let deg = match p.degree() {
        None => return Vec::new(),
        Some(deg) => deg,
    };
    assert!(basis.len() > deg);
    let mut rem = p.clone();
    let mut coeffs = vec![scalar::zero(); deg + 1];
    for k in (0..=deg).rev() {
        let c = rem.coeff(k);
        if !c.is_zero() {
            rem = rem.sub(&basis[k].scale(&c));
            coeffs[k] = c;
        }
    }
    debug_assert!(rem.is_zero());
    coeffs
}

/// Recovers the recurrence matrix from a monic sequence by expanding each
/// x P_n in the sequence basis. Fails with `BandViolation` if any expansion
/// coefficient below the d-band is nonzero, or `ZeroLowBand` if a_{n,n-d}
/// vanishes.
pub fn recurrence_from_sequence(s: &DOPSequence) -> Result<BandedHessenberg> {
    let d = s.d();
    let n_rows = s.max_degree(); // rows 0..N-1: x P_n needs P_{n+1}
    let mut bands: Vec<Vec<Scalar>> = Vec::with_capacity(n_rows);
    for n in 0..n_rows {
        let xp = s.poly(n).mul_x();
        let coeffs = expand_in_basis(&xp, s.polys());
        debug_assert_eq!(coeffs[n + 1], scalar::one());
        let lo = n.saturating_sub(d);
        for (k, c) in coeffs.iter().enumerate().take(lo) {
            if !c.is_zero() {
                return Err(Error::BandViolation { row: n, col: k });
            }
        }
        if n >= d && coeffs[lo].is_zero() {
            return Err(Error::ZeroLowBand { row: n });
        }
        bands.push(coeffs[lo..=n].to_vec());
    }
    BandedHessenberg::new(d, bands)
}

/// Canonical dual vector of orthogonality: the unique moments with
/// ⟨u_j, P_n⟩ = δ_{n,j-1} for n = 0..horizon. The system is unit lower
/// triangular in the moments because each P_n is monic of degree n.
pub fn dual_functional_vector(s: &DOPSequence, horizon: usize) -> FunctionalVector {
    assert!(horizon <= s.max_degree(), "horizon {} beyond sequence degree {}", horizon, s.max_degree());
    let d = s.d();
    let mut entries = Vec::with_capacity(d);
    for j in 1..=d {
        let mut moments: Vec<Scalar> = Vec::with_capacity(horizon + 1);
        for n in 0..=horizon {
            let target = if n + 1 == j { scalar::one() } else { scalar::zero() };
            let p = s.poly(n);
            let mut acc = target;
            for (k, c) in p.coeffs().iter().enumerate().take(n) {
                if !c.is_zero() {
                    acc -= c * &moments[k];
                }
            }
            // leading coefficient is 1
            moments.push(acc);
        }
        entries.push(MomentFunctional::new(moments));
    }
    FunctionalVector::new(entries)
}

/// Orthogonality conditions {(m, j) : m d + j <= n}, enumerated by
/// increasing m d + j. There are exactly n of them.
fn conditions(d: usize, n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).map(move |v| ((v - 1) / d, (v - 1) % d + 1))
}

/// Builds the monic d-OPS directly from the moments of `v` — the
/// independent oracle. For each degree n it solves the n x n system given
/// by the orthogonality conditions, then asserts the reachable
/// non-degeneracy pairings ⟨u_j, x^m P_{md+j-1}⟩ ≠ 0.
pub fn sequence_from_functionals(v: &FunctionalVector, max_degree: usize) -> Result<DOPSequence> {
    let d = v.d();
    let need = required_horizon(d, max_degree);
    if v.horizon() < need {
        return Err(Error::HorizonExceeded { needed: need, horizon: v.horizon() });
    }
    let mut polys: Vec<Polynomial> = Vec::with_capacity(max_degree + 1);
    polys.push(Polynomial::one());
    for n in 1..=max_degree {
        // unknowns: c_0..c_{n-1} of monic P_n; rows: (m, j) with md+j <= n
        let conds: Vec<(usize, usize)> = conditions(d, n).collect();
        let a = DenseSection::from_fn(n, n, |row, k| {
            let (m, j) = conds[row];
            v.entry(j).moments()[m + k].clone()
        });
        let b: Vec<Scalar> = conds
            .iter()
            .map(|&(m, j)| -v.entry(j).moments()[m + n].clone())
            .collect();
        let coeffs = linalg::solve(&a, &b).ok_or(Error::RegularityFailure { degree: n })?;
        let mut full = coeffs;
        full.push(scalar::one());
        polys.push(Polynomial::from_coeffs(full));
        // non-degeneracy: ⟨u_j, x^m P_{md+j-1}⟩ ≠ 0 at the just-closed index
        let (m, j) = ((n - 1) / d, (n - 1) % d + 1);
        if m + n - 1 <= v.horizon() {
            let val = v.entry(j).pair_shifted(m, &polys[n - 1]).unwrap();
            if val.is_zero() {
                return Err(Error::DegeneracyFailure { degree: n - 1, j, m });
            }
        }
    }
    Ok(DOPSequence::new(d, polys, SequenceSource::FromMoments))
}

/// One checked orthogonality condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityCheck {
    pub j: usize,
    pub m: usize,
    pub n: usize,
    /// "zero" conditions require the pairing to vanish, "nonzero" the opposite.
    pub kind: CheckKind,
    pub pass: bool,
    pub value: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Zero,
    NonZero,
}

impl CheckKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckKind::Zero => "zero",
            CheckKind::NonZero => "nonzero",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityReport {
    pub checks: Vec<OrthogonalityCheck>,
}

impl OrthogonalityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &OrthogonalityCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn summary(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        let total = self.checks.len();
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        let _ = write!(s, "{}/{} orthogonality conditions hold", total - failed, total);
        s
    }
}

/// Checks every defining d-orthogonality condition that fits within the
/// horizons: ⟨u_j, x^m P_n⟩ = 0 for n ≥ md+j and
/// ⟨u_j, x^m P_{md+j-1}⟩ ≠ 0.
pub fn verify_orthogonality(v: &FunctionalVector, s: &DOPSequence) -> OrthogonalityReport {
    let d = v.d();
    let mut checks = Vec::new();
    for j in 1..=d {
        let u = v.entry(j);
        for m in 0.. {
            // cheapest reachable pairing at this m has degree md+j-1
            if m * d + j - 1 > s.max_degree() || m + m * d + j - 1 > u.horizon() {
                break;
            }
            for n in 0..=s.max_degree() {
                if m + n > u.horizon() {
                    break;
                }
                let value = u.pair_shifted(m, s.poly(n)).unwrap();
                if n >= m * d + j {
                    checks.push(OrthogonalityCheck {
                        j,
                        m,
                        n,
                        kind: CheckKind::Zero,
                        pass: value.is_zero(),
                        value,
                    });
                } else if n + 1 == m * d + j {
                    checks.push(OrthogonalityCheck {
                        j,
                        m,
                        n,
                        kind: CheckKind::NonZero,
                        pass: !value.is_zero(),
                        value,
                    });
                }
            }
        }
    }
    OrthogonalityReport { checks }
}
