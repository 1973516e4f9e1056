//! Connection matrices between transformation levels and the LU-type
//! factorization identities they induce on the banded recurrence matrices.
//!
//! Connection coefficients are computed by exact change of basis, not by
//! pairing ratios, so the band-structure statements become falsifiable
//! assertions: a nonzero coefficient outside the guaranteed band surfaces
//! as `BandViolation` instead of being dropped.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::banded::{
    product_section, BandMatrix, BandedHessenberg, BandedLowerTriangular, BandedN, DenseSection,
};
use crate::dops::{expand_in_basis, DOPSequence};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The L^(r,q), N^(r,q) pair connecting levels r and r+q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionPair {
    pub r: usize,
    pub q: usize,
    pub lower: BandedLowerTriangular,
    pub n_matrix: BandedN,
}

/// The full bidiagonal chain: J^(m) - aI = L^(m)..L^(1) U L^(d)..L^(m+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidiagonalChain {
    pub a: Scalar,
    /// l_factors[m] is L^(m+1), each lower unit bidiagonal.
    pub l_factors: Vec<BandedLowerTriangular>,
    /// U = N^(0,d), upper bidiagonal with nonzero diagonal.
    pub u: BandedN,
}

/// Expands each target polynomial in the source basis:
/// P^(r+q)_n = P^(r)_n + Σ_{s=n-q}^{n-1} γ_{n,s} P^(r)_s.
///
/// Coefficients below the q-band must vanish exactly and the edge γ_{n,n-q}
/// must be nonzero; violations mean the sequences are not a genuine
/// (r, r+q) pair.
pub fn connection_lower(
    target: &DOPSequence,
    source: &DOPSequence,
    q: usize,
) -> Result<BandedLowerTriangular> {
    assert_eq!(target.d(), source.d());
    assert_eq!(target.max_degree(), source.max_degree());
    let size = target.max_degree() + 1;
    let mut bands = Vec::with_capacity(size);
    for n in 0..size {
        let coeffs = expand_in_basis(target.poly(n), source.polys());
        debug_assert_eq!(coeffs[n], crate::scalar::one());
        let lo = n.saturating_sub(q);
        for (s, c) in coeffs.iter().enumerate().take(lo) {
            if !c.is_zero() {
                return Err(Error::BandViolation { row: n, col: s });
            }
        }
        bands.push(coeffs[lo..n].to_vec());
    }
    // the edge γ_{n,n-q} is nonzero for every genuine (r, r+q) pair; the
    // trivial connection (target = source, identity matrix) is exempt
    let trivial = bands.iter().all(|row| row.iter().all(|c| c.is_zero()));
    if !trivial {
        for (n, row) in bands.iter().enumerate() {
            if n >= q && row[0].is_zero() {
                return Err(Error::ZeroEdgeBand { row: n });
            }
        }
    }
    BandedLowerTriangular::new(q, bands)
}

/// Expands (x - a) P^(r)_n in the level-(r+q) basis:
/// (x - a) P^(r)_n = P^(r+q)_{n+1} + Σ_{s=n-d+q}^{n} α_{n,s} P^(r+q)_s,
/// with α_{n,n-d+q} ≠ 0.
pub fn connection_n_matrix(
    source: &DOPSequence,
    target: &DOPSequence,
    a: &Scalar,
    q: usize,
) -> Result<BandedN> {
    assert_eq!(target.d(), source.d());
    assert_eq!(target.max_degree(), source.max_degree());
    let d = source.d();
    let rows = source.max_degree(); // row n needs P^(r+q)_{n+1}
    let depth = d - q;
    let mut bands = Vec::with_capacity(rows);
    for n in 0..rows {
        let shifted = source.poly(n).mul_x_minus_a(a);
        let coeffs = expand_in_basis(&shifted, target.polys());
        debug_assert_eq!(coeffs[n + 1], crate::scalar::one());
        let lo = n.saturating_sub(depth);
        for (s, c) in coeffs.iter().enumerate().take(lo) {
            if !c.is_zero() {
                return Err(Error::BandViolation { row: n, col: s });
            }
        }
        if n >= depth && coeffs[lo].is_zero() {
            return Err(Error::ZeroEdgeBand { row: n });
        }
        bands.push(coeffs[lo..=n].to_vec());
    }
    BandedN::new(d, q, bands)
}

/// A single entry mismatch in a finite-section identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub i: usize,
    pub j: usize,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

/// Result of one matrix-identity check on a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: String,
    pub window: usize,
    pub mismatches: Vec<Mismatch>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn compare_sections(
    identity: String,
    lhs: &DenseSection,
    rhs: &DenseSection,
    window: usize,
) -> IdentityReport {
    let mut mismatches = Vec::new();
    for i in 0..window {
        for j in 0..window {
            if lhs.get(i, j) != rhs.get(i, j) {
                mismatches.push(Mismatch {
                    i,
                    j,
                    lhs: lhs.get(i, j).clone(),
                    rhs: rhs.get(i, j).clone(),
                });
            }
        }
    }
    IdentityReport { identity, window, mismatches }
}

/// Checks J^(r) - aI = N L and J^(r+q) - aI = L N entrywise on the window.
pub fn verify_pair_factorization(
    j_r: &BandedHessenberg,
    j_rq: &BandedHessenberg,
    pair: &ConnectionPair,
    a: &Scalar,
    window: usize,
) -> Result<Vec<IdentityReport>> {
    let nl = product_section(&[&pair.n_matrix, &pair.lower], window)?;
    let ln = product_section(&[&pair.lower, &pair.n_matrix], window)?;
    let lhs_r = j_r.shifted_section(a, window)?;
    let lhs_rq = j_rq.shifted_section(a, window)?;
    Ok(alloc::vec![
        compare_sections(
            format!("J^({}) - aI = N^({},{}) L^({},{})", pair.r, pair.r, pair.q, pair.r, pair.q),
            &lhs_r,
            &nl,
            window,
        ),
        compare_sections(
            format!(
                "J^({}) - aI = L^({},{}) N^({},{})",
                pair.r + pair.q,
                pair.r,
                pair.q,
                pair.r,
                pair.q
            ),
            &lhs_rq,
            &ln,
            window,
        ),
    ])
}

/// Builds the L^(1)..L^(d) bidiagonal factors and U = N^(0,d) from all d+1
/// levels, and asserts the product factorization
/// L^(r,q) = L^(r+q) ... L^(r+1) on the safe window for every admissible
/// (r, q) with q >= 2.
pub fn build_chain(levels: &[DOPSequence], a: &Scalar) -> Result<BidiagonalChain> {
    let d = levels[0].d();
    assert_eq!(levels.len(), d + 1, "need levels 0..=d");
    let mut l_factors = Vec::with_capacity(d);
    for m in 0..d {
        let l = connection_lower(&levels[m + 1], &levels[m], 1)
            .map_err(|_| Error::ChainBroken { level: m + 1 })?;
        l_factors.push(l);
    }
    let u = connection_n_matrix(&levels[0], &levels[d], a, d)?;
    // the multi-step connection must equal the product of its single-step factors
    let n_max = levels[0].max_degree();
    let window = n_max + 1 - d;
    for r in 0..d {
        for q in 2..=(d - r) {
            let direct = connection_lower(&levels[r + q], &levels[r], q)?;
            let factors: Vec<&dyn BandMatrix> = (r..r + q)
                .rev()
                .map(|s| &l_factors[s] as &dyn BandMatrix)
                .collect();
            let product = product_section(&factors, window)?;
            for i in 0..window {
                for j in 0..window {
                    if product.get(i, j) != &direct.entry(i, j) {
                        return Err(Error::BandViolation { row: i, col: j });
                    }
                }
            }
        }
    }
    Ok(BidiagonalChain { a: a.clone(), l_factors, u })
}

/// U diagonal from the level-d sequence: s_n = -P^(d)_{n+1}(a) / P^(d)_n(a).
/// Fails with `ZeroAtShift` if some P^(d)_n(a) = 0, which the recurrence
/// relation rules out for genuine transformed sequences.
pub fn u_diagonal_from_pd(s_d: &DOPSequence, a: &Scalar, count: usize) -> Result<Vec<Scalar>> {
    assert!(count <= s_d.max_degree());
    let mut out = Vec::with_capacity(count);
    let mut prev = s_d.poly(0).eval(a);
    for n in 0..count {
        if prev.is_zero() {
            return Err(Error::ZeroAtShift { degree: n });
        }
        let next = s_d.poly(n + 1).eval(a);
        out.push(-&next / &prev);
        prev = next;
    }
    Ok(out)
}

/// Checks J^(m) - aI = L^(m)..L^(1) U L^(d)..L^(m+1) for m = 1..d on the
/// window. `j_levels[m]` is the recurrence matrix of level m (index 0 is
/// the untransformed J, unused by the identities but kept for symmetry).
pub fn verify_chain_factorization(
    j_levels: &[BandedHessenberg],
    chain: &BidiagonalChain,
    window: usize,
) -> Result<Vec<IdentityReport>> {
    let d = chain.l_factors.len();
    assert_eq!(j_levels.len(), d + 1);
    let mut reports = Vec::with_capacity(d);
    for m in 1..=d {
        // factor order: L^(m), ..., L^(1), U, L^(d), ..., L^(m+1)
        let mut factors: Vec<&dyn BandMatrix> = Vec::with_capacity(d + 1);
        for idx in (0..m).rev() {
            factors.push(&chain.l_factors[idx]);
        }
        factors.push(&chain.u);
        for idx in (m..d).rev() {
            factors.push(&chain.l_factors[idx]);
        }
        let product = product_section(&factors, window)?;
        let lhs = j_levels[m].shifted_section(&chain.a, window)?;
        reports.push(compare_sections(
            format!("J^({m}) - aI = L^({m})..L^(1) U L^({d})..L^({})", m + 1),
            &lhs,
            &product,
            window,
        ));
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dops::{
        dual_functional_vector, generate_sequence, recurrence_from_sequence, required_horizon,
        sequence_from_functionals,
    };
    use crate::functional::FunctionalVector;
    use crate::geronimus::{build_level, forbidden_masses, GeronimusConfig};
    use crate::scalar::{int, rat, Scalar};
    use alloc::vec;
    use alloc::vec::Vec;

    fn sample_j(d: usize, rows: usize) -> BandedHessenberg {
        let bands = (0..rows)
            .map(|n| {
                let lo = n.saturating_sub(d);
                (lo..=n)
                    .map(|c| {
                        let k = n - c;
                        if k == d {
                            rat(2 + (n % 2) as i64, 3)
                        } else {
                            rat((n as i64 % 4) + k as i64 + 1, 2)
                        }
                    })
                    .collect()
            })
            .collect();
        BandedHessenberg::new(d, bands).unwrap()
    }

    /// Builds all levels 0..=d of sequences and recurrence matrices for a
    /// deterministic regular instance, with shift a and auto-selected
    /// admissible masses.
    fn pipeline(
        d: usize,
        n: usize,
        a: Scalar,
    ) -> (Vec<DOPSequence>, Vec<BandedHessenberg>, FunctionalVector) {
        let h = required_horizon(d, n);
        let j = sample_j(d, h + 1);
        let s_full = generate_sequence(&j, h);
        let v0 = dual_functional_vector(&s_full, h);
        let forbidden = forbidden_masses(&v0, &s_full, &a, 1..=n).unwrap();
        let mut masses = Vec::new();
        let mut candidate = int(1);
        while masses.len() < d {
            if !forbidden.contains(&candidate) {
                masses.push(candidate.clone());
            }
            candidate += int(1);
        }
        let cfg = GeronimusConfig::new(a, masses);
        let mut seqs = vec![s_full.truncated(n)];
        let mut js = vec![recurrence_from_sequence(&s_full.truncated(n)).unwrap()];
        for m in 1..=d {
            let vm = build_level(&v0, &cfg, m).unwrap();
            let sm = sequence_from_functionals(&vm, n).unwrap();
            js.push(recurrence_from_sequence(&sm).unwrap());
            seqs.push(sm);
        }
        (seqs, js, v0)
    }

    #[test]
    fn connection_identity_when_equal() {
        let d = 2;
        let j = sample_j(d, 8);
        let s = generate_sequence(&j, 7);
        let l = connection_lower(&s, &s, 2).unwrap();
        for row in l.band_rows() {
            assert!(row.iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn d1_gamma_matches_pairing_ratio() {
        let (seqs, _, v0) = pipeline(1, 8, int(4));
        // rebuild the level-1 vector to read its pairings
        let cfg_a = int(4);
        let forbidden =
            forbidden_masses(&v0, &seqs[0], &cfg_a, 1..=8).unwrap();
        let mut m1 = int(1);
        while forbidden.contains(&m1) {
            m1 += int(1);
        }
        let v1 = build_level(&v0, &GeronimusConfig::new(cfg_a, vec![m1]), 1).unwrap();
        let l = connection_lower(&seqs[1], &seqs[0], 1).unwrap();
        for n in 1..=6usize {
            let num = v1.entry(1).pair(seqs[0].poly(n)).unwrap();
            let den = v1.entry(1).pair(seqs[0].poly(n - 1)).unwrap();
            assert_eq!(l.gamma(n, n - 1), &(-num / den));
        }
    }

    #[test]
    fn connection_band_structure_d2_q2() {
        let (seqs, _, _) = pipeline(2, 10, rat(7, 2));
        // full basis change: coefficients below n-2 vanish exactly
        let l = connection_lower(&seqs[2], &seqs[0], 2).unwrap();
        for n in 2..l.rows() {
            assert!(!l.gamma(n, n - 2).is_zero());
        }
    }

    #[test]
    fn n_matrix_q_d_is_upper_bidiagonal() {
        let (seqs, _, _) = pipeline(2, 10, rat(7, 2));
        let u = connection_n_matrix(&seqs[0], &seqs[2], &rat(7, 2), 2).unwrap();
        for row in u.band_rows() {
            assert_eq!(row.len(), 1); // only the diagonal is stored
            assert!(!row[0].is_zero());
        }
    }

    #[test]
    fn pair_factorization_d1_classical() {
        let a = int(4);
        let (seqs, js, _) = pipeline(1, 10, a.clone());
        let l = connection_lower(&seqs[1], &seqs[0], 1).unwrap();
        let n = connection_n_matrix(&seqs[0], &seqs[1], &a, 1).unwrap();
        let pair = ConnectionPair { r: 0, q: 1, lower: l, n_matrix: n };
        let reports = verify_pair_factorization(&js[0], &js[1], &pair, &a, 10).unwrap();
        for rep in &reports {
            assert!(rep.pass(), "{}: {} mismatches", rep.identity, rep.mismatches.len());
        }
    }

    #[test]
    fn perturbed_gamma_flags_mismatch() {
        let a = int(4);
        let (seqs, js, _) = pipeline(1, 10, a.clone());
        let l = connection_lower(&seqs[1], &seqs[0], 1).unwrap();
        let n = connection_n_matrix(&seqs[0], &seqs[1], &a, 1).unwrap();
        let mut bands: Vec<Vec<Scalar>> =
            l.band_rows().iter().map(|r| r.to_vec()).collect();
        bands[3][0] += int(1);
        let tampered = BandedLowerTriangular::new(1, bands).unwrap();
        let pair = ConnectionPair { r: 0, q: 1, lower: tampered, n_matrix: n };
        let reports = verify_pair_factorization(&js[0], &js[1], &pair, &a, 9).unwrap();
        assert!(reports.iter().any(|r| !r.pass()));
    }

    #[test]
    fn chain_factorization_d2() {
        let a = rat(7, 2);
        let n = 12;
        let (seqs, js, _) = pipeline(2, n, a.clone());
        let chain = build_chain(&seqs, &a).unwrap();
        let window = n + 1 - 2;
        let reports = verify_chain_factorization(&js, &chain, window).unwrap();
        for rep in &reports {
            assert!(rep.pass(), "{}: {} mismatches", rep.identity, rep.mismatches.len());
        }
        // U diagonal from P^(d) evaluations
        let s_n = u_diagonal_from_pd(&seqs[2], &a, window).unwrap();
        let diag = chain.u.diagonal();
        assert_eq!(&s_n[..], &diag[..window]);
    }

    #[test]
    fn d1_chain_reduces_to_single_pair() {
        let a = int(4);
        let n = 8;
        let (seqs, js, _) = pipeline(1, n, a.clone());
        let chain = build_chain(&seqs, &a).unwrap();
        let window = n; // N + 1 - d
        let reports = verify_chain_factorization(&js, &chain, window).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(reports[0].pass());
        let pair = ConnectionPair {
            r: 0,
            q: 1,
            lower: chain.l_factors[0].clone(),
            n_matrix: chain.u.clone(),
        };
        let t4 = verify_pair_factorization(&js[0], &js[1], &pair, &a, window).unwrap();
        assert!(t4.iter().all(|r| r.pass()));
    }
}
