//! Randomized-instance builders shared by the integration suites.

#![allow(dead_code)]

use dops_core::banded::BandedHessenberg;
use dops_core::dops::{
    dual_functional_vector, generate_sequence, recurrence_from_sequence, required_horizon,
    sequence_from_functionals, DOPSequence,
};
use dops_core::functional::FunctionalVector;
use dops_core::geronimus::{build_level, forbidden_masses};
use dops_core::scalar::{int, rat, Scalar};
use dops_core::GeronimusConfig;
use rand::Rng;

pub fn random_scalar(rng: &mut impl Rng) -> Scalar {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=4))
}

pub fn random_nonzero(rng: &mut impl Rng) -> Scalar {
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(sign * rng.gen_range(1..=4), rng.gen_range(1..=4))
}

/// Random (d+2)-banded lower Hessenberg recurrence section with `rows` band
/// rows; the deepest band a_{n,n-d} is kept nonzero.
pub fn random_j(rng: &mut impl Rng, d: usize, rows: usize) -> BandedHessenberg {
    let bands = (0..rows)
        .map(|n| {
            let lo = n.saturating_sub(d);
            (lo..=n)
                .map(|c| if n - c == d { random_nonzero(rng) } else { random_scalar(rng) })
                .collect()
        })
        .collect();
    BandedHessenberg::new(d, bands).unwrap()
}

/// A built transformation pipeline: requested level sequences truncated to
/// the working degree, their recurrence matrices, the canonical dual vector
/// of the base sequence (at full horizon) and the shift/mass configuration.
///
/// Levels are indexed 0..=d; entries not requested stay `None`. With the
/// dual-basis normalization the entries u_2..u_d all have zeroth moment 0,
/// which makes some intermediate levels irregular identically in the masses
/// once d >= 3 (e.g. level 2 of a d = 3 pipeline fails at degree 2 with
/// rows (M_2, aM_2), (M_1, aM_1)), so callers pick the levels they need.
pub struct Instance {
    pub d: usize,
    pub n: usize,
    seqs: Vec<Option<DOPSequence>>,
    js: Vec<Option<BandedHessenberg>>,
    pub v0: FunctionalVector,
    pub cfg: GeronimusConfig,
    /// Base sequence up to the full working horizon (degrees > n included).
    pub s_full: DOPSequence,
}

impl Instance {
    pub fn seq(&self, m: usize) -> &DOPSequence {
        self.seqs[m].as_ref().expect("level not built")
    }

    pub fn j(&self, m: usize) -> &BandedHessenberg {
        self.js[m].as_ref().expect("level not built")
    }

    /// All levels 0..=d in order; panics unless every level was requested.
    pub fn all_seqs(&self) -> Vec<DOPSequence> {
        self.seqs.iter().map(|s| s.clone().expect("level not built")).collect()
    }

    pub fn all_js(&self) -> Vec<BandedHessenberg> {
        self.js.iter().map(|j| j.clone().expect("level not built")).collect()
    }
}

/// Draws random recurrence sections until one yields an instance regular at
/// every requested level (`levels` lists them, 1-based; level 0 is always
/// built) for the shift `a`, with integer masses outside the forbidden set.
pub fn random_pipeline(
    rng: &mut impl Rng,
    d: usize,
    n: usize,
    a: &Scalar,
    levels: &[usize],
) -> Instance {
    let h = required_horizon(d, n);
    loop {
        let j = random_j(rng, d, h + 1);
        let s_full = generate_sequence(&j, h);
        let v0 = dual_functional_vector(&s_full, h);
        let forbidden = match forbidden_masses(&v0, &s_full, a, 1..=n) {
            Ok(f) => f,
            Err(_) => continue,
        };
        'attempt: for attempt in 0..20i64 {
            let mut masses = Vec::new();
            let mut candidate = int(1 + 7 * attempt);
            while masses.len() < d {
                if !forbidden.contains(&candidate) {
                    masses.push(candidate.clone());
                }
                candidate += int(1);
            }
            let cfg = GeronimusConfig::new(a.clone(), masses);
            let mut seqs = vec![Some(s_full.truncated(n))];
            let mut js = vec![Some(recurrence_from_sequence(seqs[0].as_ref().unwrap()).unwrap())];
            seqs.resize(d + 1, None);
            js.resize(d + 1, None);
            for &m in levels {
                assert!(m >= 1 && m <= d);
                let vm = build_level(&v0, &cfg, m).unwrap();
                let sm = match sequence_from_functionals(&vm, n) {
                    Ok(s) => s,
                    Err(_) => continue 'attempt,
                };
                let jm = match recurrence_from_sequence(&sm) {
                    Ok(j) => j,
                    Err(_) => continue 'attempt,
                };
                js[m] = Some(jm);
                seqs[m] = Some(sm);
            }
            return Instance { d, n, seqs, js, v0, cfg, s_full };
        }
    }
}
