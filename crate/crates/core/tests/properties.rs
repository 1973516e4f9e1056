//! Property-based tests over randomized rationals: inverse pairs, adjoint
//! identities and agreement between independent computation routes.

mod common;

use dops_core::banded::{banded_multiply, BandMatrix, BandedLowerTriangular};
use dops_core::dops::{generate_sequence, recurrence_from_sequence};
use dops_core::functional::MomentFunctional;
use dops_core::linalg::{determinant, determinant_cofactor};
use dops_core::scalar::{rat, Scalar};
use dops_core::{BandedHessenberg, DenseSection, Polynomial};
use proptest::prelude::*;

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

fn nonzero_strategy() -> impl Strategy<Value = Scalar> {
    (1i64..=20, 1i64..=12, any::<bool>())
        .prop_map(|(p, q, neg)| rat(if neg { -p } else { p }, q))
}

fn poly_strategy(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(scalar_strategy(), 0..=max_len).prop_map(Polynomial::from_coeffs)
}

fn moments_strategy(len: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(scalar_strategy(), len..=len)
}

fn hessenberg_strategy(d: usize, rows: usize) -> impl Strategy<Value = BandedHessenberg> {
    let per_row: Vec<_> = (0..rows)
        .map(|n| {
            let stored = n.min(d) + 1;
            (prop::collection::vec(scalar_strategy(), stored..=stored), nonzero_strategy())
                .prop_map(move |(mut row, edge)| {
                    if n >= d {
                        row[0] = edge;
                    }
                    row
                })
                .boxed()
        })
        .collect();
    per_row.prop_map(move |bands| BandedHessenberg::new(d, bands).unwrap())
}

fn lower_strategy(q: usize, size: usize) -> impl Strategy<Value = BandedLowerTriangular> {
    let per_row: Vec<_> = (0..size)
        .map(|n| {
            let stored = n.min(q);
            prop::collection::vec(scalar_strategy(), stored..=stored).boxed()
        })
        .collect();
    per_row.prop_map(move |bands| BandedLowerTriangular::new(q, bands).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Dividing by (x - a) with a chosen mass and multiplying back is the
    /// identity on every moment the smaller horizon retains.
    #[test]
    fn divide_then_multiply_restores_moments(
        moments in moments_strategy(9),
        a in scalar_strategy(),
        mass in scalar_strategy(),
    ) {
        let u = MomentFunctional::new(moments);
        let divided = u.geronimus_divide(&a, &mass);
        let back = divided.multiply_by_x_minus_a(&a).unwrap();
        prop_assert_eq!(back.moments(), u.moments());
    }

    /// Multiplying by (x - a) then dividing with the original zeroth moment
    /// as the mass restores the functional (one moment shorter).
    #[test]
    fn multiply_then_divide_restores_moments(
        moments in moments_strategy(9),
        a in scalar_strategy(),
    ) {
        let u = MomentFunctional::new(moments);
        let product = u.multiply_by_x_minus_a(&a).unwrap();
        let back = product.geronimus_divide(&a, u.moment(0).unwrap());
        prop_assert_eq!(back.moments(), &u.moments()[..back.horizon() + 1]);
    }

    /// Pairing adjoint: <(x-a)u, p> = <u, (x-a)p>.
    #[test]
    fn multiplication_is_adjoint_to_shift(
        moments in moments_strategy(9),
        a in scalar_strategy(),
        p in poly_strategy(7),
    ) {
        let u = MomentFunctional::new(moments);
        let shifted = u.multiply_by_x_minus_a(&a).unwrap();
        prop_assert_eq!(
            shifted.pair(&p).unwrap(),
            u.pair(&p.mul_x_minus_a(&a)).unwrap()
        );
    }

    /// Horner evaluation is a ring homomorphism on the operations the
    /// polynomial type exposes.
    #[test]
    fn evaluation_commutes_with_arithmetic(
        p in poly_strategy(6),
        q in poly_strategy(6),
        a in scalar_strategy(),
    ) {
        prop_assert_eq!(p.add(&q).eval(&a), p.eval(&a) + q.eval(&a));
        prop_assert_eq!(p.sub(&q).eval(&a), p.eval(&a) - q.eval(&a));
        prop_assert_eq!(p.mul_x_minus_a(&a).eval(&a), dops_core::scalar::zero());
    }

    /// The fraction-free determinant agrees with cofactor expansion.
    #[test]
    fn determinant_routes_agree(
        entries in prop::collection::vec(scalar_strategy(), 16..=16),
    ) {
        let m = DenseSection::from_fn(4, 4, |i, j| entries[4 * i + j].clone());
        prop_assert_eq!(determinant(&m), determinant_cofactor(&m));
    }

    /// Reading the recurrence coefficients back off a generated sequence
    /// reproduces the matrix that generated it.
    #[test]
    fn recurrence_round_trip(
        j in hessenberg_strategy(2, 9),
    ) {
        let s = generate_sequence(&j, 8);
        let back = recurrence_from_sequence(&s).unwrap();
        for n in 0..8 {
            for k in 0..=n.min(2) {
                prop_assert_eq!(back.coeff(n, k), j.coeff(n, k), "row {} depth {}", n, k);
            }
        }
    }

    /// Banded product sections match a naive dense multiplication.
    #[test]
    fn banded_product_matches_dense(
        a in lower_strategy(1, 8),
        b in lower_strategy(2, 8),
    ) {
        let window = 6; // both factors have reach 0, so any window <= 8 is safe
        let fast = banded_multiply(&a, &b, window).unwrap();
        for i in 0..window {
            for j in 0..window {
                let mut acc = dops_core::scalar::zero();
                for k in 0..8 {
                    acc += a.entry(i, k) * b.entry(k, j);
                }
                prop_assert_eq!(fast.get(i, j), &acc, "entry ({}, {})", i, j);
            }
        }
    }
}
