//! Exact-arithmetic kernels for d-orthogonal polynomial sequences.
//!
//! Everything here works over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate, so algebraic identities between
//! banded recurrence matrices, moment functionals and their Geronimus
//! transformations can be checked as exact equalities on finite sections.
//!
//! The crate is `no_std` (alloc only). IO, serialization and the CLI live
//! in the companion `dops-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod banded;
pub mod dops;
pub mod error;
pub mod factorization;
pub mod functional;
pub mod geronimus;
pub mod linalg;
pub mod poly;
pub mod scalar;

pub use banded::{BandMatrix, BandedHessenberg, BandedLowerTriangular, BandedN, DenseSection};
pub use dops::DOPSequence;
pub use error::Error;
pub use functional::{FunctionalVector, MomentFunctional};
pub use geronimus::GeronimusConfig;
pub use poly::Polynomial;
pub use scalar::Scalar;
