//! Norm inequalities for zero-diagonal real symmetric and Hermitian matrices.
//!
//! For a nonzero matrix `A` of order `n` with zero diagonal, the trace norm
//! (sum of absolute eigenvalues) dominates the entrywise L1 norm up to a
//! sharp constant: `2/n` in the real symmetric case and `tan(pi / 2n)` in
//! the Hermitian case. Dually, every matrix with off-diagonal entries of
//! modulus at most 1 admits a real diagonal matrix within spectral distance
//! `n/2` (real) or `cot(pi / 2n)` (Hermitian). This crate computes, checks,
//! and extremizes these quantities:
//!
//! - [`matrix`]: dense Hermitian/symmetric storage, entrywise norms, the
//!   Frobenius inner product, Hadamard products.
//! - [`spectral`]: Jacobi eigendecomposition, trace/spectral norms,
//!   positive/negative parts, semidefiniteness tests.
//! - [`bounds`]: the `gamma_n` constants, bound checkers, and the exhaustive
//!   minimum-energy search over zero-diagonal sign matrices.
//! - [`extremal`]: the matrix families attaining each bound.
//! - [`gamma_max`]: maximization of `sum d_i d_j |omega_i - omega_j|` over
//!   the simplex and the torus, whose maximum is `gamma_n`.
//! - [`nearest_diag`]: the convex nearest-diagonal-matrix solver with dual
//!   certificates and a brute-force oracle.
//! - [`rng`], [`io`]: seeded reproducible matrix generation and the JSON
//!   matrix file format.
//!
//! Everything is generic over the real scalar type through [`Scalar`]
//! (`f32` or `f64`); the aliases below fix the common double-precision
//! instantiation.

pub mod bounds;
pub mod error;
pub mod extremal;
pub mod gamma_max;
pub mod io;
pub mod matrix;
pub mod nearest_diag;
pub mod rng;
pub mod scalar;
pub mod spectral;

pub use error::Error;
pub use matrix::{DiagonalVector, MatrixKind, SquareMatrix};
pub use num_complex::Complex;
pub use scalar::Scalar;

/// Double-precision matrix.
pub type Matrix64 = SquareMatrix<f64>;
/// Single-precision matrix.
pub type Matrix32 = SquareMatrix<f32>;
/// Double-precision diagonal vector.
pub type Diagonal64 = DiagonalVector<f64>;
/// Double-precision eigendecomposition.
pub type Eigen64 = spectral::EigenDecomposition<f64>;
/// Double-precision bound report.
pub type BoundReport64 = bounds::BoundReport<f64>;
/// Double-precision nearest-diagonal result.
pub type NearDiag64 = nearest_diag::NearDiagResult<f64>;
/// Double-precision search point of the simplex-torus maximization.
pub type SearchPoint64 = gamma_max::SearchPoint<f64>;
