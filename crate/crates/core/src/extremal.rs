//! Constructors for the matrix families that attain the trace-norm bounds
//! and the nearest-diagonal-distance bounds. These serve as ground-truth
//! fixtures for the checkers and solvers.

use num_complex::Complex;

use crate::error::Error;
use crate::matrix::{MatrixKind, SquareMatrix};
use crate::scalar::{count, Scalar};

/// The `n`-th roots of unity `exp(i 2 pi k / n)`, `k = 0..n-1`, computed from
/// angle arithmetic (one `cos`/`sin` per root, never repeated complex
/// multiplication) so the moduli stay at 1 to machine precision for any `n`.
pub fn roots_of_unity<R: Scalar>(n: usize) -> Vec<Complex<R>> {
    let two_pi = R::PI() + R::PI();
    (0..n)
        .map(|k| {
            let angle = two_pi * count::<R>(k) / count::<R>(n);
            Complex::new(angle.cos(), angle.sin())
        })
        .collect()
}

/// `J_n - I_n`: zero diagonal, all off-diagonal entries 1. Attains the real
/// bound `trace_norm / entrywise_l1 = 2/n`.
pub fn jn_minus_in<R: Scalar>(n: usize) -> Result<SquareMatrix<R>, Error> {
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    Ok(SquareMatrix::from_upper(MatrixKind::RealSymmetric, n, |i, j| {
        Complex::new(if i == j { R::zero() } else { R::one() }, R::zero())
    }))
}

/// `11^T - v v^T` for a balanced sign vector `v`: zero diagonal, trace norm
/// `2n`, entrywise L1 norm `n^2`, so the real bound holds with equality.
pub fn real_equality_family<R: Scalar>(signs: &[i8]) -> Result<SquareMatrix<R>, Error> {
    let n = signs.len();
    if n % 2 != 0 {
        return Err(Error::OddOrder);
    }
    if signs.iter().any(|&s| s != 1 && s != -1)
        || signs.iter().map(|&s| s as i64).sum::<i64>() != 0
    {
        return Err(Error::UnbalancedVector);
    }
    Ok(SquareMatrix::from_upper(MatrixKind::RealSymmetric, n, |i, j| {
        Complex::new(R::one() - sign_scalar::<R>(signs[i] * signs[j]), R::zero())
    }))
}

fn sign_scalar<R: Scalar>(s: i8) -> R {
    if s >= 0 {
        R::one()
    } else {
        -R::one()
    }
}

/// `11* - aa*` for the roots-of-unity vector `a`: the Hermitian matrix with
/// entries `1 - exp(i 2 pi (j - k) / n)`, zero diagonal, and the two nonzero
/// eigenvalues `n` and `-n`. Attains the Hermitian bound `tan(pi / 2n)`.
pub fn herm_extremal<R: Scalar>(n: usize) -> Result<SquareMatrix<R>, Error> {
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    let two_pi = R::PI() + R::PI();
    Ok(SquareMatrix::from_upper(MatrixKind::Hermitian, n, |j, k| {
        // j <= k here, so the angle is <= 0; the mirror fills the rest.
        let angle = two_pi * (count::<R>(j) - count::<R>(k)) / count::<R>(n);
        Complex::new(R::one() - angle.cos(), -angle.sin())
    }))
}

/// The Hermitian matrix with `sgn(i - j) * i` off the diagonal (`i` the
/// imaginary unit). Its spectrum is `{cot((2k - 1) pi / 2n) : k = 1..n}`, so
/// the spectral norm is `cot(pi / 2n)` and the nearest real diagonal matrix
/// in the spectral norm is zero.
pub fn e_matrix<R: Scalar>(n: usize) -> Result<SquareMatrix<R>, Error> {
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    Ok(SquareMatrix::from_upper(MatrixKind::Hermitian, n, |i, j| {
        if i == j {
            Complex::new(R::zero(), R::zero())
        } else {
            // upper triangle: i < j, so sgn(i - j) = -1
            Complex::new(R::zero(), -R::one())
        }
    }))
}

/// The unit-modulus Hermitian matrix `a_ij = -i zeta^(i-j) sgn(i-j)` with
/// `zeta = exp(i pi / n)`: unitarily equivalent to the negated [`e_matrix`],
/// hence with the same spectral norm `cot(pi / 2n)` while every off-diagonal
/// entry has modulus exactly 1.
pub fn herm_dual_extremal<R: Scalar>(n: usize) -> Result<SquareMatrix<R>, Error> {
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    Ok(SquareMatrix::from_upper(MatrixKind::Hermitian, n, |i, j| {
        if i == j {
            Complex::new(R::zero(), R::zero())
        } else {
            // upper triangle: d = j - i > 0 and the entry is
            // i * exp(-i pi d / n) = sin(pi d / n) + i cos(pi d / n).
            let t = R::PI() * (count::<R>(j) - count::<R>(i)) / count::<R>(n);
            Complex::new(t.sin(), t.cos())
        }
    }))
}

/// Adjacency matrix of the complete bipartite graph on two halves of size
/// `n/2`: all entries between the halves are 1, everything else 0.
///
/// This is the support pattern of `11^T - v v^T` for the half-split sign
/// vector, and its nearest real diagonal matrix in the spectral norm is at
/// distance exactly `n/2` (eigenvalues are `{n/2, 0, ..., 0, -n/2}`, and the
/// dual certificate `11^T - v v^T` shows no diagonal shift does better).
pub fn complete_bipartite<R: Scalar>(n: usize) -> Result<SquareMatrix<R>, Error> {
    if n % 2 != 0 {
        return Err(Error::OddOrder);
    }
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    let half = n / 2;
    Ok(SquareMatrix::from_upper(MatrixKind::RealSymmetric, n, |i, j| {
        Complex::new(
            if (i < half) != (j < half) { R::one() } else { R::zero() },
            R::zero(),
        )
    }))
}
