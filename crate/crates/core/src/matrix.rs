//! Dense storage and entrywise algebra for real symmetric and Hermitian
//! matrices.
//!
//! Construction enforces exact conjugate symmetry (the upper triangle is
//! authoritative, the lower triangle is its mirror), so downstream code and
//! tests never need a symmetry tolerance. Matrices are immutable after
//! construction and every operation here is pure.

use num_complex::Complex;

use crate::error::Error;
use crate::scalar::{count, lit, Scalar};

/// Whether a matrix lives in the space of real symmetric matrices or the
/// space of Hermitian matrices.
///
/// Both kinds share the same complex storage; `RealSymmetric` additionally
/// guarantees that every imaginary part is identically zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    RealSymmetric,
    Hermitian,
}

/// Real diagonal of a square matrix; the search space of the
/// nearest-diagonal-matrix problem.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalVector<R>(Vec<R>);

impl<R: Scalar> DiagonalVector<R> {
    pub fn new(values: Vec<R>) -> Self {
        DiagonalVector(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[R] {
        &self.0
    }

    pub fn into_values(self) -> Vec<R> {
        self.0
    }
}

/// Dense `n x n` matrix with `entries[j][i] == conj(entries[i][j])` exactly
/// and a real diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<R> {
    n: usize,
    kind: MatrixKind,
    /// Row-major entries; length `n * n`.
    data: Vec<Complex<R>>,
}

impl<R: Scalar> SquareMatrix<R> {
    /// Builds a matrix from row-major entries, validating squareness,
    /// finiteness, and exact conjugate symmetry. `RealSymmetric` rejects any
    /// nonzero imaginary part. The upper triangle is authoritative; the
    /// stored lower triangle is its conjugate mirror.
    pub fn new(kind: MatrixKind, rows: Vec<Vec<Complex<R>>>) -> Result<Self, Error> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::NonSquare);
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { i, j });
                }
                if kind == MatrixKind::RealSymmetric && z.im != R::zero() {
                    return Err(Error::NonRealEntry { i, j });
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                if rows[i][j] != rows[j][i].conj() {
                    return Err(Error::SymmetryViolation { i, j });
                }
            }
        }
        Ok(Self::from_upper(kind, n, |i, j| rows[i][j]))
    }

    /// Builds a real symmetric matrix from real row-major entries.
    pub fn from_real_rows(rows: &[Vec<R>]) -> Result<Self, Error> {
        let complex_rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex::new(x, R::zero())).collect())
            .collect();
        Self::new(MatrixKind::RealSymmetric, complex_rows)
    }

    /// Internal constructor: fills the upper triangle from `f` and mirrors
    /// the conjugate into the lower triangle, zeroing the imaginary part of
    /// the diagonal. Callers must supply finite values.
    pub(crate) fn from_upper(
        kind: MatrixKind,
        n: usize,
        mut f: impl FnMut(usize, usize) -> Complex<R>,
    ) -> Self {
        let zero = Complex::new(R::zero(), R::zero());
        let mut data = vec![zero; n * n];
        for i in 0..n {
            for j in i..n {
                let mut z = f(i, j);
                if i == j {
                    z.im = R::zero();
                } else {
                    data[j * n + i] = z.conj();
                }
                data[i * n + j] = z;
            }
        }
        SquareMatrix { n, kind, data }
    }

    /// The zero matrix of the given kind and order.
    pub fn zeros(kind: MatrixKind, n: usize) -> Self {
        Self::from_upper(kind, n, |_, _| Complex::new(R::zero(), R::zero()))
    }

    /// The identity matrix (real symmetric).
    pub fn identity(n: usize) -> Self {
        Self::from_upper(MatrixKind::RealSymmetric, n, |i, j| {
            Complex::new(if i == j { R::one() } else { R::zero() }, R::zero())
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    /// Entry `(i, j)`; panics on out-of-range indices.
    pub fn get(&self, i: usize, j: usize) -> Complex<R> {
        assert!(i < self.n && j < self.n, "index out of range");
        self.data[i * self.n + j]
    }

    /// Sum of the moduli of all entries.
    pub fn entrywise_l1(&self) -> R {
        self.data.iter().map(|z| z.norm()).sum()
    }

    /// Largest entry modulus.
    pub fn entrywise_max(&self) -> R {
        self.data
            .iter()
            .map(|z| z.norm())
            .fold(R::zero(), |acc, x| acc.max(x))
    }

    /// Largest off-diagonal entry modulus; zero for `n == 1`.
    pub fn entrywise_max_offdiag(&self) -> R {
        let mut best = R::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    best = best.max(self.data[i * self.n + j].norm());
                }
            }
        }
        best
    }

    /// Frobenius norm, `sqrt(sum |a_ij|^2)`.
    pub fn frobenius_norm(&self) -> R {
        self.data
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<R>()
            .sqrt()
    }

    /// Frobenius inner product `tr(A* B) = sum conj(a_ij) b_ij`.
    ///
    /// For two matrices of the same order that are both conjugate-symmetric
    /// the result is real; the residual imaginary part is asserted below
    /// `1e-12 * ||A||_F * ||B||_F` and discarded.
    pub fn frobenius_inner(&self, other: &Self) -> Result<R, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut acc = Complex::new(R::zero(), R::zero());
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            acc = acc + a.conj() * *b;
        }
        let scale = self.frobenius_norm() * other.frobenius_norm();
        assert!(
            acc.im.abs() <= lit::<R>(1e-12) * scale.max(R::one()),
            "inner product of conjugate-symmetric matrices must be real"
        );
        Ok(acc.re)
    }

    /// Entrywise (Hadamard) product. The result is real symmetric only when
    /// both factors are.
    pub fn hadamard(&self, other: &Self) -> Result<Self, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let kind = if self.kind == MatrixKind::RealSymmetric
            && other.kind == MatrixKind::RealSymmetric
        {
            MatrixKind::RealSymmetric
        } else {
            MatrixKind::Hermitian
        };
        Ok(Self::from_upper(kind, self.n, |i, j| {
            self.get(i, j) * other.get(i, j)
        }))
    }

    /// Entrywise complex conjugate (equivalently, the transpose).
    pub fn conjugate(&self) -> Self {
        Self::from_upper(self.kind, self.n, |i, j| self.get(i, j).conj())
    }

    /// The diagonal as a real vector.
    pub fn diag_vector(&self) -> DiagonalVector<R> {
        DiagonalVector((0..self.n).map(|i| self.data[i * self.n + i].re).collect())
    }

    /// `A - diag(d)`, preserving kind and symmetry.
    pub fn subtract_diag(&self, d: &DiagonalVector<R>) -> Result<Self, Error> {
        if d.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: d.len(),
            });
        }
        Ok(Self::from_upper(self.kind, self.n, |i, j| {
            if i == j {
                Complex::new(self.get(i, i).re - d.values()[i], R::zero())
            } else {
                self.get(i, j)
            }
        }))
    }

    /// True iff every diagonal modulus is at most `tol`.
    pub fn is_zero_diag(&self, tol: R) -> bool {
        (0..self.n).all(|i| self.data[i * self.n + i].norm() <= tol)
    }

    /// Multiplication by a real scalar.
    pub fn scale(&self, c: R) -> Self {
        Self::from_upper(self.kind, self.n, |i, j| self.get(i, j).scale(c))
    }

    /// Entrywise sum; real symmetric only when both terms are.
    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.combine(other, |a, b| a + b)
    }

    /// Entrywise difference; real symmetric only when both terms are.
    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(
        &self,
        other: &Self,
        f: impl Fn(Complex<R>, Complex<R>) -> Complex<R>,
    ) -> Result<Self, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let kind = if self.kind == MatrixKind::RealSymmetric
            && other.kind == MatrixKind::RealSymmetric
        {
            MatrixKind::RealSymmetric
        } else {
            MatrixKind::Hermitian
        };
        Ok(Self::from_upper(kind, self.n, |i, j| {
            f(self.get(i, j), other.get(i, j))
        }))
    }

    /// Matrix-vector product `A x`.
    pub fn matvec(&self, x: &[Complex<R>]) -> Result<Vec<Complex<R>>, Error> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|i| {
                let mut acc = Complex::new(R::zero(), R::zero());
                for j in 0..self.n {
                    acc = acc + self.data[i * self.n + j] * x[j];
                }
                acc
            })
            .collect())
    }

    /// The all-ones matrix `J_n` (real symmetric).
    pub fn all_ones(n: usize) -> Self {
        Self::from_upper(MatrixKind::RealSymmetric, n, |_, _| {
            Complex::new(R::one(), R::zero())
        })
    }

    /// Zeroes the diagonal, keeping all off-diagonal entries.
    pub fn zero_diag_part(&self) -> Self {
        Self::from_upper(self.kind, self.n, |i, j| {
            if i == j {
                Complex::new(R::zero(), R::zero())
            } else {
                self.get(i, j)
            }
        })
    }

    /// Relative tolerance used by the bound checkers to accept a diagonal as
    /// zero: `1e-12 * entrywise_max`.
    pub fn zero_diag_tol(&self) -> R {
        lit::<R>(1e-12) * self.entrywise_max()
    }
}

/// Scales `n` into the working scalar type; re-exported for call sites that
/// need `n` as a scalar (bounds `2/n`, simplex weights `1/n`, ...).
pub(crate) fn order_as_scalar<R: Scalar>(n: usize) -> R {
    count(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type M = SquareMatrix<f64>;
    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        Complex::new(re, im)
    }

    fn jn_minus_in(n: usize) -> M {
        M::from_upper(MatrixKind::RealSymmetric, n, |i, j| {
            c(if i == j { 0.0 } else { 1.0 }, 0.0)
        })
    }

    #[test]
    fn construct_real_symmetric() {
        let a = M::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(a.kind(), MatrixKind::RealSymmetric);
        assert_eq!(a.get(0, 1), c(1.0, 0.0));
    }

    #[test]
    fn construct_hermitian_pauli_y_like() {
        let rows = vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]];
        let a = M::new(MatrixKind::Hermitian, rows).unwrap();
        assert_eq!(a.get(1, 0), c(0.0, 1.0));
        assert_eq!(a.entrywise_max(), 1.0);
    }

    #[test]
    fn construct_rejects_asymmetry() {
        let err = M::from_real_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap_err();
        assert_eq!(err, Error::SymmetryViolation { i: 0, j: 1 });
    }

    #[test]
    fn construct_rejects_non_square_and_non_finite() {
        assert_eq!(
            M::from_real_rows(&[vec![0.0, 1.0]]).unwrap_err(),
            Error::NonSquare
        );
        let err = M::from_real_rows(&[vec![0.0, f64::NAN], vec![f64::NAN, 0.0]]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }));
    }

    #[test]
    fn construct_rejects_imaginary_entries_in_real_kind() {
        let rows = vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]];
        let err = M::new(MatrixKind::RealSymmetric, rows).unwrap_err();
        assert!(matches!(err, Error::NonRealEntry { .. }));
    }

    #[test]
    fn construct_rejects_complex_diagonal() {
        let rows = vec![vec![c(0.0, 1.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]];
        let err = M::new(MatrixKind::Hermitian, rows).unwrap_err();
        assert!(matches!(err, Error::SymmetryViolation { .. }));
    }

    #[test]
    fn entrywise_l1_examples() {
        assert_eq!(jn_minus_in(3).entrywise_l1(), 6.0);
        assert_eq!(M::zeros(MatrixKind::Hermitian, 4).entrywise_l1(), 0.0);
    }

    #[test]
    fn entrywise_max_examples() {
        assert_eq!(M::all_ones(5).entrywise_max(), 1.0);
        assert_eq!(jn_minus_in(4).scale(3.0).entrywise_max(), 3.0);
    }

    #[test]
    fn frobenius_inner_examples() {
        let i3 = M::identity(3);
        assert_eq!(i3.frobenius_inner(&i3).unwrap(), 3.0);
        let j2 = M::all_ones(2);
        let x = jn_minus_in(2);
        assert_eq!(j2.frobenius_inner(&x).unwrap(), 2.0);
        let err = j2.frobenius_inner(&M::identity(3)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn frobenius_inner_vanishes_when_ranges_are_orthogonal() {
        // B = v v^T with a balanced sign vector satisfies B 1 = 0, so
        // <1 1^T, B> = (1^T v)^2 = 0.
        let v = [1.0, 1.0, -1.0, -1.0];
        let b = M::from_upper(MatrixKind::RealSymmetric, 4, |i, j| c(v[i] * v[j], 0.0));
        let ones = M::all_ones(4);
        assert!(ones.frobenius_inner(&b).unwrap().abs() < 1e-12);
    }

    #[test]
    fn hadamard_identity_and_idempotent() {
        let a = M::from_upper(MatrixKind::Hermitian, 3, |i, j| {
            c(0.3 * (i + j) as f64, if i == j { 0.0 } else { 0.7 })
        });
        assert_eq!(a.hadamard(&M::all_ones(3)).unwrap(), a);
        let x = jn_minus_in(2);
        assert_eq!(x.hadamard(&x).unwrap(), x);
    }

    #[test]
    fn diag_ops_examples() {
        let j3 = M::all_ones(3);
        assert_eq!(j3.diag_vector().values(), &[1.0, 1.0, 1.0]);
        let d = DiagonalVector::new(vec![1.0, 1.0, 1.0]);
        assert_eq!(j3.subtract_diag(&d).unwrap(), jn_minus_in(3));
        assert!(jn_minus_in(3).is_zero_diag(0.0));
        assert!(!j3.is_zero_diag(0.5));
    }

    #[test]
    fn frobenius_inner_matches_squared_entries() {
        let a = M::from_upper(MatrixKind::Hermitian, 5, |i, j| {
            c((i as f64 - j as f64) * 0.25, if i == j { 0.0 } else { 0.4 })
        });
        let sq: f64 = (0..5)
            .flat_map(|i| (0..5).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j).norm_sqr())
            .sum();
        let ip = a.frobenius_inner(&a).unwrap();
        assert!((ip - sq).abs() <= 1e-12 * sq.max(1.0));
    }

    proptest! {
        #[test]
        fn symmetry_is_exact_after_construction(seed in 0u64..500) {
            let mut s = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
            let mut next = move || {
                s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                (s >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
            };
            let n = 4;
            let a = M::from_upper(MatrixKind::Hermitian, n, |i, j| {
                if i == j { c(next(), 0.0) } else { c(next(), next()) }
            });
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(a.get(i, j), a.get(j, i).conj());
                }
            }
        }

        #[test]
        fn entrywise_norms_are_absolutely_homogeneous(scale in -100.0f64..100.0) {
            let a = jn_minus_in(4);
            let scaled = a.scale(scale);
            let l1 = a.entrywise_l1();
            let linf = a.entrywise_max();
            prop_assert!((scaled.entrywise_l1() - scale.abs() * l1).abs() <= 1e-14 * l1.max(1.0) * scale.abs().max(1.0));
            prop_assert!((scaled.entrywise_max() - scale.abs() * linf).abs() <= 1e-14 * linf.max(1.0) * scale.abs().max(1.0));
        }
    }
}
