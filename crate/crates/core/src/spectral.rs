//! Eigendecomposition of real symmetric and Hermitian matrices, and the
//! spectral quantities built on it: trace norm, spectral norm,
//! positive/negative parts, and semidefiniteness tests.
//!
//! The solver is a cyclic Jacobi iteration with complex plane rotations. Each
//! rotation annihilates one off-diagonal pivot of the 2x2 Hermitian
//! subproblem (a phase factor reduces the pivot to a real rotation). Full
//! sweeps run without a pivot threshold; the iteration stops once the
//! off-diagonal Frobenius mass drops below `Scalar::eig_sweep_tol()` times
//! the matrix norm, with a hard cap of 60 sweeps.

use num_complex::Complex;

use crate::error::Error;
use crate::matrix::{MatrixKind, SquareMatrix};
use crate::scalar::{lit, Scalar};

const MAX_SWEEPS: usize = 60;

/// Eigenvalues (descending) and a matching orthonormal set of eigenvectors.
///
/// For real symmetric input the eigenvectors have identically zero imaginary
/// parts: the rotation phases stay real throughout the iteration.
#[derive(Debug, Clone)]
pub struct EigenDecomposition<R> {
    n: usize,
    kind: MatrixKind,
    eigenvalues: Vec<R>,
    /// `eigenvectors[k]` is the unit eigenvector for `eigenvalues[k]`.
    eigenvectors: Vec<Vec<Complex<R>>>,
}

impl<R: Scalar> EigenDecomposition<R> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> &[R] {
        &self.eigenvalues
    }

    /// Unit eigenvector for the `k`-th eigenvalue.
    pub fn eigenvector(&self, k: usize) -> &[Complex<R>] {
        &self.eigenvectors[k]
    }

    /// Sum of absolute eigenvalues.
    pub fn trace_norm(&self) -> R {
        self.eigenvalues.iter().map(|l| l.abs()).sum()
    }

    /// Largest absolute eigenvalue.
    pub fn spectral_norm(&self) -> R {
        match (self.eigenvalues.first(), self.eigenvalues.last()) {
            (Some(&hi), Some(&lo)) => hi.abs().max(lo.abs()),
            _ => R::zero(),
        }
    }

    /// Smallest eigenvalue.
    pub fn min_eigenvalue(&self) -> R {
        *self.eigenvalues.last().expect("order is positive")
    }

    /// Rebuilds `sum_k lambda_k x_k x_k*`.
    pub fn reconstruct(&self) -> SquareMatrix<R> {
        self.weighted_outer_sum(|_| true)
    }

    /// `sum over selected k of lambda_k x_k x_k*`, mirrored into an exactly
    /// conjugate-symmetric matrix.
    fn weighted_outer_sum(&self, select: impl Fn(R) -> bool) -> SquareMatrix<R> {
        SquareMatrix::from_upper(self.kind, self.n, |i, j| {
            let mut acc = Complex::new(R::zero(), R::zero());
            for (k, &lambda) in self.eigenvalues.iter().enumerate() {
                if select(lambda) {
                    let v = &self.eigenvectors[k];
                    acc = acc + (v[i] * v[j].conj()).scale(lambda);
                }
            }
            acc
        })
    }

    /// Frobenius norm of `V* V - I`.
    pub fn orthonormality_residual(&self) -> R {
        let mut acc = R::zero();
        for a in 0..self.n {
            for b in 0..self.n {
                let mut ip = Complex::new(R::zero(), R::zero());
                for i in 0..self.n {
                    ip = ip + self.eigenvectors[a][i].conj() * self.eigenvectors[b][i];
                }
                if a == b {
                    ip.re = ip.re - R::one();
                }
                acc = acc + ip.norm_sqr();
            }
        }
        acc.sqrt()
    }
}

/// Off-diagonal Frobenius mass of a working grid.
fn off_diagonal_mass<R: Scalar>(m: &[Vec<Complex<R>>]) -> R {
    let n = m.len();
    let mut acc = R::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc = acc + m[i][j].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation annihilating the `(p, q)` pivot, accumulated into `v`.
fn rotate<R: Scalar>(m: &mut [Vec<Complex<R>>], v: &mut [Vec<Complex<R>>], p: usize, q: usize) {
    let n = m.len();
    let apq = m[p][q];
    let r = apq.norm();
    if r == R::zero() {
        return;
    }
    let phase = apq.unscale(r);
    let app = m[p][p].re;
    let aqq = m[q][q].re;
    let theta = (aqq - app) / (r + r);
    // Root of t^2 + 2 theta t - 1 = 0 with the smaller magnitude, guarding
    // against overflow of theta^2.
    let t = if theta.abs() > R::max_value().sqrt() / lit(4.0) {
        (theta + theta).recip()
    } else {
        let sign = if theta >= R::zero() { R::one() } else { -R::one() };
        sign / (theta.abs() + (theta * theta + R::one()).sqrt())
    };
    let c = (t * t + R::one()).sqrt().recip();
    let s = t * c;

    // Unitary U differs from the identity in rows/columns p and q:
    //   U[p][p] = c            U[p][q] = s * phase
    //   U[q][p] = -s * conj(phase)   U[q][q] = c
    let s_phase = phase.scale(s);
    let s_phase_conj = phase.conj().scale(s);

    // A <- A U (columns p and q of every row).
    for row in m.iter_mut() {
        let xp = row[p];
        let xq = row[q];
        row[p] = xp.scale(c) - xq * s_phase_conj;
        row[q] = xp * s_phase + xq.scale(c);
    }
    // A <- U* A (rows p and q of every column).
    for j in 0..n {
        let xp = m[p][j];
        let xq = m[q][j];
        m[p][j] = xp.scale(c) - xq * s_phase;
        m[q][j] = xp * s_phase_conj + xq.scale(c);
    }
    // The pivot is now zero by construction; pin it and keep the diagonal real.
    m[p][q] = Complex::new(R::zero(), R::zero());
    m[q][p] = Complex::new(R::zero(), R::zero());
    m[p][p].im = R::zero();
    m[q][q].im = R::zero();

    // V <- V U.
    for row in v.iter_mut() {
        let xp = row[p];
        let xq = row[q];
        row[p] = xp.scale(c) - xq * s_phase_conj;
        row[q] = xp * s_phase + xq.scale(c);
    }
}

/// Full eigendecomposition of a real symmetric or Hermitian matrix.
pub fn eigh<R: Scalar>(a: &SquareMatrix<R>) -> Result<EigenDecomposition<R>, Error> {
    let n = a.n();
    let zero = Complex::new(R::zero(), R::zero());
    let one = Complex::new(R::one(), R::zero());

    let mut m: Vec<Vec<Complex<R>>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();
    let mut v: Vec<Vec<Complex<R>>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { one } else { zero }).collect())
        .collect();

    let scale = a.frobenius_norm();
    if scale > R::zero() {
        let tol = R::eig_sweep_tol() * scale;
        let mut converged = false;
        for _sweep in 0..MAX_SWEEPS {
            if off_diagonal_mass(&m) <= tol {
                converged = true;
                break;
            }
            for p in 0..n.saturating_sub(1) {
                for q in (p + 1)..n {
                    rotate(&mut m, &mut v, p, q);
                }
            }
        }
        if !converged && off_diagonal_mass(&m) > tol {
            return Err(Error::ConvergenceFailure {
                sweeps: MAX_SWEEPS,
                off_diag: (off_diagonal_mass(&m) / scale).to_f64().unwrap_or(f64::NAN),
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j][j].re.partial_cmp(&m[i][i].re).expect("finite"));

    let eigenvalues = order.iter().map(|&k| m[k][k].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i][k]).collect())
        .collect();

    Ok(EigenDecomposition {
        n,
        kind: a.kind(),
        eigenvalues,
        eigenvectors,
    })
}

/// Sum of absolute eigenvalues (the matrix energy).
pub fn trace_norm<R: Scalar>(a: &SquareMatrix<R>) -> Result<R, Error> {
    Ok(eigh(a)?.trace_norm())
}

/// Largest absolute eigenvalue.
pub fn spectral_norm<R: Scalar>(a: &SquareMatrix<R>) -> Result<R, Error> {
    Ok(eigh(a)?.spectral_norm())
}

/// Spectral split `A = A_plus - A_minus` into positive semidefinite parts:
/// eigenvalues `>= 0` go to the first component, negative ones (negated) to
/// the second.
pub fn pos_neg_parts<R: Scalar>(
    a: &SquareMatrix<R>,
) -> Result<(SquareMatrix<R>, SquareMatrix<R>), Error> {
    let dec = eigh(a)?;
    let plus = dec.weighted_outer_sum(|l| l >= R::zero());
    let minus = dec
        .weighted_outer_sum(|l| l < R::zero())
        .scale(-R::one());
    Ok((plus, minus))
}

/// True iff the smallest eigenvalue is at least `-tol`.
pub fn is_psd<R: Scalar>(a: &SquareMatrix<R>, tol: R) -> Result<bool, Error> {
    assert!(tol >= R::zero(), "tolerance must be nonnegative");
    Ok(eigh(a)?.min_eigenvalue() >= -tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal;
    use crate::matrix::{DiagonalVector, MatrixKind};
    use crate::rng::{random_matrix, Distribution, SplitMix64};

    type M = SquareMatrix<f64>;

    const SQRT3: f64 = 1.7320508075688772;

    fn jn_minus_in(n: usize) -> M {
        extremal::jn_minus_in(n).unwrap()
    }

    #[test]
    fn eigh_rank_one() {
        let dec = eigh(&M::all_ones(2)).unwrap();
        assert!((dec.eigenvalues()[0] - 2.0).abs() < 1e-14);
        assert!(dec.eigenvalues()[1].abs() < 1e-14);
    }

    #[test]
    fn eigh_complete_graph_spectrum() {
        let dec = eigh(&jn_minus_in(5)).unwrap();
        let expect = [4.0, -1.0, -1.0, -1.0, -1.0];
        for (got, want) in dec.eigenvalues().iter().zip(expect) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn eigh_e_matrix_order_three() {
        let dec = eigh(&extremal::e_matrix::<f64>(3).unwrap()).unwrap();
        let expect = [SQRT3, 0.0, -SQRT3];
        for (got, want) in dec.eigenvalues().iter().zip(expect) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn eigh_residuals_small_on_random_hermitian() {
        for seed in 0..20 {
            let a = random_matrix::<f64>(MatrixKind::Hermitian, 12, Distribution::Gaussian, false, seed)
                .unwrap();
            let dec = eigh(&a).unwrap();
            let resid = a.sub(&dec.reconstruct()).unwrap().frobenius_norm();
            let scale = a.frobenius_norm().max(1.0);
            assert!(resid <= 1e-10 * scale, "reconstruction residual {resid}");
            assert!(dec.orthonormality_residual() <= 1e-10);
        }
    }

    #[test]
    fn eigh_keeps_real_input_real() {
        let a = random_matrix::<f64>(MatrixKind::RealSymmetric, 9, Distribution::Gaussian, false, 3)
            .unwrap();
        let dec = eigh(&a).unwrap();
        for k in 0..9 {
            assert!(dec.eigenvector(k).iter().all(|z| z.im == 0.0));
        }
    }

    #[test]
    fn trace_and_spectral_norm_fixtures() {
        for n in 2..=7 {
            let tn = trace_norm(&jn_minus_in(n)).unwrap();
            assert!((tn - (2 * n - 2) as f64).abs() < 1e-10);
        }
        for n in 2..=7 {
            let e = extremal::e_matrix::<f64>(n).unwrap();
            let want = (std::f64::consts::PI / (2 * n) as f64).tan().recip();
            assert!((spectral_norm(&e).unwrap() - want).abs() < 1e-10);
        }
        // 11* - aa* has the two nonzero eigenvalues n and -n.
        for n in 2..=6 {
            let a = extremal::herm_extremal::<f64>(n).unwrap();
            assert!((trace_norm(&a).unwrap() - (2 * n) as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn pos_neg_parts_psd_input() {
        // Gram matrix: exactly PSD.
        let x = [0.7, -1.3, 0.4];
        let a = M::from_upper(MatrixKind::RealSymmetric, 3, |i, j| {
            num_complex::Complex::new(x[i] * x[j], 0.0)
        });
        let (plus, minus) = pos_neg_parts(&a).unwrap();
        assert!(a.sub(&plus).unwrap().frobenius_norm() <= 1e-12 * a.frobenius_norm());
        assert!(minus.frobenius_norm() <= 1e-12 * a.frobenius_norm());
    }

    #[test]
    fn pos_neg_parts_two_by_two() {
        let a = jn_minus_in(2);
        let (plus, minus) = pos_neg_parts(&a).unwrap();
        let want_plus = M::from_real_rows(&[vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        let want_minus = M::from_real_rows(&[vec![0.5, -0.5], vec![-0.5, 0.5]]).unwrap();
        assert!(plus.sub(&want_plus).unwrap().frobenius_norm() < 1e-12);
        assert!(minus.sub(&want_minus).unwrap().frobenius_norm() < 1e-12);
    }

    #[test]
    fn pos_neg_parts_share_diagonal_for_zero_diag_input() {
        for seed in 0..10 {
            let a = random_matrix::<f64>(MatrixKind::Hermitian, 6, Distribution::Gaussian, true, seed)
                .unwrap();
            let (plus, minus) = pos_neg_parts(&a).unwrap();
            let scale = a.frobenius_norm().max(1.0);
            assert!(a.sub(&plus.sub(&minus).unwrap()).unwrap().frobenius_norm() <= 1e-10 * scale);
            for (dp, dm) in plus
                .diag_vector()
                .values()
                .iter()
                .zip(minus.diag_vector().values())
            {
                assert!((dp - dm).abs() <= 1e-10 * scale);
            }
            // tr(A+) + tr(A-) equals the trace norm, which for zero-diagonal
            // input is twice the shared diagonal sum.
            let tr_plus: f64 = plus.diag_vector().values().iter().sum();
            let tr_minus: f64 = minus.diag_vector().values().iter().sum();
            let tn = trace_norm(&a).unwrap();
            assert!((tr_plus + tr_minus - tn).abs() <= 1e-10 * tn.max(1.0));
            assert!((2.0 * tr_plus - tn).abs() <= 1e-10 * tn.max(1.0));
            // The split parts are spectrally orthogonal.
            let ip = plus.frobenius_inner(&minus).unwrap();
            assert!(ip.abs() <= 1e-9 * a.frobenius_norm().powi(2).max(1.0));
        }
    }

    #[test]
    fn is_psd_examples() {
        assert!(is_psd(&M::identity(4), 0.0).unwrap());
        assert!(!is_psd(&jn_minus_in(3), 1e-10).unwrap());
        let mut rng = SplitMix64::new(11);
        let x: Vec<num_complex::Complex<f64>> = (0..5)
            .map(|_| num_complex::Complex::new(rng.next_gaussian(), rng.next_gaussian()))
            .collect();
        let gram = M::from_upper(MatrixKind::Hermitian, 5, |i, j| x[i] * x[j].conj());
        assert!(is_psd(&gram, 1e-10).unwrap());
    }

    #[test]
    fn eigenvalues_scale_equivariantly() {
        let a = random_matrix::<f64>(MatrixKind::Hermitian, 7, Distribution::Gaussian, false, 21)
            .unwrap();
        let c = -2.75;
        let base = eigh(&a).unwrap();
        let scaled = eigh(&a.scale(c)).unwrap();
        let mut want: Vec<f64> = base.eigenvalues().iter().map(|l| l * c).collect();
        want.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (got, want) in scaled.eigenvalues().iter().zip(want) {
            assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0));
        }
    }

    #[test]
    fn eigh_handles_diagonal_and_tiny_orders() {
        let a = M::from_real_rows(&[vec![3.0]]).unwrap();
        let dec = eigh(&a).unwrap();
        assert_eq!(dec.eigenvalues(), &[3.0]);
        let d = M::identity(4)
            .subtract_diag(&DiagonalVector::new(vec![0.0, 2.0, -1.0, 5.0]))
            .unwrap();
        let dec = eigh(&d).unwrap();
        assert_eq!(dec.eigenvalues(), &[2.0, 1.0, -1.0, -4.0]);
    }
}
