//! The gamma constants, the trace-norm lower-bound checkers for
//! zero-diagonal matrices, and the exhaustive minimum-energy search over
//! sign matrices.
//!
//! For a nonzero zero-diagonal matrix of order `n` the ratio
//! `trace_norm / entrywise_l1` is at least `2/n` in the real symmetric case
//! and at least `tan(pi / 2n)` in the Hermitian case; both bounds are tight.
//! The constant `gamma_n = 2 / (n tan(pi / 2n))` links the two:
//! `tan(pi / 2n) = (2/n) / gamma_n`.

use crate::error::Error;
use crate::matrix::{order_as_scalar, MatrixKind, SquareMatrix};
use crate::scalar::{count, lit, Scalar};
use crate::spectral::trace_norm;

/// Relative slack below the bound at which a report is declared failing.
pub const VERDICT_REL_TOL: f64 = 1e-9;
/// Relative slack magnitude below which a report is declared an equality case.
pub const EQUALITY_REL_TOL: f64 = 1e-9;

/// `gamma_n` evaluated by two independent routes: the sine sum
/// `(2/n) sum_{k=0}^{n-1} sin(k pi / n)` and the closed form
/// `2 / (n tan(pi / 2n))` (defined as 0 at `n = 1` by continuity).
#[derive(Debug, Clone, Copy)]
pub struct GammaValue<R> {
    pub n: usize,
    pub by_sum: R,
    pub by_closed_form: R,
}

/// Computes both forms of `gamma_n`.
///
/// The sum route folds the symmetric terms `sin(k pi / n) = sin((n-k) pi / n)`
/// and accumulates with Kahan compensation, keeping the two routes within
/// `1e-12` of each other up to `n = 10^4` and beyond.
pub fn gamma<R: Scalar>(n: usize) -> GammaValue<R> {
    assert!(n >= 1, "order must be positive");
    if n == 1 {
        return GammaValue {
            n,
            by_sum: R::zero(),
            by_closed_form: R::zero(),
        };
    }
    let n_scalar = count::<R>(n);
    let pi_over_n = R::PI() / n_scalar;

    let mut sum = R::zero();
    let mut comp = R::zero();
    let kahan_add = |x: R, sum: &mut R, comp: &mut R| {
        let y = x - *comp;
        let t = *sum + y;
        *comp = (t - *sum) - y;
        *sum = t;
    };
    let half = if n % 2 == 0 { n / 2 - 1 } else { (n - 1) / 2 };
    for k in 1..=half {
        kahan_add((count::<R>(k) * pi_over_n).sin(), &mut sum, &mut comp);
    }
    let two = R::one() + R::one();
    let mut total = two * sum;
    if n % 2 == 0 {
        total = total + R::one(); // the middle term sin(pi/2)
    }
    let by_sum = two / n_scalar * total;

    let by_closed_form = two / (n_scalar * (R::PI() / (two * n_scalar)).tan());
    GammaValue {
        n,
        by_sum,
        by_closed_form,
    }
}

/// Pass/fail verdict of a bound check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
        }
    }
}

/// All four norm ingredients of a bound check plus the outcome.
///
/// `slack = ratio - bound`; the verdict is `Pass` iff
/// `slack >= -VERDICT_REL_TOL * bound`, and `is_equality` iff
/// `|slack| <= EQUALITY_REL_TOL * bound`.
#[derive(Debug, Clone, Copy)]
pub struct BoundReport<R> {
    pub kind: MatrixKind,
    pub n: usize,
    pub trace_norm: R,
    pub entrywise_l1: R,
    pub ratio: R,
    pub bound: R,
    pub slack: R,
    pub verdict: Verdict,
    pub is_equality: bool,
}

fn make_report<R: Scalar>(
    a: &SquareMatrix<R>,
    bound: R,
) -> Result<BoundReport<R>, Error> {
    let max = a.entrywise_max();
    if max == R::zero() {
        return Err(Error::ZeroMatrix);
    }
    if !a.is_zero_diag(a.zero_diag_tol()) {
        return Err(Error::NonZeroDiagonal);
    }
    let tn = trace_norm(a)?;
    let l1 = a.entrywise_l1();
    let ratio = tn / l1;
    let slack = ratio - bound;
    Ok(BoundReport {
        kind: a.kind(),
        n: a.n(),
        trace_norm: tn,
        entrywise_l1: l1,
        ratio,
        bound,
        slack,
        verdict: if slack >= -lit::<R>(VERDICT_REL_TOL) * bound {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        is_equality: slack.abs() <= lit::<R>(EQUALITY_REL_TOL) * bound,
    })
}

/// Checks `trace_norm >= (2/n) * entrywise_l1` for a nonzero zero-diagonal
/// real symmetric matrix. A failing verdict indicates an implementation bug,
/// not a property of the input.
pub fn check_real_bound<R: Scalar>(a: &SquareMatrix<R>) -> Result<BoundReport<R>, Error> {
    if a.kind() != MatrixKind::RealSymmetric {
        return Err(Error::WrongKind);
    }
    let two = R::one() + R::one();
    make_report(a, two / order_as_scalar::<R>(a.n()))
}

/// Checks `trace_norm >= tan(pi / 2n) * entrywise_l1` for a nonzero
/// zero-diagonal Hermitian matrix (real symmetric input is accepted, being
/// Hermitian).
pub fn check_hermitian_bound<R: Scalar>(a: &SquareMatrix<R>) -> Result<BoundReport<R>, Error> {
    let two = R::one() + R::one();
    let bound = (R::PI() / (two * order_as_scalar::<R>(a.n()))).tan();
    make_report(a, bound)
}

/// Exhaustive minimum of the trace norm over all zero-diagonal symmetric
/// matrices with off-diagonal entries in `{+1, -1}`, for `2 <= n <= 6`.
///
/// Upper-triangle sign patterns are enumerated as bitmasks in ascending
/// order (bit `b` set means entry `-1` for the `b`-th pair `(i, j)`, `i < j`,
/// in row-major order); ties in the minimum keep the lowest bitmask. The
/// minimum is `2n - 2`, attained by `J_n - I_n` (mask 0).
pub fn seidel_min_energy<R: Scalar>(n: usize) -> Result<(R, SquareMatrix<R>), Error> {
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    if n > 6 {
        return Err(Error::OrderTooLarge { n, max: 6 });
    }
    let pairs = n * (n - 1) / 2;
    let mut pair_index = vec![vec![0usize; n]; n];
    {
        let mut b = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                pair_index[i][j] = b;
                b += 1;
            }
        }
    }
    let mut best_value = R::infinity();
    let mut best_matrix: Option<SquareMatrix<R>> = None;
    for mask in 0u32..(1u32 << pairs) {
        let a = SquareMatrix::from_upper(MatrixKind::RealSymmetric, n, |i, j| {
            let v = if i == j {
                R::zero()
            } else if mask >> pair_index[i][j] & 1 == 1 {
                -R::one()
            } else {
                R::one()
            };
            num_complex::Complex::new(v, R::zero())
        });
        let energy = trace_norm(&a)?;
        if energy < best_value {
            best_value = energy;
            best_matrix = Some(a);
        }
    }
    Ok((best_value, best_matrix.expect("at least one mask")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{herm_extremal, jn_minus_in};
    use crate::rng::{random_matrix, Distribution, SplitMix64};

    const GAMMA_3: f64 = 1.1547005383792515;
    const TAN_PI_8: f64 = 0.41421356237309503;

    #[test]
    fn gamma_small_orders() {
        let g1 = gamma::<f64>(1);
        assert_eq!(g1.by_sum, 0.0);
        assert_eq!(g1.by_closed_form, 0.0);
        let g2 = gamma::<f64>(2);
        assert!((g2.by_closed_form - 1.0).abs() <= 1e-15);
        assert!((g2.by_sum - 1.0).abs() <= 1e-15);
        let g3 = gamma::<f64>(3);
        assert!((g3.by_closed_form - GAMMA_3).abs() <= 1e-15);
        assert!((g3.by_sum - GAMMA_3).abs() <= 1e-13);
    }

    #[test]
    fn gamma_routes_agree_and_sequence_is_monotone() {
        let mut prev = 0.0;
        for n in 1..=2000usize {
            let g = gamma::<f64>(n);
            assert!(
                (g.by_sum - g.by_closed_form).abs() <= 1e-12,
                "n = {n}: {} vs {}",
                g.by_sum,
                g.by_closed_form
            );
            assert!(g.by_closed_form > prev || n == 1, "not increasing at n = {n}");
            assert!(g.by_closed_form < 4.0 / std::f64::consts::PI);
            prev = g.by_closed_form;
        }
    }

    #[test]
    fn real_bound_examples() {
        let report = check_real_bound(&jn_minus_in::<f64>(4).unwrap()).unwrap();
        assert!((report.ratio - 0.5).abs() < 1e-12);
        assert_eq!(report.verdict, Verdict::Pass);
        assert!(report.is_equality);

        let a = SquareMatrix::<f64>::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let report = check_real_bound(&a).unwrap();
        assert!((report.ratio - 1.0).abs() < 1e-12);
        assert!(report.is_equality);
    }

    #[test]
    fn real_bound_rejections() {
        assert!(matches!(
            check_real_bound(&SquareMatrix::<f64>::zeros(MatrixKind::RealSymmetric, 3)),
            Err(Error::ZeroMatrix)
        ));
        assert!(matches!(
            check_real_bound(&SquareMatrix::<f64>::all_ones(3)),
            Err(Error::NonZeroDiagonal)
        ));
        assert!(matches!(
            check_real_bound(&crate::extremal::e_matrix::<f64>(3).unwrap()),
            Err(Error::WrongKind)
        ));
    }

    #[test]
    fn hermitian_bound_examples() {
        let report = check_hermitian_bound(&herm_extremal::<f64>(4).unwrap()).unwrap();
        assert!((report.ratio - TAN_PI_8).abs() < 1e-12);
        assert!(report.is_equality);

        let a = crate::extremal::e_matrix::<f64>(2).unwrap();
        let report = check_hermitian_bound(&a).unwrap();
        assert!((report.ratio - 1.0).abs() < 1e-12);
        assert!((report.bound - 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_zero_diag_matrices_respect_bounds() {
        for seed in 0..200u64 {
            let a = random_matrix::<f64>(MatrixKind::RealSymmetric, 6, Distribution::Gaussian, true, seed)
                .unwrap();
            let report = check_real_bound(&a).unwrap();
            assert_eq!(report.verdict, Verdict::Pass, "seed {seed}");
            let h = random_matrix::<f64>(MatrixKind::Hermitian, 5, Distribution::UnitDisk, true, seed)
                .unwrap();
            let report = check_hermitian_bound(&h).unwrap();
            assert_eq!(report.verdict, Verdict::Pass, "seed {seed}");
        }
    }

    #[test]
    fn ratio_is_scale_and_conjugation_invariant() {
        let mut rng = SplitMix64::new(5);
        for _ in 0..25 {
            let seed = rng.next_u64();
            let a = random_matrix::<f64>(MatrixKind::RealSymmetric, 5, Distribution::Gaussian, true, seed)
                .unwrap();
            let base = check_real_bound(&a).unwrap().ratio;
            let c = 2.0 * rng.next_gaussian().abs() + 0.1;
            let scaled = check_real_bound(&a.scale(c)).unwrap().ratio;
            assert!((scaled - base).abs() <= 1e-12 * base.max(1.0));

            // d * D A D for a diagonal sign matrix D keeps the ratio.
            let signs: Vec<f64> = (0..5).map(|_| rng.next_sign()).collect();
            let conj = SquareMatrix::from_upper(MatrixKind::RealSymmetric, 5, |i, j| {
                a.get(i, j).scale(signs[i] * signs[j] * c)
            });
            let conj_ratio = check_real_bound(&conj).unwrap().ratio;
            assert!((conj_ratio - base).abs() <= 1e-12 * base.max(1.0));
        }
    }

    #[test]
    fn hermitian_bound_is_weaker_than_real_bound() {
        for n in 2..=30usize {
            let two_over_n = 2.0 / n as f64;
            let tan_bound = (std::f64::consts::PI / (2 * n) as f64).tan();
            let g = gamma::<f64>(n).by_closed_form;
            assert!(tan_bound <= two_over_n + 1e-15);
            assert!((tan_bound - two_over_n / g).abs() <= 1e-14);
        }
    }

    #[test]
    fn seidel_minimum_small_orders() {
        let (v2, _) = seidel_min_energy::<f64>(2).unwrap();
        assert!((v2 - 2.0).abs() < 1e-10);
        let (v4, arg) = seidel_min_energy::<f64>(4).unwrap();
        assert!((v4 - 6.0).abs() < 1e-8);
        // Lowest-mask argmin is J_n - I_n itself.
        assert_eq!(arg, jn_minus_in::<f64>(4).unwrap());
        assert!(matches!(seidel_min_energy::<f64>(7), Err(Error::OrderTooLarge { .. })));
        assert!(matches!(seidel_min_energy::<f64>(1), Err(Error::OrderTooSmall { .. })));
    }
}
