//! The nearest-diagonal-matrix problem: minimize `||A - diag(d)||` in the
//! spectral norm over real diagonal vectors `d`.
//!
//! The objective is convex and nonsmooth (a max of two extreme-eigenvalue
//! branches); the solver runs a multistart projected subgradient descent with
//! a Polyak step when a dual certificate is available. Weak duality supplies
//! the certificate: any zero-diagonal matrix `B` with unit trace norm gives
//! the lower bound `<A, B>` on the minimum. A brute-force grid search over
//! `d` doubles as an independent oracle at tiny orders.
//!
//! For matrices with off-diagonal entries of modulus at most 1 the minimum
//! never exceeds `n/2` (real symmetric) or `cot(pi / 2n)` (Hermitian); `J_n`
//! and the unit-modulus fixtures in [`crate::extremal`] attain these values.
//!
//! A possible extension is bisection on `r` with a semidefinite feasibility
//! test of `-rI <= A - diag(d) <= rI`; that needs an inner optimizer of its
//! own, so it is not implemented here.

use crate::error::Error;
use crate::matrix::{DiagonalVector, SquareMatrix};
use crate::rng::SplitMix64;
use crate::scalar::{count, lit, Scalar};
use crate::spectral::{eigh, trace_norm};

/// Subgradient step-size policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepRule {
    /// `(f_k - lower_bound) / ||g||^2`; falls back to the diminishing rule
    /// when no certificate exists.
    PolyakWithLb,
    /// `c / sqrt(k)` with `c` the spectral norm of the input.
    Diminishing,
}

/// Options for [`solve`].
#[derive(Debug, Clone)]
pub struct SolverOptions<R> {
    /// Iteration cap per restart.
    pub max_iters: usize,
    /// Convergence threshold on the duality gap.
    pub tol: R,
    /// Number of starts: the diagonal of `A`, zero, the eigenvalue midpoint,
    /// then seeded random vectors.
    pub restarts: usize,
    pub step_rule: StepRule,
    /// Seed for the random starts.
    pub seed: u64,
}

impl<R: Scalar> Default for SolverOptions<R> {
    fn default() -> Self {
        SolverOptions {
            max_iters: 5000,
            tol: lit(1e-7),
            restarts: 4,
            step_rule: StepRule::PolyakWithLb,
            seed: 0,
        }
    }
}

/// Best diagonal found, its objective value, and the dual certificate.
#[derive(Debug, Clone)]
pub struct NearDiagResult<R> {
    pub d_star: DiagonalVector<R>,
    /// `||A - diag(d_star)||` in the spectral norm.
    pub value: R,
    /// Best known dual lower bound on the minimum; 0 when no certificate
    /// exists (e.g. a diagonal input).
    pub lower_bound: R,
    /// `value - lower_bound`.
    pub gap: R,
    /// Total subgradient iterations across restarts.
    pub iterations: usize,
    /// True when the gap closed below `tol` or the best value stalled; false
    /// when every restart exhausted its iteration cap while still improving.
    pub converged: bool,
}

/// `||A - diag(d)||` in the spectral norm; convex in `d`.
pub fn objective<R: Scalar>(a: &SquareMatrix<R>, d: &DiagonalVector<R>) -> Result<R, Error> {
    Ok(eigh(&a.subtract_diag(d)?)?.spectral_norm())
}

/// A subgradient of the objective at `d`.
///
/// With extreme eigenpairs `(lambda_max, u)` and `(lambda_min, v)` of
/// `A - diag(d)`: the top branch contributes `-|u_i|^2`, the bottom branch
/// `+|v_i|^2`, and within a tie band of `1e-10` times the spectral scale the
/// two are averaged, which keeps iterates stable where both branches are
/// active (including the optimum of symmetric-spectrum inputs, where the
/// average vanishes and certifies optimality).
pub fn subgradient<R: Scalar>(a: &SquareMatrix<R>, d: &DiagonalVector<R>) -> Result<Vec<R>, Error> {
    let dec = eigh(&a.subtract_diag(d)?)?;
    Ok(subgradient_from_parts(
        dec.eigenvalues(),
        dec.eigenvector(0),
        dec.eigenvector(dec.n() - 1),
    ))
}

fn subgradient_from_parts<R: Scalar>(
    eigenvalues: &[R],
    top: &[num_complex::Complex<R>],
    bottom: &[num_complex::Complex<R>],
) -> Vec<R> {
    let hi = eigenvalues[0];
    let lo = *eigenvalues.last().expect("positive order");
    let tie_band = lit::<R>(1e-10) * hi.abs().max(lo.abs());
    let half = lit::<R>(0.5);
    if hi >= -lo + tie_band {
        top.iter().map(|z| -z.norm_sqr()).collect()
    } else if -lo >= hi + tie_band {
        bottom.iter().map(|z| z.norm_sqr()).collect()
    } else {
        top.iter()
            .zip(bottom)
            .map(|(u, v)| (v.norm_sqr() - u.norm_sqr()) * half)
            .collect()
    }
}

/// Weak-duality lower bound `<A, B> / trace_norm(B)` on the nearest-diagonal
/// distance, valid for any nonzero zero-diagonal `B` of the same order.
pub fn dual_lower_bound<R: Scalar>(
    a: &SquareMatrix<R>,
    b: &SquareMatrix<R>,
) -> Result<R, Error> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            got: b.n(),
        });
    }
    if b.entrywise_max() == R::zero() {
        return Err(Error::ZeroMatrix);
    }
    if !b.is_zero_diag(b.zero_diag_tol()) {
        return Err(Error::NonZeroDiagonal);
    }
    let tn = trace_norm(b)?;
    if tn == R::zero() {
        return Err(Error::ZeroMatrix);
    }
    Ok(a.frobenius_inner(b)? / tn)
}

/// Multistart projected subgradient descent for the nearest-diagonal problem.
/// Always returns the best diagonal found; see [`NearDiagResult::converged`]
/// for the termination mode.
///
/// Each iterate is first centered: adding `(lambda_max + lambda_min)/2` of
/// the residual to every diagonal component is the exact minimizer along the
/// all-ones direction and costs nothing (the spectrum is already in hand).
/// After centering both eigenvalue branches tie, so the averaged subgradient
/// applies. The Polyak rule targets the dual certificate when it is tight
/// and otherwise tracks an adaptively halved level gap, which drives the
/// value to the minimum without a sharp lower bound.
pub fn solve<R: Scalar>(a: &SquareMatrix<R>, opts: &SolverOptions<R>) -> Result<NearDiagResult<R>, Error> {
    let n = a.n();
    assert!(opts.max_iters >= 1 && opts.tol > R::zero(), "invalid solver options");
    if n == 1 {
        let d = a.diag_vector();
        return Ok(NearDiagResult {
            d_star: d,
            value: R::zero(),
            lower_bound: R::zero(),
            gap: R::zero(),
            iterations: 0,
            converged: true,
        });
    }

    // Built-in certificate: the normalized zero-diagonal part of A.
    let off = a.zero_diag_part();
    let lower_bound = if off.entrywise_max() > R::zero() {
        dual_lower_bound(a, &off)?
    } else {
        R::zero()
    };

    let full = eigh(a)?;
    let spectral_scale = full.spectral_norm().max(R::one());
    let midpoint = (full.eigenvalues()[0] + full.min_eigenvalue()) * lit::<R>(0.5);
    let half = lit::<R>(0.5);

    let mut rng = SplitMix64::new(opts.seed);
    let restarts = opts.restarts.max(1);
    let mut best_d: Option<Vec<R>> = None;
    let mut best_value = R::infinity();
    let mut total_iterations = 0usize;
    let mut converged = false;

    'restarts: for r in 0..restarts {
        let mut d: Vec<R> = match r {
            0 => a.diag_vector().into_values(),
            1 => vec![R::zero(); n],
            2 => vec![midpoint; n],
            _ => (0..n)
                .map(|_| lit::<R>(rng.next_gaussian()) * spectral_scale)
                .collect(),
        };

        let mut restart_best = R::infinity();
        let mut level_gap = R::nan(); // set after the first evaluation
        let mut fails = 0usize;
        let mut window_best = R::infinity();
        for k in 1..=opts.max_iters {
            total_iterations += 1;
            let dec = eigh(&a.subtract_diag(&DiagonalVector::new(d.clone()))?)?;
            let hi = dec.eigenvalues()[0];
            let lo = dec.min_eigenvalue();
            // Center: absorb the optimal all-ones shift.
            let shift = (hi + lo) * half;
            for di in d.iter_mut() {
                *di = *di + shift;
            }
            let f = (hi - lo) * half;
            if f < restart_best {
                restart_best = f;
                if f < best_value {
                    best_value = f;
                    best_d = Some(d.clone());
                }
                fails = 0;
            } else {
                fails += 1;
            }
            if best_value <= lower_bound + opts.tol {
                converged = true;
                break 'restarts;
            }
            // Averaged subgradient: both branches are active after centering.
            let g: Vec<R> = dec
                .eigenvector(0)
                .iter()
                .zip(dec.eigenvector(n - 1))
                .map(|(u, v)| (v.norm_sqr() - u.norm_sqr()) * half)
                .collect();
            let gnorm2: R = g.iter().map(|&x| x * x).sum();
            if gnorm2 == R::zero() {
                // Both branch weights match: stationary, hence optimal.
                converged = true;
                break 'restarts;
            }
            let step = match opts.step_rule {
                StepRule::PolyakWithLb => {
                    if level_gap.is_nan() {
                        level_gap = ((f - lower_bound) * half).max(opts.tol);
                    }
                    if fails >= 20 {
                        level_gap = level_gap * half;
                        fails = 0;
                    }
                    if level_gap <= lit::<R>(1e-13) * spectral_scale {
                        converged = true; // stalled at machine precision
                        break;
                    }
                    let target = lower_bound.max(restart_best - level_gap);
                    (f - target).max(R::zero()) / gnorm2
                }
                StepRule::Diminishing => spectral_scale / count::<R>(k).sqrt(),
            };
            if step == R::zero() {
                fails += 1;
                continue;
            }
            for (di, gi) in d.iter_mut().zip(&g) {
                *di = *di - step * *gi;
            }
            // Stall detection for the diminishing rule: no relative progress
            // over a 50-iteration window.
            if opts.step_rule == StepRule::Diminishing && k % 50 == 0 {
                if window_best - restart_best
                    <= lit::<R>(1e-10) * restart_best.abs().max(R::one())
                {
                    converged = true;
                    break;
                }
                window_best = restart_best;
            }
        }
    }

    let d_star = best_d.expect("at least one iteration ran");
    Ok(NearDiagResult {
        d_star: DiagonalVector::new(d_star),
        value: best_value,
        lower_bound,
        gap: best_value - lower_bound,
        iterations: total_iterations,
        converged,
    })
}

/// Result of [`brute_oracle`]: the grid minimum and the coarse grid step.
#[derive(Debug, Clone, Copy)]
pub struct GridMinimum<R> {
    pub value: R,
    /// Spacing of the initial full-box pass. The objective is 1-Lipschitz in
    /// `max_i |d_i|` and convex, so the grid minimum overestimates the true
    /// minimum by at most half this step; the refinement passes improve the
    /// value in practice but carry no guarantee beyond it (the coarse
    /// incumbent may sit far along a flat valley).
    pub step: R,
}

/// Independent brute-force oracle for orders up to 3: minimizes the
/// objective over a uniform grid of `d` in `[-w, w]^n` with
/// `w = spectral_norm(A) + entrywise_max(A)` (overridable), then runs two
/// refinement passes around the incumbent.
pub fn brute_oracle<R: Scalar>(
    a: &SquareMatrix<R>,
    grid_points: usize,
    halfwidth: Option<R>,
) -> Result<GridMinimum<R>, Error> {
    let n = a.n();
    if n > 3 {
        return Err(Error::OrderTooLarge { n, max: 3 });
    }
    if grid_points < 2 {
        return Err(Error::InvalidArguments("need at least 2 grid points per axis".into()));
    }
    let w = match halfwidth {
        Some(w) => w,
        None => eigh(a)?.spectral_norm() + a.entrywise_max(),
    };
    let spacing = |h: R| (h + h) / count::<R>(grid_points - 1);

    let mut center = vec![R::zero(); n];
    let mut half = w.max(lit::<R>(1e-12));
    let mut best_value = R::infinity();
    let mut best_d = center.clone();
    let coarse_step = spacing(half);
    for _pass in 0..3 {
        let step = spacing(half);
        let mut idx = vec![0usize; n];
        loop {
            let d: Vec<R> = (0..n)
                .map(|i| center[i] - half + step * count::<R>(idx[i]))
                .collect();
            let f = objective(a, &DiagonalVector::new(d.clone()))?;
            if f < best_value {
                best_value = f;
                best_d = d;
            }
            // odometer over the n-dimensional grid
            let mut axis = 0;
            loop {
                if axis == n {
                    break;
                }
                idx[axis] += 1;
                if idx[axis] < grid_points {
                    break;
                }
                idx[axis] = 0;
                axis += 1;
            }
            if axis == n {
                break;
            }
        }
        center = best_d.clone();
        half = step;
    }
    Ok(GridMinimum {
        value: best_value,
        step: coarse_step,
    })
}
