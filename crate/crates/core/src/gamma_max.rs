//! Maximization of `F(d, omega) = sum_{i,j} d_i d_j |omega_i - omega_j|`
//! over probability vectors `d` and unit-modulus `omega`.
//!
//! Angles parameterize the circle as `omega_k = exp(2 i theta_k)` with
//! `theta_k` in `[0, pi)`, so `|omega_i - omega_j| = 2 |sin(theta_i -
//! theta_j)|` holds globally. The maximum value is `gamma_n`, attained
//! exactly at uniform weights on the angle grid `theta_k = k pi / n` (the
//! n-th roots of unity), unique up to rotation, reflection, and permutation.
//!
//! The solver alternates a closed-form weight update (the stationarity
//! system `A(omega) d = lambda 1`) with projected/backtracking gradient
//! ascent, over multiple restarts; a brute-force grid search provides an
//! independent lower-bound oracle at small orders.

use crate::error::Error;
use crate::scalar::{count, lit, Scalar};
use crate::rng::SplitMix64;

/// Minimum angle separation below which the gradient of `F` is treated as
/// undefined (the `|sin|` kink).
pub const ANGLE_SEP: f64 = 1e-9;

const MAX_OUTER: usize = 200;
const THETA_STEPS_PER_OUTER: usize = 40;
const ARMIJO_C: f64 = 1e-4;
const INITIAL_STEP: f64 = 0.1;
const STRUCTURE_TOL: f64 = 1e-4;

/// A feasible point: simplex weights `d` and angles `theta` in `[0, pi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchPoint<R> {
    d: Vec<R>,
    theta: Vec<R>,
}

impl<R: Scalar> SearchPoint<R> {
    /// Validates the simplex constraint (`sum d = 1` within `1e-12`, all
    /// components nonnegative) and the angle range.
    pub fn new(d: Vec<R>, theta: Vec<R>) -> Result<Self, Error> {
        if d.is_empty() || d.len() != theta.len() {
            return Err(Error::InvalidArguments(
                "weights and angles must have equal positive length".into(),
            ));
        }
        if d.iter().any(|&x| x < R::zero()) {
            return Err(Error::InvalidArguments("weights must be nonnegative".into()));
        }
        let sum: R = d.iter().copied().sum();
        if (sum - R::one()).abs() > lit::<R>(1e-12) {
            return Err(Error::InvalidArguments("weights must sum to 1".into()));
        }
        if theta.iter().any(|&t| t < R::zero() || t >= R::PI()) {
            return Err(Error::InvalidArguments("angles must lie in [0, pi)".into()));
        }
        Ok(SearchPoint { d, theta })
    }

    fn new_unchecked(d: Vec<R>, theta: Vec<R>) -> Self {
        SearchPoint { d, theta }
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn weights(&self) -> &[R] {
        &self.d
    }

    pub fn angles(&self) -> &[R] {
        &self.theta
    }

    /// Gauge-fixed copy: angles reduced mod pi, sorted ascending with the
    /// weights permuted along, rotated so the first angle is 0, and weights
    /// renormalized to sum exactly to 1.
    pub fn canonicalize(&self) -> SearchPoint<R> {
        let (d, theta) = canonical_parts(&self.d, &self.theta);
        SearchPoint::new_unchecked(d, theta)
    }
}

fn canonical_parts<R: Scalar>(d: &[R], theta: &[R]) -> (Vec<R>, Vec<R>) {
    let pi = R::PI();
    let mut pairs: Vec<(R, R)> = theta
        .iter()
        .zip(d.iter())
        .map(|(&t, &w)| {
            let mut t = t % pi;
            if t < R::zero() {
                t = t + pi;
            }
            if t >= pi {
                t = R::zero(); // rounding at the seam
            }
            (t, w)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"));
    let base = pairs[0].0;
    let theta: Vec<R> = pairs.iter().map(|&(t, _)| t - base).collect();
    let mut d: Vec<R> = pairs.iter().map(|&(_, w)| w).collect();
    let total: R = d.iter().copied().sum();
    if total > R::zero() {
        for w in &mut d {
            *w = *w / total;
        }
    }
    (d, theta)
}

/// `F` at a feasible point: `4 sum_{i<j} d_i d_j |sin(theta_i - theta_j)|`
/// (each unordered pair appears twice in the double sum over `i, j`).
pub fn f_value<R: Scalar>(p: &SearchPoint<R>) -> R {
    f_raw(&p.d, &p.theta)
}

fn f_raw<R: Scalar>(d: &[R], theta: &[R]) -> R {
    let four = lit::<R>(4.0);
    let mut acc = R::zero();
    for i in 0..d.len() {
        for j in (i + 1)..d.len() {
            acc = acc + d[i] * d[j] * (theta[i] - theta[j]).sin().abs();
        }
    }
    four * acc
}

/// Gradient of `F` in the angles, valid while all pairwise angle gaps exceed
/// [`ANGLE_SEP`]: `dF/dtheta_i = 4 d_i sum_{j != i} d_j sgn(sin(theta_i -
/// theta_j)) cos(theta_i - theta_j)`.
pub fn angle_gradient<R: Scalar>(p: &SearchPoint<R>) -> Result<Vec<R>, Error> {
    let n = p.n();
    for i in 0..n {
        for j in (i + 1)..n {
            if (p.theta[i] - p.theta[j]).abs() < lit::<R>(ANGLE_SEP) {
                return Err(Error::CoincidentAngles { i, j });
            }
        }
    }
    Ok(grad_raw(&p.d, &p.theta))
}

fn grad_raw<R: Scalar>(d: &[R], theta: &[R]) -> Vec<R> {
    let n = d.len();
    let four = lit::<R>(4.0);
    (0..n)
        .map(|i| {
            let mut acc = R::zero();
            for j in 0..n {
                if j != i {
                    let delta = theta[i] - theta[j];
                    let sign = if delta.sin() >= R::zero() { R::one() } else { -R::one() };
                    acc = acc + d[j] * sign * delta.cos();
                }
            }
            four * d[i] * acc
        })
        .collect()
}

/// Pairwise chord-length matrix `a_ij = 2 |sin(theta_i - theta_j)|`.
fn chord_matrix<R: Scalar>(theta: &[R]) -> Vec<Vec<R>> {
    let n = theta.len();
    let two = lit::<R>(2.0);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| two * (theta[i] - theta[j]).sin().abs())
                .collect()
        })
        .collect()
}

/// Gaussian elimination with partial pivoting; `None` when the system is
/// numerically singular.
fn solve_linear<R: Scalar>(mut a: Vec<Vec<R>>, mut b: Vec<R>) -> Option<Vec<R>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[pivot][col].abs() <= lit::<R>(1e-12) {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] = a[row][k] - factor * a[col][k];
            }
            b[row] = b[row] - factor * b[col];
        }
    }
    let mut x = vec![R::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in (row + 1)..n {
            acc = acc - a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Euclidean projection onto the probability simplex.
fn project_simplex<R: Scalar>(x: &[R]) -> Vec<R> {
    let mut u = x.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut css = R::zero();
    let mut tau = R::zero();
    let mut rho = 0;
    for (k, &v) in u.iter().enumerate() {
        css = css + v;
        let candidate = (css - R::one()) / count::<R>(k + 1);
        if v - candidate > R::zero() {
            rho = k + 1;
            tau = candidate;
        }
    }
    debug_assert!(rho > 0);
    x.iter().map(|&v| (v - tau).max(R::zero())).collect()
}

/// Maximizes `d^T A d` over the simplex by projected gradient ascent.
fn projected_ascent<R: Scalar>(a: &[Vec<R>], mut d: Vec<R>) -> Vec<R> {
    let n = d.len();
    let quad = |d: &[R]| -> R {
        let mut acc = R::zero();
        for i in 0..n {
            for j in 0..n {
                acc = acc + d[i] * a[i][j] * d[j];
            }
        }
        acc
    };
    let mut f = quad(&d);
    for _ in 0..200 {
        let g: Vec<R> = (0..n)
            .map(|i| {
                let mut acc = R::zero();
                for j in 0..n {
                    acc = acc + a[i][j] * d[j];
                }
                acc + acc
            })
            .collect();
        let mut step = lit::<R>(0.25);
        let mut accepted = false;
        for _ in 0..30 {
            let trial: Vec<R> = d.iter().zip(&g).map(|(&x, &gi)| x + step * gi).collect();
            let trial = project_simplex(&trial);
            let f_trial = quad(&trial);
            if f_trial > f + lit::<R>(1e-15) {
                d = trial;
                f = f_trial;
                accepted = true;
                break;
            }
            step = step * lit::<R>(0.5);
        }
        if !accepted {
            break;
        }
    }
    d
}

/// Best simplex weights for fixed angles: solves the stationarity system
/// `A(omega) x = 1` and normalizes when the solution is strictly positive,
/// otherwise falls back to projected gradient ascent from the uniform point.
/// Always returns a feasible simplex vector.
pub fn d_step<R: Scalar>(theta: &[R]) -> Vec<R> {
    let n = theta.len();
    let uniform = vec![R::one() / count::<R>(n); n];
    if n == 1 {
        return uniform;
    }
    let a = chord_matrix(theta);
    if let Some(x) = solve_linear(a.clone(), vec![R::one(); n]) {
        if x.iter().all(|&v| v > R::zero()) {
            let total: R = x.iter().copied().sum();
            return x.iter().map(|&v| v / total).collect();
        }
    }
    projected_ascent(&a, uniform)
}

/// Output of [`alternating_maximize`].
#[derive(Debug, Clone)]
pub struct MaximizeResult<R> {
    /// Canonicalized best point over all restarts.
    pub best: SearchPoint<R>,
    /// `f_value` at `best`.
    pub value: R,
    pub restarts_used: usize,
    /// Whether the best restart terminated by `|delta F| <= 1e-12` rather
    /// than by the iteration cap.
    pub converged: bool,
    /// Whether `best` matches uniform weights on the n-th-roots angle grid
    /// up to rotation, reflection, and permutation (tolerance `1e-4`).
    pub structure_match: bool,
}

struct RestartOutcome<R> {
    d: Vec<R>,
    theta: Vec<R>,
    converged: bool,
    /// `F` after each outer iteration; exercised by the ascent tests.
    #[cfg_attr(not(test), allow(dead_code))]
    history: Vec<R>,
}

/// Backtracking gradient ascent in the angles for fixed weights; mutates
/// `theta` and returns the attained value.
fn ascend_angles<R: Scalar>(d: &[R], theta: &mut Vec<R>, mut f: R) -> R {
    for _ in 0..THETA_STEPS_PER_OUTER {
        let g = grad_raw(d, theta);
        let gnorm2: R = g.iter().map(|&x| x * x).sum();
        if gnorm2 <= lit::<R>(1e-28) {
            break;
        }
        let mut step = lit::<R>(INITIAL_STEP);
        let mut accepted = false;
        for _ in 0..45 {
            let trial: Vec<R> = theta.iter().zip(&g).map(|(&t, &gi)| t + step * gi).collect();
            let f_trial = f_raw(d, &trial);
            if f_trial >= f + lit::<R>(ARMIJO_C) * step * gnorm2 {
                *theta = trial;
                f = f_trial;
                accepted = true;
                break;
            }
            step = step * lit::<R>(0.5);
        }
        if !accepted {
            break;
        }
    }
    f
}

/// One alternating run from a given start; the kept iterate never decreases
/// `F` (candidate updates are rejected unless they improve).
fn run_restart<R: Scalar>(d0: Vec<R>, theta0: Vec<R>) -> RestartOutcome<R> {
    let mut d = d0;
    let mut theta = theta0;
    let mut f = f_raw(&d, &theta);
    let mut history = vec![f];
    let mut converged = false;

    for _ in 0..MAX_OUTER {
        // Weight update (kept only when it improves).
        let cand = d_step(&theta);
        let f_cand = f_raw(&cand, &theta);
        if f_cand > f {
            d = cand;
            f = f_cand;
        } else {
            let polished = projected_ascent(&chord_matrix(&theta), d.clone());
            let f_pol = f_raw(&polished, &theta);
            if f_pol > f {
                d = polished;
                f = f_pol;
            }
        }

        f = ascend_angles(&d, &mut theta, f);

        let stalled = (f - *history.last().expect("nonempty")).abs() <= lit::<R>(1e-12);
        if stalled {
            // The gradient is undefined across coincident angles (the |sin|
            // kink). Nudge such pairs apart and retry the ascent once; keep
            // the escape only if it actually gained.
            let n = theta.len();
            let mut nudged = theta.clone();
            let mut any = false;
            for i in 0..n {
                for j in (i + 1)..n {
                    if (nudged[i] - nudged[j]).sin().abs() < lit::<R>(ANGLE_SEP) {
                        nudged[j] = nudged[j] + lit::<R>(1e-7);
                        any = true;
                    }
                }
            }
            if any {
                let mut escape_theta = nudged;
                let f_nudged = f_raw(&d, &escape_theta);
                let f_escape = ascend_angles(&d, &mut escape_theta, f_nudged);
                if f_escape > f {
                    theta = escape_theta;
                    f = f_escape;
                }
            }
        }

        history.push(f);
        let len = history.len();
        if (history[len - 1] - history[len - 2]).abs() <= lit::<R>(1e-12) {
            converged = true;
            break;
        }
    }

    RestartOutcome {
        d,
        theta,
        converged,
        history,
    }
}

fn lex_less<R: Scalar>(a: (&[R], &[R]), b: (&[R], &[R])) -> bool {
    for (x, y) in a.0.iter().zip(b.0).chain(a.1.iter().zip(b.1)) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Multistart alternating maximization of `F` for order `n`.
///
/// The first restart starts at the known maximizer (uniform weights, angle
/// grid `k pi / n`); the remaining restarts draw sorted uniform angles from
/// the seeded stream. The best point is selected by value, ties broken by
/// the lexicographically smaller canonical point.
pub fn alternating_maximize<R: Scalar>(n: usize, restarts: usize, rng_seed: u64) -> MaximizeResult<R> {
    assert!(n >= 1, "order must be positive");
    assert!(restarts >= 1, "at least one restart required");
    let mut rng = SplitMix64::new(rng_seed);
    let uniform = vec![R::one() / count::<R>(n); n];

    let mut best: Option<(Vec<R>, Vec<R>, R, bool)> = None;
    for r in 0..restarts {
        let theta0: Vec<R> = if r == 0 {
            (0..n).map(|k| R::PI() * count::<R>(k) / count::<R>(n)).collect()
        } else {
            let mut t: Vec<R> = (0..n).map(|_| lit::<R>(rng.next_unit()) * R::PI()).collect();
            t.sort_by(|a, b| a.partial_cmp(b).unwrap());
            t
        };
        let outcome = run_restart(uniform.clone(), theta0);
        let (d_c, theta_c) = canonical_parts(&outcome.d, &outcome.theta);
        let value = f_raw(&d_c, &theta_c);
        let replace = match &best {
            None => true,
            Some((bd, bt, bv, _)) => {
                value > *bv
                    || (value == *bv && lex_less((&theta_c, &d_c), (bt, bd)))
            }
        };
        if replace {
            best = Some((d_c, theta_c, value, outcome.converged));
        }
    }

    let (d, theta, value, converged) = best.expect("restarts >= 1");
    let point = SearchPoint::new_unchecked(d, theta);
    let structure_match = verify_maximizer_structure(&point, lit::<R>(STRUCTURE_TOL));
    MaximizeResult {
        best: point,
        value,
        restarts_used: restarts,
        converged,
        structure_match,
    }
}

/// Brute-force lower bound on the maximum of `F` for `n` in `{2, 3}`:
/// gauge-fixed angle tuples on a uniform grid of `resolution` points per
/// angle, crossed with a simplex grid of step `1/100`.
///
/// Any resolution yields a valid lower bound; closing in on the maximum to
/// within a few parts in a thousand needs 90+ points per angle.
pub fn grid_oracle<R: Scalar>(n: usize, resolution: usize) -> Result<R, Error> {
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    if n > 3 {
        return Err(Error::OrderTooLarge { n, max: 3 });
    }
    if resolution < 2 {
        return Err(Error::InvalidArguments(
            "need at least 2 grid points per angle".into(),
        ));
    }
    const SIMPLEX_STEPS: usize = 100;
    let k = count::<R>(SIMPLEX_STEPS);
    let four = lit::<R>(4.0);
    let angle = |i: usize| R::PI() * count::<R>(i) / count::<R>(resolution);
    let mut best = R::zero();
    match n {
        2 => {
            for a in 0..resolution {
                let s = angle(a).sin().abs();
                for i in 0..=SIMPLEX_STEPS {
                    let d1 = count::<R>(i) / k;
                    let f = four * d1 * (R::one() - d1) * s;
                    best = best.max(f);
                }
            }
        }
        3 => {
            for a2 in 0..resolution {
                for a3 in a2..resolution {
                    let t2 = angle(a2);
                    let t3 = angle(a3);
                    let s12 = t2.sin().abs();
                    let s13 = t3.sin().abs();
                    let s23 = (t3 - t2).sin().abs();
                    for i in 0..=SIMPLEX_STEPS {
                        for j in 0..=(SIMPLEX_STEPS - i) {
                            let d1 = count::<R>(i) / k;
                            let d2 = count::<R>(j) / k;
                            let d3 = R::one() - d1 - d2;
                            let f = four * (d1 * d2 * s12 + d1 * d3 * s13 + d2 * d3 * s23);
                            best = best.max(f);
                        }
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(best)
}

/// True iff the canonical form of `p` matches uniform weights on the angle
/// grid `k pi / n` within `tol`, allowing rotation (cyclic offsets mod pi),
/// reflection, and permutation.
pub fn verify_maximizer_structure<R: Scalar>(p: &SearchPoint<R>, tol: R) -> bool {
    let canon = p.canonicalize();
    let n = canon.n();
    let uniform = R::one() / count::<R>(n);
    if canon.d.iter().any(|&w| (w - uniform).abs() > tol) {
        return false;
    }
    let target: Vec<R> = (0..n)
        .map(|k| R::PI() * count::<R>(k) / count::<R>(n))
        .collect();

    let direct = canon.theta.clone();
    let mut reflected: Vec<R> = canon
        .theta
        .iter()
        .map(|&t| {
            let r = (R::PI() - t) % R::PI();
            if r < R::zero() {
                r + R::PI()
            } else {
                r
            }
        })
        .collect();
    reflected.sort_by(|a, b| a.partial_cmp(b).unwrap());

    for angles in [&direct, &reflected] {
        for offset in 0..n {
            let matches = (0..n).all(|k| {
                let idx = (offset + k) % n;
                let wrap = if offset + k >= n { R::PI() } else { R::zero() };
                let shifted = angles[idx] - angles[offset] + wrap;
                (shifted - target[k]).abs() <= tol
            });
            if matches {
                return true;
            }
        }
    }
    false
}
