//! Deterministic random matrix generation on an explicitly specified PRNG.
//!
//! The generator is SplitMix64: the 64-bit state advances by the odd constant
//! `0x9E3779B97F4A7C15` per draw and the output is finalized with the
//! xor-shift/multiply chain (shifts 30/27/31, multipliers
//! `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`). Fixing the algorithm and
//! constants makes every stream reproducible from its seed in any language.
//!
//! Derived draws consume a fixed number of uniforms each: a Gaussian is
//! Box-Muller (`sqrt(-2 ln u1) * cos(2 pi u2)`, two uniforms), a unit-disk
//! point is polar (`r = sqrt(u1)`, angle `2 pi u2`, two uniforms), a sign is
//! the top bit of one raw draw.

use num_complex::Complex;

use crate::error::Error;
use crate::matrix::{MatrixKind, SquareMatrix};
use crate::scalar::{lit, Scalar};

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard Gaussian; consumes exactly two uniforms.
    pub fn next_gaussian(&mut self) -> f64 {
        let u1 = 1.0 - self.next_unit(); // (0, 1], keeps the log finite
        let u2 = self.next_unit();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// `+1.0` or `-1.0` from the top bit of one draw.
    pub fn next_sign(&mut self) -> f64 {
        if self.next_u64() >> 63 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Uniform point in the closed unit disk; consumes exactly two uniforms.
    pub fn next_in_disk(&mut self) -> (f64, f64) {
        let r = self.next_unit().sqrt();
        let phi = 2.0 * std::f64::consts::PI * self.next_unit();
        (r * phi.cos(), r * phi.sin())
    }
}

/// Entry distributions for [`random_matrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distribution {
    /// Standard Gaussian entries (independent real and imaginary parts for
    /// Hermitian matrices).
    Gaussian,
    /// Entries drawn from `{+1, -1}`.
    PmOne,
    /// Complex entries uniform in the closed unit disk; Hermitian kind only.
    UnitDisk,
}

/// Draws a random matrix of the given kind and order, Hermitian by
/// construction and bit-reproducible from `seed`.
///
/// Off-diagonal entries are drawn row-major over the upper triangle, then
/// diagonal entries (real draws) unless `zero_diag` is set.
pub fn random_matrix<R: Scalar>(
    kind: MatrixKind,
    n: usize,
    distribution: Distribution,
    zero_diag: bool,
    seed: u64,
) -> Result<SquareMatrix<R>, Error> {
    if n == 0 {
        return Err(Error::InvalidArguments("order must be positive".into()));
    }
    if distribution == Distribution::UnitDisk && kind == MatrixKind::RealSymmetric {
        return Err(Error::InvalidArguments(
            "unit-disk entries are only defined for Hermitian matrices".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let zero = Complex::new(R::zero(), R::zero());
    let mut upper = vec![zero; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let (re, im) = match (kind, distribution) {
                (MatrixKind::RealSymmetric, Distribution::Gaussian) => (rng.next_gaussian(), 0.0),
                (MatrixKind::RealSymmetric, Distribution::PmOne) => (rng.next_sign(), 0.0),
                (MatrixKind::RealSymmetric, Distribution::UnitDisk) => unreachable!(),
                (MatrixKind::Hermitian, Distribution::Gaussian) => {
                    (rng.next_gaussian(), rng.next_gaussian())
                }
                (MatrixKind::Hermitian, Distribution::PmOne) => (rng.next_sign(), 0.0),
                (MatrixKind::Hermitian, Distribution::UnitDisk) => rng.next_in_disk(),
            };
            upper[i * n + j] = Complex::new(lit(re), lit(im));
        }
    }
    if !zero_diag {
        for i in 0..n {
            let x = match distribution {
                Distribution::Gaussian => rng.next_gaussian(),
                Distribution::PmOne => rng.next_sign(),
                Distribution::UnitDisk => 2.0 * rng.next_unit() - 1.0,
            };
            upper[i * n + i] = Complex::new(lit(x), R::zero());
        }
    }
    Ok(SquareMatrix::from_upper(kind, n, |i, j| upper[i * n + j]))
}
