//! The floating-point scalar abstraction: every matrix, norm, and solver in
//! this crate is generic over [`Scalar`], instantiated as `f32` or `f64`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar used for matrix entries and all derived
/// quantities. Complex entries are `num_complex::Complex<R>` over this type.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Sum + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Relative off-diagonal Frobenius mass at which a Jacobi sweep is
    /// declared converged.
    fn eig_sweep_tol() -> Self;
}

impl Scalar for f64 {
    fn eig_sweep_tol() -> Self {
        1e-14
    }
}

impl Scalar for f32 {
    fn eig_sweep_tol() -> Self {
        1e-6
    }
}

/// Converts an `f64` constant into the working scalar type.
#[inline]
pub(crate) fn lit<R: Scalar>(x: f64) -> R {
    R::from_f64(x).expect("constant must be representable")
}

/// Converts a count (matrix order, index) into the working scalar type.
#[inline]
pub(crate) fn count<R: Scalar>(n: usize) -> R {
    R::from_usize(n).expect("count must be representable")
}
