use thiserror::Error;

/// Errors produced by matrix construction, eigendecomposition, and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("entries do not form a square matrix")]
    NonSquare,
    #[error("entry ({i},{j}) breaks conjugate symmetry")]
    SymmetryViolation { i: usize, j: usize },
    #[error("entry ({i},{j}) is not finite")]
    NonFinite { i: usize, j: usize },
    #[error("entry ({i},{j}) has a nonzero imaginary part in a real symmetric matrix")]
    NonRealEntry { i: usize, j: usize },
    #[error("dimension mismatch: expected order {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix diagonal is not zero")]
    NonZeroDiagonal,
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("operation requires the other matrix kind")]
    WrongKind,
    #[error("order {n} is below the minimum {min}")]
    OrderTooSmall { n: usize, min: usize },
    #[error("order {n} exceeds the maximum {max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("sign vector must consist of +/-1 entries summing to zero")]
    UnbalancedVector,
    #[error("order must be even")]
    OddOrder,
    #[error("eigensolver stopped after {sweeps} sweeps with relative off-diagonal mass {off_diag:e}")]
    ConvergenceFailure { sweeps: usize, off_diag: f64 },
    #[error("angles {i} and {j} are closer than the minimum separation")]
    CoincidentAngles { i: usize, j: usize },
    #[error("invalid argument: {0}")]
    InvalidArguments(String),
}
