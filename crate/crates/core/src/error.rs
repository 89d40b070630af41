//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failure modes of the spectral and scattering routines.
#[derive(Debug, Error)]
pub enum Error {
    /// `z = 0` is the branch point of `zeta = z^{1/4}`; no branch value exists there.
    #[error("z = 0 is the branch point of the quartic root")]
    BranchPoint,

    /// An edge flag was supplied for a point that is not on the positive real axis.
    #[error("edge flags require z on the positive real axis, got z = {0}")]
    EdgeOffAxis(num_complex::Complex<f64>),

    /// The polynomial has no nonzero coefficient, so its index data are undefined.
    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    /// The requested operation is only defined for a different boundary-condition family.
    #[error("operation is not supported for the {0} boundary-condition family")]
    UnsupportedFamily(&'static str),

    /// The spectral point sits (numerically) on an eigenvalue: `|Omega|` is below
    /// the resolution threshold and the resolvent correction is not computable.
    #[error("spectral point is within tolerance of an eigenvalue (|Omega| = {omega_abs:.3e}, scale = {scale:.3e})")]
    NearEigenvalue { omega_abs: f64, scale: f64 },

    /// Root counting and the inertia of the interaction matrix disagree, which
    /// indicates a numerically degenerate parameter set.
    #[error("eigenvalue count {roots} disagrees with the interaction-matrix inertia {inertia}")]
    InertiaMismatch { roots: usize, inertia: usize },

    /// A requested grid point collides with a spectral singularity.
    #[error("grid point lambda = {lambda} is within tolerance of the eigenvalue {eigenvalue}")]
    GridNearEigenvalue { lambda: f64, eigenvalue: f64 },

    /// Positive spectral parameter was required.
    #[error("lambda must be positive, got {0}")]
    NonpositiveLambda(f64),

    /// The adaptive integrator could not meet its tolerance.
    #[error("step size underflow while integrating (position x = {x})")]
    StepUnderflow { x: f64 },

    /// The Jost matching system is numerically singular; `lambda` is an
    /// eigenvalue or numerically indistinguishable from one.
    #[error("matching system is near-singular (cond = {cond:.3e}); lambda is likely an eigenvalue")]
    NearSingularMatching { cond: f64 },

    /// No bounded generalized eigenfunction exists at an embedded eigenvalue.
    #[error("lambda = {0} is an embedded eigenvalue; the generalized eigenfunction is undefined")]
    EmbeddedEigenvalue(f64),

    /// The exponential-mode expansion of a solution degenerated.
    #[error("degenerate exponential expansion: {0}")]
    DegenerateExpansion(String),

    /// A potential specification could not be parsed or violates its constraints.
    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    /// Generic domain error with context.
    #[error("{0}")]
    Domain(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
