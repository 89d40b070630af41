//! Spectral and scattering objects of one-dimensional fourth-order
//! operators.
//!
//! Two regimes are covered:
//!
//! * the free operator `u''''` on the half line with a self-adjoint
//!   boundary condition at the origin, where everything (resolvent kernel,
//!   discrete spectrum, scattering amplitudes, spectral shift function,
//!   threshold expansions) is in closed form; and
//! * `u'''' + (v1 u')' + v0 u` on the whole line with decaying
//!   potentials, where the scattering matrices are computed numerically
//!   from Jost solutions.
//!
//! Energies are parametrized by `lambda = z` with the branch-correct
//! quartic root `zeta = z^{1/4}` taken in the sector `arg zeta` in
//! `(0, pi/2)`; positive energies approach the two edges of the cut with
//! `zeta = k` (upper) or `zeta = ik` (lower), `k = lambda^{1/4} > 0`.

pub mod error;
pub mod fullline;
pub mod halfline;
pub mod quad;
pub mod quartic;
pub mod ssf;

pub use error::{Error, Result};
pub use quartic::{branch_zeta, upper_edge, BoundaryCondition, Family, OmegaPolynomial};
