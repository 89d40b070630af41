//! Scattering for `u'''' + (v1 u')' + v0 u = lambda u` on the whole line
//! with decaying potentials, by bidirectional shooting of Jost solutions
//! and a matching solve at the origin.

pub mod connect;
pub mod jost;
pub mod potential;
pub mod rk;

pub use connect::{
    b_relation_residual, connection_solve, flux_form, free_resolvent_kernel_line,
    halfline_shortrange, lippmann_schwinger_residual, system_matrix, unitarity_residual,
    Connection, ScatteringMatrices, Wave, COND_LIMIT,
};
pub use jost::{contamination_diagnostic, jost_basis, JostBasis, Side};
pub use potential::{Potential, Shape};
pub use rk::{IntegrationControl, State};
