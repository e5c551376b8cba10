//! Independent numerical checks of the closed forms.

pub mod composite;
pub mod config;
pub mod fock;
pub mod moment_ode;
pub mod quadrature;
mod rk4;

pub use composite::{
    central_moment, composite_moment, composite_statistics, composite_word, CompositeStatistics,
    MomentTable,
};
pub use config::{Horizon, IntegrationConfig};
pub use fock::{
    density_moments, fock_evolve, fock_steady_state, numeric_marginal_qfunction, numeric_qfunction,
    FockSystem, TwoModeDensityMatrix,
};
pub use moment_ode::{
    integrate_coherent_odes, integrate_subharmonic_odes, MomentTrajectory, MomentVector,
};
pub use quadrature::{gaussian_integral_identity, gaussian_integral_quadrature};
