//! Numerical kernels shared by the scattering, asymptotic and PDE modules.

mod fit;
mod gamma;
mod grid;
mod interp;
mod ode;
mod quadrature;

pub use fit::{fit_power_law, PowerLawFit};
pub use gamma::{arg_gamma, gamma, ln_gamma};
pub use grid::ComplexGrid1D;
pub use interp::{lagrange4, CubicSpline, Pchip};
pub use ode::{integrate_linear_ode, integrate_split_linear_ode, CMat2, CVec2};
pub use quadrature::{
    gauss_legendre, integrate, integrate_adaptive, integrate_semi_infinite,
    integrate_with_log_endpoint, QuadratureRule, QuadratureSpec,
};
