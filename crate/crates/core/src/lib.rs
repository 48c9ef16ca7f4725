//! Direct scattering, solitonless-region asymptotics and a reference PDE
//! solver for the defocusing nonlinear Schrödinger equation
//!
//! ```text
//! i q_t + q_xx - 2(|q|^2 - 1) q = 0,     q(x, t) -> ±1 as x -> ±∞
//! ```
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: ODE integration, endpoint-singular quadrature, complex
//!   log-Gamma, interpolation and power-law fitting.
//! * [`scattering`]: Jost solutions, scattering coefficients, reflection
//!   tables, discrete spectrum and the trace formula.
//! * [`phase`]: the phase function θ(z; ξ), its stationary points and
//!   signature tables.
//! * [`asymptotics`]: the large-time profile along rays |x/(2t)| > 1.
//! * [`pde`]: a finite-difference solver used as ground truth.
//! * [`harness`]: run configuration, file formats and ray comparisons.

pub mod asymptotics;
pub mod error;
pub mod harness;
pub mod numerics;
pub mod pde;
pub mod phase;
pub mod scattering;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use numerics::CMat2;
