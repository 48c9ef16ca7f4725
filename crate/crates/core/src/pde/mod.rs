//! Direct solver for `i q_t + q_xx - 2(|q|² - 1) q = 0` with `q → ±1` at
//! `±∞`: fourth-order central differences in space, classical RK4 in time,
//! clamped ends and damping bands near the edges.

mod io;
mod profile;
mod solver;

pub use io::{write_ray_csv, write_snapshot_csv, RaySample};
pub use profile::{InitialProfileKind, InitialProfileSpec};
pub use solver::{
    evolve_sampling, make_initial, make_initial_with, renormalized_charge, sample_along_ray, EvolutionState,
    SolverConfig, DEFAULT_STABILITY_FACTOR, STABILITY_LIMIT,
};
