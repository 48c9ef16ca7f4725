//! Run configuration and the scatter → asymptotics → evolve → compare
//! pipeline behind the command-line tool.

mod config;
mod pipeline;
mod report;

pub use config::{ProfileSource, RunConfig, ScatterSettings, SpongeSettings};
pub use pipeline::{
    asymptotic_rows, evolve_rays, initial_state, profile_field, read_asymptotic_csv, read_ray_csv,
    scatter, scatter_mirrored, AsymptoticRows,
};
pub use report::{compare, fit_window, ComparisonReport, ComparisonRow, RayComparison, RaySummary};
