//! Direct scattering for the Zakharov-Shabat operator with `q → ±1`.

mod coefficients;
mod density;
mod io;
mod jost;
mod potential;
mod spectrum;
mod trace;

pub use coefficients::{ReflectionTable, ScatteringSample, ZGridSpec};
pub use density::DensityModel;
pub use io::{parse_profile, read_profile_csv, write_profile_csv, ScatteringData};
pub use jost::{background_matrix, Side, SolverSettings, ZsSolver};
pub use potential::PotentialField;
pub use spectrum::DiscreteSpectrum;
pub use trace::{integrate_density, trace_formula_eval, TraceFormula};
pub(crate) use potential::steps_in;
pub(crate) use trace::piece_spec;
