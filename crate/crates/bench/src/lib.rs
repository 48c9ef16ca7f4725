//! Shared fixtures for the criterion benches.

use kinkscat::pde::{make_initial, EvolutionState, InitialProfileSpec};
use kinkscat::scattering::{PotentialField, ReflectionTable, ZGridSpec, ZsSolver};
use kinkscat::C64;

pub fn bump() -> InitialProfileSpec {
    InitialProfileSpec::perturbed_kink(C64::new(0.1, 0.0), 0.0, 2.0)
}

/// The perturbed kink on `[-20, 20]` at the default Jost resolution.
pub fn field() -> PotentialField {
    let spec = bump();
    PotentialField::from_fn(|x| spec.eval(x), 20.0, 0.01, 1e-8).expect("valid profile")
}

pub fn coarse_grid() -> Vec<f64> {
    ZGridSpec { min: 0.1, max: 10.0, n: 64, exclusion_radius: 1e-3 }.points().expect("valid grid")
}

pub fn table(field: &PotentialField) -> ReflectionTable {
    ZsSolver::new(field).reflection_table(&ZGridSpec::default().points().expect("valid grid")).expect("table")
}

pub fn evolution_state(half_width: f64, dx: f64) -> EvolutionState {
    make_initial(&bump(), half_width, dx).expect("valid initial state")
}
