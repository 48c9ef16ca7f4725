use std::path::PathBuf;

use crate::C64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("numerical blow-up at step {step}")]
    NumericalBlowUp { step: usize },

    #[error("numerical blow-up in time stepping at t = {t}")]
    EvolutionBlowUp { t: f64 },

    #[error("interior pole unsupported: pole {pole} lies strictly inside ({a}, {b})")]
    InteriorPole { pole: C64, a: f64, b: f64 },

    #[error("endpoint pole {pole} requires singularity subtraction")]
    EndpointPoleWithoutSubtraction { pole: C64 },

    #[error("gamma pole at {0}")]
    GammaPole(C64),

    #[error("degenerate fit input: {0}")]
    DegenerateFit(String),

    #[error("singular spectral point: z = {z} is within {radius} of -1, 0 or 1")]
    SingularSpectralPoint { z: C64, radius: f64 },

    #[error("spectral singularity on R at z = {z} (|s11| = {modulus:e})")]
    SpectralSingularity { z: f64, modulus: f64 },

    #[error("non-simple zero at z = {z} (|s11'| = {modulus:e})")]
    NonSimpleZero { z: C64, modulus: f64 },

    #[error("evaluation too near the cut: Im z = {0} < 0.05")]
    TooNearCut(f64),

    #[error("phase singular at origin")]
    PhaseSingularAtOrigin,

    #[error("inside solitonic region: |xi| = {0} <= 1")]
    SolitonicRegion(f64),

    #[error("reflection modulus violation: |r({z})| = {modulus} >= 1")]
    ReflectionModulus { z: f64, modulus: f64 },

    #[error("tail integration failure: {0}")]
    TailIntegration(String),

    #[error("quadrature did not converge on ({a}, {b})")]
    QuadratureNonConvergence { a: f64, b: f64 },

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("conjugation singular at |xi_k| = 1")]
    ConjugationSingular,

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("background mismatch: {0}")]
    BackgroundMismatch(String),

    #[error("time step {dt} violates dt <= {limit} (stability factor times dx^2)")]
    CflViolation { dt: f64, limit: f64 },

    #[error("ray xi = {xi} leaves the trusted domain at t = {t}")]
    RayLeavesDomain { xi: f64, t: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("profile not found: {0}")]
    ProfileNotFound(PathBuf),

    #[error("malformed input at row {row}: {msg}")]
    Malformed { row: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures caused by the inputs (configuration, files, domain
    /// violations) rather than by the numerics themselves.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::ProfileNotFound(_)
                | Error::Malformed { .. }
                | Error::Io(_)
                | Error::Csv(_)
                | Error::Json(_)
                | Error::SolitonicRegion(_)
                | Error::BackgroundMismatch(_)
                | Error::RayLeavesDomain { .. }
                | Error::CflViolation { .. }
                | Error::SingularSpectralPoint { .. }
        )
    }
}
