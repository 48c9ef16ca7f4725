//! Large-time profile along rays `|x/(2t)| > 1`: the conjugation function
//! `T`, parabolic-cylinder constants at the two stationary points and the
//! resulting leading term plus `t^{-1/2}` correction.

mod constants;
mod correction;
mod evaluator;

pub use constants::{
    alpha_infinity, density_v, interval_i, t_infinity, t_k_regularized, v_from_reflection_modulus,
    DensityFunction, Intervals,
};
pub use correction::{
    e1_correction, h_closed_form, pc_first_moment, q_asymptotic, scaled_reflection, PcMoment,
};
pub use evaluator::{
    write_asymptotic_csv, write_crosscheck_csv, AsymptoticConstants, AsymptoticPoint,
    CorrectionTerm, CrosscheckRow, RayEvaluator,
};
