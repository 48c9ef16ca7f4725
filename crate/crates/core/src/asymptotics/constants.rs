use std::f64::consts::PI;

use crate::numerics::integrate_with_log_endpoint;
use crate::phase::{stationary_points, StationaryPair};
use crate::scattering::{integrate_density, DensityModel, ReflectionTable};
use crate::{Error, Result, C64};

/// Disjoint real intervals; an upper end may be `+∞`.
pub type Intervals = Vec<(f64, f64)>;

/// `(0, ξ₁) ∪ (ξ₂, ∞)`, the set where `|r|` enters the conjugation, for
/// ξ > 1. Rays with ξ < -1 are handled through the mirrored profile.
pub fn interval_i(xi: f64) -> Result<Intervals> {
    let p = stationary_points(xi)?;
    if xi < 0.0 {
        return Err(Error::InvalidInput(format!(
            "xi = {xi}: negative rays are evaluated on the mirrored profile at -xi"
        )));
    }
    Ok(vec![(0.0, p.xi1), (p.xi2, f64::INFINITY)])
}

/// `v` on the real line together with its values and `r` at the two
/// stationary points of one ray.
#[derive(Clone, Debug)]
pub struct DensityFunction {
    pub model: DensityModel,
    pub geometry: StationaryPair,
    pub v_xi1: f64,
    pub v_xi2: f64,
    pub r_xi1: C64,
    pub r_xi2: C64,
}

impl DensityFunction {
    pub fn v(&self, s: f64) -> f64 {
        self.model.v(s)
    }
}

pub fn density_v(table: &ReflectionTable, geometry: StationaryPair) -> Result<DensityFunction> {
    let model = DensityModel::new(table)?;
    Ok(DensityFunction {
        v_xi1: model.v_at_point(geometry.xi1)?,
        v_xi2: model.v_at_point(geometry.xi2)?,
        r_xi1: model.r_at_point(geometry.xi1)?,
        r_xi2: model.r_at_point(geometry.xi2)?,
        model,
        geometry,
    })
}

fn sum_over(intervals: &[(f64, f64)], mut f: impl FnMut(f64, f64) -> Result<C64>) -> Result<C64> {
    intervals.iter().try_fold(C64::new(0.0, 0.0), |acc, &(a, b)| Ok(acc + f(a, b)?))
}

/// `∫_I v(s)/s ds`, the real phase with `e^{-iα(∞)} = T(∞)⁻²`.
pub fn alpha_infinity(v: &DensityModel, intervals: &[(f64, f64)]) -> Result<f64> {
    let total = sum_over(intervals, |a, b| integrate_density(v, a, b, |s| C64::from(1.0 / s)))
        .map_err(tail_error)?;
    Ok(total.re)
}

/// `T(∞) = exp(i ∫_I v(s)/(2s) ds)`.
pub fn t_infinity(v: &DensityModel, intervals: &[(f64, f64)]) -> Result<C64> {
    let half = sum_over(intervals, |a, b| integrate_density(v, a, b, |s| C64::from(0.5 / s)))
        .map_err(tail_error)?;
    Ok((C64::i() * half.re).exp())
}

fn tail_error(e: Error) -> Error {
    match e {
        Error::QuadratureNonConvergence { a, b } => {
            Error::TailIntegration(format!("integral of v over ({a}, {b}) did not converge"))
        }
        other => other,
    }
}

/// Finite part of `∫_I v(s)/(s - e) ds` for `e` an endpoint of `I`.
///
/// Each tabulated piece goes through the endpoint-regularised Cauchy
/// integral; the pieces adjacent to `e` carry the subtraction and the
/// logs of the others telescope.
pub(crate) fn cauchy_finite_part(v: &DensityModel, intervals: &[(f64, f64)], e: f64) -> Result<f64> {
    let pole = C64::from(e);
    let f = |s: f64| C64::from(v.v(s));
    let mut total = 0.0;
    for &(a, b) in intervals {
        for (p, q) in v.pieces(a, b) {
            let spec = crate::scattering::piece_spec(p, q);
            total += integrate_with_log_endpoint(f, (p, q), pole, &spec)?.re;
        }
        let (lo, hi) = v.outer_knots();
        if b == f64::INFINITY {
            let start = hi.max(a);
            total += integrate_density(v, start, f64::INFINITY, |s| C64::from(1.0 / (s - e)))
                .map_err(tail_error)?
                .re;
        }
        if a == f64::NEG_INFINITY {
            let end = lo.min(b);
            total += integrate_density(v, f64::NEG_INFINITY, end, |s| C64::from(1.0 / (s - e)))
                .map_err(tail_error)?
                .re;
        }
    }
    Ok(total)
}

/// `T_k(ξ_k) = T(∞) e^{-i J_k}` with `J_k` the finite part of
/// `∫_I v(s)/(s - ξ_k) ds`.
///
/// This is the finite factor in `T(z) ≈ T₁(ξ₁)(z - ξ₁)^{-iv(ξ₁)}` near ξ₁
/// and `T(z) ≈ T₂(ξ₂)(ξ₂ - z)^{iv(ξ₂)}` near ξ₂ (ξ > 1; mirrored for
/// ξ < -1), the principal powers having their cut along `I`.
pub fn t_k_regularized(
    k: u8,
    v: &DensityModel,
    intervals: &[(f64, f64)],
    geometry: &StationaryPair,
) -> Result<C64> {
    let e = match k {
        1 => geometry.xi1,
        2 => geometry.xi2,
        _ => return Err(Error::InvalidInput(format!("stationary point index must be 1 or 2, got {k}"))),
    };
    let t_inf = t_infinity(v, intervals)?;
    let j = cauchy_finite_part(v, intervals, e)?;
    Ok(t_inf * (-C64::i() * j).exp())
}

/// `v` at a point from `|r|²`, as used by the closed forms.
pub fn v_from_reflection_modulus(abs_r: f64) -> f64 {
    -(1.0 - abs_r * abs_r).ln() / (2.0 * PI)
}
