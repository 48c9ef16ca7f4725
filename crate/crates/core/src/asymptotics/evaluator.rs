use std::path::Path;

use serde::{Deserialize, Serialize};

use super::constants::{alpha_infinity, density_v, interval_i, t_infinity, t_k_regularized, DensityFunction, Intervals};
use super::correction::{e1_correction, h_closed_form, pc_first_moment, q_asymptotic, scaled_reflection};
use crate::phase::{stationary_points, theta, RayCoordinate, StationaryPair};
use crate::scattering::ReflectionTable;
use crate::{Result, C64};

/// Which terms of the expansion to keep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrectionTerm {
    LeadingOnly,
    #[default]
    FirstOrder,
}

/// Time-independent data for one ray.
#[derive(Clone, Debug)]
pub struct AsymptoticConstants {
    pub xi: f64,
    pub geometry: StationaryPair,
    pub intervals: Intervals,
    pub t_infinity: C64,
    pub alpha_infinity: f64,
    pub t1: C64,
    pub t2: C64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticPoint {
    pub t: f64,
    pub x: f64,
    pub xi: f64,
    pub leading: C64,
    pub correction: C64,
}

impl AsymptoticPoint {
    pub fn q(&self) -> C64 {
        self.leading + self.correction
    }
}

/// Evaluates the large-`t` expansion along `x = 2ξt`.
///
/// For ξ > 1 `table` holds the data of `q₀`. For ξ < -1 it must hold the
/// data of the mirrored profile `-q₀(-x)`; the expansion is then taken on
/// the ray `-ξ` and mapped back through `q(x, t) = -q̃(-x, t)`.
#[derive(Clone, Debug)]
pub struct RayEvaluator {
    /// Constants of the positive ray `|ξ|`.
    pub constants: AsymptoticConstants,
    pub xi: f64,
    density: DensityFunction,
}

impl RayEvaluator {
    pub fn new(table: &ReflectionTable, xi: f64) -> Result<Self> {
        let signed = xi;
        let xi = xi.abs();
        let geometry = stationary_points(xi)?;
        let intervals = interval_i(xi)?;
        let density = density_v(table, geometry)?;
        let m = &density.model;
        let constants = AsymptoticConstants {
            xi,
            geometry,
            t_infinity: t_infinity(m, &intervals)?,
            alpha_infinity: alpha_infinity(m, &intervals)?,
            t1: t_k_regularized(1, m, &intervals, &geometry)?,
            t2: t_k_regularized(2, m, &intervals, &geometry)?,
            intervals,
        };
        Ok(Self { constants, xi: signed, density })
    }

    pub fn density(&self) -> &DensityFunction {
        &self.density
    }

    fn theta_at(&self, z: f64) -> Result<f64> {
        let ray = RayCoordinate::on_ray(self.constants.xi, 1.0)?;
        Ok(theta(C64::from(z), &ray)?.re)
    }

    /// Scaled reflections at ξ₁ and ξ₂.
    pub fn scaled_reflections(&self, t: f64) -> Result<(C64, C64)> {
        let c = &self.constants;
        let g = &c.geometry;
        let d = &self.density;
        let r1 = scaled_reflection(1, d.r_xi1, c.t1, self.theta_at(g.xi1)?, g.theta_pp_1, d.v_xi1, t)?;
        let r2 = scaled_reflection(2, d.r_xi2, c.t2, self.theta_at(g.xi2)?, g.theta_pp_2, d.v_xi2, t)?;
        Ok((r1, r2))
    }

    pub fn evaluate(&self, t: f64, terms: CorrectionTerm) -> Result<AsymptoticPoint> {
        let c = &self.constants;
        let ray = RayCoordinate::on_ray(self.xi, t)?;
        let sign = self.xi.signum();
        let leading = sign * q_asymptotic(c.t_infinity, &[]);
        let correction = match terms {
            CorrectionTerm::LeadingOnly => C64::new(0.0, 0.0),
            CorrectionTerm::FirstOrder => {
                let g = &c.geometry;
                let d = &self.density;
                let (r1, r2) = self.scaled_reflections(t)?;
                let mut e = Vec::with_capacity(2);
                for (k, xk, tpp, r, v) in
                    [(1u8, g.xi1, g.theta_pp_1, r1, d.v_xi1), (2, g.xi2, g.theta_pp_2, r2, d.v_xi2)]
                {
                    // below this the moment is zero to working precision
                    if v > 1e-15 {
                        let m = pc_first_moment(k, r, v)?;
                        e.push(e1_correction(k, xk, tpp, m, t)?);
                    }
                }
                sign * q_asymptotic(c.t_infinity, &e) - leading
            }
        };
        Ok(AsymptoticPoint { t, x: ray.x, xi: self.xi, leading, correction })
    }

    /// The phase-only closed form of the correction, `±T(∞)⁻² h`.
    pub fn closed_form_correction(&self, t: f64) -> Result<C64> {
        let c = &self.constants;
        let g = &c.geometry;
        let h = h_closed_form(
            g.xi1,
            self.theta_at(g.xi1)?,
            g.theta_pp_1,
            g.theta_pp_2,
            self.density.v_xi1,
            self.density.r_xi1,
            c.t1,
            c.t2,
            t,
        )?;
        Ok(self.xi.signum() * h / (c.t_infinity * c.t_infinity))
    }
}

/// `t,x,xi,re_q_asy,im_q_asy,abs_q_asy,re_corr,im_corr`.
pub fn write_asymptotic_csv(path: &Path, points: &[AsymptoticPoint]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["t", "x", "xi", "re_q_asy", "im_q_asy", "abs_q_asy", "re_corr", "im_corr"])?;
    for p in points {
        let q = p.q();
        w.write_record(
            [p.t, p.x, p.xi, q.re, q.im, q.norm(), p.correction.re, p.correction.im].map(|v| format!("{v:.16e}")),
        )?;
    }
    w.flush()?;
    Ok(())
}

/// The correction computed both ways at one `(ξ, t)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrosscheckRow {
    pub t: f64,
    pub xi: f64,
    pub correction: C64,
    pub closed_form: C64,
}

/// `t,xi,re_corr,im_corr,re_closed,im_closed`
pub fn write_crosscheck_csv(path: &Path, rows: &[CrosscheckRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["t", "xi", "re_corr", "im_corr", "re_closed", "im_closed"])?;
    for r in rows {
        let (a, b) = (r.correction, r.closed_form);
        w.write_record([r.t, r.xi, a.re, a.im, b.re, b.im].map(|v| format!("{v:.16e}")))?;
    }
    w.flush()?;
    Ok(())
}
