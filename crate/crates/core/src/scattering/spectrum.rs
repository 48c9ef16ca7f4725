use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{Side, ZsSolver};
use crate::{Error, Result, C64};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DiscreteSpectrum {
    pub eigenvalues: Vec<C64>,
    pub norming_constants: Vec<C64>,
}

impl DiscreteSpectrum {
    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Largest deviation of `arg c_j` from `arg(i z_j)`, wrapped to [0, π].
    pub fn max_norming_phase_defect(&self) -> f64 {
        self.eigenvalues
            .iter()
            .zip(&self.norming_constants)
            .map(|(z, c)| (c / (C64::i() * z)).arg().abs())
            .fold(0.0, f64::max)
    }
}

const REFINE_TARGET: f64 = 1e-10;

impl<'a> ZsSolver<'a> {
    fn s11_on_arc(&self, w: f64) -> Result<C64> {
        self.s11(C64::from_polar(1.0, w))
    }

    /// Zeros of `s11` on the upper unit semicircle.
    ///
    /// `s11` is purely imaginary on the circle, so `Im s11(e^{iw})` is
    /// sampled and sign changes are refined with a safeguarded secant
    /// iteration.
    pub fn find_discrete_spectrum(&self, n_arc_samples: usize) -> Result<DiscreteSpectrum> {
        if n_arc_samples < 16 {
            return Err(Error::InvalidInput("n_arc_samples must be >= 16".into()));
        }
        let r = self.settings.exclusion_radius;
        let delta = 2.0 * (0.5 * r).asin() * 1.01;
        let ws: Vec<f64> = (0..=n_arc_samples)
            .map(|k| delta + (PI - 2.0 * delta) * k as f64 / n_arc_samples as f64)
            .collect();
        let gs = ws.iter().map(|&w| Ok(self.s11_on_arc(w)?.im)).collect::<Result<Vec<_>>>()?;

        for (w, g) in [(ws[0], gs[0]), (ws[n_arc_samples], gs[n_arc_samples])] {
            if g.abs() < 1e-3 {
                log::warn!(
                    "s11 is small ({g:e}) at the edge of the arc w = {w}; an eigenvalue may lie \
                     within the exclusion angle of a branch point"
                );
            }
        }

        let mut eigenvalues = Vec::new();
        for k in 0..n_arc_samples {
            let (g0, g1) = (gs[k], gs[k + 1]);
            if g0 == 0.0 {
                eigenvalues.push(C64::from_polar(1.0, ws[k]));
                continue;
            }
            if g0.signum() == g1.signum() || g1 == 0.0 {
                continue;
            }
            let w = self.refine_arc_zero(ws[k], ws[k + 1], g0, g1)?;
            let z = C64::from_polar(1.0, w);
            let residual = self.s11(z)?.norm();
            if residual > 1e-6 {
                log::warn!("arc sign change near w = {w} has |s11| = {residual:e}; not a zero");
                continue;
            }
            if residual > REFINE_TARGET {
                log::debug!("eigenvalue at w = {w} refined only to |s11| = {residual:e}");
            }
            eigenvalues.push(z);
        }
        if gs[n_arc_samples] == 0.0 {
            eigenvalues.push(C64::from_polar(1.0, ws[n_arc_samples]));
        }

        let norming_constants =
            eigenvalues.iter().map(|&z| self.norming_constant(z)).collect::<Result<Vec<_>>>()?;
        Ok(DiscreteSpectrum { eigenvalues, norming_constants })
    }

    fn refine_arc_zero(&self, mut a: f64, mut b: f64, mut ga: f64, mut gb: f64) -> Result<f64> {
        let mut best = if ga.abs() < gb.abs() { a } else { b };
        for _ in 0..200 {
            let secant = b - gb * (b - a) / (gb - ga);
            let mid = 0.5 * (a + b);
            let lo = a.min(b);
            let hi = a.max(b);
            let trial = if secant > lo + 0.05 * (hi - lo) && secant < hi - 0.05 * (hi - lo) {
                secant
            } else {
                mid
            };
            let gt = self.s11_on_arc(trial)?.im;
            best = trial;
            if gt.abs() < 0.1 * REFINE_TARGET || (hi - lo) < 4.0 * f64::EPSILON {
                break;
            }
            if gt.signum() == ga.signum() {
                a = trial;
                ga = gt;
            } else {
                b = trial;
                gb = gt;
            }
        }
        Ok(best)
    }

    /// `c_j = s21(z_j) / s11'(z_j)`.
    ///
    /// At a zero of `s11` the columns `ψ₁⁻` and `ψ₂⁺` are parallel,
    /// `ψ₁⁻ = b_j ψ₂⁺`, and `s21(z_j) = b_j`; the derivative is a fourth
    /// order central difference along the tangent `i z_j`.
    pub fn norming_constant(&self, z_j: C64) -> Result<C64> {
        let p = self.jost_column(z_j, Side::Minus, 0, 0.0)?;
        let q = self.jost_column(z_j, Side::Plus, 1, 0.0)?;
        let b = (q.conjugate().transpose() * p)[0] / q.norm_squared();
        let h = 1e-4;
        let tau = C64::i() * z_j / z_j.norm();
        let f = |t: f64| self.s11(z_j + tau * t);
        let ds = (-f(2.0 * h)? + 8.0 * f(h)? - 8.0 * f(-h)? + f(-2.0 * h)?) / (12.0 * h * tau);
        if ds.norm() < 1e-10 {
            return Err(Error::NonSimpleZero { z: z_j, modulus: ds.norm() });
        }
        Ok(b / ds)
    }
}
