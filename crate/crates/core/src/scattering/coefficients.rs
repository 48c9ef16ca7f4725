use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::jost::det2;
use super::{Side, ZsSolver};
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScatteringSample {
    pub z: f64,
    pub s11: C64,
    pub s21: C64,
    pub r: C64,
}

impl ScatteringSample {
    /// `|s11|² - |s21|² - 1`, zero for exact data.
    pub fn unitarity_defect(&self) -> f64 {
        self.s11.norm_sqr() - self.s21.norm_sqr() - 1.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReflectionTable {
    pub z_grid: Vec<f64>,
    pub samples: Vec<ScatteringSample>,
}

impl ReflectionTable {
    /// Table from a known reflection coefficient. `s11` is filled from
    /// `|s11|² = 1/(1 - |r|²)` with zero phase.
    pub fn from_reflection(z_grid: Vec<f64>, r: impl Fn(f64) -> C64) -> Self {
        let samples = z_grid
            .iter()
            .map(|&z| {
                let rz = r(z);
                let s11 = C64::from(1.0 / (1.0 - rz.norm_sqr()).sqrt());
                ScatteringSample { z, s11, s21: rz * s11, r: rz }
            })
            .collect();
        Self { z_grid, samples }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn max_abs_r(&self) -> f64 {
        self.samples.iter().map(|s| s.r.norm()).fold(0.0, f64::max)
    }

    pub fn max_unitarity_defect(&self) -> f64 {
        self.samples.iter().map(|s| s.unitarity_defect().abs()).fold(0.0, f64::max)
    }

    /// Largest `|r(z) - conj r(1/z)|` over grid points whose reciprocal is
    /// also on the grid (matched to `rel_tol` relative).
    pub fn max_symmetry_defect(&self, rel_tol: f64) -> f64 {
        let mut worst: f64 = 0.0;
        for s in &self.samples {
            let target = 1.0 / s.z;
            if let Some(o) = self
                .samples
                .iter()
                .find(|o| (o.z - target).abs() <= rel_tol * target.abs())
            {
                worst = worst.max((s.r - o.r.conj()).norm());
            }
        }
        worst
    }
}

/// Real spectral grid symmetric under `z → 1/z` and `z → -z`, clustered
/// geometrically toward ±1 in the variable `u = ln|z|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZGridSpec {
    pub min: f64,
    pub max: f64,
    pub n: usize,
    pub exclusion_radius: f64,
}

impl Default for ZGridSpec {
    fn default() -> Self {
        Self { min: 0.02, max: 5.0, n: 800, exclusion_radius: 1e-3 }
    }
}

impl ZGridSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = self.exclusion_radius > 0.0
            && self.min > self.exclusion_radius
            && self.min < 1.0 - self.exclusion_radius
            && self.max > 1.0 + self.exclusion_radius
            && self.n >= 16;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "z grid needs exclusion < min < 1 - exclusion, max > 1 + exclusion and n >= 16 (got {self:?})"
            )))
        }
    }

    pub fn points(&self) -> Result<Vec<f64>> {
        self.validate()?;
        let m = self.n / 4;
        let u_lo = -(1.0 - 1.5 * self.exclusion_radius).ln();
        let u_hi = self.max.ln().max(-self.min.ln());
        let ratio = (u_hi / u_lo).powf(1.0 / (m - 1) as f64);
        let mut pts = Vec::with_capacity(4 * m);
        for k in 0..m {
            let u = u_lo * ratio.powi(k as i32);
            for z in [u.exp(), (-u).exp()] {
                if z >= self.min * (1.0 - 1e-12) && z <= self.max * (1.0 + 1e-12) {
                    pts.push(z);
                    pts.push(-z);
                }
            }
        }
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(pts)
    }
}

impl<'a> ZsSolver<'a> {
    pub fn scattering_coefficients(&self, z: f64) -> Result<ScatteringSample> {
        let zc = C64::from(z);
        let m1_minus = self.jost_column(zc, Side::Minus, 0, 0.0)?;
        let m1_plus = self.jost_column(zc, Side::Plus, 0, 0.0)?;
        let m2_plus = self.jost_column(zc, Side::Plus, 1, 0.0)?;
        let d = 1.0 - 1.0 / (z * z);
        let s11 = det2(m1_minus, m2_plus) / d;
        let s21 = det2(m1_plus, m1_minus) / d;
        if s11.norm() < 1e-12 {
            return Err(Error::SpectralSingularity { z, modulus: s11.norm() });
        }
        Ok(ScatteringSample { z, s11, s21, r: s21 / s11 })
    }

    /// One sample per grid point, computed in parallel.
    pub fn reflection_table(&self, z_grid: &[f64]) -> Result<ReflectionTable> {
        let samples = z_grid
            .par_iter()
            .map(|&z| self.scattering_coefficients(z))
            .collect::<Result<Vec<_>>>()?;
        Ok(ReflectionTable { z_grid: z_grid.to_vec(), samples })
    }
}
