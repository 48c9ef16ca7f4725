use serde::{Deserialize, Serialize};

use super::PotentialField;
use crate::numerics::{integrate_split_linear_ode, CMat2, CVec2};
use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

/// Step-size and exclusion controls for the Jost integration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverSettings {
    /// Radius of the disks around -1, 0, 1 where no integration is attempted.
    pub exclusion_radius: f64,
    /// Largest step in x.
    pub max_step: f64,
    /// Largest phase `2|ζ| h` of the interaction-picture oscillation per step.
    pub phase_per_step: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self { exclusion_radius: 1e-3, max_step: 0.01, phase_per_step: 0.1 }
    }
}

pub(crate) fn zeta(z: C64) -> C64 {
    0.5 * (z - 1.0 / z)
}

fn sigma1() -> CMat2 {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    CMat2::new(o, l, l, o)
}

/// Background normalisation `Y± = I ± σ₁/z`.
pub fn background_matrix(z: C64, side: Side) -> CMat2 {
    CMat2::identity() + sigma1() * (side.sign() / z)
}

/// Integrates the Zakharov-Shabat system for a fixed potential.
///
/// Columns are carried in the interaction picture `u = Y±⁻¹ m`, where
/// `m_j = ψ_j e^{± iζx}`. Only the deviation `Q - Q±` couples the
/// components, and the free phase `e^{±2iζx}` is applied exactly.
#[derive(Clone, Debug)]
pub struct ZsSolver<'a> {
    pub field: &'a PotentialField,
    pub settings: SolverSettings,
}

impl<'a> ZsSolver<'a> {
    pub fn new(field: &'a PotentialField) -> Self {
        Self { field, settings: SolverSettings::default() }
    }

    pub fn with_settings(field: &'a PotentialField, settings: SolverSettings) -> Self {
        Self { field, settings }
    }

    pub fn check_admissible(&self, z: C64) -> Result<()> {
        let radius = self.settings.exclusion_radius;
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite spectral parameter {z}")));
        }
        for p in [-1.0, 0.0, 1.0] {
            if (z - p).norm() <= radius {
                return Err(Error::SingularSpectralPoint { z, radius });
            }
        }
        Ok(())
    }

    /// Column `col` (0 or 1) of `m±(z; x)`, seeded with `Y±` at the edge of
    /// the domain on `side` and integrated to `x`.
    pub fn jost_column(&self, z: C64, side: Side, col: usize, x: f64) -> Result<CVec2> {
        self.check_admissible(z)?;
        let x_edge = match side {
            Side::Plus => self.field.x_max(),
            Side::Minus => self.field.x_min(),
        };
        let y = background_matrix(z, side);
        let mut u0 = CVec2::zeros();
        u0[col] = C64::from(1.0);
        if x == x_edge {
            return Ok(y * u0);
        }
        let zt = zeta(z);
        let two_i_zeta = C64::new(0.0, 2.0) * zt;
        let diag = if col == 0 {
            [C64::new(0.0, 0.0), two_i_zeta]
        } else {
            [-two_i_zeta, C64::new(0.0, 0.0)]
        };
        let s = side.sign();
        let det = C64::from(1.0) - 1.0 / (z * z);
        let yinv = (CMat2::identity() - sigma1() * (s / z)) / det;
        let i = C64::new(0.0, 1.0);
        let field = self.field;
        let coupling = |xx: f64| {
            let q = field.q(xx);
            let dq = q - s;
            let dl = CMat2::new(C64::new(0.0, 0.0), i * (dq.conj()), -i * dq, C64::new(0.0, 0.0));
            yinv * dl * y
        };
        let length = (x - x_edge).abs();
        let mut h = self.settings.max_step;
        let freq = 2.0 * zt.norm();
        if freq > 0.0 {
            h = h.min(self.settings.phase_per_step / freq);
        }
        let n = ((length / h).ceil() as usize).max(1);
        let u = integrate_split_linear_ode(diag, coupling, u0, x_edge, x, n)?;
        Ok(y * u)
    }

    /// `m±(z; 0)` with both columns seeded from the same side.
    pub fn jost_matrix(&self, z: C64, side: Side) -> Result<CMat2> {
        self.jost_matrix_at(z, side, 0.0)
    }

    pub fn jost_matrix_at(&self, z: C64, side: Side, x: f64) -> Result<CMat2> {
        let c0 = self.jost_column(z, side, 0, x)?;
        let c1 = self.jost_column(z, side, 1, x)?;
        Ok(CMat2::from_columns(&[c0, c1]))
    }

    /// `det[ψ₁⁻, ψ₂⁺]` at `x`. The exponential factors cancel so this is the
    /// same determinant in the `m` normalisation.
    pub fn wronskian_11(&self, z: C64, x: f64) -> Result<C64> {
        let a = self.jost_column(z, Side::Minus, 0, x)?;
        let b = self.jost_column(z, Side::Plus, 1, x)?;
        Ok(det2(a, b))
    }

    /// `s11(z)` for complex `z`; uses only the columns that stay bounded in
    /// the upper half plane.
    pub fn s11(&self, z: C64) -> Result<C64> {
        let w = self.wronskian_11(z, 0.0)?;
        Ok(w / (C64::from(1.0) - 1.0 / (z * z)))
    }
}

pub(crate) fn det2(a: CVec2, b: CVec2) -> C64 {
    a[0] * b[1] - a[1] * b[0]
}
