use super::{DensityModel, DiscreteSpectrum, ReflectionTable};
use crate::numerics::{integrate_adaptive, integrate_semi_infinite, QuadratureRule, QuadratureSpec};
use crate::{Error, Result, C64};

pub(crate) fn piece_spec(a: f64, b: f64) -> QuadratureSpec {
    if DensityModel::singular_end(a, b) {
        QuadratureSpec { rule: QuadratureRule::TanhSinh, panels: 1, points_per_panel: 16, ..Default::default() }
    } else {
        QuadratureSpec { panels: 1, points_per_panel: 10, tolerance: 1e-13, ..Default::default() }
    }
}

/// `∫ v(s) w(s) ds` over `(a, b)`; infinite ends use the tail models of `v`.
pub fn integrate_density(
    density: &DensityModel,
    a: f64,
    b: f64,
    w: impl Fn(f64) -> C64,
) -> Result<C64> {
    let f = |s: f64| w(s) * density.v(s);
    let mut total = C64::new(0.0, 0.0);
    for (p, q) in density.pieces(a, b) {
        total += integrate_adaptive(f, p, q, &piece_spec(p, q))?;
    }
    let (lo, hi) = density.outer_knots();
    let tail_spec = QuadratureSpec { tolerance: 1e-13, ..Default::default() };
    if b == f64::INFINITY {
        total += integrate_semi_infinite(f, hi.max(a), &tail_spec)?;
    }
    if a == f64::NEG_INFINITY {
        total += integrate_semi_infinite(|s| f(-s), -lo.min(b), &tail_spec)?;
    }
    Ok(total)
}

/// Product-integral reconstruction of `s11` in the upper half plane.
pub struct TraceFormula<'a> {
    pub spectrum: &'a DiscreteSpectrum,
    pub density: DensityModel,
}

impl<'a> TraceFormula<'a> {
    pub fn new(spectrum: &'a DiscreteSpectrum, table: &ReflectionTable) -> Result<Self> {
        Ok(Self { spectrum, density: DensityModel::new(table)? })
    }

    fn check(z: C64) -> Result<()> {
        if z.im < 0.05 {
            return Err(Error::TooNearCut(z.im));
        }
        Ok(())
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        Self::check(z)?;
        let blaschke: C64 =
            self.spectrum.eigenvalues.iter().map(|&zj| (z - zj) / (z - zj.conj())).product();
        let integral = integrate_density(&self.density, f64::NEG_INFINITY, f64::INFINITY, |s| {
            1.0 / (C64::from(s) - z)
        })?;
        Ok(blaschke * (-C64::i() * integral).exp())
    }

    /// Size of the contribution from beyond the tabulated range, where `v`
    /// is the extrapolated `s⁻⁴` model rather than data.
    pub fn tail_estimate(&self, z: C64) -> Result<f64> {
        Self::check(z)?;
        let (lo, hi) = self.density.outer_knots();
        let w = |s: f64| 1.0 / (C64::from(s) - z);
        let right = integrate_density(&self.density, hi, f64::INFINITY, w)?;
        let left = integrate_density(&self.density, f64::NEG_INFINITY, lo, w)?;
        Ok((right + left).norm())
    }
}

/// Convenience wrapper building the density from `table`.
pub fn trace_formula_eval(
    spectrum: &DiscreteSpectrum,
    table: &ReflectionTable,
    z: C64,
) -> Result<C64> {
    TraceFormula::new(spectrum, table)?.eval(z)
}
