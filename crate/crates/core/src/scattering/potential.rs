use serde::{Deserialize, Serialize};

use crate::numerics::ComplexGrid1D;
use crate::{Error, Result, C64};

/// Initial profile sampled on a uniform grid over `[x0, x_end]`, with
/// `q → -1` on the left and `q → +1` on the right.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PotentialField {
    grid: ComplexGrid1D,
    background_tolerance: f64,
}

impl PotentialField {
    /// Checks the background at whichever ends of the grid lie on either
    /// side of the origin. A grid that stops at `x = 0` only has one side.
    pub fn new(grid: ComplexGrid1D, background_tolerance: f64) -> Result<Self> {
        if !(background_tolerance >= 0.0) {
            return Err(Error::InvalidInput("background tolerance must be >= 0".into()));
        }
        if grid.x0() > 0.0 || grid.x_end() < 0.0 {
            return Err(Error::InvalidInput(format!(
                "profile domain [{}, {}] must contain x = 0",
                grid.x0(),
                grid.x_end()
            )));
        }
        let left = grid.values()[0];
        let right = *grid.values().last().unwrap();
        if grid.x0() < 0.0 && (left + 1.0).norm() > background_tolerance {
            return Err(Error::BackgroundMismatch(format!(
                "|q(x0) + 1| = {:e} exceeds {background_tolerance:e}",
                (left + 1.0).norm()
            )));
        }
        if grid.x_end() > 0.0 && (right - 1.0).norm() > background_tolerance {
            return Err(Error::BackgroundMismatch(format!(
                "|q(x_end) - 1| = {:e} exceeds {background_tolerance:e}",
                (right - 1.0).norm()
            )));
        }
        Ok(Self { grid, background_tolerance })
    }

    /// Samples `f` on `[-half_width, half_width]` with spacing `dx`.
    pub fn from_fn(
        f: impl Fn(f64) -> C64,
        half_width: f64,
        dx: f64,
        background_tolerance: f64,
    ) -> Result<Self> {
        let n = steps_in(2.0 * half_width, dx)?;
        let grid = ComplexGrid1D::from_fn(-half_width, dx, n + 1, f)?;
        Self::new(grid, background_tolerance)
    }

    pub fn grid(&self) -> &ComplexGrid1D {
        &self.grid
    }

    pub fn background_tolerance(&self) -> f64 {
        self.background_tolerance
    }

    pub fn x_min(&self) -> f64 {
        self.grid.x0()
    }

    pub fn x_max(&self) -> f64 {
        self.grid.x_end()
    }

    pub fn half_width(&self) -> f64 {
        self.x_max().max(-self.x_min())
    }

    /// The profile `-q(-x)`, which carries the same kink background.
    pub fn mirrored(&self) -> Result<Self> {
        let values = self.grid.values().iter().rev().map(|q| -q).collect();
        let grid = ComplexGrid1D::new(-self.grid.x_end(), self.grid.dx(), values)?;
        Self::new(grid, self.background_tolerance)
    }

    #[inline]
    pub fn q(&self, x: f64) -> C64 {
        self.grid.interpolate(x)
    }
}

/// Number of steps of size `dx` in `length`, insisting the ratio is integral.
pub(crate) fn steps_in(length: f64, dx: f64) -> Result<usize> {
    if !(dx > 0.0) || !(length > 0.0) {
        return Err(Error::InvalidInput(format!("bad length {length} or spacing {dx}")));
    }
    let n = (length / dx).round();
    if ((n * dx) - length).abs() > 1e-9 * length.max(1.0) {
        return Err(Error::InvalidInput(format!(
            "length {length} is not an integer multiple of dx = {dx}"
        )));
    }
    Ok(n as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_is_an_involution() {
        let f = PotentialField::from_fn(|x| C64::new(x.tanh(), 0.1 * (-(x - 1.0) * (x - 1.0)).exp()), 10.0, 0.1, 1e-8)
            .unwrap();
        let m = f.mirrored().unwrap();
        assert!((m.q(2.0) + f.q(-2.0)).norm() < 1e-14);
        let back = m.mirrored().unwrap();
        assert_eq!(back.grid().values(), f.grid().values());
    }

    #[test]
    fn tanh_field_accepted() {
        let f = PotentialField::from_fn(|x| C64::from(x.tanh()), 25.0, 0.05, 1e-10).unwrap();
        assert_eq!(f.grid().len(), 1001);
        assert!((f.x_max() - 25.0).abs() < 1e-12);
        assert!((f.q(0.3) - C64::from(0.3f64.tanh())).norm() < 1e-6);
    }

    #[test]
    fn background_checked() {
        let r = PotentialField::from_fn(|x| C64::from(x.tanh()), 5.0, 0.05, 1e-10);
        assert!(matches!(r, Err(Error::BackgroundMismatch(_))));
    }

    #[test]
    fn one_sided_domain() {
        let grid = ComplexGrid1D::from_fn(0.0, 0.1, 11, |_| C64::from(1.0)).unwrap();
        assert!(PotentialField::new(grid, 1e-12).is_ok());
    }

    #[test]
    fn non_integral_width_rejected() {
        assert!(steps_in(1.0, 0.3).is_err());
    }
}
