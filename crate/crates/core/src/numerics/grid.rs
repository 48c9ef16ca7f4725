use serde::{Deserialize, Serialize};

use crate::numerics::interp::lagrange4;
use crate::{Error, Result, C64};

/// Complex samples on a uniform grid `x_i = x0 + i * dx`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexGrid1D {
    x0: f64,
    dx: f64,
    values: Vec<C64>,
}

impl ComplexGrid1D {
    pub fn new(x0: f64, dx: f64, values: Vec<C64>) -> Result<Self> {
        if !(dx > 0.0) || !dx.is_finite() {
            return Err(Error::InvalidInput(format!("grid spacing must be positive, got {dx}")));
        }
        if values.is_empty() {
            return Err(Error::InvalidInput("grid has no samples".into()));
        }
        if !x0.is_finite() {
            return Err(Error::InvalidInput("grid origin is not finite".into()));
        }
        Ok(Self { x0, dx, values })
    }

    /// Samples `f` at `n` points starting at `x0`.
    pub fn from_fn(x0: f64, dx: f64, n: usize, f: impl Fn(f64) -> C64) -> Result<Self> {
        let values = (0..n).map(|i| f(x0 + i as f64 * dx)).collect();
        Self::new(x0, dx, values)
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn x_end(&self) -> f64 {
        self.x(self.values.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [C64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(move |i| self.x(i))
    }

    /// Local cubic interpolation; exact at the nodes.
    pub fn interpolate(&self, x: f64) -> C64 {
        lagrange4(&self.values, self.x0, self.dx, x)
    }
}
