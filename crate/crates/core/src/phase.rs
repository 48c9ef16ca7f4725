//! The phase `θ(z) = ζ(z)(x/t - 2λ(z))` and its stationary points on rays
//! `ξ = x/(2t)` with `|ξ| > 1`.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayCoordinate {
    pub xi: f64,
    pub x: f64,
    pub t: f64,
}

impl RayCoordinate {
    pub fn from_xt(x: f64, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::InvalidInput(format!("t must be positive, got {t}")));
        }
        Ok(Self { xi: x / (2.0 * t), x, t })
    }

    pub fn on_ray(xi: f64, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::InvalidInput(format!("t must be positive, got {t}")));
        }
        Ok(Self { xi, x: 2.0 * xi * t, t })
    }

    /// `x/t`, the coefficient that appears in θ.
    fn speed(&self) -> f64 {
        2.0 * self.xi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StationaryPair {
    pub xi1: f64,
    pub xi2: f64,
    pub theta_pp_1: f64,
    pub theta_pp_2: f64,
    pub nu: f64,
}

fn check_origin(z: C64) -> Result<()> {
    if z == C64::new(0.0, 0.0) {
        Err(Error::PhaseSingularAtOrigin)
    } else {
        Ok(())
    }
}

/// `θ(z) = (x/t)(z - 1/z)/2 - (z² - z⁻²)/2`.
pub fn theta(z: C64, ray: &RayCoordinate) -> Result<C64> {
    check_origin(z)?;
    Ok(theta_unchecked(z, ray.speed()))
}

fn theta_unchecked(z: C64, speed: f64) -> C64 {
    let zi = 1.0 / z;
    0.5 * speed * (z - zi) - 0.5 * (z * z - zi * zi)
}

/// `(θ'(z), θ''(z))`, both from differentiating θ directly.
pub fn theta_derivatives(z: C64, ray: &RayCoordinate) -> Result<(C64, C64)> {
    check_origin(z)?;
    Ok(derivs(z, ray.speed()))
}

fn derivs(z: C64, speed: f64) -> (C64, C64) {
    let zi = 1.0 / z;
    let zi2 = zi * zi;
    let d1 = 0.5 * (speed * (1.0 + zi2) - 2.0 * z - 2.0 * zi2 * zi);
    let d2 = 0.5 * (-2.0 * speed * zi2 * zi - 2.0 + 6.0 * zi2 * zi2);
    (d1, d2)
}

/// Real stationary points for `|ξ| > 1`. Both are positive for ξ > 1 and
/// negative for ξ < -1, with `ξ₁ξ₂ = 1`, `θ''(ξ₁) > 0 > θ''(ξ₂)`.
pub fn stationary_points(xi: f64) -> Result<StationaryPair> {
    if !xi.is_finite() {
        return Err(Error::InvalidInput(format!("xi must be finite, got {xi}")));
    }
    if xi.abs() <= 1.0 + 1e-9 {
        return Err(Error::SolitonicRegion(xi.abs()));
    }
    let nu = 0.5 * (xi.abs() + (xi * xi + 8.0).sqrt());
    let root = (nu * nu - 4.0).sqrt();
    // the small root without cancellation; the large one is its reciprocal
    let small = 2.0 / (nu + root);
    let large = 0.5 * (nu + root);
    let sign = xi.signum();
    let (xi1, xi2) = (sign * small, sign * large);
    let speed = 2.0 * xi;
    let theta_pp_1 = derivs(C64::from(xi1), speed).1.re;
    let theta_pp_2 = derivs(C64::from(xi2), speed).1.re;
    Ok(StationaryPair { xi1, xi2, theta_pp_1, theta_pp_2, nu })
}

/// Sign of `Re(2iθ(z))` per unit time, with `|value| < 1e-14` mapped to 0.
pub fn signature_sample(z: C64, xi: f64) -> Result<i8> {
    check_origin(z)?;
    let v = signature_value(z, xi);
    Ok(if v.abs() < 1e-14 {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    })
}

/// `Re(2iθ(z)) = -2 Im θ(z)` per unit time.
pub fn signature_value(z: C64, xi: f64) -> f64 {
    -2.0 * theta_unchecked(z, 2.0 * xi).im
}

/// Writes `re_z,im_z,sign` over a rectangular lattice, skipping the origin.
pub fn write_signature_grid(
    path: &Path,
    xi: f64,
    re_range: (f64, f64),
    im_range: (f64, f64),
    n: (usize, usize),
) -> Result<()> {
    if n.0 < 2 || n.1 < 2 {
        return Err(Error::InvalidInput("signature lattice needs at least 2x2 points".into()));
    }
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "re_z,im_z,sign")?;
    for j in 0..n.1 {
        let y = im_range.0 + (im_range.1 - im_range.0) * j as f64 / (n.1 - 1) as f64;
        for i in 0..n.0 {
            let x = re_range.0 + (re_range.1 - re_range.0) * i as f64 / (n.0 - 1) as f64;
            let z = C64::new(x, y);
            if z == C64::new(0.0, 0.0) {
                continue;
            }
            writeln!(w, "{x},{y},{}", signature_sample(z, xi)?)?;
        }
    }
    w.flush()?;
    Ok(())
}
