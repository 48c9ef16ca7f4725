use nalgebra::{Matrix2, Vector2};

use crate::{Error, Result, C64};

pub type CMat2 = Matrix2<C64>;
pub type CVec2 = Vector2<C64>;

fn mat_is_finite(m: &CMat2) -> bool {
    m.iter().all(|c| c.re.is_finite() && c.im.is_finite())
}

/// Integrates `dY/dx = A(x) Y` from `x_start` to `x_end` with classical RK4
/// on `n_steps` equal steps. `x_end < x_start` integrates backward.
pub fn integrate_linear_ode<F>(
    coefficient: F,
    y0: CMat2,
    x_start: f64,
    x_end: f64,
    n_steps: usize,
) -> Result<CMat2>
where
    F: Fn(f64) -> CMat2,
{
    if n_steps == 0 {
        return Err(Error::InvalidInput("n_steps must be at least 1".into()));
    }
    let h = (x_end - x_start) / n_steps as f64;
    let mut y = y0;
    for step in 0..n_steps {
        let x = x_start + step as f64 * h;
        let a0 = coefficient(x);
        let am = coefficient(x + 0.5 * h);
        let a1 = coefficient(x + h);
        let k1 = a0 * y;
        let k2 = am * (y + k1 * C64::from(0.5 * h));
        let k3 = am * (y + k2 * C64::from(0.5 * h));
        let k4 = a1 * (y + k3 * C64::from(h));
        y += (k1 + k2 * C64::from(2.0) + k3 * C64::from(2.0) + k4) * C64::from(h / 6.0);
        if !mat_is_finite(&y) {
            return Err(Error::NumericalBlowUp { step });
        }
    }
    Ok(y)
}

/// Integrates `du/dx = (D + B(x)) u` for a constant diagonal `D` with the
/// integrating-factor (Lawson) form of RK4: the diagonal part is propagated
/// exactly within each step, so large `|D|` costs accuracy only through the
/// oscillation of `B` against `exp(D x)`, never stability.
///
/// With `D = 0` this is exactly classical RK4.
pub fn integrate_split_linear_ode<F>(
    diag: [C64; 2],
    coupling: F,
    u0: CVec2,
    x_start: f64,
    x_end: f64,
    n_steps: usize,
) -> Result<CVec2>
where
    F: Fn(f64) -> CMat2,
{
    if n_steps == 0 {
        return Err(Error::InvalidInput("n_steps must be at least 1".into()));
    }
    let h = (x_end - x_start) / n_steps as f64;
    let e_half = CVec2::new((diag[0] * 0.5 * h).exp(), (diag[1] * 0.5 * h).exp());
    let e_full = e_half.component_mul(&e_half);
    let half = C64::from(0.5 * h);
    let full = C64::from(h);
    let mut u = u0;
    for step in 0..n_steps {
        let x = x_start + step as f64 * h;
        let b0 = coupling(x);
        let bm = coupling(x + 0.5 * h);
        let b1 = coupling(x + h);
        let k1 = b0 * u;
        let k2 = bm * (u + k1 * half).component_mul(&e_half);
        let k3 = bm * (u.component_mul(&e_half) + k2 * half);
        let k4 = b1 * (u.component_mul(&e_full) + (k3 * full).component_mul(&e_half));
        u = u.component_mul(&e_full)
            + (k1.component_mul(&e_full)
                + (k2 + k3).component_mul(&e_half) * C64::from(2.0)
                + k4)
                * C64::from(h / 6.0);
        if !(u[0].is_finite() && u[1].is_finite()) {
            return Err(Error::NumericalBlowUp { step });
        }
    }
    Ok(u)
}
