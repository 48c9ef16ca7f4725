use std::f64::consts::PI;

use crate::numerics::{arg_gamma, gamma};
use crate::{Error, Result, C64};

/// `r` at a stationary point after conjugation by `T` and the
/// parabolic-cylinder scaling, `k ∈ {1, 2}`.
///
/// `theta_k` is `θ(ξ_k)` per unit time and `theta_pp_k` is `θ''(ξ_k)`.
pub fn scaled_reflection(
    k: u8,
    r: C64,
    t_k: C64,
    theta_k: f64,
    theta_pp_k: f64,
    v: f64,
    t: f64,
) -> Result<C64> {
    check_k(k)?;
    let scale = (2.0 * t * theta_pp_k.abs()).ln();
    let log_sign = if k == 1 { 1.0 } else { -1.0 };
    let phase = C64::i() * (2.0 * t * theta_k + log_sign * v * scale);
    Ok(-r * t_k * t_k * phase.exp())
}

fn check_k(k: u8) -> Result<()> {
    if k == 1 || k == 2 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("stationary point index must be 1 or 2, got {k}")))
    }
}

/// The off-diagonal entries of the `1/s` coefficient of the local
/// parabolic-cylinder solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PcMoment {
    pub beta12: C64,
    pub beta21: C64,
}

/// `β₁₂ = -√(2π) e^{iπ/4} e^{-πv/2} / (r_ξ Γ(-iv))` at ξ₁ and
/// `-√(2π) e^{3iπ/4} e^{-πv/2} / (r_ξ Γ(iv))` at ξ₂, with `β₂₁ = v/β₁₂`.
///
/// `r_xi` must satisfy `|r_xi|² = 1 - e^{-2πv}`.
pub fn pc_first_moment(k: u8, r_xi: C64, v: f64) -> Result<PcMoment> {
    check_k(k)?;
    if !(v > 0.0) || r_xi.norm() == 0.0 {
        return Err(Error::InvalidInput(format!(
            "parabolic-cylinder model needs v > 0 and r != 0, got v = {v}"
        )));
    }
    let (corner, g) = if k == 1 {
        (C64::from_polar(1.0, PI / 4.0), gamma(C64::new(0.0, -v))?)
    } else {
        (C64::from_polar(1.0, 3.0 * PI / 4.0), gamma(C64::new(0.0, v))?)
    };
    let beta12 = -(2.0 * PI).sqrt() * corner * (-PI * v / 2.0).exp() / (r_xi * g);
    Ok(PcMoment { beta12, beta21: v / beta12 })
}

/// `(2,1)` entry of the error-function coefficient contributed by
/// stationary point `k`, i.e. the `t^{-1/2}` correction before the
/// outer conjugation.
pub fn e1_correction(k: u8, xi_k: f64, theta_pp_k: f64, m: PcMoment, t: f64) -> Result<C64> {
    check_k(k)?;
    let eps = if k == 1 { 1.0 } else { -1.0 };
    let d = xi_k * xi_k - 1.0;
    if d.abs() < 1e-12 {
        return Err(Error::ConjugationSingular);
    }
    let root = (2.0 * t * theta_pp_k * eps).sqrt();
    Ok(C64::i() * eps * (xi_k * xi_k * m.beta21 + m.beta12) / (d * root))
}

/// `T(∞)⁻² (1 + Σ_k E_k)`.
pub fn q_asymptotic(t_inf: C64, e1_terms: &[C64]) -> C64 {
    let sum: C64 = e1_terms.iter().sum();
    (1.0 + sum) / (t_inf * t_inf)
}

/// The same correction written through phases only, so that
/// `q ≈ T(∞)⁻² (1 + h)`:
///
/// ```text
/// h = √v / (i (ξ₁² - 1) √(2t)) [ (ξ₁² e^{-iΦ₁} + e^{iΦ₁}) / √|θ''(ξ₁)|
///                               + (e^{-iΦ₂} + ξ₁² e^{iΦ₂}) / √|θ''(ξ₂)| ]
/// ```
///
/// with `Φ₁ = π/4 + arg Γ(iv) - arg r_ξ₁` and `Φ₂ = Φ₁ + α`,
/// `α = π/2 - 2 arg Γ(iv) + 2 arg r(ξ₁) + 2 arg(T₁/T₂) + 4tθ(ξ₁)
/// + v log(4t²|θ''(ξ₁)θ''(ξ₂)|)`. Only data at ξ₁ enter besides `T₂`;
/// `v(ξ₂) = v(ξ₁)` and `r(ξ₂) = conj r(ξ₁)` are assumed.
#[allow(clippy::too_many_arguments)]
pub fn h_closed_form(
    xi1: f64,
    theta1: f64,
    theta_pp_1: f64,
    theta_pp_2: f64,
    v: f64,
    r1: C64,
    t1: C64,
    t2: C64,
    t: f64,
) -> Result<C64> {
    if v == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    if !(v > 0.0) {
        return Err(Error::InvalidInput(format!("closed form needs v >= 0, got {v}")));
    }
    let ag = arg_gamma(C64::new(0.0, v))?;
    let r_xi1 = scaled_reflection(1, r1, t1, theta1, theta_pp_1, v, t)?;
    let phi1 = PI / 4.0 + ag - r_xi1.arg();
    let alpha = 0.5 * PI - 2.0 * ag
        + 2.0 * r1.arg()
        + 2.0 * (t1 / t2).arg()
        + 4.0 * t * theta1
        + v * (4.0 * t * t * (theta_pp_1 * theta_pp_2).abs()).ln();
    let phi2 = phi1 + alpha;
    let e = |p: f64| C64::from_polar(1.0, p);
    let x2 = xi1 * xi1;
    let bracket = (x2 * e(-phi1) + e(phi1)) / theta_pp_1.abs().sqrt()
        + (e(-phi2) + x2 * e(phi2)) / theta_pp_2.abs().sqrt();
    Ok(v.sqrt() * bracket / ((x2 - 1.0) * (2.0 * t).sqrt() * C64::i()))
}
