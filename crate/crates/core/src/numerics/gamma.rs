use std::f64::consts::PI;

use crate::{Error, Result, C64};

const G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_ln_gamma(w: C64) -> C64 {
    // valid for Re w >= 0.5
    let z = w - 1.0;
    let mut series = C64::from(LANCZOS[0]);
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        series += *c / (z + k as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + series.ln()
}

fn check_pole(w: C64) -> Result<()> {
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite gamma argument {w}")));
    }
    if w.im.abs() < 1e-14 && w.re <= 0.0 && (w.re - w.re.round()).abs() < 1e-14 {
        return Err(Error::GammaPole(w));
    }
    Ok(())
}

/// Principal branch of log Γ(w): continuous on ℂ cut along the negative
/// real axis, matching `Σ ln` of the recurrence factors.
pub fn ln_gamma(w: C64) -> Result<C64> {
    check_pole(w)?;
    if w.re >= 0.5 {
        return Ok(lanczos_ln_gamma(w));
    }
    if w.re > -40.0 {
        // ln Γ(w) = ln Γ(w + n) - Σ ln(w + k)
        let n = (0.5 - w.re).ceil() as usize;
        let mut acc = lanczos_ln_gamma(w + n as f64);
        for k in 0..n {
            acc -= (w + k as f64).ln();
        }
        return Ok(acc);
    }
    // reflection, then pick the branch that keeps the imaginary part continuous
    let s = (PI * w).sin();
    let raw = C64::from(PI.ln()) - s.ln() - lanczos_ln_gamma(1.0 - w);
    let n = (0.5 - w.re).ceil();
    let mut shifted = lanczos_ln_gamma(w + n);
    let mut k = 0.0;
    while k < n {
        shifted -= (w + k).ln();
        k += 1.0;
    }
    let turns = ((shifted.im - raw.im) / (2.0 * PI)).round();
    Ok(C64::new(raw.re, raw.im + 2.0 * PI * turns))
}

pub fn gamma(w: C64) -> Result<C64> {
    Ok(ln_gamma(w)?.exp())
}

/// Argument of Γ(w), taken from the continuous log branch (not wrapped).
pub fn arg_gamma(w: C64) -> Result<f64> {
    Ok(ln_gamma(w)?.im)
}
