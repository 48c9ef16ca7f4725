use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureRule {
    GaussLegendre,
    TanhSinh,
}

/// How an integral over a finite interval is discretised.
///
/// For Gauss-Legendre the interval is split into `panels` equal panels of
/// `points_per_panel` nodes, then panels are bisected until two successive
/// estimates agree to `tolerance`. For tanh-sinh the total node budget is
/// `panels * points_per_panel` and the step is halved until convergence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rule: QuadratureRule,
    pub panels: usize,
    pub points_per_panel: usize,
    pub singularity_subtraction: bool,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_tolerance() -> f64 {
    1e-12
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rule: QuadratureRule::GaussLegendre,
            panels: 8,
            points_per_panel: 10,
            singularity_subtraction: true,
            tolerance: default_tolerance(),
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.panels == 0 || self.points_per_panel == 0 {
            return Err(Error::InvalidInput("quadrature needs positive panels and points".into()));
        }
        if self.panels * self.points_per_panel < 8 {
            return Err(Error::InvalidInput(
                "quadrature needs panels * points_per_panel >= 8".into(),
            ));
        }
        Ok(())
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        if n == 1 {
            nodes[0] = 0.0;
            weights[0] = 2.0;
            break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl_panel<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> C64 {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut acc = C64::new(0.0, 0.0);
    for (x, w) in nodes.iter().zip(weights) {
        acc += f(c + r * x) * *w;
    }
    acc * r
}

fn tanh_sinh_level<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64, h: f64) -> C64 {
    let r = 0.5 * (b - a);
    let mut acc = C64::new(0.0, 0.0);
    let kmax = (4.0 / h).ceil() as i64;
    for k in -kmax..=kmax {
        let t = k as f64 * h;
        let u = 0.5 * PI * t.sinh();
        let x = u.tanh();
        let w = 0.5 * PI * t.cosh() / (u.cosh() * u.cosh());
        if w < 1e-300 {
            continue;
        }
        // distance to the nearer endpoint, computed without cancellation
        let gap = 1.0 / ((2.0 * u.abs()).exp() + 1.0) * 2.0;
        if gap * r == 0.0 {
            continue;
        }
        let s = if x >= 0.0 { b - r * gap } else { a + r * gap };
        if s <= a || s >= b {
            continue;
        }
        acc += f(s) * w;
    }
    acc * (h * r)
}

/// Fixed composite rule, no adaptivity.
pub fn integrate<F: Fn(f64) -> C64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> C64 {
    match spec.rule {
        QuadratureRule::GaussLegendre => {
            let (nodes, weights) = gauss_legendre(spec.points_per_panel);
            let width = (b - a) / spec.panels as f64;
            (0..spec.panels)
                .map(|p| {
                    let lo = a + p as f64 * width;
                    gl_panel(&f, lo, lo + width, &nodes, &weights)
                })
                .sum()
        }
        QuadratureRule::TanhSinh => {
            let n = (spec.panels * spec.points_per_panel) as f64;
            tanh_sinh_level(&f, a, b, 8.0 / n)
        }
    }
}

/// Adaptive integration to `spec.tolerance` (absolute, relative to the
/// magnitude of the running estimate when that exceeds one).
pub fn integrate_adaptive<F: Fn(f64) -> C64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<C64> {
    spec.validate()?;
    if a == b {
        return Ok(C64::new(0.0, 0.0));
    }
    match spec.rule {
        QuadratureRule::GaussLegendre => {
            let (nodes, weights) = gauss_legendre(spec.points_per_panel);
            let width = (b - a) / spec.panels as f64;
            let mut total = C64::new(0.0, 0.0);
            let tol = spec.tolerance / spec.panels as f64;
            for p in 0..spec.panels {
                let lo = a + p as f64 * width;
                let hi = if p + 1 == spec.panels { b } else { lo + width };
                let whole = gl_panel(&f, lo, hi, &nodes, &weights);
                total += bisect(&f, lo, hi, whole, &nodes, &weights, tol, 0)
                    .ok_or(Error::QuadratureNonConvergence { a, b })?;
            }
            Ok(total)
        }
        QuadratureRule::TanhSinh => {
            let n = (spec.panels * spec.points_per_panel) as f64;
            let mut h = 8.0 / n;
            let mut prev = tanh_sinh_level(&f, a, b, h);
            for _ in 0..12 {
                h *= 0.5;
                let next = tanh_sinh_level(&f, a, b, h);
                if (next - prev).norm() <= spec.tolerance * next.norm().max(1.0) {
                    return Ok(next);
                }
                prev = next;
            }
            Err(Error::QuadratureNonConvergence { a, b })
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn bisect<F: Fn(f64) -> C64>(
    f: &F,
    a: f64,
    b: f64,
    whole: C64,
    nodes: &[f64],
    weights: &[f64],
    tol: f64,
    depth: usize,
) -> Option<C64> {
    let m = 0.5 * (a + b);
    let left = gl_panel(f, a, m, nodes, weights);
    let right = gl_panel(f, m, b, nodes, weights);
    let sum = left + right;
    if (sum - whole).norm() <= tol * sum.norm().max(1.0) {
        return Some(sum);
    }
    if depth >= 40 {
        return None;
    }
    Some(
        bisect(f, a, m, left, nodes, weights, 0.5 * tol, depth + 1)?
            + bisect(f, m, b, right, nodes, weights, 0.5 * tol, depth + 1)?,
    )
}

/// Integral over `(a, ∞)` via `s = a + u/(1-u)`, `u ∈ (0, 1)`.
pub fn integrate_semi_infinite<F: Fn(f64) -> C64>(
    f: F,
    a: f64,
    spec: &QuadratureSpec,
) -> Result<C64> {
    integrate_adaptive(
        |u| {
            let one_minus = 1.0 - u;
            if one_minus <= 0.0 {
                return C64::new(0.0, 0.0);
            }
            f(a + u / one_minus) / (one_minus * one_minus)
        },
        0.0,
        1.0,
        spec,
    )
    .map_err(|e| match e {
        Error::QuadratureNonConvergence { .. } => {
            Error::TailIntegration(format!("semi-infinite integral from {a} did not converge"))
        }
        other => other,
    })
}

/// Cauchy-type integral `∫_a^b f(s) / (s - pole) ds`.
///
/// A pole off `[a, b]` is integrated directly. A pole sitting exactly on an
/// endpoint returns the finite part
///
/// ```text
/// ∫_a^b (f(s) - f(e)) / (s - e) ds + f(e) (ln|b - e| - ln|a - e|)
/// ```
///
/// with the vanishing logarithm dropped. The log terms are real, so the
/// finite part is free of any half-plane choice.
pub fn integrate_with_log_endpoint<F: Fn(f64) -> C64>(
    f: F,
    interval: (f64, f64),
    pole: C64,
    spec: &QuadratureSpec,
) -> Result<C64> {
    let (a, b) = interval;
    if !(b > a) {
        return Err(Error::InvalidInput(format!("empty interval ({a}, {b})")));
    }
    let on_axis = pole.im == 0.0;
    let endpoint = if on_axis && pole.re == a {
        Some(a)
    } else if on_axis && pole.re == b {
        Some(b)
    } else {
        None
    };
    match endpoint {
        None => {
            if on_axis && pole.re > a && pole.re < b {
                return Err(Error::InteriorPole { pole, a, b });
            }
            integrate_adaptive(|s| f(s) / (C64::from(s) - pole), a, b, spec)
        }
        Some(e) => {
            if !spec.singularity_subtraction {
                return Err(Error::EndpointPoleWithoutSubtraction { pole });
            }
            let fe = f(e);
            let regular = integrate_adaptive(
                |s| {
                    let d = s - e;
                    if d == 0.0 {
                        C64::new(0.0, 0.0)
                    } else {
                        (f(s) - fe) / d
                    }
                },
                a,
                b,
                spec,
            )?;
            let log_term = if e == a { (b - a).ln() } else { -(b - a).ln() };
            Ok(regular + fe * log_term)
        }
    }
}
