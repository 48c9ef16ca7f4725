use std::f64::consts::PI;

use super::io::RaySample;
use super::profile::InitialProfileSpec;
use crate::numerics::ComplexGrid1D;
use crate::scattering::steps_in;
use crate::{Error, Result, C64};

/// Default `dt / dx²`.
pub const DEFAULT_STABILITY_FACTOR: f64 = 0.2;
/// Largest accepted `dt / dx²`. RK4 on the fourth-order Laplacian is
/// stable up to about 0.53.
pub const STABILITY_LIMIT: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    pub sponge_width: f64,
    pub sponge_rate: f64,
    pub stability_factor: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { sponge_width: 10.0, sponge_rate: 5.0, stability_factor: DEFAULT_STABILITY_FACTOR }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.sponge_width > 0.0) || !(self.sponge_rate >= 0.0) {
            return Err(Error::InvalidInput("sponge width must be positive and rate nonnegative".into()));
        }
        if !(self.stability_factor > 0.0 && self.stability_factor <= STABILITY_LIMIT) {
            return Err(Error::CflViolation { dt: self.stability_factor, limit: STABILITY_LIMIT });
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct EvolutionState {
    pub grid: ComplexGrid1D,
    pub t: f64,
    pub sponge_width: f64,
    pub charge0: f64,
    config: SolverConfig,
    kink: Vec<f64>,
    damping: Vec<(usize, f64)>,
    scratch: Scratch,
}

#[derive(Clone, Debug, Default)]
struct Scratch {
    k: [Vec<C64>; 4],
    stage: Vec<C64>,
}

pub fn make_initial(spec: &InitialProfileSpec, half_width: f64, dx: f64) -> Result<EvolutionState> {
    make_initial_with(spec, half_width, dx, SolverConfig::default())
}

impl EvolutionState {
    /// Wraps an arbitrary field whose ends sit on the `∓1` / `±1` background.
    pub fn from_grid(grid: ComplexGrid1D, config: SolverConfig) -> Result<Self> {
        config.validate()?;
        let n = grid.len();
        if n < 5 {
            return Err(Error::InvalidInput("evolution grid needs at least 5 points".into()));
        }
        let (first, last) = (grid.values()[0], grid.values()[n - 1]);
        if (first + 1.0).norm() > 1e-8 || (last - 1.0).norm() > 1e-8 {
            return Err(Error::BackgroundMismatch(format!(
                "field ends are {first} and {last}, expected -1 and 1"
            )));
        }
        let kink: Vec<f64> = grid.xs().map(f64::tanh).collect();
        let (x0, x1, w) = (grid.x0(), grid.x_end(), config.sponge_width);
        let damping = grid
            .xs()
            .enumerate()
            .filter_map(|(i, x)| {
                let depth = (x0 + w - x).max(x - (x1 - w));
                (depth > 0.0).then(|| (i, 0.5 * config.sponge_rate * (1.0 - (PI * depth / w).cos())))
            })
            .collect();
        let scratch = Scratch { k: std::array::from_fn(|_| vec![C64::new(0.0, 0.0); n]), stage: vec![C64::new(0.0, 0.0); n] };
        let mut state = Self { grid, t: 0.0, sponge_width: w, charge0: 0.0, config, kink, damping, scratch };
        state.charge0 = renormalized_charge(&state);
        Ok(state)
    }

    pub fn config(&self) -> SolverConfig {
        self.config
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.grid.x_end() - self.grid.x0())
    }

    pub fn dt_limit(&self) -> f64 {
        self.config.stability_factor * self.grid.dx() * self.grid.dx()
    }

    /// One RK4 step of size `dt` (negative runs backward), then the
    /// edge damping.
    pub fn step(&mut self, dt: f64) -> Result<()> {
        let limit = self.dt_limit();
        if !dt.is_finite() || dt.abs() > limit * (1.0 + 1e-9) {
            return Err(Error::CflViolation { dt, limit });
        }
        if dt == 0.0 {
            return Ok(());
        }
        let dx = self.grid.dx();
        let q = self.grid.values_mut();
        let Scratch { k, stage } = &mut self.scratch;
        let [k1, k2, k3, k4] = k;
        rhs(q, k1, dx);
        axpy(stage, q, 0.5 * dt, k1);
        rhs(stage, k2, dx);
        axpy(stage, q, 0.5 * dt, k2);
        rhs(stage, k3, dx);
        axpy(stage, q, dt, k3);
        rhs(stage, k4, dx);
        let c = dt / 6.0;
        let mut finite = true;
        for i in 0..q.len() {
            q[i] += c * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
            finite &= q[i].re.is_finite() && q[i].im.is_finite();
        }
        let decay = dt.abs();
        for &(i, g) in &self.damping {
            let base = C64::from(self.kink[i]);
            q[i] = base + (q[i] - base) * (-g * decay).exp();
        }
        self.t += dt;
        if !finite {
            return Err(Error::EvolutionBlowUp { t: self.t });
        }
        Ok(())
    }

    /// Steps of `dt` up to `t_target`, the last one shortened to land on it.
    pub fn evolve_to(&mut self, t_target: f64, dt: f64) -> Result<()> {
        if !(t_target >= self.t) {
            return Err(Error::InvalidInput(format!(
                "target time {t_target} precedes current time {}",
                self.t
            )));
        }
        if !(dt > 0.0) {
            return Err(Error::InvalidInput(format!("dt must be positive, got {dt}")));
        }
        let t0 = self.t;
        let span = t_target - t0;
        let full = (span / dt * (1.0 + 1e-12)).floor() as usize;
        let mut next_report = t0.floor() + 1.0;
        for k in 0..full {
            self.step(dt)?;
            self.t = t0 + (k + 1) as f64 * dt;
            if self.t >= next_report {
                log::info!("t = {:.1}", self.t);
                next_report += 1.0;
            }
        }
        let rest = t_target - self.t;
        if rest > 1e-14 * t_target.abs().max(1.0) {
            self.step(rest)?;
        }
        self.t = t_target;
        Ok(())
    }
}

pub fn make_initial_with(
    spec: &InitialProfileSpec,
    half_width: f64,
    dx: f64,
    config: SolverConfig,
) -> Result<EvolutionState> {
    spec.validate()?;
    let m = steps_in(half_width, dx)?;
    let n = 2 * m + 1;
    let grid = ComplexGrid1D::from_fn(-half_width, dx, n, |x| spec.eval(x))?;
    let inner = half_width - config.sponge_width;
    let leak = grid
        .xs()
        .zip(grid.values())
        .filter(|(x, _)| x.abs() >= inner)
        .map(|(x, q)| (q - x.tanh()).norm())
        .fold(0.0, f64::max);
    if leak > 1e-8 {
        return Err(Error::BackgroundMismatch(format!(
            "perturbation reaches the damping bands (|q - tanh| = {leak:e} beyond |x| = {inner})"
        )));
    }
    EvolutionState::from_grid(grid, config)
}

fn axpy(out: &mut [C64], q: &[C64], a: f64, k: &[C64]) {
    for ((o, &qi), &ki) in out.iter_mut().zip(q).zip(k) {
        *o = qi + a * ki;
    }
}

/// `i(q_xx - 2(|q|² - 1)q)` on the interior; the two end cells are held.
fn rhs(q: &[C64], out: &mut [C64], dx: f64) {
    let n = q.len();
    let c = 1.0 / (12.0 * dx * dx);
    let at = |j: isize| -> C64 {
        if j < 0 {
            C64::from(-1.0)
        } else if j as usize >= n {
            C64::from(1.0)
        } else {
            q[j as usize]
        }
    };
    let f = |qm2: C64, qm1: C64, q0: C64, qp1: C64, qp2: C64| {
        let d2 = (-(qm2 + qp2) + 16.0 * (qm1 + qp1) - 30.0 * q0) * c;
        let nl = 2.0 * (q0.norm_sqr() - 1.0) * q0;
        C64::new(-(d2.im - nl.im), d2.re - nl.re)
    };
    out[0] = C64::new(0.0, 0.0);
    out[n - 1] = C64::new(0.0, 0.0);
    for j in [1, n - 2] {
        let j = j as isize;
        out[j as usize] = f(at(j - 2), at(j - 1), at(j), at(j + 1), at(j + 2));
    }
    for (j, w) in q.windows(5).enumerate() {
        let i = j + 2;
        if i < n - 2 {
            out[i] = f(w[0], w[1], w[2], w[3], w[4]);
        }
    }
}

/// Composite Simpson integral of `|q|² - 1`; an odd trailing interval is
/// closed with the trapezoid rule.
pub fn renormalized_charge(state: &EvolutionState) -> f64 {
    let q = state.grid.values();
    let dx = state.grid.dx();
    let f: Vec<f64> = q.iter().map(|z| z.norm_sqr() - 1.0).collect();
    let n = f.len();
    let pairs = (n - 1) / 2;
    let mut s = 0.0;
    for p in 0..pairs {
        let i = 2 * p;
        s += f[i] + 4.0 * f[i + 1] + f[i + 2];
    }
    let mut total = s * dx / 3.0;
    if (n - 1) % 2 == 1 {
        total += 0.5 * dx * (f[n - 2] + f[n - 1]);
    }
    total
}

/// `q(2ξt, t)` at the state's current time by cubic interpolation.
pub fn sample_along_ray(state: &EvolutionState, xi: f64) -> Result<RaySample> {
    let x = 2.0 * xi * state.t;
    let trusted = state.half_width() - 3.0 * state.sponge_width;
    if !x.is_finite() || x.abs() > trusted {
        return Err(Error::RayLeavesDomain { xi, t: state.t });
    }
    Ok(RaySample { xi, t: state.t, x, q: state.grid.interpolate(x) })
}

/// Evolves through the increasing times `t_values`, sampling every ray at
/// each. Samples are ordered by time, then by the order of `xis`.
pub fn evolve_sampling(
    state: &mut EvolutionState,
    dt: f64,
    xis: &[f64],
    t_values: &[f64],
) -> Result<Vec<RaySample>> {
    if t_values.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidInput("t values must be strictly increasing".into()));
    }
    let trusted = state.half_width() - 3.0 * state.sponge_width;
    if let Some(&t_max) = t_values.last() {
        for &xi in xis {
            if (2.0 * xi * t_max).abs() > trusted {
                return Err(Error::RayLeavesDomain { xi, t: t_max });
            }
        }
    }
    let mut out = Vec::with_capacity(xis.len() * t_values.len());
    for &t in t_values {
        state.evolve_to(t, dt)?;
        for &xi in xis {
            out.push(sample_along_ray(state, xi)?);
        }
    }
    Ok(out)
}
