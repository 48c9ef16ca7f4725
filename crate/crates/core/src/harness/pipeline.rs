use std::path::Path;

use rayon::prelude::*;

use super::config::{ProfileSource, RunConfig};
use crate::asymptotics::{AsymptoticPoint, CorrectionTerm, CrosscheckRow, RayEvaluator};
use crate::numerics::ComplexGrid1D;
use crate::pde::{evolve_sampling, make_initial_with, EvolutionState, RaySample};
use crate::scattering::{read_profile_csv, PotentialField, ScatteringData, ZsSolver};
use crate::{Error, Result, C64};

/// The initial profile sampled for the scattering problem.
pub fn profile_field(cfg: &RunConfig) -> Result<PotentialField> {
    let s = &cfg.scatter;
    match &cfg.profile {
        ProfileSource::Builtin(p) => {
            PotentialField::from_fn(|x| p.eval(x), s.half_width, s.dx, s.background_tolerance)
        }
        ProfileSource::File { file } => read_profile_csv(file, s.background_tolerance),
    }
}

/// Reflection table on the configured grid and the discrete spectrum.
pub fn scatter(cfg: &RunConfig, field: &PotentialField) -> Result<ScatteringData> {
    let solver = ZsSolver::new(field);
    let grid = cfg.z_grid.points()?;
    let table = solver.reflection_table(&grid)?;
    let spectrum = solver.find_discrete_spectrum(cfg.scatter.arc_samples)?;
    Ok(ScatteringData { table, spectrum })
}

/// Data of `-q₀(-x)`, used for rays with ξ < -1.
pub fn scatter_mirrored(cfg: &RunConfig, field: &PotentialField) -> Result<ScatteringData> {
    scatter(cfg, &field.mirrored()?)
}

#[derive(Clone, Debug, Default)]
pub struct AsymptoticRows {
    /// Ordered by ray, then time.
    pub points: Vec<AsymptoticPoint>,
    pub crosscheck: Vec<CrosscheckRow>,
    /// Largest `|e^{-iα(∞)} - T(∞)⁻²|` over the rays.
    pub max_identity_defect: f64,
}

/// Evaluates every `(ξ, t)` of the config. `mirrored` is required as soon
/// as a ray has ξ < -1.
pub fn asymptotic_rows(
    cfg: &RunConfig,
    data: &ScatteringData,
    mirrored: Option<&ScatteringData>,
) -> Result<AsymptoticRows> {
    let per_ray: Vec<Result<AsymptoticRows>> = cfg
        .xi_values
        .par_iter()
        .map(|&xi| {
            let table = if xi > 0.0 {
                &data.table
            } else {
                &mirrored
                    .ok_or_else(|| {
                        Error::InvalidInput(format!("xi = {xi} needs the mirrored scattering data"))
                    })?
                    .table
            };
            let ev = RayEvaluator::new(table, xi)?;
            let c = &ev.constants;
            let identity = (C64::new(0.0, -c.alpha_infinity).exp() - 1.0 / (c.t_infinity * c.t_infinity)).norm();
            let mut rows = AsymptoticRows { max_identity_defect: identity, ..Default::default() };
            for &t in &cfg.t_values {
                let p = ev.evaluate(t, CorrectionTerm::FirstOrder)?;
                rows.crosscheck.push(CrosscheckRow {
                    t,
                    xi,
                    correction: p.correction,
                    closed_form: ev.closed_form_correction(t)?,
                });
                rows.points.push(p);
            }
            Ok(rows)
        })
        .collect();
    let mut out = AsymptoticRows::default();
    for r in per_ray {
        let r = r?;
        out.points.extend(r.points);
        out.crosscheck.extend(r.crosscheck);
        out.max_identity_defect = out.max_identity_defect.max(r.max_identity_defect);
    }
    Ok(out)
}

/// Initial state on `[-L, L]`. A file profile is interpolated and
/// continued by `∓1` beyond its domain.
pub fn initial_state(cfg: &RunConfig) -> Result<EvolutionState> {
    match &cfg.profile {
        ProfileSource::Builtin(p) => make_initial_with(p, cfg.l, cfg.dx, cfg.solver_config()),
        ProfileSource::File { .. } => {
            let field = profile_field(cfg)?;
            let m = crate::scattering::steps_in(cfg.l, cfg.dx)?;
            let grid = ComplexGrid1D::from_fn(-cfg.l, cfg.dx, 2 * m + 1, |x| {
                if x < field.x_min() {
                    C64::from(-1.0)
                } else if x > field.x_max() {
                    C64::from(1.0)
                } else {
                    field.q(x)
                }
            })?;
            EvolutionState::from_grid(grid, cfg.solver_config())
        }
    }
}

/// Runs the reference solver through `t_values`, calling `at_time` after
/// each one.
pub fn evolve_rays(
    cfg: &RunConfig,
    mut at_time: impl FnMut(&EvolutionState) -> Result<()>,
) -> Result<Vec<RaySample>> {
    let mut state = initial_state(cfg)?;
    let mut out = Vec::new();
    for &t in &cfg.t_values {
        out.extend(evolve_sampling(&mut state, cfg.dt(), &cfg.xi_values, &[t])?);
        at_time(&state)?;
    }
    Ok(out)
}

fn column(headers: &csv::StringRecord, name: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| Error::Malformed { row: 0, msg: format!("missing column '{name}'") })
}

fn numbers(path: &Path, names: &[&str]) -> Result<Vec<Vec<f64>>> {
    let mut rd = csv::Reader::from_path(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let headers = rd.headers()?.clone();
    let idx: Vec<usize> = names.iter().map(|n| column(&headers, n)).collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let row = idx
            .iter()
            .map(|&j| {
                rec.get(j).and_then(|s| s.trim().parse::<f64>().ok()).ok_or_else(|| Error::Malformed {
                    row: i + 1,
                    msg: format!("column '{}' is not a number", headers.get(j).unwrap_or("?")),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

/// Ray CSV `t,x,re_q,im_q`; ξ is recovered as `x/(2t)`.
pub fn read_ray_csv(path: &Path) -> Result<Vec<RaySample>> {
    Ok(numbers(path, &["t", "x", "re_q", "im_q"])?
        .into_iter()
        .map(|r| RaySample { xi: r[1] / (2.0 * r[0]), t: r[0], x: r[1], q: C64::new(r[2], r[3]) })
        .collect())
}

pub fn read_asymptotic_csv(path: &Path) -> Result<Vec<AsymptoticPoint>> {
    Ok(numbers(path, &["t", "x", "xi", "re_q_asy", "im_q_asy", "re_corr", "im_corr"])?
        .into_iter()
        .map(|r| {
            let q = C64::new(r[3], r[4]);
            let correction = C64::new(r[5], r[6]);
            AsymptoticPoint { t: r[0], x: r[1], xi: r[2], leading: q - correction, correction }
        })
        .collect())
}
