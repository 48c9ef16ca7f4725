use std::path::Path;

use crate::numerics::ComplexGrid1D;
use crate::{Result, C64};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RaySample {
    pub xi: f64,
    pub t: f64,
    pub x: f64,
    pub q: C64,
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// `x,re_q,im_q`
pub fn write_snapshot_csv(path: &Path, grid: &ComplexGrid1D) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["x", "re_q", "im_q"])?;
    for (x, q) in grid.xs().zip(grid.values()) {
        w.write_record([fmt(x), fmt(q.re), fmt(q.im)])?;
    }
    w.flush()?;
    Ok(())
}

/// `t,x,re_q,im_q`
pub fn write_ray_csv(path: &Path, samples: &[RaySample]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["t", "x", "re_q", "im_q"])?;
    for s in samples {
        w.write_record([fmt(s.t), fmt(s.x), fmt(s.q.re), fmt(s.q.im)])?;
    }
    w.flush()?;
    Ok(())
}
