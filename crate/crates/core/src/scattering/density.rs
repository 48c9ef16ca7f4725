use std::f64::consts::PI;

use super::ReflectionTable;
use crate::numerics::{CubicSpline, Pchip};
use crate::{Error, Result, C64};

/// One of the four real half-lines cut at -1, 0 and 1.
#[derive(Clone, Debug)]
struct Branch {
    lo: f64,
    hi: f64,
    knots: Vec<f64>,
    v_knots: Vec<f64>,
    gap: CubicSpline,
    gap_safe: Pchip,
    abs2: CubicSpline,
    re: CubicSpline,
    im: CubicSpline,
}

impl Branch {
    fn new(lo: f64, hi: f64, samples: &[(f64, C64)]) -> Result<Self> {
        if samples.len() < 3 {
            return Err(Error::InvalidInput(format!(
                "reflection table needs at least 3 points in ({lo}, {hi}), has {}",
                samples.len()
            )));
        }
        let knots: Vec<f64> = samples.iter().map(|s| s.0).collect();
        let gap: Vec<f64> = samples.iter().map(|s| 1.0 - s.1.norm_sqr()).collect();
        let v_knots = gap.iter().map(|g| -g.ln() / (2.0 * PI)).collect();
        Ok(Self {
            lo,
            hi,
            gap: CubicSpline::new(knots.clone(), gap.clone()),
            gap_safe: Pchip::new(knots.clone(), gap),
            abs2: CubicSpline::new(knots.clone(), samples.iter().map(|s| s.1.norm_sqr()).collect()),
            re: CubicSpline::new(knots.clone(), samples.iter().map(|s| s.1.re).collect()),
            im: CubicSpline::new(knots.clone(), samples.iter().map(|s| s.1.im).collect()),
            knots,
            v_knots,
        })
    }

    fn first(&self) -> f64 {
        self.knots[0]
    }

    fn last(&self) -> f64 {
        *self.knots.last().unwrap()
    }

    fn covers(&self, s: f64) -> bool {
        s >= self.first() && s <= self.last()
    }

    /// Model beyond the outermost knot on the side of `end`.
    fn extrapolate(&self, s: f64, end: f64, near: usize, next: usize) -> f64 {
        let (s0, v0) = (self.knots[near], self.v_knots[near]);
        if end.is_infinite() {
            return v0 * (s0 / s).powi(4);
        }
        if end == 0.0 {
            return v0 * (s / s0).powi(4);
        }
        // log singularity at ±1: v ≈ a + b ln|s - end|
        let (s1, v1) = (self.knots[next], self.v_knots[next]);
        let l0 = (s0 - end).abs().ln();
        let l1 = (s1 - end).abs().ln();
        let b = (v1 - v0) / (l1 - l0);
        let a = v0 - b * l0;
        (a + b * (s - end).abs().ln()).max(0.0)
    }

    fn v(&self, s: f64) -> f64 {
        if self.covers(s) {
            let mut g = self.gap.eval(s);
            // the spline may undershoot where 1 - |r|² is nearly zero
            let floor = self.gap_safe.eval(s);
            if g < 0.5 * floor {
                g = floor;
            }
            return -g.clamp(f64::MIN_POSITIVE, 1.0).ln() / (2.0 * PI);
        }
        let n = self.knots.len();
        if s < self.first() {
            self.extrapolate(s, self.lo, 0, 1)
        } else {
            self.extrapolate(s, self.hi, n - 1, n - 2)
        }
    }
}

/// `v(s) = -ln(1 - |r(s)|²) / 2π` on the whole real line from a reflection
/// table.
///
/// Inside the tabulated range `1 - |r|²` is interpolated by a cubic spline
/// (a monotone cubic where the spline undershoots) and the log taken
/// exactly. Outside it, `v` follows the local
/// models: `a + b ln|s ∓ 1|` next to ±1, `s⁴` toward 0 and `s⁻⁴` toward
/// infinity.
#[derive(Clone, Debug)]
pub struct DensityModel {
    branches: [Branch; 4],
}

const CUTS: [f64; 5] = [f64::NEG_INFINITY, -1.0, 0.0, 1.0, f64::INFINITY];

impl DensityModel {
    pub fn new(table: &ReflectionTable) -> Result<Self> {
        let mut buckets: [Vec<(f64, C64)>; 4] = Default::default();
        for s in &table.samples {
            let m = s.r.norm();
            if m >= 1.0 || !m.is_finite() {
                return Err(Error::ReflectionModulus { z: s.z, modulus: m });
            }
            let idx = CUTS.windows(2).position(|w| s.z > w[0] && s.z < w[1]);
            match idx {
                Some(i) => buckets[i].push((s.z, s.r)),
                None => {
                    return Err(Error::InvalidInput(format!("table point {} is singular", s.z)))
                }
            }
        }
        let mut out = Vec::with_capacity(4);
        for (i, mut b) in buckets.into_iter().enumerate() {
            b.sort_by(|a, c| a.0.partial_cmp(&c.0).unwrap());
            b.dedup_by(|a, c| a.0 == c.0);
            out.push(Branch::new(CUTS[i], CUTS[i + 1], &b)?);
        }
        let branches: [Branch; 4] = out.try_into().unwrap();
        Ok(Self { branches })
    }

    fn branch(&self, s: f64) -> Option<&Branch> {
        self.branches.iter().find(|b| s > b.lo && s < b.hi)
    }

    /// `v(s)`; infinite at ±1, zero at 0.
    pub fn v(&self, s: f64) -> f64 {
        match self.branch(s) {
            Some(b) => b.v(s),
            None if s == 0.0 => 0.0,
            None => f64::INFINITY,
        }
    }

    /// `v` from a natural cubic spline of `|r|²` followed by the exact log.
    pub fn v_at_point(&self, s: f64) -> Result<f64> {
        let b = self.tabulated_branch(s)?;
        let a2 = b.abs2.eval(s);
        if !(0.0..1.0).contains(&a2) {
            return Err(Error::ReflectionModulus { z: s, modulus: a2.max(0.0).sqrt() });
        }
        Ok(-(1.0 - a2).ln() / (2.0 * PI))
    }

    /// `r(s)` by natural cubic splines of the real and imaginary parts.
    pub fn r_at_point(&self, s: f64) -> Result<C64> {
        let b = self.tabulated_branch(s)?;
        Ok(C64::new(b.re.eval(s), b.im.eval(s)))
    }

    fn tabulated_branch(&self, s: f64) -> Result<&Branch> {
        match self.branch(s) {
            Some(b) if b.covers(s) => Ok(b),
            _ => Err(Error::InvalidInput(format!("s = {s} lies outside the tabulated range"))),
        }
    }

    /// Consecutive finite pieces covering `(a, b)`, split at knots and at
    /// -1, 0, 1. Infinite ends are cut at the outermost knot; the caller
    /// handles the tail beyond it (see [`DensityModel::outer_knots`]).
    pub fn pieces(&self, a: f64, b: f64) -> Vec<(f64, f64)> {
        let (lo_tail, hi_tail) = self.outer_knots();
        let a = if a.is_infinite() { lo_tail } else { a };
        let b = if b.is_infinite() { hi_tail } else { b };
        let mut cuts: Vec<f64> = vec![a, b];
        for c in [-1.0, 0.0, 1.0] {
            if c > a && c < b {
                cuts.push(c);
            }
        }
        for br in &self.branches {
            cuts.extend(br.knots.iter().copied().filter(|&k| k > a && k < b));
        }
        cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        cuts.dedup();
        cuts.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Smallest and largest tabulated abscissae.
    pub fn outer_knots(&self) -> (f64, f64) {
        (self.branches[0].first(), self.branches[3].last())
    }

    /// True when `v` is log-singular at one end of the piece.
    pub fn singular_end(a: f64, b: f64) -> bool {
        [-1.0, 1.0].iter().any(|&c| a == c || b == c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::ZGridSpec;

    fn table(r: impl Fn(f64) -> C64) -> ReflectionTable {
        let grid = ZGridSpec { min: 0.05, max: 20.0, n: 800, exclusion_radius: 1e-3 }
            .points()
            .unwrap();
        ReflectionTable::from_reflection(grid, r)
    }

    #[test]
    fn zero_reflection_gives_zero_density() {
        let d = DensityModel::new(&table(|_| C64::new(0.0, 0.0))).unwrap();
        for s in [-30.0, -1.0005, -0.5, 0.01, 0.5, 0.9999, 3.0, 100.0] {
            assert_eq!(d.v(s), 0.0);
        }
    }

    #[test]
    fn density_matches_closed_form_inside_table() {
        let r = |z: f64| C64::new(0.5 * z * z / (1.0 + z.powi(4)), 0.1 * z / (1.0 + z * z));
        let d = DensityModel::new(&table(r)).unwrap();
        for s in [0.3, 0.77, 1.3, 2.2, -0.4, -4.0] {
            let exact = -(1.0 - r(s).norm_sqr()).ln() / (2.0 * PI);
            assert!((d.v(s) - exact).abs() < 1e-5 * exact.max(1e-3), "s = {s}: {} vs {exact}", d.v(s));
            assert!((d.v_at_point(s).unwrap() - exact).abs() < 1e-5 * exact.max(1e-3));
            assert!((d.r_at_point(s).unwrap() - r(s)).norm() < 1e-5);
        }
    }

    #[test]
    fn modulus_violation_rejected() {
        let t = ReflectionTable {
            z_grid: vec![2.0],
            samples: vec![super::super::ScatteringSample {
                z: 2.0,
                s11: C64::from(1.0),
                s21: C64::from(1.0),
                r: C64::from(1.0),
            }],
        };
        assert!(matches!(DensityModel::new(&t), Err(Error::ReflectionModulus { .. })));
    }

    #[test]
    fn pieces_split_at_singular_points() {
        let d = DensityModel::new(&table(|_| C64::new(0.1, 0.0))).unwrap();
        let p = d.pieces(0.5, 2.0);
        assert!(p.iter().any(|&(_, b)| b == 1.0));
        assert!(p.iter().any(|&(a, _)| a == 1.0));
        assert!(p.windows(2).all(|w| w[0].1 == w[1].0));
    }
}
