use crate::C64;

/// Four-point Lagrange interpolation on uniform samples. The stencil is
/// shifted inward at the edges, and `x` outside the grid is clamped.
pub fn lagrange4(values: &[C64], x0: f64, dx: f64, x: f64) -> C64 {
    let n = values.len();
    if n == 1 {
        return values[0];
    }
    let s = ((x - x0) / dx).clamp(0.0, (n - 1) as f64);
    if n < 4 {
        let i = (s.floor() as usize).min(n - 2);
        let w = s - i as f64;
        return values[i] * (1.0 - w) + values[i + 1] * w;
    }
    let i = s.floor() as isize;
    if (s - i as f64) == 0.0 {
        return values[i as usize];
    }
    let start = (i - 1).clamp(0, n as isize - 4) as usize;
    let u = s - start as f64;
    let (u0, u1, u2, u3) = (u, u - 1.0, u - 2.0, u - 3.0);
    let l0 = -u1 * u2 * u3 / 6.0;
    let l1 = u0 * u2 * u3 / 2.0;
    let l2 = -u0 * u1 * u3 / 2.0;
    let l3 = u0 * u1 * u2 / 6.0;
    values[start] * l0 + values[start + 1] * l1 + values[start + 2] * l2 + values[start + 3] * l3
}

fn locate(knots: &[f64], x: f64) -> usize {
    match knots.binary_search_by(|k| k.partial_cmp(&x).unwrap()) {
        Ok(i) => i.min(knots.len() - 2),
        Err(0) => 0,
        Err(i) => (i - 1).min(knots.len() - 2),
    }
}

/// Natural cubic spline on strictly increasing, possibly non-uniform knots.
#[derive(Clone, Debug)]
pub struct CubicSpline {
    knots: Vec<f64>,
    values: Vec<f64>,
    second: Vec<f64>,
}

impl CubicSpline {
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Self {
        assert_eq!(knots.len(), values.len());
        assert!(knots.len() >= 2, "spline needs at least two knots");
        let n = knots.len();
        let mut second = vec![0.0; n];
        if n > 2 {
            // tridiagonal solve for interior second derivatives
            let mut c_prime = vec![0.0; n];
            let mut d_prime = vec![0.0; n];
            for i in 1..n - 1 {
                let h0 = knots[i] - knots[i - 1];
                let h1 = knots[i + 1] - knots[i];
                let a = h0 / 6.0;
                let b = (h0 + h1) / 3.0;
                let c = h1 / 6.0;
                let d = (values[i + 1] - values[i]) / h1 - (values[i] - values[i - 1]) / h0;
                let denom = b - a * c_prime[i - 1];
                c_prime[i] = c / denom;
                d_prime[i] = (d - a * d_prime[i - 1]) / denom;
            }
            for i in (1..n - 1).rev() {
                second[i] = d_prime[i] - c_prime[i] * second[i + 1];
            }
        }
        Self { knots, values, second }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = locate(&self.knots, x);
        let h = self.knots[i + 1] - self.knots[i];
        let a = (self.knots[i + 1] - x) / h;
        let b = (x - self.knots[i]) / h;
        a * self.values[i]
            + b * self.values[i + 1]
            + ((a * a * a - a) * self.second[i] + (b * b * b - b) * self.second[i + 1]) * h * h
                / 6.0
    }
}

/// Monotone piecewise cubic Hermite interpolation (Fritsch-Carlson slopes).
/// Never overshoots the data, which keeps interpolated |r|^2 below one.
#[derive(Clone, Debug)]
pub struct Pchip {
    knots: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl Pchip {
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Self {
        assert_eq!(knots.len(), values.len());
        assert!(knots.len() >= 2, "interpolant needs at least two knots");
        let n = knots.len();
        let h: Vec<f64> = knots.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|i| (values[i + 1] - values[i]) / h[i]).collect();
        let mut slopes = vec![0.0; n];
        if n == 2 {
            slopes[0] = delta[0];
            slopes[1] = delta[0];
        } else {
            for i in 1..n - 1 {
                if delta[i - 1] * delta[i] <= 0.0 {
                    slopes[i] = 0.0;
                } else {
                    let w1 = 2.0 * h[i] + h[i - 1];
                    let w2 = h[i] + 2.0 * h[i - 1];
                    slopes[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
                }
            }
            slopes[0] = end_slope(h[0], h[1], delta[0], delta[1]);
            slopes[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }
        Self { knots, values, slopes }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = locate(&self.knots, x);
        let h = self.knots[i + 1] - self.knots[i];
        let t = (x - self.knots[i]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.values[i]
            + h10 * h * self.slopes[i]
            + h01 * self.values[i + 1]
            + h11 * h * self.slopes[i + 1]
    }
}

fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d * d0 <= 0.0 {
        0.0
    } else if d0 * d1 <= 0.0 && d.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        d
    }
}
