use std::f64::consts::PI;

use kinkscat::asymptotics::{
    alpha_infinity, e1_correction, interval_i, pc_first_moment, scaled_reflection, t_infinity,
    v_from_reflection_modulus, write_asymptotic_csv, CorrectionTerm, RayEvaluator,
};
use kinkscat::harness::read_asymptotic_csv;
use kinkscat::numerics::{integrate_adaptive, QuadratureRule, QuadratureSpec};
use kinkscat::scattering::{integrate_density, ReflectionTable, ZGridSpec};
use kinkscat::{Error, C64};
use proptest::prelude::*;

/// Smooth reflection with `r(1/z) = conj r(z)`.
fn smooth_r(z: f64) -> C64 {
    let u = z.abs().ln();
    let m = 0.35 * (-u * u).exp() * if z > 0.0 { 1.0 } else { 0.6 };
    C64::from_polar(m, 0.4 * u + 0.3 * u.signum() * u * u)
}

fn smooth_table() -> ReflectionTable {
    ReflectionTable::from_reflection(ZGridSpec::default().points().unwrap(), smooth_r)
}

fn zero_table() -> ReflectionTable {
    ReflectionTable::from_reflection(ZGridSpec::default().points().unwrap(), |_| C64::new(0.0, 0.0))
}

/// `T(z) = exp(-i ∫_I v(s) (1/(s - z) - 1/(2s)) ds)` off the real axis.
/// Tanh-sinh per tabulated piece copes with `z` close to an endpoint.
fn t_direct(ev: &RayEvaluator, z: C64) -> C64 {
    let model = &ev.density().model;
    let spec = QuadratureSpec { rule: QuadratureRule::TanhSinh, panels: 4, points_per_panel: 16, tolerance: 1e-11, ..Default::default() };
    let w = |s: f64| 1.0 / (C64::from(s) - z) - 0.5 / s;
    let (_, hi) = model.outer_knots();
    let mut acc = C64::new(0.0, 0.0);
    for &(a, b) in &ev.constants.intervals {
        for (p, q) in model.pieces(a, b.min(hi)) {
            acc += integrate_adaptive(|s| w(s) * model.v(s), p, q, &spec).unwrap();
        }
        if b == f64::INFINITY {
            acc += integrate_density(model, hi, b, w).unwrap();
        }
    }
    (-C64::i() * acc).exp()
}

#[test]
fn zero_reflection_gives_the_background() {
    let table = zero_table();
    for xi in [1.2, 3.0] {
        let ev = RayEvaluator::new(&table, xi).unwrap();
        let c = &ev.constants;
        assert_eq!(c.t_infinity, C64::from(1.0));
        assert_eq!(c.alpha_infinity, 0.0);
        let p = ev.evaluate(7.0, CorrectionTerm::FirstOrder).unwrap();
        assert_eq!(p.q(), C64::from(1.0));
        assert_eq!(p.correction, C64::new(0.0, 0.0));
        assert_eq!(ev.closed_form_correction(7.0).unwrap(), C64::new(0.0, 0.0));
    }
    let left = RayEvaluator::new(&table, -2.0).unwrap().evaluate(3.0, CorrectionTerm::FirstOrder).unwrap();
    assert_eq!(left.q(), C64::from(-1.0));
    assert_eq!(left.x, -12.0);
}

#[test]
fn regularized_t_matches_the_local_limit() {
    let table = smooth_table();
    for xi in [1.3, 2.5] {
        let ev = RayEvaluator::new(&table, xi).unwrap();
        let c = &ev.constants;
        let d = ev.density();
        let delta = 1e-6;
        let z1 = C64::new(c.geometry.xi1, delta);
        let t1 = t_direct(&ev, z1) * ((z1 - c.geometry.xi1).ln() * C64::new(0.0, d.v_xi1)).exp();
        assert!((t1 - c.t1).norm() < 1e-4, "xi = {xi}: {t1} vs {}", c.t1);
        let z2 = C64::new(c.geometry.xi2, delta);
        let t2 = t_direct(&ev, z2) * ((c.geometry.xi2 - z2).ln() * C64::new(0.0, -d.v_xi2)).exp();
        assert!((t2 - c.t2).norm() < 1e-4, "xi = {xi}: {t2} vs {}", c.t2);
        // far away T approaches T(∞)
        let far = t_direct(&ev, C64::new(0.0, 1e7));
        assert!((far - c.t_infinity).norm() < 1e-5);
    }
}

#[test]
fn alpha_and_t_infinity_are_consistent() {
    let table = smooth_table();
    let ev = RayEvaluator::new(&table, 1.8).unwrap();
    let m = &ev.density().model;
    let iv = interval_i(1.8).unwrap();
    let alpha = alpha_infinity(m, &iv).unwrap();
    let t_inf = t_infinity(m, &iv).unwrap();
    assert!(alpha > 0.0);
    assert!((t_inf.norm() - 1.0).abs() < 1e-14);
    assert!(((-C64::i() * alpha).exp() - 1.0 / (t_inf * t_inf)).norm() < 1e-13);
}

#[test]
fn invalid_arguments() {
    let table = smooth_table();
    assert!(matches!(RayEvaluator::new(&table, 0.8), Err(Error::SolitonicRegion(_))));
    assert!(interval_i(-2.0).is_err());
    let ev = RayEvaluator::new(&table, 2.0).unwrap();
    assert!(ev.evaluate(0.0, CorrectionTerm::FirstOrder).is_err());
    assert!(pc_first_moment(1, C64::new(0.1, 0.0), 0.0).is_err());
    assert!(pc_first_moment(3, C64::new(0.1, 0.0), 0.1).is_err());
    let m = pc_first_moment(1, C64::new(0.3, 0.0), v_from_reflection_modulus(0.3)).unwrap();
    assert!(matches!(e1_correction(1, 1.0, 2.0, m, 10.0), Err(Error::ConjugationSingular)));
    assert!(scaled_reflection(0, C64::from(0.1), C64::from(1.0), 0.0, 1.0, 0.1, 1.0).is_err());
}

#[test]
fn leading_only_drops_the_correction() {
    let table = smooth_table();
    let ev = RayEvaluator::new(&table, 2.0).unwrap();
    let a = ev.evaluate(20.0, CorrectionTerm::LeadingOnly).unwrap();
    let b = ev.evaluate(20.0, CorrectionTerm::FirstOrder).unwrap();
    assert_eq!(a.leading, b.leading);
    assert_eq!(a.correction, C64::new(0.0, 0.0));
    assert!(b.correction.norm() > 0.0);
}

#[test]
fn asymptotic_csv_round_trip() {
    let table = smooth_table();
    let ev = RayEvaluator::new(&table, 1.5).unwrap();
    let pts: Vec<_> = [5.0, 10.0, 40.0].iter().map(|&t| ev.evaluate(t, CorrectionTerm::FirstOrder).unwrap()).collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.csv");
    write_asymptotic_csv(&path, &pts).unwrap();
    let back = read_asymptotic_csv(&path).unwrap();
    assert_eq!(back.len(), pts.len());
    for (a, b) in back.iter().zip(&pts) {
        assert_eq!((a.t, a.x, a.xi), (b.t, b.x, b.xi));
        assert!((a.q() - b.q()).norm() < 1e-15);
        assert!((a.correction - b.correction).norm() < 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn moment_identities(m in 0.01f64..0.95, phase in -PI..PI, k in 1u8..=2) {
        // with |r|² = 1 - e^{-2πv}: |β₁₂|² = v and β₂₁ = conj β₁₂
        let r = C64::from_polar(m, phase);
        let v = v_from_reflection_modulus(m);
        let b = pc_first_moment(k, r, v).unwrap();
        prop_assert!((b.beta12 * b.beta21 - v).norm() < 1e-12 * v.max(1.0));
        prop_assert!((b.beta12.norm_sqr() / v - 1.0).abs() < 1e-10);
        prop_assert!((b.beta21 - b.beta12.conj()).norm() < 1e-10 * v.sqrt());
    }

    #[test]
    fn scaled_reflection_keeps_modulus(m in 0.0f64..0.99, ph in -PI..PI, tp in -PI..PI,
                                       th in -5.0f64..5.0, pp in 0.1f64..30.0, t in 0.5f64..500.0, k in 1u8..=2) {
        let r = C64::from_polar(m, ph);
        let tk = C64::from_polar(1.0, tp);
        let s = scaled_reflection(k, r, tk, th, if k == 1 { pp } else { -pp }, v_from_reflection_modulus(m), t).unwrap();
        prop_assert!((s.norm() - m).abs() < 1e-13);
    }

    #[test]
    fn closed_form_agrees_with_moment_route(xi in 1.05f64..3.5, t in 2.0f64..400.0, neg in any::<bool>()) {
        let table = smooth_table();
        let xi = if neg { -xi } else { xi };
        let ev = RayEvaluator::new(&table, xi).unwrap();
        let p = ev.evaluate(t, CorrectionTerm::FirstOrder).unwrap();
        let closed = ev.closed_form_correction(t).unwrap();
        // the closed form reads r at ξ₂ through r(1/z) = conj r(z), exact only up to table interpolation
        prop_assert!((p.correction - closed).norm() < 5e-8);
        prop_assert!((p.leading.norm() - 1.0).abs() < 1e-13);
        // a negative ray flips the sign of everything evaluated on the same table
        let mirror = RayEvaluator::new(&table, -xi).unwrap().evaluate(t, CorrectionTerm::FirstOrder).unwrap();
        prop_assert_eq!(mirror.q(), -p.q());
    }

    #[test]
    fn correction_is_order_one_over_root_t(xi in 1.05f64..4.5, t in 2.0f64..1e4) {
        let table = smooth_table();
        let ev = RayEvaluator::new(&table, xi).unwrap();
        let d = ev.density();
        let g = &ev.constants.geometry;
        let p = ev.evaluate(t, CorrectionTerm::FirstOrder).unwrap();
        // each E_k is bounded by √v (1 + ξ_k²)/(|ξ_k² - 1| √(2t|θ''|))
        let bound: f64 = [(g.xi1, g.theta_pp_1, d.v_xi1), (g.xi2, g.theta_pp_2, d.v_xi2)]
            .iter()
            .map(|&(x, pp, v)| v.sqrt() * (1.0 + x * x) / ((x * x - 1.0).abs() * (2.0 * t * pp.abs()).sqrt()))
            .sum();
        prop_assert!(p.correction.norm() <= bound * (1.0 + 1e-12));
    }
}

