use std::io::Write;

use kinkscat::scattering::{
    parse_profile, read_profile_csv, trace_formula_eval, write_profile_csv, DensityModel,
    DiscreteSpectrum, PotentialField, ReflectionTable, ScatteringData, Side, SolverSettings,
    ZGridSpec, ZsSolver,
};
use kinkscat::{Error, C64};
use proptest::prelude::*;

fn kink() -> PotentialField {
    PotentialField::from_fn(|x| C64::from(x.tanh()), 20.0, 0.01, 1e-10).unwrap()
}

fn bumped(a: C64) -> PotentialField {
    PotentialField::from_fn(
        |x| C64::from(x.tanh()) + a * (-(x - 0.7) * (x - 0.7) / 4.0).exp(),
        20.0,
        0.01,
        1e-8,
    )
    .unwrap()
}

#[test]
fn kink_s11_is_a_blaschke_factor() {
    // reflectionless with one eigenvalue at i: s11 = (z - i)/(z + i)
    let f = kink();
    let s = ZsSolver::new(&f);
    for z in [C64::new(0.3, 0.4), C64::new(-1.5, 0.2), C64::new(0.0, 2.5), C64::from(2.2), C64::from(-0.45)] {
        let exact = (z - C64::i()) / (z + C64::i());
        let got = s.s11(z).unwrap();
        assert!((got - exact).norm() < 1e-6, "z = {z}: {got} vs {exact}");
    }
}

#[test]
fn kink_jost_columns_are_plane_waves_outside_support() {
    // for q = tanh the right column at large x equals its background form
    let f = kink();
    let s = ZsSolver::new(&f);
    let z = C64::new(0.8, 0.3);
    let m = s.jost_matrix_at(z, Side::Plus, 19.0).unwrap();
    let y = kinkscat::scattering::background_matrix(z, Side::Plus);
    assert!((m - y).norm() < 1e-6);
}

#[test]
fn exclusion_disks_rejected() {
    let f = kink();
    let s = ZsSolver::new(&f);
    for z in [1.0 + 1e-4, -1.0 - 5e-4, 1e-5] {
        assert!(matches!(s.scattering_coefficients(z), Err(Error::SingularSpectralPoint { .. })));
    }
    assert!(s.s11(C64::new(f64::NAN, 1.0)).is_err());
    let wide = SolverSettings { exclusion_radius: 0.1, ..Default::default() };
    let s = ZsSolver::with_settings(&f, wide);
    assert!(s.scattering_coefficients(1.05).is_err());
}

#[test]
fn background_mismatch_rejected() {
    let r = PotentialField::from_fn(|x| C64::from((x / 10.0).tanh()), 10.0, 0.1, 1e-8);
    assert!(matches!(r, Err(Error::BackgroundMismatch(_))));
    let r = PotentialField::from_fn(|x| C64::from(x.tanh() + 1.0), 10.0, 0.1, 1e-8);
    assert!(matches!(r, Err(Error::BackgroundMismatch(_))));
}

#[test]
fn perturbed_profile_data_is_consistent() {
    let f = bumped(C64::new(0.1, 0.0));
    let s = ZsSolver::new(&f);
    let grid = ZGridSpec { min: 0.1, max: 10.0, n: 64, exclusion_radius: 1e-3 }.points().unwrap();
    let table = s.reflection_table(&grid).unwrap();
    assert!(table.max_unitarity_defect() < 1e-8);
    assert!(table.max_symmetry_defect(1e-10) < 1e-8);
    assert!(table.max_abs_r() < 1.0);
    let spectrum = s.find_discrete_spectrum(128).unwrap();
    assert!(!spectrum.is_empty());
    assert!(spectrum.eigenvalues.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12 && z.im > 0.0));
    assert!(spectrum.max_norming_phase_defect() < 1e-4);
    // the trace formula rebuilds s11 away from the cut
    let z = C64::new(0.2, 1.3);
    let rebuilt = trace_formula_eval(&spectrum, &table, z).unwrap();
    assert!((rebuilt - s.s11(z).unwrap()).norm() < 1e-3);
}

#[test]
fn mirrored_profile_conjugates_s11() {
    // q̃(x) = -q(-x) has s̃11(z) = conj s11(-z) and |r̃(z)| = |r(-z)|
    let f = bumped(C64::new(0.1, 0.05));
    let m = f.mirrored().unwrap();
    let (a, b) = (ZsSolver::new(&f), ZsSolver::new(&m));
    for z in [0.4, 1.7, -0.6, -2.5] {
        let s = a.scattering_coefficients(-z).unwrap();
        let t = b.scattering_coefficients(z).unwrap();
        assert!((t.s11 - s.s11.conj()).norm() < 1e-9);
        assert!((t.r.norm() - s.r.norm()).abs() < 1e-9);
    }
    let back = m.mirrored().unwrap();
    assert_eq!(back.grid().values(), f.grid().values());
}

#[test]
fn density_of_zero_reflection_vanishes() {
    let table = ReflectionTable::from_reflection(ZGridSpec::default().points().unwrap(), |_| C64::new(0.0, 0.0));
    let d = DensityModel::new(&table).unwrap();
    for s in [-3.0, -0.5, 0.2, 2.0, 40.0] {
        assert_eq!(d.v(s), 0.0);
    }
}

#[test]
fn density_rejects_unit_modulus() {
    let table = ReflectionTable::from_reflection(vec![-2.0, -0.5, 0.5, 2.0], |z| C64::new(if z > 1.0 { 1.0 } else { 0.1 }, 0.0));
    assert!(matches!(DensityModel::new(&table), Err(Error::ReflectionModulus { .. })));
}

#[test]
fn profile_csv_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    let f = PotentialField::from_fn(|x| C64::from((2.0 * x).tanh()), 12.0, 0.25, 1e-8).unwrap();
    write_profile_csv(&path, &f).unwrap();
    let back = read_profile_csv(&path, 1e-8).unwrap();
    assert_eq!(back.grid().len(), f.grid().len());
    for (a, b) in back.grid().values().iter().zip(f.grid().values()) {
        assert!((a - b).norm() < 1e-15);
    }
}

#[test]
fn profile_csv_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.csv");
    assert!(matches!(read_profile_csv(&missing, 1e-8), Err(Error::ProfileNotFound(p)) if p == missing));

    let mut text = String::from("x,re_q,im_q\n");
    for i in 0..40 {
        let x = -10.0 + 0.5 * i as f64 + if i == 17 { 0.01 } else { 0.0 };
        text.push_str(&format!("{x},{},0\n", x.tanh()));
    }
    let path = dir.path().join("bad.csv");
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    match read_profile_csv(&path, 1e-8) {
        Err(Error::Malformed { row, msg }) => {
            assert_eq!(row, 18);
            assert!(msg.contains("non-uniform"));
        }
        other => panic!("unexpected {other:?}"),
    }

    let r = parse_profile("x,re_q,im_q\n-1,-1,0\n0,zero,0\n1,1,0\n2,1,0\n".as_bytes(), 1e-8);
    assert!(matches!(r, Err(Error::Malformed { row: 2, .. })));
    let r = parse_profile("x,re_q,im_q\n-1,-1,0\n0,0,0\n".as_bytes(), 1e-8);
    assert!(matches!(r, Err(Error::Malformed { .. })));
}

#[test]
fn scattering_json_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let f = bumped(C64::new(0.05, 0.0));
    let s = ZsSolver::new(&f);
    let grid = ZGridSpec { min: 0.2, max: 5.0, n: 32, exclusion_radius: 1e-3 }.points().unwrap();
    let data = ScatteringData { table: s.reflection_table(&grid).unwrap(), spectrum: s.find_discrete_spectrum(32).unwrap() };
    data.write(&path).unwrap();
    assert_eq!(ScatteringData::read(&path).unwrap(), data);
    assert!(ScatteringData::read(&dir.path().join("none.json")).is_err());
    let bad = r#"{"grid":[1.5],"s11":[],"s21":[],"r":[],"eigenvalues":[],"norming_constants":[]}"#;
    assert!(ScatteringData::from_json(bad).is_err());
    let empty = ScatteringData { table: ReflectionTable { z_grid: vec![], samples: vec![] }, spectrum: DiscreteSpectrum::default() };
    assert_eq!(ScatteringData::from_json(&empty.to_json().unwrap()).unwrap(), empty);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn unitarity_and_reciprocity(ar in -0.3f64..0.3, ai in -0.3f64..0.3, z in 1.05f64..6.0, neg in any::<bool>()) {
        let f = bumped(C64::new(ar, ai));
        let s = ZsSolver::new(&f);
        let z = if neg { -z } else { z };
        let a = s.scattering_coefficients(z).unwrap();
        let b = s.scattering_coefficients(1.0 / z).unwrap();
        prop_assert!(a.unitarity_defect().abs() < 1e-8);
        prop_assert!(b.unitarity_defect().abs() < 1e-8);
        prop_assert!((a.r - b.r.conj()).norm() < 1e-8);
        prop_assert!(a.r.norm() < 1.0);
    }
}
