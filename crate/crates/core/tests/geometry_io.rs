mod common;

use crtwist::dynamics::{integrate_frame, twist_profile, Span};
use crtwist::error::Error;
use crtwist::export;
use crtwist::geometry::{self, ProjectedCurve};
use crtwist::linalg::{self, c, CMat3, CVec3};
use crtwist::moduli::CurveClass;
use crtwist::reconstruction;
use proptest::prelude::*;

use common::EXAMPLE;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn chart_and_projection_are_inverse(x in -50.0..50.0f64, y in -50.0..50.0f64, z in -50.0..50.0f64,
                                        r in 0.01..100.0f64, a in -3.2..3.2f64) {
        let w = geometry::heisenberg_chart([x, y, z]);
        prop_assert!(geometry::null_residual(&w) < 1e-14);
        // any representative of the same projective point
        let u = w * c(r * a.cos(), r * a.sin());
        let p = geometry::heisenberg_project(&u).unwrap();
        let scale = 1.0 + x.abs() + y.abs() + z.abs();
        prop_assert!((p[0] - x).abs() < 1e-13 * scale);
        prop_assert!((p[1] - y).abs() < 1e-13 * scale);
        prop_assert!((p[2] - z).abs() < 1e-13 * scale * scale);
        let back = geometry::heisenberg_chart(p);
        prop_assert!(linalg::projective_distance(&back, &u) < 1e-12);
    }

    #[test]
    fn normalize_is_projective(re in -5.0..5.0f64, im in -5.0..5.0f64, a in -3.2..3.2f64) {
        let z = CVec3::new(c(re, im), c(1.0, -2.0), c(0.5, 0.25));
        let n1 = geometry::normalize(&z);
        let n2 = geometry::normalize(&(z * c(2.0 * a.cos(), 2.0 * a.sin())));
        prop_assert!((n1 - n2).norm() < 1e-12);
        prop_assert!((n1.norm() - 1.0).abs() < 1e-14);
    }
}

#[test]
fn pole_is_rejected() {
    let z = CVec3::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    assert!(matches!(geometry::heisenberg_project(&z), Err(Error::Degenerate(_))));
    let zero = CVec3::zeros();
    assert!(geometry::heisenberg_project(&zero).is_err());
    assert!(geometry::project_curve(&[0.0, 1.0], &[geometry::heisenberg_chart([1.0, 0.0, 0.0]), z], false).is_err());
}

#[test]
fn dual_curve_of_the_example() {
    let p = twist_profile(&EXAMPLE, CurveClass::BPrime(1), Span::Periods(1)).unwrap();
    let path = integrate_frame(&p, &CMat3::identity()).unwrap();
    let s: Vec<f64> = p.resample(300).iter().map(|x| x.s).collect();
    let dual = geometry::dual_curve(&path, &s);
    assert_eq!(dual.len(), s.len());
    for d in &dual {
        let z = CVec3::new(d.point[0], d.point[1], d.point[2]);
        assert!(geometry::null_residual(&z) < 1e-7);
        let tau = p.at(d.s).tau;
        assert!((d.tangency + tau).abs() < 1e-7, "{} vs {}", d.tangency, -tau);
        assert!(d.tangency.abs() > 0.5);
    }
}

#[test]
fn standard_configuration_avoids_the_axis() {
    let p = twist_profile(&EXAMPLE, CurveClass::BPrime(1), Span::Periods(1)).unwrap();
    let samples = p.resample(1000);
    let sc = reconstruction::standard_configuration(&p, &samples).unwrap();
    let z: Vec<CVec3> = sc
        .samples
        .iter()
        .map(|x| CVec3::new(x.point[0], x.point[1], x.point[2]))
        .collect();
    let s: Vec<f64> = samples.iter().map(|x| x.s).collect();
    let curve = geometry::project_curve(&s, &z, false).unwrap();
    assert_eq!(curve.len(), 1001);
    assert!(curve.axis_margin > 1e-3, "{}", curve.axis_margin);
}

fn awkward_curve() -> ProjectedCurve {
    let s = vec![0.0, 0.1, 1.0 / 3.0, 2.0f64.sqrt(), 1e-300, -0.0];
    let pts = vec![
        [1.0, -2.5, 3.0],
        [0.1 + 0.2, 1e300, -1e-300],
        [std::f64::consts::PI, -std::f64::consts::E, 5e-324],
        [f64::MAX, f64::MIN_POSITIVE, -7.0],
        [123456789.12345679, -0.0, 1.0 / 7.0],
        [0.0, 0.0, 0.0],
    ];
    ProjectedCurve::from_points(s, pts, false)
}

#[test]
fn csv_round_trip_is_bitwise() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nested").join("curve.csv");
    let curve = awkward_curve();
    export::write_csv(&path, &curve, Some("first line\nsecond line")).unwrap();
    let (s, pts) = export::read_csv(&path).unwrap();
    assert_eq!(s.len(), curve.s.len());
    for (a, b) in s.iter().zip(&curve.s) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
    for (a, b) in pts.iter().zip(&curve.points) {
        for k in 0..3 {
            assert_eq!(a[k].to_bits(), b[k].to_bits());
        }
    }
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# first line\n# second line\ns,x,y,z\n"));
}

#[test]
fn empty_and_malformed_csv() {
    let dir = tempfile::tempdir().unwrap();
    let empty = ProjectedCurve::from_points(vec![], vec![], true);
    assert!(empty.is_empty());
    let path = dir.path().join("empty.csv");
    export::write_csv(&path, &empty, None).unwrap();
    let (s, pts) = export::read_csv(&path).unwrap();
    assert!(s.is_empty() && pts.is_empty());
    assert_eq!(export::obj_string(&empty, None), "");

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "").unwrap();
    assert!(matches!(export::read_csv(&bad), Err(Error::Domain(_))));
    std::fs::write(&bad, "s,x,y,z\n1,2,3\n").unwrap();
    assert!(matches!(export::read_csv(&bad), Err(Error::Domain(_))));
    std::fs::write(&bad, "s,x,y,z\n1,2,3,four\n").unwrap();
    assert!(matches!(export::read_csv(&bad), Err(Error::Domain(_))));
    assert!(matches!(
        export::read_csv(&dir.path().join("missing.csv")),
        Err(Error::Io { .. })
    ));
}

#[test]
fn obj_layout() {
    let curve = ProjectedCurve::from_points(vec![0.0, 1.0], vec![[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]], false);
    let text = export::obj_string(&curve, Some("c"));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# c");
    assert_eq!(lines[1], format!("v {} {} {}", export::real(1.0), export::real(2.0), export::real(3.0)));
    assert_eq!(lines[3], "l 1 2");
    assert_eq!(lines.len(), 4);
}

#[test]
fn json_is_stable() {
    #[derive(serde::Serialize)]
    struct Row {
        b: f64,
        a: Vec<f64>,
        name: &'static str,
    }
    let row = Row {
        b: 0.1,
        a: vec![f64::NAN, 1.0],
        name: "x",
    };
    let one = export::to_json(&row).unwrap();
    assert_eq!(one, export::to_json(&row).unwrap());
    let v: serde_json::Value = serde_json::from_str(&one).unwrap();
    assert!(v["a"][0].is_null());
    assert_eq!(v["a"][1].as_f64(), Some(1.0));
    assert_eq!(v["b"].as_f64().unwrap().to_bits(), 0.1f64.to_bits());
    // field order is preserved
    assert!(one.find("\"b\"").unwrap() < one.find("\"a\"").unwrap());
}
