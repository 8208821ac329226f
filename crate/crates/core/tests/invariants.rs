mod common;

use std::f64::consts::PI;

use crtwist::dynamics::{integrate_frame, twist_profile, Span};
use crtwist::error::Error;
use crtwist::invariants::{self, Spin, Q};
use crtwist::linalg::{c, CMat3, C64};
use crtwist::moduli::CurveClass;
use crtwist::{quadrature, reconstruction};
use num_integer::Integer;
use proptest::prelude::*;

use common::{random_b1, EXAMPLE};

#[test]
fn example_numbers() {
    let q = invariants::discrete_invariants(Q::new(-2, 15), Q::new(-10, 21), 1).unwrap();
    assert_eq!(q.q2, Q::new(-41, 105));
    assert_eq!((q.n, q.s1, q.s3), (105, 7, 5));
    assert_eq!(q.spin, Spin::OneThird);
    assert_eq!(q.wave_number, 35);
    assert_eq!((q.turning, q.trace), (-50, 12));
    assert_eq!(q.positive.turning, -50);
}

#[test]
fn default_q2_representative() {
    let q2 = invariants::default_q2(Q::new(-2, 15), Q::new(-10, 21));
    assert_eq!(q2, Q::new(-41, 105));
    assert_eq!(invariants::default_q2(Q::new(1, 2), Q::new(1, 2)), Q::from_integer(0));
    assert_eq!(invariants::default_q2(Q::new(-1, 3), Q::new(-1, 3)), Q::new(-1, 3));
}

#[test]
fn rejects_bad_input() {
    let (a, b) = (Q::new(-2, 15), Q::new(-10, 21));
    assert!(matches!(invariants::discrete_invariants(a, b, 0), Err(Error::Domain(_))));
    assert!(matches!(
        invariants::discrete_invariants_with(a, Q::new(1, 7), b, 1),
        Err(Error::Domain(_))
    ));
}

fn spin_oracle(m1: i64, n1: i64, m3: i64, n3: i64) -> (i64, bool) {
    let n = n1 / n1.gcd(&n3) * n3;
    let r1 = (m1 * (n / n1)).rem_euclid(3);
    let r3 = (m3 * (n / n3)).rem_euclid(3);
    (n, n % 3 == 0 && r1 == r3 && r1 != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn spin_and_wave_number_rules(m1 in -60i64..60, n1 in 1i64..40, m3 in -60i64..60, n3 in 1i64..40,
                                   eps in prop::sample::select(vec![1i8, -1])) {
        let (q1, q3) = (Q::new(m1, n1), Q::new(m3, n3));
        let q = invariants::discrete_invariants(q1, q3, eps).unwrap();
        let (n, third) = spin_oracle(*q1.numer(), *q1.denom(), *q3.numer(), *q3.denom());
        prop_assert_eq!(q.n, n);
        prop_assert_eq!(q.s1 * q1.denom(), n);
        prop_assert_eq!(q.s3 * q3.denom(), n);
        prop_assert_eq!(q.spin == Spin::OneThird, third);
        prop_assert_eq!(q.wave_number * if third { 3 } else { 1 }, n);
        prop_assert!((q.q1 + q.q2 + q.q3).is_integer());
        prop_assert!(q.q2 <= Q::from_integer(0) && q.q2 > Q::from_integer(-1));
        // the two closed forms are integers on both branches
        let ng = Q::from_integer(q.wave_number);
        prop_assert!((ng * (q1 - q3)).is_integer() && (ng * (q1 - q.q2)).is_integer());
        let chosen = if eps == 1 { q.positive } else { q.negative };
        prop_assert_eq!((q.turning, q.trace), (chosen.turning, chosen.trace));
    }

    #[test]
    fn shifting_by_integers_keeps_the_spin(m1 in -30i64..30, n1 in 1i64..30, m3 in -30i64..30,
                                           n3 in 1i64..30, k in -3i64..3) {
        let (q1, q3) = (Q::new(m1, n1), Q::new(m3, n3));
        let a = invariants::discrete_invariants(q1, q3, 1).unwrap();
        let b = invariants::discrete_invariants(q1 + k, q3 - k, 1).unwrap();
        prop_assert_eq!(a.n, b.n);
        prop_assert_eq!(a.spin, b.spin);
        prop_assert_eq!(a.wave_number, b.wave_number);
        prop_assert_eq!(a.q2, b.q2);
    }

    #[test]
    fn winding_of_sampled_circles(k in -6i64..6, n in 64usize..400, r in 0.1..10.0f64, a in 0.0..6.0f64) {
        let pts: Vec<C64> = (0..=n)
            .map(|j| C64::from_polar(r, a + 2.0 * PI * k as f64 * j as f64 / n as f64))
            .collect();
        let w = invariants::winding_degree(&pts, true).unwrap();
        prop_assert_eq!(w.degree, k);
        prop_assert!(w.residual < 1e-12);
    }
}

#[test]
fn winding_errors() {
    let coarse: Vec<C64> = (0..=4).map(|j| C64::from_polar(1.0, 2.0 * PI * j as f64 / 4.0)).collect();
    assert!(matches!(
        invariants::winding_degree(&coarse, true),
        Err(Error::Undersampled { .. })
    ));
    let through = [c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)];
    assert!(matches!(invariants::winding_degree(&through, false), Err(Error::Degenerate(_))));
    let arc: Vec<C64> = (0..=50).map(|j| C64::from_polar(2.0, PI * j as f64 / 100.0)).collect();
    let w = invariants::winding_degree(&arc, false).unwrap();
    assert!((w.turns - 0.25).abs() < 1e-12);
    assert!(invariants::winding_degree(&arc, true).is_err());
}

#[test]
fn linking_with_the_vertical_axis() {
    let ring = |cx: f64, k: f64| -> Vec<[f64; 3]> {
        (0..200)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / 200.0;
                [cx + (k * t).cos(), (k * t).sin(), (3.0 * t).sin()]
            })
            .collect()
    };
    assert_eq!(invariants::trace_linking(&ring(0.0, 1.0)).unwrap(), 1);
    assert_eq!(invariants::trace_linking(&ring(0.0, -2.0)).unwrap(), -2);
    assert_eq!(invariants::trace_linking(&ring(3.0, 1.0)).unwrap(), 0);
    assert!(invariants::trace_linking(&ring(1.0, 1.0)).is_err());
}

#[test]
fn turning_degree_is_additive() {
    let q = invariants::discrete_invariants(Q::new(-2, 15), Q::new(-10, 21), 1).unwrap();
    let n = q.n as u32;
    let l = crtwist::moduli::momentum_eigenvalues(&EXAMPLE).unwrap().real().unwrap();
    let rho = [1.0; 3];
    let degree = |periods: u32| {
        let p = twist_profile(&EXAMPLE, CurveClass::BPrime(1), Span::Periods(periods)).unwrap();
        let z: Vec<C64> = p
            .resample(periods as usize * 1024)
            .iter()
            .map(|x| reconstruction::z_functions(&rho, &l, x)[2])
            .collect();
        invariants::winding_degree(&z, false).unwrap()
    };
    let (a, b) = (degree(n), degree(2 * n));
    assert!(a.residual < 1e-4 && b.residual < 1e-4, "{} {}", a.residual, b.residual);
    assert_eq!(a.degree, q.turning);
    assert_eq!(b.degree, 2 * a.degree);
    // over one period the phase turns by a non-integer amount
    let part = degree(1).turns;
    assert!((part - part.round()).abs() > 0.1);
    assert!((part * n as f64 - q.turning as f64).abs() < 1e-5, "{part}");
}

#[test]
fn monodromy_phases_match_closing_integrals() {
    for m in random_b1(41, 4) {
        let p = twist_profile(&m, CurveClass::BPrime(1), Span::Periods(1)).unwrap();
        let path = integrate_frame(&p, &CMat3::identity()).unwrap();
        let mono = crtwist::dynamics::monodromy(&path, p.omega, 1).unwrap();
        let r = crtwist::moduli::quintic_roots(&m).unwrap();
        let pp = quadrature::quantum_integrals(&m, &p.momentum, &r).unwrap().p;
        for (ph, want) in mono.phases.iter().zip(pp) {
            let d = ph - want;
            assert!((d - d.round()).abs() < 1e-6, "{m}: {ph} vs {want}");
        }
    }
}

#[test]
fn closed_example_curve() {
    let cc = invariants::closed_curve(&EXAMPLE, Q::new(-2, 15), Q::new(-10, 21), 1024).unwrap();
    assert_eq!(cc.numbers.wave_number, 35);
    assert_eq!(cc.direct.turning.degree, -50);
    assert_eq!(cc.direct.trace.degree, 12);
    assert_eq!(cc.direct.linking, cc.direct.trace.degree);
    assert_eq!(cc.direct.matching_branch, Some(1));
    assert!(cc.direct.closure_distance < 1e-5, "{}", cc.direct.closure_distance);
    assert!(matches!(
        invariants::closed_curve(&EXAMPLE, Q::new(-2, 15), Q::new(-10, 21), 8),
        Err(Error::Domain(_))
    ));
}
