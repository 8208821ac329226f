mod common;

use crtwist::dynamics::{
    integrate_frame, lax_matrix, structure_matrix, twist_profile, twist_profile_with, Span,
};
use crtwist::linalg::{self, c, CMat3, I};
use crtwist::moduli::{self, CurveClass, Modulus};
use crtwist::reconstruction;
use proptest::prelude::*;

use common::{random_b1, EXAMPLE};

#[test]
fn example_profile_shape() {
    let p = twist_profile(&EXAMPLE, CurveClass::BPrime(1), Span::Periods(2)).unwrap();
    assert!((p.omega - 0.732307).abs() < 1e-5);
    let x0 = p.at(0.0);
    assert!((x0.tau + 0.678034).abs() < 1e-6);
    assert!((p.at(p.omega).tau + 0.931924).abs() < 1e-6);
    let e = p.roots.phase_b_roots().unwrap();
    assert!((x0.tau - e[1]).abs() < 1e-12);
    assert!((p.at(p.omega).tau - e[0]).abs() < 1e-8);
    for x in p.resample(2000) {
        assert!(x.tau >= e[0] - 1e-8 && x.tau <= e[1] + 1e-8);
        let y = p.at(x.s + 2.0 * p.omega);
        if y.s <= p.s_end() {
            assert!((y.tau - x.tau).abs() < 1e-8);
        }
    }
    assert!(p.conservation_residual() < 1e-9);
    assert!(p.bending_residual() < 1e-9);
}

#[test]
fn momentum_at_start_is_explicit() {
    // L(0) with tau = e2, tau' = 0 and kappa = c1 / e2^2
    let e2 = moduli::quintic_roots(&EXAMPLE).unwrap().phase_b_roots().unwrap()[1];
    let k = EXAMPLE.c1 / (e2 * e2);
    let r = 3.0 * (1.0 - EXAMPLE.c1 / e2);
    let want = CMat3::new(
        c(0.0, 0.0),
        c(r, 0.0),
        c(0.0, 2.0 * e2),
        c(e2, 0.0),
        c(0.0, 0.0),
        c(0.0, r),
        c(0.0, 3.0),
        c(0.0, -e2),
        c(0.0, 0.0),
    );
    assert!(linalg::fro(&(lax_matrix(k, e2, 0.0) - want)) < 1e-14);
    let p = twist_profile(&EXAMPLE, CurveClass::BPrime(1), Span::Periods(1)).unwrap();
    assert!(linalg::fro(&(p.at(0.0).lax() - want)) < 1e-12);
    let kk = structure_matrix(k, e2);
    assert!(linalg::fro(&(p.at(0.0).structure() - kk)) < 1e-12);
}

#[test]
fn characteristic_polynomial_reproduces_modulus() {
    let p = twist_profile(&EXAMPLE, CurveClass::BPrime(1), Span::Periods(1)).unwrap();
    let q = EXAMPLE.cubic_coeffs();
    for x in &p.samples {
        let cp = linalg::char_poly(&x.lax());
        for k in 0..4 {
            assert!((cp[k] - c(q[k], 0.0)).norm() < 1e-8, "{k}: {} vs {}", cp[k], q[k]);
        }
    }
}

#[test]
fn even_symmetry() {
    for m in std::iter::once(EXAMPLE).chain(random_b1(21, 3)) {
        let fwd = twist_profile(&m, CurveClass::BPrime(1), Span::Periods(1)).unwrap();
        let bwd = twist_profile(&m, CurveClass::BPrime(1), Span::Until(-2.0 * fwd.omega)).unwrap();
        for x in fwd.resample(200) {
            let y = bwd.at(-x.s);
            assert!((x.tau - y.tau).abs() < 1e-8, "{m} s={}", x.s);
            for j in 0..3 {
                assert!((x.phi[j] + y.phi[j]).norm() < 1e-7);
            }
        }
    }
}

#[test]
fn phases_are_quasi_periodic() {
    for m in std::iter::once(EXAMPLE).chain(random_b1(22, 3)) {
        let p = twist_profile(&m, CurveClass::BPrime(1), Span::Periods(2)).unwrap();
        let period = 2.0 * p.omega;
        let jump0 = p.at(period).phi;
        for k in 0..=100 {
            let s = period * k as f64 / 100.0;
            let (a, b) = (p.at(s).phi, p.at(s + period).phi);
            for j in 0..3 {
                assert!(((b[j] - a[j]) - jump0[j]).norm() < 1e-7, "{m} j={j} s={s}");
            }
        }
    }
}

/// Weights of the derivative at `xs[k]` of the interpolating polynomial.
fn lagrange_derivative(xs: &[f64], k: usize) -> Vec<f64> {
    let n = xs.len();
    (0..n)
        .map(|j| {
            if j == k {
                return (0..n).filter(|&m| m != k).map(|m| 1.0 / (xs[k] - xs[m])).sum();
            }
            let mut w = 1.0 / (xs[j] - xs[k]);
            for m in (0..n).filter(|&m| m != j && m != k) {
                w *= (xs[k] - xs[m]) / (xs[j] - xs[m]);
            }
            w
        })
        .collect()
}

#[test]
fn lax_equation_by_finite_differences() {
    // differences of the solver nodes; the dense interpolant's derivative is
    // only accurate to about 1e-7
    for m in std::iter::once(EXAMPLE).chain(random_b1(5, 3)) {
        let p = twist_profile(&m, CurveClass::BPrime(1), Span::Periods(1)).unwrap();
        let xs = &p.samples;
        let width = 4;
        for k in width..xs.len() - width {
            let win = &xs[k - width..=k + width];
            let t: Vec<f64> = win.iter().map(|x| x.s).collect();
            let mut dl = CMat3::zeros();
            for (x, w) in win.iter().zip(lagrange_derivative(&t, width)) {
                dl += x.lax() * c(w, 0.0);
            }
            let r = linalg::commutator(&xs[k].lax(), &xs[k].structure());
            let err = linalg::fro(&(dl - r));
            assert!(err < 1e-8, "{m} s = {}: {err:.3e}", xs[k].s);
        }
    }
}

#[test]
fn frame_lift_is_natural() {
    let p = twist_profile(&EXAMPLE, CurveClass::BPrime(1), Span::Periods(2)).unwrap();
    let path = integrate_frame(&p, &CMat3::identity()).unwrap();
    assert!(path.group_residual() < 1e-7);
    assert!(path.momentum_drift() < 1e-7);
    for x in p.resample(300) {
        let f = path.frame_at(x.s);
        let t = reconstruction::transversality(&f, x.kappa);
        assert!((t - 1.0).abs() < 1e-8, "s = {}: {t}", x.s);
    }
}

#[test]
fn axis_moduli_reduce() {
    // c1 = 0: kappa vanishes and tau'' = tau^2, tau'^2 = (2/3) tau^3 + c2
    let c2 = 5.0;
    let m = Modulus::new(0.0, c2);
    let tau0 = 1.0;
    let dtau0 = (2.0 / 3.0 * tau0 * tau0 * tau0 + c2).sqrt();
    let class = crtwist::dynamics::default_class(&m).unwrap();
    let opts = crtwist::ode::Options::default();
    let p = twist_profile_with(&m, class, Span::Until(0.4), Some((tau0, dtau0)), &opts).unwrap();
    for x in &p.samples {
        assert_eq!(x.kappa, 0.0);
        let e = x.dtau * x.dtau - 2.0 / 3.0 * x.tau.powi(3) - c2;
        assert!(e.abs() < 1e-9 * (1.0 + x.tau.powi(3).abs()));
    }
}

#[test]
fn monodromy_of_the_example() {
    let p = twist_profile(&EXAMPLE, CurveClass::BPrime(1), Span::Periods(1)).unwrap();
    let path = integrate_frame(&p, &CMat3::identity()).unwrap();
    let m = crtwist::dynamics::monodromy(&path, p.omega, 1).unwrap();
    assert!(m.det_residual < 1e-8);
    assert!(m.commutator < 1e-6);
    for (ph, q) in m.phases.iter().zip([-2.0 / 15.0, f64::NAN, -10.0 / 21.0]) {
        if q.is_finite() {
            let d = ph - q;
            assert!((d - d.round()).abs() < 1e-5 / (2.0 * std::f64::consts::PI));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lax_matrix_is_self_adjoint(k in -5.0..5.0f64, t in -5.0..5.0f64, dt in -5.0..5.0f64) {
        let h = linalg::h_form();
        let l = lax_matrix(k, t, dt);
        prop_assert!(linalg::fro(&(l.adjoint() * h - h * l)) < 1e-12);
        prop_assert!(l.trace().norm() < 1e-12);
        let kk = structure_matrix(k, t);
        prop_assert!(kk.trace().norm() < 1e-12);
        // K lies in the Lie algebra of the group
        prop_assert!(linalg::fro(&(kk.adjoint() * h + h * kk)) < 1e-12);
    }

    #[test]
    fn sections_are_eigenvectors_on_random_moduli(u in 0.0..1.0f64, v in 0.0..1.0f64, plus in any::<bool>()) {
        let Some(m) = common::b1_from_unit(plus, u, v) else { return Ok(()); };
        let p = twist_profile(&m, CurveClass::BPrime(1), Span::Periods(1)).unwrap();
        let l = p.lambdas();
        for x in p.samples.iter().step_by(7) {
            for lj in l {
                let y = reconstruction::section(m.c1, lj, x.tau, x.dtau);
                let r = (x.lax() * y - y * lj).norm() / y.norm();
                prop_assert!(r < 1e-8, "{}", r);
            }
        }
    }
}

#[test]
fn structure_matrix_at_the_origin() {
    let k = structure_matrix(0.0, 0.0);
    for i in 0..3 {
        for j in 0..3 {
            let want = match (i, j) {
                (0, 1) => -I,
                (1, 2) | (2, 0) => c(1.0, 0.0),
                _ => c(0.0, 0.0),
            };
            assert_eq!(k[(i, j)], want);
        }
    }
}
