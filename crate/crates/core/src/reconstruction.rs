//! Closed-form reconstruction of critical curves from their twist profile.
//!
//! The eigen-sections `y_j` of the Lax matrix diagonalize the frame:
//! `F(s) = V(0) D(r(0))^{-1} D(r_j e^{i phi_j}) V(s)^{-1}`, where `V` has
//! columns `y_j` and `r_j = sqrt(tau^2 - 3 lambda_j)`.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::Serialize;

use crate::dynamics::{lax_matrix, TwistProfile, TwistSample};
use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat3, CVec3, C64, I, ZERO};
use crate::moduli::OrbitType;

/// Eigen-section `y_j` for eigenvalue `lambda` at a twist sample.
pub fn section(c1: f64, lambda: C64, tau: f64, dtau: f64) -> CVec3 {
    CVec3::new(
        c(3.0 * tau, -tau * dtau) - lambda * lambda - 3.0 * c1,
        c(9.0 - 9.0 * c1 / tau, -3.0 * dtau) - lambda * tau,
        I * (lambda * -3.0 + tau * tau),
    )
}

/// Matrix with columns `y_1, y_2, y_3`.
pub fn section_matrix(c1: f64, lambdas: &[C64; 3], tau: f64, dtau: f64) -> CMat3 {
    let cols: Vec<CVec3> = lambdas.iter().map(|&l| section(c1, l, tau, dtau)).collect();
    CMat3::from_columns(&cols)
}

/// Principal `sqrt(tau^2 - 3 lambda)`; continuous in `s` on general moduli
/// because `tau^2 - 3 lambda` never crosses the negative real axis there.
pub fn radial(lambda: C64, tau: f64) -> C64 {
    (c(tau * tau, 0.0) - lambda * 3.0).sqrt()
}

#[derive(Debug, Clone)]
pub struct EigenSections {
    pub s: Vec<f64>,
    pub y: Vec<[CVec3; 3]>,
    pub r: Vec<[C64; 3]>,
    /// Smallest `|det V| / prod |y_j|` over the samples.
    pub min_det_ratio: f64,
}

fn det_ratio(v: &CMat3) -> f64 {
    let scale: f64 = (0..3).map(|j| v.column(j).norm()).product();
    v.determinant().norm() / scale
}

/// Evaluates the sections on the given samples, enforcing continuity of the
/// square roots `r_j`.
pub fn eigen_sections(profile: &TwistProfile, samples: &[TwistSample]) -> Result<EigenSections> {
    let c1 = profile.modulus.c1;
    let lambdas = profile.lambdas();
    let mut out = EigenSections {
        s: Vec::with_capacity(samples.len()),
        y: Vec::with_capacity(samples.len()),
        r: Vec::with_capacity(samples.len()),
        min_det_ratio: f64::INFINITY,
    };
    let mut prev: Option<[C64; 3]> = None;
    for x in samples {
        let v = section_matrix(c1, &lambdas, x.tau, x.dtau);
        let ratio = det_ratio(&v);
        if !(ratio > 1e-8) {
            return Err(Error::NonGeneral(format!(
                "det V degenerates at s = {} (ratio {ratio:.3e})",
                x.s
            )));
        }
        out.min_det_ratio = out.min_det_ratio.min(ratio);
        let mut r = [ZERO; 3];
        for j in 0..3 {
            r[j] = radial(lambdas[j], x.tau);
            if let Some(p) = prev {
                if (r[j] + p[j]).norm() < (r[j] - p[j]).norm() {
                    return Err(Error::NonGeneral(format!(
                        "branch of sqrt(tau^2 - 3 lambda_{}) flips at s = {}",
                        j + 1,
                        x.s
                    )));
                }
            }
        }
        prev = Some(r);
        out.s.push(x.s);
        out.y.push([v.column(0).into(), v.column(1).into(), v.column(2).into()]);
        out.r.push(r);
    }
    Ok(out)
}

/// Closed-form frame generator anchored at a reference sample, usually
/// `s = 0`.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub c1: f64,
    pub lambdas: [C64; 3],
    /// `V(0) D(r(0))^{-1}`.
    pub anchor: CMat3,
}

impl Reconstruction {
    pub fn new(profile: &TwistProfile, origin: &TwistSample) -> Result<Self> {
        let c1 = profile.modulus.c1;
        let lambdas = profile.lambdas();
        if origin.phi.iter().any(|p| p.norm() != 0.0) {
            return Err(Error::Domain(
                "reconstruction must be anchored where all phases vanish".into(),
            ));
        }
        let v0 = section_matrix(c1, &lambdas, origin.tau, origin.dtau);
        if det_ratio(&v0) <= 1e-8 {
            return Err(Error::NonGeneral("det V(0) degenerates".into()));
        }
        let r0: Vec<C64> = lambdas.iter().map(|&l| radial(l, origin.tau)).collect();
        let anchor = v0 * linalg::diag([r0[0].inv(), r0[1].inv(), r0[2].inv()]);
        Ok(Reconstruction {
            c1,
            lambdas,
            anchor,
        })
    }

    /// The frame at a sample; equals the identity at the anchor.
    pub fn frame(&self, x: &TwistSample) -> Result<CMat3> {
        let v = section_matrix(self.c1, &self.lambdas, x.tau, x.dtau);
        let d: Vec<C64> = (0..3)
            .map(|j| radial(self.lambdas[j], x.tau) * (I * x.phi[j]).exp())
            .collect();
        Ok(self.anchor * linalg::diag([d[0], d[1], d[2]]) * linalg::inverse(&v)?)
    }

    /// The curve point `F(s) e_1`.
    pub fn point(&self, x: &TwistSample) -> Result<CVec3> {
        Ok(self.frame(x)?.column(0).into())
    }
}

/// Curve samples `[M D V^{-1} e_1]` on the profile's own anchor (`s = 0`).
pub fn reconstruct_general(profile: &TwistProfile, samples: &[TwistSample]) -> Result<Vec<CVec3>> {
    eigen_sections(profile, samples)?;
    let rec = Reconstruction::new(profile, &profile.at(0.0))?;
    samples.iter().map(|x| rec.point(x)).collect()
}

/// The constant matrix conjugating the diagonal torus onto the canonical
/// form of the momentum.
pub fn standard_basis() -> CMat3 {
    let a = FRAC_1_SQRT_2;
    CMat3::new(
        c(a, 0.0),
        c(-a, 0.0),
        ZERO,
        ZERO,
        ZERO,
        I,
        c(0.0, a),
        c(0.0, a),
        ZERO,
    )
}

/// Canonical momentum with eigenvalues `lambda`, for polarization `eps`.
pub fn canonical_momentum(lambdas: [f64; 3], eps: i8) -> CMat3 {
    let (a, b) = if eps > 0 {
        (lambdas[2], lambdas[1])
    } else {
        (lambdas[1], lambdas[2])
    };
    let bm = standard_basis();
    let d = linalg::diag([c(a, 0.0), c(b, 0.0), c(lambdas[0], 0.0)]);
    // the basis is unitary in the Euclidean sense
    bm * d * bm.adjoint()
}

/// `eps = -sign(e2^2 - 3 lambda_3)`, evaluated at the starting twist.
pub fn polarization(tau0: f64, lambda3: f64) -> Result<i8> {
    let d = tau0 * tau0 - 3.0 * lambda3;
    if d.abs() <= 1e-8 * (1.0 + 3.0 * lambda3.abs()) {
        return Err(Error::Degenerate(format!(
            "polarization undefined: tau0^2 - 3 lambda3 = {d:.3e}"
        )));
    }
    Ok(if d > 0.0 { -1 } else { 1 })
}

/// Change of frame `M = B A^{-1}` carrying a curve with `F(0) = I` at the
/// given start into standard position.
pub fn standard_change_of_frame(
    c1: f64,
    lambdas: [f64; 3],
    tau0: f64,
    dtau0: f64,
    eps: i8,
) -> Result<CMat3> {
    let mut u = Vec::with_capacity(3);
    for &l in &lambdas {
        let lc = c(l, 0.0);
        let y = section(c1, lc, tau0, dtau0);
        let norm = (3.0 * (2.0 * c1 + l * l).abs() * (tau0 * tau0 - 3.0 * l).abs()).sqrt();
        u.push(y / c(norm, 0.0));
    }
    let order = if eps > 0 { [2, 1, 0] } else { [1, 2, 0] };
    let mut a = CMat3::from_columns(&[u[order[0]], u[order[1]], u[order[2]]]);
    let d = a.determinant();
    a /= linalg::cbrt_principal(d);
    let m = standard_basis() * linalg::inverse(&a)?;
    let res = linalg::group_residual(&m);
    if res > 1e-8 {
        return Err(Error::Internal(format!(
            "standard change of frame left the group (residual {res:.3e})"
        )));
    }
    Ok(m)
}

#[derive(Debug, Clone, Serialize)]
pub struct StandardSample {
    pub s: f64,
    pub z: [C64; 3],
    pub point: [C64; 3],
}

#[derive(Debug, Clone)]
pub struct StandardConfiguration {
    pub epsilon: i8,
    pub rho: [f64; 3],
    pub lambdas: [f64; 3],
    /// Group element carrying the frame-normalized curve to standard position.
    pub change_of_frame: CMat3,
    /// Residual of the transformed momentum against the canonical form.
    pub momentum_residual: f64,
    pub samples: Vec<StandardSample>,
}

/// `rho_j` constants of the standard configuration.
pub fn rho(l: [f64; 3]) -> Result<[f64; 3]> {
    let (l2, l3) = (l[1], l[2]);
    let a = (2.0 * l2 + l3) * (l2 + 2.0 * l3);
    let b = 2.0 * (l3 - l2) * (2.0 * l2 + l3);
    let d = 2.0 * (l3 - l2) * (l2 + 2.0 * l3);
    if !(a > 0.0 && b > 0.0 && d > 0.0) {
        return Err(Error::Domain(format!(
            "eigenvalues {l:?} are not ordered as lambda1 < 0 < lambda2 < lambda3"
        )));
    }
    Ok([1.0 / a.sqrt(), 1.0 / b.sqrt(), 1.0 / d.sqrt()])
}

/// `z_j` functions at a sample.
pub fn z_functions(rho: &[f64; 3], l: &[f64; 3], x: &TwistSample) -> [C64; 3] {
    let t2 = x.tau * x.tau;
    let sq = |v: f64| c(v, 0.0).sqrt();
    [
        rho[0] * sq(3.0 * (l[1] + l[2]) + t2) * (I * x.phi[0]).exp(),
        rho[1] * sq(3.0 * l[1] - t2) * (I * x.phi[1]).exp(),
        rho[2] * sq(3.0 * l[2] - t2) * (I * x.phi[2]).exp(),
    ]
}

/// Homogeneous point `[(z2 + z3, eps i z1, -eps i (z2 - z3))]`.
pub fn standard_point(z: &[C64; 3], eps: i8) -> CVec3 {
    let e = eps as f64;
    CVec3::new(z[1] + z[2], I * e * z[0], -I * e * (z[1] - z[2]))
}

/// Standard configuration of a type B'1 profile sampled at `samples`.
pub fn standard_configuration(
    profile: &TwistProfile,
    samples: &[TwistSample],
) -> Result<StandardConfiguration> {
    if profile.momentum.kind != OrbitType::OT1 {
        return Err(Error::Domain(format!(
            "standard configuration needs orbit type 1, got {:?}",
            profile.momentum.kind
        )));
    }
    let l = profile.momentum.real().unwrap();
    let x0 = profile.at(0.0);
    let eps = polarization(x0.tau, l[2])?;
    let rho = rho(l)?;
    let m = standard_change_of_frame(profile.modulus.c1, l, x0.tau, x0.dtau, eps)?;
    let mom = m * lax_matrix(x0.kappa, x0.tau, x0.dtau) * linalg::group_inverse(&m);
    let momentum_residual = linalg::fro(&(mom - canonical_momentum(l, eps)));
    let out = samples
        .iter()
        .map(|x| {
            let z = z_functions(&rho, &l, x);
            let p = standard_point(&z, eps);
            StandardSample {
                s: x.s,
                z,
                point: [p[0], p[1], p[2]],
            }
        })
        .collect();
    Ok(StandardConfiguration {
        epsilon: eps,
        rho,
        lambdas: l,
        change_of_frame: m,
        momentum_residual,
        samples: out,
    })
}

/// `-i <Gamma, Gamma'>` for the first column of a frame, using `F' = F K`.
pub fn transversality(frame: &CMat3, kappa: f64) -> f64 {
    let f1: CVec3 = frame.column(0).into();
    let f3: CVec3 = frame.column(2).into();
    let d = f1 * c(0.0, kappa) + f3;
    (-I * linalg::herm(&f1, &d)).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{twist_profile, Span};
    use crate::moduli::{CurveClass, Modulus};

    const EXAMPLE: Modulus = Modulus {
        c1: -0.8284243304411575,
        c2: -8.349417691746162,
    };

    #[test]
    fn sections_are_lax_eigenvectors() {
        let p = twist_profile(&EXAMPLE, CurveClass::BPrime(1), Span::Periods(1)).unwrap();
        let l = p.lambdas();
        for x in p.resample(50) {
            let lax = x.lax();
            for j in 0..3 {
                let y = section(EXAMPLE.c1, l[j], x.tau, x.dtau);
                assert!((lax * y - y * l[j]).norm() < 1e-8 * y.norm());
                let expected = 3.0 * (x.tau * x.tau - 3.0 * l[j].re) * (2.0 * EXAMPLE.c1 + l[j].re * l[j].re);
                assert!((linalg::herm(&y, &y).re - expected).abs() < 1e-8 * (1.0 + expected.abs()));
            }
        }
    }

    #[test]
    fn canonical_momentum_spectrum() {
        let l = [-2.4, 0.4, 2.0];
        for eps in [1, -1] {
            let m = canonical_momentum(l, eps);
            assert!(linalg::fro(&(linalg::h_adjoint(&m) - m)) < 1e-14);
            let mut ev: Vec<f64> = linalg::eigenvalues(&m).unwrap().iter().map(|z| z.re).collect();
            ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for k in 0..3 {
                assert!((ev[k] - l[k]).abs() < 1e-10);
            }
            let off = m[(0, 2)];
            assert!((off - c(0.0, 0.5 * eps as f64 * (l[1] - l[2]))).norm() < 1e-14);
        }
    }

    #[test]
    fn basis_is_pseudo_unitary() {
        let b = standard_basis();
        assert!((b.determinant() - linalg::ONE).norm() < 1e-14);
        let h = linalg::h_form();
        let gram = b.adjoint() * h * b;
        let expected = linalg::diag([c(-1.0, 0.0), linalg::ONE, linalg::ONE]);
        assert!(linalg::fro(&(gram - expected)) < 1e-14);
    }

    #[test]
    fn example_polarization() {
        // e2^2 - 3 lambda3 < 0 for the published modulus
        assert_eq!(polarization(-0.678034, 1.99848).unwrap(), 1);
        assert!(polarization(1.0, 1.0 / 3.0).is_err());
    }
}
