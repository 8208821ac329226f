//! Heisenberg projection and chart, dual curves and projected polylines.

use serde::Serialize;

use crate::dynamics::FramePath;
use crate::error::{Error, Result};
use crate::linalg::{self, c, CVec3, C64, I};

/// `<z, z>` relative to `|z|^2`.
pub fn null_residual(z: &CVec3) -> f64 {
    let n = z.norm_squared();
    if n == 0.0 {
        return 0.0;
    }
    linalg::herm(z, z).norm() / n
}

/// `(Re(z2/z1), Im(z2/z1), Re(z3/z1))`.
pub fn heisenberg_project(z: &CVec3) -> Result<[f64; 3]> {
    let n = z.norm();
    if !(z[0].norm() >= 1e-10 * n) || n == 0.0 {
        return Err(Error::Degenerate(format!(
            "point is at the pole of the Heisenberg projection (|z1|/|z| = {:.3e})",
            z[0].norm() / n
        )));
    }
    let a = z[1] / z[0];
    let b = z[2] / z[0];
    Ok([a.re, a.im, b.re])
}

/// `[1, x + iy, z + (i/2)(x^2 + y^2)]`.
pub fn heisenberg_chart(p: [f64; 3]) -> CVec3 {
    let [x, y, z] = p;
    CVec3::new(c(1.0, 0.0), c(x, y), c(z, 0.5 * (x * x + y * y)))
}

/// Unit-norm representative whose first nonzero component is real positive.
pub fn normalize(z: &CVec3) -> CVec3 {
    let n = z.norm();
    if n == 0.0 {
        return *z;
    }
    let k = (0..3).find(|&k| z[k].norm() > 1e-300).unwrap();
    let ph = z[k] / z[k].norm();
    z / (ph * n)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DualSample {
    pub s: f64,
    pub point: [C64; 3],
    /// `-i <F3, F3'>`, which equals `-tau`; it vanishes exactly where the
    /// dual curve fails to be transversal.
    pub tangency: f64,
}

/// `[F3(s)]` along a frame path.
pub fn dual_curve(path: &FramePath, s: &[f64]) -> Vec<DualSample> {
    s.iter()
        .map(|&s| {
            let f = path.frame_at(s);
            let x = path.twist_at(s);
            let k = x.structure();
            let f3: CVec3 = f.column(2).into();
            let d: CVec3 = (f * k).column(2).into();
            let n = normalize(&f3);
            DualSample {
                s,
                point: [n[0], n[1], n[2]],
                tangency: (-I * linalg::herm(&f3, &d)).re,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectedCurve {
    pub s: Vec<f64>,
    pub points: Vec<[f64; 3]>,
    pub closed: bool,
    /// Smallest distance of the polyline from the vertical axis.
    pub axis_margin: f64,
}

impl ProjectedCurve {
    pub fn from_points(s: Vec<f64>, points: Vec<[f64; 3]>, closed: bool) -> Self {
        let axis_margin = points
            .iter()
            .map(|p| p[0].hypot(p[1]))
            .fold(f64::INFINITY, f64::min);
        ProjectedCurve {
            s,
            points,
            closed,
            axis_margin,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Heisenberg projection of a sampled curve.
pub fn project_curve(s: &[f64], z: &[CVec3], closed: bool) -> Result<ProjectedCurve> {
    let pts = z.iter().map(heisenberg_project).collect::<Result<Vec<_>>>()?;
    Ok(ProjectedCurve::from_points(s.to_vec(), pts, closed))
}
