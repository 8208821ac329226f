//! Linear algebra for the pseudo-unitary group of the Hermitian form
//! `h = [[0,0,i],[0,1,0],[-i,0,0]]`.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly;

pub type C64 = Complex64;
pub type CMat3 = Matrix3<Complex64>;
pub type CVec3 = Vector3<Complex64>;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The Hermitian form defining the group.
pub fn h_form() -> CMat3 {
    CMat3::new(ZERO, ZERO, I, ZERO, ONE, ZERO, -I, ZERO, ZERO)
}

/// `<z, w> = conj(z)^T h w`.
pub fn herm(z: &CVec3, w: &CVec3) -> C64 {
    let hw = CVec3::new(I * w[2], w[1], -I * w[0]);
    z.conjugate().dot(&hw)
}

/// Euclidean operator-free Frobenius norm.
pub fn fro(m: &CMat3) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn commutator(a: &CMat3, b: &CMat3) -> CMat3 {
    a * b - b * a
}

/// `F^* h F - h`, the obstruction to membership in the group.
pub fn group_defect(f: &CMat3) -> CMat3 {
    let h = h_form();
    f.adjoint() * h * f - h
}

/// Frobenius size of `F^* h F - h` plus `|det F - 1|`.
pub fn group_residual(f: &CMat3) -> f64 {
    fro(&group_defect(f)) + (f.determinant() - ONE).norm()
}

/// `h^{-1} A^* h`, the adjoint with respect to the form.
pub fn h_adjoint(a: &CMat3) -> CMat3 {
    let h = h_form();
    // h is its own inverse
    h * a.adjoint() * h
}

/// Principal cube root with argument in `(-pi/3, pi/3]`.
pub fn cbrt_principal(z: C64) -> C64 {
    if z.norm() == 0.0 {
        return ZERO;
    }
    let (r, theta) = z.to_polar();
    // to_polar returns theta in (-pi, pi]
    C64::from_polar(r.cbrt(), theta / 3.0)
}

/// One step of the Newton–Schulz type correction towards the group,
/// followed by unimodular rescaling.
pub fn project_to_group(f: &CMat3) -> CMat3 {
    let h = h_form();
    let e = h * f.adjoint() * h * f - CMat3::identity();
    let corrected = f * (CMat3::identity() - e * c(0.5, 0.0));
    let d = corrected.determinant();
    corrected * cbrt_principal(d).inv()
}

/// Inverse through the adjugate, failing when the matrix is numerically
/// singular relative to its scale.
pub fn inverse(m: &CMat3) -> Result<CMat3> {
    let det = m.determinant();
    let scale = fro(m).powi(3).max(f64::MIN_POSITIVE);
    if det.norm() < 1e-14 * scale {
        return Err(Error::Degenerate(format!(
            "matrix is singular: |det| = {:.3e}, scale {:.3e}",
            det.norm(),
            scale
        )));
    }
    let a = |i: usize, j: usize| m[(i, j)];
    let cof = CMat3::new(
        a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1),
        a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2),
        a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1),
        a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2),
        a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0),
        a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2),
        a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0),
        a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1),
        a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0),
    );
    Ok(cof / det)
}

/// Inverse of a group element: `F^{-1} = h F^* h`.
pub fn group_inverse(f: &CMat3) -> CMat3 {
    h_adjoint(f)
}

/// Coefficients of `det(x I - A)` in descending order.
pub fn char_poly(a: &CMat3) -> [C64; 4] {
    let tr = a.trace();
    let m2 = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)] + a[(0, 0)] * a[(2, 2)]
        - a[(0, 2)] * a[(2, 0)]
        + a[(1, 1)] * a[(2, 2)]
        - a[(1, 2)] * a[(2, 1)];
    [ONE, -tr, m2, -a.determinant()]
}

pub fn eigenvalues(a: &CMat3) -> Result<Vec<C64>> {
    poly::roots(&char_poly(a))
}

/// A null vector of `A - lambda I` from the largest cross product of rows.
pub fn eigenvector(a: &CMat3, lambda: C64) -> CVec3 {
    let b = a - CMat3::identity() * lambda;
    let rows: Vec<CVec3> = (0..3)
        .map(|i| CVec3::new(b[(i, 0)], b[(i, 1)], b[(i, 2)]))
        .collect();
    let cross = |u: &CVec3, v: &CVec3| {
        CVec3::new(
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        )
    };
    let cands = [
        cross(&rows[0], &rows[1]),
        cross(&rows[0], &rows[2]),
        cross(&rows[1], &rows[2]),
    ];
    cands
        .into_iter()
        .max_by(|x, y| x.norm().partial_cmp(&y.norm()).unwrap())
        .unwrap()
}

pub fn diag(d: [C64; 3]) -> CMat3 {
    CMat3::from_diagonal(&CVec3::new(d[0], d[1], d[2]))
}

/// Distance between two points of projective space, measured in the affine
/// chart where the reference `a` has its largest-modulus coordinate equal
/// to one.
pub fn projective_distance(a: &CVec3, b: &CVec3) -> f64 {
    let k = (0..3)
        .max_by(|&i, &j| a[i].norm().partial_cmp(&a[j].norm()).unwrap())
        .unwrap();
    if b[k].norm() == 0.0 {
        return f64::INFINITY;
    }
    let an = a / a[k];
    let bn = b / b[k];
    (an - bn).norm()
}

pub fn mat_from_flat(v: &[f64]) -> CMat3 {
    CMat3::from_fn(|i, j| {
        let k = 2 * (3 * i + j);
        c(v[k], v[k + 1])
    })
}

pub fn mat_to_flat(m: &CMat3, out: &mut [f64]) {
    for i in 0..3 {
        for j in 0..3 {
            let k = 2 * (3 * i + j);
            out[k] = m[(i, j)].re;
            out[k + 1] = m[(i, j)].im;
        }
    }
}
