//! Dense univariate polynomials: evaluation, synthetic division and
//! simultaneous root finding by Aberth–Ehrlich iteration.
//!
//! Coefficients are stored in descending order, `c[0]` being the leading
//! coefficient.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITER: usize = 500;

/// Horner evaluation of a real polynomial.
pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Horner evaluation of a real polynomial and its derivative.
pub fn eval_with_derivative(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

pub fn eval_complex(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn eval_complex_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Bound on the rounding error of a Horner evaluation at `z`.
fn horner_error_bound(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    let s = coeffs.iter().fold(0.0, |acc, c| acc * r + c.norm());
    8.0 * f64::EPSILON * s * (coeffs.len() as f64)
}

/// Divides `coeffs` by `(x - root)`, dropping the remainder.
pub fn deflate(coeffs: &[f64], root: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(coeffs.len().saturating_sub(1));
    let mut acc = 0.0;
    for &c in &coeffs[..coeffs.len() - 1] {
        acc = acc * root + c;
        out.push(acc);
    }
    out
}

/// Newton polishing of a simple real root.
pub fn polish_real_root(coeffs: &[f64], mut x: f64) -> f64 {
    for _ in 0..8 {
        let (p, dp) = eval_with_derivative(coeffs, x);
        if dp == 0.0 || !p.is_finite() {
            break;
        }
        let step = p / dp;
        let next = x - step;
        if !next.is_finite() {
            break;
        }
        // stop as soon as Newton stops making progress
        if (next - x).abs() <= f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
            x = next;
            break;
        }
        let (pn, _) = eval_with_derivative(coeffs, next);
        if pn.abs() > p.abs() {
            break;
        }
        x = next;
    }
    x
}

/// All complex roots of a polynomial with complex coefficients.
///
/// Exact trailing zero coefficients are split off as roots at the origin
/// before iterating, so `x^k q(x)` yields `k` exact zeros.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let first = coeffs
        .iter()
        .position(|c| c.norm() != 0.0)
        .ok_or_else(|| Error::Domain("zero polynomial has no roots".into()))?;
    let mut c: Vec<Complex64> = coeffs[first..].to_vec();

    let mut out = Vec::new();
    while c.len() > 1 && c[c.len() - 1].norm() == 0.0 {
        c.pop();
        out.push(Complex64::new(0.0, 0.0));
    }
    let degree = c.len() - 1;
    if degree == 0 {
        return Ok(out);
    }
    let lead = c[0];
    let monic: Vec<Complex64> = c.iter().map(|&x| x / lead).collect();
    if degree == 1 {
        out.push(-monic[1]);
        return Ok(out);
    }

    // Initial guesses on a circle of radius given by the Fujiwara bound,
    // rotated off the real axis so conjugate pairs separate.
    let radius = monic[1..]
        .iter()
        .enumerate()
        .map(|(k, a)| a.norm().powf(1.0 / (k as f64 + 1.0)))
        .fold(0.0_f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (degree as f64) + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    let mut done = vec![false; degree];
    for iteration in 0..MAX_ITER {
        let mut all_done = true;
        for i in 0..degree {
            if done[i] {
                continue;
            }
            let (p, dp) = eval_complex_with_derivative(&monic, z[i]);
            if p.norm() <= horner_error_bound(&monic, z[i]) {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..degree)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            let w = if w.is_finite() { w } else { ratio };
            z[i] -= w;
            if w.norm() <= 2.0 * f64::EPSILON * z[i].norm().max(1e-300) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            out.extend(z);
            return Ok(out);
        }
        if iteration + 1 == MAX_ITER {
            break;
        }
    }
    let max_residual = z
        .iter()
        .map(|&r| eval_complex(&monic, r).norm())
        .fold(0.0, f64::max);
    Err(Error::RootsNotConverged {
        iterations: MAX_ITER,
        max_residual,
    })
}

/// Roots of a polynomial with real coefficients.
pub fn real_poly_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let c: Vec<Complex64> = coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    roots(&c)
}

/// Groups roots whose mutual separation is below `rel_tol * (1 + |root|)`.
///
/// Returns cluster centres with their multiplicities. Clustering is
/// transitive: a root joins a cluster if it is close to any member.
pub fn cluster(roots: &[Complex64], rel_tol: f64) -> Vec<(Complex64, usize)> {
    let n = roots.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        let mut k = i;
        while label[k] != r {
            let next = label[k];
            label[k] = r;
            k = next;
        }
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = 1.0 + roots[i].norm().max(roots[j].norm());
            if (roots[i] - roots[j]).norm() < rel_tol * scale {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                if a != b {
                    label[b] = a;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += roots[i];
                g.2 += 1;
            }
            None => groups.push((r, roots[i], 1)),
        }
    }
    groups
        .into_iter()
        .map(|(_, sum, m)| (sum / m as f64, m))
        .collect()
}

/// Expands `prod (x - r_i)` into descending coefficients.
pub fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, &a) in c.iter().enumerate() {
            next[k] += a;
            next[k + 1] -= a * r;
        }
        c = next;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_re(mut v: Vec<Complex64>) -> Vec<f64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        v.into_iter().map(|z| z.re).collect()
    }

    #[test]
    fn cubic_with_known_roots() {
        // (x-1)(x-2)(x+3) = x^3 - 7x + 6
        let r = real_poly_roots(&[1.0, 0.0, -7.0, 6.0]).unwrap();
        let re = sorted_re(r);
        assert!((re[0] + 3.0).abs() < 1e-13);
        assert!((re[1] - 1.0).abs() < 1e-13);
        assert!((re[2] - 2.0).abs() < 1e-13);
    }

    #[test]
    fn trailing_zeros_are_exact_roots() {
        let r = real_poly_roots(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(r.len(), 5);
        assert!(r.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn double_root_is_clustered() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let r = real_poly_roots(&[1.0, 0.0, -3.0, 2.0]).unwrap();
        let c = cluster(&r, 1e-7);
        assert_eq!(c.len(), 2);
        let double = c.iter().find(|g| g.1 == 2).unwrap();
        assert!((double.0.re - 1.0).abs() < 1e-7);
    }

    #[test]
    fn complex_roots_of_unity() {
        let r = real_poly_roots(&[1.0, 0.0, 0.0, -1.0]).unwrap();
        for z in &r {
            assert!((z.norm() - 1.0).abs() < 1e-13);
            assert!((z.powu(3) - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn deflation_matches_division() {
        // x^3 - 7x + 6 divided by (x - 1) = x^2 + x - 6
        let q = deflate(&[1.0, 0.0, -7.0, 6.0], 1.0);
        assert_eq!(q, vec![1.0, 1.0, -6.0]);
    }

    #[test]
    fn expansion_inverts_roots() {
        let c = [1.0, -2.5, 0.0, 3.0, 1.0];
        let r = real_poly_roots(&c).unwrap();
        let back = from_roots(&r);
        for (a, b) in back.iter().zip(c.iter()) {
            assert!((a.re - b).abs() < 1e-11 && a.im.abs() < 1e-11);
        }
    }
}
