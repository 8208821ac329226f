//! Complete, incomplete and improper hyperelliptic integrals over the real
//! cycles of `y^2 = P_c(x)`.
//!
//! Inverse square-root singularities at roots of `P_c` are removed by
//! substitution before Gauss–Legendre quadrature: a cosine substitution
//! when both ends are roots, `tau = r + L sin^2(theta)` when one end is a
//! root, and `u = 1/sqrt(tau)` for the tail at infinity. The quintic is
//! deflated by the endpoint roots with synthetic division, so the
//! integrands are never evaluated as `0/0`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::moduli::{MomentumSpectrum, Modulus, OrbitType, QuinticSpectrum};
use crate::poly;

const BASE_NODES: usize = 64;
const LEVELS: usize = 7;
pub const QUAD_TOL: f64 = 1e-10;

/// `sqrt(3/2)`, the factor between strain and arclength.
pub fn strain_factor() -> f64 {
    1.5f64.sqrt()
}

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

fn legendre_rule(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

fn rule(level: usize) -> &'static Rule {
    static RULES: [OnceLock<Rule>; LEVELS] = [const { OnceLock::new() }; LEVELS];
    RULES[level].get_or_init(|| legendre_rule(BASE_NODES << level))
}

fn gauss_fixed<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, level: usize) -> f64 {
    let r = rule(level);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    r.nodes
        .iter()
        .zip(&r.weights)
        .map(|(x, w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

/// Gauss–Legendre on `[a, b]` starting at 64 nodes, doubled until two
/// successive results differ by less than `QUAD_TOL * max(1, |I|)`.
pub fn gauss_legendre<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> Result<f64> {
    let mut prev = gauss_fixed(&mut f, a, b, 0);
    if !prev.is_finite() {
        return Err(Error::SingularIntegrand(format!(
            "non-finite integrand on [{a}, {b}]"
        )));
    }
    for level in 1..LEVELS {
        let next = gauss_fixed(&mut f, a, b, level);
        if !next.is_finite() {
            return Err(Error::SingularIntegrand(format!(
                "non-finite integrand on [{a}, {b}]"
            )));
        }
        if (next - prev).abs() < QUAD_TOL * next.abs().max(1.0) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Accuracy(format!(
        "quadrature on [{a}, {b}] did not reach {QUAD_TOL:e} with {} nodes",
        BASE_NODES << (LEVELS - 1)
    )))
}

/// `int_a^b f(x) dx / sqrt((x - a)(b - x))` via `x = (a+b)/2 + (b-a)/2 cos(theta)`.
pub fn two_sided<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> Result<f64> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    gauss_legendre(|th| f(mid + half * th.cos()), 0.0, PI)
}

/// `int_r^{r+len} f(x) dx / sqrt(|x - r|)` via `x = r + len sin^2(theta)`;
/// `len` may be negative, in which case the integral runs backwards.
pub fn one_sided<F: FnMut(f64) -> f64>(mut f: F, r: f64, len: f64) -> Result<f64> {
    let scale = 2.0 * len.signum() * len.abs().sqrt();
    gauss_legendre(
        |th| {
            let s = th.sin();
            scale * th.cos() * f(r + len * s * s)
        },
        0.0,
        0.5 * PI,
    )
}

/// `int_a^inf g(x) dx` via `u = 1/sqrt(x)`; needs `g = O(x^{-1-d})`, `d > 0`.
pub fn improper_tail<F: FnMut(f64) -> f64>(mut g: F, a: f64) -> Result<f64> {
    if a <= 0.0 {
        return Err(Error::Domain(format!("tail start {a} must be positive")));
    }
    gauss_legendre(
        |u| {
            let x = 1.0 / (u * u);
            2.0 * g(x) / (u * u * u)
        },
        0.0,
        1.0 / a.sqrt(),
    )
}

/// The quintic with the given roots divided out.
fn deflated(c: &Modulus, roots: &[f64]) -> Vec<f64> {
    let mut q = c.quintic_coeffs().to_vec();
    for &r in roots {
        q = poly::deflate(&q, r);
    }
    q
}

/// Signed orientation of the compact cycle: integrals run from `tau(0)` to
/// `tau(omega)`, i.e. from `e2` to `e1` when the roots are negative and from
/// `e1` to `e2` when they are positive.
fn cycle_orientation(e1: f64) -> f64 {
    e1.signum()
}

/// Roots `e1 < e2` bounding the compact cycle, and `e3`.
pub fn compact_cycle(spectrum: &QuinticSpectrum) -> Result<[f64; 3]> {
    let e = spectrum
        .phase_b_roots()
        .ok_or_else(|| Error::Domain("modulus is not of phase B".into()))?;
    if e[0] * e[1] <= 0.0 {
        return Err(Error::Domain(format!(
            "roots e1 = {}, e2 = {} do not have the same sign",
            e[0], e[1]
        )));
    }
    Ok(e)
}

/// `int_{e1}^{e2} f(tau) dtau / sqrt(P(tau))` over the compact cycle.
fn cycle_integral<F: FnMut(f64) -> f64>(c: &Modulus, e: &[f64; 3], mut f: F) -> Result<f64> {
    // P = (tau - e1)(tau - e2) R3 with R3 < 0 on (e1, e2)
    let r3 = deflated(c, &[e[0], e[1]]);
    two_sided(
        |tau| {
            let r = -poly::eval(&r3, tau);
            f(tau) / r.sqrt()
        },
        e[0],
        e[1],
    )
}

/// Half period `omega` of a compact (type B') twist.
pub fn half_period(c: &Modulus, spectrum: &QuinticSpectrum) -> Result<f64> {
    let e = compact_cycle(spectrum)?;
    let omega = cycle_orientation(e[0]) * strain_factor() * cycle_integral(c, &e, |t| t)?;
    if !(omega > 0.0) {
        return Err(Error::Internal(format!("non-positive half period {omega}")));
    }
    Ok(omega)
}

/// Time to reach `tau = +inf` starting from the simple root `e`.
pub fn escape_time(c: &Modulus, e: f64) -> Result<f64> {
    if !(e > 0.0) {
        return Err(Error::Domain(format!(
            "escape time needs a positive starting root, got {e}"
        )));
    }
    let roots = poly::real_poly_roots(&c.quintic_coeffs())?;
    if roots
        .iter()
        .any(|z| z.im.abs() < 1e-9 * (1.0 + z.re.abs()) && z.re > e * (1.0 + 1e-9) + 1e-12)
    {
        return Err(Error::Domain(format!(
            "P has a real root beyond {e}; the tail is not a single branch"
        )));
    }
    let r = deflated(c, &[e]);
    let r_at_e = poly::eval(&r, e);
    if !(r_at_e > 0.0) || !(r_at_e > 1e-12 * (1.0 + e.powi(4))) {
        return Err(Error::Domain(format!(
            "{e} is not a simple root with P > 0 beyond it (P/(x-e) = {r_at_e:.3e})"
        )));
    }
    let near = one_sided(|tau| tau / poly::eval(&r, tau).sqrt(), e, e)?;
    let tail = improper_tail(|tau| tau / c.quintic(tau).sqrt(), 2.0 * e)?;
    let omega = strain_factor() * (near + tail);
    if !omega.is_finite() || omega <= 0.0 {
        return Err(Error::Domain(format!("escape integral diverges ({omega})")));
    }
    Ok(omega)
}

/// Numerator `3 c1 lambda - (4 c1 + lambda^2) tau^2 + 3 tau^3` of the phase
/// integrand.
pub fn phase_numerator(c1: f64, lambda: Complex64, tau: f64) -> Complex64 {
    lambda * (3.0 * c1) - (lambda * lambda + 4.0 * c1) * (tau * tau) + 3.0 * tau.powi(3)
}

/// Smallest relative value of `|3 lambda - tau^2|` over `tau` in `[a, b]`,
/// `0 < a < b` or `a < b < 0`.
pub fn denominator_margin(lambda: f64, a: f64, b: f64) -> f64 {
    let (lo, hi) = {
        let (x, y) = (a * a, b * b);
        (x.min(y), x.max(y))
    };
    let l3 = 3.0 * lambda;
    let dist = if l3 < lo {
        lo - l3
    } else if l3 > hi {
        l3 - hi
    } else {
        0.0
    };
    dist / (l3.abs() + hi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumIntegrals {
    pub p: [f64; 3],
    /// Distance of `P1 + P2 + P3` from the nearest integer.
    pub sum_residual: f64,
}

/// Closing integrals `P_j = phi_j(2 omega) / 2 pi` of a type B'1 curve.
pub fn quantum_integrals(
    c: &Modulus,
    momentum: &MomentumSpectrum,
    roots: &QuinticSpectrum,
) -> Result<QuantumIntegrals> {
    if momentum.kind != OrbitType::OT1 {
        return Err(Error::Domain(format!(
            "closing integrals need orbit type 1, got {:?}",
            momentum.kind
        )));
    }
    let e = compact_cycle(roots)?;
    let lambdas = momentum.real().unwrap();
    let orient = cycle_orientation(e[0]);
    let mut p = [0.0; 3];
    for j in 0..3 {
        let l = lambdas[j];
        let margin = denominator_margin(l, e[0], e[1]);
        if margin < 1e-8 {
            return Err(Error::SingularIntegrand(format!(
                "3 lambda_{} - tau^2 vanishes on [e1, e2] (margin {margin:.2e})",
                j + 1
            )));
        }
        let lc = Complex64::new(l, 0.0);
        let integral = cycle_integral(c, &e, |tau| {
            phase_numerator(c.c1, lc, tau).re / (tau * (3.0 * l - tau * tau))
        })?;
        p[j] = orient * strain_factor() * integral / PI;
    }
    let sum: f64 = p.iter().sum();
    Ok(QuantumIntegrals {
        p,
        sum_residual: (sum - sum.round()).abs(),
    })
}

/// Largest simple real root of `P_c` at or below `x`, if any, and whether
/// `x` is itself such a root.
fn real_roots_of(c: &Modulus) -> Result<Vec<f64>> {
    let s = crate::moduli::quintic_roots(c)?;
    Ok(s.real_values())
}

/// `sqrt(3/2) int_{from}^{to} u du / sqrt(P(u))` on an interval where
/// `P > 0`; either end may be a simple root.
pub fn incomplete_strain(c: &Modulus, from: f64, to: f64) -> Result<f64> {
    if from == to {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if from < to {
        (from, to, 1.0)
    } else {
        (to, from, -1.0)
    };
    let roots = real_roots_of(c)?;
    let is_root = |x: f64| roots.iter().any(|&r| (x - r).abs() <= 1e-10 * (1.0 + r.abs()));
    let root_at = |x: f64| {
        roots
            .iter()
            .copied()
            .min_by(|a, b| (x - a).abs().partial_cmp(&(x - b).abs()).unwrap())
            .unwrap()
    };
    if roots
        .iter()
        .any(|&r| r > lo + 1e-10 * (1.0 + r.abs()) && r < hi - 1e-10 * (1.0 + r.abs()))
    {
        return Err(Error::Domain(format!(
            "[{lo}, {hi}] contains a root of P in its interior"
        )));
    }
    let mid = 0.5 * (lo + hi);
    if !(c.quintic(mid) > 0.0) {
        return Err(Error::Domain(format!("P is not positive on [{lo}, {hi}]")));
    }
    let value = match (is_root(lo), is_root(hi)) {
        (true, true) => {
            let (a, b) = (root_at(lo), root_at(hi));
            let r3 = deflated(c, &[a, b]);
            two_sided(|tau| tau / (-poly::eval(&r3, tau)).sqrt(), a, b)?
        }
        (true, false) => {
            let a = root_at(lo);
            let r = deflated(c, &[a]);
            one_sided(|tau| tau / poly::eval(&r, tau).abs().sqrt(), a, hi - a)?
        }
        (false, true) => {
            let b = root_at(hi);
            let r = deflated(c, &[b]);
            -one_sided(|tau| tau / poly::eval(&r, tau).abs().sqrt(), b, lo - b)?
        }
        (false, false) => gauss_legendre(|tau| tau / c.quintic(tau).sqrt(), lo, hi)?,
    };
    Ok(sign * strain_factor() * value)
}
