#![allow(dead_code)]

use crtwist::closure::{self, Branch};
use crtwist::moduli::{self, Modulus, OrbitType, Phase};
use crtwist::quadrature;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EXAMPLE: Modulus = Modulus {
    c1: -0.8284243304411575,
    c2: -8.349417691746162,
};

/// A general modulus of type B'1 from unit-square coordinates, or `None`
/// when the sample lands too close to a degeneracy.
pub fn b1_from_unit(plus: bool, u: f64, v: f64) -> Option<Modulus> {
    let branch = if plus { Branch::Plus } else { Branch::Minus };
    let (a, b) = closure::branch_interval(branch);
    let t = a + (0.03 + 0.9 * u) * (b - a);
    let s = 0.05 + 0.9 * v;
    let c = closure::psi(branch, t, s).ok()?;
    let k = moduli::classify(&c).ok()?;
    if k.phase != Phase::B || k.orbit != OrbitType::OT1 || k.on_boundary {
        return None;
    }
    let g = moduli::is_general(&c);
    if g.margin1 < 1e-6 || g.margin2 < 1e-6 {
        return None;
    }
    let roots = moduli::quintic_roots(&c).ok()?;
    let m = moduli::momentum_eigenvalues(&c).ok()?;
    quadrature::quantum_integrals(&c, &m, &roots).ok()?;
    Some(c)
}

pub fn random_b1(seed: u64, count: usize) -> Vec<Modulus> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let plus = rng.random::<f64>() < 0.5;
        if let Some(c) = b1_from_unit(plus, rng.random(), rng.random()) {
            out.push(c);
        }
    }
    out
}

/// Double-exponential quadrature on `[a, b]`; tolerates integrable
/// endpoint singularities. `f` receives `(x, distance to a, distance to b)`.
pub fn tanh_sinh<F: Fn(f64, f64, f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let pi2 = std::f64::consts::FRAC_PI_2;
    let mut h = 0.5;
    let mut prev = f64::NAN;
    for _ in 0..9 {
        let mut sum = 0.0;
        let n = (4.0 / h) as i64;
        for k in -n..=n {
            let t = k as f64 * h;
            let u = pi2 * t.sinh();
            let x = u.tanh();
            let w = pi2 * t.cosh() / u.cosh().powi(2);
            // distances to the endpoints without cancellation
            let da = half * u.exp() / u.cosh();
            let db = half * (-u).exp() / u.cosh();
            if da <= 0.0 || db <= 0.0 || !w.is_finite() {
                continue;
            }
            sum += w * f(mid + half * x, da, db);
        }
        let est = sum * h * half;
        if (est - prev).abs() < 1e-13 * est.abs().max(1.0) {
            return est;
        }
        prev = est;
        h *= 0.5;
    }
    prev
}

/// `P(x) / ((x - r1)(x - r2))` evaluated from the full list of complex roots.
pub fn deflated_quintic(c: &Modulus, x: f64, r1: f64, r2: f64) -> f64 {
    let roots = moduli::quintic_roots(c).unwrap().all_roots();
    let mut used = [false, false];
    let mut prod = num_complex::Complex64::new(1.0, 0.0);
    for z in roots {
        if !used[0] && z.im == 0.0 && (z.re - r1).abs() < 1e-12 * (1.0 + r1.abs()) {
            used[0] = true;
            continue;
        }
        if !used[1] && z.im == 0.0 && (z.re - r2).abs() < 1e-12 * (1.0 + r2.abs()) {
            used[1] = true;
            continue;
        }
        prod *= num_complex::Complex64::new(x, 0.0) - z;
    }
    prod.re
}
