//! Parametrization of the closed-curve moduli region by rectangles, the map
//! `(t, s) -> (P1, P3)` and the search for moduli with rational closing
//! integrals.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moduli::{
    self, is_general, momentum_eigenvalues, quintic_roots, Modulus, OrbitType, Phase,
};
use crate::quadrature;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Minus,
    Plus,
}

impl std::str::FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" | "-" => Ok(Branch::Minus),
            "plus" | "+" => Ok(Branch::Plus),
            _ => Err(Error::Domain(format!("unknown branch {s:?}"))),
        }
    }
}

/// Parameter of the tangential contact between the separatrix and the
/// curve `Delta1 = 0`.
pub fn contact_parameter() -> f64 {
    static CELL: OnceLock<f64> = OnceLock::new();
    *CELL.get_or_init(|| {
        let (_, end) = moduli::separatrix_interval();
        let gap = |t: f64| match (moduli::lower_boundary(t), moduli::separatrix(t)) {
            (Ok(p), Ok(x)) => p[1] - x[1],
            _ => f64::INFINITY,
        };
        // the gap is positive on both sides and touches zero at the contact
        let (mut a, mut b) = (PI / 2.0 + 0.1, end - 1e-3);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = b - g * (b - a);
        let mut x2 = a + g * (b - a);
        let (mut f1, mut f2) = (gap(x1), gap(x2));
        while b - a > 1e-12 {
            if f1 < f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = gap(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = gap(x2);
            }
        }
        0.5 * (a + b)
    })
}

/// Open `t`-interval of each branch.
pub fn branch_interval(branch: Branch) -> (f64, f64) {
    let tc = contact_parameter();
    match branch {
        Branch::Minus => (PI / 2.0, tc),
        Branch::Plus => (tc, moduli::separatrix_interval().1),
    }
}

/// `psi(t, s) = (xi(t) - p(t)) s + p(t)`.
pub fn psi(branch: Branch, t: f64, s: f64) -> Result<Modulus> {
    let (a, b) = branch_interval(branch);
    if !(t > a && t < b) {
        return Err(Error::Domain(format!(
            "t = {t} outside the {branch:?} interval ({a}, {b})"
        )));
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("s = {s} outside [0, 1]")));
    }
    let xi = moduli::separatrix(t)?;
    let p = moduli::lower_boundary(t)?;
    Ok(Modulus::new(
        (xi[0] - p[0]) * s + p[0],
        (xi[1] - p[1]) * s + p[1],
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleStatus {
    Ok,
    /// Within the band of the exceptional locus `Delta2 = 0`.
    Exceptional,
    Failed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PmapSample {
    pub t: f64,
    pub s: f64,
    pub modulus: Modulus,
    /// `[P1, P2, P3]`; NaN when the evaluation failed.
    pub p: [f64; 3],
    pub delta1: f64,
    pub delta2: f64,
    pub status: SampleStatus,
}

pub const EXCEPTIONAL_BAND: f64 = 1e-8;

/// `(P1, P2, P3)` of a modulus of type B'1.
pub fn closing_integrals(c: &Modulus) -> Result<[f64; 3]> {
    let roots = quintic_roots(c)?;
    if moduli::phase_of(&roots) != Phase::B {
        return Err(Error::Domain(format!("{c} is not of phase B")));
    }
    let m = momentum_eigenvalues(c)?;
    if m.kind != OrbitType::OT1 {
        return Err(Error::Domain(format!("{c} is not of orbit type 1")));
    }
    Ok(quadrature::quantum_integrals(c, &m, &roots)?.p)
}

pub fn pmap(branch: Branch, t: f64, s: f64) -> PmapSample {
    let nan = [f64::NAN; 3];
    let modulus = match psi(branch, t, s) {
        Ok(c) => c,
        Err(_) => {
            return PmapSample {
                t,
                s,
                modulus: Modulus::new(f64::NAN, f64::NAN),
                p: nan,
                delta1: f64::NAN,
                delta2: f64::NAN,
                status: SampleStatus::Failed,
            }
        }
    };
    let g = is_general(&modulus);
    let (p, ok) = match closing_integrals(&modulus) {
        Ok(p) => (p, true),
        Err(_) => (nan, false),
    };
    let status = if g.margin2 <= EXCEPTIONAL_BAND {
        SampleStatus::Exceptional
    } else if ok {
        SampleStatus::Ok
    } else {
        SampleStatus::Failed
    };
    PmapSample {
        t,
        s,
        modulus,
        p,
        delta1: g.delta1,
        delta2: g.delta2,
        status,
    }
}

/// Axis-aligned rectangle `[t0, t1] x [s0, s1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub t0: f64,
    pub t1: f64,
    pub s0: f64,
    pub s1: f64,
}

impl Rect {
    pub fn new(t0: f64, t1: f64, s0: f64, s1: f64) -> Self {
        Rect { t0, t1, s0, s1 }
    }

    /// The full parameter rectangle of a branch, pulled in slightly from
    /// its open edges.
    pub fn full(branch: Branch) -> Self {
        let (a, b) = branch_interval(branch);
        let m = 1e-6;
        Rect::new(a + m, b - m, m, 1.0 - m)
    }

    pub fn contains(&self, t: f64, s: f64) -> bool {
        t >= self.t0 && t <= self.t1 && s >= self.s0 && s <= self.s1
    }

    fn validate(&self, branch: Branch) -> Result<()> {
        let (a, b) = branch_interval(branch);
        let inside = self.t0 > a && self.t1 < b && self.s0 > 0.0 && self.s1 < 1.0;
        if !(self.t0 <= self.t1 && self.s0 <= self.s1) || !inside {
            return Err(Error::Domain(format!(
                "rectangle {self:?} is not inside the {branch:?} parameter domain"
            )));
        }
        Ok(())
    }
}

/// Cell-centred grid of `nt x ns` samples, evaluated in parallel; rows are
/// ordered with `t` outermost.
pub fn pmap_grid(branch: Branch, rect: &Rect, nt: usize, ns: usize) -> Vec<PmapSample> {
    let pts: Vec<(f64, f64)> = (0..nt)
        .flat_map(|i| {
            (0..ns).map(move |j| {
                let t = rect.t0 + (i as f64 + 0.5) * (rect.t1 - rect.t0) / nt as f64;
                let s = rect.s0 + (j as f64 + 0.5) * (rect.s1 - rect.s0) / ns as f64;
                (t, s)
            })
        })
        .collect();
    pts.par_iter().map(|&(t, s)| pmap(branch, t, s)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub branch: Branch,
    pub rect: Rect,
    pub population: usize,
    pub mutation: f64,
    pub crossover: f64,
    pub max_generations: usize,
    pub seed: u64,
    /// Success threshold on `delta`.
    pub tol: f64,
    /// Newton refinement of the best candidate on the closing integrals.
    pub polish: bool,
}

impl SearchConfig {
    pub fn new(branch: Branch, rect: Rect, seed: u64) -> Self {
        SearchConfig {
            branch,
            rect,
            population: 40,
            mutation: 0.8,
            crossover: 0.9,
            max_generations: 300,
            seed,
            tol: 1e-6,
            polish: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub found: bool,
    pub t: f64,
    pub s: f64,
    pub modulus: Modulus,
    pub delta: f64,
    /// Best `delta` reached by the evolutionary stage alone.
    pub delta_de: f64,
    pub p: [f64; 3],
    pub delta1: f64,
    pub delta2: f64,
    pub generations: usize,
    pub evaluations: usize,
}

const PENALTY: f64 = 1e10;

/// `delta_q(t, s)`, penalized off the domain and near the exceptional locus.
pub fn objective(branch: Branch, q: (f64, f64), t: f64, s: f64) -> f64 {
    let x = pmap(branch, t, s);
    if x.status != SampleStatus::Ok {
        return PENALTY;
    }
    ((x.p[0] - q.0).powi(2) + (x.p[2] - q.1).powi(2)).sqrt()
}

fn bounce(x: f64, base: f64, lo: f64, hi: f64, rng: &mut ChaCha8Rng) -> f64 {
    if x < lo {
        lo + rng.random::<f64>() * (base - lo)
    } else if x > hi {
        hi - rng.random::<f64>() * (hi - base)
    } else {
        x
    }
}

/// Differential evolution (rand/1/bin) for `delta_q` over the rectangle,
/// followed by optional Newton refinement.
pub fn search_modulus(q1: f64, q3: f64, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.rect.validate(cfg.branch)?;
    if cfg.population < 8 {
        return Err(Error::Domain(format!(
            "population {} is below the minimum of 8",
            cfg.population
        )));
    }
    let q = (q1, q3);
    let r = cfg.rect;
    let lo = [r.t0, r.s0];
    let hi = [r.t1, r.s1];
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let np = cfg.population;

    let mut pop: Vec<[f64; 2]> = (0..np)
        .map(|_| {
            [
                lo[0] + rng.random::<f64>() * (hi[0] - lo[0]),
                lo[1] + rng.random::<f64>() * (hi[1] - lo[1]),
            ]
        })
        .collect();
    let mut fit: Vec<f64> = pop
        .par_iter()
        .map(|x| objective(cfg.branch, q, x[0], x[1]))
        .collect();
    let mut evaluations = np;
    let mut generations = 0;

    for _ in 0..cfg.max_generations {
        let best = fit.iter().cloned().fold(f64::INFINITY, f64::min);
        if best <= 1e-14 {
            break;
        }
        generations += 1;
        let trials: Vec<[f64; 2]> = (0..np)
            .map(|i| {
                let pick = |rng: &mut ChaCha8Rng, excl: &[usize]| loop {
                    let k = rng.random_range(0..np);
                    if !excl.contains(&k) {
                        break k;
                    }
                };
                let a = pick(&mut rng, &[i]);
                let b = pick(&mut rng, &[i, a]);
                let c = pick(&mut rng, &[i, a, b]);
                let jrand = rng.random_range(0..2);
                let mut trial = pop[i];
                for d in 0..2 {
                    if d == jrand || rng.random::<f64>() < cfg.crossover {
                        let v = pop[a][d] + cfg.mutation * (pop[b][d] - pop[c][d]);
                        trial[d] = bounce(v, pop[a][d], lo[d], hi[d], &mut rng);
                    }
                }
                trial
            })
            .collect();
        let tfit: Vec<f64> = trials
            .par_iter()
            .map(|x| objective(cfg.branch, q, x[0], x[1]))
            .collect();
        evaluations += np;
        for i in 0..np {
            if tfit[i] <= fit[i] {
                pop[i] = trials[i];
                fit[i] = tfit[i];
            }
        }
    }

    // first index among ties, for determinism
    let (bi, _) = fit
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &f)| if f < acc.1 { (i, f) } else { acc });
    let mut best = pop[bi];
    let delta_de = fit[bi];
    let mut delta = delta_de;
    if cfg.polish && delta < PENALTY {
        let (p, d, n) = newton_refine(cfg.branch, q, best, delta);
        evaluations += n;
        if d < delta {
            best = p;
            delta = d;
        }
    }
    let x = pmap(cfg.branch, best[0], best[1]);
    Ok(SearchResult {
        found: delta <= cfg.tol,
        t: best[0],
        s: best[1],
        modulus: x.modulus,
        delta,
        delta_de,
        p: x.p,
        delta1: x.delta1,
        delta2: x.delta2,
        generations,
        evaluations,
    })
}

/// Newton iteration on `(P1, P3)(t, s) = q` with a central-difference
/// Jacobian.
fn newton_refine(branch: Branch, q: (f64, f64), start: [f64; 2], d0: f64) -> ([f64; 2], f64, usize) {
    let mut x = start;
    let mut d = d0;
    let mut evals = 0;
    let eval = |x: [f64; 2]| {
        let v = pmap(branch, x[0], x[1]);
        if v.status == SampleStatus::Ok {
            Some((v.p[0] - q.0, v.p[2] - q.1))
        } else {
            None
        }
    };
    for _ in 0..8 {
        let Some(f) = eval(x) else { break };
        let h = 1e-6;
        let mut jac = [[0.0; 2]; 2];
        let mut ok = true;
        for k in 0..2 {
            let mut xp = x;
            let mut xm = x;
            xp[k] += h;
            xm[k] -= h;
            match (eval(xp), eval(xm)) {
                (Some(a), Some(b)) => {
                    jac[0][k] = (a.0 - b.0) / (2.0 * h);
                    jac[1][k] = (a.1 - b.1) / (2.0 * h);
                }
                _ => ok = false,
            }
        }
        evals += 5;
        if !ok {
            break;
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det.abs() < 1e-300 {
            break;
        }
        let dx = [
            (jac[1][1] * f.0 - jac[0][1] * f.1) / det,
            (-jac[1][0] * f.0 + jac[0][0] * f.1) / det,
        ];
        let next = [x[0] - dx[0], x[1] - dx[1]];
        let Some(g) = eval(next) else { break };
        evals += 1;
        let dn = (g.0 * g.0 + g.1 * g.1).sqrt();
        if dn >= d {
            break;
        }
        x = next;
        d = dn;
        if d < 1e-14 {
            break;
        }
    }
    (x, d, evals)
}

/// Grid pre-screen: the cell neighbourhood of the grid point with the
/// smallest `delta`, together with that `delta`.
pub fn prescreen(branch: Branch, q: (f64, f64), n: usize) -> Option<(Rect, f64)> {
    let full = Rect::full(branch);
    let grid = pmap_grid(branch, &full, n, n);
    let (best, d) = grid
        .iter()
        .filter(|x| x.status == SampleStatus::Ok)
        .map(|x| (x, ((x.p[0] - q.0).powi(2) + (x.p[2] - q.1).powi(2)).sqrt()))
        .fold((None, f64::INFINITY), |acc, (x, d)| {
            if d < acc.1 {
                (Some(x), d)
            } else {
                acc
            }
        });
    let x = best?;
    let dt = 1.5 * (full.t1 - full.t0) / n as f64;
    let ds = 1.5 * (full.s1 - full.s0) / n as f64;
    Some((
        Rect::new(
            (x.t - dt).max(full.t0),
            (x.t + dt).min(full.t1),
            (x.s - ds).max(full.s0),
            (x.s + ds).min(full.s1),
        ),
        d,
    ))
}

/// First continued-fraction convergent `m/n` of `x` with `n <= max_den`
/// and `|x - m/n| <= tol`.
pub fn rationalize(x: f64, max_den: i64, tol: f64) -> Option<Ratio<i64>> {
    if !x.is_finite() || max_den < 1 {
        return None;
    }
    let (mut h0, mut h1): (i64, i64) = (0, 1);
    let (mut k0, mut k1): (i64, i64) = (1, 0);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() <= tol {
            return Some(Ratio::new(h2, k2));
        }
        let frac = r - a as f64;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
    }
    None
}
