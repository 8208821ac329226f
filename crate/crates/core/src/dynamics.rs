//! Twist profiles, the Lax pair and Wilczynski frame integration.
//!
//! The state is `[tau, tau', kappa, phi_1, phi_2, phi_3]` with complex
//! phases stored as (re, im) pairs. The bending is carried as a state
//! variable (`kappa' = -2 kappa tau' / tau`) rather than substituted from
//! `kappa tau^2 = c1`, so that the bending law is a genuine check on the
//! integration. After every step `(tau, tau')` is projected back onto the
//! level set `(3/2) tau^2 tau'^2 = P(tau)`; without this the drift grows
//! with the size of the modulus and exceeds 1e-9 for `|c| >~ 10`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat3, C64, I, ONE, ZERO};
use crate::moduli::{
    momentum_eigenvalues, phase_of, quintic_roots, CurveClass, Modulus, MomentumSpectrum, Phase,
    QuinticSpectrum,
};
use crate::ode::{self, StepAction, Termination};
use crate::poly;
use crate::quadrature;

pub const PROFILE_DIM: usize = 9;
pub const FRAME_DIM: usize = PROFILE_DIM + 18;
pub const BLOWUP: f64 = 1e6;
pub const SINGULAR_BAND: f64 = 1e-8;
pub const REPROJECT_EVERY: usize = 100;
pub const GROUP_TOL: f64 = 1e-6;

/// `K(kappa, tau)`, the structure matrix of a Wilczynski frame.
pub fn structure_matrix(kappa: f64, tau: f64) -> CMat3 {
    CMat3::new(
        c(0.0, kappa),
        -I,
        c(tau, 0.0),
        ZERO,
        c(0.0, -2.0 * kappa),
        ONE,
        ONE,
        ZERO,
        c(0.0, kappa),
    )
}

/// The Lax matrix `L(kappa, tau, tau')`.
pub fn lax_matrix(kappa: f64, tau: f64, dtau: f64) -> CMat3 {
    let a = 3.0 * (1.0 - tau * kappa);
    CMat3::new(
        ZERO,
        c(a, dtau),
        c(0.0, 2.0 * tau),
        c(tau, 0.0),
        ZERO,
        c(dtau, a),
        c(0.0, 3.0),
        c(0.0, -tau),
        ZERO,
    )
}

/// Right-hand side of the phase equation,
/// `(3 kappa lambda - 4 kappa tau^2 - lambda^2 + 3 tau) / (3 lambda - tau^2)`.
pub fn phase_rate(kappa: f64, tau: f64, lambda: C64) -> C64 {
    (lambda * (3.0 * kappa) - lambda * lambda + (3.0 * tau - 4.0 * kappa * tau * tau))
        / (lambda * 3.0 - tau * tau)
}

fn profile_rhs(lambdas: &[C64; 3], y: &[f64], dy: &mut [f64]) {
    let (tau, dtau, kappa) = (y[0], y[1], y[2]);
    dy[0] = dtau;
    dy[1] = tau * tau - 9.0 * kappa * (1.0 - tau * kappa);
    dy[2] = if kappa == 0.0 { 0.0 } else { -2.0 * kappa * dtau / tau };
    for j in 0..3 {
        let r = phase_rate(kappa, tau, lambdas[j]);
        dy[3 + 2 * j] = r.re;
        dy[4 + 2 * j] = r.im;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwistSample {
    pub s: f64,
    pub tau: f64,
    pub dtau: f64,
    pub kappa: f64,
    pub phi: [C64; 3],
}

impl TwistSample {
    fn from_state(s: f64, y: &[f64]) -> Self {
        TwistSample {
            s,
            tau: y[0],
            dtau: y[1],
            kappa: y[2],
            phi: [
                Complex64::new(y[3], y[4]),
                Complex64::new(y[5], y[6]),
                Complex64::new(y[7], y[8]),
            ],
        }
    }

    pub fn lax(&self) -> CMat3 {
        lax_matrix(self.kappa, self.tau, self.dtau)
    }

    pub fn structure(&self) -> CMat3 {
        structure_matrix(self.kappa, self.tau)
    }
}

/// How far to integrate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Span {
    /// `n` full periods `[0, 2 n omega]` of a type B' twist.
    Periods(u32),
    /// Up to the given parameter value (negative values integrate backwards);
    /// unbounded twists stop early at the blow-up threshold.
    Until(f64),
}

#[derive(Debug, Clone)]
pub struct TwistProfile {
    pub modulus: Modulus,
    pub class: CurveClass,
    /// Half period for B' twists, escape time otherwise (NaN for `c1 = 0`
    /// data without a root start).
    pub omega: f64,
    pub roots: QuinticSpectrum,
    pub momentum: MomentumSpectrum,
    pub initial: (f64, f64),
    /// True when integration stopped at the blow-up threshold or on step
    /// underflow before the requested end.
    pub truncated: bool,
    pub termination: Termination,
    pub samples: Vec<TwistSample>,
    solution: ode::Solution,
    opts: ode::Options,
}

impl TwistProfile {
    pub fn lambdas(&self) -> [C64; 3] {
        self.momentum.eigenvalues
    }

    pub fn s_end(&self) -> f64 {
        self.solution.t_end()
    }

    /// Dense-output sample at `s`.
    pub fn at(&self, s: f64) -> TwistSample {
        TwistSample::from_state(s, &self.solution.eval(s))
    }

    /// `n + 1` equally spaced samples over the integrated range.
    pub fn resample(&self, n: usize) -> Vec<TwistSample> {
        let (a, b) = (self.solution.t_start(), self.solution.t_end());
        (0..=n)
            .map(|k| {
                let s = if k == n { b } else { a + (b - a) * k as f64 / n as f64 };
                self.at(s)
            })
            .collect()
    }

    /// `|(3/2) tau^2 tau'^2 - P(tau)| / (1 + |P(tau)|)`, maximized over samples.
    pub fn conservation_residual(&self) -> f64 {
        self.samples
            .iter()
            .map(|x| {
                let p = self.modulus.quintic(x.tau);
                (1.5 * x.tau * x.tau * x.dtau * x.dtau - p).abs() / (1.0 + p.abs())
            })
            .fold(0.0, f64::max)
    }

    /// Relative deviation of `kappa tau^2` from `c1` (absolute when `c1 = 0`).
    pub fn bending_residual(&self) -> f64 {
        let c1 = self.modulus.c1;
        let scale = if c1 == 0.0 { 1.0 } else { c1.abs() };
        self.samples
            .iter()
            .map(|x| (x.kappa * x.tau * x.tau - c1).abs() / scale)
            .fold(0.0, f64::max)
    }

    pub(crate) fn state0(&self) -> Vec<f64> {
        self.solution.y[0].clone()
    }

    pub(crate) fn ode_span(&self) -> (f64, f64) {
        (self.solution.t_start(), self.solution.t_end())
    }
}

fn class_matches(class: CurveClass, phase: Phase, c1: f64) -> bool {
    match class {
        CurveClass::A(_) => phase == Phase::A,
        CurveClass::BPrime(_) | CurveClass::BDoublePrime(_) => phase == Phase::B,
        CurveClass::C(_) => phase == Phase::C || c1 == 0.0,
    }
}

/// Canonical starting root of each class, with `tau'(0) = 0`.
fn canonical_start(class: CurveClass, roots: &QuinticSpectrum) -> Result<f64> {
    let simple: Vec<f64> = roots
        .real_roots
        .iter()
        .filter(|r| r.multiplicity == 1)
        .map(|r| r.value)
        .collect();
    match class {
        CurveClass::BPrime(_) => {
            let e = quadrature::compact_cycle(roots)?;
            Ok(if e[0] < 0.0 { e[1] } else { e[0] })
        }
        CurveClass::BDoublePrime(_) => Ok(roots.phase_b_roots().unwrap()[2]),
        CurveClass::A(_) => simple
            .first()
            .copied()
            .ok_or_else(|| Error::Domain("phase A modulus without a simple real root".into())),
        CurveClass::C(_) => simple.last().copied().ok_or_else(|| {
            Error::Domain("no simple real root to start from; give initial data".into())
        }),
    }
}

/// Canonical class of a modulus: B' for phase B, otherwise the unique one.
pub fn default_class(c: &Modulus) -> Result<CurveClass> {
    let roots = quintic_roots(c)?;
    let j = momentum_eigenvalues(c)?.kind.index();
    Ok(match phase_of(&roots) {
        Phase::A => CurveClass::A(j),
        Phase::B => CurveClass::BPrime(j),
        Phase::C => CurveClass::C(j),
    })
}

/// Twist profile of the given class started at its canonical root.
pub fn twist_profile(c: &Modulus, class: CurveClass, span: Span) -> Result<TwistProfile> {
    twist_profile_with(c, class, span, None, &options_for(span))
}

/// Default tolerances, tightened in proportion to the number of periods so
/// that the accumulated drift stays at the two-period level.
pub fn options_for(span: Span) -> ode::Options {
    scaled_options(&ode::Options::default(), span)
}

/// [`options_for`] starting from the given base tolerances.
pub fn scaled_options(base: &ode::Options, span: Span) -> ode::Options {
    let mut opts = *base;
    if let Span::Periods(n) = span {
        if n > 2 {
            opts.rtol *= 2.0 / n as f64;
            opts.atol *= 2.0 / n as f64;
        }
    }
    opts
}

/// Twist profile with optional explicit initial data `(tau(0), tau'(0))`,
/// which is required for `c1 = 0` moduli without a simple root.
pub fn twist_profile_with(
    c: &Modulus,
    class: CurveClass,
    span: Span,
    initial: Option<(f64, f64)>,
    opts: &ode::Options,
) -> Result<TwistProfile> {
    let roots = quintic_roots(c)?;
    let momentum = momentum_eigenvalues(c)?;
    let phase = phase_of(&roots);
    if !class_matches(class, phase, c.c1) {
        return Err(Error::Domain(format!(
            "class {class} does not match phase {phase:?} of {c}"
        )));
    }
    if class.orbit_index() != momentum.kind.index() {
        return Err(Error::Domain(format!(
            "class {class} does not match orbit type {:?} of {c}",
            momentum.kind
        )));
    }
    let (tau0, dtau0) = match initial {
        Some(v) => v,
        None => (canonical_start(class, &roots)?, 0.0),
    };
    if c.c1 != 0.0 && tau0 == 0.0 {
        return Err(Error::Domain("tau(0) = 0 with c1 != 0".into()));
    }
    if initial.is_some() {
        let k = if c.c1 == 0.0 { 0.0 } else { c.c1 / (tau0 * tau0) };
        let c2 = -18.0 * k * tau0 + 9.0 * k * k * tau0 * tau0 - (2.0 / 3.0) * tau0.powi(3)
            + dtau0 * dtau0;
        if (c2 - c.c2).abs() > 1e-9 * (1.0 + c.c2.abs()) {
            return Err(Error::Domain(format!(
                "initial data ({tau0}, {dtau0}) has c2 = {c2}, not {}",
                c.c2
            )));
        }
    }
    let omega = match class {
        CurveClass::BPrime(_) => quadrature::half_period(c, &roots)?,
        _ if initial.is_none() && tau0 > 0.0 => quadrature::escape_time(c, tau0).unwrap_or(f64::NAN),
        _ => f64::NAN,
    };
    let s_end = match span {
        Span::Periods(n) => {
            if !class.is_periodic() {
                return Err(Error::Domain(format!("class {class} has no period")));
            }
            2.0 * n as f64 * omega
        }
        Span::Until(s) => s,
    };
    let kappa0 = if c.c1 == 0.0 { 0.0 } else { c.c1 / (tau0 * tau0) };
    let y0 = [tau0, dtau0, kappa0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    let lambdas = momentum.eigenvalues;

    let mut fault: Option<Error> = None;
    let mut blew_up = false;
    let c1 = c.c1;
    let sol = ode::integrate_with_hook(
        |_, y, dy| profile_rhs(&lambdas, y, dy),
        0.0,
        &y0,
        s_end,
        opts,
        |_, s, y| {
            if y[0].abs() > BLOWUP {
                blew_up = true;
                return StepAction::Stop;
            }
            if let Some(e) = singular_check(c1, &lambdas, s, y[0]) {
                fault = Some(e);
                return StepAction::Stop;
            }
            if project_energy(c, y) {
                StepAction::Modified
            } else {
                StepAction::Continue
            }
        },
    )?;
    if let Some(e) = fault {
        return Err(e);
    }
    let truncated = blew_up || matches!(sol.termination, Termination::StepUnderflow { .. });
    if truncated && class.is_periodic() {
        return Err(match sol.termination {
            Termination::StepUnderflow { t, h } => Error::StepUnderflow { s: t, h },
            _ => Error::Accuracy("periodic twist left the compact cycle".into()),
        });
    }
    let samples = sol
        .t
        .iter()
        .zip(&sol.y)
        .map(|(&s, y)| TwistSample::from_state(s, y))
        .collect();
    Ok(TwistProfile {
        modulus: *c,
        class,
        omega,
        roots,
        momentum,
        initial: (tau0, dtau0),
        truncated,
        termination: sol.termination,
        samples,
        solution: sol,
        opts: *opts,
    })
}

/// Newton projection of `(tau, tau')` along the gradient of
/// `E = (3/2) tau^2 tau'^2 - P(tau)`. The product `kappa tau^2` is carried
/// along unchanged. Leaves the state alone when the correction would not be
/// small.
fn project_energy(c: &Modulus, y: &mut [f64]) -> bool {
    let coeffs = c.quintic_coeffs();
    let (mut tau, mut dtau) = (y[0], y[1]);
    for _ in 0..2 {
        let (p, dp) = poly::eval_with_derivative(&coeffs, tau);
        let e = 1.5 * tau * tau * dtau * dtau - p;
        let gt = 3.0 * tau * dtau * dtau - dp;
        let gd = 3.0 * tau * tau * dtau;
        let n2 = gt * gt + gd * gd;
        if !(n2 > 0.0 && e.is_finite()) {
            return false;
        }
        tau -= e * gt / n2;
        dtau -= e * gd / n2;
    }
    let small = 1e-6 * (1.0 + y[0].abs() + y[1].abs());
    if !((tau - y[0]).abs() < small && (dtau - y[1]).abs() < small) {
        return false;
    }
    let r = y[0] / tau;
    y[2] *= r * r;
    y[0] = tau;
    y[1] = dtau;
    true
}

fn singular_check(c1: f64, lambdas: &[C64; 3], s: f64, tau: f64) -> Option<Error> {
    if c1 != 0.0 && tau * tau < SINGULAR_BAND {
        return Some(Error::NonGeneral(format!("tau^2 = {:.3e} at s = {s}", tau * tau)));
    }
    for (j, l) in lambdas.iter().enumerate() {
        let d = (*l * 3.0 - tau * tau).norm();
        if d < SINGULAR_BAND * (1.0 + l.norm()) {
            return Some(Error::NonGeneral(format!(
                "3 lambda_{} - tau^2 = {d:.3e} at s = {s}",
                j + 1
            )));
        }
    }
    None
}

/// Frame path: the twist state and a frame `F` with `F' = F K`, integrated
/// jointly.
#[derive(Debug, Clone)]
pub struct FramePath {
    pub modulus: Modulus,
    pub lambdas: [C64; 3],
    /// Size of each re-projection correction.
    pub corrections: Vec<f64>,
    /// Largest group residual seen before a correction.
    pub max_drift: f64,
    solution: ode::Solution,
}

impl FramePath {
    pub fn s_start(&self) -> f64 {
        self.solution.t_start()
    }

    pub fn s_end(&self) -> f64 {
        self.solution.t_end()
    }

    pub fn frame_at(&self, s: f64) -> CMat3 {
        let y = self.solution.eval(s);
        linalg::mat_from_flat(&y[PROFILE_DIM..])
    }

    pub fn twist_at(&self, s: f64) -> TwistSample {
        let y = self.solution.eval(s);
        TwistSample::from_state(s, &y)
    }

    /// Frames at the solver nodes.
    pub fn node_frames(&self) -> impl Iterator<Item = (f64, CMat3)> + '_ {
        self.solution
            .t
            .iter()
            .zip(&self.solution.y)
            .map(|(&s, y)| (s, linalg::mat_from_flat(&y[PROFILE_DIM..])))
    }

    pub fn node_states(&self) -> impl Iterator<Item = (TwistSample, CMat3)> + '_ {
        self.solution.t.iter().zip(&self.solution.y).map(|(&s, y)| {
            (
                TwistSample::from_state(s, y),
                linalg::mat_from_flat(&y[PROFILE_DIM..]),
            )
        })
    }

    /// `F L F^{-1}` at `s`.
    pub fn momentum_at(&self, s: f64) -> CMat3 {
        let y = self.solution.eval(s);
        let f = linalg::mat_from_flat(&y[PROFILE_DIM..]);
        let l = lax_matrix(y[2], y[0], y[1]);
        f * l * linalg::group_inverse(&f)
    }

    /// Largest group residual of `F` over the solver nodes.
    pub fn group_residual(&self) -> f64 {
        self.node_frames()
            .map(|(_, f)| linalg::group_residual(&f))
            .fold(0.0, f64::max)
    }

    /// Largest `||F L F^{-1} - M(0)||` over the solver nodes.
    pub fn momentum_drift(&self) -> f64 {
        let m0 = self.momentum_at(self.s_start());
        self.node_states()
            .map(|(x, f)| linalg::fro(&(f * x.lax() * linalg::group_inverse(&f) - m0)))
            .fold(0.0, f64::max)
    }
}

fn frame_rhs(lambdas: &[C64; 3], y: &[f64], dy: &mut [f64]) {
    profile_rhs(lambdas, &y[..PROFILE_DIM], &mut dy[..PROFILE_DIM]);
    let f = linalg::mat_from_flat(&y[PROFILE_DIM..]);
    let k = structure_matrix(y[2], y[0]);
    linalg::mat_to_flat(&(f * k), &mut dy[PROFILE_DIM..]);
}

/// Integrates `F' = F K` along the profile's parameter range, starting from
/// `f0`, with a group re-projection every `REPROJECT_EVERY` accepted steps.
pub fn integrate_frame(profile: &TwistProfile, f0: &CMat3) -> Result<FramePath> {
    integrate_frame_with(profile, f0, &profile.opts)
}

pub fn integrate_frame_with(
    profile: &TwistProfile,
    f0: &CMat3,
    opts: &ode::Options,
) -> Result<FramePath> {
    let r0 = linalg::group_residual(f0);
    if r0 > GROUP_TOL {
        return Err(Error::Domain(format!(
            "initial frame is not in the group (residual {r0:.3e})"
        )));
    }
    let (s0, s1) = profile.ode_span();
    let mut y0 = profile.state0();
    y0.resize(FRAME_DIM, 0.0);
    linalg::mat_to_flat(f0, &mut y0[PROFILE_DIM..]);
    let lambdas = profile.lambdas();
    let c1 = profile.modulus.c1;
    let mut corrections = Vec::new();
    let mut max_drift: f64 = 0.0;
    let mut fault: Option<Error> = None;
    let sol = ode::integrate_with_hook(
        |_, y, dy| frame_rhs(&lambdas, y, dy),
        s0,
        &y0,
        s1,
        opts,
        |n, s, y| {
            if let Some(e) = singular_check(c1, &lambdas, s, y[0]) {
                fault = Some(e);
                return StepAction::Stop;
            }
            if n % REPROJECT_EVERY != 0 {
                return StepAction::Continue;
            }
            let f = linalg::mat_from_flat(&y[PROFILE_DIM..]);
            let drift = linalg::group_residual(&f);
            max_drift = max_drift.max(drift);
            if drift > GROUP_TOL {
                fault = Some(Error::Accuracy(format!(
                    "frame left the group before correction: residual {drift:.3e} at s = {s}"
                )));
                return StepAction::Stop;
            }
            let g = linalg::project_to_group(&f);
            corrections.push(linalg::fro(&(g - f)));
            linalg::mat_to_flat(&g, &mut y[PROFILE_DIM..]);
            StepAction::Modified
        },
    )?;
    if let Some(e) = fault {
        return Err(e);
    }
    Ok(FramePath {
        modulus: profile.modulus,
        lambdas,
        corrections,
        max_drift,
        solution: sol,
    })
}

#[derive(Debug, Clone)]
pub struct Monodromy {
    pub matrix: CMat3,
    /// Eigenvalues of the monodromy.
    pub eigenvalues: [C64; 3],
    /// `arg(eigenvalue) / 2 pi` in `(-1/2, 1/2]`, matched to the momentum
    /// eigenvalues `lambda_j` via the eigenvector of the monodromy at `s = 0`.
    pub phases: [f64; 3],
    pub det_residual: f64,
    /// `||[M, Mom]||`.
    pub commutator: f64,
}

/// Monodromy `F(2 omega) F(0)^{-1}` over one period.
pub fn monodromy(path: &FramePath, omega: f64, periods: u32) -> Result<Monodromy> {
    let s1 = 2.0 * omega * periods as f64;
    if s1 > path.s_end() * (1.0 + 1e-12) + 1e-12 {
        return Err(Error::Domain(format!(
            "frame path ends at {} before 2 n omega = {s1}",
            path.s_end()
        )));
    }
    let f0 = path.frame_at(path.s_start());
    let f1 = path.frame_at(s1);
    let m = f1 * linalg::inverse(&f0)?;
    let mom = path.momentum_at(path.s_start());
    let mut eigenvalues = [ZERO; 3];
    let mut phases = [0.0; 3];
    for j in 0..3 {
        // the momentum eigenvector for lambda_j is a monodromy eigenvector
        let v = linalg::eigenvector(&mom, path.lambdas[j]);
        let mv = m * v;
        let mu = v.dotc(&mv) / v.dotc(&v);
        eigenvalues[j] = mu;
        phases[j] = mu.arg() / (2.0 * std::f64::consts::PI);
        let res = (mv - v * mu).norm() / v.norm();
        if res > 1e-5 {
            return Err(Error::Accuracy(format!(
                "momentum eigenvector {} is not a monodromy eigenvector (residual {res:.3e})",
                j + 1
            )));
        }
    }
    for mu in &eigenvalues {
        if (mu.norm() - 1.0).abs() > 1e-5 {
            return Err(Error::Accuracy(format!(
                "monodromy eigenvalue off the unit circle: |mu| = {}",
                mu.norm()
            )));
        }
    }
    Ok(Monodromy {
        matrix: m,
        eigenvalues,
        phases,
        det_residual: (m.determinant() - ONE).norm(),
        commutator: linalg::fro(&linalg::commutator(&m, &mom)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: Modulus = Modulus {
        c1: -0.8284243304411575,
        c2: -8.349417691746162,
    };

    #[test]
    fn structure_matrix_at_origin() {
        let k = structure_matrix(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                let expected = match (i, j) {
                    (0, 1) => -I,
                    (1, 2) | (2, 0) => ONE,
                    _ => ZERO,
                };
                assert_eq!(k[(i, j)], expected);
            }
        }
        assert_eq!(structure_matrix(0.7, -1.3).trace(), ZERO);
    }

    #[test]
    fn lax_matrix_is_self_adjoint_and_traceless() {
        let l = lax_matrix(0.37, -1.1, 0.6);
        assert!(linalg::fro(&(linalg::h_adjoint(&l) - l)) < 1e-15);
        assert_eq!(l.trace(), ZERO);
    }

    #[test]
    fn example_profile_turns_at_roots() {
        let p = twist_profile(&EXAMPLE, CurveClass::BPrime(1), Span::Periods(1)).unwrap();
        assert!((p.omega - 0.732307).abs() < 1e-5);
        assert!((p.samples[0].tau + 0.678034).abs() < 1e-6);
        assert!((p.at(p.omega).tau + 0.931924).abs() < 1e-6);
        let end = p.samples.last().unwrap();
        assert!((end.tau - p.samples[0].tau).abs() < 1e-8);
        assert!(p.conservation_residual() < 1e-9);
        assert!(p.bending_residual() < 1e-10);
    }

    #[test]
    fn axis_modulus_has_zero_bending() {
        let c = Modulus::new(0.0, -3.0);
        let class = default_class(&c).unwrap();
        let dtau0 = (-3.0 + 16.0 / 3.0_f64).sqrt();
        let p = twist_profile_with(&c, class, Span::Until(-0.5), Some((2.0, dtau0)), &Default::default())
            .unwrap();
        assert!(p.samples.iter().all(|x| x.kappa == 0.0));
        // tau'^2 = (2/3) tau^3 + c2 is conserved
        for x in &p.samples {
            let r = x.dtau * x.dtau - (2.0 / 3.0) * x.tau.powi(3) + 3.0;
            assert!(r.abs() < 1e-9 * (1.0 + x.tau.abs().powi(3)));
        }
        assert!(twist_profile_with(&c, class, Span::Until(0.5), Some((1.0, 0.2)), &Default::default()).is_err());
    }

    #[test]
    fn unbounded_profile_truncates() {
        let c = Modulus::new(4.0, -9.0);
        let p = twist_profile(&c, CurveClass::A(2), Span::Until(10.0)).unwrap();
        assert!(p.truncated);
        assert!(p.s_end() < p.omega && p.s_end() > 0.99 * p.omega);
    }
}
