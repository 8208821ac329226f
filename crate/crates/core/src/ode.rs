//! Dormand–Prince 5(4) with step-size control and continuous output.
//!
//! The right-hand side is any `FnMut(t, y, dy)`. A step hook runs after
//! every accepted step and may rewrite the state (used for projecting frames
//! back onto the group) or stop the integration.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub rtol: f64,
    pub atol: f64,
    pub h0: Option<f64>,
    pub h_max: f64,
    pub max_steps: usize,
    pub safe: f64,
    pub beta: f64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            rtol: 1e-10,
            atol: 1e-12,
            h0: None,
            h_max: f64::INFINITY,
            max_steps: 2_000_000,
            safe: 0.9,
            beta: 0.04,
        }
    }
}

/// What the step hook asks the integrator to do next.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepAction {
    Continue,
    /// The hook rewrote the state; the FSAL stage is recomputed.
    Modified,
    Stop,
}

/// Why the integration ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    Completed,
    /// Stopped by the step hook at the recorded time.
    Stopped,
    /// Step size collapsed, typically at a finite-time singularity.
    StepUnderflow { t: f64, h: f64 },
}

#[derive(Debug, Clone)]
struct Segment {
    t0: f64,
    h: f64,
    rcont: [Vec<f64>; 5],
}

/// Accepted steps with their dense-output coefficients.
#[derive(Debug, Clone)]
pub struct Solution {
    pub t: Vec<f64>,
    pub y: Vec<Vec<f64>>,
    pub termination: Termination,
    segments: Vec<Segment>,
}

impl Solution {
    pub fn t_start(&self) -> f64 {
        self.t[0]
    }

    pub fn t_end(&self) -> f64 {
        *self.t.last().unwrap()
    }

    pub fn dim(&self) -> usize {
        self.y[0].len()
    }

    pub fn accepted_steps(&self) -> usize {
        self.segments.len()
    }

    /// Continuous output at `t`, clamped to the integrated range.
    pub fn eval(&self, t: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.eval_into(t, &mut out);
        out
    }

    pub fn eval_into(&self, t: f64, out: &mut [f64]) {
        if self.segments.is_empty() {
            out.copy_from_slice(&self.y[0]);
            return;
        }
        let forward = self.segments[0].h > 0.0;
        // segments are ordered in the direction of integration
        let idx = self
            .segments
            .partition_point(|s| if forward { s.t0 + s.h < t } else { s.t0 + s.h > t })
            .min(self.segments.len() - 1);
        let seg = &self.segments[idx];
        let theta = ((t - seg.t0) / seg.h).clamp(0.0, 1.0);
        let theta1 = 1.0 - theta;
        let [r1, r2, r3, r4, r5] = &seg.rcont;
        for i in 0..out.len() {
            out[i] = r1[i] + theta * (r2[i] + theta1 * (r3[i] + theta * (r4[i] + theta1 * r5[i])));
        }
    }
}

fn error_norm(err: &[f64], y0: &[f64], y1: &[f64], opts: &Options) -> f64 {
    let n = err.len() as f64;
    let s: f64 = err
        .iter()
        .zip(y0.iter().zip(y1))
        .map(|(e, (a, b))| {
            let sk = opts.atol + opts.rtol * a.abs().max(b.abs());
            (e / sk).powi(2)
        })
        .sum();
    (s / n).sqrt()
}

fn initial_step<F>(f: &mut F, t0: f64, y0: &[f64], k1: &[f64], dir: f64, opts: &Options) -> f64
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let n = y0.len();
    let sk: Vec<f64> = y0.iter().map(|y| opts.atol + opts.rtol * y.abs()).collect();
    let d0 = (y0.iter().zip(&sk).map(|(y, s)| (y / s).powi(2)).sum::<f64>() / n as f64).sqrt();
    let d1 = (k1.iter().zip(&sk).map(|(k, s)| (k / s).powi(2)).sum::<f64>() / n as f64).sqrt();
    let mut h = if d0 < 1e-10 || d1 < 1e-10 { 1e-6 } else { 0.01 * d0 / d1 };
    h = h.min(opts.h_max);
    let y1: Vec<f64> = y0.iter().zip(k1).map(|(y, k)| y + dir * h * k).collect();
    let mut k2 = vec![0.0; n];
    f(t0 + dir * h, &y1, &mut k2);
    let d2 = (k2
        .iter()
        .zip(k1)
        .zip(&sk)
        .map(|((a, b), s)| ((a - b) / s).powi(2))
        .sum::<f64>()
        / n as f64)
        .sqrt()
        / h;
    let der = d1.max(d2);
    let h1 = if der <= 1e-15 {
        (1e-6_f64).max(h * 1e-3)
    } else {
        (0.01 / der).powf(0.2)
    };
    (100.0 * h).min(h1).min(opts.h_max)
}

/// Integrates from `t0` to `t_end` (either direction) without a hook.
pub fn integrate<F>(f: F, t0: f64, y0: &[f64], t_end: f64, opts: &Options) -> Result<Solution>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    integrate_with_hook(f, t0, y0, t_end, opts, |_, _, _| StepAction::Continue)
}

/// Integrates with a hook `hook(accepted_count, t, y)` run after each step.
pub fn integrate_with_hook<F, H>(
    mut f: F,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    opts: &Options,
    mut hook: H,
) -> Result<Solution>
where
    F: FnMut(f64, &[f64], &mut [f64]),
    H: FnMut(usize, f64, &mut [f64]) -> StepAction,
{
    let n = y0.len();
    let mut sol = Solution {
        t: vec![t0],
        y: vec![y0.to_vec()],
        termination: Termination::Completed,
        segments: Vec::new(),
    };
    if t_end == t0 {
        return Ok(sol);
    }
    let dir = if t_end > t0 { 1.0 } else { -1.0 };
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k1 = vec![0.0; n];
    f(t, &y, &mut k1);
    if k1.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain(format!("non-finite derivative at t = {t0}")));
    }
    let mut h = match opts.h0 {
        Some(h0) => h0.abs(),
        None => initial_step(&mut f, t, &y, &k1, dir, opts),
    };

    let (mut k2, mut k3, mut k4, mut k5, mut k6, mut k7) = (
        vec![0.0; n],
        vec![0.0; n],
        vec![0.0; n],
        vec![0.0; n],
        vec![0.0; n],
        vec![0.0; n],
    );
    let mut ytmp = vec![0.0; n];
    let mut ynew = vec![0.0; n];
    let mut err = vec![0.0; n];
    let mut facold: f64 = 1e-4;
    let mut reject = false;
    let mut accepted = 0usize;
    let expo = 0.2 - opts.beta * 0.75;

    for _ in 0..opts.max_steps {
        let remaining = (t_end - t) * dir;
        if remaining <= 0.0 {
            return Ok(sol);
        }
        let mut last = false;
        if h >= remaining {
            h = remaining;
            last = true;
        }
        if h.abs() <= 1e-14 * t.abs().max(1.0) {
            sol.termination = Termination::StepUnderflow { t, h };
            return Ok(sol);
        }
        let hs = dir * h;

        for i in 0..n {
            ytmp[i] = y[i] + hs * A21 * k1[i];
        }
        f(t + C2 * hs, &ytmp, &mut k2);
        for i in 0..n {
            ytmp[i] = y[i] + hs * (A31 * k1[i] + A32 * k2[i]);
        }
        f(t + C3 * hs, &ytmp, &mut k3);
        for i in 0..n {
            ytmp[i] = y[i] + hs * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        f(t + C4 * hs, &ytmp, &mut k4);
        for i in 0..n {
            ytmp[i] = y[i] + hs * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        f(t + C5 * hs, &ytmp, &mut k5);
        for i in 0..n {
            ytmp[i] = y[i]
                + hs * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        f(t + hs, &ytmp, &mut k6);
        for i in 0..n {
            ynew[i] = y[i]
                + hs * (A71 * k1[i] + A73 * k3[i] + A74 * k4[i] + A75 * k5[i] + A76 * k6[i]);
        }
        f(t + hs, &ynew, &mut k7);
        for i in 0..n {
            err[i] = hs
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        }

        let finite = ynew.iter().chain(k7.iter()).all(|v| v.is_finite());
        let e = if finite {
            error_norm(&err, &y, &ynew, opts)
        } else {
            f64::INFINITY
        };

        if e <= 1.0 {
            let fac11 = e.powf(expo);
            let fac = (fac11 / facold.powf(opts.beta) / opts.safe).clamp(0.2, 10.0);
            let hnew = (h / fac).min(opts.h_max);
            facold = e.max(1e-4);

            let mut rcont: [Vec<f64>; 5] = Default::default();
            rcont[0] = y.clone();
            rcont[1] = ynew.iter().zip(&y).map(|(a, b)| a - b).collect();
            rcont[2] = (0..n).map(|i| hs * k1[i] - rcont[1][i]).collect();
            rcont[3] = (0..n)
                .map(|i| rcont[1][i] - hs * k7[i] - rcont[2][i])
                .collect();
            rcont[4] = (0..n)
                .map(|i| {
                    hs * (D1 * k1[i]
                        + D3 * k3[i]
                        + D4 * k4[i]
                        + D5 * k5[i]
                        + D6 * k6[i]
                        + D7 * k7[i])
                })
                .collect();
            sol.segments.push(Segment { t0: t, h: hs, rcont });

            t = if last { t_end } else { t + hs };
            y.copy_from_slice(&ynew);
            std::mem::swap(&mut k1, &mut k7);
            accepted += 1;

            let action = hook(accepted, t, &mut y);
            if action == StepAction::Modified {
                f(t, &y, &mut k1);
            }
            sol.t.push(t);
            sol.y.push(y.clone());
            if action == StepAction::Stop {
                sol.termination = Termination::Stopped;
                return Ok(sol);
            }
            if last {
                return Ok(sol);
            }
            h = if reject { hnew.min(h) } else { hnew };
            reject = false;
        } else {
            let shrink = if e.is_finite() {
                (e.powf(expo) / opts.safe).min(5.0)
            } else {
                10.0
            };
            h /= shrink;
            reject = true;
        }
    }
    Err(Error::Accuracy(format!(
        "step budget of {} exhausted at t = {t}",
        opts.max_steps
    )))
}
