//! Discrete global invariants of closed type B'1 curves: quantum numbers,
//! spin, wave number, turning number and trace, with direct winding checks.

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::dynamics::{scaled_options, twist_profile, twist_profile_with, Span, TwistProfile};
use crate::error::{Error, Result};
use crate::linalg::{self, CVec3, C64};
use crate::moduli::{CurveClass, Modulus};
use crate::ode;
use crate::reconstruction::{self, StandardConfiguration};

pub type Q = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Spin {
    One,
    OneThird,
}

impl std::fmt::Display for Spin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Spin::One => "1",
            Spin::OneThird => "1/3",
        })
    }
}

/// Closed-form invariants of both polarization branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchValues {
    pub turning: i64,
    pub trace: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub q1: Q,
    pub q2: Q,
    pub q3: Q,
    /// `lcm(n1, n3)`.
    pub n: i64,
    pub s1: i64,
    pub s3: i64,
    pub spin: Spin,
    pub wave_number: i64,
    /// Polarization used to select `turning` and `trace`.
    pub epsilon: i8,
    pub turning: i64,
    pub trace: i64,
    pub positive: BranchValues,
    pub negative: BranchValues,
}

/// Representative of `-(q1 + q3)` modulo the integers in `(-1, 0]`.
pub fn default_q2(q1: Q, q3: Q) -> Q {
    let x = -(q1 + q3);
    let f = x - x.ceil();
    if f == Q::from_integer(-1) {
        Q::from_integer(0)
    } else {
        f
    }
}

pub fn discrete_invariants(q1: Q, q3: Q, epsilon: i8) -> Result<QuantumNumbers> {
    discrete_invariants_with(q1, default_q2(q1, q3), q3, epsilon)
}

/// As [`discrete_invariants`] with an explicit representative of `q2`.
pub fn discrete_invariants_with(q1: Q, q2: Q, q3: Q, epsilon: i8) -> Result<QuantumNumbers> {
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::Domain(format!("polarization {epsilon} is not +1 or -1")));
    }
    if (q1 + q2 + q3).denom() != &1 {
        return Err(Error::Domain(format!(
            "q1 + q2 + q3 = {} is not an integer",
            q1 + q2 + q3
        )));
    }
    let (m1, n1) = (*q1.numer(), *q1.denom());
    let (m3, n3) = (*q3.numer(), *q3.denom());
    let n = n1.lcm(&n3);
    let (s1, s3) = (n / n1, n / n3);
    let a = (m1 * s1).rem_euclid(3);
    let b = (m3 * s3).rem_euclid(3);
    let spin = if n % 3 == 0 && a == b && a != 0 {
        Spin::OneThird
    } else {
        Spin::One
    };
    let wave_number = match spin {
        Spin::One => n,
        Spin::OneThird => n / 3,
    };
    let ng = Q::from_integer(wave_number);
    let integral = |x: Q| -> Result<i64> {
        if x.is_integer() {
            Ok(x.to_integer())
        } else {
            Err(Error::Internal(format!("{x} is not an integer")))
        }
    };
    let positive = BranchValues {
        turning: s3 * m3,
        trace: integral(ng * (q1 - q3))?,
    };
    let negative = BranchValues {
        turning: integral(Q::from_integer(n) * q2)?,
        trace: integral(ng * (q1 - q2))?,
    };
    let chosen = if epsilon == 1 { positive } else { negative };
    Ok(QuantumNumbers {
        q1,
        q2,
        q3,
        n,
        s1,
        s3,
        spin,
        wave_number,
        epsilon,
        turning: chosen.turning,
        trace: chosen.trace,
        positive,
        negative,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Winding {
    pub degree: i64,
    /// Total unwrapped phase divided by `2 pi`.
    pub turns: f64,
    pub residual: f64,
}

/// Degree of a sampled loop (or path) in `C \ {0}` by phase unwrapping.
pub fn winding_degree(samples: &[C64], closed: bool) -> Result<Winding> {
    let scale = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(k) = samples.iter().position(|z| z.norm() <= 1e-8 * scale.max(1e-300)) {
        return Err(Error::Degenerate(format!("sample {k} is too close to the origin")));
    }
    let mut total = 0.0;
    for (k, w) in samples.windows(2).enumerate() {
        let d = (w[1] / w[0]).arg();
        if d.abs() >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::Undersampled { index: k + 1, jump: d });
        }
        total += d;
    }
    let turns = total / (2.0 * std::f64::consts::PI);
    let degree = turns.round();
    let residual = (turns - degree).abs();
    if closed && residual >= 0.1 {
        return Err(Error::Accuracy(format!(
            "winding {turns} is {residual} away from an integer"
        )));
    }
    Ok(Winding {
        degree: degree as i64,
        turns,
        residual,
    })
}

/// Linking number of a closed polyline with the upward `z`-axis.
pub fn trace_linking(points: &[[f64; 3]]) -> Result<i64> {
    let scale = points
        .iter()
        .map(|p| p[0].hypot(p[1]).max(p[2].abs()))
        .fold(0.0, f64::max);
    let margin = points.iter().map(|p| p[0].hypot(p[1])).fold(f64::INFINITY, f64::min);
    if !(margin > 1e-8 * scale.max(1.0)) {
        return Err(Error::Degenerate(format!(
            "polyline comes within {margin} of the z-axis"
        )));
    }
    let mut zs: Vec<C64> = points.iter().map(|p| C64::new(p[0], p[1])).collect();
    if let (Some(&a), Some(&b)) = (zs.first(), zs.last()) {
        if a != b {
            zs.push(a);
        }
    }
    Ok(winding_degree(&zs, true)?.degree)
}

/// `q2` as the computed closing integral `P2` rounded to the common
/// denominator of `q1` and `q3`, falling back to [`default_q2`].
pub fn q2_from_modulus(c: &Modulus, q1: Q, q3: Q) -> Q {
    let n = q1.denom().lcm(q3.denom());
    let fallback = default_q2(q1, q3);
    let Ok(p) = crate::closure::closing_integrals(c) else {
        return fallback;
    };
    let q2 = Q::new((p[1] * n as f64).round() as i64, n);
    if (p[1] - *q2.numer() as f64 / *q2.denom() as f64).abs() < 1e-6 && (q1 + q2 + q3).is_integer() {
        q2
    } else {
        fallback
    }
}

/// Sampling density per twist period.
pub const DEFAULT_DENSITY: usize = 4096;

/// Direct computation of the invariants along a closed curve.
#[derive(Debug, Clone, Serialize)]
pub struct DirectInvariants {
    pub turning: Winding,
    pub trace: Winding,
    /// Linking number of the Heisenberg projection with the vertical axis.
    pub linking: i64,
    /// Projective distance between the points at `s = 0` and `s = 2 n_gamma omega`.
    pub closure_distance: f64,
    /// Branch whose closed form agrees with both direct values.
    pub matching_branch: Option<i8>,
}

pub struct ClosedCurve {
    pub profile: TwistProfile,
    pub numbers: QuantumNumbers,
    /// Standard configuration sampled over one full closed curve.
    pub standard: StandardConfiguration,
    pub direct: DirectInvariants,
}

/// Integrates the twist over `n` periods, builds the standard configuration
/// over `n_gamma` periods and measures the invariants directly.
pub fn closed_curve(c: &Modulus, q1: Q, q3: Q, density: usize) -> Result<ClosedCurve> {
    closed_curve_with(c, q1, None, q3, density, &ode::Options::default())
}

pub fn closed_curve_with(
    c: &Modulus,
    q1: Q,
    q2: Option<Q>,
    q3: Q,
    density: usize,
    base: &ode::Options,
) -> Result<ClosedCurve> {
    if density < 16 {
        return Err(Error::Domain(format!("density {density} is too small")));
    }
    let eps = {
        // the polarization only needs the profile start
        let p = twist_profile(c, CurveClass::BPrime(1), Span::Periods(1))?;
        let l = p.momentum.real().unwrap();
        reconstruction::polarization(p.at(0.0).tau, l[2])?
    };
    let q2 = match q2 {
        Some(q2) => q2,
        None => q2_from_modulus(c, q1, q3),
    };
    let numbers = discrete_invariants_with(q1, q2, q3, eps)?;
    let n = numbers.n as usize;
    let ng = numbers.wave_number as usize;
    let span = Span::Periods(n as u32);
    let profile = twist_profile_with(c, CurveClass::BPrime(1), span, None, &scaled_options(base, span))?;
    let period = 2.0 * profile.omega;

    let turn_samples = sample(&profile, n as f64 * period, n * density);
    let curve_samples = sample(&profile, ng as f64 * period, ng * density);
    let standard = reconstruction::standard_configuration(&profile, &curve_samples)?;

    let rho = standard.rho;
    let l = standard.lambdas;
    let z3: Vec<C64> = turn_samples
        .iter()
        .map(|x| reconstruction::z_functions(&rho, &l, x)[2])
        .collect();
    let turning = winding_degree(&z3, true)?;
    let ratio: Vec<C64> = standard
        .samples
        .iter()
        .map(|x| x.point[1] / x.point[0])
        .collect();
    let trace = winding_degree(&ratio, true)?;
    let poly: Vec<[f64; 3]> = standard
        .samples
        .iter()
        .map(|x| {
            let p = CVec3::new(x.point[0], x.point[1], x.point[2]);
            crate::geometry::heisenberg_project(&p)
        })
        .collect::<Result<_>>()?;
    let linking = trace_linking(&poly)?;
    let first = &standard.samples[0].point;
    let last = &standard.samples[standard.samples.len() - 1].point;
    let closure_distance = linalg::projective_distance(
        &CVec3::new(last[0], last[1], last[2]),
        &CVec3::new(first[0], first[1], first[2]),
    );
    let matches = |b: &BranchValues| b.turning == turning.degree && b.trace == trace.degree;
    let matching_branch = if matches(&numbers.positive) {
        Some(1)
    } else if matches(&numbers.negative) {
        Some(-1)
    } else {
        None
    };
    Ok(ClosedCurve {
        profile,
        numbers,
        standard,
        direct: DirectInvariants {
            turning,
            trace,
            linking,
            closure_distance,
            matching_branch,
        },
    })
}

fn sample(
    profile: &TwistProfile,
    end: f64,
    n: usize,
) -> Vec<crate::dynamics::TwistSample> {
    let end = end.min(profile.s_end());
    (0..=n)
        .map(|k| profile.at(if k == n { end } else { end * k as f64 / n as f64 }))
        .collect()
}
