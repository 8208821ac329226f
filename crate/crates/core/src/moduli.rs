//! The modulus plane: the quintic `P_c`, the cubic `Q_c`, their roots, the
//! separatrix curve and the classification of moduli.

use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Relative separation below which two roots are considered equal.
pub const MERGE_TOL: f64 = 1e-7;
/// Geometric tolerance for the separatrix and the axis `c1 = 0`.
pub const BOUNDARY_TOL: f64 = 1e-6;
/// Relative band around zero for the discriminants.
pub const DISCRIMINANT_TOL: f64 = 1e-10;
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Modulus {
    pub c1: f64,
    pub c2: f64,
}

impl Modulus {
    pub fn new(c1: f64, c2: f64) -> Self {
        Modulus { c1, c2 }
    }

    /// Descending coefficients of `x^5 + 3/2 c2 x^2 + 27 c1 x - 27/2 c1^2`.
    pub fn quintic_coeffs(&self) -> [f64; 6] {
        [
            1.0,
            0.0,
            0.0,
            1.5 * self.c2,
            27.0 * self.c1,
            -13.5 * self.c1 * self.c1,
        ]
    }

    /// Descending coefficients of `x^3 + 6 c1 x + 27 + 3 c2`.
    pub fn cubic_coeffs(&self) -> [f64; 4] {
        [1.0, 0.0, 6.0 * self.c1, 27.0 + 3.0 * self.c2]
    }

    pub fn quintic(&self, x: f64) -> f64 {
        poly::eval(&self.quintic_coeffs(), x)
    }

    pub fn cubic(&self, x: f64) -> f64 {
        poly::eval(&self.cubic_coeffs(), x)
    }

    pub fn delta1(&self) -> f64 {
        let (c1, c2) = (self.c1, self.c2);
        -27.0 * (32.0 * c1.powi(3) + 9.0 * (9.0 + c2).powi(2))
    }

    fn delta1_scale(&self) -> f64 {
        let (c1, c2) = (self.c1, self.c2);
        27.0 * (32.0 * c1.abs().powi(3) + 9.0 * (9.0 + c2).powi(2))
    }

    pub fn delta2(&self) -> f64 {
        let (c1, c2) = (self.c1, self.c2);
        let c13 = c1.powi(3);
        9.0 * c13 * (c13 + 216.0) + 6.0 * c13 * c2 * (c2 + 36.0) + (c2 + 9.0) * (c2 + 18.0).powi(3)
    }

    fn delta2_scale(&self) -> f64 {
        let (c1, c2) = (self.c1, self.c2);
        let c13 = c1.abs().powi(3);
        9.0 * c13 * (c13 + 216.0)
            + 6.0 * c13 * c2.abs() * (c2.abs() + 36.0)
            + (c2 + 9.0).abs() * (c2 + 18.0).abs().powi(3)
    }

    pub fn is_finite(&self) -> bool {
        self.c1.is_finite() && self.c2.is_finite()
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.c1, self.c2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPair {
    pub re: f64,
    /// Positive imaginary part; the pair is `re ± i im`.
    pub im: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuinticSpectrum {
    /// Ascending.
    pub real_roots: Vec<RealRoot>,
    pub complex_pairs: Vec<ComplexPair>,
}

impl QuinticSpectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.real_roots.iter().map(|r| r.multiplicity).sum::<usize>()
            + 2 * self.complex_pairs.iter().map(|p| p.multiplicity).sum::<usize>()
    }

    pub fn has_multiple_root(&self) -> bool {
        self.real_roots.iter().any(|r| r.multiplicity > 1)
            || self.complex_pairs.iter().any(|p| p.multiplicity > 1)
    }

    /// Real roots listed with repetition.
    pub fn real_values(&self) -> Vec<f64> {
        self.real_roots
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
            .collect()
    }

    /// All five roots, complex pairs included, with repetition.
    pub fn all_roots(&self) -> Vec<Complex64> {
        let mut v: Vec<Complex64> = self
            .real_values()
            .into_iter()
            .map(|x| Complex64::new(x, 0.0))
            .collect();
        for p in &self.complex_pairs {
            for _ in 0..p.multiplicity {
                v.push(Complex64::new(p.re, p.im));
                v.push(Complex64::new(p.re, -p.im));
            }
        }
        v
    }

    /// The three simple real roots `e1 < e2 < e3` of a phase-B modulus.
    pub fn phase_b_roots(&self) -> Option<[f64; 3]> {
        if self.real_roots.len() == 3 && self.real_roots.iter().all(|r| r.multiplicity == 1) {
            Some([
                self.real_roots[0].value,
                self.real_roots[1].value,
                self.real_roots[2].value,
            ])
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitType {
    OT1,
    OT2,
    OT3,
}

impl OrbitType {
    pub fn index(self) -> u8 {
        match self {
            OrbitType::OT1 => 1,
            OrbitType::OT2 => 2,
            OrbitType::OT3 => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumSpectrum {
    pub kind: OrbitType,
    pub eigenvalues: [Complex64; 3],
}

impl MomentumSpectrum {
    pub fn real(&self) -> Option<[f64; 3]> {
        if self.kind == OrbitType::OT2 {
            None
        } else {
            Some([
                self.eigenvalues[0].re,
                self.eigenvalues[1].re,
                self.eigenvalues[2].re,
            ])
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Phase {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    /// Upper domain, `c1 < 0`.
    UpperPrime,
    /// Upper domain, `c1 > 0`, `c2 > 0`.
    UpperDoublePrime,
    /// Upper domain, `c1 > 0`, `c2 < 0`.
    UpperTriplePrime,
    /// Lower domain, `c1 < 0`.
    LowerPrime,
    /// Lower domain, `c1 > 0`.
    LowerDoublePrime,
    Separatrix,
    Axis,
}

impl Region {
    pub fn label(self) -> &'static str {
        match self {
            Region::UpperPrime => "M'+",
            Region::UpperDoublePrime => "M''+",
            Region::UpperTriplePrime => "M'''+",
            Region::LowerPrime => "M'-",
            Region::LowerDoublePrime => "M''-",
            Region::Separatrix => "Xi",
            Region::Axis => "Oy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CurveClass {
    A(u8),
    BPrime(u8),
    BDoublePrime(u8),
    C(u8),
}

impl CurveClass {
    pub fn orbit_index(self) -> u8 {
        match self {
            CurveClass::A(j) | CurveClass::BPrime(j) | CurveClass::BDoublePrime(j) | CurveClass::C(j) => j,
        }
    }

    pub fn is_periodic(self) -> bool {
        matches!(self, CurveClass::BPrime(_))
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveClass::A(j) => write!(f, "A{j}"),
            CurveClass::BPrime(j) => write!(f, "B'{j}"),
            CurveClass::BDoublePrime(j) => write!(f, "B''{j}"),
            CurveClass::C(j) => write!(f, "C{j}"),
        }
    }
}

impl std::str::FromStr for CurveClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, j) = s.split_at(s.len().saturating_sub(1));
        let j: u8 = j
            .parse()
            .ok()
            .filter(|j| (1..=3).contains(j))
            .ok_or_else(|| Error::Domain(format!("unknown curve class {s:?}")))?;
        match head {
            "A" => Ok(CurveClass::A(j)),
            "B'" => Ok(CurveClass::BPrime(j)),
            "B''" => Ok(CurveClass::BDoublePrime(j)),
            "C" => Ok(CurveClass::C(j)),
            _ => Err(Error::Domain(format!("unknown curve class {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub phase: Phase,
    pub orbit: OrbitType,
    pub region: Region,
    pub curve_classes: Vec<CurveClass>,
    /// Set when the modulus lies within the tolerance band of a boundary
    /// (separatrix, axis or `Delta1 = 0`).
    pub on_boundary: bool,
    pub separatrix_distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Generality {
    pub general: bool,
    pub delta1: f64,
    pub delta2: f64,
    /// `|Delta_i|` divided by the size of its terms.
    pub margin1: f64,
    pub margin2: f64,
}

pub fn quintic_roots(c: &Modulus) -> Result<QuinticSpectrum> {
    if !c.is_finite() {
        return Err(Error::Domain(format!("non-finite modulus {c}")));
    }
    let coeffs = c.quintic_coeffs();
    let raw = poly::real_poly_roots(&coeffs)?;
    let clusters = poly::cluster(&raw, MERGE_TOL);

    let mut real_roots = Vec::new();
    let mut complex_pairs = Vec::new();
    let mut lower_half = 0usize;
    for (z, m) in clusters {
        if z.im.abs() <= 0.5 * MERGE_TOL * (1.0 + z.re.abs()) {
            let value = if m == 1 {
                poly::polish_real_root(&coeffs, z.re)
            } else {
                z.re
            };
            real_roots.push(RealRoot {
                value,
                multiplicity: m,
            });
        } else if z.im > 0.0 {
            complex_pairs.push(ComplexPair {
                re: z.re,
                im: z.im,
                multiplicity: m,
            });
        } else {
            lower_half += m;
        }
    }
    let upper: usize = complex_pairs.iter().map(|p| p.multiplicity).sum();
    if upper != lower_half {
        return Err(Error::RootsNotConverged {
            iterations: 0,
            max_residual: f64::NAN,
        });
    }
    real_roots.sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap());
    complex_pairs.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());

    let spectrum = QuinticSpectrum {
        real_roots,
        complex_pairs,
    };
    let max_residual = spectrum
        .all_roots()
        .iter()
        .map(|&z| {
            let cz: Vec<Complex64> = coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect();
            let scale = coeffs
                .iter()
                .fold(0.0, |acc, a| acc * z.norm() + a.abs())
                .max(1.0);
            poly::eval_complex(&cz, z).norm() / scale
        })
        .fold(0.0, f64::max);
    if max_residual > ROOT_RESIDUAL_TOL {
        return Err(Error::RootsNotConverged {
            iterations: 0,
            max_residual,
        });
    }
    Ok(spectrum)
}

pub fn momentum_eigenvalues(c: &Modulus) -> Result<MomentumSpectrum> {
    if !c.is_finite() {
        return Err(Error::Domain(format!("non-finite modulus {c}")));
    }
    let d1 = c.delta1();
    let scale = c.delta1_scale();
    let mut r = poly::real_poly_roots(&c.cubic_coeffs())?;
    let kind = if d1.abs() <= DISCRIMINANT_TOL * scale {
        OrbitType::OT3
    } else if d1 > 0.0 {
        OrbitType::OT1
    } else {
        OrbitType::OT2
    };
    let eigenvalues = match kind {
        OrbitType::OT1 | OrbitType::OT3 => {
            let mut v: Vec<f64> = r.iter().map(|z| z.re).collect();
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            if kind == OrbitType::OT1 {
                let coeffs = c.cubic_coeffs();
                for x in v.iter_mut() {
                    *x = poly::polish_real_root(&coeffs, *x);
                }
                v[0] = -(v[1] + v[2]);
            }
            [
                Complex64::new(v[0], 0.0),
                Complex64::new(v[1], 0.0),
                Complex64::new(v[2], 0.0),
            ]
        }
        OrbitType::OT2 => {
            r.sort_by(|a, b| a.im.abs().partial_cmp(&b.im.abs()).unwrap());
            let l1 = poly::polish_real_root(&c.cubic_coeffs(), r[0].re);
            let mut l2 = if r[1].im > 0.0 { r[1] } else { r[2] };
            // enforce the trace and conjugate symmetry exactly
            l2.re = -0.5 * l1;
            [Complex64::new(l1, 0.0), l2, l2.conj()]
        }
    };
    Ok(MomentumSpectrum { kind, eigenvalues })
}

/// `n*`, the real root of `3 + 6n + 4n^2 + 2n^3`.
pub fn n_star() -> f64 {
    static CELL: OnceLock<f64> = OnceLock::new();
    *CELL.get_or_init(|| {
        let coeffs = [2.0, 4.0, 6.0, 3.0];
        let roots = poly::real_poly_roots(&coeffs).expect("cubic converges");
        let r = roots
            .iter()
            .min_by(|a, b| a.im.abs().partial_cmp(&b.im.abs()).unwrap())
            .unwrap();
        poly::polish_real_root(&coeffs, r.re)
    })
}

/// Parameter interval `(arctan n*, arctan n* + pi)` of the separatrix.
pub fn separatrix_interval() -> (f64, f64) {
    let a = n_star().atan();
    (a, a + PI)
}

/// `xi(m, n)` in homogeneous coordinates.
pub fn separatrix_homogeneous(m: f64, n: f64) -> Result<[f64; 2]> {
    let d = 3.0 * m.powi(3) + 6.0 * m * m * n + 4.0 * m * n * n + 2.0 * n.powi(3);
    let scale = m.abs().max(n.abs()).powi(3);
    if d.abs() <= 1e-14 * scale || scale == 0.0 {
        return Err(Error::Domain(format!(
            "separatrix undefined at the excluded direction [({m}, {n})]"
        )));
    }
    let q = 3.0 * m * m + 2.0 * m * n + n * n;
    let xi1 = 6.0 * 2f64.cbrt() * m * n.cbrt().powi(4) * q.cbrt().powi(4) / d.cbrt().powi(5);
    let xi2 = -36.0 * n * q * (4.0 * m.powi(3) + 3.0 * m * m * n + 2.0 * m * n * n + n.powi(3))
        / (d * d);
    Ok([xi1, xi2])
}

/// `xi(cos t, sin t)` for `t` in the separatrix interval.
pub fn separatrix(t: f64) -> Result<[f64; 2]> {
    let (a, b) = separatrix_interval();
    if !(t > a && t < b) {
        return Err(Error::Domain(format!(
            "t = {t} outside the separatrix interval ({a}, {b})"
        )));
    }
    separatrix_homogeneous(t.cos(), t.sin())
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Euclidean distance from `c` to the separatrix, with the minimizing
/// parameter.
pub fn separatrix_distance(c: &Modulus) -> (f64, f64) {
    let (a, b) = separatrix_interval();
    let dist = |t: f64| match separatrix(t) {
        Ok(p) => ((p[0] - c.c1).powi(2) + (p[1] - c.c2).powi(2)).sqrt(),
        Err(_) => f64::INFINITY,
    };
    const N: usize = 4000;
    let step = (b - a) / N as f64;
    let values: Vec<(f64, f64)> = (1..N)
        .map(|k| {
            let t = a + k as f64 * step;
            (t, dist(t))
        })
        .collect();
    let mut best = (f64::NAN, f64::INFINITY);
    for k in 0..values.len() {
        let left = if k == 0 { f64::INFINITY } else { values[k - 1].1 };
        let right = values.get(k + 1).map_or(f64::INFINITY, |v| v.1);
        if values[k].1 <= left && values[k].1 <= right {
            let lo = (values[k].0 - step).max(a + 1e-12);
            let hi = (values[k].0 + step).min(b - 1e-12);
            let (t, d) = golden_min(dist, lo, hi, 1e-13);
            if d < best.1 {
                best = (t, d);
            }
        }
    }
    (best.1, best.0)
}

pub fn is_general(c: &Modulus) -> Generality {
    let delta1 = c.delta1();
    let delta2 = c.delta2();
    let s1 = c.delta1_scale();
    let s2 = c.delta2_scale();
    let margin1 = if s1 > 0.0 { delta1.abs() / s1 } else { 0.0 };
    let margin2 = if s2 > 0.0 { delta2.abs() / s2 } else { 0.0 };
    Generality {
        general: margin1 > DISCRIMINANT_TOL && margin2 > DISCRIMINANT_TOL,
        delta1,
        delta2,
        margin1,
        margin2,
    }
}

pub fn phase_of(spectrum: &QuinticSpectrum) -> Phase {
    if spectrum.has_multiple_root() {
        Phase::C
    } else if spectrum.real_roots.len() == 3 {
        Phase::B
    } else {
        Phase::A
    }
}

pub fn classify(c: &Modulus) -> Result<Classification> {
    let roots = quintic_roots(c)?;
    let momentum = momentum_eigenvalues(c)?;
    let phase = phase_of(&roots);
    let (sep_dist, _) = separatrix_distance(c);
    let on_axis = c.c1.abs() <= BOUNDARY_TOL;
    let on_sep = sep_dist <= BOUNDARY_TOL;
    let gen = is_general(c);

    let region = if on_axis {
        Region::Axis
    } else if on_sep || phase == Phase::C {
        Region::Separatrix
    } else if phase == Phase::B {
        if c.c1 < 0.0 {
            Region::UpperPrime
        } else if c.c2 > 0.0 {
            Region::UpperDoublePrime
        } else {
            Region::UpperTriplePrime
        }
    } else if c.c1 < 0.0 {
        Region::LowerPrime
    } else {
        Region::LowerDoublePrime
    };

    let j = momentum.kind.index();
    let curve_classes = match phase {
        Phase::A => vec![CurveClass::A(j)],
        Phase::B => vec![CurveClass::BPrime(j), CurveClass::BDoublePrime(j)],
        Phase::C => vec![CurveClass::C(j)],
    };
    let near_c2_axis = c.c1 > 0.0 && phase == Phase::B && c.c2.abs() <= BOUNDARY_TOL;
    let on_boundary = on_axis
        || on_sep
        || gen.margin1 <= 1e-8
        || near_c2_axis
        || (phase == Phase::C) != (on_axis || on_sep);

    Ok(Classification {
        phase,
        orbit: momentum.kind,
        region,
        curve_classes,
        on_boundary,
        separatrix_distance: sep_dist,
    })
}

/// The lower boundary `p(t) = (xi1, (4 sqrt(-2 xi1^3) - 27) / 3)` of the
/// parametrized component, lying on `Delta1 = 0`.
pub fn lower_boundary(t: f64) -> Result<[f64; 2]> {
    let xi = separatrix(t)?;
    if xi[0] >= 0.0 {
        return Err(Error::Domain(format!(
            "lower boundary needs xi1 < 0, got {} at t = {t}",
            xi[0]
        )));
    }
    Ok([xi[0], (4.0 * (-2.0 * xi[0].powi(3)).sqrt() - 27.0) / 3.0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_modulus_gives_quintuple_root() {
        let s = quintic_roots(&Modulus::new(0.0, 0.0)).unwrap();
        assert_eq!(s.real_roots.len(), 1);
        assert_eq!(s.real_roots[0].multiplicity, 5);
        assert_eq!(s.real_roots[0].value, 0.0);
    }

    #[test]
    fn axis_modulus_has_double_zero() {
        let s = quintic_roots(&Modulus::new(0.0, 5.0)).unwrap();
        assert!(s.real_roots.iter().any(|r| r.value == 0.0 && r.multiplicity == 2));
        assert_eq!(phase_of(&s), Phase::C);
    }

    #[test]
    fn cubic_orbit_types() {
        let m = momentum_eigenvalues(&Modulus::new(0.0, -9.0)).unwrap();
        assert_eq!(m.kind, OrbitType::OT3);
        assert!(m.eigenvalues.iter().all(|z| z.norm() < 1e-12));
        // Delta1 = 864 > 0
        let c = Modulus::new(-1.0, -9.0);
        assert_eq!(c.delta1(), 864.0);
        assert_eq!(momentum_eigenvalues(&c).unwrap().kind, OrbitType::OT1);
        let m = momentum_eigenvalues(&Modulus::new(1.0, 0.0)).unwrap();
        assert_eq!(m.kind, OrbitType::OT2);
        assert!(m.eigenvalues[1].im > 0.0);
        assert_eq!(m.eigenvalues[2], m.eigenvalues[1].conj());
    }

    #[test]
    fn separatrix_landmarks() {
        let cusp = separatrix(PI / 4.0).unwrap();
        assert!((cusp[0] - 0.8 * 1.2f64.powf(2.0 / 3.0)).abs() < 1e-12);
        assert!((cusp[1] + 9.6).abs() < 1e-12);
        let infl = separatrix(PI / 2.0).unwrap();
        assert!(infl[0].abs() < 1e-12 && (infl[1] + 9.0).abs() < 1e-12);
        let (a, b) = separatrix_interval();
        assert!((a + 0.625418).abs() < 1e-6 && (b - 2.51617).abs() < 1e-5);
        assert!(separatrix(a).is_err());
    }

    #[test]
    fn separatrix_points_are_multiple_roots() {
        for &t in &[0.3, 1.0, 1.9, 2.2] {
            let p = separatrix(t).unwrap();
            let c = Modulus::new(p[0], p[1]);
            let (d, _) = separatrix_distance(&c);
            assert!(d < 1e-9, "t = {t}, d = {d}");
            // a double root means a common root of P and P'
            let s = poly::real_poly_roots(&c.quintic_coeffs()).unwrap();
            let min_gap = s
                .iter()
                .enumerate()
                .flat_map(|(i, a)| s[i + 1..].iter().map(move |b| (a - b).norm()))
                .fold(f64::INFINITY, f64::min);
            assert!(min_gap < 1e-6, "t = {t}, gap = {min_gap}");
        }
    }

    #[test]
    fn lower_boundary_is_on_delta1_zero() {
        for k in 1..20 {
            let t = PI / 2.0 + 0.04 * k as f64;
            let p = lower_boundary(t).unwrap();
            let c = Modulus::new(p[0], p[1]);
            assert!(c.delta1().abs() < 1e-9 * c.delta1_scale().max(1.0), "t = {t}");
        }
    }

    #[test]
    fn generality_examples() {
        assert!(!is_general(&Modulus::new(0.0, -9.0)).general);
        assert!(!is_general(&Modulus::new(0.0, -18.0)).general);
        assert!(is_general(&Modulus::new(-0.8284243304411575, -8.349417691746162)).general);
    }

    #[test]
    fn classes_parse_roundtrip() {
        for c in [
            CurveClass::A(2),
            CurveClass::BPrime(1),
            CurveClass::BDoublePrime(3),
            CurveClass::C(1),
        ] {
            assert_eq!(c.to_string().parse::<CurveClass>().unwrap(), c);
        }
        assert!("D1".parse::<CurveClass>().is_err());
    }
}
