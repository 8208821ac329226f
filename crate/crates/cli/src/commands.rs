use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;

use crtwist::closure::{self, Branch, Rect, SearchConfig, SearchResult};
use crtwist::dynamics::{self, Span, TwistSample};
use crtwist::export::{self, SCHEMA_VERSION};
use crtwist::geometry::{self, ProjectedCurve};
use crtwist::invariants::{self, BranchValues, DirectInvariants, QuantumNumbers, Q};
use crtwist::linalg::{self, CVec3, C64};
use crtwist::moduli::{self, CurveClass, Generality, MomentumSpectrum, Modulus, QuinticSpectrum};
use crtwist::reconstruction;

use crate::config::RunConfig;
use crate::{BranchArg, Command, Format, ModulusArgs, TargetArgs};

const NOT_FOUND: u8 = 2;

pub fn dispatch(cmd: Command, cfg: &RunConfig, out_given: bool) -> Result<ExitCode> {
    match cmd {
        Command::Classify(m) => classify(m, cfg, out_given),
        Command::Twist {
            modulus,
            class,
            periods,
            until,
            tau0,
            dtau0,
            samples,
        } => twist(
            modulus,
            class.as_deref(),
            periods,
            until,
            tau0.zip(dtau0),
            samples,
            cfg,
            out_given,
        ),
        Command::Curve {
            q1,
            q3,
            c1,
            c2,
            rect,
            branch,
            density,
        } => {
            let target = match (q1, q3, c1, c2) {
                (Some(q1), Some(q3), None, None) => CurveInput::Target(TargetArgs {
                    q1,
                    q3,
                    rect,
                    branch,
                }),
                (None, None, Some(c1), Some(c2)) => CurveInput::Modulus(Modulus::new(c1, c2)),
                _ => bail!("curve needs either --q1/--q3 or --c1/--c2"),
            };
            curve(target, density.unwrap_or(cfg.density), cfg)
        }
        Command::Search(t) => search(&t, cfg, out_given),
        Command::Pmap {
            branch,
            nt,
            ns,
            rect,
        } => pmap(branch, nt, ns, rect.as_deref(), cfg, out_given),
        Command::Invariants { q1, q3, q2, eps } => {
            invariants_cmd(&q1, &q3, q2.as_deref(), eps, cfg, out_given)
        }
        Command::Export {
            modulus,
            class,
            periods,
            until,
            dual,
            format,
            density,
        } => export_cmd(
            modulus,
            class.as_deref(),
            periods,
            until,
            dual,
            format,
            density.unwrap_or(cfg.density),
            cfg,
        ),
    }
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let q = if s.contains('/') {
        s.parse::<Q>().map_err(|e| e.to_string())
    } else {
        s.parse::<i64>().map(Q::from_integer).map_err(|e| e.to_string())
    };
    q.map_err(|e| anyhow!("cannot parse rational {s:?}: {e}"))
}

pub fn fmt_q(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn q_value(q: &Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

pub fn parse_rect(s: &str) -> Result<Rect> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("cannot parse rectangle {s:?}"))?;
    if v.len() != 4 {
        bail!("rectangle needs four values t0,t1,s0,s1, got {}", v.len());
    }
    Ok(Rect::new(v[0], v[1], v[2], v[3]))
}

fn emit<T: Serialize>(report: &T, cfg: &RunConfig, out_given: bool, name: &str) -> Result<()> {
    let text = export::to_json(report)?;
    if out_given {
        export::write_file(&cfg.out.join(name), &text)?;
    }
    print!("{text}");
    Ok(())
}

#[derive(Serialize)]
struct ClassificationOut {
    phase: moduli::Phase,
    orbit: moduli::OrbitType,
    region: &'static str,
    curve_classes: Vec<String>,
    on_boundary: bool,
    separatrix_distance: f64,
}

#[derive(Serialize)]
struct ClassifyReport {
    schema_version: u32,
    command: &'static str,
    modulus: Modulus,
    classification: ClassificationOut,
    roots: QuinticSpectrum,
    momentum: MomentumSpectrum,
    generality: Generality,
}

fn classification_out(c: &Modulus) -> Result<ClassificationOut> {
    let k = moduli::classify(c)?;
    Ok(ClassificationOut {
        phase: k.phase,
        orbit: k.orbit,
        region: k.region.label(),
        curve_classes: k.curve_classes.iter().map(|x| x.to_string()).collect(),
        on_boundary: k.on_boundary,
        separatrix_distance: k.separatrix_distance,
    })
}

fn classify(m: ModulusArgs, cfg: &RunConfig, out_given: bool) -> Result<ExitCode> {
    let c = Modulus::new(m.c1, m.c2);
    let report = ClassifyReport {
        schema_version: SCHEMA_VERSION,
        command: "classify",
        modulus: c,
        classification: classification_out(&c)?,
        roots: moduli::quintic_roots(&c)?,
        momentum: moduli::momentum_eigenvalues(&c)?,
        generality: moduli::is_general(&c),
    };
    emit(&report, cfg, out_given, "classify.json")?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TwistReport {
    schema_version: u32,
    command: &'static str,
    modulus: Modulus,
    class: String,
    omega: f64,
    initial: [f64; 2],
    truncated: bool,
    termination: String,
    s_end: f64,
    conservation_residual: f64,
    bending_residual: f64,
    samples: Vec<TwistSample>,
}

fn span_of(periods: Option<u32>, until: Option<f64>, class: CurveClass) -> Result<Span> {
    Ok(match (periods, until) {
        (Some(_), Some(_)) => bail!("give at most one of --periods and --until"),
        (Some(n), None) => Span::Periods(n),
        (None, Some(s)) => Span::Until(s),
        (None, None) if matches!(class, CurveClass::BPrime(_)) => Span::Periods(1),
        (None, None) => bail!("--until is required for the non-periodic class {class}"),
    })
}

fn class_of(c: &Modulus, class: Option<&str>) -> Result<CurveClass> {
    Ok(match class {
        Some(s) => s.parse()?,
        None => dynamics::default_class(c)?,
    })
}

#[allow(clippy::too_many_arguments)]
fn twist(
    m: ModulusArgs,
    class: Option<&str>,
    periods: Option<u32>,
    until: Option<f64>,
    initial: Option<(f64, f64)>,
    samples: usize,
    cfg: &RunConfig,
    out_given: bool,
) -> Result<ExitCode> {
    let c = Modulus::new(m.c1, m.c2);
    let class = class_of(&c, class)?;
    let span = span_of(periods, until, class)?;
    let opts = dynamics::scaled_options(&cfg.ode_options(), span);
    let p = dynamics::twist_profile_with(&c, class, span, initial, &opts)?;
    let report = TwistReport {
        schema_version: SCHEMA_VERSION,
        command: "twist",
        modulus: c,
        class: class.to_string(),
        omega: p.omega,
        initial: [p.initial.0, p.initial.1],
        truncated: p.truncated,
        termination: format!("{:?}", p.termination),
        s_end: p.s_end(),
        conservation_residual: p.conservation_residual(),
        bending_residual: p.bending_residual(),
        samples: p.resample(samples.max(1)),
    };
    emit(&report, cfg, out_given, "twist.json")?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize, Clone, Copy)]
struct Suggestion {
    branch: Branch,
    rect: Rect,
    grid_delta: f64,
}

/// Branch and rectangle for a target, pre-screening on a grid when no
/// rectangle is given.
fn locate(q: (f64, f64), t: &TargetArgs, cfg: &RunConfig) -> Result<(Branch, Rect, Option<f64>)> {
    if let Some(r) = &t.rect {
        let rect = parse_rect(r)?;
        let branch = match t.branch {
            Some(b) => b.into(),
            None if rect.t1 < closure::contact_parameter() => Branch::Minus,
            None => Branch::Plus,
        };
        return Ok((branch, rect, None));
    }
    let branches: Vec<Branch> = match t.branch {
        Some(b) => vec![b.into()],
        None => vec![Branch::Minus, Branch::Plus],
    };
    let best = branches
        .into_iter()
        .filter_map(|b| closure::prescreen(b, q, cfg.de.grid).map(|(r, d)| (b, r, d)))
        .fold(None, |acc: Option<(Branch, Rect, f64)>, x| match acc {
            Some(a) if a.2 <= x.2 => Some(a),
            _ => Some(x),
        })
        .ok_or_else(|| anyhow!("the pre-screening grid has no valid samples"))?;
    Ok((best.0, best.1, Some(best.2)))
}

fn search_config(branch: Branch, rect: Rect, cfg: &RunConfig) -> Result<SearchConfig> {
    let mut s = SearchConfig::new(branch, rect, cfg.require_seed()?);
    s.population = cfg.de.population;
    s.mutation = cfg.de.mutation;
    s.crossover = cfg.de.crossover;
    s.max_generations = cfg.de.max_generations;
    s.tol = cfg.de.tol;
    s.polish = cfg.de.polish;
    Ok(s)
}

#[derive(Serialize)]
struct SearchReport {
    schema_version: u32,
    command: &'static str,
    seed: u64,
    target: [String; 2],
    branch: Branch,
    rect: Rect,
    grid_delta: Option<f64>,
    result: SearchResult,
}

fn run_search(t: &TargetArgs, cfg: &RunConfig) -> Result<(Q, Q, SearchReport)> {
    let seed = cfg.require_seed()?;
    let q1 = parse_q(&t.q1)?;
    let q3 = parse_q(&t.q3)?;
    let q = (q_value(&q1), q_value(&q3));
    let (branch, rect, grid_delta) = locate(q, t, cfg)?;
    let scfg = search_config(branch, rect, cfg)?;
    let result = closure::search_modulus(q.0, q.1, &scfg)?;
    Ok((
        q1,
        q3,
        SearchReport {
            schema_version: SCHEMA_VERSION,
            command: "search",
            seed,
            target: [fmt_q(&q1), fmt_q(&q3)],
            branch,
            rect,
            grid_delta,
            result,
        },
    ))
}

fn search(t: &TargetArgs, cfg: &RunConfig, out_given: bool) -> Result<ExitCode> {
    let (_, _, report) = run_search(t, cfg)?;
    emit(&report, cfg, out_given, "search.json")?;
    if report.result.found {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "error: no modulus found (best delta {:.3e} > {:.1e})",
            report.result.delta, cfg.de.tol
        );
        Ok(ExitCode::from(NOT_FOUND))
    }
}

fn pmap(
    branch: BranchArg,
    nt: usize,
    ns: usize,
    rect: Option<&str>,
    cfg: &RunConfig,
    out_given: bool,
) -> Result<ExitCode> {
    if nt == 0 || ns == 0 {
        bail!("grid sizes must be positive");
    }
    let branch: Branch = branch.into();
    let rect = match rect {
        Some(r) => parse_rect(r)?,
        None => Rect::full(branch),
    };
    let grid = closure::pmap_grid(branch, &rect, nt, ns);
    let rows: Vec<Vec<f64>> = grid
        .iter()
        .map(|x| {
            vec![
                x.t,
                x.s,
                x.modulus.c1,
                x.modulus.c2,
                x.p[0],
                x.p[2],
                x.delta1,
                x.delta2,
            ]
        })
        .collect();
    let comment = format!(
        "crtwist pmap schema_version={SCHEMA_VERSION} branch={branch:?} nt={nt} ns={ns} seed={}",
        cfg.seed.map_or("none".to_string(), |s| s.to_string())
    );
    let text = export::table_string(
        &["t", "s", "c1", "c2", "P1", "P3", "delta1", "delta2"],
        &rows,
        Some(&comment),
    );
    if out_given {
        let path = cfg.out.join("pmap.csv");
        export::write_file(&path, &text)?;
        eprintln!("wrote {} rows to {}", rows.len(), path.display());
    } else {
        print!("{text}");
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct NumbersOut {
    q1: String,
    q2: String,
    q3: String,
    n: i64,
    s1: i64,
    s3: i64,
}

#[derive(Serialize)]
struct InvariantsOut {
    spin: String,
    wave_number: i64,
    turning: i64,
    trace: i64,
}

#[derive(Serialize)]
struct Formulas {
    epsilon: i8,
    positive: BranchValues,
    negative: BranchValues,
}

fn numbers_out(x: &QuantumNumbers) -> (NumbersOut, InvariantsOut, Formulas) {
    (
        NumbersOut {
            q1: fmt_q(&x.q1),
            q2: fmt_q(&x.q2),
            q3: fmt_q(&x.q3),
            n: x.n,
            s1: x.s1,
            s3: x.s3,
        },
        InvariantsOut {
            spin: x.spin.to_string(),
            wave_number: x.wave_number,
            turning: x.turning,
            trace: x.trace,
        },
        Formulas {
            epsilon: x.epsilon,
            positive: x.positive,
            negative: x.negative,
        },
    )
}

#[derive(Serialize)]
struct InvariantsReport {
    schema_version: u32,
    command: &'static str,
    quantum_numbers: NumbersOut,
    invariants: InvariantsOut,
    formulas: Formulas,
}

fn invariants_cmd(
    q1: &str,
    q3: &str,
    q2: Option<&str>,
    eps: i8,
    cfg: &RunConfig,
    out_given: bool,
) -> Result<ExitCode> {
    let (q1, q3) = (parse_q(q1)?, parse_q(q3)?);
    let x = match q2 {
        Some(q2) => invariants::discrete_invariants_with(q1, parse_q(q2)?, q3, eps)?,
        None => invariants::discrete_invariants(q1, q3, eps)?,
    };
    let (quantum_numbers, invariants, formulas) = numbers_out(&x);
    let report = InvariantsReport {
        schema_version: SCHEMA_VERSION,
        command: "invariants",
        quantum_numbers,
        invariants,
        formulas,
    };
    emit(&report, cfg, out_given, "invariants.json")?;
    Ok(ExitCode::SUCCESS)
}

enum CurveInput {
    Target(TargetArgs),
    Modulus(Modulus),
}

#[derive(Serialize)]
struct Samples {
    stride: usize,
    s: Vec<f64>,
    points: Vec<[f64; 3]>,
    homogeneous: Vec<[C64; 3]>,
}

fn strided_samples(curve: &ProjectedCurve, hom: &[CVec3], stride: usize) -> Samples {
    let idx: Vec<usize> = (0..curve.len()).step_by(stride).collect();
    Samples {
        stride,
        s: idx.iter().map(|&k| curve.s[k]).collect(),
        points: idx.iter().map(|&k| curve.points[k]).collect(),
        homogeneous: idx
            .iter()
            .map(|&k| {
                let z = geometry::normalize(&hom[k]);
                [z[0], z[1], z[2]]
            })
            .collect(),
    }
}

#[derive(Serialize)]
struct StandardOut {
    rho: [f64; 3],
    lambdas: [f64; 3],
    momentum_residual: f64,
    axis_margin: f64,
    max_null_residual: f64,
}

#[derive(Serialize)]
struct Files {
    csv: String,
    obj: String,
    json: String,
}

#[derive(Serialize)]
struct CurveReport {
    schema_version: u32,
    command: &'static str,
    seed: Option<u64>,
    modulus: Modulus,
    search: Option<SearchReport>,
    classification: ClassificationOut,
    roots: QuinticSpectrum,
    momentum: MomentumSpectrum,
    generality: Generality,
    omega: f64,
    closing_integrals: [f64; 3],
    polarization: i8,
    quantum_numbers: NumbersOut,
    invariants: InvariantsOut,
    formulas: Formulas,
    direct: DirectInvariants,
    standard: StandardOut,
    files: Files,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<Samples>,
}

#[derive(Serialize)]
struct NotFoundReport {
    schema_version: u32,
    command: &'static str,
    found: bool,
    search: SearchReport,
    suggestion: Option<Suggestion>,
    message: String,
}

fn rationalize_or_fail(x: f64, name: &str, cfg: &RunConfig) -> Result<Q> {
    closure::rationalize(x, cfg.max_denominator, cfg.rational_tol).ok_or_else(|| {
        anyhow!(
            "{name} = {x} is not within {:.1e} of a fraction with denominator <= {}; the curve does not close",
            cfg.rational_tol,
            cfg.max_denominator
        )
    })
}

fn curve(input: CurveInput, density: usize, cfg: &RunConfig) -> Result<ExitCode> {
    if density < 16 {
        bail!("density must be at least 16");
    }
    let (c, q1, q3, search) = match input {
        CurveInput::Target(t) => {
            let (q1, q3, report) = run_search(&t, cfg)?;
            if !report.result.found {
                let q = (q_value(&q1), q_value(&q3));
                let suggestion = [Branch::Minus, Branch::Plus]
                    .into_iter()
                    .filter_map(|b| {
                        closure::prescreen(b, q, cfg.de.grid).map(|(rect, d)| Suggestion {
                            branch: b,
                            rect,
                            grid_delta: d,
                        })
                    })
                    .min_by(|a, b| a.grid_delta.total_cmp(&b.grid_delta));
                let message = match &suggestion {
                    Some(s) if s.grid_delta > 10.0 * cfg.de.tol.max(1e-3) => format!(
                        "no modulus found; the nearest grid value of (P1, P3) is {:.3e} away, so the target appears to lie outside the image of the closing-integral map",
                        s.grid_delta
                    ),
                    Some(s) => format!(
                        "no modulus found; retry with --branch {} --rect {},{},{},{}",
                        match s.branch {
                            Branch::Minus => "minus",
                            Branch::Plus => "plus",
                        },
                        s.rect.t0,
                        s.rect.t1,
                        s.rect.s0,
                        s.rect.s1
                    ),
                    None => "no modulus found and the grid has no valid samples".into(),
                };
                let nf = NotFoundReport {
                    schema_version: SCHEMA_VERSION,
                    command: "curve",
                    found: false,
                    search: report,
                    suggestion,
                    message: message.clone(),
                };
                print!("{}", export::to_json(&nf)?);
                eprintln!("error: {message}");
                return Ok(ExitCode::from(NOT_FOUND));
            }
            (report.result.modulus, q1, q3, Some(report))
        }
        CurveInput::Modulus(c) => {
            let p = closure::closing_integrals(&c)?;
            let q1 = rationalize_or_fail(p[0], "P1", cfg)?;
            let q3 = rationalize_or_fail(p[2], "P3", cfg)?;
            (c, q1, q3, None)
        }
    };

    let cc = invariants::closed_curve_with(&c, q1, None, q3, density, &cfg.ode_options())?;
    let hom: Vec<CVec3> = cc
        .standard
        .samples
        .iter()
        .map(|x| CVec3::new(x.point[0], x.point[1], x.point[2]))
        .collect();
    let s: Vec<f64> = cc.standard.samples.iter().map(|x| x.s).collect();
    let projected = geometry::project_curve(&s, &hom, true)?;
    let max_null_residual = hom.iter().map(geometry::null_residual).fold(0.0, f64::max);

    let (quantum_numbers, invs, formulas) = numbers_out(&cc.numbers);
    let comment = format!(
        "crtwist curve schema_version={SCHEMA_VERSION} seed={} c1={} c2={} q1={} q3={}",
        cfg.seed.map_or("none".to_string(), |s| s.to_string()),
        export::real(c.c1),
        export::real(c.c2),
        fmt_q(&q1),
        fmt_q(&q3)
    );
    let dir = &cfg.out;
    let files = Files {
        csv: "curve.csv".into(),
        obj: "curve.obj".into(),
        json: "curve.json".into(),
    };
    export::write_csv(&dir.join(&files.csv), &projected, Some(&comment))?;
    export::write_obj(&dir.join(&files.obj), &projected, Some(&comment))?;

    let mut report = CurveReport {
        schema_version: SCHEMA_VERSION,
        command: "curve",
        seed: cfg.seed,
        modulus: c,
        search,
        classification: classification_out(&c)?,
        roots: cc.profile.roots.clone(),
        momentum: cc.profile.momentum,
        generality: moduli::is_general(&c),
        omega: cc.profile.omega,
        closing_integrals: closure::closing_integrals(&c)?,
        polarization: cc.standard.epsilon,
        quantum_numbers,
        invariants: invs,
        formulas,
        direct: cc.direct.clone(),
        standard: StandardOut {
            rho: cc.standard.rho,
            lambdas: cc.standard.lambdas,
            momentum_residual: cc.standard.momentum_residual,
            axis_margin: projected.axis_margin,
            max_null_residual,
        },
        files,
        samples: Some(strided_samples(&projected, &hom, cfg.json_stride)),
    };
    export::write_json(&dir.join(&report.files.json), &report)?;
    report.samples = None;
    print!("{}", export::to_json(&report)?);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ExportReport {
    schema_version: u32,
    command: &'static str,
    modulus: Modulus,
    class: String,
    dual: bool,
    standard_configuration: bool,
    omega: f64,
    axis_margin: f64,
    /// `-i <F3, F3'>` along the dual curve.
    min_tangency: Option<f64>,
    files: Vec<String>,
    samples: Samples,
}

#[allow(clippy::too_many_arguments)]
fn export_cmd(
    m: ModulusArgs,
    class: Option<&str>,
    periods: Option<u32>,
    until: Option<f64>,
    dual: bool,
    format: Format,
    density: usize,
    cfg: &RunConfig,
) -> Result<ExitCode> {
    if density < 16 {
        bail!("density must be at least 16");
    }
    let c = Modulus::new(m.c1, m.c2);
    let class = class_of(&c, class)?;
    let span = span_of(periods, until, class)?;
    let opts = dynamics::scaled_options(&cfg.ode_options(), span);
    let profile = dynamics::twist_profile_with(&c, class, span, None, &opts)?;
    let (a, b) = (0.0, profile.s_end());
    let per = match span {
        Span::Periods(n) => n.max(1) as usize,
        Span::Until(_) => ((b - a).abs() / (2.0 * profile.omega)).ceil().max(1.0) as usize,
    };
    let n = per * density;
    let svals: Vec<f64> = (0..=n).map(|k| a + (b - a) * k as f64 / n as f64).collect();
    let standard = !dual && class == CurveClass::BPrime(1);

    let mut min_tangency = None;
    let hom: Vec<CVec3> = if standard {
        let samples: Vec<TwistSample> = svals.iter().map(|&s| profile.at(s)).collect();
        reconstruction::standard_configuration(&profile, &samples)?
            .samples
            .iter()
            .map(|x| CVec3::new(x.point[0], x.point[1], x.point[2]))
            .collect()
    } else if dual {
        // -h lies in the group and moves the pole off the initial dual point
        let f0 = -linalg::h_form();
        let path = dynamics::integrate_frame_with(&profile, &f0, &opts)?;
        let d = geometry::dual_curve(&path, &svals);
        min_tangency = d.iter().map(|x| x.tangency.abs()).reduce(f64::min);
        d.iter().map(|x| CVec3::new(x.point[0], x.point[1], x.point[2])).collect()
    } else {
        let path = dynamics::integrate_frame_with(&profile, &linalg::CMat3::identity(), &opts)?;
        svals.iter().map(|&s| path.frame_at(s).column(0).into()).collect()
    };
    let closed = standard && matches!(span, Span::Periods(_));
    let projected = geometry::project_curve(&svals, &hom, closed)?;

    let comment = format!(
        "crtwist export schema_version={SCHEMA_VERSION} c1={} c2={} class={class} dual={dual}",
        export::real(c.c1),
        export::real(c.c2)
    );
    let stem = if dual { "dual" } else { "export" };
    let mut files = Vec::new();
    if matches!(format, Format::Csv | Format::All) {
        let name = format!("{stem}.csv");
        export::write_csv(&cfg.out.join(&name), &projected, Some(&comment))?;
        files.push(name);
    }
    if matches!(format, Format::Obj | Format::All) {
        let name = format!("{stem}.obj");
        export::write_obj(&cfg.out.join(&name), &projected, Some(&comment))?;
        files.push(name);
    }
    let json_name = format!("{stem}.json");
    if matches!(format, Format::Json | Format::All) {
        files.push(json_name.clone());
    }
    let report = ExportReport {
        schema_version: SCHEMA_VERSION,
        command: "export",
        modulus: c,
        class: class.to_string(),
        dual,
        standard_configuration: standard,
        omega: profile.omega,
        axis_margin: projected.axis_margin,
        min_tangency,
        files,
        samples: strided_samples(&projected, &hom, cfg.json_stride),
    };
    let text = export::to_json(&report)?;
    if matches!(format, Format::Json | Format::All) {
        export::write_file(&cfg.out.join(&json_name), &text)?;
    }
    let mut summary = serde_json::to_value(&report)?;
    if let Some(o) = summary.as_object_mut() {
        o.remove("samples");
    }
    print!("{}", export::to_json(&summary)?);
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_and_rects() {
        assert_eq!(parse_q("-2/15").unwrap(), Q::new(-2, 15));
        assert_eq!(parse_q("0/1").unwrap(), Q::from_integer(0));
        assert_eq!(parse_q("3").unwrap(), Q::from_integer(3));
        assert!(parse_q("x").is_err());
        assert_eq!(fmt_q(&Q::new(4, -6)), "-2/3");
        let r = parse_rect("1.83,1.86,0.65,0.75").unwrap();
        assert_eq!((r.t0, r.s1), (1.83, 0.75));
        assert!(parse_rect("1,2,3").is_err());
    }
}
