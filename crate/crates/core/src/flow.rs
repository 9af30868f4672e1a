//! Gradient flow `ẋ = −∇V_ε(x)` on the potential landscape, and the
//! experiments built on it: attractor search, collapse times and their
//! `ε⁻²` scaling, basin labels, restricted potentials and retract checks.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::manifolds::{self, central_root_set, sample_stratum, RootStratum};
use crate::poly::{Deformation, Polynomial, RankInfo};
use crate::tolerances;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlowConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_time: f64,
    /// Stop once `‖∇V‖` falls below this.
    pub stop_grad: f64,
    /// Capture radius δ around attractors.
    pub stop_radius: f64,
    /// Accepted plus rejected step budget.
    pub max_steps: usize,
    /// Keep every accepted step in the trajectory (otherwise only the ends).
    pub record: bool,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            max_time: 1e6,
            stop_grad: 1e-12,
            stop_radius: tolerances::CAPTURE_RADIUS,
            max_steps: 5_000_000,
            record: true,
        }
    }
}

impl FlowConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = [self.rel_tol, self.abs_tol, self.max_time, self.stop_grad, self.stop_radius]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0);
        if !ok || self.max_steps == 0 {
            return Err(Error::Domain("flow configuration values must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Terminal {
    /// Captured by attractor `attractor`, or stopped at a critical point
    /// (`None`) by the gradient threshold.
    Converged { attractor: Option<usize> },
    MaxTime,
    Stalled { t: f64, step: f64 },
    Diverged,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub x: Element,
    pub v: f64,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub terminal: Terminal,
    /// First time within δ of an attractor, interpolated inside the step.
    pub capture_time: Option<f64>,
    /// Largest `V` seen after the start; equals `V(x0)` for a monotone flow.
    pub max_v: f64,
    pub accepted: usize,
    pub rejected: usize,
}

impl Trajectory {
    pub fn end(&self) -> &Sample {
        self.samples.last().expect("trajectory has a start sample")
    }

    pub fn start(&self) -> &Sample {
        &self.samples[0]
    }

    /// CSV with header `t,x0..x{d−1},V`.
    pub fn to_csv(&self) -> String {
        let d = self.start().x.dim();
        let mut out = String::from("t");
        for k in 0..d {
            out.push_str(&format!(",x{k}"));
        }
        out.push_str(",V\n");
        for s in &self.samples {
            out.push_str(&format!("{:e}", s.t));
            for c in s.x.coords() {
                out.push_str(&format!(",{c:e}"));
            }
            out.push_str(&format!(",{:e}\n", s.v));
        }
        out
    }
}

// Dormand–Prince 5(4) tableau (autonomous, so the nodes are not needed).
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// Fifth-order weights minus fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const DIVERGENCE_NORM: f64 = 1e8;

fn nearest(x: &Element, attractors: &[Element]) -> Option<(usize, f64)> {
    attractors
        .iter()
        .enumerate()
        .map(|(i, a)| (i, x.distance(a)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

/// Integrates the gradient flow of `V = ‖P‖²` from `x0` with an embedded
/// Runge–Kutta 5(4) pair. Steps that would raise `V` by more than
/// `1e−12·V(x0)` are rejected and retried with half the step.
pub fn integrate(p: &Polynomial, x0: &Element, cfg: &FlowConfig, attractors: &[Element]) -> Trajectory {
    let field = |x: &Element| -p.gradient_potential(x);
    let v0 = p.potential(x0);
    let slack = tolerances::LYAPUNOV_SLACK * v0;
    let mut x = *x0;
    let mut v = v0;
    let mut t = 0.0;
    let mut k1 = field(&x);
    let mut samples = vec![Sample { t, x, v }];
    let mut max_v = v0;
    let (mut accepted, mut rejected) = (0usize, 0usize);

    let finish = |samples: Vec<Sample>, terminal, capture_time, max_v, accepted, rejected| Trajectory {
        samples,
        terminal,
        capture_time,
        max_v,
        accepted,
        rejected,
    };

    if let Some((i, dist)) = nearest(&x, attractors) {
        if dist <= cfg.stop_radius {
            let term = Terminal::Converged { attractor: Some(i) };
            return finish(samples, term, Some(0.0), max_v, 0, 0);
        }
    }
    if k1.norm() < cfg.stop_grad {
        return finish(samples, Terminal::Converged { attractor: None }, None, max_v, 0, 0);
    }

    let mut h = (0.01 * (1.0 + x.norm()) / k1.norm()).min(1.0);
    let mut prev_dist = nearest(&x, attractors).map(|(_, d)| d);
    let terminal = loop {
        if t >= cfg.max_time {
            break Terminal::MaxTime;
        }
        if accepted + rejected >= cfg.max_steps {
            break Terminal::MaxTime;
        }
        if h < 1e-14 * (1.0 + t) {
            break Terminal::Stalled { t, step: h };
        }
        h = h.min(cfg.max_time - t);

        let mut k = [k1; 7];
        let mut x5 = x;
        for s in 1..7 {
            let mut y = x;
            for (j, kj) in k.iter().enumerate().take(s) {
                if A[s][j] != 0.0 {
                    y += kj.scale(h * A[s][j]);
                }
            }
            if s == 6 {
                // The last stage point is the fifth-order solution; its
                // slope is reused as the next first stage.
                x5 = y;
            }
            k[s] = field(&y);
        }
        let mut err_sq = 0.0;
        let d = x.dim();
        for i in 0..d {
            let e: f64 = (0..7).map(|j| E[j] * k[j].coord(i)).sum::<f64>() * h;
            let sc = cfg.abs_tol + cfg.rel_tol * x.coord(i).abs().max(x5.coord(i).abs());
            err_sq += (e / sc) * (e / sc);
        }
        let err = (err_sq / d as f64).sqrt();
        if !err.is_finite() {
            rejected += 1;
            h *= 0.2;
            continue;
        }
        if err > 1.0 {
            rejected += 1;
            h *= (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
            continue;
        }
        let v5 = p.potential(&x5);
        if v5 > v + slack {
            rejected += 1;
            h *= 0.5;
            continue;
        }

        accepted += 1;
        let t_prev = t;
        t += h;
        x = x5;
        v = v5;
        k1 = k[6];
        max_v = max_v.max(v);
        if cfg.record {
            samples.push(Sample { t, x, v });
        }
        if !x.is_finite() || x.norm() > DIVERGENCE_NORM {
            break Terminal::Diverged;
        }
        if let Some((i, dist)) = nearest(&x, attractors) {
            if dist <= cfg.stop_radius {
                let before = prev_dist.unwrap_or(dist);
                let frac = if before > dist {
                    ((before - cfg.stop_radius) / (before - dist)).clamp(0.0, 1.0)
                } else {
                    1.0
                };
                let tc = t_prev + frac * h;
                if !cfg.record {
                    samples.push(Sample { t, x, v });
                }
                return finish(samples, Terminal::Converged { attractor: Some(i) }, Some(tc), max_v, accepted, rejected);
            }
            prev_dist = Some(dist);
        }
        if k1.norm() < cfg.stop_grad {
            break Terminal::Converged { attractor: None };
        }
        h *= (0.9 * err.max(1e-10).powf(-0.2)).clamp(0.2, 5.0);
    };
    if !cfg.record && samples.last().map(|s| s.t) != Some(t) {
        samples.push(Sample { t, x, v });
    }
    finish(samples, terminal, None, max_v, accepted, rejected)
}

/// A polished root from a multistart search.
#[derive(Clone, Debug)]
pub struct RootCandidate {
    pub point: Element,
    pub residual: f64,
    pub rank: RankInfo,
}

/// Flow budget used before polishing in multistart searches.
const PREFLOW_TIME: f64 = 20.0;

/// Runs a short flow from each start, polishes with Levenberg–Marquardt and
/// Newton, and keeps distinct converged roots in start order.
pub fn multistart_roots(p: &Polynomial, starts: &[Element]) -> Vec<RootCandidate> {
    let cfg = FlowConfig {
        max_time: PREFLOW_TIME,
        stop_grad: 1e-10,
        record: false,
        max_steps: 20_000,
        ..FlowConfig::default()
    };
    let polished: Vec<Option<RootCandidate>> = starts
        .par_iter()
        .map(|x0| {
            let traj = integrate(p, x0, &cfg, &[]);
            let end = if matches!(traj.terminal, Terminal::Diverged) {
                *x0
            } else {
                traj.end().x
            };
            let pol = p.solve_root(&end);
            pol.converged.then(|| RootCandidate {
                point: pol.point,
                residual: pol.residual,
                rank: p.jacobian_rank(&pol.point),
            })
        })
        .collect();
    let mut out: Vec<RootCandidate> = Vec::new();
    for c in polished.into_iter().flatten() {
        if out
            .iter()
            .all(|o| o.point.distance(&c.point) > tolerances::ATTRACTOR_DEDUP)
        {
            out.push(c);
        }
    }
    out
}

/// Isolated roots of `P` reachable by the flow from Gaussian starts scaled
/// to the root magnitude. Sorted by coordinates.
pub fn find_attractors(p: &Polynomial, n_starts: usize, seed: u64) -> Vec<Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = manifolds::root_scale(p);
    let starts: Vec<Element> = (0..n_starts)
        .map(|_| Element::random(p.tag(), &mut rng).scale(scale))
        .collect();
    let mut out: Vec<Element> = multistart_roots(p, &starts)
        .into_iter()
        .filter(|c| c.rank.rank == p.tag().dim() && !c.rank.ambiguous)
        .map(|c| c.point)
        .collect();
    out.sort_by(|a, b| {
        a.coords()
            .iter()
            .zip(b.coords())
            .find(|(x, y)| (*x - *y).abs() > tolerances::ATTRACTOR_DEDUP)
            .map(|(x, y)| x.total_cmp(y))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}

/// Number of Gaussian starts used to locate attractors for collapse and
/// basin experiments.
pub const ATTRACTOR_STARTS: usize = 64;

/// First sphere stratum of the base polynomial.
fn base_sphere(d: &Deformation) -> Result<RootStratum> {
    let set = central_root_set(&d.base)?;
    let sphere = set.spheres().next().copied();
    sphere.ok_or_else(|| Error::Domain("base polynomial has no sphere stratum".into()))
}

/// Start-point convention for collapse measurements.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StartPolicy {
    /// Geodesic angle from the attracting axis.
    pub angle: f64,
    /// Seeds the perpendicular direction.
    pub seed: u64,
}

impl Default for StartPolicy {
    fn default() -> Self {
        StartPolicy {
            angle: PI / 3.0,
            seed: 0,
        }
    }
}

/// Unit imaginary direction of the attractor nearest to the sphere at the
/// smallest restricted potential, i.e. the attracting axis.
fn attracting_axis(sphere: &RootStratum, attractors: &[Element]) -> Result<Element> {
    attractors
        .iter()
        .filter(|a| a.imag().norm() > 0.0)
        .min_by(|a, b| sphere.distance(a).total_cmp(&sphere.distance(b)))
        .map(|a| {
            let im = a.imag();
            im.scale(1.0 / im.norm())
        })
        .ok_or_else(|| Error::Domain("no attractor off the real axis".into()))
}

/// Point of the sphere at geodesic angle `angle` from `axis`, in a random
/// perpendicular direction.
fn sphere_point_at_angle(sphere: &RootStratum, axis: &Element, angle: f64, seed: u64) -> Result<Element> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = loop {
        let g = Element::random_unit_imaginary(axis.tag(), &mut rng);
        let perp = g - axis.scale(g.dot(axis));
        let n = perp.norm();
        if n > 1e-6 {
            break perp.scale(1.0 / n);
        }
    };
    let u = axis.scale(angle.cos()) + w.scale(angle.sin());
    sphere
        .sphere_point(&u)
        .ok_or_else(|| Error::Domain("stratum is not a sphere".into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct CollapseOutcome {
    pub epsilon: f64,
    /// `None` when the flow hit `max_time` (censored).
    pub time: Option<f64>,
    pub attractor: Option<usize>,
}

/// Time for the flow of `P_ε`, started on the base sphere at angle `φ₀`
/// from the attracting axis, to come within δ of an attractor.
pub fn collapse_time(d: &Deformation, eps: f64, policy: &StartPolicy, cfg: &FlowConfig) -> Result<CollapseOutcome> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Domain(format!("collapse needs ε > 0, got {eps}")));
    }
    cfg.validate()?;
    let sphere = base_sphere(d)?;
    let p = d.at(eps)?;
    let attractors = find_attractors(&p, ATTRACTOR_STARTS, policy.seed);
    if attractors.is_empty() {
        return Err(Error::Domain("no isolated attractors at this ε".into()));
    }
    let axis = attracting_axis(&sphere, &attractors)?;
    let x0 = sphere_point_at_angle(&sphere, &axis, policy.angle, policy.seed)?;
    let cfg = FlowConfig { record: false, ..*cfg };
    let traj = integrate(&p, &x0, &cfg, &attractors);
    let attractor = match traj.terminal {
        Terminal::Converged { attractor } => attractor,
        _ => None,
    };
    Ok(CollapseOutcome {
        epsilon: eps,
        time: traj.capture_time,
        attractor,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Least squares of `ln T` against `ln ε`.
pub fn scaling_fit(epsilons: &[f64], times: &[f64]) -> Result<ScalingFit> {
    if epsilons.len() != times.len() {
        return Err(Error::InsufficientData("epsilon and time lists differ in length".into()));
    }
    if epsilons.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "need at least 4 points, got {}",
            epsilons.len()
        )));
    }
    if epsilons.iter().chain(times).any(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::Domain("fit inputs must be positive".into()));
    }
    let lo = epsilons.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = epsilons.iter().copied().fold(0.0, f64::max);
    if hi / lo < 10.0 * (1.0 - 1e-12) {
        return Err(Error::InsufficientData(format!(
            "ε range spans {:.3} decades, need 1",
            (hi / lo).log10()
        )));
    }
    let xs: Vec<f64> = epsilons.iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = times.iter().map(|t| t.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(ScalingFit { slope, intercept, r2 })
}

#[derive(Clone, Debug, Serialize)]
pub struct CollapseMeasurement {
    pub epsilons: Vec<f64>,
    pub times: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    /// ε values whose flow was censored at `max_time`.
    pub censored: Vec<f64>,
    pub warnings: Vec<String>,
}

/// Collapse times across `epsilons` (sorted ascending) and their scaling fit.
pub fn measure_collapse(
    d: &Deformation,
    epsilons: &[f64],
    policy: &StartPolicy,
    cfg: &FlowConfig,
) -> Result<CollapseMeasurement> {
    let mut eps: Vec<f64> = epsilons.to_vec();
    eps.sort_by(f64::total_cmp);
    let outcomes: Vec<Result<CollapseOutcome>> = eps.par_iter().map(|&e| collapse_time(d, e, policy, cfg)).collect();
    let mut kept_eps = Vec::new();
    let mut times = Vec::new();
    let mut censored = Vec::new();
    let mut warnings = Vec::new();
    for o in outcomes {
        let o = o?;
        match o.time {
            Some(t) if t > 0.0 => {
                kept_eps.push(o.epsilon);
                times.push(t);
            }
            _ => {
                warnings.push(format!("ε = {}: censored at max_time, excluded from fit", o.epsilon));
                censored.push(o.epsilon);
            }
        }
    }
    let fit = scaling_fit(&kept_eps, &times)?;
    Ok(CollapseMeasurement {
        epsilons: kept_eps,
        times,
        slope: fit.slope,
        intercept: fit.intercept,
        r2: fit.r2,
        censored,
        warnings,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BasinSample {
    #[serde(serialize_with = "coords")]
    pub start: Element,
    /// `cos φ` of the start relative to the attracting axis.
    pub cos_angle: f64,
    pub attractor: Option<usize>,
    pub terminal: Terminal,
    pub end_residual: f64,
    pub near_separatrix: bool,
    /// Attractor lies on the same side of the equator as the start.
    pub hemisphere_match: Option<bool>,
}

fn coords<S: serde::Serializer>(e: &Element, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(e.coords())
}

#[derive(Clone, Debug, Serialize)]
pub struct BasinReport {
    pub epsilon: f64,
    #[serde(serialize_with = "coord_list")]
    pub attractors: Vec<Element>,
    #[serde(serialize_with = "coords")]
    pub axis: Element,
    /// Fraction of samples captured by each attractor.
    pub fractions: Vec<f64>,
    pub unconverged: usize,
    /// Samples outside the equator band.
    pub outside_band: usize,
    /// Captured samples outside the band whose label matches the hemisphere.
    pub matched_outside_band: usize,
    pub max_end_residual: f64,
    pub samples: Vec<BasinSample>,
}

fn coord_list<S: serde::Serializer>(v: &[Element], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|e| e.coords().to_vec()))
}

impl BasinReport {
    pub fn capture_fraction_outside_band(&self) -> f64 {
        if self.outside_band == 0 {
            return 0.0;
        }
        self.matched_outside_band as f64 / self.outside_band as f64
    }
}

struct Landscape {
    p: Polynomial,
    sphere: RootStratum,
    attractors: Vec<Element>,
    axis: Element,
}

fn landscape(d: &Deformation, eps: f64, seed: u64) -> Result<Landscape> {
    let sphere = base_sphere(d)?;
    let p = d.at(eps)?;
    let attractors = find_attractors(&p, ATTRACTOR_STARTS, seed);
    if attractors.is_empty() {
        return Err(Error::Domain(format!("no isolated attractors at ε = {eps}")));
    }
    let axis = attracting_axis(&sphere, &attractors)?;
    Ok(Landscape {
        p,
        sphere,
        attractors,
        axis,
    })
}

fn run_samples(l: &Landscape, starts: &[Element], cfg: &FlowConfig) -> Vec<BasinSample> {
    let cfg = FlowConfig { record: false, ..*cfg };
    starts
        .par_iter()
        .map(|x0| {
            let traj = integrate(&l.p, x0, &cfg, &l.attractors);
            let attractor = match traj.terminal {
                Terminal::Converged { attractor } => attractor,
                _ => None,
            };
            let imag = x0.imag();
            let cos_angle = if imag.norm() > 0.0 {
                imag.dot(&l.axis) / imag.norm()
            } else {
                0.0
            };
            let hemisphere_match = attractor.map(|i| {
                let side = l.attractors[i].imag().dot(&l.axis);
                side * cos_angle > 0.0
            });
            BasinSample {
                start: *x0,
                cos_angle,
                attractor,
                terminal: traj.terminal,
                end_residual: l.p.evaluate(&traj.end().x).norm(),
                near_separatrix: cos_angle.abs() <= tolerances::EQUATOR_BAND,
                hemisphere_match,
            }
        })
        .collect()
}

/// Labels `n` uniform samples of the base sphere by the attractor of `P_ε`
/// that captures them.
pub fn basin_decomposition(d: &Deformation, eps: f64, n: usize, seed: u64, cfg: &FlowConfig) -> Result<BasinReport> {
    cfg.validate()?;
    let l = landscape(d, eps, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let starts = sample_stratum(&l.sphere, n, &mut rng);
    let samples = run_samples(&l, &starts, cfg);

    let mut counts = vec![0usize; l.attractors.len()];
    let mut unconverged = 0;
    for s in &samples {
        match s.attractor {
            Some(i) => counts[i] += 1,
            None => unconverged += 1,
        }
    }
    let outside: Vec<&BasinSample> = samples.iter().filter(|s| !s.near_separatrix).collect();
    let matched = outside.iter().filter(|s| s.hemisphere_match == Some(true)).count();
    let max_end_residual = samples
        .iter()
        .filter(|s| s.attractor.is_some())
        .map(|s| s.end_residual)
        .fold(0.0, f64::max);
    Ok(BasinReport {
        epsilon: eps,
        fractions: counts.iter().map(|c| *c as f64 / n.max(1) as f64).collect(),
        attractors: l.attractors,
        axis: l.axis,
        unconverged,
        outside_band: outside.len(),
        matched_outside_band: matched,
        max_end_residual,
        samples,
    })
}

/// Flow from explicit start points, labelled against the attractors of `P_ε`.
pub fn label_starts(d: &Deformation, eps: f64, starts: &[Element], seed: u64, cfg: &FlowConfig) -> Result<Vec<BasinSample>> {
    cfg.validate()?;
    let l = landscape(d, eps, seed)?;
    Ok(run_samples(&l, starts, cfg))
}

/// Point on the base sphere at angle `phi` from the attracting axis of `P_ε`.
pub fn start_at_angle(d: &Deformation, eps: f64, phi: f64, seed: u64) -> Result<Element> {
    let l = landscape(d, eps, seed)?;
    sphere_point_at_angle(&l.sphere, &l.axis, phi, seed)
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictedScan {
    pub epsilon: f64,
    pub values: Vec<f64>,
    pub argmin: usize,
    pub argmax: usize,
    pub min: f64,
    pub max: f64,
}

/// `V_ε` evaluated on points of the base root set.
pub fn restricted_potential_scan(d: &Deformation, eps: f64, points: &[Element]) -> Result<RestrictedScan> {
    if !d.base.is_central() {
        return Err(Error::NotCentral);
    }
    if points.is_empty() {
        return Err(Error::InsufficientData("empty stratum grid".into()));
    }
    let p = d.at(eps)?;
    let values: Vec<f64> = points.iter().map(|x| p.potential(x)).collect();
    let argmin = (0..values.len()).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    let argmax = (0..values.len()).max_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    Ok(RestrictedScan {
        epsilon: eps,
        min: values[argmin],
        max: values[argmax],
        argmin,
        argmax,
        values,
    })
}

/// Pointwise `log₂(f(2ε)/f(ε))`; 2 means quadratic scaling. Points where
/// `f(ε)` vanishes give `None`.
pub fn scaling_exponents(d: &Deformation, eps: f64, points: &[Element]) -> Result<Vec<Option<f64>>> {
    let a = restricted_potential_scan(d, eps, points)?;
    let b = restricted_potential_scan(d, 2.0 * eps, points)?;
    Ok(a.values
        .iter()
        .zip(&b.values)
        .map(|(fa, fb)| (*fa > 0.0).then(|| (fb / fa).log2()))
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct RetractReport {
    pub epsilon: f64,
    pub samples: usize,
    /// Samples outside the equator band (all samples when `ε = 0`).
    pub eligible: usize,
    pub captured: usize,
    pub diverged: usize,
    /// Largest `V(x(t))/V(x(0))` along any trajectory.
    pub max_transit_ratio: f64,
    /// Largest displacement of a trajectory (used at `ε = 0`).
    pub max_displacement: f64,
    pub pass: bool,
}

/// Checks that the flow carries every non-separatrix sample of the base
/// root set (and optional off-manifold starts) onto an attractor. At `ε = 0`
/// it checks instead that samples do not move.
pub fn retract_check(
    d: &Deformation,
    eps: f64,
    n: usize,
    seed: u64,
    extra_starts: &[Element],
    cfg: &FlowConfig,
) -> Result<RetractReport> {
    cfg.validate()?;
    let sphere = base_sphere(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut starts = sample_stratum(&sphere, n, &mut rng);

    if eps == 0.0 {
        let p = d.at(0.0)?;
        let cfg = FlowConfig { record: false, ..*cfg };
        let trajs: Vec<Trajectory> = starts.par_iter().map(|x| integrate(&p, x, &cfg, &[])).collect();
        let max_displacement = trajs
            .iter()
            .map(|t| t.end().x.distance(&t.start().x))
            .fold(0.0, f64::max);
        let still = trajs
            .iter()
            .filter(|t| matches!(t.terminal, Terminal::Converged { .. }))
            .count();
        return Ok(RetractReport {
            epsilon: 0.0,
            samples: n,
            eligible: n,
            captured: still,
            diverged: trajs.iter().filter(|t| t.terminal == Terminal::Diverged).count(),
            max_transit_ratio: 1.0,
            max_displacement,
            pass: still == n && max_displacement < 1e-12,
        });
    }

    let l = landscape(d, eps, seed)?;
    let n_sphere = starts.len();
    starts.extend_from_slice(extra_starts);
    let cfg = FlowConfig { record: false, ..*cfg };
    let trajs: Vec<Trajectory> = starts
        .par_iter()
        .map(|x| integrate(&l.p, x, &cfg, &l.attractors))
        .collect();
    let mut eligible = 0;
    let mut captured = 0;
    let mut diverged = 0;
    let mut max_transit_ratio: f64 = 0.0;
    let mut max_displacement: f64 = 0.0;
    for (i, (x0, t)) in starts.iter().zip(&trajs).enumerate() {
        let v0 = t.start().v;
        if v0 > 0.0 {
            max_transit_ratio = max_transit_ratio.max(t.max_v / v0);
        }
        max_displacement = max_displacement.max(t.end().x.distance(x0));
        if t.terminal == Terminal::Diverged {
            diverged += 1;
        }
        let in_band = i < n_sphere && {
            let im = x0.imag();
            im.norm() > 0.0 && (im.dot(&l.axis) / im.norm()).abs() <= tolerances::EQUATOR_BAND
        };
        if in_band {
            continue;
        }
        eligible += 1;
        if matches!(t.terminal, Terminal::Converged { attractor: Some(_) }) {
            captured += 1;
        }
    }
    Ok(RetractReport {
        epsilon: eps,
        samples: starts.len(),
        eligible,
        captured,
        diverged,
        max_transit_ratio,
        max_displacement,
        pass: diverged == 0 && captured == eligible,
    })
}
