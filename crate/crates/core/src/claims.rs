//! The acceptance checks, one function per claim. Each returns what was
//! expected, what was measured, the tolerance and the verdict, including
//! the runtime budget.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    associator_witness, automorphism_from_derivation, conjugation_automorphism, law_errors, Algebra, Element,
};
use crate::dynamics::{self, Boundary, CrossingKind, Waveform};
use crate::error::Result;
use crate::flow::{self, FlowConfig, StartPolicy};
use crate::manifolds::{self, central_root_set, sample_stratum, Stratum};
use crate::poly::{Deformation, Polynomial};
use crate::spectrum;
use crate::thermo::{self, GibbsConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaimOptions {
    /// Smaller sample counts and shorter chains; same thresholds.
    pub quick: bool,
    pub seed: u64,
}

impl Default for ClaimOptions {
    fn default() -> Self {
        ClaimOptions { quick: false, seed: 20240 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: usize,
    pub name: &'static str,
    pub expected: String,
    pub measured: Value,
    pub tolerance: String,
    /// Measurement within tolerance and runtime within budget.
    pub pass: bool,
    pub runtime_s: f64,
    pub budget_s: f64,
}

impl ClaimResult {
    pub fn key(&self) -> String {
        format!("{}-{}", self.id, self.name)
    }
}

struct Outcome {
    expected: String,
    measured: Value,
    tolerance: String,
    pass: bool,
}

pub const CLAIM_COUNT: usize = 13;

const NAMES: [&str; CLAIM_COUNT] = [
    "algebra-laws",
    "inflation-law",
    "automorphism-invariance",
    "jacobian-singularity",
    "localization",
    "breathing-consistency",
    "spectra",
    "critical-slowing-down",
    "potential-scaling",
    "basins",
    "order-parameter",
    "entropy-scaling",
    "hausdorff-discontinuity",
];

const BUDGETS: [f64; CLAIM_COUNT] = [5.0, 1.0, 10.0, 5.0, 5.0, 1.0, 5.0, 60.0, 1.0, 60.0, 600.0, 600.0, 30.0];

pub fn name(id: usize) -> Option<&'static str> {
    NAMES.get(id.wrapping_sub(1)).copied()
}

/// Runs claim `id` (1-based).
pub fn run_claim(id: usize, opts: &ClaimOptions) -> Option<ClaimResult> {
    let name = name(id)?;
    let start = Instant::now();
    let seed = opts.seed.wrapping_add(id as u64);
    let outcome = match id {
        1 => algebra_laws(opts, seed),
        2 => inflation_law(seed),
        3 => automorphism_invariance(seed),
        4 => jacobian_singularity(seed),
        5 => localization(seed),
        6 => breathing_consistency(),
        7 => spectra(seed),
        8 => critical_slowing_down(seed),
        9 => potential_scaling(seed),
        10 => basins(opts, seed),
        11 => order_parameter(opts, seed),
        12 => entropy_scaling(opts, seed),
        13 => hausdorff_discontinuity(seed),
        _ => unreachable!(),
    };
    let runtime_s = start.elapsed().as_secs_f64();
    let budget_s = BUDGETS[id - 1];
    let outcome = outcome.unwrap_or_else(|e| Outcome {
        expected: "claim runs without error".into(),
        measured: json!({ "error": e.to_string() }),
        tolerance: "-".into(),
        pass: false,
    });
    Some(ClaimResult {
        id,
        name,
        expected: outcome.expected,
        measured: outcome.measured,
        tolerance: outcome.tolerance,
        pass: outcome.pass && runtime_s <= budget_s,
        runtime_s,
        budget_s,
    })
}

pub fn run_all(opts: &ClaimOptions) -> Vec<ClaimResult> {
    (1..=CLAIM_COUNT).filter_map(|id| run_claim(id, opts)).collect()
}

fn algebra_laws(opts: &ClaimOptions, seed: u64) -> Result<Outcome> {
    let cases = if opts.quick { 1_000 } else { 10_000 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = serde_json::Map::new();
    let mut pass = true;
    for tag in Algebra::ALL {
        let e = law_errors(tag, cases, &mut rng);
        pass &= e.passes();
        worst.insert(tag.symbol().to_string(), json!(e));
    }
    let witness = associator_witness();
    pass &= witness > 0.5;
    Ok(Outcome {
        expected: format!("{cases} random cases per algebra satisfy the laws; O has a nonzero associator"),
        measured: json!({ "max_relative_error": worst, "associator_e1_e2_e4": witness }),
        tolerance: "relative 1e-12".into(),
        pass,
    })
}

/// Samples of `x² + 1`'s sphere, Newton-polished, with their potential.
fn polished_sphere_samples(tag: Algebra, n: usize, rng: &mut ChaCha8Rng) -> Result<(usize, Vec<Element>, f64)> {
    let p = Polynomial::real(tag, &[1.0, 0.0, 1.0])?;
    let set = central_root_set(&p)?;
    let mut points = Vec::new();
    let mut worst: f64 = 0.0;
    for s in &set.strata {
        for x in sample_stratum(s, n, rng) {
            let pol = p.newton_polish(&x);
            worst = worst.max(p.potential(&pol.point));
            points.push(pol.point);
        }
    }
    Ok((set.hausdorff_dimension, points, worst))
}

fn inflation_law(seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut measured = serde_json::Map::new();
    let mut pass = true;
    for (tag, want) in [(Algebra::Quaternion, 2), (Algebra::Octonion, 6)] {
        let p = Polynomial::real(tag, &[1.0, 0.0, 1.0])?;
        let set = central_root_set(&p)?;
        let unit_sphere = set.strata.len() == 1
            && matches!(set.strata[0].kind, Stratum::Sphere { re, radius } if re.abs() < 1e-14 && (radius - 1.0).abs() < 1e-14);
        let (dim, _, worst) = polished_sphere_samples(tag, 32, &mut rng)?;
        pass &= unit_sphere && dim == want && worst < 1e-18;
        measured.insert(
            tag.symbol().to_string(),
            json!({ "dimension": dim, "unit_sphere": unit_sphere, "max_potential": worst }),
        );
    }
    Ok(Outcome {
        expected: "x^2+1: sphere re=0 radius=1 of dimension 2 in H and 6 in O".into(),
        measured: Value::Object(measured),
        tolerance: "potential ||P||^2 < 1e-18 on 32 polished samples".into(),
        pass,
    })
}

fn automorphism_invariance(seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let o = Algebra::Octonion;
    let h = Algebra::Quaternion;
    let po = Polynomial::real(o, &[1.0, 0.0, 1.0])?;
    let ph = Polynomial::real(h, &[1.0, 0.0, 1.0])?;
    let (_, roots_o, _) = polished_sphere_samples(o, 100, &mut rng)?;
    let (_, roots_h, _) = polished_sphere_samples(h, 100, &mut rng)?;
    let mut worst_o: f64 = 0.0;
    for x in &roots_o {
        let a = Element::random(o, &mut rng).imag();
        let b = Element::random(o, &mut rng).imag();
        let t: f64 = rng.random_range(-2.0..2.0);
        let g = automorphism_from_derivation(&a, &b, t)?;
        worst_o = worst_o.max(manifolds::orbit_invariance_check(&po, &g, x)?);
    }
    let mut worst_h: f64 = 0.0;
    for x in &roots_h {
        let g = conjugation_automorphism(&Element::random(h, &mut rng))?;
        worst_h = worst_h.max(manifolds::orbit_invariance_check(&ph, &g, x)?);
    }
    Ok(Outcome {
        expected: "V(g(x)) = 0 for 100 (G2 element, root) pairs in O and 100 (conjugation, root) pairs in H".into(),
        measured: json!({ "O": worst_o, "H": worst_h }),
        tolerance: "residual < 1e-12".into(),
        pass: worst_o < 1e-12 && worst_h < 1e-12,
    })
}

fn jacobian_singularity(seed: u64) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut measured = serde_json::Map::new();
    let mut pass = true;
    for tag in [Algebra::Quaternion, Algebra::Octonion] {
        let p = Polynomial::real(tag, &[1.0, 0.0, 1.0])?;
        let set = central_root_set(&p)?;
        let samples = sample_stratum(&set.strata[0], 50, &mut rng);
        let ranks: Vec<usize> = samples.iter().map(|x| p.jacobian_rank(x).rank).collect();
        let ambiguous = samples.iter().any(|x| p.jacobian_rank(x).ambiguous);
        let want = tag.dim() - set.hausdorff_dimension;
        let ok = !ambiguous && ranks.iter().all(|r| *r == want);
        pass &= ok && want == 2;
        measured.insert(
            tag.symbol().to_string(),
            json!({ "expected_rank": want, "min_rank": ranks.iter().min(), "max_rank": ranks.iter().max(), "ambiguous": ambiguous }),
        );
    }
    let h = Algebra::Quaternion;
    let iso = Deformation::canonical(h).at(1.0)?;
    let attractors = flow::find_attractors(&iso, flow::ATTRACTOR_STARTS, seed);
    let iso_ranks: Vec<usize> = attractors.iter().map(|x| iso.jacobian_rank(x).rank).collect();
    pass &= attractors.len() == 2 && iso_ranks.iter().all(|r| *r == 4);
    measured.insert("isolated_H".into(), json!({ "roots": attractors.len(), "ranks": iso_ranks }));
    Ok(Outcome {
        expected: "rank d_A - d_M = 2 on 50 sphere samples in H and O; full rank 4 at the isolated roots of x^2+ix+1".into(),
        measured: Value::Object(measured),
        tolerance: "relative singular-value cutoff 1e-8".into(),
        pass,
    })
}

fn localization(seed: u64) -> Result<Outcome> {
    let h = Algebra::Quaternion;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = Deformation::canonical(h).at(1.0)?;
    let roots = flow::find_attractors(&p, flow::ATTRACTOR_STARTS, seed);
    let off_axis = roots
        .iter()
        .map(|x| x.coord(2).abs().max(x.coord(3).abs()))
        .fold(0.0, f64::max);
    let mut pass = roots.len() == 2 && off_axis < 1e-8;

    let mut worst_dist: f64 = 0.0;
    let mut counts = Vec::new();
    for k in 0..20 {
        let c = |rng: &mut ChaCha8Rng| {
            Element::new(h, &[rng.sample(StandardNormal), rng.sample(StandardNormal), 0.0, 0.0]).expect("finite")
        };
        let q = Polynomial::new(h, vec![c(&mut rng), c(&mut rng), Element::one(h)])?;
        let sub = q.coefficient_subalgebra();
        let found = flow::find_attractors(&q, 32, seed.wrapping_add(k));
        for x in &found {
            worst_dist = worst_dist.max(sub.distance(x));
            if let Ok(crate::poly::Localization::Point(y)) = q.localize_isolated_root(x) {
                worst_dist = worst_dist.max(sub.distance(&y));
            }
        }
        counts.push(found.len());
    }
    pass &= worst_dist < 1e-8 && counts.iter().all(|c| *c >= 1);
    Ok(Outcome {
        expected: "roots of x^2+ix+1 lie on the i-axis; roots of 20 random C-coefficient quadratics lie in C".into(),
        measured: json!({ "x2_ix_1_roots": roots.len(), "max_off_axis": off_axis, "max_distance_to_C": worst_dist, "roots_per_quadratic": counts }),
        tolerance: "components outside the subalgebra < 1e-8".into(),
        pass,
    })
}

fn breathing_consistency() -> Result<Outcome> {
    let a = Waveform::sine(5.0, 0.5, 0.1);
    let b = Waveform::sine(4.0, 0.3, 0.07);
    let tr = dynamics::simulate_breathing(2, &a, &b, (0.0, 100.0), 0.01)?;
    let (mut sum_err, mut prod_err): (f64, f64) = (0.0, 0.0);
    let mut valid = 0;
    for i in 0..tr.len() {
        if let (Some(ri), Some(ro)) = (tr.r_inner[i], tr.r_outer[i]) {
            valid += 1;
            sum_err = sum_err.max((ri * ri + ro * ro - tr.a[i].abs()).abs());
            prod_err = prod_err.max((ri * ri * ro * ro - tr.b[i]).abs());
        }
    }
    let classify = |b: &dyn dynamics::Drive| -> Result<Vec<CrossingKind>> {
        let a = Waveform::constant(2.0);
        let tr = dynamics::simulate_breathing(2, &a, b, (-1.0, 1.0), 0.01)?;
        Ok(dynamics::detect_boundaries(&a, b, &tr)?
            .into_iter()
            .filter(|e| e.boundary == Boundary::Discriminant)
            .map(|e| e.kind)
            .collect())
    };
    let linear = classify(&|t: f64| 1.0 - t / 4.0)?;
    let touch = classify(&|t: f64| 1.0 - t * t / 4.0)?;
    let pass = valid == tr.len()
        && sum_err < 1e-12
        && prod_err < 1e-12
        && linear == vec![CrossingKind::Transversal]
        && touch == vec![CrossingKind::Tangential];
    Ok(Outcome {
        expected: "r_in^2 + r_out^2 = |a|, r_in^2 r_out^2 = b along the trace; Delta=t transversal, Delta=t^2 tangential".into(),
        measured: json!({
            "valid_samples": valid,
            "samples": tr.len(),
            "max_sum_error": sum_err,
            "max_product_error": prod_err,
            "delta_t": format!("{linear:?}"),
            "delta_t2": format!("{touch:?}"),
        }),
        tolerance: "1e-12".into(),
        pass,
    })
}

fn spectra(seed: u64) -> Result<Outcome> {
    let (n, dt) = (4096usize, 0.0625);
    let (f1, f2) = (0.125, 0.1875);
    let a = Waveform::sine(5.0, 0.5, f1);
    let b = Waveform::sine(4.0, 0.5, f2);
    let tr = dynamics::simulate_breathing(2, &a, &b, (0.0, (n - 1) as f64 * dt), dt)?;
    let r: Vec<f64> = tr.r_inner.iter().map(|v| v.unwrap_or(f64::NAN)).collect();
    let p = spectrum::psd_on_grid(&tr.times, &r)?;
    let report = spectrum::spectral_peaks(&p, f1, Some(f2));
    let im = report.line("f1+f2").cloned();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise: Vec<f64> = (0..1 << 18).map(|_| rng.sample(StandardNormal)).collect();
    let mean = noise.iter().sum::<f64>() / noise.len() as f64;
    let var = noise.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / noise.len() as f64;
    let parseval = spectrum::psd(&noise, 0.01)?.integrated_power() / var;

    let im_db = im.as_ref().map(|l| l.db_above_floor).unwrap_or(f64::NEG_INFINITY);
    let pass = im.is_some_and(|l| l.peak) && (parseval - 1.0).abs() < 0.01;
    Ok(Outcome {
        expected: "intermodulation peak at f1+f2 in the inner-radius PSD; integrated white-noise PSD equals the variance".into(),
        measured: json!({ "f1_plus_f2_db": im_db, "parseval_ratio": parseval }),
        tolerance: ">= 10 dB above the median floor; Parseval within 1%".into(),
        pass,
    })
}

fn critical_slowing_down(seed: u64) -> Result<Outcome> {
    let eps = [0.005, 0.01, 0.02, 0.05, 0.1];
    let policy = StartPolicy { angle: PI / 3.0, seed };
    let m = flow::measure_collapse(&Deformation::benchmark(), &eps, &policy, &FlowConfig::default())?;
    let pass = m.censored.is_empty() && (-2.15..=-1.85).contains(&m.slope) && m.r2 > 0.99;
    Ok(Outcome {
        expected: "T_collapse ~ eps^-2 on (x^2+1, ix+1) in H".into(),
        measured: json!({ "epsilons": m.epsilons, "times": m.times, "slope": m.slope, "r2": m.r2, "censored": m.censored }),
        tolerance: "slope in [-2.15, -1.85], r2 > 0.99".into(),
        pass,
    })
}

fn potential_scaling(seed: u64) -> Result<Outcome> {
    let d = Deformation::benchmark();
    let set = central_root_set(&d.base)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = sample_stratum(&set.strata[0], 20, &mut rng);
    let eps = 0.05;
    let f1 = flow::restricted_potential_scan(&d, eps, &points)?;
    let f2 = flow::restricted_potential_scan(&d, 2.0 * eps, &points)?;
    let ratios: Vec<f64> = f1.values.iter().zip(&f2.values).map(|(a, b)| b / a).collect();
    let worst = ratios.iter().map(|r| (r / 4.0 - 1.0).abs()).fold(0.0, f64::max);
    Ok(Outcome {
        expected: "f(2 eps)/f(eps) = 4 at 20 points of the unit sphere".into(),
        measured: json!({ "epsilon": eps, "max_relative_deviation": worst, "min_ratio": ratios.iter().copied().fold(f64::INFINITY, f64::min), "max_ratio": ratios.iter().copied().fold(0.0, f64::max) }),
        tolerance: "1%".into(),
        pass: worst < 0.01,
    })
}

fn basins(opts: &ClaimOptions, seed: u64) -> Result<Outcome> {
    let n = if opts.quick { 100 } else { 500 };
    let eps = 0.1;
    let r = flow::basin_decomposition(&Deformation::benchmark(), eps, n, seed, &FlowConfig::default())?;
    let frac = r.capture_fraction_outside_band();
    Ok(Outcome {
        expected: format!("{n} sphere samples outside |cos phi| <= 0.05 flow to the attractor of their hemisphere"),
        measured: json!({
            "epsilon": eps,
            "outside_band": r.outside_band,
            "matched": r.matched_outside_band,
            "fraction": frac,
            "unconverged": r.unconverged,
            "basin_fractions": r.fractions,
        }),
        tolerance: ">= 98%".into(),
        pass: frac >= 0.98,
    })
}

fn order_parameter(opts: &ClaimOptions, seed: u64) -> Result<Outcome> {
    let h = Algebra::Quaternion;
    let o = Algebra::Octonion;
    let steps = if opts.quick { 10_000 } else { 40_000 };
    let cfg = |t: f64, s: u64| GibbsConfig {
        steps,
        ..GibbsConfig::new(t, s)
    };
    let m = |tag: Algebra, eps: f64, t: f64, s: u64| -> Result<thermo::OrderParameter> {
        let p = Deformation::canonical(tag).at(eps)?;
        let stats = thermo::sample_gibbs(&p, &cfg(t, s))?;
        thermo::order_parameter(&stats, &Element::basis(tag, 1))
    };
    let sym_h = m(h, 0.0, 0.01, seed)?;
    let sym_o = m(o, 0.0, 0.01, seed + 1)?;
    let ordered = m(h, 1.0, 0.01, seed + 2)?;
    let restored = m(h, 2.5, 2.5, seed + 3)?;
    let checks = [
        (sym_h.m - 1.0 / 3.0).abs() <= 0.05,
        (sym_o.m - 1.0 / 7.0).abs() <= 0.04,
        ordered.m >= 0.95,
        (restored.m - 1.0 / 3.0).abs() <= 0.1,
    ];
    Ok(Outcome {
        expected: "m(0,0.01)=1/3 (H), 1/7 (O); m(1,0.01) >= 0.95; m(2.5,2.5) = 1/3 (restored)".into(),
        measured: json!({
            "H_eps0_T0.01": sym_h,
            "O_eps0_T0.01": sym_o,
            "H_eps1_T0.01": ordered,
            "H_eps2.5_T2.5": restored,
            "sub_checks": checks,
        }),
        tolerance: "+-0.05 (H), +-0.04 (O), >= 0.95, +-0.1".into(),
        pass: checks.iter().all(|c| *c),
    })
}

fn entropy_scaling(opts: &ClaimOptions, seed: u64) -> Result<Outcome> {
    let ladder = [1e-3, 3e-3, 1e-2, 2e-2, 5e-2];
    let steps = if opts.quick { 10_000 } else { 40_000 };
    let base = GibbsConfig {
        steps,
        ..GibbsConfig::new(ladder[0], seed)
    };
    let h = Algebra::Quaternion;
    let o = Algebra::Octonion;
    let cases = [
        ("H_central", Polynomial::real(h, &[1.0, 0.0, 1.0])?, 1.0, 0.15),
        ("H_isolated", Deformation::canonical(h).at(1.0)?, 2.0, 0.2),
        ("O_central", Polynomial::real(o, &[1.0, 0.0, 1.0])?, 1.0, 0.2),
    ];
    let mut measured = serde_json::Map::new();
    let mut pass = true;
    for (i, (label, p, want, tol)) in cases.iter().enumerate() {
        let cfg = GibbsConfig {
            seed: seed.wrapping_add(100 * i as u64),
            ..base
        };
        let e = thermo::entropy_coefficient(p, &ladder, &cfg)?;
        pass &= (e.alpha - want).abs() <= *tol;
        measured.insert(
            label.to_string(),
            json!({ "alpha": e.alpha, "per_T": e.points.iter().map(|p| p.alpha).collect::<Vec<_>>(), "warning": e.warning }),
        );
    }
    Ok(Outcome {
        expected: "alpha = 1 (H central), 2 (H isolated), 1 (O central) over T in [1e-3, 5e-2]".into(),
        measured: Value::Object(measured),
        tolerance: "+-0.15, +-0.2, +-0.2".into(),
        pass,
    })
}

fn hausdorff_discontinuity(seed: u64) -> Result<Outcome> {
    let rows = manifolds::hausdorff_dimension_scan(&Deformation::benchmark(), &[0.0, 0.1], seed)?;
    let dims: Vec<Option<usize>> = rows.iter().map(|r| r.dimension).collect();
    Ok(Outcome {
        expected: "dimension 2 at eps=0 and 0 at eps=0.1 for (x^2+1, ix+1) in H".into(),
        measured: json!({ "rows": rows }),
        tolerance: "exact".into(),
        pass: dims == vec![Some(2), Some(0)],
    })
}
