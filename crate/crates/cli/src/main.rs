//! `rootflow`: experiment driver. Each subcommand writes CSV/JSON artifacts
//! into the output directory with the resolved configuration echoed in the
//! header.
//!
//! Exit status: 0 on success, 1 when a claim fails, 2 on configuration errors.

mod config;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use rootflow::algebra::{self, Algebra, Element};
use rootflow::claims::{self, ClaimOptions, CLAIM_COUNT};
use rootflow::dynamics::{self, Tone, Waveform};
use rootflow::flow::{self, FlowConfig, StartPolicy};
use rootflow::io::{atomic_write, csv_with_config, json_with_config};
use rootflow::manifolds;
use rootflow::poly::{Deformation, Localization, Polynomial};
use rootflow::spectrum;
use rootflow::thermo::{self, GibbsConfig};

use config::{parse_range, parse_waveform};

#[derive(Parser, Debug)]
#[command(name = "rootflow", version, about = "Root manifolds over the normed division algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Serialize)]
struct Common {
    /// Seed for every random choice; required by sampling subcommands.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, env = "ROOTFLOW_OUT", default_value = "rootflow-out")]
    #[serde(skip)]
    out: PathBuf,
    /// Algebra: C, H or O.
    #[arg(long, default_value = "H")]
    algebra: String,
    /// Flat JSON file of flag values; flags on the command line win.
    #[arg(long)]
    #[serde(skip)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Composition-algebra laws on random elements, plus automorphism checks.
    AlgebraCheck(AlgebraCheckArgs),
    /// Root strata of a central polynomial.
    Inflate(InflateArgs),
    /// C_d symmetry over C, automorphism invariance of root spheres over H and O.
    Symmetry(SymmetryArgs),
    /// Breathing-mode radii of x^{2k} + a(t) x^k + b(t) and boundary crossings.
    Breathe(BreatheArgs),
    /// Power spectrum of a breathing radius.
    Spectra(SpectraArgs),
    /// Isolated roots and the subalgebra they lie in.
    Localize(LocalizeArgs),
    /// Collapse times across a range of epsilon and their power-law fit.
    Collapse(CollapseArgs),
    /// Basin labels of sphere samples under the gradient flow.
    Basins(BasinsArgs),
    /// Gibbs-measure statistics at one (epsilon, T).
    Thermo(ThermoArgs),
    /// Order parameter over an (epsilon, T) grid.
    PhaseDiagram(PhaseDiagramArgs),
    /// Runs the acceptance checks.
    Claims(ClaimsArgs),
}

#[derive(Args, Debug, Serialize)]
#[command(args_override_self = true)]
struct AlgebraCheckArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    /// Random cases per algebra.
    #[arg(long, default_value_t = 10_000)]
    cases: usize,
}

#[derive(Args, Debug, Serialize)]
#[command(args_override_self = true)]
struct InflateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    /// Coefficient literal `[[c0..],[c1..],..]`; defaults to x^2 + 1.
    #[arg(long)]
    poly: Option<String>,
    /// Newton-polished samples per stratum (needs --seed when nonzero).
    #[arg(long, default_value_t = 0)]
    samples: usize,
}

#[derive(Args, Debug, Serialize)]
#[command(args_override_self = true)]
struct SymmetryArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    #[arg(long)]
    poly: Option<String>,
    /// (automorphism, root) pairs over H and O.
    #[arg(long, default_value_t = 100)]
    pairs: usize,
}

#[derive(Args, Debug, Serialize)]
struct DriveArgs {
    /// a(t) as `offset[,amplitude,frequency]...`.
    #[arg(long, default_value = "5,0.5,0.125")]
    a: String,
    /// b(t) in the same format.
    #[arg(long, default_value = "4,0.5,0.1875")]
    b: String,
    #[arg(long, default_value_t = 2)]
    k: u32,
    #[arg(long, default_value_t = 0.0625)]
    dt: f64,
}

#[derive(Args, Debug, Serialize)]
#[command(args_override_self = true)]
struct BreatheArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    drive: DriveArgs,
    #[arg(long, default_value_t = 0.0)]
    t0: f64,
    #[arg(long, default_value_t = 100.0)]
    t1: f64,
}

#[derive(Args, Debug, Serialize)]
#[command(args_override_self = true)]
struct SpectraArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    drive: DriveArgs,
    /// Number of samples.
    #[arg(long, default_value_t = 4096)]
    n: usize,
    /// Radius to analyse: inner, outer or gap.
    #[arg(long, default_value = "inner")]
    series: String,
}

#[derive(Args, Debug, Serialize)]
#[command(args_override_self = true)]
struct LocalizeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    /// Defaults to x^2 + i x + 1.
    #[arg(long)]
    poly: Option<String>,
    #[arg(long, default_value_t = flow::ATTRACTOR_STARTS)]
    starts: usize,
}

#[derive(Args, Debug, Serialize)]
struct DeformationArgs {
    /// Central base polynomial; defaults to x^2 + 1.
    #[arg(long)]
    base: Option<String>,
    /// Perturbation direction; defaults to i x + 1 (i x for thermo and phase-diagram).
    #[arg(long)]
    direction: Option<String>,
}

#[derive(Args, Debug, Serialize)]
struct FlowArgs {
    #[arg(long, default_value_t = 1e-8)]
    rtol: f64,
    #[arg(long, default_value_t = 1e-10)]
    atol: f64,
    #[arg(long, default_value_t = 1e6)]
    max_time: f64,
}

impl FlowArgs {
    fn config(&self) -> FlowConfig {
        FlowConfig {
            rel_tol: self.rtol,
            abs_tol: self.atol,
            max_time: self.max_time,
            ..FlowConfig::default()
        }
    }
}

#[derive(Args, Debug, Serialize)]
#[command(args_override_self = true)]
struct CollapseArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    deformation: DeformationArgs,
    #[command(flatten)]
    #[serde(flatten)]
    flow: FlowArgs,
    /// Epsilon values: `lo:hi:logN`, `lo:hi:linN` or a comma list.
    #[arg(long, default_value = "0.005:0.1:log5")]
    eps: String,
    /// Start angle from the attracting axis, in degrees.
    #[arg(long, default_value_t = 60.0)]
    angle_deg: f64,
}

#[derive(Args, Debug, Serialize)]
#[command(args_override_self = true)]
struct BasinsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    deformation: DeformationArgs,
    #[command(flatten)]
    #[serde(flatten)]
    flow: FlowArgs,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    #[arg(long, default_value_t = 500)]
    samples: usize,
}

#[derive(Args, Debug, Serialize)]
struct ChainArgs {
    #[arg(long, default_value_t = 16)]
    chains: usize,
    /// Steps per chain, burn-in included.
    #[arg(long, default_value_t = 40_000)]
    steps: usize,
    #[arg(long, default_value_t = 0.25)]
    burn_in: f64,
}

#[derive(Args, Debug, Serialize)]
#[command(args_override_self = true)]
struct ThermoArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    deformation: DeformationArgs,
    #[command(flatten)]
    #[serde(flatten)]
    chains: ChainArgs,
    #[arg(long, default_value_t = 0.0)]
    eps: f64,
    #[arg(long, default_value_t = 0.01)]
    temperature: f64,
}

#[derive(Args, Debug, Serialize)]
#[command(args_override_self = true)]
struct PhaseDiagramArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    #[command(flatten)]
    #[serde(flatten)]
    deformation: DeformationArgs,
    #[command(flatten)]
    #[serde(flatten)]
    chains: ChainArgs,
    #[arg(long, default_value = "0:2.5:lin6")]
    eps: String,
    #[arg(long, default_value = "0.01:2.5:log6")]
    temps: String,
}

#[derive(Args, Debug, Serialize)]
#[command(args_override_self = true)]
struct ClaimsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    common: Common,
    /// Smaller samples and shorter chains; same thresholds.
    #[arg(long)]
    quick: bool,
    /// Comma-separated claim ids; all when absent.
    #[arg(long)]
    only: Option<String>,
}

impl Common {
    fn seed(&self, cmd: &str) -> Result<u64> {
        self.seed.ok_or_else(|| anyhow!("--seed is required for `{cmd}`"))
    }

    fn algebra(&self) -> Result<Algebra> {
        let tag = Algebra::from_symbol(&self.algebra)?;
        if tag == Algebra::Real {
            bail!("--algebra must be C, H or O");
        }
        Ok(tag)
    }

    /// Parses a polynomial literal, which must live in the selected algebra.
    fn poly(&self, literal: Option<&str>, default: impl FnOnce(Algebra) -> Result<Polynomial>) -> Result<Polynomial> {
        let tag = self.algebra()?;
        let p = match literal {
            Some(s) => Polynomial::from_json(s)?,
            None => default(tag)?,
        };
        if p.tag() != tag {
            bail!("polynomial is over {} but --algebra is {}", p.tag().symbol(), tag.symbol());
        }
        Ok(p)
    }

    fn deformation(&self, args: &DeformationArgs, direction: impl FnOnce(Algebra) -> Deformation) -> Result<Deformation> {
        let tag = self.algebra()?;
        let fallback = direction(tag);
        let base = self.poly(args.base.as_deref(), |_| Ok(fallback.base.clone()))?;
        let dir = self.poly(args.direction.as_deref(), |_| Ok(fallback.direction.clone()))?;
        Ok(Deformation::new(base, dir)?)
    }

    fn write(&self, name: &str, contents: &str) -> Result<()> {
        std::fs::create_dir_all(&self.out).with_context(|| format!("creating {}", self.out.display()))?;
        let path = self.out.join(name);
        atomic_write(&path, contents.as_bytes())?;
        println!("wrote {}", path.display());
        Ok(())
    }
}

/// Deformation with `ix + 1` as direction, the collapse benchmark over H.
fn benchmark_like(tag: Algebra) -> Deformation {
    let c = Deformation::canonical(tag);
    let dir = Polynomial::new(tag, vec![Element::one(tag), Element::basis(tag, 1)]).expect("valid");
    Deformation { direction: dir, ..c }
}

fn coords(x: &Element) -> Vec<f64> {
    x.coords().to_vec()
}

fn echo<T: Serialize>(args: &T, command: &str) -> Result<Value> {
    let mut v = serde_json::to_value(args)?;
    if let Value::Object(m) = &mut v {
        m.insert("command".into(), json!(command));
    }
    Ok(v)
}

fn algebra_check(args: &AlgebraCheckArgs) -> Result<bool> {
    let cfg = echo(args, "algebra-check")?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed("algebra-check")?);
    let laws: Vec<Value> = Algebra::ALL
        .iter()
        .filter(|t| **t != Algebra::Real)
        .map(|t| {
            let e = algebra::law_errors(*t, args.cases, &mut rng);
            json!({ "algebra": t.symbol(), "errors": e, "pass": e.passes() })
        })
        .collect();
    let h = Element::random(Algebra::Quaternion, &mut rng);
    let conj = algebra::conjugation_automorphism(&h)?.automorphism_report(&mut rng, 100);
    let a = Element::random(Algebra::Octonion, &mut rng).imag();
    let b = Element::random(Algebra::Octonion, &mut rng).imag();
    let g2 = algebra::automorphism_from_derivation(&a, &b, 0.7)?.automorphism_report(&mut rng, 100);
    let result = json!({
        "laws": laws,
        "associator_e1_e2_e4": algebra::associator_witness(),
        "conjugation_automorphism": { "report": conj, "pass": conj.passes() },
        "g2_automorphism": { "report": g2, "pass": g2.passes() },
    });
    args.common.write("algebra_check.json", &json_with_config(&cfg, &result)?)?;
    Ok(true)
}

fn inflate(args: &InflateArgs) -> Result<bool> {
    let cfg = echo(args, "inflate")?;
    let p = args.common.poly(args.poly.as_deref(), |t| Ok(Polynomial::real(t, &[1.0, 0.0, 1.0])?))?;
    let set = manifolds::central_root_set(&p)?;
    let mut samples = Vec::new();
    if args.samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed("inflate --samples")?);
        for (i, s) in set.strata.iter().enumerate() {
            for x in manifolds::sample_stratum(s, args.samples, &mut rng) {
                let polished = p.newton_polish(&x);
                samples.push(json!({
                    "stratum": i,
                    "point": coords(&polished.point),
                    "potential": p.potential(&polished.point),
                }));
            }
        }
    }
    for s in &set.strata {
        println!("{:?} dim {}", s.kind, s.dimension());
    }
    let result = json!({ "root_set": set, "samples": samples });
    args.common.write("inflate.json", &json_with_config(&cfg, &result)?)?;
    Ok(true)
}

fn symmetry(args: &SymmetryArgs) -> Result<bool> {
    let cfg = echo(args, "symmetry")?;
    let p = args.common.poly(args.poly.as_deref(), |t| Ok(Polynomial::real(t, &[1.0, 0.0, 1.0])?))?;
    let result = if p.tag() == Algebra::Complex {
        let r = manifolds::cd_symmetry_check(&p)?;
        json!({ "cyclic": r })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(args.common.seed("symmetry")?);
        let set = manifolds::central_root_set(&p)?;
        let sphere = set
            .spheres()
            .next()
            .copied()
            .ok_or_else(|| anyhow!("polynomial has no sphere of roots"))?;
        let mut worst: f64 = 0.0;
        let mut worst_mul: f64 = 0.0;
        for x in manifolds::sample_stratum(&sphere, args.pairs, &mut rng) {
            let x = p.newton_polish(&x).point;
            let g = match p.tag() {
                Algebra::Quaternion => algebra::conjugation_automorphism(&Element::random(p.tag(), &mut rng))?,
                _ => {
                    let a = Element::random(p.tag(), &mut rng).imag();
                    let b = Element::random(p.tag(), &mut rng).imag();
                    algebra::automorphism_from_derivation(&a, &b, rand::Rng::random_range(&mut rng, -2.0..2.0))?
                }
            };
            worst_mul = worst_mul.max(g.automorphism_report(&mut rng, 4).multiplicativity);
            worst = worst.max(manifolds::orbit_invariance_check(&p, &g, &x)?);
        }
        json!({ "pairs": args.pairs, "max_residual": worst, "max_multiplicativity_error": worst_mul, "pass": worst < 1e-12 })
    };
    args.common.write("symmetry.json", &json_with_config(&cfg, &result)?)?;
    Ok(true)
}

fn drives(d: &DriveArgs) -> Result<(Waveform, Waveform)> {
    Ok((parse_waveform(&d.a)?, parse_waveform(&d.b)?))
}

fn breathe(args: &BreatheArgs) -> Result<bool> {
    let cfg = echo(args, "breathe")?;
    let (a, b) = drives(&args.drive)?;
    let trace = dynamics::simulate_breathing(args.drive.k, &a, &b, (args.t0, args.t1), args.drive.dt)?;
    let events = dynamics::detect_boundaries(&a, &b, &trace)?;
    args.common.write("breathe.csv", &csv_with_config(&cfg, &trace.to_csv()))?;
    args.common.write("breathe_events.json", &json_with_config(&cfg, &events)?)?;
    Ok(true)
}

fn first_frequency(w: &Waveform) -> Option<f64> {
    w.components.first().map(|t: &Tone| t.frequency)
}

fn spectra(args: &SpectraArgs) -> Result<bool> {
    let cfg = echo(args, "spectra")?;
    let (a, b) = drives(&args.drive)?;
    if args.n < 16 {
        bail!("--n must be at least 16");
    }
    let t1 = (args.n - 1) as f64 * args.drive.dt;
    let trace = dynamics::simulate_breathing(args.drive.k, &a, &b, (0.0, t1), args.drive.dt)?;
    let series = match args.series.as_str() {
        "inner" => &trace.r_inner,
        "outer" => &trace.r_outer,
        "gap" => &trace.gap,
        other => bail!("--series must be inner, outer or gap, got `{other}`"),
    };
    let values: Vec<f64> = series
        .iter()
        .map(|v| v.ok_or_else(|| anyhow!("the drive leaves the two-sphere regime; radii undefined")))
        .collect::<Result<_>>()?;
    let p = spectrum::psd_on_grid(&trace.times, &values)?;
    let f1 = first_frequency(&a).or(first_frequency(&b)).ok_or_else(|| anyhow!("no drive tone to analyse"))?;
    let f2 = first_frequency(&a).and(first_frequency(&b));
    let peaks = spectrum::spectral_peaks(&p, f1, f2);
    for l in &peaks.lines {
        println!("{:<6} {:>10.5} Hz {:>8.1} dB{}", l.label, l.freq, l.db_above_floor, if l.peak { "  peak" } else { "" });
    }
    let result = json!({ "integrated_power": p.integrated_power(), "peaks": peaks });
    args.common.write("spectra.csv", &csv_with_config(&cfg, &p.to_csv()))?;
    args.common.write("spectra_peaks.json", &json_with_config(&cfg, &result)?)?;
    Ok(true)
}

fn localize(args: &LocalizeArgs) -> Result<bool> {
    let cfg = echo(args, "localize")?;
    let p = args
        .common
        .poly(args.poly.as_deref(), |t| Ok(Deformation::canonical(t).at(1.0)?))?;
    let seed = args.common.seed("localize")?;
    let sub = p.coefficient_subalgebra();
    let roots: Vec<Value> = flow::find_attractors(&p, args.starts, seed)
        .iter()
        .map(|x| {
            let loc = match p.localize_isolated_root(x) {
                Ok(Localization::Point(y)) => json!({ "point": coords(&y), "distance_to_subalgebra": sub.distance(&y) }),
                Ok(Localization::SphericalRoot(m)) => json!({ "spherical": m }),
                Err(e) => json!({ "error": e.to_string() }),
            };
            json!({ "root": coords(x), "potential": p.potential(x), "localized": loc })
        })
        .collect();
    println!("{} isolated roots; coefficient subalgebra dimension {}", roots.len(), sub.dimension());
    let result = json!({ "subalgebra_dimension": sub.dimension(), "roots": roots });
    args.common.write("localize.json", &json_with_config(&cfg, &result)?)?;
    Ok(true)
}

fn collapse(args: &CollapseArgs) -> Result<bool> {
    let cfg = echo(args, "collapse")?;
    let d = args.common.deformation(&args.deformation, benchmark_like)?;
    let eps = parse_range(&args.eps)?;
    let policy = StartPolicy {
        angle: args.angle_deg * PI / 180.0,
        seed: args.common.seed("collapse")?,
    };
    let m = flow::measure_collapse(&d, &eps, &policy, &args.flow.config())?;
    println!("slope {:.4}  r2 {:.6}", m.slope, m.r2);
    let mut csv = String::from("epsilon,time\n");
    for (e, t) in m.epsilons.iter().zip(&m.times) {
        csv.push_str(&format!("{e:e},{t:e}\n"));
    }
    args.common.write("collapse.json", &json_with_config(&cfg, &m)?)?;
    args.common.write("collapse.csv", &csv_with_config(&cfg, &csv))?;
    Ok(true)
}

fn basins(args: &BasinsArgs) -> Result<bool> {
    let cfg = echo(args, "basins")?;
    let d = args.common.deformation(&args.deformation, benchmark_like)?;
    let seed = args.common.seed("basins")?;
    let r = flow::basin_decomposition(&d, args.eps, args.samples, seed, &args.flow.config())?;
    println!(
        "{}/{} outside the equator band matched their hemisphere ({:.2}%)",
        r.matched_outside_band,
        r.outside_band,
        100.0 * r.capture_fraction_outside_band()
    );
    let mut csv = String::from("cos_angle,attractor,hemisphere_match,near_separatrix,end_residual\n");
    for s in &r.samples {
        let label = s.attractor.map(|a| a.to_string()).unwrap_or_default();
        let matched = s.hemisphere_match.map(|m| (m as u8).to_string()).unwrap_or_default();
        csv.push_str(&format!(
            "{:e},{label},{matched},{},{:e}\n",
            s.cos_angle, s.near_separatrix as u8, s.end_residual
        ));
    }
    args.common.write("basins.json", &json_with_config(&cfg, &r)?)?;
    args.common.write("basins.csv", &csv_with_config(&cfg, &csv))?;
    Ok(true)
}

fn gibbs_config(c: &ChainArgs, temperature: f64, seed: u64) -> GibbsConfig {
    GibbsConfig {
        chains: c.chains,
        steps: c.steps,
        burn_in: c.burn_in,
        ..GibbsConfig::new(temperature, seed)
    }
}

fn thermo_cmd(args: &ThermoArgs) -> Result<bool> {
    let cfg = echo(args, "thermo")?;
    let d = args.common.deformation(&args.deformation, Deformation::canonical)?;
    let p = d.at(args.eps)?;
    let gc = gibbs_config(&args.chains, args.temperature, args.common.seed("thermo")?);
    let stats = thermo::sample_gibbs(&p, &gc)?;
    let m = thermo::order_parameter(&stats, &Element::basis(p.tag(), 1))?;
    let alpha = stats.var_v / (args.temperature * args.temperature);
    println!(
        "m = {:.4} ± {:.4}  <V> = {:.4e}  Var V / T^2 = {:.4}  acceptance {:.3}",
        m.m, m.stderr, stats.mean_v, alpha, stats.acceptance
    );
    let result = json!({ "order_parameter": m, "alpha_fluctuation": alpha, "stats": stats });
    args.common.write("thermo.json", &json_with_config(&cfg, &result)?)?;
    Ok(true)
}

fn phase_diagram(args: &PhaseDiagramArgs) -> Result<bool> {
    let cfg = echo(args, "phase-diagram")?;
    let d = args.common.deformation(&args.deformation, Deformation::canonical)?;
    let eps = parse_range(&args.eps)?;
    let temps = parse_range(&args.temps)?;
    let gc = gibbs_config(&args.chains, temps[0], args.common.seed("phase-diagram")?);
    let pd = thermo::phase_diagram(&d, &eps, &temps, &gc, &Element::basis(d.tag(), 1))?;
    args.common.write("phase_diagram.csv", &csv_with_config(&cfg, &pd.to_csv()))?;
    Ok(true)
}

fn claims_cmd(args: &ClaimsArgs) -> Result<bool> {
    let cfg = echo(args, "claims")?;
    let mut opts = ClaimOptions {
        quick: args.quick,
        ..ClaimOptions::default()
    };
    if let Some(s) = args.common.seed {
        opts.seed = s;
    }
    let ids: Vec<usize> = match &args.only {
        None => (1..=CLAIM_COUNT).collect(),
        Some(s) => s
            .split(',')
            .map(|t| {
                let id: usize = t.trim().parse().with_context(|| format!("bad claim id `{t}`"))?;
                if claims::name(id).is_none() {
                    bail!("claim ids run from 1 to {CLAIM_COUNT}, got {id}");
                }
                Ok(id)
            })
            .collect::<Result<_>>()?,
    };
    let mut summary = serde_json::Map::new();
    let mut all = true;
    for id in ids {
        let r = claims::run_claim(id, &opts).expect("validated id");
        println!(
            "[{}] {:>2} {:<26} {:>8.2}s (budget {}s)",
            if r.pass { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.runtime_s,
            r.budget_s
        );
        all &= r.pass;
        summary.insert(
            r.key(),
            json!({ "expected": r.expected, "measured": r.measured, "tolerance": r.tolerance, "pass": r.pass }),
        );
    }
    args.common.write("claims.json", &json_with_config(&cfg, &Value::Object(summary))?)?;
    Ok(all)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::AlgebraCheck(a) => algebra_check(a),
        Command::Inflate(a) => inflate(a),
        Command::Symmetry(a) => symmetry(a),
        Command::Breathe(a) => breathe(a),
        Command::Spectra(a) => spectra(a),
        Command::Localize(a) => localize(a),
        Command::Collapse(a) => collapse(a),
        Command::Basins(a) => basins(a),
        Command::Thermo(a) => thermo_cmd(a),
        Command::PhaseDiagram(a) => phase_diagram(a),
        Command::Claims(a) => claims_cmd(a),
    }
}

fn main() -> ExitCode {
    let argv = match config::expand_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
