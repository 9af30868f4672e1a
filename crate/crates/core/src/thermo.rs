//! Metropolis sampling of the Gibbs measure `∝ exp(−V(x)/T)` and the
//! statistics built on it: order parameter, entropy coefficient and
//! `(ε, T)` phase diagrams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Algebra, Element, MAX_DIM};
use crate::error::{Error, Result};
use crate::flow;
use crate::manifolds::{self, central_root_set, sample_stratum};
use crate::poly::{Deformation, Polynomial};

/// Number of batches for batch-means error bars.
pub const BATCHES: usize = 20;

/// Acceptance window the proposal scale is tuned into during burn-in.
pub const TARGET_ACCEPTANCE: (f64, f64) = (0.2, 0.5);

/// Post-adaptation acceptance outside this range fails the diagnostics.
pub const ACCEPTANCE_LIMITS: (f64, f64) = (0.05, 0.8);

const ADAPT_WINDOW: usize = 100;
const JITTER: f64 = 0.25;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GibbsConfig {
    pub temperature: f64,
    pub chains: usize,
    /// Steps per chain, burn-in included.
    pub steps: usize,
    /// Fraction of each chain used for burn-in and scale adaptation.
    pub burn_in: f64,
    /// Starting proposal scale; `None` picks `√T`.
    pub initial_scale: Option<f64>,
    pub seed: u64,
}

impl GibbsConfig {
    pub fn new(temperature: f64, seed: u64) -> Self {
        GibbsConfig {
            temperature,
            chains: 16,
            steps: 40_000,
            burn_in: 0.25,
            initial_scale: None,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return Err(Error::Domain(format!("temperature must be positive, got {}", self.temperature)));
        }
        if !(0.1..=0.9).contains(&self.burn_in) {
            return Err(Error::Domain(format!("burn-in fraction {} outside [0.1, 0.9]", self.burn_in)));
        }
        if self.chains < 2 {
            return Err(Error::Domain("need at least two chains".into()));
        }
        let kept = self.steps - self.burn_steps();
        if kept < BATCHES * 10 {
            return Err(Error::Domain(format!("{} post-burn-in steps is too few", kept)));
        }
        if let Some(s) = self.initial_scale {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::Domain("initial proposal scale must be positive".into()));
            }
        }
        Ok(())
    }

    fn burn_steps(&self) -> usize {
        (self.burn_in * self.steps as f64).round() as usize
    }
}

/// `min(1, exp(−ΔV/T))`.
pub fn acceptance_probability(delta_v: f64, temperature: f64) -> f64 {
    if delta_v <= 0.0 {
        1.0
    } else {
        (-delta_v / temperature).exp()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnsembleStats {
    pub tag: Algebra,
    pub temperature: f64,
    pub mean_v: f64,
    pub var_v: f64,
    /// Batch-means standard error of `mean_v`.
    pub mean_v_stderr: f64,
    pub acceptance: f64,
    /// Effective sample size of `V` from batch means.
    pub ess: f64,
    /// Between/within chain potential scale reduction on `V`.
    pub r_hat: f64,
    /// Proposal scales after adaptation, per chain.
    pub scales: Vec<f64>,
    /// `⟨x_k²⟩` per coordinate.
    pub second_moments: Vec<f64>,
    pub mean_abs_real: f64,
    pub mean_imag_norm: f64,
    pub samples: usize,
    /// `⟨x_i x_j⟩`, row-major `d × d`.
    #[serde(skip)]
    moments: Vec<f64>,
    /// The same matrix per batch.
    #[serde(skip)]
    batch_moments: Vec<Vec<f64>>,
    #[serde(skip)]
    batch_var_v: Vec<f64>,
    /// Optional position records per chain.
    #[serde(skip)]
    pub chains: Vec<Vec<Element>>,
}

impl EnsembleStats {
    pub fn moment(&self, i: usize, j: usize) -> f64 {
        self.moments[i * self.tag.dim() + j]
    }

    /// Fails if the adapted acceptance lies outside the allowed range.
    pub fn check(&self) -> Result<()> {
        if !(ACCEPTANCE_LIMITS.0..=ACCEPTANCE_LIMITS.1).contains(&self.acceptance) {
            return Err(Error::Diagnostic(format!(
                "acceptance {:.3} outside [{}, {}]",
                self.acceptance, ACCEPTANCE_LIMITS.0, ACCEPTANCE_LIMITS.1
            )));
        }
        Ok(())
    }

    /// Batch-means standard error of `var_v`.
    pub fn var_v_stderr(&self) -> f64 {
        stderr(&self.batch_var_v)
    }
}

fn stderr(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    if n < 2.0 {
        return f64::NAN;
    }
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (var / n).sqrt()
}

/// Per-chain accumulator over post-burn-in steps, split into batches.
struct ChainSums {
    accepted: usize,
    proposed: usize,
    scale: f64,
    v_sum: Vec<f64>,
    v_sq: Vec<f64>,
    counts: Vec<usize>,
    moments: Vec<Vec<f64>>,
    abs_re: f64,
    imag_norm: f64,
    record: Vec<Element>,
}

/// Starting points: samples of the root strata (central `P`) or the
/// isolated attractors, assigned round-robin so each gets an equal share;
/// every other chain is jittered off its root.
fn initial_points(p: &Polynomial, chains: usize, seed: u64) -> Vec<Element> {
    let tag = p.tag();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let roots: Vec<Element> = if p.is_central() && tag != Algebra::Real {
        match central_root_set(p) {
            Ok(set) if !set.strata.is_empty() => (0..chains)
                .map(|c| sample_stratum(&set.strata[c % set.strata.len()], 1, &mut rng)[0])
                .collect(),
            _ => Vec::new(),
        }
    } else {
        let att = flow::find_attractors(p, flow::ATTRACTOR_STARTS, seed);
        if att.is_empty() {
            Vec::new()
        } else {
            (0..chains).map(|c| att[c % att.len()]).collect()
        }
    };
    let scale = manifolds::root_scale(p);
    (0..chains)
        .map(|c| match roots.get(c) {
            Some(r) if c % 2 == 0 => *r,
            Some(r) => *r + Element::random(tag, &mut rng).scale(JITTER),
            None => Element::random(tag, &mut rng).scale(scale),
        })
        .collect()
}

fn run_chain(p: &Polynomial, cfg: &GibbsConfig, start: Element, chain: usize, record_every: Option<usize>) -> ChainSums {
    let tag = p.tag();
    let d = tag.dim();
    let t = cfg.temperature;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(chain as u64 + 1);

    let burn = cfg.burn_steps();
    let kept = cfg.steps - burn;
    let batch_len = kept / BATCHES;

    let mut x = start;
    let mut v = p.potential(&x);
    let mut scale = cfg.initial_scale.unwrap_or(t.sqrt());
    let mut window_acc = 0usize;

    let mut sums = ChainSums {
        accepted: 0,
        proposed: 0,
        scale,
        v_sum: vec![0.0; BATCHES],
        v_sq: vec![0.0; BATCHES],
        counts: vec![0; BATCHES],
        moments: vec![vec![0.0; d * d]; BATCHES],
        abs_re: 0.0,
        imag_norm: 0.0,
        record: Vec::new(),
    };

    let mut step_buf = [0.0; MAX_DIM];
    for step in 0..cfg.steps {
        for s in step_buf.iter_mut().take(d) {
            *s = scale * rng.sample::<f64, _>(StandardNormal);
        }
        let cand = x + Element::new(tag, &step_buf[..d]).expect("finite proposal");
        let vc = p.potential(&cand);
        let u: f64 = rng.random();
        let accept = vc.is_finite() && u < acceptance_probability(vc - v, t);
        if accept {
            x = cand;
            v = vc;
        }

        if step < burn {
            window_acc += usize::from(accept);
            if (step + 1) % ADAPT_WINDOW == 0 {
                let rate = window_acc as f64 / ADAPT_WINDOW as f64;
                let (lo, hi) = TARGET_ACCEPTANCE;
                let factor = if rate < lo {
                    0.6
                } else if rate > hi {
                    1.6
                } else {
                    (rate - 0.3).exp()
                };
                scale *= factor;
                window_acc = 0;
            }
            continue;
        }

        sums.proposed += 1;
        sums.accepted += usize::from(accept);
        let k = step - burn;
        let b = (k / batch_len.max(1)).min(BATCHES - 1);
        sums.v_sum[b] += v;
        sums.v_sq[b] += v * v;
        sums.counts[b] += 1;
        let c = x.coords();
        let m = &mut sums.moments[b];
        for i in 0..d {
            for j in i..d {
                m[i * d + j] += c[i] * c[j];
            }
        }
        sums.abs_re += c[0].abs();
        sums.imag_norm += x.imag().norm();
        if let Some(every) = record_every {
            if k.is_multiple_of(every.max(1)) {
                sums.record.push(x);
            }
        }
    }
    sums.scale = scale;
    sums
}

/// Random-walk Metropolis with isotropic Gaussian proposals. Each chain has
/// its own stream of the seeded generator; results are merged in chain
/// order, so the output depends only on the configuration.
pub fn sample_gibbs(p: &Polynomial, cfg: &GibbsConfig) -> Result<EnsembleStats> {
    let stats = sample_gibbs_unchecked(p, cfg, None)?;
    stats.check()?;
    Ok(stats)
}

/// [`sample_gibbs`] without the acceptance diagnostic, optionally recording
/// every `record_every`-th post-burn-in position of each chain.
pub fn sample_gibbs_unchecked(p: &Polynomial, cfg: &GibbsConfig, record_every: Option<usize>) -> Result<EnsembleStats> {
    cfg.validate()?;
    let tag = p.tag();
    let d = tag.dim();
    let starts = initial_points(p, cfg.chains, cfg.seed);
    let runs: Vec<ChainSums> = starts
        .par_iter()
        .enumerate()
        .map(|(c, x0)| run_chain(p, cfg, *x0, c, record_every))
        .collect();

    let mut batch_v = [0.0; BATCHES];
    let mut batch_v2 = [0.0; BATCHES];
    let mut batch_n = vec![0usize; BATCHES];
    let mut batch_m = vec![vec![0.0; d * d]; BATCHES];
    let (mut acc, mut prop) = (0usize, 0usize);
    let (mut abs_re, mut imag_norm) = (0.0, 0.0);
    let mut chain_means = Vec::with_capacity(runs.len());
    let mut chain_vars = Vec::with_capacity(runs.len());
    for r in &runs {
        acc += r.accepted;
        prop += r.proposed;
        abs_re += r.abs_re;
        imag_norm += r.imag_norm;
        let n: usize = r.counts.iter().sum();
        let s: f64 = r.v_sum.iter().sum();
        let s2: f64 = r.v_sq.iter().sum();
        let mean = s / n as f64;
        chain_means.push(mean);
        chain_vars.push(((s2 / n as f64) - mean * mean).max(0.0) * n as f64 / (n as f64 - 1.0));
        for b in 0..BATCHES {
            batch_v[b] += r.v_sum[b];
            batch_v2[b] += r.v_sq[b];
            batch_n[b] += r.counts[b];
            for (acc_m, m) in batch_m[b].iter_mut().zip(&r.moments[b]) {
                *acc_m += m;
            }
        }
    }
    let total: usize = batch_n.iter().sum();
    let nf = total as f64;
    let mean_v = batch_v.iter().sum::<f64>() / nf;
    let var_v = (chain_vars
        .iter()
        .zip(&chain_means)
        .map(|(v, m)| v + (m - mean_v).powi(2))
        .sum::<f64>()
        / runs.len() as f64)
        .max(0.0);

    let mut moments = vec![0.0; d * d];
    for bm in &batch_m {
        for (a, b) in moments.iter_mut().zip(bm) {
            *a += b;
        }
    }
    let symmetrize = |m: &mut Vec<f64>, n: f64| {
        for i in 0..d {
            for j in i..d {
                let v = m[i * d + j] / n;
                m[i * d + j] = v;
                m[j * d + i] = v;
            }
        }
    };
    symmetrize(&mut moments, nf);
    let batch_moments: Vec<Vec<f64>> = batch_m
        .into_iter()
        .zip(&batch_n)
        .map(|(mut m, n)| {
            symmetrize(&mut m, *n as f64);
            m
        })
        .collect();
    let batch_means: Vec<f64> = batch_v.iter().zip(&batch_n).map(|(s, n)| s / *n as f64).collect();
    let batch_var_v: Vec<f64> = (0..BATCHES)
        .map(|b| {
            let n = batch_n[b] as f64;
            let m = batch_means[b];
            (batch_v2[b] / n - m * m).max(0.0)
        })
        .collect();
    let mean_v_stderr = stderr(&batch_means);
    let ess = if mean_v_stderr > 0.0 {
        (var_v / (mean_v_stderr * mean_v_stderr)).min(nf)
    } else {
        nf
    };

    // Gelman–Rubin on V.
    let n_per = total as f64 / runs.len() as f64;
    let grand = chain_means.iter().sum::<f64>() / chain_means.len() as f64;
    let b_between =
        n_per * chain_means.iter().map(|m| (m - grand).powi(2)).sum::<f64>() / (chain_means.len() as f64 - 1.0);
    let w_within = chain_vars.iter().sum::<f64>() / chain_vars.len() as f64;
    let r_hat = if w_within > 0.0 {
        (((n_per - 1.0) / n_per * w_within + b_between / n_per) / w_within).sqrt()
    } else {
        f64::NAN
    };

    Ok(EnsembleStats {
        tag,
        temperature: cfg.temperature,
        mean_v,
        var_v,
        mean_v_stderr,
        acceptance: acc as f64 / prop as f64,
        ess,
        r_hat,
        scales: runs.iter().map(|r| r.scale).collect(),
        second_moments: (0..d).map(|i| moments[i * d + i]).collect(),
        mean_abs_real: abs_re / nf,
        mean_imag_norm: imag_norm / nf,
        samples: total,
        moments,
        batch_moments,
        batch_var_v,
        chains: runs.into_iter().map(|r| r.record).collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OrderParameter {
    pub m: f64,
    /// Batch-means standard error.
    pub stderr: f64,
}

fn alignment(moments: &[f64], d: usize, axis: &Element) -> Option<f64> {
    let u = axis.coords();
    let mut along = 0.0;
    for i in 1..d {
        for j in 1..d {
            along += u[i] * u[j] * moments[i * d + j];
        }
    }
    let total: f64 = (1..d).map(|i| moments[i * d + i]).sum();
    (total > 0.0).then(|| (along / total).clamp(0.0, 1.0))
}

/// `⟨(ν·x)²⟩ / ⟨‖Im x‖²⟩` for a unit imaginary axis `ν`.
pub fn order_parameter(stats: &EnsembleStats, axis: &Element) -> Result<OrderParameter> {
    if axis.tag() != stats.tag {
        return Err(Error::TagMismatch {
            left: stats.tag,
            right: axis.tag(),
        });
    }
    if axis.re() != 0.0 || (axis.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Domain("order-parameter axis must be a unit imaginary element".into()));
    }
    let d = stats.tag.dim();
    let m = alignment(&stats.moments, d, axis)
        .ok_or_else(|| Error::Diagnostic("zero imaginary second moment".into()))?;
    let per_batch: Vec<f64> = stats
        .batch_moments
        .iter()
        .filter_map(|bm| alignment(bm, d, axis))
        .collect();
    Ok(OrderParameter {
        m,
        stderr: stderr(&per_batch),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyPoint {
    pub temperature: f64,
    /// `Var(V)/T²`.
    pub alpha: f64,
    pub alpha_stderr: f64,
    /// `⟨V⟩/T`, the equipartition cross-check.
    pub alpha_mean: f64,
    pub acceptance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyEstimate {
    pub points: Vec<EntropyPoint>,
    pub alpha: f64,
    pub warning: Option<String>,
}

/// Entropy coefficient `α` from the fluctuation estimator `Var(V)/T²`,
/// averaged over a temperature ladder.
pub fn entropy_coefficient(p: &Polynomial, ladder: &[f64], base: &GibbsConfig) -> Result<EntropyEstimate> {
    if ladder.is_empty() {
        return Err(Error::InsufficientData("empty temperature ladder".into()));
    }
    let mut points = Vec::with_capacity(ladder.len());
    for (i, &t) in ladder.iter().enumerate() {
        let cfg = GibbsConfig {
            temperature: t,
            seed: base.seed.wrapping_add(i as u64),
            ..*base
        };
        let s = sample_gibbs(p, &cfg)?;
        points.push(EntropyPoint {
            temperature: t,
            alpha: s.var_v / (t * t),
            alpha_stderr: s.var_v_stderr() / (t * t),
            alpha_mean: s.mean_v / t,
            acceptance: s.acceptance,
        });
    }
    let alpha = points.iter().map(|p| p.alpha).sum::<f64>() / points.len() as f64;
    let lo = points.iter().map(|p| p.alpha).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.alpha).fold(f64::NEG_INFINITY, f64::max);
    let warning = ((hi - lo) > 0.25 * alpha.abs()).then(|| {
        format!("α estimates drift from {lo:.3} to {hi:.3} across the ladder; not yet asymptotic")
    });
    Ok(EntropyEstimate { points, alpha, warning })
}

#[derive(Clone, Debug, Serialize)]
pub struct PhaseCell {
    pub epsilon: f64,
    #[serde(rename = "T")]
    pub temperature: f64,
    pub m: f64,
    pub m_stderr: f64,
    pub mean_v: f64,
    pub var_v: f64,
    pub acceptance: f64,
    pub flag: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhaseDiagram {
    pub cells: Vec<PhaseCell>,
}

impl PhaseDiagram {
    pub fn cell(&self, epsilon: f64, temperature: f64) -> Option<&PhaseCell> {
        self.cells
            .iter()
            .find(|c| c.epsilon == epsilon && c.temperature == temperature)
    }

    /// CSV with header `epsilon,T,m,m_stderr,mean_V,var_V,acceptance,flag`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("epsilon,T,m,m_stderr,mean_V,var_V,acceptance,flag\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{:e},{:e},{:e},{:e},{:e},{}\n",
                c.epsilon,
                c.temperature,
                c.m,
                c.m_stderr,
                c.mean_v,
                c.var_v,
                c.acceptance,
                c.flag.as_deref().unwrap_or("").replace(',', ";")
            ));
        }
        out
    }
}

/// Order parameter over an `(ε, T)` grid, ε-major. Each cell gets its own
/// seed derived from `cfg.seed` and its index.
pub fn phase_diagram(
    d: &Deformation,
    epsilons: &[f64],
    temperatures: &[f64],
    cfg: &GibbsConfig,
    axis: &Element,
) -> Result<PhaseDiagram> {
    if epsilons.is_empty() || temperatures.is_empty() {
        return Err(Error::InsufficientData("phase diagram grids must be nonempty".into()));
    }
    let grid: Vec<(usize, f64, f64)> = epsilons
        .iter()
        .flat_map(|e| temperatures.iter().map(move |t| (*e, *t)))
        .enumerate()
        .map(|(i, (e, t))| (i, e, t))
        .collect();
    let cells: Vec<Result<PhaseCell>> = grid
        .iter()
        .map(|&(i, eps, t)| {
            let p = d.at(eps)?;
            let c = GibbsConfig {
                temperature: t,
                seed: cfg.seed.wrapping_add(1000 * i as u64),
                ..*cfg
            };
            let cell = match sample_gibbs_unchecked(&p, &c, None) {
                Ok(s) => {
                    let mut flag = s.check().err().map(|e| e.to_string());
                    let (m, m_stderr) = match order_parameter(&s, axis) {
                        Ok(o) => (o.m, o.stderr),
                        Err(e) => {
                            flag = Some(e.to_string());
                            (f64::NAN, f64::NAN)
                        }
                    };
                    PhaseCell {
                        epsilon: eps,
                        temperature: t,
                        m,
                        m_stderr,
                        mean_v: s.mean_v,
                        var_v: s.var_v,
                        acceptance: s.acceptance,
                        flag,
                    }
                }
                Err(e) => PhaseCell {
                    epsilon: eps,
                    temperature: t,
                    m: f64::NAN,
                    m_stderr: f64::NAN,
                    mean_v: f64::NAN,
                    var_v: f64::NAN,
                    acceptance: f64::NAN,
                    flag: Some(e.to_string()),
                },
            };
            Ok(cell)
        })
        .collect();
    Ok(PhaseDiagram {
        cells: cells.into_iter().collect::<Result<Vec<_>>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: Algebra = Algebra::Quaternion;

    #[test]
    fn detailed_balance_on_two_states() {
        // States with potentials 0 and 0.3 and a symmetric proposal.
        let t = 0.2;
        let (va, vb): (f64, f64) = (0.0, 0.3);
        let (pa, pb) = ((-va / t).exp(), (-vb / t).exp());
        let flow_ab = pa * acceptance_probability(vb - va, t);
        let flow_ba = pb * acceptance_probability(va - vb, t);
        assert!((flow_ab - flow_ba).abs() < 1e-15);
        assert_eq!(acceptance_probability(-1.0, t), 1.0);
    }

    #[test]
    fn config_validation() {
        let mut c = GibbsConfig::new(0.1, 0);
        assert!(c.validate().is_ok());
        c.burn_in = 0.95;
        assert!(c.validate().is_err());
        let c = GibbsConfig::new(0.0, 0);
        assert!(c.validate().is_err());
    }

    #[test]
    fn gaussian_landscape_moments() {
        // V = ‖x − c‖²: each coordinate is N(c_k, T/2), so ⟨V⟩ = 2T and
        // Var V = 2T² in ℍ.
        let c = Element::new(H, &[0.5, -1.0, 0.25, 2.0]).unwrap();
        let p = Polynomial::new(H, vec![-c, Element::one(H)]).unwrap();
        let t = 0.3;
        let s = sample_gibbs(&p, &GibbsConfig::new(t, 1)).unwrap();
        assert!((s.mean_v - 2.0 * t).abs() < 3.0 * s.mean_v_stderr, "{} ± {}", s.mean_v, s.mean_v_stderr);
        let se = s.var_v_stderr();
        assert!((s.var_v - 2.0 * t * t).abs() < 3.0 * se, "{} ± {se}", s.var_v);
        assert!((0.2..=0.5).contains(&s.acceptance));
        assert!(s.r_hat < 1.05);
    }

    #[test]
    fn deterministic_given_seed() {
        let p = Polynomial::real(H, &[1.0, 0.0, 1.0]).unwrap();
        let cfg = GibbsConfig {
            steps: 4000,
            ..GibbsConfig::new(0.05, 9)
        };
        let a = sample_gibbs(&p, &cfg).unwrap();
        let b = sample_gibbs(&p, &cfg).unwrap();
        assert_eq!(a.mean_v, b.mean_v);
        assert_eq!(a.second_moments, b.second_moments);
    }

    #[test]
    fn low_temperature_concentrates_on_sphere() {
        let p = Polynomial::real(H, &[1.0, 0.0, 1.0]).unwrap();
        let t = 0.01;
        let s = sample_gibbs(&p, &GibbsConfig::new(t, 2)).unwrap();
        assert!((s.mean_imag_norm - 1.0).abs() < 0.05, "{}", s.mean_imag_norm);
        assert!(s.mean_abs_real < 2.0 * t.sqrt(), "{}", s.mean_abs_real);
    }

    #[test]
    fn exchangeable_coordinates_for_central_polynomial() {
        let p = Polynomial::real(H, &[1.0, 0.0, 1.0]).unwrap();
        let s = sample_gibbs(&p, &GibbsConfig::new(0.02, 3)).unwrap();
        let axes = [1, 2, 3].map(|k| order_parameter(&s, &Element::basis(H, k)).unwrap());
        for o in &axes {
            assert!((o.m - 1.0 / 3.0).abs() < 4.0 / s.ess.sqrt() + 3.0 * o.stderr, "{o:?}");
        }
    }

    #[test]
    fn order_parameter_rejects_bad_axis() {
        let p = Polynomial::real(H, &[1.0, 0.0, 1.0]).unwrap();
        let cfg = GibbsConfig {
            steps: 2000,
            ..GibbsConfig::new(0.05, 4)
        };
        let s = sample_gibbs(&p, &cfg).unwrap();
        assert!(order_parameter(&s, &Element::one(H)).is_err());
        assert!(order_parameter(&s, &Element::basis(Algebra::Octonion, 1)).is_err());
    }

    #[test]
    fn phase_diagram_csv() {
        let cfg = GibbsConfig {
            steps: 2000,
            chains: 4,
            ..GibbsConfig::new(0.1, 5)
        };
        let pd = phase_diagram(&Deformation::canonical(H), &[0.0, 1.0], &[0.1], &cfg, &Element::basis(H, 1)).unwrap();
        assert_eq!(pd.cells.len(), 2);
        let csv = pd.to_csv();
        assert!(csv.starts_with("epsilon,T,m,m_stderr,mean_V,var_V,acceptance,flag\n"));
        assert_eq!(csv.lines().count(), 3);
        assert!(pd.cell(1.0, 0.1).unwrap().m > pd.cell(0.0, 0.1).unwrap().m);
    }
}
