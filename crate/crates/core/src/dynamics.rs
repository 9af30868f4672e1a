//! Breathing modes of the central trinomial `x^{2k} + a(t)x^k + b(t)`.
//!
//! With `y = x^k` the trinomial becomes the auxiliary quadratic
//! `y² + a y + b`. Each negative real auxiliary root `y` yields roots of
//! modulus `|y|^{1/k}` that fill spheres in ℍ and 𝕆; both roots are negative
//! exactly when `Δ = a² − 4b > 0`, `a > 0` and `b > 0`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances;

/// One sinusoidal component `amplitude·sin(2π·frequency·t + phase)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tone {
    pub amplitude: f64,
    /// Hz.
    pub frequency: f64,
    /// rad.
    pub phase: f64,
}

/// `offset + Σ amplitude·sin(2π f t + phase)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Waveform {
    pub offset: f64,
    #[serde(default)]
    pub components: Vec<Tone>,
}

impl Waveform {
    pub fn new(offset: f64, components: Vec<Tone>) -> Result<Self> {
        let finite = offset.is_finite()
            && components
                .iter()
                .all(|c| c.amplitude.is_finite() && c.frequency.is_finite() && c.phase.is_finite());
        if !finite {
            return Err(Error::NonFinite);
        }
        Ok(Waveform { offset, components })
    }

    pub fn constant(offset: f64) -> Self {
        Waveform {
            offset,
            components: Vec::new(),
        }
    }

    pub fn sine(offset: f64, amplitude: f64, frequency: f64) -> Self {
        Waveform {
            offset,
            components: vec![Tone {
                amplitude,
                frequency,
                phase: 0.0,
            }],
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        self.offset
            + self
                .components
                .iter()
                .map(|c| c.amplitude * (std::f64::consts::TAU * c.frequency * t + c.phase).sin())
                .sum::<f64>()
    }

    pub fn derivative(&self, t: f64) -> f64 {
        self.components
            .iter()
            .map(|c| {
                let w = std::f64::consts::TAU * c.frequency;
                c.amplitude * w * (w * t + c.phase).cos()
            })
            .sum()
    }
}

/// A scalar drive `t ↦ value`.
pub trait Drive: Sync {
    fn value(&self, t: f64) -> f64;
}

impl Drive for Waveform {
    fn value(&self, t: f64) -> f64 {
        Waveform::value(self, t)
    }
}

impl<F: Fn(f64) -> f64 + Sync> Drive for F {
    fn value(&self, t: f64) -> f64 {
        self(t)
    }
}

pub fn discriminant(a: f64, b: f64) -> f64 {
    a * a - 4.0 * b
}

/// Root radii of the trinomial for given `(a, b, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Radii {
    /// Two distinct negative auxiliary roots.
    Spheres { inner: f64, outer: f64 },
    /// Double negative auxiliary root (`Δ = 0`): one sphere.
    Degenerate { radius: f64 },
    /// Some auxiliary root is a non-negative real.
    RealRoots,
    /// `Δ < 0`: the auxiliary roots are a complex pair.
    ComplexPair,
}

impl Radii {
    pub fn is_valid(&self) -> bool {
        matches!(self, Radii::Spheres { .. } | Radii::Degenerate { .. })
    }

    /// `(inner, outer)` when valid; a degenerate pair repeats the radius.
    pub fn pair(&self) -> Option<(f64, f64)> {
        match *self {
            Radii::Spheres { inner, outer } => Some((inner, outer)),
            Radii::Degenerate { radius } => Some((radius, radius)),
            _ => None,
        }
    }
}

/// Radii `|y_±|^{1/k}` of the spheres coming from negative auxiliary roots
/// `y_± = (−a ± √Δ)/2`.
pub fn radii(a: f64, b: f64, k: u32) -> Result<Radii> {
    if k == 0 {
        return Err(Error::Domain("trinomial order k must be at least 1".into()));
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite);
    }
    let delta = discriminant(a, b);
    let root = |y: f64| y.abs().powf(1.0 / k as f64);
    if delta < 0.0 {
        return Ok(Radii::ComplexPair);
    }
    if delta == 0.0 {
        let y = -a / 2.0;
        return Ok(if y < 0.0 {
            Radii::Degenerate { radius: root(y) }
        } else {
            Radii::RealRoots
        });
    }
    if !(a > 0.0 && b > 0.0) {
        return Ok(Radii::RealRoots);
    }
    let s = delta.sqrt();
    // y_+ = (−a + s)/2 computed as 2b/(−a − s) to avoid cancellation.
    let y_minus = (-a - s) / 2.0;
    let y_plus = b / y_minus;
    Ok(Radii::Spheres {
        inner: root(y_plus),
        outer: root(y_minus),
    })
}

/// Rates `d|y_∓|/dt` for the inner and outer spheres, which equal
/// `d(R²)/dt` at `k = 2` and `d(R^k)/dt` in general.
pub fn radial_velocity(a: f64, a_dot: f64, b: f64, b_dot: f64) -> Result<(f64, f64)> {
    let delta = discriminant(a, b);
    if !(delta > 0.0) {
        return Err(Error::Domain(format!("radial velocity needs Δ > 0, got {delta}")));
    }
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain("radial velocity needs a > 0 and b > 0".into()));
    }
    let s = delta.sqrt();
    let delta_dot = 2.0 * a * a_dot - 4.0 * b_dot;
    // |y_∓| = (a ∓ √Δ)/2.
    let v_inner = (a_dot - delta_dot / (2.0 * s)) / 2.0;
    let v_outer = (a_dot + delta_dot / (2.0 * s)) / 2.0;
    Ok((v_inner, v_outer))
}

#[derive(Clone, Debug, Serialize)]
pub struct BreathingTrace {
    pub k: u32,
    pub times: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub delta: Vec<f64>,
    pub r_inner: Vec<Option<f64>>,
    pub r_outer: Vec<Option<f64>>,
    pub gap: Vec<Option<f64>>,
    pub valid: Vec<bool>,
}

impl BreathingTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dt(&self) -> f64 {
        if self.times.len() < 2 {
            return 0.0;
        }
        self.times[1] - self.times[0]
    }

    /// CSV with header `t,a,b,delta,r_inner,r_outer,gap,valid`; radii are
    /// left empty where invalid.
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
        let mut out = String::from("t,a,b,delta,r_inner,r_outer,gap,valid\n");
        for i in 0..self.len() {
            out.push_str(&format!(
                "{:e},{:e},{:e},{:e},{},{},{},{}\n",
                self.times[i],
                self.a[i],
                self.b[i],
                self.delta[i],
                opt(self.r_inner[i]),
                opt(self.r_outer[i]),
                opt(self.gap[i]),
                u8::from(self.valid[i])
            ));
        }
        out
    }
}

/// Uniform grid `t0, t0 + dt, …` up to `t1` (inclusive within rounding).
pub fn time_grid(t0: f64, t1: f64, dt: f64) -> Result<Vec<f64>> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Domain(format!("time step must be positive, got {dt}")));
    }
    if !(t0.is_finite() && t1.is_finite() && t1 >= t0) {
        return Err(Error::Domain(format!("bad time span [{t0}, {t1}]")));
    }
    let n = ((t1 - t0) / dt + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| t0 + i as f64 * dt).collect())
}

/// Samples the drives, discriminant and radii on a uniform grid.
pub fn simulate_breathing(k: u32, a: &dyn Drive, b: &dyn Drive, t_span: (f64, f64), dt: f64) -> Result<BreathingTrace> {
    if k == 0 {
        return Err(Error::Domain("trinomial order k must be at least 1".into()));
    }
    let times = time_grid(t_span.0, t_span.1, dt)?;
    let rows: Vec<(f64, f64, Radii)> = times
        .par_iter()
        .map(|&t| {
            let (av, bv) = (a.value(t), b.value(t));
            let r = radii(av, bv, k).unwrap_or(Radii::RealRoots);
            (av, bv, r)
        })
        .collect();
    let mut trace = BreathingTrace {
        k,
        times,
        a: Vec::with_capacity(rows.len()),
        b: Vec::with_capacity(rows.len()),
        delta: Vec::with_capacity(rows.len()),
        r_inner: Vec::with_capacity(rows.len()),
        r_outer: Vec::with_capacity(rows.len()),
        gap: Vec::with_capacity(rows.len()),
        valid: Vec::with_capacity(rows.len()),
    };
    for (av, bv, r) in rows {
        trace.a.push(av);
        trace.b.push(bv);
        trace.delta.push(discriminant(av, bv));
        let pair = r.pair();
        trace.r_inner.push(pair.map(|p| p.0));
        trace.r_outer.push(pair.map(|p| p.1));
        trace.gap.push(pair.map(|p| p.1 - p.0));
        trace.valid.push(r.is_valid());
    }
    Ok(trace)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Boundary {
    /// `Δ = 0`: the two spheres merge.
    Discriminant,
    /// `b = 0`: an auxiliary root passes through zero.
    BZero,
    /// `a = 0`.
    AZero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CrossingKind {
    Transversal,
    Tangential,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CrossingEvent {
    pub boundary: Boundary,
    pub t_c: f64,
    pub kind: CrossingKind,
    /// Derivative of the boundary quantity at `t_c` (`Δ̇` for the
    /// discriminant).
    pub rate: f64,
    /// Boundary quantity at `t_c`.
    pub residual: f64,
}

fn centered_derivative(g: &dyn Fn(f64) -> f64, t: f64, scale: f64) -> f64 {
    let h = 1e-6 * scale.max(1e-3);
    (g(t + h) - g(t - h)) / (2.0 * h)
}

fn bisect(g: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut glo = g(lo);
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm.abs() < tolerances::CROSSING_DELTA && (hi - lo) < 1e-12 * (1.0 + mid.abs()) {
            break;
        }
        if gm == 0.0 || mid == lo || mid == hi {
            break;
        }
        if (gm > 0.0) == (glo > 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    mid
}

/// Minimizes `s·g` on `[lo, hi]` by golden-section search.
fn golden_min(g: &dyn Fn(f64) -> f64, s: f64, mut lo: f64, mut hi: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let f = |t: f64| s * g(t);
    let mut c = hi - r * (hi - lo);
    let mut d = lo + r * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (hi - lo) < 1e-14 * (1.0 + lo.abs()) {
            break;
        }
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - r * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + r * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

fn zeros_of(g: &dyn Fn(f64) -> f64, times: &[f64]) -> Vec<f64> {
    let vals: Vec<f64> = times.iter().map(|&t| g(t)).collect();
    let n = vals.len();
    let mut out = Vec::new();
    for i in 0..n {
        if vals[i] == 0.0 {
            out.push(times[i]);
            continue;
        }
        if i + 1 < n && vals[i + 1] != 0.0 && (vals[i] > 0.0) != (vals[i + 1] > 0.0) {
            out.push(bisect(g, times[i], times[i + 1]));
            continue;
        }
        // A touch between grid points: a strict local minimum of |g| with no
        // sign change around it.
        if i > 0 && i + 1 < n {
            let (l, m, r) = (vals[i - 1], vals[i], vals[i + 1]);
            let same_sign = (l > 0.0) == (m > 0.0) && (r > 0.0) == (m > 0.0) && l != 0.0 && r != 0.0;
            if same_sign && m.abs() <= l.abs() && m.abs() < r.abs() {
                let s = m.signum();
                let tm = golden_min(g, s, times[i - 1], times[i + 1]);
                let gm = g(tm);
                if gm.abs() < tolerances::CROSSING_DELTA {
                    out.push(tm);
                } else if (gm > 0.0) != (m > 0.0) {
                    // Dips through zero and back between grid points.
                    out.push(bisect(g, times[i - 1], tm));
                    out.push(bisect(g, tm, times[i + 1]));
                }
            }
        }
    }
    out
}

/// Crossings of `Δ = 0`, `b = 0` and `a = 0` over the trace's time grid,
/// located by bracketing and bisection, plus touches found as local minima
/// of `|Δ|`. A crossing is tangential when its rate is below
/// `1e−6·max|rate|` over the grid.
pub fn detect_boundaries(a: &dyn Drive, b: &dyn Drive, trace: &BreathingTrace) -> Result<Vec<CrossingEvent>> {
    if trace.is_empty() {
        return Err(Error::InsufficientData("empty trace".into()));
    }
    let span = trace.times[trace.len() - 1] - trace.times[0];
    let scale = if span > 0.0 { span } else { 1.0 };
    let delta = |t: f64| discriminant(a.value(t), b.value(t));
    let bq = |t: f64| b.value(t);
    let aq = |t: f64| a.value(t);
    let quantities: [(Boundary, &dyn Fn(f64) -> f64); 3] =
        [(Boundary::Discriminant, &delta), (Boundary::BZero, &bq), (Boundary::AZero, &aq)];

    let mut events = Vec::new();
    for (boundary, g) in quantities {
        if trace.times.iter().all(|&t| g(t) == 0.0) {
            continue;
        }
        let max_rate = trace
            .times
            .iter()
            .map(|&t| centered_derivative(g, t, scale).abs())
            .fold(0.0, f64::max);
        let v_tol = tolerances::TANGENTIAL_REL * max_rate;
        for t_c in zeros_of(g, &trace.times) {
            let rate = centered_derivative(g, t_c, scale);
            let kind = if rate.abs() < v_tol || max_rate == 0.0 {
                CrossingKind::Tangential
            } else {
                CrossingKind::Transversal
            };
            events.push(CrossingEvent {
                boundary,
                t_c,
                kind,
                rate,
                residual: g(t_c),
            });
        }
    }
    events.sort_by(|x, y| x.t_c.total_cmp(&y.t_c));
    Ok(events)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(5.0, 4.0), 9.0);
        assert_eq!(discriminant(0.0, 0.0), 0.0);
        assert_eq!(discriminant(2.0, 1.0), 0.0);
    }

    #[test]
    fn radii_examples() {
        assert_eq!(radii(5.0, 4.0, 2).unwrap(), Radii::Spheres { inner: 1.0, outer: 2.0 });
        assert_eq!(radii(-5.0, 4.0, 2).unwrap(), Radii::RealRoots);
        assert_eq!(radii(2.0, 1.0, 2).unwrap(), Radii::Degenerate { radius: 1.0 });
        assert_eq!(radii(1.0, 1.0, 2).unwrap(), Radii::ComplexPair);
        assert_eq!(radii(3.0, -1.0, 2).unwrap(), Radii::RealRoots);
        assert!(radii(5.0, 4.0, 0).is_err());
    }

    #[test]
    fn radii_general_k() {
        // y = −1, −4 and k = 3: moduli 1 and 4^{1/3}.
        let r = radii(5.0, 4.0, 3).unwrap().pair().unwrap();
        assert!((r.0 - 1.0).abs() < 1e-15);
        assert!((r.1 - 4f64.cbrt()).abs() < 1e-15);
    }

    #[test]
    fn vieta_for_k2() {
        for (a, b) in [(5.0, 4.0), (3.0, 0.5), (10.0, 24.9), (2.5, 1e-6)] {
            let (ri, ro) = radii(a, b, 2).unwrap().pair().unwrap();
            assert!((ri * ri + ro * ro - a).abs() < 1e-12 * a);
            assert!((ri * ri * ro * ro - b).abs() < 1e-12 * b.max(1.0));
        }
    }

    #[test]
    fn static_drive_has_no_velocity() {
        assert_eq!(radial_velocity(5.0, 0.0, 4.0, 0.0).unwrap(), (0.0, 0.0));
        assert!(radial_velocity(2.0, 1.0, 1.0, 0.0).is_err());
        assert!(radial_velocity(-5.0, 1.0, 4.0, 0.0).is_err());
    }

    #[test]
    fn velocity_matches_finite_differences() {
        let a = Waveform::sine(5.0, 0.5, 0.1);
        let b = Waveform::sine(4.0, 0.3, 0.07);
        for &t in &[0.3, 1.7, 4.2, 8.8] {
            let (vi, vo) = radial_velocity(a.value(t), a.derivative(t), b.value(t), b.derivative(t)).unwrap();
            let r2 = |s: f64| radii(a.value(s), b.value(s), 2).unwrap().pair().unwrap();
            let h = 1e-5;
            let (p, m) = (r2(t + h), r2(t - h));
            let fi = (p.0 * p.0 - m.0 * m.0) / (2.0 * h);
            let fo = (p.1 * p.1 - m.1 * m.1) / (2.0 * h);
            assert!((vi - fi).abs() < 1e-4 * vi.abs().max(1e-3), "{vi} vs {fi}");
            assert!((vo - fo).abs() < 1e-4 * vo.abs().max(1e-3), "{vo} vs {fo}");
        }
    }

    #[test]
    fn velocity_blows_up_at_transversal_merge() {
        // Δ = t with a = 2: Δ̇ = 1, |v| ~ 1/(4√Δ).
        let v = |d: f64| radial_velocity(2.0, 0.0, 1.0 - d / 4.0, -0.25).unwrap().0.abs();
        let r = v(1e-8) / v(1e-6);
        assert!((r - 10.0).abs() < 0.01, "{r}");
    }

    #[test]
    fn velocity_bounded_at_tangential_merge() {
        // Δ = t², a = 2, b = 1 − t²/4: Δ̇/(2√Δ) = sign(t).
        for &t in &[1e-2, 1e-4, 1e-6] {
            let (vi, vo) = radial_velocity(2.0, 0.0, 1.0 - t * t / 4.0, -t / 2.0).unwrap();
            // Δ = 4 − 4b loses about 4e-16/t² relative to cancellation.
            assert!((vi.abs() - 0.5).abs() < 1e-3 && (vo.abs() - 0.5).abs() < 1e-3);
        }
    }

    #[test]
    fn constant_drive_gives_constant_radii() {
        let tr = simulate_breathing(2, &Waveform::constant(5.0), &Waveform::constant(4.0), (0.0, 10.0), 0.5).unwrap();
        assert_eq!(tr.len(), 21);
        assert!(tr.r_inner.iter().all(|r| *r == Some(1.0)));
        assert!(tr.r_outer.iter().all(|r| *r == Some(2.0)));
    }

    #[test]
    fn oscillating_drive_matches_pointwise_radii() {
        let a = Waveform::sine(5.0, 0.5, 0.1);
        let b = Waveform::constant(4.0);
        let tr = simulate_breathing(2, &a, &b, (0.0, 20.0), 0.05).unwrap();
        for i in 0..tr.len() {
            let want = radii(a.value(tr.times[i]), 4.0, 2).unwrap().pair().unwrap();
            assert_eq!(tr.r_inner[i], Some(want.0));
            assert!((tr.delta[i] - (tr.a[i] * tr.a[i] - 4.0 * tr.b[i])).abs() < 1e-14);
        }
        let gaps: Vec<f64> = tr.gap.iter().map(|g| g.unwrap()).collect();
        let spread = gaps.iter().copied().fold(f64::MIN, f64::max) - gaps.iter().copied().fold(f64::MAX, f64::min);
        assert!(spread > 0.1);
    }

    #[test]
    fn crossing_drive_flips_validity() {
        let a = Waveform::constant(2.0);
        let b = |t: f64| 1.0 - t / 4.0;
        let tr = simulate_breathing(2, &a, &b, (-1.0, 1.0), 0.1).unwrap();
        assert!(!tr.valid[0]);
        assert!(*tr.valid.last().unwrap());
    }

    fn events(a: &dyn Drive, b: &dyn Drive, dt: f64) -> Vec<CrossingEvent> {
        let tr = simulate_breathing(2, a, b, (-1.0, 1.0), dt).unwrap();
        detect_boundaries(a, b, &tr)
            .unwrap()
            .into_iter()
            .filter(|e| e.boundary == Boundary::Discriminant)
            .collect()
    }

    #[test]
    fn linear_discriminant_is_transversal() {
        let a = Waveform::constant(2.0);
        let b = |t: f64| 1.0 - t / 4.0;
        for dt in [0.1, 0.05, 0.013] {
            let ev = events(&a, &b, dt);
            assert_eq!(ev.len(), 1, "{ev:?}");
            assert_eq!(ev[0].kind, CrossingKind::Transversal);
            assert!(ev[0].t_c.abs() < 1e-9);
            assert!(ev[0].residual.abs() < 1e-10);
            assert!((ev[0].rate - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn quadratic_discriminant_is_tangential() {
        let a = Waveform::constant(2.0);
        let b = |t: f64| 1.0 - t * t / 4.0;
        for dt in [0.1, 0.05, 0.013, 0.0065] {
            let ev = events(&a, &b, dt);
            assert_eq!(ev.len(), 1, "dt {dt}: {ev:?}");
            assert_eq!(ev[0].kind, CrossingKind::Tangential);
            assert!(ev[0].residual.abs() < 1e-10);
        }
    }

    #[test]
    fn no_sign_change_no_events() {
        let ev = events(&Waveform::sine(5.0, 0.5, 0.3), &Waveform::constant(4.0), 0.01);
        assert!(ev.is_empty());
    }

    #[test]
    fn b_and_a_boundaries() {
        let a = |t: f64| t + 0.25;
        let b = |t: f64| 0.5 * t;
        let tr = simulate_breathing(2, &a, &b, (-1.0, 1.0), 0.1).unwrap();
        let ev = detect_boundaries(&a, &b, &tr).unwrap();
        let find = |k| ev.iter().find(|e| e.boundary == k).unwrap();
        assert!(find(Boundary::BZero).t_c.abs() < 1e-12);
        assert!((find(Boundary::AZero).t_c + 0.25).abs() < 1e-12);
    }

    #[test]
    fn trace_csv() {
        let a = Waveform::constant(2.0);
        let b = |t: f64| 1.0 - t / 4.0;
        let tr = simulate_breathing(2, &a, &b, (-1.0, 1.0), 0.5).unwrap();
        let csv = tr.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("t,a,b,delta,r_inner,r_outer,gap,valid"));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), 8);
        assert_eq!(first[4], "");
        assert_eq!(first[7], "0");
    }

    #[test]
    fn bad_grid() {
        assert!(simulate_breathing(2, &Waveform::constant(1.0), &Waveform::constant(1.0), (0.0, 1.0), 0.0).is_err());
        assert!(time_grid(1.0, 0.0, 0.1).is_err());
    }
}
