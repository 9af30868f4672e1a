//! Power spectra of sampled series: Hann-windowed one-sided densities and
//! harmonic/intermodulation peaks.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tolerances;

/// Forward DFT `X_k = Σ x_n e^{−2πi kn/N}` of any length.
pub fn dft(x: &[Complex64]) -> Vec<Complex64> {
    let mut buf = x.to_vec();
    if buf.len() > 1 {
        FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    }
    buf
}

#[derive(Clone, Debug, Serialize)]
pub struct Psd {
    pub freqs: Vec<f64>,
    pub power: Vec<f64>,
    pub dt: f64,
    pub n: usize,
}

impl Psd {
    pub fn df(&self) -> f64 {
        1.0 / (self.n as f64 * self.dt)
    }

    /// `Σ power · df`; equals the (window-weighted) variance.
    pub fn integrated_power(&self) -> f64 {
        self.power.iter().sum::<f64>() * self.df()
    }

    pub fn nearest_bin(&self, f: f64) -> usize {
        let k = (f / self.df()).round();
        (k.max(0.0) as usize).min(self.power.len() - 1)
    }

    /// CSV with header `freq_hz,power`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("freq_hz,power\n");
        for (f, p) in self.freqs.iter().zip(&self.power) {
            out.push_str(&format!("{f:e},{p:e}\n"));
        }
        out
    }
}

/// Periodic Hann window of length `n`.
fn hann(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| 0.5 - 0.5 * (2.0 * PI * i as f64 / n as f64).cos())
        .collect()
}

/// One-sided power spectral density of a uniformly sampled series.
///
/// The mean is removed and a periodic Hann window applied; bins are scaled
/// by `dt/Σw²` and doubled away from DC and Nyquist, so `Σ power·df` equals
/// the window-weighted variance. An on-grid unit sinusoid peaks at
/// `0.25·N · 2dt·(Σw)²/(N·Σw²)`, i.e. `N·dt/3` for the Hann window.
pub fn psd(series: &[f64], dt: f64) -> Result<Psd> {
    let n = series.len();
    if n < 16 {
        return Err(Error::InsufficientData(format!("psd needs at least 16 samples, got {n}")));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Domain(format!("sample spacing must be positive, got {dt}")));
    }
    if series.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mean = series.iter().sum::<f64>() / n as f64;
    let w = hann(n);
    let w2: f64 = w.iter().map(|v| v * v).sum();
    let x: Vec<Complex64> = series
        .iter()
        .zip(&w)
        .map(|(v, wi)| Complex64::new((v - mean) * wi, 0.0))
        .collect();
    let spec = dft(&x);
    let half = n / 2;
    let mut power = Vec::with_capacity(half + 1);
    let mut freqs = Vec::with_capacity(half + 1);
    for (k, z) in spec.iter().enumerate().take(half + 1) {
        let mut p = dt * z.norm_sqr() / w2;
        let nyquist = n.is_multiple_of(2) && k == half;
        if k != 0 && !nyquist {
            p *= 2.0;
        }
        power.push(p);
        freqs.push(k as f64 / (n as f64 * dt));
    }
    Ok(Psd { freqs, power, dt, n })
}

/// [`psd`] for an explicit time grid, which must be uniform.
pub fn psd_on_grid(times: &[f64], series: &[f64]) -> Result<Psd> {
    if times.len() != series.len() {
        return Err(Error::Domain("times and series differ in length".into()));
    }
    if times.len() < 2 {
        return Err(Error::InsufficientData("psd needs at least 16 samples".into()));
    }
    let dt = (times[times.len() - 1] - times[0]) / (times.len() - 1) as f64;
    let uniform = times
        .windows(2)
        .all(|w| ((w[1] - w[0]) - dt).abs() <= 1e-9 * dt.abs().max(f64::MIN_POSITIVE));
    if !uniform {
        return Err(Error::Domain("time grid is not uniform".into()));
    }
    psd(series, dt)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralLine {
    pub label: String,
    pub freq: f64,
    pub bin: usize,
    pub power: f64,
    pub db_above_floor: f64,
    pub peak: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeakReport {
    pub floor: f64,
    pub lines: Vec<SpectralLine>,
}

impl PeakReport {
    pub fn line(&self, label: &str) -> Option<&SpectralLine> {
        self.lines.iter().find(|l| l.label == label)
    }
}

/// Noise floor: the median bin, but no lower than `1e−12` of the maximum.
pub fn noise_floor(p: &Psd) -> f64 {
    let mut sorted = p.power.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    let max = sorted.last().copied().unwrap_or(0.0);
    median.max(tolerances::PSD_FLOOR_REL * max)
}

/// Power at `f₁, 2f₁, 3f₁` and, with a second drive, `f₂, f₁+f₂, |f₁−f₂|`,
/// each at its nearest bin. A line is a peak when it is a local maximum at
/// least 10 dB above the noise floor.
pub fn spectral_peaks(p: &Psd, f1: f64, f2: Option<f64>) -> PeakReport {
    let floor = noise_floor(p);
    let mut targets = vec![("f1".to_string(), f1), ("2f1".to_string(), 2.0 * f1), ("3f1".to_string(), 3.0 * f1)];
    if let Some(f2) = f2 {
        targets.push(("f2".to_string(), f2));
        targets.push(("f1+f2".to_string(), f1 + f2));
        targets.push(("f1-f2".to_string(), (f1 - f2).abs()));
    }
    let nyquist = 0.5 / p.dt;
    let lines = targets
        .into_iter()
        .filter(|(_, f)| *f > 0.0 && *f <= nyquist)
        .map(|(label, freq)| {
            let bin = p.nearest_bin(freq);
            let power = p.power[bin];
            let db_above_floor = if floor > 0.0 && power > 0.0 {
                10.0 * (power / floor).log10()
            } else {
                f64::NEG_INFINITY
            };
            let left = if bin > 0 { p.power[bin - 1] } else { 0.0 };
            let right = p.power.get(bin + 1).copied().unwrap_or(0.0);
            let local_max = power >= left && power >= right;
            SpectralLine {
                label,
                freq,
                bin,
                power,
                db_above_floor,
                peak: local_max && db_above_floor >= tolerances::PEAK_DB,
            }
        })
        .collect();
    PeakReport { floor, lines }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn naive_dft(x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| x[j] * Complex64::from_polar(1.0, -2.0 * PI * ((k * j) % n) as f64 / n as f64))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn fft_matches_naive_dft() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [1usize, 2, 8, 64, 3, 5, 12, 100, 127] {
            let x: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(StandardNormal.sample(&mut rng), StandardNormal.sample(&mut rng)))
                .collect();
            let a = dft(&x);
            let b = naive_dft(&x);
            let err = a.iter().zip(&b).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
            assert!(err < 1e-10 * n as f64, "n={n} err={err}");
        }
    }

    #[test]
    fn sinusoid_peak_height_and_location() {
        let (n, dt) = (1024, 0.01);
        let series: Vec<f64> = (0..n).map(|i| (2.0 * PI * 2.0 * i as f64 * dt).sin()).collect();
        let p = psd(&series, dt).unwrap();
        let kmax = (0..p.power.len()).max_by(|&a, &b| p.power[a].total_cmp(&p.power[b])).unwrap();
        // 2 Hz is off-grid at this resolution (df ≈ 0.0977); the nearest bin wins.
        assert_eq!(kmax, p.nearest_bin(2.0));

        // On-grid tone: bin 64 of 1024.
        let f = 64.0 / (n as f64 * dt);
        let series: Vec<f64> = (0..n).map(|i| (2.0 * PI * f * i as f64 * dt).sin()).collect();
        let p = psd(&series, dt).unwrap();
        let w = hann(n);
        let sw: f64 = w.iter().sum();
        let sw2: f64 = w.iter().map(|v| v * v).sum();
        let want = 0.25 * n as f64 * 2.0 * dt * sw * sw / (n as f64 * sw2);
        assert!((p.power[64] / want - 1.0).abs() < 0.03);
        assert!((p.integrated_power() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn two_tones_give_two_dominant_bins() {
        let (n, dt) = (4096, 0.0625);
        let (f1, f2) = (0.125, 0.1875);
        let series: Vec<f64> = (0..n)
            .map(|i| {
                let t = i as f64 * dt;
                (2.0 * PI * f1 * t).sin() + 0.7 * (2.0 * PI * f2 * t).sin()
            })
            .collect();
        let p = psd(&series, dt).unwrap();
        let floor = noise_floor(&p);
        let strong: Vec<usize> = (1..p.power.len() - 1)
            .filter(|&k| p.power[k] > p.power[k - 1] && p.power[k] > p.power[k + 1] && p.power[k] > 1e3 * floor)
            .collect();
        assert_eq!(strong, vec![p.nearest_bin(f1), p.nearest_bin(f2)]);
        let r = spectral_peaks(&p, f1, Some(f2));
        assert!(r.line("f1").unwrap().peak && r.line("f2").unwrap().peak);
        assert!(!r.line("2f1").unwrap().peak && !r.line("f1+f2").unwrap().peak);
    }

    #[test]
    fn parseval_on_white_noise() {
        let n = 1 << 18;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let series: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let mean = series.iter().sum::<f64>() / n as f64;
        let var = series.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64;
        let p = psd(&series, 0.5).unwrap();
        assert!((p.integrated_power() / var - 1.0).abs() < 0.01);
    }

    #[test]
    fn non_power_of_two_length() {
        let (n, dt) = (1000, 0.01);
        let f = 50.0 / (n as f64 * dt);
        let series: Vec<f64> = (0..n).map(|i| (2.0 * PI * f * i as f64 * dt).sin()).collect();
        let p = psd(&series, dt).unwrap();
        assert!((p.integrated_power() - 0.5).abs() < 1e-9);
        assert_eq!(p.freqs.len(), 501);
    }

    #[test]
    fn constant_series_has_no_peaks() {
        let p = psd(&[3.0; 64], 0.1).unwrap();
        let r = spectral_peaks(&p, 1.0, Some(2.0));
        assert!(r.lines.iter().all(|l| !l.peak));
    }

    #[test]
    fn errors() {
        assert!(psd(&[1.0; 8], 0.1).is_err());
        assert!(psd(&[1.0; 32], 0.0).is_err());
        let mut t: Vec<f64> = (0..32).map(|i| i as f64 * 0.1).collect();
        t[5] += 0.01;
        assert!(psd_on_grid(&t, &[0.0; 32]).is_err());
    }

    #[test]
    fn csv_header() {
        let p = psd(&[0.0, 1.0].repeat(16), 1.0).unwrap();
        assert!(p.to_csv().starts_with("freq_hz,power\n"));
    }
}
