//! Config files, range syntax and drive literals.

use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;

use rootflow::dynamics::{Tone, Waveform};

/// Splices the flags from a `--config` JSON file in right after the
/// subcommand, so anything given on the command line overrides them.
pub fn expand_config(argv: Vec<String>) -> Result<Vec<String>> {
    let mut path = None;
    for (i, a) in argv.iter().enumerate() {
        if a == "--config" {
            path = Some(argv.get(i + 1).ok_or_else(|| anyhow!("--config needs a file"))?.clone());
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else {
        return Ok(argv);
    };
    if argv.len() < 2 {
        return Ok(argv);
    }
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading config {path}"))?;
    let flags = config_flags(&text).with_context(|| format!("config {path}"))?;
    let mut out = argv[..2].to_vec();
    out.extend(flags);
    out.extend_from_slice(&argv[2..]);
    Ok(out)
}

/// Flat JSON object to flags: `{"seed": 3, "quick": true}` becomes
/// `--seed 3 --quick`. Arrays and objects are passed as JSON text.
pub fn config_flags(text: &str) -> Result<Vec<String>> {
    let v: Value = serde_json::from_str(text)?;
    let Value::Object(map) = v else {
        bail!("config must be a JSON object");
    };
    let mut flags = Vec::new();
    for (key, value) in map {
        let flag = format!("--{}", key.replace('_', "-"));
        if flag == "--config" {
            continue;
        }
        match value {
            Value::Bool(true) => flags.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::String(s) => flags.extend([flag, s]),
            Value::Number(n) => flags.extend([flag, n.to_string()]),
            other => flags.extend([flag, other.to_string()]),
        }
    }
    Ok(flags)
}

/// `lo:hi:logN`, `lo:hi:linN`, a comma list or a single value.
pub fn parse_range(s: &str) -> Result<Vec<f64>> {
    let num = |t: &str| -> Result<f64> {
        let v: f64 = t.trim().parse().with_context(|| format!("bad number `{t}` in `{s}`"))?;
        if !v.is_finite() {
            bail!("non-finite value in `{s}`");
        }
        Ok(v)
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [lo, hi, spec] => {
            let (lo, hi) = (num(lo)?, num(hi)?);
            let (log, n) = if let Some(n) = spec.strip_prefix("log") {
                (true, n)
            } else if let Some(n) = spec.strip_prefix("lin") {
                (false, n)
            } else {
                bail!("range `{s}` must end in logN or linN");
            };
            let n: usize = n.parse().with_context(|| format!("bad count in `{s}`"))?;
            if n == 0 {
                bail!("range `{s}` has no points");
            }
            if log && (lo <= 0.0 || hi <= 0.0) {
                bail!("log range `{s}` needs positive bounds");
            }
            if n == 1 {
                return Ok(vec![lo]);
            }
            Ok((0..n)
                .map(|i| {
                    let f = i as f64 / (n - 1) as f64;
                    if i == 0 || i == n - 1 {
                        // Exact endpoints; exp(ln) drifts by an ulp.
                        if i == 0 { lo } else { hi }
                    } else if log {
                        (lo.ln() + f * (hi.ln() - lo.ln())).exp()
                    } else {
                        lo + f * (hi - lo)
                    }
                })
                .collect())
        }
        [_] => s.split(',').map(num).collect(),
        _ => bail!("range `{s}` must be lo:hi:logN, lo:hi:linN or a comma list"),
    }
}

/// `offset[,amplitude,frequency]...` as a sum of sines.
pub fn parse_waveform(s: &str) -> Result<Waveform> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().with_context(|| format!("bad number `{t}` in drive `{s}`")))
        .collect::<Result<_>>()?;
    if v.len().is_multiple_of(2) {
        bail!("drive `{s}` must be offset followed by amplitude,frequency pairs");
    }
    let tones = v[1..]
        .chunks(2)
        .map(|c| Tone {
            amplitude: c[0],
            frequency: c[1],
            phase: 0.0,
        })
        .collect();
    Ok(Waveform::new(v[0], tones)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_and_lin_ranges() {
        let r = parse_range("0.005:0.1:log5").unwrap();
        assert_eq!(r.len(), 5);
        assert!((r[0] - 0.005).abs() < 1e-15 && (r[4] - 0.1).abs() < 1e-15);
        assert!((r[1] / r[0] - r[2] / r[1]).abs() < 1e-12);
        assert_eq!(parse_range("0:1:lin3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_range("0.1,0.2").unwrap(), vec![0.1, 0.2]);
        assert!(parse_range("0:1:log3").is_err());
        assert!(parse_range("0:1:exp3").is_err());
        assert!(parse_range("1:2:lin0").is_err());
    }

    #[test]
    fn config_to_flags() {
        let f = config_flags(r#"{"seed": 3, "quick": true, "poly": [[1,0],[0,0],[1,0]], "skip": false}"#).unwrap();
        assert_eq!(f, ["--poly", "[[1,0],[0,0],[1,0]]", "--quick", "--seed", "3"]);
        assert!(config_flags("[1]").is_err());
    }

    #[test]
    fn waveform_literal() {
        let w = parse_waveform("5,0.5,0.125").unwrap();
        assert_eq!(w.offset, 5.0);
        assert_eq!(w.components.len(), 1);
        assert!(parse_waveform("5,0.5").is_err());
        assert_eq!(parse_waveform("3").unwrap().components.len(), 0);
    }
}
