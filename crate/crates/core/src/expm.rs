use nalgebra::DMatrix;

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
///
/// The input is scaled by `2^-s` so its 1-norm is at most 1, the series is
/// summed until terms fall below `1e-18` relative, then squared `s` times.
pub(crate) fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let norm = one_norm(a);
    let s = if norm > 1.0 {
        norm.log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * 2f64.powi(-s);

    let mut result = DMatrix::<f64>::identity(n, n);
    let mut term = DMatrix::<f64>::identity(n, n);
    for k in 1..=30 {
        term = &term * &scaled / k as f64;
        result += &term;
        if term.amax() <= 1e-18 * result.amax() {
            break;
        }
    }
    for _ in 0..s {
        result = &result * &result;
    }
    result
}

fn one_norm(a: &DMatrix<f64>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_generator() {
        let th = 2.5_f64;
        let a = DMatrix::from_row_slice(2, 2, &[0.0, -th, th, 0.0]);
        let e = expm(&a);
        let want = DMatrix::from_row_slice(2, 2, &[th.cos(), -th.sin(), th.sin(), th.cos()]);
        assert!((e - want).amax() < 1e-14);
    }

    #[test]
    fn diagonal() {
        let a = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![-3.0, 0.5, 7.0]));
        let e = expm(&a);
        for (i, v) in [-3.0_f64, 0.5, 7.0].iter().enumerate() {
            assert!((e[(i, i)] - v.exp()).abs() < 1e-12 * v.exp());
        }
    }

    #[test]
    fn zero_is_identity() {
        let e = expm(&DMatrix::zeros(4, 4));
        assert_eq!(e, DMatrix::identity(4, 4));
    }
}
