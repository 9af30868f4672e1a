//! Root sets of central polynomials as unions of strata (points and spheres).
//!
//! A real-coefficient polynomial over ℍ or 𝕆 has, for each complex-conjugate
//! pair `a ± bi` of its complex roots, the whole sphere
//! `{a + b·u : u imaginary, ‖u‖ = 1}` of roots. That sphere has dimension
//! `d − 2`. Real roots stay isolated.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Algebra, Element, LinearMap};
use crate::error::{Error, Result};
use crate::flow;
use crate::poly::{Deformation, Polynomial};
use crate::tolerances;

/// All roots of `Σ c_k z^k` (index = exponent) by Aberth–Ehrlich iteration.
pub fn complex_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|z| *z == Complex64::new(0.0, 0.0)) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    let dc: Vec<Complex64> = (1..=n).map(|k| c[k] * k as f64).collect();

    // Fujiwara bound for the initial circle, offset angle to avoid symmetry
    let radius = (0..n)
        .map(|k| {
            let r = c[k].norm();
            if k == 0 {
                (r / 2.0).powf(1.0 / n as f64)
            } else {
                r.powf(1.0 / (n - k) as f64)
            }
        })
        .fold(0.0, f64::max)
        .max(1e-3)
        * 2.0;
    let center = -c[n - 1] / n as f64;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            center + Complex64::from_polar(radius, th)
        })
        .collect();

    let mut max_step = f64::INFINITY;
    let mut converged = false;
    for _ in 0..tolerances::ABERTH_MAX_SWEEPS {
        max_step = 0.0;
        for i in 0..n {
            let p = horner(&c, z[i]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let dp = horner(&dc, z[i]);
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !w.is_finite() {
                continue;
            }
            z[i] -= w;
            max_step = max_step.max(w.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        // accept if every root already meets the residual target
        let ok = z.iter().all(|zi| relative_residual(&c, *zi) < tolerances::ABERTH_RESIDUAL);
        if !ok {
            return Err(Error::NoConvergence {
                sweeps: tolerances::ABERTH_MAX_SWEEPS,
                max_step,
            });
        }
    }
    // Newton polish, kept only when it lowers the residual
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let p = horner(&c, *zi);
            let dp = horner(&dc, *zi);
            if dp == Complex64::new(0.0, 0.0) {
                break;
            }
            let cand = *zi - p / dp;
            if horner(&c, cand).norm() < p.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }
    Ok(z)
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

fn relative_residual(c: &[Complex64], z: Complex64) -> f64 {
    let scale: f64 = c
        .iter()
        .enumerate()
        .map(|(k, a)| a.norm() * z.norm().powi(k as i32))
        .sum();
    horner(c, z).norm() / scale.max(f64::MIN_POSITIVE)
}

/// Roots of a real polynomial, returned conjugate-paired: real roots carry an
/// exact zero imaginary part and each `a + bi` (`b > 0`) is followed by its
/// exact conjugate.
pub fn complex_roots_real_poly(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let c: Vec<Complex64> = coeffs.iter().map(|a| Complex64::new(*a, 0.0)).collect();
    let raw = complex_roots(&c)?;
    let mut reals = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for z in raw {
        if z.im.abs() <= tolerances::REAL_ROOT_IMAG * (1.0 + z.norm()) {
            reals.push(Complex64::new(z.re, 0.0));
        } else if z.im > 0.0 {
            upper.push(z);
        } else {
            lower.push(z);
        }
    }
    // pair each upper root with the nearest conjugate of a lower root
    let mut out = reals;
    out.sort_by(|a, b| a.re.total_cmp(&b.re));
    upper.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    for u in upper {
        let best = lower
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (a.conj() - u).norm().total_cmp(&(b.conj() - u).norm()))
            .map(|(k, _)| k);
        let z = match best {
            Some(k) => {
                let l = lower.swap_remove(k);
                (u + l.conj()) / 2.0
            }
            None => u,
        };
        out.push(z);
        out.push(z.conj());
    }
    // any unmatched lower roots (should not happen for real input)
    for l in lower {
        out.push(l.conj());
        out.push(l);
    }
    Ok(out)
}

/// A connected component of a root set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Stratum {
    IsolatedReal { value: f64 },
    /// `{re + radius·u : u imaginary unit}`.
    Sphere { re: f64, radius: f64 },
    IsolatedPoint {
        #[serde(serialize_with = "serialize_element")]
        point: Element,
    },
}

fn serialize_element<S: serde::Serializer>(e: &Element, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(e.coords())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RootStratum {
    pub tag: Algebra,
    #[serde(flatten)]
    pub kind: Stratum,
}

impl RootStratum {
    pub fn dimension(&self) -> usize {
        match self.kind {
            Stratum::Sphere { .. } => self.tag.dim() - 2,
            _ => 0,
        }
    }

    pub fn is_sphere(&self) -> bool {
        matches!(self.kind, Stratum::Sphere { .. })
    }

    /// Distance from `x` to the stratum.
    pub fn distance(&self, x: &Element) -> f64 {
        match self.kind {
            Stratum::IsolatedReal { value } => x.distance(&Element::real(self.tag, value)),
            Stratum::IsolatedPoint { point } => x.distance(&point),
            Stratum::Sphere { re, radius } => {
                let dr = x.re() - re;
                let di = x.imag().norm() - radius;
                (dr * dr + di * di).sqrt()
            }
        }
    }

    /// The point of the sphere in direction `u` (a unit imaginary element).
    pub fn sphere_point(&self, u: &Element) -> Option<Element> {
        match self.kind {
            Stratum::Sphere { re, radius } => Some(Element::real(self.tag, re) + u.scale(radius)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSet {
    pub tag: Algebra,
    pub strata: Vec<RootStratum>,
    pub hausdorff_dimension: usize,
}

impl RootSet {
    pub fn spheres(&self) -> impl Iterator<Item = &RootStratum> {
        self.strata.iter().filter(|s| s.is_sphere())
    }
}

/// Strata of the root set of a central polynomial over ℂ, ℍ or 𝕆.
pub fn central_root_set(p: &Polynomial) -> Result<RootSet> {
    let coeffs = p.real_coeffs()?;
    let tag = p.tag();
    if tag == Algebra::Real {
        return Err(Error::WrongAlgebra {
            op: "central_root_set",
            expected: "an algebra of dimension ≥ 2",
            got: tag,
        });
    }
    let roots = complex_roots_real_poly(&coeffs)?;
    let mut strata: Vec<RootStratum> = Vec::new();
    for z in roots.iter().filter(|z| z.im >= 0.0) {
        let kind = if z.im == 0.0 {
            Stratum::IsolatedReal { value: z.re }
        } else {
            Stratum::Sphere {
                re: z.re,
                radius: z.im,
            }
        };
        let candidate = RootStratum { tag, kind };
        let dup = strata.iter().any(|s| same_stratum(s, &candidate));
        if !dup {
            strata.push(candidate);
        }
    }
    strata.sort_by(|a, b| key(a).partial_cmp(&key(b)).expect("finite"));
    let hausdorff_dimension = strata.iter().map(|s| s.dimension()).max().unwrap_or(0);
    Ok(RootSet {
        tag,
        strata,
        hausdorff_dimension,
    })
}

fn key(s: &RootStratum) -> (f64, f64) {
    match s.kind {
        Stratum::IsolatedReal { value } => (value, 0.0),
        Stratum::Sphere { re, radius } => (re, radius),
        Stratum::IsolatedPoint { point } => (point.re(), point.imag().norm()),
    }
}

fn same_stratum(a: &RootStratum, b: &RootStratum) -> bool {
    let (ka, kb) = (key(a), key(b));
    let scale = 1.0 + ka.0.abs().max(ka.1).max(kb.0.abs()).max(kb.1);
    a.is_sphere() == b.is_sphere()
        && (ka.0 - kb.0).abs() < tolerances::ROOT_CLUSTER * scale
        && (ka.1 - kb.1).abs() < tolerances::ROOT_CLUSTER * scale
}

/// `n` points of a stratum; spheres are sampled uniformly.
pub fn sample_stratum<R: Rng + ?Sized>(s: &RootStratum, n: usize, rng: &mut R) -> Vec<Element> {
    match s.kind {
        Stratum::IsolatedReal { value } => vec![Element::real(s.tag, value); n],
        Stratum::IsolatedPoint { point } => vec![point; n],
        Stratum::Sphere { .. } => (0..n)
            .map(|_| {
                let u = Element::random_unit_imaginary(s.tag, rng);
                s.sphere_point(&u).expect("sphere")
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicSymmetryReport {
    /// gcd of the exponents carrying nonzero coefficients.
    pub order: usize,
    pub roots: Vec<(f64, f64)>,
    /// Largest distance from a rotated root to its nearest root.
    pub max_mismatch: f64,
    pub pass: bool,
}

/// Checks that the roots of a polynomial over ℂ are invariant under rotation
/// by `2π/d`, with `d` the exponent gcd.
pub fn cd_symmetry_check(p: &Polynomial) -> Result<CyclicSymmetryReport> {
    if p.tag() != Algebra::Complex {
        return Err(Error::WrongAlgebra {
            op: "cd_symmetry_check",
            expected: "complex numbers",
            got: p.tag(),
        });
    }
    let coeffs: Vec<Complex64> = p
        .coeffs()
        .iter()
        .map(|c| Complex64::new(c.coord(0), c.coord(1)))
        .collect();
    let roots = complex_roots(&coeffs)?;
    let order = p.exponent_gcd().max(1);
    let rot = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / order as f64);
    let max_mismatch = roots
        .iter()
        .map(|z| {
            let w = z * rot;
            roots
                .iter()
                .map(|r| (r - w).norm() / (1.0 + w.norm()))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    Ok(CyclicSymmetryReport {
        order,
        roots: roots.iter().map(|z| (z.re, z.im)).collect(),
        max_mismatch,
        pass: max_mismatch < tolerances::CYCLIC_MATCH,
    })
}

/// `V(g(x))` for a root `x` and an automorphism `g`. The caller is
/// responsible for `g` being an automorphism.
pub fn orbit_invariance_check(p: &Polynomial, g: &LinearMap, x: &Element) -> Result<f64> {
    let v = p.potential(x);
    if !(v < 1e-16) {
        return Err(Error::NotARoot { potential: v });
    }
    Ok(p.potential(&g.apply(x)))
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionRow {
    pub epsilon: f64,
    /// `None` when the classification is ambiguous (see `flag`).
    pub dimension: Option<usize>,
    pub roots_found: usize,
    pub flag: Option<String>,
}

/// Starts used for root finding at `ε ≠ 0`.
pub const SCAN_STRATUM_STARTS: usize = 64;
pub const SCAN_GAUSSIAN_STARTS: usize = 16;

/// Hausdorff dimension of `Z(P_ε)` across `epsilons`.
///
/// Central `P_ε` uses [`central_root_set`]; otherwise roots come from
/// multistart gradient flow plus Newton polishing, started on the `ε = 0`
/// strata and at Gaussian points. A root with Jacobian rank `r` contributes
/// local dimension `d − r`.
pub fn hausdorff_dimension_scan(d: &Deformation, epsilons: &[f64], seed: u64) -> Result<Vec<DimensionRow>> {
    let base_set = central_root_set(&d.base)?;
    let tag = d.tag();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts = Vec::new();
    if !base_set.strata.is_empty() {
        let per = SCAN_STRATUM_STARTS.div_ceil(base_set.strata.len());
        for s in &base_set.strata {
            starts.extend(sample_stratum(s, per, &mut rng));
        }
        starts.truncate(SCAN_STRATUM_STARTS);
    }
    let scale = root_scale(&d.base);
    for _ in 0..SCAN_GAUSSIAN_STARTS {
        starts.push(Element::random(tag, &mut rng).scale(scale));
    }

    let mut rows = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let p = d.at(eps)?;
        if p.is_central() {
            let set = central_root_set(&p)?;
            rows.push(DimensionRow {
                epsilon: eps,
                dimension: Some(set.hausdorff_dimension),
                roots_found: set.strata.len(),
                flag: None,
            });
            continue;
        }
        let cands = flow::multistart_roots(&p, &starts);
        let ambiguous = cands.iter().any(|c| c.rank.ambiguous);
        let dim = cands.iter().map(|c| tag.dim() - c.rank.rank).max().unwrap_or(0);
        let separated = cands.iter().enumerate().all(|(i, a)| {
            cands[i + 1..]
                .iter()
                .all(|b| a.point.distance(&b.point) > tolerances::ISOLATED_SEPARATION)
        });
        let (dimension, flag) = if ambiguous {
            (None, Some("ambiguous jacobian rank".to_string()))
        } else if dim == 0 && !separated {
            (None, Some("full-rank roots closer than the isolation distance".to_string()))
        } else {
            (Some(dim), None)
        };
        rows.push(DimensionRow {
            epsilon: eps,
            dimension,
            roots_found: cands.len(),
            flag,
        });
    }
    Ok(rows)
}

/// Rough magnitude of the roots (Fujiwara-type bound on `|z|`).
pub(crate) fn root_scale(p: &Polynomial) -> f64 {
    let n = p.degree();
    if n == 0 {
        return 1.0;
    }
    let lead = p.leading().norm();
    (0..n)
        .map(|k| (p.coeffs()[k].norm() / lead).powf(1.0 / (n - k) as f64))
        .fold(0.0, f64::max)
        .max(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a - Complex64::new(re, im)).norm() < 1e-12
    }

    #[test]
    fn real_poly_roots() {
        let r = sorted(complex_roots_real_poly(&[1.0, 0.0, 1.0]).unwrap());
        assert!(close(r[0], 0.0, -1.0) && close(r[1], 0.0, 1.0));
        let r = sorted(complex_roots_real_poly(&[2.0, -3.0, 1.0]).unwrap());
        assert!(close(r[0], 1.0, 0.0) && close(r[1], 2.0, 0.0));
        assert_eq!(r[0].im, 0.0);
        // (z²+1)(z²+4)
        let r = sorted(complex_roots_real_poly(&[4.0, 0.0, 5.0, 0.0, 1.0]).unwrap());
        let mut ims: Vec<f64> = r.iter().map(|z| z.im).collect();
        ims.sort_by(f64::total_cmp);
        for (got, want) in ims.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!(r.iter().all(|z| z.re.abs() < 1e-12));
    }

    #[test]
    fn roots_meet_residual_target() {
        let c = [3.0, -1.0, 0.5, 2.0, -4.0, 1.0, 0.25];
        let roots = complex_roots_real_poly(&c).unwrap();
        assert_eq!(roots.len(), 6);
        let cc: Vec<Complex64> = c.iter().map(|a| Complex64::new(*a, 0.0)).collect();
        for z in roots {
            assert!(relative_residual(&cc, z) < tolerances::ABERTH_RESIDUAL);
        }
    }

    #[test]
    fn central_strata() {
        let h = Algebra::Quaternion;
        let set = central_root_set(&Polynomial::real(h, &[1.0, 0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(set.strata.len(), 1);
        assert_eq!(set.hausdorff_dimension, 2);
        match set.strata[0].kind {
            Stratum::Sphere { re, radius } => {
                assert!(re.abs() < 1e-14 && (radius - 1.0).abs() < 1e-14)
            }
            other => panic!("{other:?}"),
        }
        let set = central_root_set(&Polynomial::real(Algebra::Octonion, &[1.0, 0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(set.hausdorff_dimension, 6);
        let set = central_root_set(&Polynomial::real(h, &[-1.0, 0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(set.hausdorff_dimension, 0);
        assert_eq!(set.strata.len(), 2);
        assert!(set.strata.iter().all(|s| matches!(s.kind, Stratum::IsolatedReal { .. })));

        let noncentral = Polynomial::new(h, vec![Element::basis(h, 1), Element::one(h)]).unwrap();
        assert!(matches!(central_root_set(&noncentral), Err(Error::NotCentral)));
        assert!(central_root_set(&Polynomial::real(Algebra::Real, &[1.0, 0.0, 1.0]).unwrap()).is_err());
    }

    #[test]
    fn repeated_roots_merge() {
        // (x² + 1)² has one sphere
        let set = central_root_set(&Polynomial::real(Algebra::Quaternion, &[1.0, 0.0, 2.0, 0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(set.strata.len(), 1);
        assert!(set.strata[0].is_sphere());
    }

    #[test]
    fn sphere_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for tag in [Algebra::Quaternion, Algebra::Octonion] {
            let p = Polynomial::real(tag, &[1.0, 0.0, 1.0]).unwrap();
            let set = central_root_set(&p).unwrap();
            let n = 4000;
            let pts = sample_stratum(&set.strata[0], n, &mut rng);
            assert!(pts.iter().all(|x| p.potential(x) < 1e-18));
            let bound = 4.0 / (n as f64).sqrt();
            for k in 1..tag.dim() {
                let mean = pts.iter().map(|x| x.coord(k)).sum::<f64>() / n as f64;
                let msq = pts.iter().map(|x| x.coord(k).powi(2)).sum::<f64>() / n as f64;
                assert!(mean.abs() < bound, "mean {mean}");
                assert!((msq - 1.0 / (tag.dim() - 1) as f64).abs() < bound, "msq {msq}");
            }
        }
    }

    #[test]
    fn cyclic_symmetry() {
        let c = Algebra::Complex;
        let p = Polynomial::real(c, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0]).unwrap();
        let r = cd_symmetry_check(&p).unwrap();
        assert_eq!(r.order, 3);
        assert_eq!(r.roots.len(), 6);
        assert!(r.pass, "{r:?}");

        let r = cd_symmetry_check(&Polynomial::real(c, &[1.0, 0.0, 1.0]).unwrap()).unwrap();
        assert_eq!(r.order, 2);
        assert!(r.pass);

        let r = cd_symmetry_check(&Polynomial::real(c, &[1.0, 1.0]).unwrap()).unwrap();
        assert_eq!(r.order, 1);
        assert!(r.pass);

        // z² + z + 1 has gcd 1; a rotation by π would not preserve its roots
        let p = Polynomial::real(c, &[1.0, 1.0, 1.0]).unwrap();
        assert_eq!(cd_symmetry_check(&p).unwrap().order, 1);
        assert!(cd_symmetry_check(&Polynomial::real(Algebra::Quaternion, &[1.0, 1.0]).unwrap()).is_err());
    }

    #[test]
    fn orbit_invariance() {
        use crate::algebra::{automorphism_from_derivation, conjugation_automorphism};
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let o = Algebra::Octonion;
        let p = Polynomial::real(o, &[1.0, 0.0, 1.0]).unwrap();
        let set = central_root_set(&p).unwrap();
        let g = automorphism_from_derivation(&Element::basis(o, 1), &Element::basis(o, 2), 1.0).unwrap();
        for x in sample_stratum(&set.strata[0], 20, &mut rng) {
            assert!(orbit_invariance_check(&p, &g, &x).unwrap() < 1e-12);
            let id = LinearMap::identity(o);
            assert_eq!(orbit_invariance_check(&p, &id, &x).unwrap(), p.potential(&x));
        }
        let h = Algebra::Quaternion;
        let p = Polynomial::real(h, &[1.0, 0.0, 1.0]).unwrap();
        let set = central_root_set(&p).unwrap();
        for x in sample_stratum(&set.strata[0], 20, &mut rng) {
            let g = conjugation_automorphism(&Element::random(h, &mut rng)).unwrap();
            assert!(orbit_invariance_check(&p, &g, &x).unwrap() < 1e-12);
        }
        let g = LinearMap::identity(h);
        assert!(orbit_invariance_check(&p, &g, &Element::zero(h)).is_err());
    }

    #[test]
    fn noncentral_orbit_with_stabilizer() {
        // x² + e₁x + 1 in 𝕆; G₂ elements fixing e₁ must map roots to roots
        use crate::algebra::automorphism_from_derivation;
        let o = Algebra::Octonion;
        let e = |k| Element::basis(o, k);
        let p = Polynomial::new(o, vec![e(0), e(1), e(0)]).unwrap();
        let s5 = 5f64.sqrt();
        let root = e(1).scale((s5 - 1.0) / 2.0);
        let mut fixing = 0;
        for a in 2..8 {
            for b in (a + 1)..8 {
                let g = automorphism_from_derivation(&e(a), &e(b), 0.8).unwrap();
                if g.apply(&e(1)).distance(&e(1)) < 1e-12 {
                    fixing += 1;
                    assert!(orbit_invariance_check(&p, &g, &root).unwrap() < 1e-12);
                }
            }
        }
        assert!(fixing > 0);
    }

    #[test]
    fn dimension_scan_benchmark() {
        let d = Deformation::benchmark();
        let rows = hausdorff_dimension_scan(&d, &[0.0, 0.1], 5).unwrap();
        assert_eq!(rows[0].dimension, Some(2));
        assert_eq!(rows[1].dimension, Some(0), "{rows:?}");
        assert_eq!(rows[1].roots_found, 2);
    }

    #[test]
    fn dimension_scan_trivial_direction() {
        let base = Polynomial::real(Algebra::Quaternion, &[1.0, 0.0, 1.0]).unwrap();
        let d = Deformation::trivial(base).unwrap();
        let rows = hausdorff_dimension_scan(&d, &[0.0, 0.1, 1.0], 3).unwrap();
        assert!(rows.iter().all(|r| r.dimension == Some(2)));
    }
}
