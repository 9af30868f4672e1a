//! Polynomials `P(x) = Σ a_k x^k` with left coefficients over a division
//! algebra.
//!
//! Powers use the left bracketing `x^k = x^{k−1}·x`; power associativity makes
//! the choice immaterial for the value, but the Jacobian differentiates this
//! exact expression so it matches finite differences to rounding.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::algebra::{Algebra, Element, MAX_DIM};
use crate::error::{Error, Result};
use crate::tolerances;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    tag: Algebra,
    coeffs: Vec<Element>,
}

impl Polynomial {
    /// Coefficients indexed by exponent. Trailing zero coefficients are
    /// dropped; an all-zero list is rejected.
    pub fn new(tag: Algebra, mut coeffs: Vec<Element>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.tag() != tag) {
            return Err(Error::TagMismatch {
                left: tag,
                right: bad.tag(),
            });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        while coeffs.last().is_some_and(|c| c.norm_sqr() == 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Polynomial { tag, coeffs })
    }

    /// Central polynomial from real coefficients (index = exponent).
    pub fn real(tag: Algebra, coeffs: &[f64]) -> Result<Self> {
        Polynomial::new(tag, coeffs.iter().map(|c| Element::real(tag, *c)).collect())
    }

    /// The identity polynomial `x`.
    pub fn identity(tag: Algebra) -> Self {
        Polynomial {
            tag,
            coeffs: vec![Element::zero(tag), Element::one(tag)],
        }
    }

    pub fn tag(&self) -> Algebra {
        self.tag
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &Element {
        self.coeffs.last().expect("nonempty by construction")
    }

    /// All coefficients have zero imaginary part.
    pub fn is_central(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }

    /// Exponents carrying a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr() > 0.0)
            .map(|(k, _)| k)
            .collect()
    }

    /// gcd of the support exponents (0 only for a nonzero constant).
    pub fn exponent_gcd(&self) -> usize {
        self.support().into_iter().fold(0, gcd)
    }

    pub fn real_coeffs(&self) -> Result<Vec<f64>> {
        if !self.is_central() {
            return Err(Error::NotCentral);
        }
        Ok(self.coeffs.iter().map(|c| c.re()).collect())
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn checked_evaluate(&self, x: &Element) -> Result<Element> {
        if x.tag() != self.tag {
            return Err(Error::TagMismatch {
                left: self.tag,
                right: x.tag(),
            });
        }
        Ok(self.evaluate(x))
    }

    /// `Σ a_k · x^k`. Panics on an algebra mismatch.
    pub fn evaluate(&self, x: &Element) -> Element {
        assert_eq!(x.tag(), self.tag, "algebra mismatch in evaluate");
        let mut power = Element::one(self.tag);
        let mut acc = self.coeffs[0];
        for a in &self.coeffs[1..] {
            power = power * *x;
            acc += *a * power;
        }
        acc
    }

    /// `V(x) = ‖P(x)‖²`.
    pub fn potential(&self, x: &Element) -> f64 {
        self.evaluate(x).norm_sqr()
    }

    /// Value and the directional derivatives along `e_0 … e_{d−1}`.
    fn value_and_directional(&self, x: &Element) -> (Element, [Element; MAX_DIM]) {
        assert_eq!(x.tag(), self.tag, "algebra mismatch in jacobian");
        let d = self.tag.dim();
        let zero = Element::zero(self.tag);
        let mut power = Element::one(self.tag);
        let mut dpower = [zero; MAX_DIM];
        let mut value = self.coeffs[0];
        let mut dvalue = [zero; MAX_DIM];
        for a in &self.coeffs[1..] {
            for (j, dp) in dpower.iter_mut().enumerate().take(d) {
                // d(p·x) = dp·x + p·h
                *dp = *dp * *x + power * Element::basis(self.tag, j);
            }
            power = power * *x;
            value += *a * power;
            for j in 0..d {
                dvalue[j] += *a * dpower[j];
            }
        }
        (value, dvalue)
    }

    /// Value and real Jacobian (`d × d`, column `j` = derivative along `e_j`).
    pub fn value_and_jacobian(&self, x: &Element) -> (Element, DMatrix<f64>) {
        let d = self.tag.dim();
        let (value, dvalue) = self.value_and_directional(x);
        let mut jac = DMatrix::zeros(d, d);
        for (j, col) in dvalue.iter().take(d).enumerate() {
            for i in 0..d {
                jac[(i, j)] = col.coord(i);
            }
        }
        (value, jac)
    }

    pub fn jacobian(&self, x: &Element) -> DMatrix<f64> {
        self.value_and_jacobian(x).1
    }

    /// `∇V = 2 Jᵀ P(x)`, as an element of the same coordinate space.
    pub fn gradient_potential(&self, x: &Element) -> Element {
        let d = self.tag.dim();
        let (v, dvalue) = self.value_and_directional(x);
        let mut coords = [0.0; MAX_DIM];
        for j in 0..d {
            coords[j] = 2.0 * v.dot(&dvalue[j]);
        }
        Element::new(self.tag, &coords[..d]).expect("dimension matches tag")
    }

    /// Newton iteration on the `d`-dimensional real system, using the
    /// pseudo-inverse so rank-deficient Jacobians (points on root spheres)
    /// take minimum-norm steps.
    pub fn newton_polish(&self, x0: &Element) -> Polished {
        let mut x = *x0;
        let mut r = self.evaluate(&x).norm();
        let mut iterations = 0;
        while r >= tolerances::NEWTON_RESIDUAL && iterations < tolerances::NEWTON_MAX_ITER {
            iterations += 1;
            let (v, j) = self.value_and_jacobian(&x);
            let step = pinv_solve(j, v.coords());
            let cand = x - step;
            let rc = self.evaluate(&cand).norm();
            if !(rc < r) {
                break;
            }
            x = cand;
            r = rc;
        }
        Polished {
            point: x,
            residual: r,
            iterations,
            converged: r < tolerances::NEWTON_RESIDUAL,
        }
    }

    /// Levenberg–Marquardt descent on `‖P(x)‖²` from an arbitrary start,
    /// finished by [`Polynomial::newton_polish`].
    pub fn solve_root(&self, x0: &Element) -> Polished {
        let d = self.tag.dim();
        let mut x = *x0;
        let mut r = self.evaluate(&x).norm();
        let mut mu = 1e-3;
        for _ in 0..300 {
            if r < 1e-10 || mu > 1e12 {
                break;
            }
            let (v, j) = self.value_and_jacobian(&x);
            let jt = j.transpose();
            let mut a = &jt * &j;
            for i in 0..d {
                a[(i, i)] += mu * (1.0 + a[(i, i)]);
            }
            let g = &jt * DVector::from_column_slice(v.coords());
            let Some(step) = a.lu().solve(&g) else {
                mu *= 10.0;
                continue;
            };
            let cand = x - Element::new(self.tag, step.as_slice()).unwrap_or(Element::zero(self.tag));
            let rc = self.evaluate(&cand).norm();
            if rc < r {
                x = cand;
                r = rc;
                mu = (mu / 3.0).max(1e-12);
            } else {
                mu *= 4.0;
            }
        }
        self.newton_polish(&x)
    }

    /// Numerical rank of the Jacobian and the smallest singular-value ratio.
    pub fn jacobian_rank(&self, x: &Element) -> RankInfo {
        rank_info(&self.jacobian(x))
    }

    /// Right division by a monic central quadratic: `P = Q·M + (A x + B)`.
    pub fn right_divide_central(&self, m: &CentralQuadratic) -> Division {
        let mut rem: Vec<Element> = self.coeffs.clone();
        let n = rem.len();
        let zero = Element::zero(self.tag);
        let mut quotient = vec![zero; n.saturating_sub(2)];
        for k in (2..n).rev() {
            let q = rem[k];
            quotient[k - 2] = q;
            rem[k] = zero;
            // M = x² − trace·x + normterm
            rem[k - 1] += q.scale(m.trace);
            rem[k - 2] += q.scale(-m.normterm);
        }
        Division {
            quotient,
            linear: if n > 1 { rem[1] } else { zero },
            constant: rem[0],
        }
    }

    /// Localizes an (approximate) root `x0` through the remainder of division
    /// by its minimal polynomial: an isolated root equals `−A⁻¹B`; `A ≈ 0`
    /// certifies that the whole sphere through `x0` consists of roots.
    pub fn localize_isolated_root(&self, x0: &Element) -> Result<Localization> {
        let potential = self.potential(x0);
        if !(potential < tolerances::ROOT_POTENTIAL) {
            return Err(Error::NotARoot { potential });
        }
        if x0.is_real() {
            return Ok(Localization::Point(*x0));
        }
        let m = CentralQuadratic::from_point(x0);
        let div = self.right_divide_central(&m);
        let scale = 1.0 + self.max_coeff_norm();
        if div.linear.norm() < tolerances::SPHERICAL_REMAINDER * scale {
            return Ok(Localization::SphericalRoot(m));
        }
        let point = -(div.linear.inverse()? * div.constant);
        Ok(Localization::Point(point))
    }

    /// Smallest real subalgebra containing all coefficients.
    pub fn coefficient_subalgebra(&self) -> Subalgebra {
        Subalgebra::generated_by(self.tag, &self.coeffs)
    }

    /// Parses the JSON literal `[[c0...], [c1...], ...]` (index = exponent).
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: Vec<Vec<f64>> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("polynomial literal: {e}")))?;
        let first = raw
            .first()
            .ok_or_else(|| Error::Parse("empty coefficient list".into()))?;
        let tag = Algebra::from_dim(first.len())?;
        let coeffs = raw
            .iter()
            .map(|c| Element::new(tag, c))
            .collect::<Result<Vec<_>>>()?;
        Polynomial::new(tag, coeffs)
    }

    pub fn to_json(&self) -> String {
        let raw: Vec<Vec<f64>> = self.coeffs.iter().map(|c| c.coords().to_vec()).collect();
        serde_json::to_string(&raw).expect("serializable")
    }

    /// Coefficient-wise `self + s·other`.
    pub fn add_scaled(&self, other: &Polynomial, s: f64) -> Result<Polynomial> {
        if other.tag != self.tag {
            return Err(Error::TagMismatch {
                left: self.tag,
                right: other.tag,
            });
        }
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Element::zero(self.tag);
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).copied().unwrap_or(zero);
                let b = other.coeffs.get(k).copied().unwrap_or(zero);
                a + b.scale(s)
            })
            .collect();
        Polynomial::new(self.tag, coeffs)
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn pinv_solve(j: DMatrix<f64>, rhs: &[f64]) -> Element {
    let d = j.nrows();
    let tag = Algebra::from_dim(d).expect("square jacobian of algebra size");
    let svd = j.svd(true, true);
    let smax = svd.singular_values.max();
    let b = DVector::from_column_slice(rhs);
    let x = svd
        .solve(&b, (tolerances::RANK_CUTOFF * smax).max(f64::MIN_POSITIVE))
        .expect("svd with u and v");
    Element::new(tag, x.as_slice()).unwrap_or(Element::zero(tag))
}

/// Outcome of root polishing.
#[derive(Clone, Copy, Debug)]
pub struct Polished {
    pub point: Element,
    /// `‖P(point)‖`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RankInfo {
    pub rank: usize,
    /// `σ_min / σ_max`.
    pub min_ratio: f64,
    /// Some singular-value ratio lies in the band around the cutoff.
    pub ambiguous: bool,
}

pub fn rank_info(j: &DMatrix<f64>) -> RankInfo {
    let sv = j.clone().singular_values();
    let smax = sv.max();
    if smax == 0.0 {
        return RankInfo {
            rank: 0,
            min_ratio: 0.0,
            ambiguous: false,
        };
    }
    let ratios: Vec<f64> = sv.iter().map(|s| s / smax).collect();
    RankInfo {
        rank: ratios.iter().filter(|r| **r > tolerances::RANK_CUTOFF).count(),
        min_ratio: ratios.iter().copied().fold(f64::INFINITY, f64::min),
        ambiguous: ratios
            .iter()
            .any(|r| (tolerances::RANK_AMBIGUOUS_LO..=tolerances::RANK_AMBIGUOUS_HI).contains(r)),
    }
}

/// `M(x) = x² − trace·x + normterm`, the minimal polynomial of a non-real
/// point over ℝ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CentralQuadratic {
    pub trace: f64,
    pub normterm: f64,
}

impl CentralQuadratic {
    pub fn from_point(x0: &Element) -> Self {
        CentralQuadratic {
            trace: 2.0 * x0.re(),
            normterm: x0.norm_sqr(),
        }
    }

    pub fn discriminant(&self) -> f64 {
        self.trace * self.trace - 4.0 * self.normterm
    }

    pub fn to_polynomial(&self, tag: Algebra) -> Polynomial {
        Polynomial::real(tag, &[self.normterm, -self.trace, 1.0]).expect("monic")
    }
}

/// `P = Q·M + (linear·x + constant)`.
#[derive(Clone, Debug)]
pub struct Division {
    /// Quotient coefficients (empty when `deg P < 2`).
    pub quotient: Vec<Element>,
    /// `A`.
    pub linear: Element,
    /// `B`.
    pub constant: Element,
}

impl Division {
    /// Coefficients of `Q·M + A x + B`.
    pub fn reconstruct(&self, m: &CentralQuadratic) -> Vec<Element> {
        let tag = self.linear.tag();
        let n = (self.quotient.len() + 2).max(2);
        let mut out = vec![Element::zero(tag); n];
        for (j, q) in self.quotient.iter().enumerate() {
            out[j] += q.scale(m.normterm);
            out[j + 1] += q.scale(-m.trace);
            out[j + 2] += *q;
        }
        out[0] += self.constant;
        out[1] += self.linear;
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Localization {
    Point(Element),
    /// `M | P`: the root lies on a sphere of roots.
    SphericalRoot(CentralQuadratic),
}

/// A real subalgebra given by an orthonormal basis (first element `1`).
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub basis: Vec<Element>,
}

impl Subalgebra {
    pub fn generated_by(tag: Algebra, generators: &[Element]) -> Self {
        let mut basis = vec![Element::one(tag)];
        for g in generators {
            push_orthogonal(&mut basis, g);
        }
        loop {
            let before = basis.len();
            let snapshot = basis.clone();
            for a in &snapshot {
                for b in &snapshot {
                    push_orthogonal(&mut basis, &(*a * *b));
                }
            }
            if basis.len() == before {
                break;
            }
        }
        Subalgebra { basis }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn project(&self, x: &Element) -> Element {
        self.basis
            .iter()
            .fold(Element::zero(x.tag()), |acc, b| acc + b.scale(b.dot(x)))
    }

    /// Distance from `x` to the subalgebra.
    pub fn distance(&self, x: &Element) -> f64 {
        x.distance(&self.project(x))
    }
}

fn push_orthogonal(basis: &mut Vec<Element>, v: &Element) {
    let scale = v.norm();
    if scale == 0.0 {
        return;
    }
    let mut r = *v;
    // two passes of Gram–Schmidt
    for _ in 0..2 {
        for b in basis.iter() {
            r = r - b.scale(b.dot(&r));
        }
    }
    let n = r.norm();
    if n > 1e-9 * scale {
        basis.push(r.scale(1.0 / n));
    }
}

/// `P_ε = base + ε·direction` with a central base.
#[derive(Clone, Debug)]
pub struct Deformation {
    pub base: Polynomial,
    pub direction: Polynomial,
}

impl Deformation {
    pub fn new(base: Polynomial, direction: Polynomial) -> Result<Self> {
        if !base.is_central() {
            return Err(Error::NotCentral);
        }
        if base.tag() != direction.tag() {
            return Err(Error::TagMismatch {
                left: base.tag(),
                right: direction.tag(),
            });
        }
        Ok(Deformation { base, direction })
    }

    /// Degenerate deformation with a zero direction.
    pub fn trivial(base: Polynomial) -> Result<Self> {
        let dir = Polynomial {
            tag: base.tag(),
            coeffs: vec![Element::zero(base.tag())],
        };
        Deformation::new(base, dir)
    }

    pub fn tag(&self) -> Algebra {
        self.base.tag()
    }

    pub fn at(&self, epsilon: f64) -> Result<Polynomial> {
        self.base.add_scaled(&self.direction, epsilon)
    }

    /// `(x² + 1, i x + 1)` over ℍ: the collapse benchmark.
    pub fn benchmark() -> Self {
        let tag = Algebra::Quaternion;
        let base = Polynomial::real(tag, &[1.0, 0.0, 1.0]).expect("valid");
        let direction =
            Polynomial::new(tag, vec![Element::one(tag), Element::basis(tag, 1)]).expect("valid");
        Deformation::new(base, direction).expect("central base")
    }

    /// `(x² + 1, i x)` over the given algebra; `ε = 1` gives `x² + ix + 1`.
    pub fn canonical(tag: Algebra) -> Self {
        let base = Polynomial::real(tag, &[1.0, 0.0, 1.0]).expect("valid");
        let direction =
            Polynomial::new(tag, vec![Element::zero(tag), Element::basis(tag, 1)]).expect("valid");
        Deformation::new(base, direction).expect("central base")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const H: Algebra = Algebra::Quaternion;

    fn q(c: [f64; 4]) -> Element {
        Element::new(H, &c).unwrap()
    }

    fn x2_ix_1() -> Polynomial {
        Polynomial::new(H, vec![Element::one(H), Element::basis(H, 1), Element::one(H)]).unwrap()
    }

    fn finite_difference_jacobian(p: &Polynomial, x: &Element) -> DMatrix<f64> {
        let d = x.dim();
        let h = 1e-5;
        let mut m = DMatrix::zeros(d, d);
        for j in 0..d {
            let e = Element::basis(x.tag(), j).scale(h);
            let df = (p.evaluate(&(*x + e)) - p.evaluate(&(*x - e))).scale(0.5 / h);
            for i in 0..d {
                m[(i, j)] = df.coord(i);
            }
        }
        m
    }

    #[test]
    fn evaluate_examples() {
        for tag in [Algebra::Complex, H, Algebra::Octonion] {
            let p = Polynomial::real(tag, &[1.0, 0.0, 1.0]).unwrap();
            assert_eq!(p.evaluate(&Element::basis(tag, 1)), Element::zero(tag));
        }
        let s5 = 5f64.sqrt();
        let root = q([0.0, (s5 - 1.0) / 2.0, 0.0, 0.0]);
        assert!(x2_ix_1().evaluate(&root).norm() < 1e-15);
        let e7 = Element::basis(Algebra::Octonion, 7);
        assert_eq!(Polynomial::identity(Algebra::Octonion).evaluate(&e7), e7);
        assert!(Polynomial::identity(H)
            .checked_evaluate(&Element::one(Algebra::Octonion))
            .is_err());
    }

    #[test]
    fn potential_examples() {
        let p = Polynomial::real(H, &[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(p.potential(&Element::basis(H, 1)), 0.0);
        assert_eq!(p.potential(&Element::zero(H)), 1.0);
        assert_eq!(p.potential(&Element::real(H, 2.0)), 25.0);
    }

    #[test]
    fn jacobian_examples() {
        let id = Polynomial::identity(H).jacobian(&q([0.3, -1.0, 2.0, 0.5]));
        assert!((id - DMatrix::<f64>::identity(4, 4)).amax() < 1e-15);

        let p = Polynomial::real(H, &[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(p.jacobian_rank(&Element::basis(H, 1)).rank, 2);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for tag in [H, Algebra::Octonion] {
            for _ in 0..100 {
                let deg = 1 + (rand::Rng::random::<u32>(&mut rng) % 4) as usize;
                let coeffs = (0..=deg).map(|_| Element::random(tag, &mut rng)).collect();
                let p = Polynomial::new(tag, coeffs).unwrap();
                let x = Element::random(tag, &mut rng);
                let exact = p.jacobian(&x);
                let fd = finite_difference_jacobian(&p, &x);
                let rel = (&exact - &fd).amax() / exact.amax().max(1.0);
                assert!(rel < 1e-6, "rel {rel}");
            }
        }
    }

    #[test]
    fn gradient_examples() {
        let p = Polynomial::real(H, &[1.0, 0.0, 1.0]).unwrap();
        let g = p.gradient_potential(&Element::real(H, 2.0));
        assert!(g.distance(&q([40.0, 0.0, 0.0, 0.0])) < 1e-12);
        assert_eq!(p.gradient_potential(&Element::basis(H, 2)).norm(), 0.0);

        // finite differences of the potential
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let p = x2_ix_1();
        for _ in 0..20 {
            let x = Element::random(H, &mut rng);
            let g = p.gradient_potential(&x);
            for j in 0..4 {
                let e = Element::basis(H, j).scale(1e-5);
                let fd = (p.potential(&(x + e)) - p.potential(&(x - e))) / 2e-5;
                assert!((fd - g.coord(j)).abs() < 1e-6 * (1.0 + g.norm()));
            }
        }

        // on the central sphere the potential vanishes, so does the gradient
        let u = q([0.0, 0.6, 0.0, 0.8]);
        assert!(Polynomial::real(H, &[1.0, 0.0, 1.0]).unwrap().gradient_potential(&u).norm() < 1e-14);
    }

    #[test]
    fn division_examples() {
        let i = Element::basis(H, 1);
        let m = CentralQuadratic::from_point(&i);
        let div = Polynomial::real(H, &[1.0, 0.0, 1.0]).unwrap().right_divide_central(&m);
        assert_eq!(div.quotient, vec![Element::one(H)]);
        assert_eq!(div.linear.norm(), 0.0);
        assert_eq!(div.constant.norm(), 0.0);

        // x³ = x(x² + 1) − x
        let div = Polynomial::real(H, &[0.0, 0.0, 0.0, 1.0]).unwrap().right_divide_central(&m);
        assert_eq!(div.quotient, vec![Element::zero(H), Element::one(H)]);
        assert_eq!(div.linear, -Element::one(H));
        assert_eq!(div.constant, Element::zero(H));

        let s5 = 5f64.sqrt();
        let x0 = q([0.0, (s5 - 1.0) / 2.0, 0.0, 0.0]);
        let m = CentralQuadratic::from_point(&x0);
        let div = x2_ix_1().right_divide_central(&m);
        assert!(div.linear.norm() > 0.5);
        let back = -(div.linear.inverse().unwrap() * div.constant);
        assert!(back.distance(&x0) < 1e-15);
    }

    #[test]
    fn division_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for tag in [Algebra::Complex, H, Algebra::Octonion] {
            for deg in 0..6 {
                let coeffs: Vec<Element> = (0..=deg).map(|_| Element::random(tag, &mut rng)).collect();
                let p = Polynomial::new(tag, coeffs).unwrap();
                let m = CentralQuadratic::from_point(&Element::random(tag, &mut rng));
                let div = p.right_divide_central(&m);
                let back = div.reconstruct(&m);
                for (k, c) in back.iter().enumerate() {
                    let want = p.coeffs().get(k).copied().unwrap_or(Element::zero(tag));
                    assert!(c.distance(&want) < 1e-12 * (1.0 + want.norm()) * 10.0);
                }
                // remainder stays in the coefficient subalgebra
                let sub = p.coefficient_subalgebra();
                assert!(sub.distance(&div.linear) < 1e-10 * (1.0 + div.linear.norm()));
                assert!(sub.distance(&div.constant) < 1e-10 * (1.0 + div.constant.norm()));
            }
        }
    }

    #[test]
    fn localization_examples() {
        let p = x2_ix_1();
        let s5 = 5f64.sqrt();
        let approx = q([0.0, (s5 - 1.0) / 2.0 + 1e-9, 0.0, 0.0]);
        let root = p.newton_polish(&approx).point;
        match p.localize_isolated_root(&root).unwrap() {
            Localization::Point(x) => {
                assert!(x.coord(2).abs() < 1e-10 && x.coord(3).abs() < 1e-10);
                assert!((x.coord(1) - (s5 - 1.0) / 2.0).abs() < 1e-12);
            }
            other => panic!("{other:?}"),
        }

        let central = Polynomial::real(H, &[1.0, 0.0, 1.0]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = q([0.0, s, s, 0.0]);
        assert!(matches!(
            central.localize_isolated_root(&u).unwrap(),
            Localization::SphericalRoot(_)
        ));

        // (x − 1)(x − i) = x² − (1+i)x + i over ℍ: roots 1 and i
        let p = Polynomial::new(H, vec![Element::basis(H, 1), q([-1.0, -1.0, 0.0, 0.0]), Element::one(H)]).unwrap();
        for r in [Element::one(H), Element::basis(H, 1)] {
            match p.localize_isolated_root(&r).unwrap() {
                Localization::Point(x) => assert!(x.distance(&r) < 1e-12),
                other => panic!("{other:?}"),
            }
        }

        assert!(matches!(
            central.localize_isolated_root(&Element::zero(H)),
            Err(Error::NotARoot { .. })
        ));
    }

    #[test]
    fn subalgebra_examples() {
        assert_eq!(Polynomial::real(H, &[1.0, 0.0, 1.0]).unwrap().coefficient_subalgebra().dimension(), 1);
        assert_eq!(x2_ix_1().coefficient_subalgebra().dimension(), 2);
        let p = Polynomial::new(H, vec![Element::one(H), Element::basis(H, 1), Element::basis(H, 2)]).unwrap();
        assert_eq!(p.coefficient_subalgebra().dimension(), 4);
        let o = Algebra::Octonion;
        let p = Polynomial::new(o, vec![Element::basis(o, 1), Element::basis(o, 2), Element::basis(o, 4)]).unwrap();
        assert_eq!(p.coefficient_subalgebra().dimension(), 8);
    }

    #[test]
    fn constant_polynomial_is_total() {
        let p = Polynomial::real(H, &[3.0]).unwrap();
        assert_eq!(p.degree(), 0);
        assert_eq!(p.potential(&Element::basis(H, 1)), 9.0);
        assert_eq!(p.jacobian(&Element::zero(H)).amax(), 0.0);
        let div = p.right_divide_central(&CentralQuadratic::from_point(&Element::basis(H, 1)));
        assert!(div.quotient.is_empty());
        assert_eq!(div.constant, Element::real(H, 3.0));
        assert!(p.localize_isolated_root(&Element::zero(H)).is_err());
        assert_eq!(p.exponent_gcd(), 0);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(Polynomial::real(H, &[0.0, 0.0]), Err(Error::ZeroPolynomial)));
        assert_eq!(Polynomial::real(H, &[1.0, 2.0, 0.0]).unwrap().degree(), 1);
    }

    #[test]
    fn json_literal() {
        let p = Polynomial::from_json("[[1,0,0,0],[0,1,0,0],[1,0,0,0]]").unwrap();
        assert_eq!(p, x2_ix_1());
        assert_eq!(Polynomial::from_json(&p.to_json()).unwrap(), p);
        assert!(Polynomial::from_json("[[1,0,0]]").is_err());
        assert!(Polynomial::from_json("[[1,0],[1,0,0,0]]").is_err());
        assert!(Polynomial::from_json("nope").is_err());
    }

    #[test]
    fn deformation() {
        let d = Deformation::benchmark();
        let p = d.at(0.5).unwrap();
        // x² + 0.5 i x + 1.5
        assert_eq!(p.coeffs()[0], Element::real(H, 1.5));
        assert_eq!(p.coeffs()[1], Element::basis(H, 1).scale(0.5));
        assert_eq!(d.at(0.0).unwrap(), d.base);
        assert!(Deformation::new(x2_ix_1(), x2_ix_1()).is_err());
    }

    #[test]
    fn lacunary_gcd() {
        let p = Polynomial::real(Algebra::Complex, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(p.support(), vec![0, 3, 6]);
        assert_eq!(p.exponent_gcd(), 3);
    }
}
