//! Cayley–Dickson arithmetic for ℝ, ℂ, ℍ and 𝕆.
//!
//! Elements are stored as coordinate vectors in the basis `1, e₁, …, e_{d−1}`.
//! The product follows the doubling rule
//!
//! ```text
//! (a, b)(c, d) = (ac − d̄b, da + bc̄)
//! ```
//!
//! applied recursively, which fixes the octonion table (for instance
//! `e₁·e₄ = e₅`). The basis products are tabulated once per algebra from the
//! recursion and every multiplication goes through the table.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::OnceLock;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expm::expm;
use crate::tolerances;

pub const MAX_DIM: usize = 8;

/// One of the four real normed division algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algebra {
    Real,
    Complex,
    Quaternion,
    Octonion,
}

impl Algebra {
    pub const ALL: [Algebra; 4] = [
        Algebra::Real,
        Algebra::Complex,
        Algebra::Quaternion,
        Algebra::Octonion,
    ];

    pub const fn dim(self) -> usize {
        match self {
            Algebra::Real => 1,
            Algebra::Complex => 2,
            Algebra::Quaternion => 4,
            Algebra::Octonion => 8,
        }
    }

    pub fn from_dim(dim: usize) -> Result<Self> {
        match dim {
            1 => Ok(Algebra::Real),
            2 => Ok(Algebra::Complex),
            4 => Ok(Algebra::Quaternion),
            8 => Ok(Algebra::Octonion),
            d => Err(Error::BadDimension(d)),
        }
    }

    /// Single-letter name: `R`, `C`, `H` or `O`.
    pub const fn symbol(self) -> &'static str {
        match self {
            Algebra::Real => "R",
            Algebra::Complex => "C",
            Algebra::Quaternion => "H",
            Algebra::Octonion => "O",
        }
    }

    pub fn from_symbol(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "R" => Ok(Algebra::Real),
            "C" => Ok(Algebra::Complex),
            "H" => Ok(Algebra::Quaternion),
            "O" => Ok(Algebra::Octonion),
            other => Err(Error::Parse(format!("unknown algebra `{other}`"))),
        }
    }

    fn table(self) -> &'static Table {
        static TABLES: OnceLock<[Table; 4]> = OnceLock::new();
        let tables = TABLES.get_or_init(|| {
            [
                Table::build(1),
                Table::build(2),
                Table::build(4),
                Table::build(8),
            ]
        });
        &tables[self.dim().trailing_zeros() as usize]
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Basis product table: `e_i e_j = sign · e_index`.
struct Table {
    dim: usize,
    index: [[u8; MAX_DIM]; MAX_DIM],
    sign: [[f64; MAX_DIM]; MAX_DIM],
}

impl Table {
    fn build(dim: usize) -> Self {
        let mut index = [[0u8; MAX_DIM]; MAX_DIM];
        let mut sign = [[0.0; MAX_DIM]; MAX_DIM];
        for i in 0..dim {
            for j in 0..dim {
                let mut x = [0.0; MAX_DIM];
                let mut y = [0.0; MAX_DIM];
                x[i] = 1.0;
                y[j] = 1.0;
                let p = cayley_dickson_product(&x[..dim], &y[..dim]);
                let (k, v) = p
                    .iter()
                    .enumerate()
                    .find(|(_, v)| **v != 0.0)
                    .expect("basis product is a signed basis element");
                index[i][j] = k as u8;
                sign[i][j] = *v;
            }
        }
        Table { dim, index, sign }
    }
}

/// Product of two coordinate vectors of equal power-of-two length by direct
/// evaluation of the doubling recursion.
pub fn cayley_dickson_product(x: &[f64], y: &[f64]) -> Vec<f64> {
    assert_eq!(x.len(), y.len());
    assert!(x.len().is_power_of_two());
    let mut out = vec![0.0; x.len()];
    cd_mul(x, y, &mut out);
    out
}

fn cd_conj(x: &[f64], out: &mut [f64]) {
    out[0] = x[0];
    for i in 1..x.len() {
        out[i] = -x[i];
    }
}

fn cd_mul(x: &[f64], y: &[f64], out: &mut [f64]) {
    let n = x.len();
    if n == 1 {
        out[0] = x[0] * y[0];
        return;
    }
    let h = n / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let mut cbar = [0.0; MAX_DIM];
    let mut dbar = [0.0; MAX_DIM];
    cd_conj(c, &mut cbar[..h]);
    cd_conj(d, &mut dbar[..h]);
    let mut t1 = [0.0; MAX_DIM];
    let mut t2 = [0.0; MAX_DIM];
    // first half: ac − d̄b
    cd_mul(a, c, &mut t1[..h]);
    cd_mul(&dbar[..h], b, &mut t2[..h]);
    for i in 0..h {
        out[i] = t1[i] - t2[i];
    }
    // second half: da + bc̄
    cd_mul(d, a, &mut t1[..h]);
    cd_mul(b, &cbar[..h], &mut t2[..h]);
    for i in 0..h {
        out[h + i] = t1[i] + t2[i];
    }
}

/// An element of a division algebra.
#[derive(Clone, Copy, PartialEq)]
pub struct Element {
    tag: Algebra,
    coords: [f64; MAX_DIM],
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.tag, self.coords())
    }
}

impl Element {
    /// Builds an element from exactly `tag.dim()` finite coordinates.
    pub fn new(tag: Algebra, coords: &[f64]) -> Result<Self> {
        if coords.len() != tag.dim() {
            return Err(Error::BadDimension(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        let mut c = [0.0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Ok(Element { tag, coords: c })
    }

    /// Infers the algebra from the coordinate count.
    pub fn from_coords(coords: &[f64]) -> Result<Self> {
        Element::new(Algebra::from_dim(coords.len())?, coords)
    }

    pub fn zero(tag: Algebra) -> Self {
        Element {
            tag,
            coords: [0.0; MAX_DIM],
        }
    }

    pub fn one(tag: Algebra) -> Self {
        Element::real(tag, 1.0)
    }

    pub fn real(tag: Algebra, r: f64) -> Self {
        let mut e = Element::zero(tag);
        e.coords[0] = r;
        e
    }

    /// The basis element `e_k` (`e_0 = 1`).
    pub fn basis(tag: Algebra, k: usize) -> Self {
        assert!(k < tag.dim(), "basis index {k} out of range for {tag}");
        let mut e = Element::zero(tag);
        e.coords[k] = 1.0;
        e
    }

    /// Standard Gaussian coordinates.
    pub fn random<R: Rng + ?Sized>(tag: Algebra, rng: &mut R) -> Self {
        let mut e = Element::zero(tag);
        for c in e.coords[..tag.dim()].iter_mut() {
            *c = rng.sample(StandardNormal);
        }
        e
    }

    /// Uniformly distributed unit imaginary element.
    pub fn random_unit_imaginary<R: Rng + ?Sized>(tag: Algebra, rng: &mut R) -> Self {
        assert!(tag.dim() >= 2, "ℝ has no imaginary units");
        loop {
            let g = Element::random(tag, rng).imag();
            let n = g.norm();
            if n > 1e-12 {
                return g.scale(1.0 / n);
            }
        }
    }

    pub fn tag(&self) -> Algebra {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.tag.dim()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords[..self.tag.dim()]
    }

    pub fn coord(&self, k: usize) -> f64 {
        self.coords()[k]
    }

    pub fn re(&self) -> f64 {
        self.coords[0]
    }

    /// Imaginary part (real coordinate zeroed).
    pub fn imag(&self) -> Self {
        let mut e = *self;
        e.coords[0] = 0.0;
        e
    }

    pub fn is_real(&self) -> bool {
        self.coords()[1..].iter().all(|c| *c == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.coords().iter().all(|c| c.is_finite())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coords().iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product of the coordinate vectors.
    pub fn dot(&self, other: &Element) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn distance(&self, other: &Element) -> f64 {
        (*self - *other).norm()
    }

    pub fn conjugate(&self) -> Self {
        let mut e = *self;
        for c in e.coords[1..].iter_mut() {
            *c = -*c;
        }
        e
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut e = *self;
        for c in e.coords.iter_mut() {
            *c *= s;
        }
        e
    }

    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(self.conjugate().scale(1.0 / n2))
    }

    pub fn checked_mul(&self, other: &Element) -> Result<Self> {
        if self.tag != other.tag {
            return Err(Error::TagMismatch {
                left: self.tag,
                right: other.tag,
            });
        }
        Ok(self.mul_same(other))
    }

    fn mul_same(&self, other: &Element) -> Self {
        let t = self.tag.table();
        let mut out = [0.0; MAX_DIM];
        for i in 0..t.dim {
            let xi = self.coords[i];
            if xi == 0.0 {
                continue;
            }
            for j in 0..t.dim {
                out[t.index[i][j] as usize] += t.sign[i][j] * xi * other.coords[j];
            }
        }
        Element {
            tag: self.tag,
            coords: out,
        }
    }

    /// `x^k` with left bracketing `((x·x)·x)…`; `x^0 = 1`.
    pub fn powi(&self, k: u32) -> Self {
        let mut p = Element::one(self.tag);
        for _ in 0..k {
            p = p * *self;
        }
        p
    }

    /// `[x, y] = xy − yx`.
    pub fn commutator(&self, other: &Element) -> Self {
        *self * *other - *other * *self
    }

    /// `[x, y, z] = (xy)z − x(yz)`.
    pub fn associator(&self, y: &Element, z: &Element) -> Self {
        (*self * *y) * *z - *self * (*y * *z)
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        assert_eq!(self.tag, rhs.tag, "algebra mismatch in addition");
        let mut e = self;
        for (a, b) in e.coords.iter_mut().zip(rhs.coords) {
            *a += b;
        }
        e
    }
}

impl AddAssign for Element {
    fn add_assign(&mut self, rhs: Element) {
        *self = *self + rhs;
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        self + (-rhs)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(-1.0)
    }
}

/// Algebra product. Panics on mismatched algebras; see
/// [`Element::checked_mul`] for the fallible form.
impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        assert_eq!(self.tag, rhs.tag, "algebra mismatch in product");
        self.mul_same(&rhs)
    }
}

impl Mul<f64> for Element {
    type Output = Element;
    fn mul(self, rhs: f64) -> Element {
        self.scale(rhs)
    }
}

/// A real-linear map `A → A`, stored as a `d × d` matrix acting on coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    tag: Algebra,
    matrix: DMatrix<f64>,
}

/// Residuals of the automorphism invariants for a [`LinearMap`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AutomorphismReport {
    /// `‖g(1) − 1‖`.
    pub unit: f64,
    /// `max |GᵀG − I|`.
    pub orthogonality: f64,
    /// `max ‖g(xy) − g(x)g(y)‖` over the sampled unit pairs.
    pub multiplicativity: f64,
}

impl AutomorphismReport {
    pub fn passes(&self) -> bool {
        self.unit < tolerances::AUTOMORPHISM_ORTHO
            && self.orthogonality < tolerances::AUTOMORPHISM_ORTHO
            && self.multiplicativity < tolerances::AUTOMORPHISM_MUL
    }
}

impl LinearMap {
    pub fn new(tag: Algebra, matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != tag.dim() || matrix.ncols() != tag.dim() {
            return Err(Error::BadDimension(matrix.nrows()));
        }
        Ok(LinearMap { tag, matrix })
    }

    pub fn identity(tag: Algebra) -> Self {
        LinearMap {
            tag,
            matrix: DMatrix::identity(tag.dim(), tag.dim()),
        }
    }

    /// Matrix whose `j`-th column is `f(e_j)`.
    pub fn from_fn(tag: Algebra, f: impl Fn(&Element) -> Element) -> Self {
        let d = tag.dim();
        let mut m = DMatrix::zeros(d, d);
        for j in 0..d {
            let col = f(&Element::basis(tag, j));
            for i in 0..d {
                m[(i, j)] = col.coord(i);
            }
        }
        LinearMap { tag, matrix: m }
    }

    pub fn tag(&self) -> Algebra {
        self.tag
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn apply(&self, x: &Element) -> Element {
        assert_eq!(self.tag, x.tag(), "algebra mismatch in linear map");
        let d = self.tag.dim();
        let mut out = Element::zero(self.tag);
        for i in 0..d {
            let mut s = 0.0;
            for j in 0..d {
                s += self.matrix[(i, j)] * x.coords[j];
            }
            out.coords[i] = s;
        }
        out
    }

    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.tag, other.tag);
        LinearMap {
            tag: self.tag,
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }

    /// Checks the automorphism invariants on `pairs` random unit pairs.
    pub fn automorphism_report<R: Rng + ?Sized>(&self, rng: &mut R, pairs: usize) -> AutomorphismReport {
        let one = Element::one(self.tag);
        let unit = self.apply(&one).distance(&one);
        let d = self.tag.dim();
        let gram = self.matrix.transpose() * &self.matrix - DMatrix::<f64>::identity(d, d);
        let orthogonality = gram.amax();
        let mut multiplicativity: f64 = 0.0;
        for _ in 0..pairs {
            let x = unit_random(self.tag, rng);
            let y = unit_random(self.tag, rng);
            let lhs = self.apply(&(x * y));
            let rhs = self.apply(&x) * self.apply(&y);
            multiplicativity = multiplicativity.max(lhs.distance(&rhs));
        }
        AutomorphismReport {
            unit,
            orthogonality,
            multiplicativity,
        }
    }
}

fn unit_random<R: Rng + ?Sized>(tag: Algebra, rng: &mut R) -> Element {
    let g = Element::random(tag, rng);
    g.scale(1.0 / g.norm())
}

/// Inner automorphism `q ↦ h q h⁻¹` of ℍ.
pub fn conjugation_automorphism(h: &Element) -> Result<LinearMap> {
    if h.tag() != Algebra::Quaternion {
        return Err(Error::WrongAlgebra {
            op: "conjugation_automorphism",
            expected: "quaternions",
            got: h.tag(),
        });
    }
    let hinv = h.inverse()?;
    Ok(LinearMap::from_fn(Algebra::Quaternion, |q| (*h * *q) * hinv))
}

/// Octonion derivation `D_{a,b}(x) = [[a,b],x] − 3[a,b,x]`.
pub fn derivation(a: &Element, b: &Element) -> Result<LinearMap> {
    for e in [a, b] {
        if e.tag() != Algebra::Octonion {
            return Err(Error::WrongAlgebra {
                op: "derivation",
                expected: "octonions",
                got: e.tag(),
            });
        }
    }
    let ab = a.commutator(b);
    Ok(LinearMap::from_fn(Algebra::Octonion, |x| {
        ab.commutator(x) - a.associator(b, x).scale(3.0)
    }))
}

/// G₂ element `exp(t·D_{a,b})`.
pub fn automorphism_from_derivation(a: &Element, b: &Element, t: f64) -> Result<LinearMap> {
    let d = derivation(a, b)?;
    Ok(LinearMap {
        tag: Algebra::Octonion,
        matrix: expm(&(d.matrix * t)),
    })
}

/// Worst relative violations of the composition-algebra laws.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LawErrors {
    pub cases: usize,
    /// `|‖xy‖ − ‖x‖‖y‖| / (‖x‖‖y‖)`.
    pub norm: f64,
    /// Left and right alternativity, `(xx)y − x(xy)` and `(yx)x − y(xx)`.
    pub alternativity: f64,
    /// `(xx)x − x(xx)` and `(xx)(xx) − ((xx)x)x`.
    pub power_associativity: f64,
}

impl LawErrors {
    pub fn passes(&self) -> bool {
        self.norm < tolerances::ALGEBRA_REL
            && self.alternativity < tolerances::ALGEBRA_REL
            && self.power_associativity < tolerances::ALGEBRA_REL
    }
}

pub fn law_errors<R: Rng + ?Sized>(tag: Algebra, cases: usize, rng: &mut R) -> LawErrors {
    let mut e = LawErrors {
        cases,
        norm: 0.0,
        alternativity: 0.0,
        power_associativity: 0.0,
    };
    for _ in 0..cases {
        let x = Element::random(tag, rng);
        let y = Element::random(tag, rng);
        let (nx, ny) = (x.norm(), y.norm());
        let xx = x * x;
        e.norm = e.norm.max(((x * y).norm() - nx * ny).abs() / (nx * ny));
        let alt = (xx * y - x * (x * y)).norm().max(((y * x) * x - y * xx).norm());
        e.alternativity = e.alternativity.max(alt / (nx * nx * ny));
        let pow = (xx * x - x * xx).norm().max((xx * xx - (xx * x) * x).norm() / nx);
        e.power_associativity = e.power_associativity.max(pow / (nx * nx * nx));
    }
    e
}

/// `‖[e₁, e₂, e₄]‖`, which is 2 in 𝕆 and 0 in the associative algebras.
pub fn associator_witness() -> f64 {
    let o = Algebra::Octonion;
    Element::basis(o, 1)
        .associator(&Element::basis(o, 2), &Element::basis(o, 4))
        .norm()
}
