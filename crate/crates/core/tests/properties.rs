use proptest::prelude::*;
use rootflow::algebra::{automorphism_from_derivation, conjugation_automorphism, Algebra, Element};
use rootflow::dynamics::{radii, Radii};
use rootflow::manifolds::{central_root_set, orbit_invariance_check};
use rootflow::poly::{CentralQuadratic, Polynomial};

fn element(tag: Algebra) -> impl Strategy<Value = Element> {
    prop::collection::vec(-3.0..3.0f64, tag.dim()).prop_map(move |c| Element::new(tag, &c).unwrap())
}

fn nonzero(tag: Algebra) -> impl Strategy<Value = Element> {
    element(tag).prop_filter("away from zero", |x| x.norm() > 1e-2)
}

fn unit_imaginary(tag: Algebra) -> impl Strategy<Value = Element> {
    element(tag).prop_filter_map("imaginary part away from zero", |x| {
        let v = x.imag();
        (v.norm() > 1e-2).then(|| v.scale(1.0 / v.norm()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn octonion_norm_is_multiplicative(x in element(Algebra::Octonion), y in element(Algebra::Octonion)) {
        let lhs = (x * y).norm();
        let rhs = x.norm() * y.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
    }

    #[test]
    fn octonion_moufang_identity(
        x in element(Algebra::Octonion),
        y in element(Algebra::Octonion),
        z in element(Algebra::Octonion),
    ) {
        // z(x(zy)) = ((zx)z)y
        let lhs = z * (x * (z * y));
        let rhs = ((z * x) * z) * y;
        let scale = 1.0 + z.norm() * z.norm() * x.norm() * y.norm();
        prop_assert!(lhs.distance(&rhs) <= 1e-12 * scale);
    }

    #[test]
    fn inverse_is_two_sided(x in nonzero(Algebra::Octonion)) {
        let inv = x.inverse().unwrap();
        let one = Element::one(Algebra::Octonion);
        prop_assert!((x * inv).distance(&one) < 1e-12);
        prop_assert!((inv * x).distance(&one) < 1e-12);
    }

    #[test]
    fn conjugation_keeps_sphere_roots(h in nonzero(Algebra::Quaternion), u in unit_imaginary(Algebra::Quaternion)) {
        let p = Polynomial::real(Algebra::Quaternion, &[1.0, 0.0, 1.0]).unwrap();
        let g = conjugation_automorphism(&h).unwrap();
        prop_assert!(orbit_invariance_check(&p, &g, &u).unwrap() < 1e-24);
    }

    #[test]
    fn g2_elements_are_automorphisms(
        a in element(Algebra::Octonion),
        b in element(Algebra::Octonion),
        t in -1.5..1.5f64,
        x in element(Algebra::Octonion),
        y in element(Algebra::Octonion),
    ) {
        let g = automorphism_from_derivation(&a.imag(), &b.imag(), t).unwrap();
        let lhs = g.apply(&(x * y));
        let rhs = g.apply(&x) * g.apply(&y);
        prop_assert!(lhs.distance(&rhs) <= 1e-8 * (1.0 + x.norm() * y.norm()));
        prop_assert!(g.apply(&Element::one(Algebra::Octonion)).distance(&Element::one(Algebra::Octonion)) < 1e-10);
    }

    #[test]
    fn polished_sphere_points_have_tiny_potential(
        re in -2.0..2.0f64,
        radius in 0.2..3.0f64,
        u in unit_imaginary(Algebra::Octonion),
        jitter in element(Algebra::Octonion),
    ) {
        // x² − 2re·x + re² + r² has the sphere re + r·S⁶ as roots.
        let tag = Algebra::Octonion;
        let p = Polynomial::real(tag, &[re * re + radius * radius, -2.0 * re, 1.0]).unwrap();
        let x0 = Element::real(tag, re) + u.scale(radius) + jitter.scale(1e-4);
        let polished = p.newton_polish(&x0);
        prop_assert!(p.potential(&polished.point) < 1e-18);
        let set = central_root_set(&p).unwrap();
        prop_assert!(set.strata[0].distance(&polished.point) < 1e-9);
    }

    #[test]
    fn right_division_reconstructs(
        coeffs in prop::collection::vec(element(Algebra::Quaternion), 1..6),
        trace in -3.0..3.0f64,
        normterm in 0.1..4.0f64,
    ) {
        let mut coeffs = coeffs;
        coeffs.push(Element::one(Algebra::Quaternion));
        let p = Polynomial::new(Algebra::Quaternion, coeffs.clone()).unwrap();
        let m = CentralQuadratic { trace, normterm };
        let back = p.right_divide_central(&m).reconstruct(&m);
        let scale = 1.0 + p.max_coeff_norm() * (1.0 + trace.abs() + normterm).powi(coeffs.len() as i32);
        for (c, r) in coeffs.iter().zip(&back) {
            prop_assert!(c.distance(r) <= 1e-12 * scale);
        }
        for r in back.iter().skip(coeffs.len()) {
            prop_assert!(r.norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn radii_satisfy_vieta(a in 0.1..10.0f64, frac in 0.01..0.99f64, k in 1u32..5) {
        // b strictly below a²/4 keeps Δ > 0.
        let b = frac * a * a / 4.0;
        let Radii::Spheres { inner, outer } = radii(a, b, k).unwrap() else {
            return Err(TestCaseError::fail("expected two spheres"));
        };
        let (yi, yo) = (inner.powi(k as i32), outer.powi(k as i32));
        prop_assert!(inner <= outer);
        prop_assert!((yi + yo - a).abs() <= 1e-12 * a);
        prop_assert!((yi * yo - b).abs() <= 1e-12 * b.max(1.0));
    }
}
