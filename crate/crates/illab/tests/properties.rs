//! Property tests for the algebra and metric primitives.

use illab::geometry::{chordal_distance, ProjectiveDirection};
use illab::poly::{parse_polynomial, Ideal, Monomial, Polynomial};
use illab::tol::Tolerances;
use num_complex::Complex64;
use proptest::prelude::*;

fn arb_coeff() -> impl Strategy<Value = Complex64> {
    (
        prop_oneof![(-10.0..10.0f64), (0.001..0.1f64)],
        -10.0..10.0f64,
    )
        .prop_map(|(re, im)| Complex64::new(re, im))
        .prop_filter("nonzero", |c| c.norm() > 1e-6)
}

fn arb_polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..5, 0u32..5), arb_coeff()), 1..8).prop_map(|terms| {
        let mut p = Polynomial::zero();
        for ((a, b), c) in terms {
            p.add_term(Monomial::xy(a, b), c);
        }
        p
    })
}

proptest! {
    #[test]
    fn display_parse_round_trip(p in arb_polynomial()) {
        prop_assume!(!p.is_zero());
        let q = parse_polynomial(&p.to_string()).expect("own display parses");
        prop_assert!((&p - &q).max_coeff() <= 1e-12 * p.max_coeff());
    }

    #[test]
    fn normal_form_is_idempotent(p in arb_polynomial()) {
        let tol = Tolerances::default();
        let i0 = Ideal::from_generators(
            vec![
                parse_polynomial("z1*z2").unwrap(),
                parse_polynomial("z2^2").unwrap(),
                parse_polynomial("z1^3").unwrap(),
            ],
            8,
            &tol,
        )
        .unwrap();
        let nf1 = i0.normal_form(&p, &tol).unwrap();
        let nf2 = i0.normal_form(&nf1, &tol).unwrap();
        prop_assert!((&nf1 - &nf2).max_coeff() <= 1e-10 * p.max_coeff().max(1.0));
        // the defect is a member
        let defect = &p - &nf1;
        prop_assert!(i0.contains(&defect, &tol).unwrap());
    }

    #[test]
    fn chordal_metric_axioms(
        (a_re, a_im, b_re, b_im) in (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64),
        (c_re, c_im, d_re, d_im) in (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64),
        scale in 0.1..10.0f64,
    ) {
        let u = [Complex64::new(a_re, a_im), Complex64::new(b_re, b_im)];
        let v = [Complex64::new(c_re, c_im), Complex64::new(d_re, d_im)];
        prop_assume!(u[0].norm() + u[1].norm() > 1e-3);
        prop_assume!(v[0].norm() + v[1].norm() > 1e-3);
        let du = ProjectiveDirection::new(u).unwrap();
        let dv = ProjectiveDirection::new(v).unwrap();
        let d1 = chordal_distance(&du, &dv);
        let d2 = chordal_distance(&dv, &du);
        prop_assert!((d1 - d2).abs() <= 1e-14);
        prop_assert!((0.0..=1.0).contains(&d1));
        prop_assert!(chordal_distance(&du, &du) == 0.0);
        // rescaling a representative does not move the class
        let scaled = ProjectiveDirection::new([u[0] * scale, u[1] * scale]).unwrap();
        prop_assert!(chordal_distance(&du, &scaled) <= 1e-12);
    }
}
