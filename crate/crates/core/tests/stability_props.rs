mod common;

use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twodof_core::polyalg::{q, to_f64, Poly, RatFn, RatMat};
use twodof_core::stability::{is_hurwitz, InstabilityReason, Stability};

/// Eigenvalues of the companion matrix of `p`.
fn companion_roots(p: &Poly) -> Vec<nalgebra::Complex<f64>> {
    let c: Vec<f64> = p.coeffs().iter().map(to_f64).collect();
    let n = c.len() - 1;
    let lead = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    m.complex_eigenvalues().iter().cloned().collect()
}

/// `Some(stable)` when no root lies within `band` of the imaginary axis.
fn oracle(p: &Poly, band: f64) -> Option<bool> {
    if p.degree() == Some(0) {
        return Some(true);
    }
    let roots = companion_roots(p);
    if roots.iter().any(|z| z.re.abs() <= band) {
        return None;
    }
    Some(roots.iter().all(|z| z.re < 0.0))
}

#[test]
fn hurwitz_examples() {
    assert!(is_hurwitz(&p(&[2, 3, 1])).unwrap().is_stable());
    let v = is_hurwitz(&p(&[4, -4, 1])).unwrap();
    assert!(!v.is_stable());
    assert_eq!(v.factor_polys(), vec![p(&[-2, 1])]);
    let v = is_hurwitz(&p(&[1, 0, 1])).unwrap();
    assert!(!v.is_stable());
    assert_eq!(v.offending_factors()[0].reason, InstabilityReason::ImaginaryAxis);
    assert_eq!(oracle(&p(&[1, 0, 1]), 1e-9), None);
    assert!(is_hurwitz(&Poly::zero()).is_err());
}

#[test]
fn rational_stability_examples() {
    assert!(RatFn::new(p(&[2, 1]), p(&[1, 1]).pow(2)).unwrap().is_stable());
    let r = RatFn::new(p(&[2, 1]), &p(&[-1, 1]) * &p(&[1, 1])).unwrap();
    assert_eq!(r.stability().factor_polys(), vec![p(&[-1, 1])]);
    assert!(RatFn::zero().is_stable());
    assert!(RatFn::new(p(&[2, 1]), p(&[1, 1]).pow(2)).unwrap().is_rh_inf());
    assert!(!RatFn::from_poly(p(&[1, 1])).is_rh_inf());
    assert!(!rf(&[1], &[-1, 1]).is_rh_inf());
}

/// Routh verdicts against companion-matrix eigenvalues on 1000 random
/// polynomials of degree at most 8, skipping roots within 1e-9 of the axis.
#[test]
fn routh_agrees_with_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut compared = 0;
    for _ in 0..1000 {
        let deg = rng.gen_range(1..=8);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-10..=10)).collect();
        if c[deg] == 0 {
            c[deg] = 1;
        }
        // bias toward stable candidates so both verdicts occur
        if rng.gen_bool(0.5) {
            c.iter_mut().for_each(|x| *x = x.abs().max(1));
        }
        let poly = Poly::from_i64(&c);
        let routh = is_hurwitz(&poly).unwrap().is_stable();
        if let Some(expected) = oracle(&poly, 1e-9) {
            assert_eq!(routh, expected, "disagreement on {poly}");
            compared += 1;
        }
    }
    assert!(compared > 900);
}

proptest! {
    #[test]
    fn product_rule(a in nonzero_poly(4, 6), b in nonzero_poly(4, 6)) {
        let ab = is_hurwitz(&(&a * &b)).unwrap().is_stable();
        prop_assert_eq!(ab, is_hurwitz(&a).unwrap().is_stable() && is_hurwitz(&b).unwrap().is_stable());
    }

    #[test]
    fn stability_ignores_scaling_and_cancellation(
        num in nonzero_poly(3, 5),
        den in nonzero_poly(3, 5),
        common in nonzero_poly(2, 5),
        k in 1i64..=9,
    ) {
        let r = RatFn::new(num.clone(), den.clone()).unwrap();
        let scaled = RatFn::new(num.scale(&q(k)), den.scale(&q(-k))).unwrap();
        let padded = RatFn::new(&num * &common, &den * &common).unwrap();
        prop_assert_eq!(r.is_stable(), scaled.is_stable());
        prop_assert_eq!(r.is_stable(), padded.is_stable());
    }

    #[test]
    fn hurwitz_constructions_are_stable(h in hurwitz_poly(4)) {
        prop_assert!(is_hurwitz(&h).unwrap().is_stable());
        prop_assert!(RatMat::scalar(RatFn::new(Poly::one(), h).unwrap()).is_rh_inf());
    }
}
