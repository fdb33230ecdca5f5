mod common;

use common::*;
use proptest::prelude::*;
use twodof_core::polyalg::{q, Poly, PolyMat, RatFn, RatMat, Rational};

/// Cofactor expansion along the first row.
fn cofactor_det(m: &PolyMat) -> Poly {
    let n = m.rows();
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = m.get(0, j) * &cofactor_det(&m.submatrix(&rows, &cols));
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn poly_mat(rows: usize, cols: usize, max_deg: usize) -> impl Strategy<Value = PolyMat> {
    prop::collection::vec(int_poly(max_deg, 3), rows * cols).prop_map(move |e| PolyMat::new(rows, cols, e).unwrap())
}

fn ratfn_deg(max_deg: usize) -> impl Strategy<Value = RatFn> {
    (int_poly(max_deg, 4), nonzero_poly(max_deg, 4)).prop_map(|(n, d)| RatFn::new(n, d).unwrap())
}

fn ratfn() -> impl Strategy<Value = RatFn> {
    ratfn_deg(2)
}

/// Products of linear factors over a small root set, so sums and products
/// cancel often.
fn factored_ratfn() -> impl Strategy<Value = RatFn> {
    let roots = || prop::collection::vec(-2i64..=2, 0..=3);
    (-3i64..=3, roots(), roots()).prop_map(|(k, zs, ps)| {
        let from = |rs: &[i64]| rs.iter().fold(Poly::one(), |acc, &r| &acc * &Poly::from_i64(&[-r, 1]));
        RatFn::new(from(&zs).scale(&q(k)), from(&ps)).unwrap()
    })
}

fn ratmat_deg(rows: usize, cols: usize, max_deg: usize) -> impl Strategy<Value = RatMat> {
    prop::collection::vec(ratfn_deg(max_deg), rows * cols).prop_map(move |e| RatMat::new(rows, cols, e).unwrap())
}

fn ratmat(rows: usize, cols: usize) -> impl Strategy<Value = RatMat> {
    ratmat_deg(rows, cols, 2)
}

#[test]
fn divmod_examples() {
    assert_eq!(p(&[4, -4, 1]).divmod(&p(&[-2, 1])).unwrap(), (p(&[-2, 1]), Poly::zero()));
    assert_eq!(p(&[1, 1]).divmod(&p(&[1])).unwrap(), (p(&[1, 1]), Poly::zero()));
    assert_eq!(p(&[1, 0, 0, 1]).divmod(&p(&[1, 0, 1])).unwrap(), (p(&[0, 1]), p(&[1, -1])));
    assert!(p(&[1]).divmod(&Poly::zero()).is_err());
}

#[test]
fn gcd_examples() {
    assert_eq!(Poly::gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
    let n = &p(&[-1, 1]) * &p(&[2, 1]);
    assert_eq!(Poly::gcd(&n, &p(&[-2, 1]).pow(2)).unwrap(), Poly::one());
    assert!(Poly::gcd(&Poly::zero(), &Poly::zero()).is_err());
}

#[test]
fn relative_degree_examples() {
    let plant = RatFn::new(&p(&[-1, 1]) * &p(&[2, 1]), p(&[-2, 1]).pow(2)).unwrap();
    assert_eq!(plant.relative_degree(), Some(0));
    assert_eq!(RatFn::new(Poly::one(), p(&[1, 1]).pow(2)).unwrap().relative_degree(), Some(2));
    let imp = rf(&[1, 0, 1], &[1, 1]);
    assert_eq!(imp.relative_degree(), Some(-1));
    assert!(!RatMat::scalar(imp).is_proper());
    assert_eq!(RatFn::zero().relative_degree(), None);
}

#[test]
fn eval_examples() {
    assert_eq!(rf(&[-1, 1], &[2, 1]).eval(&q(0)), Some(Rational::new((-1).into(), 2.into())));
    assert!(RatMat::scalar(rf(&[1], &[-2, 1])).eval(&q(2)).value().is_none());
    let plant = RatMat::scalar(RatFn::new(&p(&[-1, 1]) * &p(&[2, 1]), p(&[-2, 1]).pow(2)).unwrap());
    assert_eq!(plant.eval(&q(1)).value().unwrap().get(0, 0), &q(0));
}

proptest! {
    #[test]
    fn divmod_reconstructs(a in int_poly(6, 9), b in nonzero_poly(4, 9)) {
        let (qt, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&b * &qt) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gcd_matches_root_multisets(
        common in prop::collection::vec(-4i64..=4, 0..3),
        ra in prop::collection::vec(5i64..=8, 0..3),
        rb in prop::collection::vec(-8i64..=-5, 0..3),
    ) {
        let roots = |v: &[i64]| Poly::from_roots(&v.iter().map(|&r| q(r)).collect::<Vec<_>>());
        let a = &roots(&common) * &roots(&ra);
        let b = &roots(&common) * &roots(&rb);
        prop_assert_eq!(Poly::gcd(&a, &b).unwrap(), roots(&common));
    }

    #[test]
    fn hermite_is_unimodular_echelon(a in poly_mat(3, 2, 2)) {
        let (h, u) = a.hermite();
        prop_assert_eq!(u.mul(&a).unwrap(), h.clone());
        prop_assert!(u.is_unimodular());
        let mut last: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            let lead = (0..h.cols()).find(|&j| !h.get(i, j).is_zero());
            match lead {
                None => seen_zero = true,
                Some(c) => {
                    prop_assert!(!seen_zero, "nonzero row after a zero row");
                    prop_assert!(last.map_or(true, |l| c > l), "pivots not strictly increasing");
                    prop_assert!(h.get(i, c).leading().unwrap() == &q(1), "pivot not monic");
                    for k in 0..i {
                        prop_assert!(h.get(k, c).is_zero() || h.get(k, c).degree() < h.get(i, c).degree());
                    }
                    last = Some(c);
                }
            }
        }
    }

    #[test]
    fn det_matches_cofactor_expansion(a in poly_mat(3, 3, 2)) {
        prop_assert_eq!(a.det().unwrap(), cofactor_det(&a));
    }

    #[test]
    fn det_matches_cofactor_expansion_4x4(a in poly_mat(4, 4, 1)) {
        prop_assert_eq!(a.det().unwrap(), cofactor_det(&a));
    }

    #[test]
    fn sums_and_products_are_canonical(a in factored_ratfn(), b in factored_ratfn()) {
        let (an, ad, bn, bd) = (a.num(), a.den(), b.num(), b.den());
        let sum = RatFn::new(&(an * bd) + &(bn * ad), ad * bd).unwrap();
        let product = RatFn::new(an * bn, ad * bd).unwrap();
        for (fast, slow) in [(&a + &b, sum), (&a * &b, product)] {
            prop_assert_eq!(fast.num(), slow.num());
            prop_assert_eq!(fast.den(), slow.den());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(r in ratfn()) {
        let again = RatFn::new(r.num().clone(), r.den().clone()).unwrap();
        prop_assert_eq!(&again, &r);
        prop_assert!(r.den().leading().unwrap() == &q(1));
        prop_assert!(Poly::gcd(r.num(), r.den()).unwrap().is_one() || r.is_zero());
    }

    #[test]
    fn ring_laws(a in ratmat_deg(2, 2, 1), b in ratmat_deg(2, 2, 1), c in ratmat_deg(2, 2, 1)) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn eval_commutes_with_mul(a in ratmat(2, 2), b in ratmat(2, 2), x in -6i64..=6) {
        let x = q(x) + Rational::new(1.into(), 7.into());
        if let (Some(ea), Some(eb)) = (a.eval(&x).value(), b.eval(&x).value()) {
            let eab = a.mul(&b).unwrap().eval(&x).value().unwrap();
            prop_assert_eq!(eab, ea.mul(&eb).unwrap());
        }
    }

    #[test]
    fn inverse_is_two_sided(a in ratmat(2, 2)) {
        if !a.det().unwrap().is_zero() {
            let inv = a.inv().unwrap();
            prop_assert!(a.mul(&inv).unwrap().is_identity());
            prop_assert!(inv.mul(&a).unwrap().is_identity());
        }
    }
}
