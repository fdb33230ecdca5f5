#![allow(dead_code)]

use proptest::prelude::*;
use twodof_core::polyalg::{q, Poly, RatFn, RatMat};

pub fn p(c: &[i64]) -> Poly {
    Poly::from_i64(c)
}

pub fn rf(n: &[i64], d: &[i64]) -> RatFn {
    RatFn::new(p(n), p(d)).unwrap()
}

/// Integer-coefficient polynomial of degree at most `max_deg`.
pub fn int_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| Poly::from_i64(&c))
}

pub fn nonzero_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = Poly> {
    int_poly(max_deg, bound).prop_filter("nonzero", |p| !p.is_zero())
}

/// Product of `s + a` and `s^2 + b s + c` factors with positive `a`, `b`, `c`,
/// hence Hurwitz by construction.
pub fn hurwitz_poly(max_factors: usize) -> impl Strategy<Value = Poly> {
    let factor = prop_oneof![
        (1i64..=5).prop_map(|a| p(&[a, 1])),
        (1i64..=4, 1i64..=6).prop_map(|(b, c)| p(&[c, b, 1])),
    ];
    prop::collection::vec(factor, 0..=max_factors)
        .prop_map(|fs| fs.iter().fold(Poly::one(), |acc, f| &acc * f))
}

/// Proper, stable rational function with a denominator of degree >= 1 when
/// `max_factors >= 1`.
pub fn stable_proper(max_factors: usize, bound: i64) -> impl Strategy<Value = RatFn> {
    (hurwitz_poly(max_factors), prop::collection::vec(-bound..=bound, 1..=5)).prop_map(|(den, c)| {
        let deg = den.degree().unwrap();
        let c: Vec<i64> = c.into_iter().take(deg + 1).collect();
        RatFn::new(Poly::from_i64(&c), den).unwrap()
    })
}

/// Stable proper `K` of numerator and denominator degree at most 2.
pub fn youla_parameter() -> impl Strategy<Value = RatFn> {
    stable_proper(1, 4)
}

/// Proper SISO plant whose denominator may carry right-half-plane roots.
pub fn siso_plant() -> impl Strategy<Value = RatFn> {
    (
        prop::collection::vec(-3i64..=3, 1..=3),
        prop::collection::vec(-4i64..=4, 1..=3),
    )
        .prop_filter_map("proper nonzero plant", |(roots, num)| {
            let den = Poly::from_roots(&roots.iter().map(|&r| q(r)).collect::<Vec<_>>());
            let num = Poly::from_i64(&num);
            if num.is_zero() || num.degree() > den.degree() {
                return None;
            }
            let r = RatFn::new(num, den).ok()?;
            (r.den().degree().unwrap_or(0) > 0).then_some(r)
        })
}

/// 2x2 proper plant with small first-order entries and nonzero determinant.
pub fn plant_2x2(allow_unstable: bool) -> impl Strategy<Value = RatMat> {
    let lo = if allow_unstable { -2 } else { 1 };
    let entry = prop_oneof![
        1 => Just(RatFn::zero()),
        4 => (-3i64..=3, 0i64..=1, lo..=3i64).prop_filter_map("entry", |(k, b, a)| {
            if k == 0 {
                return None;
            }
            RatFn::new(p(&[k, b * k]).scale(&q(1)), p(&[a, 1])).ok().filter(|r| r.is_proper())
        }),
    ];
    prop::collection::vec(entry, 4)
        .prop_map(|e| RatMat::new(2, 2, e).unwrap())
        .prop_filter("nonsingular", |m| !m.det().unwrap().is_zero())
}
