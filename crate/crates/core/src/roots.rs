//! Floating-point root finding, used only for reporting root locations and
//! as a seed for exact rational-root recovery.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::polyalg::{to_f64, Poly, Rational};

/// All complex roots of `p` (with multiplicity), via Durand-Kerner followed
/// by Newton polishing. Returns an empty list for constants.
pub fn complex_roots(p: &Poly) -> Vec<Complex64> {
    let Some(n) = p.degree() else { return Vec::new() };
    if n == 0 {
        return Vec::new();
    }
    let lc = to_f64(p.leading().expect("nonzero"));
    let c: Vec<f64> = p.to_f64_coeffs().iter().map(|x| x / lc).collect();
    if n == 1 {
        return vec![Complex64::new(-c[0], 0.0)];
    }
    // Cauchy bound on root modulus.
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * core::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(0.5 * radius, theta)
        })
        .collect();
    let eval = |x: Complex64| {
        c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * x + a)
    };
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 1e-12);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm() / (1.0 + z[i].norm()));
        }
        if delta < 1e-15 {
            break;
        }
    }
    for root in z.iter_mut() {
        *root = newton_polish(p, *root, 1e-12);
    }
    z
}

/// Newton iteration on `p` until the step falls below `tol` (relative) or the
/// residual stops improving.
pub fn newton_polish(p: &Poly, mut x: Complex64, tol: f64) -> Complex64 {
    let dp = p.derivative();
    let mut best = p.eval_complex(x).norm();
    for _ in 0..100 {
        let d = dp.eval_complex(x);
        if d.norm() == 0.0 {
            break;
        }
        let step = p.eval_complex(x) / d;
        let cand = x - step;
        let r = p.eval_complex(cand).norm();
        if r > best && step.norm() > tol * (1.0 + x.norm()) {
            break;
        }
        x = cand;
        best = best.min(r);
        if step.norm() <= tol * (1.0 + x.norm()) {
            break;
        }
    }
    x
}

/// Rational roots of a square-free polynomial. Candidates come from
/// continued-fraction convergents of the numerical roots and are confirmed by
/// exact evaluation, so the result never contains a spurious root.
pub fn rational_roots_squarefree(f: &Poly) -> Vec<Rational> {
    let Some(n) = f.degree() else { return Vec::new() };
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![crate::polyalg::poly::linear_root(f).expect("degree one")];
    }
    // Denominators of rational roots divide the leading coefficient of the
    // primitive integer multiple.
    let denom_lcm = f
        .coeffs()
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let lead = (f.leading().expect("nonzero") * Rational::from_integer(denom_lcm)).abs();
    let bound = to_f64(&lead).clamp(1.0, 1e12);

    let mut out: Vec<Rational> = Vec::new();
    if f.coeff(0).is_zero() {
        out.push(Rational::zero());
    }
    for z in complex_roots(f) {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        let tol = 1e-7 * (1.0 + z.re.abs());
        for cand in convergents(z.re, bound) {
            if (to_f64(&cand) - z.re).abs() > tol {
                continue;
            }
            if !out.contains(&cand) && f.eval(&cand).is_zero() {
                out.push(cand);
                break;
            }
        }
    }
    out.sort();
    out
}

/// Continued-fraction convergents of `x` with denominators up to `max_den`.
fn convergents(x: f64, max_den: f64) -> Vec<Rational> {
    use num_bigint::BigInt;
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..64 {
        let a = libm_floor(r);
        if a.abs() > 1e15 {
            break;
        }
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if to_f64(&Rational::from_integer(k2.clone())) > max_den {
            break;
        }
        out.push(Rational::new(h2.clone(), k2.clone()));
        h0 = core::mem::replace(&mut h1, h2);
        k0 = core::mem::replace(&mut k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-18 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

fn libm_floor(x: f64) -> f64 {
    num_traits::float::FloatCore::floor(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{q, qf};

    #[test]
    fn roots_of_quadratic() {
        let p = Poly::from_i64(&[2, 3, 1]);
        let mut r: Vec<f64> = complex_roots(&p).iter().map(|z| z.re).collect();
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((r[0] + 2.0).abs() < 1e-12 && (r[1] + 1.0).abs() < 1e-12);
        let c = complex_roots(&Poly::from_i64(&[1, 0, 1]));
        assert!(c.iter().all(|z| (z.im.abs() - 1.0).abs() < 1e-12 && z.re.abs() < 1e-12));
    }

    #[test]
    fn rational_roots_found_exactly() {
        let f = Poly::from_roots(&[qf(-3, 7), q(5), qf(11, 2)]);
        assert_eq!(rational_roots_squarefree(&f), vec![qf(-3, 7), q(5), qf(11, 2)]);
        let g = &Poly::from_i64(&[-2, 0, 1]) * &Poly::from_i64(&[0, 1]);
        assert_eq!(rational_roots_squarefree(&g), vec![q(0)]);
    }
}
