//! Exact continuous-time stability: Routh arrays over the rationals and RH-inf
//! membership of rational functions and matrices.
//!
//! "Stable" means every pole lies in the open left half-plane. Roots on the
//! imaginary axis count as unstable.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polyalg::{Poly, RatFn, RatMat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstabilityReason {
    RightHalfPlane,
    ImaginaryAxis,
}

impl fmt::Display for InstabilityReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstabilityReason::RightHalfPlane => write!(f, "right-half-plane root"),
            InstabilityReason::ImaginaryAxis => write!(f, "imaginary-axis root"),
        }
    }
}

/// A factor of a denominator responsible for instability. When the factor
/// has no rational roots it may also carry stable roots; it is reported
/// whole because splitting it would need irrational arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OffendingFactor {
    pub factor: Poly,
    pub multiplicity: usize,
    pub reason: InstabilityReason,
}

impl fmt::Display for OffendingFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.factor)?;
        if self.multiplicity > 1 {
            write!(f, "^{}", self.multiplicity)?;
        }
        write!(f, " [{}]", self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StabilityVerdict {
    offending: Vec<OffendingFactor>,
}

impl StabilityVerdict {
    pub fn stable() -> Self {
        StabilityVerdict { offending: Vec::new() }
    }

    pub fn from_factors(offending: Vec<OffendingFactor>) -> Self {
        let mut v = StabilityVerdict::stable();
        for f in offending {
            v.push(f);
        }
        v
    }

    fn push(&mut self, f: OffendingFactor) {
        if let Some(existing) = self.offending.iter_mut().find(|o| o.factor == f.factor) {
            existing.multiplicity = existing.multiplicity.max(f.multiplicity);
        } else {
            self.offending.push(f);
        }
    }

    pub fn is_stable(&self) -> bool {
        self.offending.is_empty()
    }

    pub fn offending_factors(&self) -> &[OffendingFactor] {
        &self.offending
    }

    /// Offending factors as plain polynomials.
    pub fn factor_polys(&self) -> Vec<Poly> {
        self.offending.iter().map(|o| o.factor.clone()).collect()
    }

    pub fn merge(mut self, other: StabilityVerdict) -> Self {
        for f in other.offending {
            self.push(f);
        }
        self
    }
}

impl fmt::Display for StabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_stable() {
            return write!(f, "stable");
        }
        write!(f, "unstable: ")?;
        for (i, o) in self.offending.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", o)?;
        }
        Ok(())
    }
}

/// Routh array of a polynomial, built with exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouthTable {
    pub rows: Vec<Vec<Rational>>,
    /// Indices of rows that vanished identically and were replaced by the
    /// derivative of the auxiliary polynomial.
    pub auxiliary_rows: Vec<usize>,
    /// First row whose leading entry vanished while the rest did not; the
    /// table stops there.
    pub zero_pivot: Option<usize>,
}

impl RouthTable {
    /// Sign changes down the first column (only meaningful without a zero pivot).
    pub fn sign_changes(&self) -> usize {
        let signs: Vec<bool> =
            self.rows.iter().filter_map(|r| r.first()).filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Hurwitz iff the table completed without degeneracies and the first
    /// column has constant sign. A vanishing row means roots symmetric about
    /// the origin, hence never Hurwitz.
    pub fn is_hurwitz(&self) -> bool {
        self.zero_pivot.is_none() && self.auxiliary_rows.is_empty() && self.sign_changes() == 0
    }
}

pub fn routh_table(p: &Poly) -> Result<RouthTable> {
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    let c = p.coeffs();
    let row0: Vec<Rational> = (0..=n).rev().step_by(2).map(|k| c[k].clone()).collect();
    let row1: Vec<Rational> = if n >= 1 {
        (0..n).rev().step_by(2).map(|k| c[k].clone()).collect()
    } else {
        Vec::new()
    };
    let mut table = RouthTable { rows: vec![row0], auxiliary_rows: Vec::new(), zero_pivot: None };
    if n == 0 {
        return Ok(table);
    }
    table.rows.push(row1);
    let get = |r: &Vec<Rational>, j: usize| r.get(j).cloned().unwrap_or_else(Rational::zero);
    for i in 1..=n {
        // row i may need fixing before computing row i + 1
        if table.rows[i].iter().all(Zero::is_zero) {
            // auxiliary polynomial from row i - 1, degree n - i + 1, step 2
            let prev = &table.rows[i - 1];
            let deg = n - i + 1;
            let deriv: Vec<Rational> = prev
                .iter()
                .enumerate()
                .take_while(|(k, _)| 2 * k < deg)
                .map(|(k, a)| a * crate::polyalg::q((deg - 2 * k) as i64))
                .collect();
            if deriv.iter().all(Zero::is_zero) {
                // constant auxiliary polynomial cannot happen for a nonzero row
                table.zero_pivot = Some(i);
                return Ok(table);
            }
            table.rows[i] = deriv;
            table.auxiliary_rows.push(i);
        }
        if table.rows[i][0].is_zero() {
            table.zero_pivot = Some(i);
            return Ok(table);
        }
        if i == n {
            break;
        }
        let (a, b) = (&table.rows[i - 1], &table.rows[i]);
        let len = (n - i) / 2 + 1;
        let next: Vec<Rational> = (0..len)
            .map(|j| (&b[0] * get(a, j + 1) - &a[0] * get(b, j + 1)) / &b[0])
            .collect();
        table.rows.push(next);
    }
    Ok(table)
}

/// Exact Hurwitz test. When unstable the verdict lists the offending factors.
pub fn is_hurwitz(p: &Poly) -> Result<StabilityVerdict> {
    if routh_table(p)?.is_hurwitz() {
        return Ok(StabilityVerdict::stable());
    }
    Ok(StabilityVerdict::from_factors(unstable_factors(p)))
}

fn hurwitz_bool(p: &Poly) -> bool {
    routh_table(p).map(|t| t.is_hurwitz()).unwrap_or(false)
}

/// Splits `p` into rational-root linear factors and rootless residues and
/// keeps those that are not Hurwitz.
pub fn unstable_factors(p: &Poly) -> Vec<OffendingFactor> {
    let (_, factors) = p.rational_factorization();
    let mut out = Vec::new();
    for (f, mult) in factors {
        if let Some(r) = crate::polyalg::poly::linear_root(&f) {
            if r.is_zero() {
                out.push(OffendingFactor { factor: f, multiplicity: mult, reason: InstabilityReason::ImaginaryAxis });
            } else if r.is_positive() {
                out.push(OffendingFactor { factor: f, multiplicity: mult, reason: InstabilityReason::RightHalfPlane });
            }
        } else if !hurwitz_bool(&f) {
            let reason = if has_imaginary_axis_root(&f) {
                InstabilityReason::ImaginaryAxis
            } else {
                InstabilityReason::RightHalfPlane
            };
            out.push(OffendingFactor { factor: f, multiplicity: mult, reason });
        }
    }
    out
}

/// Splits `p` (up to its leading coefficient) as `stable * unstable`, where
/// `unstable` collects the offending factors with multiplicity. Returns
/// `exact = false` when some offending factor is a rootless residue that may
/// also hold stable roots.
pub fn stable_unstable_split(p: &Poly) -> (Poly, Poly, bool) {
    let mut unstable = Poly::one();
    let mut exact = true;
    for o in unstable_factors(p) {
        unstable = &unstable * &o.factor.pow(o.multiplicity);
        if o.factor.degree() != Some(1) && !hurwitz_bool(&o.factor.reflect()) {
            exact = false;
        }
    }
    let stable = p.monic().exact_div(&unstable).expect("factors divide");
    (stable, unstable, exact)
}

/// True iff `p(i w) = 0` for some real `w`.
pub fn has_imaginary_axis_root(p: &Poly) -> bool {
    if p.is_zero() {
        return true;
    }
    // p(i w) = re(w) + i im(w)
    let mut re = Vec::new();
    let mut im = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        let sign = if (k / 2) % 2 == 0 { c.clone() } else { -c.clone() };
        if k % 2 == 0 {
            re.resize(k + 1, Rational::zero());
            re[k] = sign;
        } else {
            im.resize(k + 1, Rational::zero());
            im[k] = sign;
        }
    }
    let (re, im) = (Poly::from_coeffs(re), Poly::from_coeffs(im));
    let common = match (re.is_zero(), im.is_zero()) {
        (true, true) => return true,
        (true, false) => im,
        (false, true) => re,
        (false, false) => Poly::gcd(&re, &im).expect("nonzero"),
    };
    count_real_roots(&common) > 0
}

/// Number of distinct real roots, by Sturm's theorem.
pub fn count_real_roots(p: &Poly) -> usize {
    let Some(d) = p.degree() else { return 0 };
    if d == 0 {
        return 0;
    }
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]).expect("nonzero");
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    let changes = |signs: Vec<bool>| signs.windows(2).filter(|w| w[0] != w[1]).count();
    let at_pos: Vec<bool> = seq.iter().map(|q| q.leading().expect("nonzero").is_positive()).collect();
    let at_neg: Vec<bool> = seq
        .iter()
        .map(|q| {
            let pos = q.leading().expect("nonzero").is_positive();
            if q.degree().expect("nonzero") % 2 == 1 {
                !pos
            } else {
                pos
            }
        })
        .collect();
    changes(at_neg).saturating_sub(changes(at_pos))
}

/// Stability and RH-inf membership for scalar and matrix transfer functions.
pub trait Stability {
    fn stability(&self) -> StabilityVerdict;
    fn is_proper_tf(&self) -> bool;

    fn is_stable(&self) -> bool {
        self.stability().is_stable()
    }

    /// Proper and stable.
    fn is_rh_inf(&self) -> bool {
        self.is_proper_tf() && self.is_stable()
    }
}

impl Stability for RatFn {
    fn stability(&self) -> StabilityVerdict {
        is_hurwitz(self.den()).expect("denominator nonzero")
    }

    fn is_proper_tf(&self) -> bool {
        self.is_proper()
    }
}

impl Stability for RatMat {
    fn stability(&self) -> StabilityVerdict {
        is_hurwitz(&self.lcd()).expect("denominator nonzero")
    }

    fn is_proper_tf(&self) -> bool {
        self.is_proper()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn hurwitz_examples() {
        assert!(is_hurwitz(&p(&[2, 3, 1])).unwrap().is_stable());
        let v = is_hurwitz(&p(&[4, -4, 1])).unwrap();
        assert!(!v.is_stable());
        assert_eq!(v.offending_factors()[0].factor, p(&[-2, 1]));
        assert_eq!(v.offending_factors()[0].multiplicity, 2);
        let v = is_hurwitz(&p(&[1, 0, 1])).unwrap();
        assert_eq!(v.offending_factors()[0].reason, InstabilityReason::ImaginaryAxis);
        assert_eq!(is_hurwitz(&Poly::zero()), Err(Error::ZeroPolynomial));
        assert!(is_hurwitz(&p(&[5])).unwrap().is_stable());
    }

    #[test]
    fn routh_handles_zero_rows() {
        // s^4 + s^3 + 2 s^2 + 2 s + 1 ... has a zero row? use (s^2+1)(s+1)(s+2)
        let f = &p(&[1, 0, 1]) * &p(&[2, 3, 1]);
        let t = routh_table(&f).unwrap();
        assert!(!t.auxiliary_rows.is_empty());
        assert!(!t.is_hurwitz());
        // s^3 + s^2 + 2 s + 8 has a sign change (roots -2, 0.5 +- 1.94i)
        let t = routh_table(&p(&[8, 2, 1, 1])).unwrap();
        assert!(!t.is_hurwitz());
        assert_eq!(t.sign_changes(), 2);
        // root at the origin
        assert!(!is_hurwitz(&p(&[0, 1, 1])).unwrap().is_stable());
    }

    #[test]
    fn rational_function_stability() {
        let a = RatFn::new(p(&[2, 1]), p(&[1, 2, 1])).unwrap();
        assert!(a.is_stable());
        assert!(a.is_rh_inf());
        let b = RatFn::new(p(&[2, 1]), &p(&[-1, 1]) * &p(&[1, 1])).unwrap();
        let v = b.stability();
        assert_eq!(v.factor_polys(), alloc::vec![p(&[-1, 1])]);
        assert!(RatFn::zero().is_stable());
        assert!(!RatFn::from_poly(p(&[1, 1])).is_rh_inf());
        assert!(!RatFn::new(p(&[1]), p(&[-1, 1])).unwrap().is_rh_inf());
    }

    #[test]
    fn imaginary_axis_detection() {
        assert!(has_imaginary_axis_root(&p(&[4, 0, 1])));
        assert!(!has_imaginary_axis_root(&p(&[2, 3, 1])));
        assert!(!has_imaginary_axis_root(&p(&[-2, 0, 1])));
        assert_eq!(count_real_roots(&p(&[-2, 0, 1])), 2);
    }

    #[test]
    fn split_recovers_unstable_part() {
        let f = &p(&[4, -4, 1]) * &p(&[11, 1]);
        let (st, un, exact) = stable_unstable_split(&f);
        assert_eq!(st, p(&[11, 1]));
        assert_eq!(un, p(&[4, -4, 1]));
        assert!(exact);
    }
}
