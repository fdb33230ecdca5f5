//! Stabilizing feedback controllers via Bezout identities and the Youla
//! parametrization, and the reference path `Cr` that realizes `T = N X`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::error::{Error, Obstruction, Result};
use crate::factor::{
    left_coprime_mfd, stable_left_mfd, stable_mfd, Factorization, LeftMfd, RightMfd, StableMfd,
};
use crate::polyalg::{PolyMat, QMat, RatMat, Rational};
use crate::stability::{Stability, StabilityVerdict};

/// Coefficient system for `X S = I` with every entry of `X` of degree `<= k`.
fn bezout_at_degree(s: &PolyMat, k: usize) -> Result<Option<PolyMat>> {
    let (r, m) = s.shape();
    let ds = s.max_degree().unwrap_or(0);
    let terms = k + ds + 1;
    let unknowns = r * (k + 1);
    let mut a = QMat::zeros(m * terms, unknowns);
    for j in 0..m {
        for l in 0..r {
            let entry = s.get(l, j);
            for (b, c) in entry.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for deg in 0..=k {
                    a.set(j * terms + deg + b, l * (k + 1) + deg, c.clone());
                }
            }
        }
    }
    let mut rhs = QMat::zeros(m * terms, m);
    for i in 0..m {
        rhs.set(i * terms, i, Rational::from_integer(1.into()));
    }
    let Some(sol) = a.solve(&rhs)? else { return Ok(None) };
    Ok(Some(PolyMat::from_fn(m, r, |i, l| {
        crate::polyalg::Poly::from_coeffs((0..=k).map(|deg| sol.get(l * (k + 1) + deg, i).clone()).collect())
    })))
}

/// Polynomial Bezout identity `x1 d + x2 n = I` for right coprime `(n, d)`.
///
/// The Hermite form of `[d; n]` certifies coprimeness and gives one solution;
/// the coefficient system is then solved at increasing degree bounds starting
/// from zero, so the returned pair has the smallest feasible degree.
pub fn polynomial_bezout(n: &PolyMat, d: &PolyMat) -> Result<(PolyMat, PolyMat)> {
    if !d.is_square() || n.cols() != d.cols() {
        return Err(Error::DimensionMismatch { op: "polynomial_bezout", left: n.shape(), right: d.shape() });
    }
    if d.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let m = d.cols();
    let stacked = d.vstack(n)?;
    let (h, u) = stacked.hermite();
    let r = h.rows_range(0, m);
    if !r.is_unimodular() {
        return Err(Error::NotCoprime);
    }
    let hermite_sol = r.to_ratmat().inv()?.to_polymat()?.mul(&u.rows_range(0, m))?;
    let cap = hermite_sol.max_degree().unwrap_or(0);
    let sol = (0..cap)
        .find_map(|k| bezout_at_degree(&stacked, k).ok().flatten())
        .unwrap_or(hermite_sol);
    let cols_d: Vec<usize> = (0..m).collect();
    let cols_n: Vec<usize> = (m..m + n.rows()).collect();
    let rows: Vec<usize> = (0..m).collect();
    Ok((sol.submatrix(&rows, &cols_d), sol.submatrix(&rows, &cols_n)))
}

/// Right and left polynomial factorizations of a plant with a Bezout pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublyCoprime {
    pub n: PolyMat,
    pub d: PolyMat,
    pub nl: PolyMat,
    pub dl: PolyMat,
    /// Multiplies `d` in `x1 d + x2 n = I`.
    pub x1: PolyMat,
    pub x2: PolyMat,
}

impl DoublyCoprime {
    pub fn bezout_residual(&self) -> Result<PolyMat> {
        self.x1.mul(&self.d)?.add(&self.x2.mul(&self.n)?)
    }
}

pub fn solve_bezout(mfd: &RightMfd) -> Result<DoublyCoprime> {
    let (x1, x2) = polynomial_bezout(mfd.n(), mfd.d())?;
    let plant = mfd.plant()?;
    let left: LeftMfd = left_coprime_mfd(&plant)?;
    Ok(DoublyCoprime {
        n: mfd.n().clone(),
        d: mfd.d().clone(),
        nl: left.nl().clone(),
        dl: left.dl().clone(),
        x1,
        x2,
    })
}

/// RH-inf counterpart of [`DoublyCoprime`]: `P = N' D'^-1 = Dl'^-1 Nl'` with
/// `x1 D' + x2 N' = I`, all factors proper and stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableDoublyCoprime {
    pub right: StableMfd,
    pub nl: RatMat,
    pub dl: RatMat,
}

impl StableDoublyCoprime {
    pub fn x1(&self) -> &RatMat {
        self.right.v()
    }

    pub fn x2(&self) -> &RatMat {
        self.right.u()
    }

    pub fn plant(&self) -> Result<RatMat> {
        self.right.plant()
    }
}

impl StableDoublyCoprime {
    /// Adds the left factors, computed with the same shift.
    pub fn from_stable(right: StableMfd) -> Result<Self> {
        let left = left_coprime_mfd(&right.plant()?)?;
        let (dl, nl) = stable_left_mfd(&left, right.shift())?;
        Ok(StableDoublyCoprime { right, nl, dl })
    }
}

pub fn stable_doubly_coprime(mfd: &RightMfd, shift: &Rational) -> Result<StableDoublyCoprime> {
    StableDoublyCoprime::from_stable(stable_mfd(mfd, shift)?)
}

/// A proper `Cy` that internally stabilizes the plant: zero for a stable
/// plant, otherwise the Youla controller at `K = 0`, falling back to a few
/// constant parameters when that one is inadmissible.
pub fn stabilizing_feedback(smfd: &StableMfd) -> Result<RatMat> {
    let plant = smfd.plant()?;
    let (p, m) = plant.shape();
    if plant.is_stable() {
        return Ok(RatMat::zeros(m, p));
    }
    let dc = StableDoublyCoprime::from_stable(smfd.clone())?;
    let candidates = [(0, 1), (1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1), (-2, 1), (1, 3), (-1, 3)];
    for (num, den) in candidates {
        let c = crate::polyalg::qf(num, den);
        let k = RatMat::from_fn(m, p, |i, j| {
            if i == j || (num != 0 && m.min(p) == 1) {
                crate::polyalg::RatFn::constant(c.clone())
            } else {
                crate::polyalg::RatFn::zero()
            }
        });
        if let Some(cy) = try_parameter(&dc, &plant, &k) {
            return Ok(cy);
        }
    }
    // full constant matrices from a fixed small-integer sequence
    let mut seed: i64 = 1;
    for _ in 0..32 {
        let k = RatMat::from_fn(m, p, |_, _| {
            seed = (seed * 37 + 11) % 101;
            crate::polyalg::RatFn::constant(crate::polyalg::qf(seed % 7 - 3, 2))
        });
        if let Some(cy) = try_parameter(&dc, &plant, &k) {
            return Ok(cy);
        }
    }
    Err(Error::InadmissibleParameter)
}

fn try_parameter(dc: &StableDoublyCoprime, plant: &RatMat, k: &RatMat) -> Option<RatMat> {
    let cy = youla_controller(dc, k).ok()?;
    is_internally_stabilizing(plant, &cy).ok()?.stabilizing().then_some(cy)
}

/// Youla controller `Cy = -(x1 - K Nl')^-1 (x2 + K Dl')` in the positive
/// feedback convention. `k` is `m x p`, proper and stable.
pub fn youla_controller(dc: &StableDoublyCoprime, k: &RatMat) -> Result<RatMat> {
    let (p, m) = (dc.right.p(), dc.right.m());
    if k.shape() != (m, p) {
        return Err(Error::DimensionMismatch { op: "youla_controller", left: (m, p), right: k.shape() });
    }
    if !k.is_rh_inf() {
        return Err(Error::NotStable("Youla parameter".to_string()));
    }
    let a = dc.x1().sub(&k.mul(&dc.nl)?)?;
    let b = dc.x2().add(&k.mul(&dc.dl)?)?;
    let ainv = a.inv().map_err(|_| Error::InadmissibleParameter)?;
    if !ainv.is_proper() {
        return Err(Error::InadmissibleParameter);
    }
    Ok(ainv.mul(&b)?.neg())
}

/// One of the four closed-loop maps with its properness and stability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopMap {
    pub name: &'static str,
    pub map: RatMat,
    pub proper: bool,
    pub verdict: StabilityVerdict,
}

impl LoopMap {
    fn new(name: &'static str, map: RatMat) -> Self {
        let proper = map.is_proper();
        let verdict = map.stability();
        LoopMap { name, map, proper, verdict }
    }

    pub fn ok(&self) -> bool {
        self.proper && self.verdict.is_stable()
    }
}

/// Internal-stability report for the loop `u = Cy y`, `y = P u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalStability {
    pub maps: Vec<LoopMap>,
}

impl InternalStability {
    pub fn stabilizing(&self) -> bool {
        self.maps.iter().all(LoopMap::ok)
    }

    /// Merged verdict over the four maps.
    pub fn verdict(&self) -> StabilityVerdict {
        self.maps.iter().fold(StabilityVerdict::stable(), |acc, m| acc.merge(m.verdict.clone()))
    }

    pub fn improper_maps(&self) -> Vec<&'static str> {
        self.maps.iter().filter(|m| !m.proper).map(|m| m.name).collect()
    }
}

impl fmt::Display for InternalStability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.maps.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let proper = if m.proper { "proper" } else { "improper" };
            write!(f, "{}: {}, {}", m.name, proper, m.verdict)?;
        }
        Ok(())
    }
}

/// `(I - Cy P)^-1`, failing when the loop is ill-posed.
pub fn return_difference_inverse(p: &RatMat, cy: &RatMat) -> Result<RatMat> {
    if cy.shape() != (p.cols(), p.rows()) {
        return Err(Error::DimensionMismatch { op: "feedback loop", left: p.shape(), right: cy.shape() });
    }
    let s = cy.mul(p)?.one_minus()?;
    let sinv = s.inv().map_err(|_| Error::IllPosed)?;
    if !sinv.is_proper() {
        return Err(Error::IllPosed);
    }
    Ok(sinv)
}

pub fn is_internally_stabilizing(p: &RatMat, cy: &RatMat) -> Result<InternalStability> {
    let sinv = return_difference_inverse(p, cy)?;
    let sinv_cy = sinv.mul(cy)?;
    let p_sinv = p.mul(&sinv)?;
    let p_sinv_cy = p_sinv.mul(cy)?;
    Ok(InternalStability {
        maps: vec![
            LoopMap::new("(I - Cy P)^-1", sinv),
            LoopMap::new("(I - Cy P)^-1 Cy", sinv_cy),
            LoopMap::new("P (I - Cy P)^-1", p_sinv),
            LoopMap::new("P (I - Cy P)^-1 Cy", p_sinv_cy),
        ],
    })
}

/// A two-degrees-of-freedom controller `u = Cy y + Cr r` together with the
/// internal-stability certificate of `Cy` for the plant it was built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoDofController {
    cy: RatMat,
    cr: RatMat,
    certificate: InternalStability,
}

impl TwoDofController {
    /// Fails unless `cy` internally stabilizes `p` and `cr` is proper.
    pub fn new(p: &RatMat, cy: RatMat, cr: RatMat) -> Result<Self> {
        let certificate = is_internally_stabilizing(p, &cy)?;
        if !certificate.stabilizing() {
            return Err(Error::NotStable(format_not_stabilizing(&certificate)));
        }
        if cr.rows() != cy.rows() {
            return Err(Error::DimensionMismatch { op: "TwoDofController::new", left: cy.shape(), right: cr.shape() });
        }
        if !cr.is_proper() {
            return Err(Error::Improper { what: "Cr".into(), relative_degree: cr.min_relative_degree() });
        }
        Ok(TwoDofController { cy, cr, certificate })
    }

    pub fn cy(&self) -> &RatMat {
        &self.cy
    }

    pub fn cr(&self) -> &RatMat {
        &self.cr
    }

    pub fn certificate(&self) -> &InternalStability {
        &self.certificate
    }

    /// `[Cy, Cr]`.
    pub fn stacked(&self) -> RatMat {
        self.cy.hstack(&self.cr).expect("row counts agree")
    }
}

fn format_not_stabilizing(c: &InternalStability) -> String {
    let improper = c.improper_maps();
    let mut s = String::from("feedback loop");
    if !improper.is_empty() {
        s.push_str(" (improper maps: ");
        s.push_str(&improper.join(", "));
        s.push(')');
    }
    let v = c.verdict();
    if !v.is_stable() {
        s.push_str(&alloc::format!(" ({})", v));
    }
    s
}

/// `Cr = (I - Cy P) D X`, so the loop gives `y = N X r` and `u = D X r`.
pub fn cr_from_x<F: Factorization>(p: &RatMat, cy: &RatMat, mfd: &F, x: &RatMat) -> Result<RatMat> {
    let s = cy.mul(p)?.one_minus()?;
    let cr = s.mul(&mfd.denominator())?.mul(x)?;
    if !cr.is_proper() {
        return Err(Error::Improper { what: "Cr".into(), relative_degree: cr.min_relative_degree() });
    }
    Ok(cr)
}

fn condition(name: &str, offending: Vec<crate::polyalg::Poly>) -> Error {
    Error::Obstructed(Obstruction::Condition { condition: name.to_string(), offending })
}

/// `C = [(I + L N) D^-1]^-1 [L, X]`, checking each precondition separately.
pub fn all_controllers_from_lx<F: Factorization>(mfd: &F, l: &RatMat, x: &RatMat) -> Result<TwoDofController> {
    let n = mfd.numerator();
    let d = mfd.denominator();
    let m = d.rows();
    if l.shape() != (m, n.rows()) {
        return Err(Error::DimensionMismatch { op: "all_controllers_from_lx (L)", left: (m, n.rows()), right: l.shape() });
    }
    if x.rows() != m {
        return Err(Error::DimensionMismatch { op: "all_controllers_from_lx (X)", left: (m, 0), right: x.shape() });
    }
    let lv = l.stability();
    if !lv.is_stable() {
        return Err(condition("L stable", lv.factor_polys()));
    }
    let xv = x.stability();
    if !xv.is_stable() {
        return Err(condition("X stable", xv.factor_polys()));
    }
    let dl = d.mul(l)?;
    if !dl.is_proper() {
        return Err(condition("D L proper", Vec::new()));
    }
    let dx = d.mul(x)?;
    if !dx.is_proper() {
        return Err(condition("D X proper", Vec::new()));
    }
    let w = l.mul(&n)?.one_plus()?.mul(&d.inv()?)?;
    let wv = w.stability();
    if !wv.is_stable() {
        return Err(condition("(I + L N) D^-1 stable", wv.factor_polys()));
    }
    let winv = w.inv().map_err(|_| condition("(I + L N) D^-1 nonsingular", Vec::new()))?;
    if !winv.is_proper() {
        return Err(condition("[(I + L N) D^-1]^-1 proper", Vec::new()));
    }
    let plant = mfd.plant()?;
    TwoDofController::new(&plant, winv.mul(l)?, winv.mul(x)?)
}
