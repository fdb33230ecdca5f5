//! Coprime matrix-fraction descriptions of a plant, their RH-inf counterparts,
//! and transmission zeros and poles with directions.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyalg::{to_f64, Poly, PolyMat, QMat, RatFn, RatMat, Rational};
use crate::stability::Stability;

/// Anything that factors a plant as `numerator * denominator^-1`.
pub trait Factorization {
    fn numerator(&self) -> RatMat;
    fn denominator(&self) -> RatMat;

    fn plant(&self) -> Result<RatMat> {
        self.numerator().mul(&self.denominator().inv()?)
    }
}

/// `P = N D^-1` with `N`, `D` right coprime polynomial matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightMfd {
    n: PolyMat,
    d: PolyMat,
}

impl RightMfd {
    /// Checks shapes and `det d != 0`. Coprimeness is not checked here; use
    /// [`is_right_coprime`].
    pub fn new(n: PolyMat, d: PolyMat) -> Result<Self> {
        if !d.is_square() {
            return Err(Error::NotSquare { rows: d.rows(), cols: d.cols() });
        }
        if n.cols() != d.cols() {
            return Err(Error::DimensionMismatch { op: "RightMfd::new", left: n.shape(), right: d.shape() });
        }
        if d.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(RightMfd { n, d })
    }

    pub fn n(&self) -> &PolyMat {
        &self.n
    }

    pub fn d(&self) -> &PolyMat {
        &self.d
    }

    /// Outputs.
    pub fn p(&self) -> usize {
        self.n.rows()
    }

    /// Inputs.
    pub fn m(&self) -> usize {
        self.d.rows()
    }

    /// `(N U, D U)`, the same plant written with another right factor.
    pub fn right_multiply(&self, u: &PolyMat) -> Result<RightMfd> {
        RightMfd::new(self.n.mul(u)?, self.d.mul(u)?)
    }
}

impl Factorization for RightMfd {
    fn numerator(&self) -> RatMat {
        self.n.to_ratmat()
    }

    fn denominator(&self) -> RatMat {
        self.d.to_ratmat()
    }
}

/// `P = Dl^-1 Nl` with `Dl`, `Nl` left coprime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftMfd {
    dl: PolyMat,
    nl: PolyMat,
}

impl LeftMfd {
    pub fn new(dl: PolyMat, nl: PolyMat) -> Result<Self> {
        if !dl.is_square() {
            return Err(Error::NotSquare { rows: dl.rows(), cols: dl.cols() });
        }
        if nl.rows() != dl.rows() {
            return Err(Error::DimensionMismatch { op: "LeftMfd::new", left: dl.shape(), right: nl.shape() });
        }
        if dl.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(LeftMfd { dl, nl })
    }

    pub fn dl(&self) -> &PolyMat {
        &self.dl
    }

    pub fn nl(&self) -> &PolyMat {
        &self.nl
    }

    pub fn plant(&self) -> Result<RatMat> {
        self.dl.to_ratmat().inv()?.mul(&self.nl.to_ratmat())
    }
}

/// Right coprime factorization over RH-inf, `P = N' D'^-1`, with a stored
/// Bezout witness `u N' + v D' = I` where `u`, `v` are proper and stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableMfd {
    nprime: RatMat,
    dprime: RatMat,
    u: RatMat,
    v: RatMat,
    shift: Rational,
}

impl StableMfd {
    pub fn nprime(&self) -> &RatMat {
        &self.nprime
    }

    pub fn dprime(&self) -> &RatMat {
        &self.dprime
    }

    /// Witness multiplying `N'`.
    pub fn u(&self) -> &RatMat {
        &self.u
    }

    /// Witness multiplying `D'`.
    pub fn v(&self) -> &RatMat {
        &self.v
    }

    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn p(&self) -> usize {
        self.nprime.rows()
    }

    pub fn m(&self) -> usize {
        self.dprime.rows()
    }

    /// `u N' + v D'`, which must be the identity.
    pub fn bezout_residual(&self) -> Result<RatMat> {
        self.u.mul(&self.nprime)?.add(&self.v.mul(&self.dprime)?)
    }
}

impl Factorization for StableMfd {
    fn numerator(&self) -> RatMat {
        self.nprime.clone()
    }

    fn denominator(&self) -> RatMat {
        self.dprime.clone()
    }
}

fn right_mfd_unchecked(p: &RatMat) -> Result<RightMfd> {
    let m = p.cols();
    let lcds: Vec<Poly> = (0..m).map(|j| p.column_lcd(j)).collect();
    let d0 = PolyMat::diag(&lcds);
    let n0 = p.mul(&d0.to_ratmat())?.to_polymat()?;
    // GCRD of [D0; N0] from the Hermite form
    let (h, _) = d0.vstack(&n0)?.hermite();
    let r = h.rows_range(0, m);
    let (d, n) = if r.is_identity() {
        (d0, n0)
    } else {
        let rinv = r.to_ratmat().inv()?;
        (
            d0.to_ratmat().mul(&rinv)?.to_polymat()?,
            n0.to_ratmat().mul(&rinv)?.to_polymat()?,
        )
    };
    let (d, v) = d.column_reduce()?;
    let n = n.mul(&v)?;
    let (n, d) = normalize_columns(n, d);
    RightMfd::new(n, d)
}

/// Scales each column so the column-leading matrix of `d` has a unit entry in
/// the first nonzero row of that column; SISO denominators come out monic.
fn normalize_columns(n: PolyMat, d: PolyMat) -> (PolyMat, PolyMat) {
    let hc = d.column_leading_matrix();
    let scale: Vec<Rational> = (0..d.cols())
        .map(|j| {
            (0..d.rows())
                .map(|i| hc.get(i, j))
                .find(|x| !x.is_zero())
                .map(|x| x.recip())
                .unwrap_or_else(Rational::one)
        })
        .collect();
    let apply = |a: &PolyMat| PolyMat::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j).scale(&scale[j]));
    (apply(&n), apply(&d))
}

/// Right coprime polynomial MFD with column-reduced `D`.
pub fn right_coprime_mfd(p: &RatMat) -> Result<RightMfd> {
    if !p.is_proper() {
        return Err(Error::Improper { what: "plant".into(), relative_degree: p.min_relative_degree() });
    }
    right_mfd_unchecked(p)
}

/// Left coprime polynomial MFD with row-reduced `Dl`, built from the right
/// factorization of the transpose.
pub fn left_coprime_mfd(p: &RatMat) -> Result<LeftMfd> {
    if !p.is_proper() {
        return Err(Error::Improper { what: "transfer matrix".into(), relative_degree: p.min_relative_degree() });
    }
    let r = right_mfd_unchecked(&p.transpose())?;
    LeftMfd::new(r.d.transpose(), r.n.transpose())
}

/// True iff the greatest common right divisor of `n` and `d` is unimodular.
pub fn is_right_coprime(n: &PolyMat, d: &PolyMat) -> Result<bool> {
    if !d.is_square() || n.cols() != d.cols() {
        return Err(Error::DimensionMismatch { op: "is_right_coprime", left: n.shape(), right: d.shape() });
    }
    if d.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let (h, _) = d.vstack(n)?.hermite();
    Ok(h.rows_range(0, d.cols()).is_unimodular())
}

pub fn is_left_coprime(dl: &PolyMat, nl: &PolyMat) -> Result<bool> {
    is_right_coprime(&nl.transpose(), &dl.transpose())
}

/// `diag((s + a)^k_j)` as a rational matrix.
fn shift_powers(a: &Rational, degrees: &[usize]) -> RatMat {
    let lin = Poly::from_coeffs(vec![a.clone(), Rational::one()]);
    RatMat::diag(&degrees.iter().map(|&k| RatFn::from_poly(lin.pow(k))).collect::<Vec<_>>())
}

/// Divides column `j` of both factors by `(s + shift)^delta_j`, `delta_j` the
/// column degrees of `D`, and computes a Bezout witness over RH-inf.
pub fn stable_mfd(mfd: &RightMfd, shift: &Rational) -> Result<StableMfd> {
    if !shift.is_positive() {
        return Err(Error::InvalidShift);
    }
    if !mfd.d.is_column_reduced() {
        return Err(Error::NotColumnReduced);
    }
    let degs: Vec<usize> = mfd.d.column_degrees().into_iter().map(|d| d.expect("nonsingular")).collect();
    let lam_inv = shift_powers(shift, &degs).inv()?;
    let nprime = mfd.n.to_ratmat().mul(&lam_inv)?;
    let dprime = mfd.d.to_ratmat().mul(&lam_inv)?;
    let (u, v) = rh_inf_bezout(&nprime, &dprime, shift)?;
    Ok(StableMfd { nprime, dprime, u, v, shift: shift.clone() })
}

/// Left RH-inf factorization `P = Dl'^-1 Nl'` from a row-reduced left MFD.
/// Returns `(dl', nl')`.
pub fn stable_left_mfd(mfd: &LeftMfd, shift: &Rational) -> Result<(RatMat, RatMat)> {
    if !shift.is_positive() {
        return Err(Error::InvalidShift);
    }
    let (dl, nl) = if mfd.dl.is_row_reduced() {
        (mfd.dl.clone(), mfd.nl.clone())
    } else {
        let (dl, w) = mfd.dl.row_reduce()?;
        (dl, w.mul(&mfd.nl)?)
    };
    let degs: Vec<usize> = dl.row_degrees().into_iter().map(|d| d.expect("nonsingular")).collect();
    let lam_inv = shift_powers(shift, &degs).inv()?;
    Ok((lam_inv.mul(&dl.to_ratmat())?, lam_inv.mul(&nl.to_ratmat())?))
}

/// Bezout identity `u n + v d = I` over RH-inf for factors whose poles all sit
/// at `-a`. Substituting `lambda = 1/(s + a)` turns such matrices into
/// polynomial matrices in `lambda`, where the polynomial solver applies.
pub(crate) fn rh_inf_bezout(n: &RatMat, d: &RatMat, a: &Rational) -> Result<(RatMat, RatMat)> {
    let nl = to_lambda_mat(n, a)?;
    let dl = to_lambda_mat(d, a)?;
    let (x1, x2) = crate::stabilize::polynomial_bezout(&nl, &dl)?;
    Ok((from_lambda_mat(&x2, a), from_lambda_mat(&x1, a)))
}

/// Writes a proper `r` whose denominator is `(s + a)^k` as a polynomial in
/// `lambda = 1/(s + a)`.
pub(crate) fn to_lambda(r: &RatFn, a: &Rational) -> Result<Poly> {
    let k = r.den().degree().expect("den nonzero");
    let lin = Poly::from_coeffs(vec![a.clone(), Rational::one()]);
    if *r.den() != lin.pow(k) {
        return Err(Error::InvalidInput("denominator is not a power of (s + shift)".into()));
    }
    if !r.is_proper() {
        return Err(Error::Improper { what: "factor".into(), relative_degree: r.relative_degree() });
    }
    // s = (1 - a lambda) / lambda, so s^j lambda^k = (1 - a lambda)^j lambda^(k - j)
    let one_minus = Poly::from_coeffs(vec![Rational::one(), -a.clone()]);
    let mut out = Poly::zero();
    for (j, c) in r.num().coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = &one_minus.pow(j) * &Poly::monomial(c.clone(), k - j);
        out = &out + &term;
    }
    Ok(out)
}

pub(crate) fn from_lambda(p: &Poly, a: &Rational) -> RatFn {
    let Some(k) = p.degree() else { return RatFn::zero() };
    let lin = Poly::from_coeffs(vec![a.clone(), Rational::one()]);
    let num = p
        .coeffs()
        .iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (i, c)| &acc + &lin.pow(k - i).scale(c));
    RatFn::new(num, lin.pow(k)).expect("nonzero")
}

fn to_lambda_mat(m: &RatMat, a: &Rational) -> Result<PolyMat> {
    let entries: Result<Vec<Poly>> = m.entries().iter().map(|e| to_lambda(e, a)).collect();
    PolyMat::new(m.rows(), m.cols(), entries?)
}

fn from_lambda_mat(m: &PolyMat, a: &Rational) -> RatMat {
    RatMat::from_fn(m.rows(), m.cols(), |i, j| from_lambda(m.get(i, j), a))
}

/// Null-space direction of a zero or pole.
#[derive(Debug, Clone, PartialEq)]
pub enum Direction {
    Exact(Vec<Rational>),
    Numeric(Vec<Complex64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootItem {
    /// Exact factor the root belongs to: linear for rational roots, otherwise
    /// a square-free residue without rational roots.
    pub factor: Poly,
    pub multiplicity: usize,
    pub location: Complex64,
    pub exact: Option<Rational>,
    /// Real part `>= 0`.
    pub unstable: bool,
    /// Left null vector of `N` (zeros) or `D` (poles) at the root; only
    /// computed for unstable items.
    pub direction: Option<Direction>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroReport {
    /// Monic gcd of the maximal minors of `N`; zero when `N` is rank deficient.
    pub zero_polynomial: Poly,
    /// Monic `det D`.
    pub pole_polynomial: Poly,
    pub zeros: Vec<RootItem>,
    pub poles: Vec<RootItem>,
}

impl ZeroReport {
    pub fn unstable_zeros(&self) -> impl Iterator<Item = &RootItem> {
        self.zeros.iter().filter(|z| z.unstable)
    }

    /// Distinct exact factors carrying unstable zeros, with multiplicity.
    pub fn unstable_zero_factors(&self) -> Vec<(Poly, usize)> {
        let mut out: Vec<(Poly, usize)> = Vec::new();
        for z in self.unstable_zeros() {
            if !out.iter().any(|(f, _)| *f == z.factor) {
                out.push((z.factor.clone(), z.multiplicity));
            }
        }
        out
    }

    pub fn unstable_poles(&self) -> impl Iterator<Item = &RootItem> {
        self.poles.iter().filter(|z| z.unstable)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Monic gcd of all maximal minors; zero if every maximal minor vanishes.
pub fn maximal_minor_gcd(n: &PolyMat) -> Poly {
    let (p, m) = n.shape();
    let k = p.min(m);
    let all_rows: Vec<usize> = (0..p).collect();
    let all_cols: Vec<usize> = (0..m).collect();
    let mut g = Poly::zero();
    let subsets = if p >= m { combinations(p, k) } else { combinations(m, k) };
    for sel in subsets {
        let sub = if p >= m { n.submatrix(&sel, &all_cols) } else { n.submatrix(&all_rows, &sel) };
        let minor = sub.det().expect("square");
        if !minor.is_zero() {
            g = if g.is_zero() { minor.monic() } else { Poly::gcd(&g, &minor).expect("nonzero") };
        }
    }
    g
}

fn root_items(poly: &Poly, mat: &PolyMat) -> Vec<RootItem> {
    let mut items = Vec::new();
    if poly.degree().unwrap_or(0) == 0 {
        return items;
    }
    let (_, factors) = poly.rational_factorization();
    for (factor, mult) in factors {
        if let Some(r) = crate::polyalg::poly::linear_root(&factor) {
            let unstable = !r.is_negative();
            let direction = if unstable {
                mat.eval(&r).left_null_space().into_iter().next().map(Direction::Exact)
            } else {
                None
            };
            items.push(RootItem {
                factor,
                multiplicity: mult,
                location: Complex64::new(to_f64(&r), 0.0),
                exact: Some(r),
                unstable,
                direction,
            });
        } else {
            let factor_stable = factor.is_hurwitz_poly();
            for z in crate::roots::complex_roots(&factor) {
                let z = crate::roots::newton_polish(&factor, z, 1e-14);
                let unstable = !factor_stable && z.re > -1e-12;
                let direction = if unstable {
                    complex_left_null_vector(mat, z).map(Direction::Numeric)
                } else {
                    None
                };
                items.push(RootItem {
                    factor: factor.clone(),
                    multiplicity: mult,
                    location: z,
                    exact: None,
                    unstable,
                    direction,
                });
            }
        }
    }
    items.sort_by(|a, b| {
        (a.location.re, a.location.im).partial_cmp(&(b.location.re, b.location.im)).unwrap_or(core::cmp::Ordering::Equal)
    });
    items
}

trait HurwitzPoly {
    fn is_hurwitz_poly(&self) -> bool;
}

impl HurwitzPoly for Poly {
    fn is_hurwitz_poly(&self) -> bool {
        crate::stability::is_hurwitz(self).map(|v| v.is_stable()).unwrap_or(false)
    }
}

/// Numerical left null vector of `mat(z)` via Gaussian elimination with
/// partial pivoting on the transpose.
fn complex_left_null_vector(mat: &PolyMat, z: Complex64) -> Option<Vec<Complex64>> {
    let (p, m) = mat.shape();
    // A = mat(z)^T, m x p; find x with A x = 0
    let mut a: Vec<Vec<Complex64>> =
        (0..m).map(|j| (0..p).map(|i| mat.get(i, j).eval_complex(z)).collect()).collect();
    let scale = a.iter().flatten().fold(0.0f64, |s, x| s.max(x.norm())).max(1.0);
    let tol = 1e-8 * scale;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..p {
        if r == m {
            break;
        }
        let (best, val) = (r..m).map(|i| (i, a[i][c].norm())).fold((r, -1.0), |b, x| if x.1 > b.1 { x } else { b });
        if val < tol {
            continue;
        }
        a.swap(r, best);
        let piv = a[r][c];
        for x in a[r].iter_mut() {
            *x /= piv;
        }
        for i in 0..m {
            if i != r {
                let f = a[i][c];
                if f.norm() > 0.0 {
                    let row = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(row.iter()) {
                        *x -= f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..p).find(|c| !pivots.contains(c))?;
    let mut v = vec![Complex64::new(0.0, 0.0); p];
    v[free] = Complex64::new(1.0, 0.0);
    for (row, &c) in pivots.iter().enumerate() {
        v[c] = -a[row][free];
    }
    Some(v)
}

/// Transmission zeros (from `N`) and poles (from `det D`), with left null
/// directions at the unstable ones.
pub fn zeros_and_poles(mfd: &RightMfd) -> ZeroReport {
    let zero_polynomial = maximal_minor_gcd(&mfd.n);
    let pole_polynomial = mfd.d.det().expect("square").monic();
    let zeros = if zero_polynomial.is_zero() { Vec::new() } else { root_items(&zero_polynomial, &mfd.n) };
    let poles = root_items(&pole_polynomial, &mfd.d);
    ZeroReport { zero_polynomial, pole_polynomial, zeros, poles }
}

/// Checks the RH-inf membership invariants of a stable factorization.
pub fn is_valid_stable_mfd(s: &StableMfd, plant: &RatMat) -> bool {
    s.nprime.is_rh_inf()
        && s.dprime.is_rh_inf()
        && s.u.is_rh_inf()
        && s.v.is_rh_inf()
        && s.plant().map(|p| p == *plant).unwrap_or(false)
        && s.bezout_residual().map(|r| r.is_identity()).unwrap_or(false)
}

/// Evaluates `det N'(0)`; nonzero iff the plant has no zero at the origin.
pub fn det_at(m: &RatMat, x: &Rational) -> Option<Rational> {
    let v: QMat = m.eval(x).value()?;
    v.det().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{q, qf};

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFn {
        RatFn::new(p(n), p(d)).unwrap()
    }

    pub(crate) fn example_plant() -> RatMat {
        RatMat::scalar(RatFn::new(&p(&[-1, 1]) * &p(&[2, 1]), p(&[-2, 1]).pow(2)).unwrap())
    }

    #[test]
    fn example_plant_factors() {
        let mfd = right_coprime_mfd(&example_plant()).unwrap();
        assert_eq!(mfd.n().get(0, 0), &(&p(&[-1, 1]) * &p(&[2, 1])));
        assert_eq!(mfd.d().get(0, 0), &p(&[-2, 1]).pow(2));
        assert!(is_right_coprime(mfd.n(), mfd.d()).unwrap());

        let s = stable_mfd(&mfd, &q(2)).unwrap();
        assert_eq!(s.nprime().get(0, 0), &rf(&[-1, 1], &[2, 1]));
        assert_eq!(s.dprime().get(0, 0), &RatFn::new(p(&[-2, 1]).pow(2), p(&[2, 1]).pow(2)).unwrap());
        assert!(is_valid_stable_mfd(&s, &example_plant()));
    }

    #[test]
    fn identity_and_stable_plant() {
        let mfd = right_coprime_mfd(&RatMat::identity(2)).unwrap();
        assert!(mfd.n().is_identity() && mfd.d().is_identity());
        let pl = RatMat::scalar(rf(&[1], &[1, 1]));
        let s = stable_mfd(&right_coprime_mfd(&pl).unwrap(), &q(1)).unwrap();
        assert_eq!(s.nprime().get(0, 0), &rf(&[1], &[1, 1]));
        assert!(s.dprime().get(0, 0).is_one());
    }

    #[test]
    fn triangular_plant_reconstructs() {
        let pl = RatMat::new(2, 2, vec![rf(&[1], &[1, 1]), rf(&[1], &[2, 1]), RatFn::zero(), rf(&[1], &[3, 1])])
            .unwrap();
        let mfd = right_coprime_mfd(&pl).unwrap();
        assert_eq!(mfd.plant().unwrap(), pl);
        assert!(is_right_coprime(mfd.n(), mfd.d()).unwrap());
        assert!(mfd.d().is_column_reduced());
        let s = stable_mfd(&mfd, &q(1)).unwrap();
        assert!(is_valid_stable_mfd(&s, &pl));
    }

    #[test]
    fn coprimeness_checks() {
        let n = PolyMat::scalar(p(&[-1, 1]));
        let d = PolyMat::scalar(&p(&[-1, 1]) * &p(&[1, 1]));
        assert!(!is_right_coprime(&n, &d).unwrap());
        assert!(is_right_coprime(&PolyMat::scalar(p(&[-1, 1])), &PolyMat::scalar(p(&[1, 1]))).unwrap());
        assert!(is_right_coprime(&PolyMat::zeros(2, 3), &PolyMat::identity(2)).is_err());
    }

    #[test]
    fn left_mfd_examples() {
        let pl = example_plant();
        let l = left_coprime_mfd(&pl).unwrap();
        assert_eq!(l.dl().get(0, 0), &p(&[-2, 1]).pow(2));
        assert_eq!(l.plant().unwrap(), pl);
        let z = left_coprime_mfd(&RatMat::zeros(2, 3)).unwrap();
        assert!(z.dl().is_identity());
        assert!(z.nl().is_zero());
    }

    #[test]
    fn zeros_of_example_plant() {
        let rep = zeros_and_poles(&right_coprime_mfd(&example_plant()).unwrap());
        let zs: Vec<Rational> = rep.zeros.iter().map(|z| z.exact.clone().unwrap()).collect();
        assert_eq!(zs, vec![q(-2), q(1)]);
        let un: Vec<&RootItem> = rep.unstable_zeros().collect();
        assert_eq!(un.len(), 1);
        assert_eq!(un[0].exact, Some(q(1)));
        assert_eq!(rep.poles.len(), 1);
        assert_eq!(rep.poles[0].exact, Some(q(2)));
        assert_eq!(rep.poles[0].multiplicity, 2);
    }

    #[test]
    fn zero_direction_2x2() {
        let n = PolyMat::diag(&[p(&[-3, 1]), p(&[1])]);
        let mfd = RightMfd::new(n, PolyMat::identity(2)).unwrap();
        let rep = zeros_and_poles(&mfd);
        assert_eq!(rep.zeros.len(), 1);
        assert_eq!(rep.zeros[0].exact, Some(q(3)));
        assert_eq!(rep.zeros[0].direction, Some(Direction::Exact(vec![q(1), q(0)])));
        assert!(zeros_and_poles(&RightMfd::new(PolyMat::identity(2), PolyMat::identity(2)).unwrap()).zeros.is_empty());
    }

    #[test]
    fn irrational_zero_reported_with_factor() {
        // N = s^2 - 2 has zeros +-sqrt(2)
        let mfd = RightMfd::new(PolyMat::scalar(p(&[-2, 0, 1])), PolyMat::scalar(p(&[1, 2, 1]))).unwrap();
        let rep = zeros_and_poles(&mfd);
        let un: Vec<&RootItem> = rep.unstable_zeros().collect();
        assert_eq!(un.len(), 1);
        assert!((un[0].location.re - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(un[0].factor, p(&[-2, 0, 1]));
    }

    #[test]
    fn lambda_round_trip() {
        let a = qf(3, 2);
        let r = RatFn::new(p(&[1, -4, 2]), Poly::from_coeffs(vec![a.clone(), q(1)]).pow(3)).unwrap();
        let l = to_lambda(&r, &a).unwrap();
        assert_eq!(from_lambda(&l, &a), r);
    }
}
