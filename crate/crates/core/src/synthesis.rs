//! Design problems: model matching, diagonal decoupling, inversion, static
//! decoupling, denominator assignment, and the restricted configurations
//! (prefilter/feedforward/feedback split, unity feedback, feedback with direct
//! reference).

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Obstruction, Result};
use crate::factor::{left_coprime_mfd, maximal_minor_gcd, stable_left_mfd, Factorization, RightMfd, StableMfd};
use crate::polyalg::{Poly, PolyMat, QMat, RatFn, RatMat, Rational};
use crate::stability::{is_hurwitz, stable_unstable_split, Stability, StabilityVerdict};
use crate::stabilize::{cr_from_x, stabilizing_feedback, TwoDofController};
use crate::verify::{closed_loop, Certificate};

pub use crate::verify::ClosedLoopConfig;

/// A design target for a plant with `p` outputs and `m` inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignProblem {
    ModelMatching { t: RatMat, m: Option<RatMat> },
    DiagonalDecoupling { targets: Vec<RatFn> },
    Inverse,
    StaticDecoupling { lambda: QMat },
    DenominatorAssignment { d_t: PolyMat },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignResult {
    /// Stable parameter with `T = N x`, relative to the factorization used.
    pub x: RatMat,
    pub controller: TwoDofController,
    pub achieved_t: RatMat,
    pub achieved_m: RatMat,
    pub configuration: ClosedLoopConfig,
    pub certificates: Vec<Certificate>,
}

impl DesignResult {
    pub fn all_certified(&self) -> bool {
        self.certificates.iter().all(|c| c.holds)
    }

    fn assemble<F: Factorization>(
        mfd: &F,
        x: RatMat,
        controller: TwoDofController,
        configuration: ClosedLoopConfig,
        mut certificates: Vec<Certificate>,
    ) -> Result<Self> {
        let achieved_t = mfd.numerator().mul(&x)?;
        let achieved_m = mfd.denominator().mul(&x)?;
        let plant = mfd.plant()?;
        let report = closed_loop(&plant, &configuration)?;
        certificates.insert(0, Certificate::equality("closed-loop y/r equals N X", report.t_yr == achieved_t));
        certificates.insert(1, Certificate::equality("closed-loop u/r equals D X", report.t_ur == achieved_m));
        certificates.push(Certificate::stability("internal stability of Cy", controller.certificate().verdict()));
        Ok(DesignResult { x, controller, achieved_t, achieved_m, configuration, certificates })
    }
}

fn check_target(t: &RatMat) -> Result<()> {
    if !t.is_proper() {
        return Err(Obstruction::TargetImproper.into());
    }
    let v = t.stability();
    if !v.is_stable() {
        return Err(Obstruction::TargetNotStable { offending: v.factor_polys() }.into());
    }
    Ok(())
}

/// Polynomial numerator `N Delta` with `Delta = diag(column lcds of N)`.
fn clear_columns(n: &RatMat) -> Result<(PolyMat, RatMat)> {
    let lcds: Vec<Poly> = (0..n.cols()).map(|j| n.column_lcd(j)).collect();
    let delta = PolyMat::diag(&lcds).to_ratmat();
    Ok((n.mul(&delta)?.to_polymat()?, delta))
}

/// Solves `n X = t` through the row Hermite form `U n_p = [R; 0]` of the
/// column-cleared numerator. Free variables are set to zero. `None` when `t`
/// is not in the range of `n`.
fn solve_through_hermite(n: &RatMat, t: &RatMat) -> Result<Option<RatMat>> {
    let (np, delta) = clear_columns(n)?;
    let (h, u) = np.hermite();
    let ut = u.to_ratmat().mul(t)?;
    let rank = (0..h.rows()).take_while(|&i| (0..h.cols()).any(|j| !h.get(i, j).is_zero())).count();
    for i in rank..h.rows() {
        if (0..ut.cols()).any(|j| !ut.get(i, j).is_zero()) {
            return Ok(None);
        }
    }
    let m = np.cols();
    let pivots: Vec<usize> = (0..rank).map(|i| (0..m).find(|&j| !h.get(i, j).is_zero()).expect("nonzero row")).collect();
    let mut y: Vec<Vec<RatFn>> = vec![vec![RatFn::zero(); t.cols()]; m];
    for i in (0..rank).rev() {
        let pc = pivots[i];
        let piv = RatFn::from_poly(h.get(i, pc).clone());
        for c in 0..t.cols() {
            let mut acc = ut.get(i, c).clone();
            for j in (pc + 1)..m {
                let hij = h.get(i, j);
                if !hij.is_zero() && !y[j][c].is_zero() {
                    acc = &acc - &(&RatFn::from_poly(hij.clone()) * &y[j][c]);
                }
            }
            y[pc][c] = acc.checked_div(&piv)?;
        }
    }
    let y = RatMat::from_fn(m, t.cols(), |i, j| y[i][j].clone());
    Ok(Some(delta.mul(&y)?))
}

/// Monic polynomial whose roots are the closed right-half-plane zeros of the
/// factorization's numerator.
pub fn unstable_zero_polynomial<F: Factorization>(mfd: &F) -> Result<Poly> {
    let (np, _) = clear_columns(&mfd.numerator())?;
    let z = maximal_minor_gcd(&np);
    if z.is_zero() {
        return Ok(Poly::one());
    }
    Ok(stable_unstable_split(&z).1)
}

/// Distinct exact factors of `gcd(f, unstable zeros)` over the offending
/// factors `f`.
fn missing_zero_factors(offending: &[Poly], zeros: &Poly) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    for f in offending {
        let g = Poly::gcd(f, zeros).expect("nonzero");
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        for (fac, _) in g.rational_factorization().1 {
            if !out.contains(&fac) {
                out.push(fac);
            }
        }
    }
    out
}

/// Finds the stable parameter `X` with `N X = T` (and `D X = M` when given),
/// or names why none exists.
pub fn check_realizable<F: Factorization>(mfd: &F, t: &RatMat, m: Option<&RatMat>) -> Result<RatMat> {
    let n = mfd.numerator();
    let d = mfd.denominator();
    if t.rows() != n.rows() {
        return Err(Error::DimensionMismatch { op: "check_realizable (T)", left: n.shape(), right: t.shape() });
    }
    if let Some(mm) = m {
        if mm.rows() != d.rows() || mm.cols() != t.cols() {
            return Err(Error::DimensionMismatch { op: "check_realizable (M)", left: d.shape(), right: mm.shape() });
        }
    }
    check_target(t)?;
    if let Some(mm) = m {
        check_target(mm)?;
    }
    let x = match m {
        None => solve_through_hermite(&n, t)?.ok_or(Obstruction::Rank)?,
        Some(mm) => match solve_through_hermite(&n.vstack(&d)?, &t.vstack(mm)?)? {
            Some(x) => x,
            None if solve_through_hermite(&n, t)?.is_some() => return Err(Obstruction::InconsistentPair.into()),
            None => return Err(Obstruction::Rank.into()),
        },
    };
    let v = x.stability();
    if !v.is_stable() {
        let offending = v.factor_polys();
        let missing = missing_zero_factors(&offending, &unstable_zero_polynomial(mfd)?);
        if missing.is_empty() {
            return Err(Obstruction::UnstableParameter { offending }.into());
        }
        return Err(Obstruction::MissingUnstableZeros { zeros: missing }.into());
    }
    if !x.is_proper() {
        return Err(Obstruction::RelativeDegree { what: "X".into(), relative_degree: x.min_relative_degree() }.into());
    }
    let dx = d.mul(&x)?;
    if !dx.is_proper() {
        return Err(
            Obstruction::RelativeDegree { what: "D X".into(), relative_degree: dx.min_relative_degree() }.into()
        );
    }
    let dv = dx.stability();
    if !dv.is_stable() {
        return Err(Obstruction::Condition { condition: "D X stable".into(), offending: dv.factor_polys() }.into());
    }
    Ok(x)
}

/// Two-degrees-of-freedom design for `T = N' X'`: a stabilizing `Cy` and
/// `Cr = (I - Cy P) D' X'`.
pub fn model_matching(smfd: &StableMfd, t: &RatMat, m: Option<&RatMat>) -> Result<DesignResult> {
    let x = check_realizable(smfd, t, m)?;
    two_dof_from_x(smfd, x, Vec::new())
}

fn two_dof_from_x(smfd: &StableMfd, x: RatMat, certificates: Vec<Certificate>) -> Result<DesignResult> {
    let plant = smfd.plant()?;
    let cy = stabilizing_feedback(smfd)?;
    let cr = cr_from_x(&plant, &cy, smfd, &x)?;
    let controller = TwoDofController::new(&plant, cy.clone(), cr.clone())?;
    DesignResult::assemble(smfd, x, controller, ClosedLoopConfig::TwoDof { cy, cr }, certificates)
}

fn require_square_invertible(n: &RatMat) -> Result<()> {
    if !n.is_square() {
        return Err(Error::NotSquare { rows: n.rows(), cols: n.cols() });
    }
    if n.det()?.is_zero() {
        return Err(Error::Singular);
    }
    Ok(())
}

/// `X' = N'^-1 diag(targets)`, accepted when `X'` and `D' X'` are in RH-inf.
pub fn diagonal_decoupling(smfd: &StableMfd, targets: &[RatFn]) -> Result<DesignResult> {
    require_square_invertible(smfd.nprime())?;
    if targets.len() != smfd.m() {
        return Err(Error::DimensionMismatch {
            op: "diagonal_decoupling",
            left: smfd.nprime().shape(),
            right: (targets.len(), 1),
        });
    }
    let t = RatMat::diag(targets);
    let x = check_realizable(smfd, &t, None)?;
    let certs = vec![Certificate::equality("achieved T is diagonal", smfd.nprime().mul(&x)?.is_diagonal())];
    two_dof_from_x(smfd, x, certs)
}

/// `T = I`, so `X' = N'^-1`.
pub fn inverse_problem(smfd: &StableMfd) -> Result<DesignResult> {
    require_square_invertible(smfd.nprime())?;
    let x = check_realizable(smfd, &RatMat::identity(smfd.p()), None)?;
    two_dof_from_x(smfd, x, Vec::new())
}

/// Constant precompensation with `T(0) = lambda`. A stable plant gets
/// `Cy = 0`, `Cr = P(0)^-1 lambda`; an unstable one gets a stabilizing `Cy`
/// and `X' = N'(0)^-1 lambda`, `Cr = (I - Cy P) D' X'`.
pub fn static_decoupling(smfd: &StableMfd, lambda: &QMat) -> Result<DesignResult> {
    let m = smfd.m();
    if lambda.rows() != m || lambda.cols() != m {
        return Err(Error::DimensionMismatch { op: "static_decoupling", left: (m, m), right: (lambda.rows(), lambda.cols()) });
    }
    if !lambda.is_diagonal() {
        return Err(Error::InvalidInput("lambda must be diagonal".to_string()));
    }
    if lambda.det()?.is_zero() {
        return Err(Error::Singular);
    }
    require_square_invertible(smfd.nprime())?;
    let zero = Rational::zero();
    let n0 = smfd.nprime().eval(&zero).value().ok_or(Error::PoleAtOrigin)?;
    if n0.det()?.is_zero() {
        return Err(Obstruction::ZeroAtOrigin.into());
    }
    let plant = smfd.plant()?;
    let lam = RatMat::from_qmat(lambda);
    if plant.is_stable() {
        let p0 = plant.eval(&zero).value().ok_or(Error::PoleAtOrigin)?;
        let cr = RatMat::from_qmat(&p0.inverse()?.mul(lambda)?);
        let cy = RatMat::zeros(m, m);
        let x = smfd.dprime().inv()?.mul(&cr)?;
        let controller = TwoDofController::new(&plant, cy.clone(), cr.clone())?;
        let dc = plant.mul(&cr)?.eval(&zero).value();
        let certs = vec![Certificate::equality("P(0) Cr equals lambda", dc.as_ref() == Some(lambda))];
        return DesignResult::assemble(smfd, x, controller, ClosedLoopConfig::TwoDof { cy, cr }, certs);
    }
    let x = RatMat::from_qmat(&n0.inverse()?).mul(&lam)?;
    let t0 = smfd.nprime().mul(&x)?.eval(&zero).value();
    let certs = vec![Certificate::equality("T(0) equals lambda", t0.as_ref() == Some(lambda))];
    two_dof_from_x(smfd, x, certs)
}

fn require_stable_inverse(d_t: &PolyMat) -> Result<Poly> {
    let det = d_t.det()?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let v = is_hurwitz(&det)?;
    if !v.is_stable() {
        return Err(Obstruction::Condition { condition: "D_T^-1 stable".into(), offending: v.factor_polys() }.into());
    }
    Ok(det)
}

fn check_assignment_shapes(mfd: &RightMfd, d_t: &PolyMat) -> Result<()> {
    if mfd.p() != mfd.m() {
        return Err(Error::NotSquare { rows: mfd.p(), cols: mfd.m() });
    }
    if d_t.shape() != mfd.d().shape() {
        return Err(Error::DimensionMismatch { op: "denominator assignment", left: mfd.d().shape(), right: d_t.shape() });
    }
    if mfd.n().det()?.is_zero() {
        return Err(Error::Singular);
    }
    Ok(())
}

/// Unity feedback with `T = N D_T^-1`: `Cff = D (D_T + N)^-1`, valid when
/// `(D_T + N) D^-1` is stable.
pub fn denominator_assignment_unity(mfd: &RightMfd, d_t: &PolyMat) -> Result<DesignResult> {
    check_assignment_shapes(mfd, d_t)?;
    require_stable_inverse(d_t)?;
    let n = mfd.n().to_ratmat();
    let d = mfd.d().to_ratmat();
    let dt = d_t.to_ratmat();
    let sum = dt.add(&n)?;
    let cond = sum.mul(&d.inv()?)?;
    let v = cond.stability();
    if !v.is_stable() {
        return Err(Obstruction::Condition { condition: "(D_T + N) D^-1 stable".into(), offending: v.factor_polys() }.into());
    }
    let cff = d.mul(&sum.inv()?)?;
    if !cff.is_proper() {
        return Err(Error::Improper { what: "Cff".into(), relative_degree: cff.min_relative_degree() });
    }
    let plant = mfd.plant()?;
    let x = dt.inv()?;
    let t = n.mul(&x)?;
    let tinv = t.inv()?;
    let pinv = plant.inv()?;
    let rhs = cff.inv()?.mul(&pinv)?;
    let certs = vec![
        Certificate::stability("D_T^-1 stable", x.stability()),
        Certificate::stability("(D_T + N) D^-1 stable", v),
        Certificate::equality("T^-1 + P^-1 = Cff^-1 P^-1", tinv.add(&pinv)? == rhs),
        Certificate::equality("T^-1 + I = Cff^-1 P^-1", tinv.one_plus()? == rhs),
    ];
    let controller = TwoDofController::new(&plant, cff.clone(), cff.clone())?;
    DesignResult::assemble(mfd, x, controller, ClosedLoopConfig::UnityFeedback { cff }, certs)
}

/// Feedback with direct reference and `T = N D_T^-1`: `Cfb = (D - D_T) N^-1`.
pub fn denominator_assignment_fig5(mfd: &RightMfd, d_t: &PolyMat) -> Result<DesignResult> {
    check_assignment_shapes(mfd, d_t)?;
    require_stable_inverse(d_t)?;
    let n = mfd.n().to_ratmat();
    let dt = d_t.to_ratmat();
    let cfb = mfd.d().sub(d_t)?.to_ratmat().mul(&n.inv()?)?;
    if !cfb.is_proper() {
        return Err(Error::Improper { what: "Cfb".into(), relative_degree: cfb.min_relative_degree() });
    }
    let plant = mfd.plant()?;
    let x = dt.inv()?;
    let t = n.mul(&x)?;
    let lhs = t.inv()?.sub(&plant.inv()?)?;
    let certs = vec![
        Certificate::stability("X = D_T^-1 stable", x.stability()),
        Certificate::equality("T^-1 - P^-1 = -Cfb", lhs == cfb.neg()),
    ];
    let controller = feedback_direct_controller(&plant, &cfb)?;
    DesignResult::assemble(mfd, x, controller, ClosedLoopConfig::FeedbackDirectR { cfb }, certs)
}

fn feedback_direct_controller(plant: &RatMat, cfb: &RatMat) -> Result<TwoDofController> {
    TwoDofController::new(plant, cfb.clone(), RatMat::identity(plant.cols())).map_err(|e| match e {
        Error::NotStable(_) => {
            let v = crate::stabilize::is_internally_stabilizing(plant, cfb)
                .map(|r| r.verdict())
                .unwrap_or_else(|_| StabilityVerdict::stable());
            Obstruction::Condition { condition: "feedback loop internally stable".into(), offending: v.factor_polys() }
                .into()
        }
        e => e,
    })
}

/// `Cfb = X^-1 (X D - I) N^-1`, so that `u = Cfb y + r` gives `y = N X r`.
pub fn fig5_feedback_from_x<F: Factorization>(mfd: &F, x: &RatMat) -> Result<RatMat> {
    let n = mfd.numerator();
    let d = mfd.denominator();
    require_square_invertible(&n)?;
    if !x.is_square() || x.rows() != d.rows() {
        return Err(Error::DimensionMismatch { op: "fig5_feedback_from_x", left: d.shape(), right: x.shape() });
    }
    let xinv = x.inv()?;
    let l = x.mul(&d)?.one_minus()?.neg();
    xinv.mul(&l)?.mul(&n.inv()?)
}

/// Result of the unity-feedback admissibility test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnityAdmissibility {
    /// Stability of `(I + X' N') D'^-1`.
    pub verdict: StabilityVerdict,
    pub proper: bool,
    /// SISO only: whether the unstable part of the plant denominator divides
    /// `c1 dx + a nx`, where `N' = a / c1` and `X' = nx / dx`.
    pub diophantine: Option<bool>,
}

impl UnityAdmissibility {
    pub fn admissible(&self) -> bool {
        self.proper && self.verdict.is_stable()
    }
}

/// `a`, `c1` of `N' = a/c1` and the unstable part of the numerator of `D'`.
fn siso_parts(smfd: &StableMfd) -> (Poly, Poly, Poly) {
    let n = smfd.nprime().get(0, 0);
    let d = smfd.dprime().get(0, 0);
    let (_, unstable, _) = stable_unstable_split(d.num());
    (n.num().clone(), n.den().clone(), unstable)
}

pub fn unity_feedback_admissible(smfd: &StableMfd, xprime: &RatMat) -> Result<UnityAdmissibility> {
    if !xprime.is_rh_inf() {
        return Err(Error::NotStable("X'".to_string()));
    }
    if xprime.shape() != (smfd.m(), smfd.p()) {
        return Err(Error::DimensionMismatch { op: "unity_feedback_admissible", left: (smfd.m(), smfd.p()), right: xprime.shape() });
    }
    let w = xprime.mul(smfd.nprime())?.one_plus()?.mul(&smfd.dprime().inv()?)?;
    let verdict = w.stability();
    let proper = w.is_proper();
    let diophantine = if smfd.p() == 1 && smfd.m() == 1 {
        let (a, c1, bu) = siso_parts(smfd);
        let xe = xprime.get(0, 0);
        let lhs = &(&c1 * xe.den()) + &(&a * xe.num());
        Some(bu.divides(&lhs))
    } else {
        None
    };
    Ok(UnityAdmissibility { verdict, proper, diophantine })
}

/// `Cff = [(I + X' N') D'^-1]^-1 X'`.
pub fn unity_feedback_controller(smfd: &StableMfd, xprime: &RatMat) -> Result<DesignResult> {
    let adm = unity_feedback_admissible(smfd, xprime)?;
    if !adm.admissible() {
        return Err(Obstruction::Condition {
            condition: "(I + X' N') D'^-1 proper and stable".into(),
            offending: adm.verdict.factor_polys(),
        }
        .into());
    }
    let w = xprime.mul(smfd.nprime())?.one_plus()?.mul(&smfd.dprime().inv()?)?;
    let cff = w.inv()?.mul(xprime)?;
    if !cff.is_proper() {
        return Err(Error::Improper { what: "Cff".into(), relative_degree: cff.min_relative_degree() });
    }
    let plant = smfd.plant()?;
    let controller = TwoDofController::new(&plant, cff.clone(), cff.clone())?;
    let certs = vec![Certificate::stability("(I + X' N') D'^-1 stable", adm.verdict)];
    DesignResult::assemble(smfd, xprime.clone(), controller, ClosedLoopConfig::UnityFeedback { cff }, certs)
}

/// Solution of `c1 dx + a nx = b p` for the unity-feedback parameter
/// `X' = nx / dx`, with `N' = a/c1` and `b` the unstable part of `D'`'s numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophantineSolution {
    pub xprime: RatFn,
    pub dx: Poly,
    pub nx: Poly,
    pub quotient: Poly,
    /// `c1`, `a`, `b` of the equation.
    pub c1: Poly,
    pub a: Poly,
    pub b: Poly,
}

impl DiophantineSolution {
    /// `c1 dx + a nx - b p`, zero for a valid solution.
    pub fn residual(&self) -> Poly {
        &(&(&self.c1 * &self.dx) + &(&self.a * &self.nx)) - &(&self.b * &self.quotient)
    }
}

/// `nx` of degree `<= kn` and `p` with `a nx - b p = -c1 dx`.
fn solve_nx(a: &Poly, b: &Poly, c1dx: &Poly, kn: usize) -> Result<Option<(Poly, Poly)>> {
    let deg_b = b.degree().expect("nonzero");
    let top = c1dx.degree().unwrap_or(0).max(a.degree().unwrap_or(0) + kn);
    if top < deg_b {
        // only p = 0 is possible
        let unknowns = kn + 1;
        let mut mat = QMat::zeros(top + 1, unknowns);
        for i in 0..=kn {
            for (k, c) in a.coeffs().iter().enumerate() {
                if i + k <= top {
                    mat.set(i + k, i, c.clone());
                }
            }
        }
        let rhs = QMat::new(top + 1, 1, (0..=top).map(|k| -c1dx.coeff(k)).collect())?;
        return Ok(mat.solve(&rhs)?.map(|s| (Poly::from_coeffs(s.data().to_vec()), Poly::zero())));
    }
    let kp = top - deg_b;
    let unknowns = kn + 1 + kp + 1;
    let mut mat = QMat::zeros(top + 1, unknowns);
    for i in 0..=kn {
        for (k, c) in a.coeffs().iter().enumerate() {
            mat.set(i + k, i, c.clone());
        }
    }
    for i in 0..=kp {
        for (k, c) in b.coeffs().iter().enumerate() {
            mat.set(i + k, kn + 1 + i, -c.clone());
        }
    }
    let rhs = QMat::new(top + 1, 1, (0..=top).map(|k| -c1dx.coeff(k)).collect())?;
    Ok(mat.solve(&rhs)?.map(|s| {
        let d = s.data();
        (Poly::from_coeffs(d[..=kn].to_vec()), Poly::from_coeffs(d[kn + 1..].to_vec()))
    }))
}

/// SISO unity-feedback parameter search. With `dx` given, finds the
/// lowest-degree `nx` with `deg nx <= deg dx`; otherwise scans
/// `dx = (s + shift)^k` for `k = 0, 1, ...`.
pub fn solve_unity_diophantine(smfd: &StableMfd, dx: Option<&Poly>) -> Result<DiophantineSolution> {
    if smfd.p() != 1 || smfd.m() != 1 {
        return Err(Error::InvalidInput("the Diophantine form applies to SISO plants".to_string()));
    }
    let (a, c1, b) = siso_parts(smfd);
    let attempt = |dx: &Poly| -> Result<Option<DiophantineSolution>> {
        let c1dx = &c1 * dx;
        let kmax = dx.degree().expect("nonzero");
        for kn in 0..=kmax {
            if let Some((nx, quotient)) = solve_nx(&a, &b, &c1dx, kn)? {
                let xprime = RatFn::new(nx.clone(), dx.clone())?;
                let sol = DiophantineSolution { xprime, dx: dx.clone(), nx, quotient, c1: c1.clone(), a: a.clone(), b: b.clone() };
                return Ok(Some(sol));
            }
        }
        Ok(None)
    };
    match dx {
        Some(dx) => {
            if dx.is_zero() || !is_hurwitz(dx)?.is_stable() {
                return Err(Error::NotStable("dx".to_string()));
            }
            attempt(dx)?.ok_or_else(|| {
                Obstruction::Condition { condition: "unity-feedback Diophantine equation solvable".into(), offending: vec![b.clone()] }
                    .into()
            })
        }
        None => {
            let lin = Poly::from_coeffs(vec![smfd.shift().clone(), Rational::one()]);
            let bound = b.degree().unwrap_or(0) + a.degree().unwrap_or(0) + c1.degree().unwrap_or(0) + 1;
            for k in 0..=bound {
                if let Some(sol) = attempt(&lin.pow(k))? {
                    return Ok(sol);
                }
            }
            Err(Obstruction::Condition {
                condition: "unity-feedback Diophantine equation solvable".into(),
                offending: vec![b],
            }
            .into())
        }
    }
}

/// Blocks of the prefilter/feedforward/feedback split `u = Cff (Cfb y + R r)`
/// from a left RH-inf factorization `[Cy, Cr] = Dc^-1 [Ny', Nr']`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitBlocks {
    pub r: RatMat,
    pub cff: RatMat,
    pub cfb: RatMat,
    pub dc: RatMat,
}

impl SplitBlocks {
    pub fn config(&self) -> ClosedLoopConfig {
        ClosedLoopConfig::FfFbR { r: self.r.clone(), cff: self.cff.clone(), cfb: self.cfb.clone() }
    }
}

pub fn fig3_realization(controller: &TwoDofController, shift: &Rational) -> Result<SplitBlocks> {
    let c = controller.stacked();
    if !c.is_proper() {
        return Err(Error::Improper { what: "controller".into(), relative_degree: c.min_relative_degree() });
    }
    let left = left_coprime_mfd(&c)?;
    let (dc, nc) = stable_left_mfd(&left, shift)?;
    let py = controller.cy().cols();
    let cfb = nc.columns(0, py);
    let r = nc.columns(py, nc.cols());
    let cff = dc.inv()?;
    if !(r.is_stable() && cfb.is_stable() && dc.is_rh_inf() && cff.is_proper()) {
        return Err(Error::InvalidInput("left factorization of the controller is not in RH-inf".to_string()));
    }
    Ok(SplitBlocks { r, cff, cfb, dc })
}

/// Scalar internal-stability conditions for a plant `n/d` and target `T`:
/// `(1 + T) d^-1` and `T n^-1` stable (positive feedback, so the sensitivity
/// is `1 + T`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SisoConditions {
    pub sensitivity: StabilityVerdict,
    pub complementary: StabilityVerdict,
}

impl SisoConditions {
    pub fn hold(&self) -> bool {
        self.sensitivity.is_stable() && self.complementary.is_stable()
    }
}

pub fn siso_conditions(p: &RatFn, t: &RatFn) -> Result<SisoConditions> {
    if p.is_zero() {
        return Err(Error::Singular);
    }
    let d = RatFn::from_poly(p.den().clone());
    let n = RatFn::from_poly(p.num().clone());
    let s = (&RatFn::one() + t).checked_div(&d)?;
    let c = t.checked_div(&n)?;
    Ok(SisoConditions { sensitivity: s.stability(), complementary: c.stability() })
}

/// Human-readable name of a design problem.
pub fn problem_name(p: &DesignProblem) -> String {
    match p {
        DesignProblem::ModelMatching { .. } => "model matching",
        DesignProblem::DiagonalDecoupling { .. } => "diagonal decoupling",
        DesignProblem::Inverse => "inverse",
        DesignProblem::StaticDecoupling { .. } => "static decoupling",
        DesignProblem::DenominatorAssignment { .. } => "denominator assignment",
    }
    .to_string()
}

/// Runs a design problem in the two-degrees-of-freedom configuration, or in
/// unity feedback for denominator assignment.
pub fn solve(mfd: &RightMfd, smfd: &StableMfd, problem: &DesignProblem) -> Result<DesignResult> {
    match problem {
        DesignProblem::ModelMatching { t, m } => model_matching(smfd, t, m.as_ref()),
        DesignProblem::DiagonalDecoupling { targets } => diagonal_decoupling(smfd, targets),
        DesignProblem::Inverse => inverse_problem(smfd),
        DesignProblem::StaticDecoupling { lambda } => static_decoupling(smfd, lambda),
        DesignProblem::DenominatorAssignment { d_t } => denominator_assignment_unity(mfd, d_t),
    }
}
