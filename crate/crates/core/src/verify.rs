//! Closed-loop algebra for each controller configuration, certificates, DC
//! gains and step-response simulation.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::float::FloatCore;

use crate::error::{Error, Result};
use crate::polyalg::{to_f64, Poly, QMat, RatMat};
use crate::stability::{Stability, StabilityVerdict};
use crate::stabilize::{is_internally_stabilizing, return_difference_inverse, InternalStability};

/// How plant and controller blocks are wired. All loops use positive feedback.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedLoopConfig {
    /// `u = Cy y + Cr r`.
    TwoDof { cy: RatMat, cr: RatMat },
    /// `u = Cff (Cfb y + R r)`.
    FfFbR { r: RatMat, cff: RatMat, cfb: RatMat },
    /// `u = Cff (r + y)`.
    UnityFeedback { cff: RatMat },
    /// `u = Cfb y + r`.
    FeedbackDirectR { cfb: RatMat },
}

impl ClosedLoopConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ClosedLoopConfig::TwoDof { .. } => "two-dof",
            ClosedLoopConfig::FfFbR { .. } => "feedforward-feedback-prefilter",
            ClosedLoopConfig::UnityFeedback { .. } => "unity-feedback",
            ClosedLoopConfig::FeedbackDirectR { .. } => "feedback-direct-reference",
        }
    }

    /// The equivalent `(Cy, Cr)` pair.
    pub fn as_two_dof(&self) -> Result<(RatMat, RatMat)> {
        Ok(match self {
            ClosedLoopConfig::TwoDof { cy, cr } => (cy.clone(), cr.clone()),
            ClosedLoopConfig::FfFbR { r, cff, cfb } => (cff.mul(cfb)?, cff.mul(r)?),
            ClosedLoopConfig::UnityFeedback { cff } => (cff.clone(), cff.clone()),
            ClosedLoopConfig::FeedbackDirectR { cfb } => (cfb.clone(), RatMat::identity(cfb.rows())),
        })
    }

    pub fn blocks(&self) -> Vec<(&'static str, &RatMat)> {
        match self {
            ClosedLoopConfig::TwoDof { cy, cr } => vec![("Cy", cy), ("Cr", cr)],
            ClosedLoopConfig::FfFbR { r, cff, cfb } => vec![("R", r), ("Cff", cff), ("Cfb", cfb)],
            ClosedLoopConfig::UnityFeedback { cff } => vec![("Cff", cff)],
            ClosedLoopConfig::FeedbackDirectR { cfb } => vec![("Cfb", cfb)],
        }
    }
}

/// One named check with its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub condition: String,
    pub holds: bool,
    pub verdict: Option<StabilityVerdict>,
}

impl Certificate {
    pub fn equality(condition: impl Into<String>, holds: bool) -> Self {
        Certificate { condition: condition.into(), holds, verdict: None }
    }

    pub fn stability(condition: impl Into<String>, verdict: StabilityVerdict) -> Self {
        Certificate { condition: condition.into(), holds: verdict.is_stable(), verdict: Some(verdict) }
    }

    /// Proper and stable.
    pub fn rh_inf(condition: impl Into<String>, m: &RatMat) -> Self {
        let verdict = m.stability();
        Certificate { condition: condition.into(), holds: m.is_proper() && verdict.is_stable(), verdict: Some(verdict) }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", if self.holds { "ok" } else { "FAIL" }, self.condition)?;
        if let Some(v) = &self.verdict {
            write!(f, " ({})", v)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedLoopReport {
    pub t_yr: RatMat,
    pub t_ur: RatMat,
    pub internal: InternalStability,
    pub well_posed: bool,
    /// Configuration-specific block conditions.
    pub block_checks: Vec<Certificate>,
}

pub fn closed_loop(p: &RatMat, config: &ClosedLoopConfig) -> Result<ClosedLoopReport> {
    let (cy, cr) = config.as_two_dof()?;
    if cr.rows() != p.cols() {
        return Err(Error::DimensionMismatch { op: "closed_loop", left: p.shape(), right: cr.shape() });
    }
    let internal = is_internally_stabilizing(p, &cy)?;
    let sinv = return_difference_inverse(p, &cy)?;
    let t_ur = sinv.mul(&cr)?;
    let t_yr = p.mul(&t_ur)?;
    let mut block_checks: Vec<Certificate> = config
        .blocks()
        .into_iter()
        .map(|(name, b)| Certificate::equality(alloc::format!("{name} proper"), b.is_proper()))
        .collect();
    if let ClosedLoopConfig::FfFbR { r, cff, cfb } = config {
        block_checks.push(Certificate::stability("R stable", r.stability()));
        block_checks.push(Certificate::stability("Cfb stable", cfb.stability()));
        match cff.inv() {
            Ok(ci) => block_checks.push(Certificate::stability("Cff^-1 stable", ci.stability())),
            Err(_) => block_checks.push(Certificate::equality("Cff^-1 exists", false)),
        }
    }
    Ok(ClosedLoopReport { t_yr, t_ur, internal, well_posed: true, block_checks })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certification {
    pub checks: Vec<Certificate>,
}

impl Certification {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Exact comparison of `y/r` against the desired response plus every
/// internal-stability and block check of the report.
pub fn certify(report: &ClosedLoopReport, desired_t: &RatMat) -> Certification {
    let mut checks = vec![Certificate::equality("y/r equals the desired T", report.t_yr == *desired_t)];
    checks.push(Certificate::rh_inf("y/r proper and stable", &report.t_yr));
    checks.push(Certificate::rh_inf("u/r proper and stable", &report.t_ur));
    for m in &report.internal.maps {
        checks.push(Certificate {
            condition: alloc::format!("{} proper and stable", m.name),
            holds: m.ok(),
            verdict: Some(m.verdict.clone()),
        });
    }
    checks.extend(report.block_checks.iter().cloned());
    Certification { checks }
}

/// `t(0)`, exact.
pub fn dc_gain(t: &RatMat) -> Result<QMat> {
    if !t.is_stable() {
        return Err(Error::NotStable("transfer matrix".to_string()));
    }
    t.eval(&num_traits::zero()).value().ok_or(Error::PoleAtOrigin)
}

/// `1 / min |Re p|` over the poles of `t`; `None` for a constant matrix.
pub fn dominant_time_constant(t: &RatMat) -> Option<f64> {
    let lcd = t.lcd();
    if lcd.degree().unwrap_or(0) == 0 {
        return None;
    }
    let slowest = crate::roots::complex_roots(&lcd).iter().map(|z| z.re.abs()).fold(f64::INFINITY, f64::min);
    Some(1.0 / slowest)
}

/// Sampled response to a unit step on one input channel.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationTrace {
    pub time: Vec<f64>,
    /// One sample list per output channel.
    pub outputs: Vec<Vec<f64>>,
    pub input: String,
    pub step_size: f64,
}

impl SimulationTrace {
    pub fn final_values(&self) -> Vec<f64> {
        self.outputs.iter().map(|o| *o.last().expect("nonempty")).collect()
    }
}

/// Dense row-major `f64` matrix, just enough for the exponential.
#[derive(Clone)]
struct FMat {
    n: usize,
    a: Vec<f64>,
}

impl FMat {
    fn zeros(n: usize) -> Self {
        FMat { n, a: vec![0.0; n * n] }
    }

    fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = 1.0;
        }
        m
    }

    fn mul(&self, o: &FMat) -> FMat {
        let n = self.n;
        let mut r = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x != 0.0 {
                    for j in 0..n {
                        r.a[i * n + j] += x * o.a[k * n + j];
                    }
                }
            }
        }
        r
    }

    fn norm1(&self) -> f64 {
        (0..self.n).map(|j| (0..self.n).map(|i| self.a[i * self.n + j].abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    /// Scaling and squaring with a Taylor series truncated below 1e-16.
    fn expm(&self) -> FMat {
        let n = self.n;
        let norm = self.norm1();
        let mut squarings = 0u32;
        let mut scale = 1.0;
        while norm * scale > 0.5 {
            scale *= 0.5;
            squarings += 1;
        }
        let mut x = self.clone();
        x.a.iter_mut().for_each(|v| *v *= scale);
        let mut sum = Self::identity(n);
        let mut term = Self::identity(n);
        for k in 1..40 {
            term = term.mul(&x);
            term.a.iter_mut().for_each(|v| *v /= k as f64);
            for (s, t) in sum.a.iter_mut().zip(term.a.iter()) {
                *s += t;
            }
            if term.norm1() < 1e-17 {
                break;
            }
        }
        for _ in 0..squarings {
            sum = sum.mul(&sum);
        }
        sum
    }
}

/// Controllable-canonical realization of one column over its monic common
/// denominator: `x' = A x + b u`, `y_i = c_i x + d_i u`.
struct ColumnRealization {
    order: usize,
    a: Vec<f64>,
    c: Vec<Vec<f64>>,
    d: Vec<f64>,
}

fn realize_column(t: &RatMat, j: usize) -> ColumnRealization {
    let den = t.column_lcd(j).monic();
    let n = den.degree().expect("nonzero");
    let mut a = vec![0.0; n * n];
    for i in 0..n.saturating_sub(1) {
        a[i * n + i + 1] = 1.0;
    }
    for (k, coef) in den.coeffs().iter().take(n).enumerate() {
        a[(n - 1) * n + k] = -to_f64(coef);
    }
    let mut c = Vec::new();
    let mut d = Vec::new();
    for i in 0..t.rows() {
        let e = t.get(i, j);
        let num = e.num() * &den.exact_div(e.den()).expect("lcd");
        let feed = num.coeff(n);
        let rest = &num - &den.scale(&feed);
        d.push(to_f64(&feed));
        c.push((0..n).map(|k| to_f64(&rest.coeff(k))).collect());
    }
    ColumnRealization { order: n, a, c, d }
}

/// Unit-step responses, one trace per input channel, from a zero-order-hold
/// discretization (exact for step inputs).
pub fn simulate_step(t: &RatMat, horizon: f64, dt: f64) -> Result<Vec<SimulationTrace>> {
    if !(horizon > 0.0 && dt > 0.0 && horizon.is_finite() && dt.is_finite()) {
        return Err(Error::InvalidInput("horizon and dt must be positive".to_string()));
    }
    if !t.is_proper() {
        return Err(Error::Improper { what: "simulated transfer matrix".into(), relative_degree: t.min_relative_degree() });
    }
    if !t.is_stable() {
        return Err(Error::NotStable("simulated transfer matrix".to_string()));
    }
    let steps = FloatCore::round(horizon / dt) as usize;
    let time: Vec<f64> = (0..=steps).map(|k| k as f64 * dt).collect();
    let mut traces = Vec::new();
    for j in 0..t.cols() {
        let real = realize_column(t, j);
        let n = real.order;
        // exp([[A, b], [0, 0]] dt) = [[Phi, Gamma], [0, 1]]
        let mut big = FMat::zeros(n + 1);
        for r in 0..n {
            for c in 0..n {
                big.a[r * (n + 1) + c] = real.a[r * n + c] * dt;
            }
        }
        if n > 0 {
            big.a[(n - 1) * (n + 1) + n] = dt;
        }
        let e = big.expm();
        let phi = |r: usize, c: usize| e.a[r * (n + 1) + c];
        let gamma: Vec<f64> = (0..n).map(|r| e.a[r * (n + 1) + n]).collect();
        let mut x = vec![0.0; n];
        let mut outputs: Vec<Vec<f64>> = vec![Vec::with_capacity(steps + 1); t.rows()];
        for _ in 0..=steps {
            for (i, out) in outputs.iter_mut().enumerate() {
                let y: f64 = real.c[i].iter().zip(x.iter()).map(|(c, x)| c * x).sum::<f64>() + real.d[i];
                out.push(y);
            }
            x = (0..n).map(|r| (0..n).map(|c| phi(r, c) * x[c]).sum::<f64>() + gamma[r]).collect();
        }
        traces.push(SimulationTrace {
            time: time.clone(),
            outputs,
            input: alloc::format!("unit step on r{}", j + 1),
            step_size: dt,
        });
    }
    Ok(traces)
}

/// Largest deviation of the final samples from `dc_gain(t)` over all
/// channels, simulated to `horizon`.
pub fn steady_state_error(t: &RatMat, horizon: f64, dt: f64) -> Result<f64> {
    let gain = dc_gain(t)?;
    let traces = simulate_step(t, horizon, dt)?;
    let mut worst: f64 = 0.0;
    for (j, tr) in traces.iter().enumerate() {
        for (i, y) in tr.final_values().into_iter().enumerate() {
            worst = worst.max((y - to_f64(gain.get(i, j))).abs());
        }
    }
    Ok(worst)
}

/// Polynomial with the given roots, for tests elsewhere in the crate.
#[allow(dead_code)]
pub(crate) fn monic_from_roots(roots: &[i64]) -> Poly {
    Poly::from_roots(&roots.iter().map(|&r| crate::polyalg::q(r)).collect::<Vec<_>>())
}
