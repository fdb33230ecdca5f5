//! Subcommand dispatch. Each command turns a problem file into a text report.

use std::fmt::Write;
use std::path::PathBuf;

use twodof_core::factor::{
    is_right_coprime, left_coprime_mfd, right_coprime_mfd, stable_mfd, zeros_and_poles, StableMfd,
};
use twodof_core::polyalg::{q, RatFn, RatMat};
use twodof_core::stability::Stability;
use twodof_core::stabilize::{
    is_internally_stabilizing, solve_bezout, stable_doubly_coprime, youla_controller,
    TwoDofController,
};
use twodof_core::synthesis::{
    check_realizable, denominator_assignment_fig5, denominator_assignment_unity, diagonal_decoupling,
    fig3_realization, fig5_feedback_from_x, inverse_problem, model_matching, solve_unity_diophantine,
    static_decoupling, unity_feedback_controller, DesignResult,
};
use twodof_core::verify::{certify, closed_loop, dc_gain, dominant_time_constant, simulate_step, ClosedLoopConfig};
use twodof_core::Rational;

use crate::problem::{FeedbackSign, ProblemFile};
use crate::render;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Factor,
    Stabilize,
    Match,
    Decouple,
    Invert,
    StaticDecouple,
    AssignDenominator,
    Verify,
    Simulate,
}

/// Command-line overrides; unset fields fall back to the problem file and
/// then to the defaults (shift 1, positive feedback, dt 0.01).
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub shift: Option<Rational>,
    pub sign: Option<FeedbackSign>,
    pub horizon: Option<f64>,
    pub dt: Option<f64>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Ctx<'a> {
    file: &'a ProblemFile,
    shift: Rational,
    sign: FeedbackSign,
    horizon: Option<f64>,
    dt: f64,
    out: Option<PathBuf>,
    report: String,
}

pub fn run(command: Command, problem_text: &str, opts: &RunOptions) -> Outcome {
    let file = match crate::parse_problem(problem_text) {
        Ok(f) => f,
        Err(e) => return Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let mut ctx = Ctx {
        file: &file,
        shift: opts.shift.clone().or(file.options.shift.clone()).unwrap_or_else(|| q(1)),
        sign: opts.sign.or(file.options.sign).unwrap_or_default(),
        horizon: opts.horizon.or(file.options.horizon),
        dt: opts.dt.or(file.options.dt).unwrap_or(0.01),
        out: opts.out.clone(),
        report: String::new(),
    };
    let result = match command {
        Command::Factor => ctx.factor(),
        Command::Stabilize => ctx.stabilize(),
        Command::Match => ctx.model_match(),
        Command::Decouple => ctx.decouple(),
        Command::Invert => ctx.invert(),
        Command::StaticDecouple => ctx.static_decouple(),
        Command::AssignDenominator => ctx.assign_denominator(),
        Command::Verify => ctx.verify(),
        Command::Simulate => ctx.simulate(),
    };
    match result {
        Ok(code) => Outcome { code, stdout: ctx.report, stderr: String::new() },
        Err(e) => {
            let code = e.exit_code();
            if code == 2 {
                let _ = writeln!(ctx.report, "obstruction: {e}");
                Outcome { code, stdout: ctx.report, stderr: String::new() }
            } else {
                Outcome { code, stdout: ctx.report, stderr: format!("error: {e}\n") }
            }
        }
    }
}

macro_rules! line {
    ($ctx:expr, $($arg:tt)*) => {{
        let _ = writeln!($ctx.report, $($arg)*);
    }};
}

impl Ctx<'_> {
    fn plant(&self) -> Result<RatMat, CliError> {
        Ok(self.file.plant()?.clone())
    }

    fn smfd(&self, plant: &RatMat) -> Result<StableMfd, CliError> {
        Ok(stable_mfd(&right_coprime_mfd(plant)?, &self.shift)?)
    }

    /// Feedback block as the user writes it under the chosen sign.
    fn feedback(&self, m: &RatMat) -> RatMat {
        match self.sign {
            FeedbackSign::Positive => m.clone(),
            FeedbackSign::Negative => m.neg(),
        }
    }

    fn law(&self) -> &'static str {
        match self.sign {
            FeedbackSign::Positive => "u = Cy y + Cr r",
            FeedbackSign::Negative => "u = -Cy y + Cr r",
        }
    }

    fn header(&mut self, plant: &RatMat) {
        line!(self, "plant P = {}", render::ratmat(plant));
    }

    fn factor(&mut self) -> Result<i32, CliError> {
        let plant = self.plant()?;
        self.header(&plant);
        let mfd = right_coprime_mfd(&plant)?;
        line!(self, "right coprime MFD P = N D^-1");
        line!(self, "  N = {}", render::polymat(mfd.n()));
        line!(self, "  D = {}", render::polymat(mfd.d()));
        let coprime = is_right_coprime(mfd.n(), mfd.d())?;
        line!(self, "  right coprime (Hermite form of [D; N]): {}", if coprime { "yes" } else { "no" });
        let left = left_coprime_mfd(&plant)?;
        line!(self, "left coprime MFD P = Dl^-1 Nl");
        line!(self, "  Dl = {}", render::polymat(left.dl()));
        line!(self, "  Nl = {}", render::polymat(left.nl()));
        let s = stable_mfd(&mfd, &self.shift)?;
        line!(self, "RH-inf factorization with shift {}: P = N' D'^-1", self.shift);
        line!(self, "  N' = {}", render::ratmat(s.nprime()));
        line!(self, "  D' = {}", render::ratmat(s.dprime()));
        line!(self, "  U = {}", render::ratmat(s.u()));
        line!(self, "  V = {}", render::ratmat(s.v()));
        let holds = s.bezout_residual()?.is_identity();
        line!(self, "  [{}] U N' + V D' = I", if holds { "ok" } else { "FAIL" });
        render::zero_report(&mut self.report, &zeros_and_poles(&mfd));
        Ok(0)
    }

    fn stabilize(&mut self) -> Result<i32, CliError> {
        let plant = self.plant()?;
        self.header(&plant);
        let mfd = right_coprime_mfd(&plant)?;
        let dc = solve_bezout(&mfd)?;
        line!(self, "polynomial Bezout identity X1 D + X2 N = I");
        line!(self, "  X1 = {}", render::polymat(&dc.x1));
        line!(self, "  X2 = {}", render::polymat(&dc.x2));
        line!(self, "  [{}] X1 D + X2 N = I", if dc.bezout_residual()?.is_identity() { "ok" } else { "FAIL" });
        let sdc = stable_doubly_coprime(&mfd, &self.shift)?;
        line!(self, "RH-inf doubly coprime factors with shift {}", self.shift);
        line!(self, "  N' = {}", render::ratmat(sdc.right.nprime()));
        line!(self, "  D' = {}", render::ratmat(sdc.right.dprime()));
        line!(self, "  Nl' = {}", render::ratmat(&sdc.nl));
        line!(self, "  Dl' = {}", render::ratmat(&sdc.dl));
        line!(self, "  X1' = {}", render::ratmat(sdc.x1()));
        line!(self, "  X2' = {}", render::ratmat(sdc.x2()));
        line!(self, "Youla controllers Cy = -(X1' - K Nl')^-1 (X2' + K Dl'), {}", self.law());
        let (p, m) = plant.shape();
        let pole = RatFn::new(twodof_core::Poly::one(), twodof_core::Poly::linear(&-self.shift.clone()))?;
        let mut samples = vec![("0".to_string(), RatMat::zeros(m, p))];
        samples.push((format!("({}) I", render::ratfn(&pole)), RatMat::from_fn(m, p, |i, j| if i == j { pole.clone() } else { RatFn::zero() })));
        if let Some(k) = self.file.design_matrix("k") {
            samples.push((render::ratmat(k), k.clone()));
        }
        let mut all_ok = true;
        for (label, k) in samples {
            match youla_controller(&sdc, &k) {
                Ok(cy) => {
                    line!(self, "K = {label}");
                    line!(self, "  Cy = {}", render::ratmat(&self.feedback(&cy)));
                    let cert = is_internally_stabilizing(&plant, &cy)?;
                    all_ok &= cert.stabilizing();
                    render::internal_stability(&mut self.report, &cert);
                }
                Err(e) => line!(self, "K = {label}: {e}"),
            }
        }
        Ok(if all_ok { 0 } else { 2 })
    }

    fn design_report(&mut self, name: &str, xlabel: &str, r: &DesignResult) -> Result<(), CliError> {
        line!(self, "design: {name} ({})", r.configuration.name());
        line!(self, "  {xlabel} = {}", render::ratmat(&r.x));
        self.controller_lines(&r.configuration);
        line!(self, "  achieved y/r = {}", render::ratmat(&r.achieved_t));
        line!(self, "  achieved u/r = {}", render::ratmat(&r.achieved_m));
        line!(self, "certificates:");
        render::certificates(&mut self.report, &r.certificates);
        line!(self, "internal stability:");
        render::internal_stability(&mut self.report, r.controller.certificate());
        Ok(())
    }

    fn controller_lines(&mut self, config: &ClosedLoopConfig) {
        match config {
            ClosedLoopConfig::TwoDof { cy, cr } => {
                line!(self, "  controller {}", self.law());
                line!(self, "  Cy = {}", render::ratmat(&self.feedback(cy)));
                line!(self, "  Cr = {}", render::ratmat(cr));
            }
            ClosedLoopConfig::FfFbR { r, cff, cfb } => {
                line!(self, "  R = {}", render::ratmat(r));
                line!(self, "  Cff = {}", render::ratmat(cff));
                line!(self, "  Cfb = {}", render::ratmat(&self.feedback(cfb)));
            }
            ClosedLoopConfig::UnityFeedback { cff } => {
                line!(self, "  unity feedback u = Cff (r + y)");
                line!(self, "  Cff = {}", render::ratmat(cff));
            }
            ClosedLoopConfig::FeedbackDirectR { cfb } => {
                let law = match self.sign {
                    FeedbackSign::Positive => "u = Cfb y + r",
                    FeedbackSign::Negative => "u = -Cfb y + r",
                };
                line!(self, "  feedback with direct reference {law}");
                line!(self, "  Cfb = {}", render::ratmat(&self.feedback(cfb)));
            }
        }
    }

    fn finish_design(&mut self, name: &str, xlabel: &str, r: &DesignResult) -> Result<i32, CliError> {
        self.design_report(name, xlabel, r)?;
        if self.file.config_kind.as_deref() == Some("ff-fb-r") {
            self.split_controller(&r.controller)?;
        }
        Ok(0)
    }

    fn split_controller(&mut self, controller: &TwoDofController) -> Result<(), CliError> {
        let plant = self.plant()?;
        let blocks = fig3_realization(controller, &self.shift)?;
        line!(self, "prefilter / feedforward / feedback split u = Cff (Cfb y + R r)");
        self.controller_lines(&blocks.config());
        let two_dof = closed_loop(&plant, &ClosedLoopConfig::TwoDof { cy: controller.cy().clone(), cr: controller.cr().clone() })?;
        let split = closed_loop(&plant, &blocks.config())?;
        let mut checks = split.block_checks.clone();
        checks.push(twodof_core::verify::Certificate::equality("same y/r as the two-dof loop", split.t_yr == two_dof.t_yr));
        render::certificates(&mut self.report, &checks);
        Ok(())
    }

    fn model_match(&mut self) -> Result<i32, CliError> {
        let plant = self.plant()?;
        self.header(&plant);
        let smfd = self.smfd(&plant)?;
        let kind = self.file.config_kind.clone().unwrap_or_else(|| "two-dof".into());
        let t = self.file.design_matrix("t").cloned();
        let m = self.file.design_matrix("m").cloned();
        match kind.as_str() {
            "two-dof" | "ff-fb-r" => {
                let t = t.ok_or_else(|| CliError::Input("[design] needs 't'".into()))?;
                let r = model_matching(&smfd, &t, m.as_ref())?;
                self.finish_design("model matching", "X'", &r)
            }
            "unity" => {
                let x = match t {
                    Some(t) => check_realizable(&smfd, &t, m.as_ref())?,
                    None => {
                        let dx = self.file.design_poly("dx")?;
                        let sol = solve_unity_diophantine(&smfd, dx.as_ref())?;
                        line!(self, "unity-feedback Diophantine equation c1 dx + a nx = b p");
                        line!(self, "  c1 = {}, a = {}, b = {}", render::poly(&sol.c1), render::poly(&sol.a), render::poly(&sol.b));
                        line!(self, "  dx = {}, nx = {}, p = {}", render::poly(&sol.dx), render::poly(&sol.nx), render::poly(&sol.quotient));
                        line!(self, "  [{}] residual is zero", if sol.residual().is_zero() { "ok" } else { "FAIL" });
                        RatMat::scalar(sol.xprime)
                    }
                };
                let r = unity_feedback_controller(&smfd, &x)?;
                self.finish_design("model matching", "X'", &r)
            }
            "feedback-direct-r" => {
                let t = t.ok_or_else(|| CliError::Input("[design] needs 't'".into()))?;
                let x = check_realizable(&smfd, &t, m.as_ref())?;
                let cfb = fig5_feedback_from_x(&smfd, &x)?;
                let controller = TwoDofController::new(&plant, cfb.clone(), RatMat::identity(plant.cols()))?;
                let config = ClosedLoopConfig::FeedbackDirectR { cfb };
                let report = closed_loop(&plant, &config)?;
                line!(self, "design: model matching ({})", config.name());
                line!(self, "  X' = {}", render::ratmat(&x));
                self.controller_lines(&config);
                line!(self, "  achieved y/r = {}", render::ratmat(&report.t_yr));
                let cert = certify(&report, &t);
                line!(self, "certificates:");
                render::certificates(&mut self.report, &cert.checks);
                line!(self, "internal stability:");
                render::internal_stability(&mut self.report, controller.certificate());
                Ok(if cert.all_hold() { 0 } else { 2 })
            }
            other => Err(CliError::Input(format!("unknown configuration '{other}'"))),
        }
    }

    fn decouple(&mut self) -> Result<i32, CliError> {
        let plant = self.plant()?;
        self.header(&plant);
        let smfd = self.smfd(&plant)?;
        let targets = self.file.design_list("targets")?;
        let r = diagonal_decoupling(&smfd, &targets)?;
        self.finish_design("diagonal decoupling", "X'", &r)
    }

    fn invert(&mut self) -> Result<i32, CliError> {
        let plant = self.plant()?;
        self.header(&plant);
        let smfd = self.smfd(&plant)?;
        let r = inverse_problem(&smfd)?;
        self.finish_design("inverse", "X'", &r)
    }

    fn static_decouple(&mut self) -> Result<i32, CliError> {
        let plant = self.plant()?;
        self.header(&plant);
        let smfd = self.smfd(&plant)?;
        let lambda = self.file.design_constant("lambda")?;
        let r = static_decoupling(&smfd, &lambda)?;
        self.finish_design("static decoupling", "X'", &r)?;
        let gain = dc_gain(&r.achieved_t)?;
        line!(self, "closed-loop DC gain = {}", render::qmat(&gain));
        line!(self, "  [{}] DC gain equals Lambda", if gain == lambda { "ok" } else { "FAIL" });
        Ok(0)
    }

    fn assign_denominator(&mut self) -> Result<i32, CliError> {
        let plant = self.plant()?;
        self.header(&plant);
        let mfd = right_coprime_mfd(&plant)?;
        let d_t = self.file.design_polymat("d_t")?;
        let r = match self.file.config_kind.as_deref().unwrap_or("unity") {
            "unity" => denominator_assignment_unity(&mfd, &d_t)?,
            "feedback-direct-r" => denominator_assignment_fig5(&mfd, &d_t)?,
            other => return Err(CliError::Input(format!("denominator assignment supports unity or feedback-direct-r, not '{other}'"))),
        };
        self.finish_design("denominator assignment", "X = D_T^-1", &r)
    }

    fn verify(&mut self) -> Result<i32, CliError> {
        let plant = self.plant()?;
        self.header(&plant);
        let config = self
            .file
            .closed_loop_config(self.sign)?
            .ok_or_else(|| CliError::Input("verify needs a [config] section with 'kind'".into()))?;
        line!(self, "configuration: {}", config.name());
        self.controller_lines(&config);
        let report = closed_loop(&plant, &config)?;
        line!(self, "closed loop");
        line!(self, "  y/r = {}", render::ratmat(&report.t_yr));
        line!(self, "  u/r = {}", render::ratmat(&report.t_ur));
        line!(self, "  y/r: {}", render::verdict(&report.t_yr.stability()));
        line!(self, "internal stability:");
        render::internal_stability(&mut self.report, &report.internal);
        let mut ok = report.internal.stabilizing() && report.block_checks.iter().all(|c| c.holds);
        if !report.block_checks.is_empty() {
            line!(self, "blocks:");
            render::certificates(&mut self.report, &report.block_checks);
        }
        if let Some(t) = self.file.design_matrix("t") {
            let cert = certify(&report, t);
            line!(self, "certification against T = {}", render::ratmat(t));
            render::certificates(&mut self.report, &cert.checks);
            ok &= cert.all_hold();
        }
        Ok(if ok { 0 } else { 2 })
    }

    fn simulate(&mut self) -> Result<i32, CliError> {
        let plant = self.plant()?;
        let t = match (self.file.design_matrix("t"), self.file.closed_loop_config(self.sign)?) {
            (Some(t), _) => t.clone(),
            (None, Some(config)) => closed_loop(&plant, &config)?.t_yr,
            (None, None) => plant,
        };
        let horizon = self.horizon.unwrap_or_else(|| 10.0 * dominant_time_constant(&t).unwrap_or(1.0));
        let traces = simulate_step(&t, horizon, self.dt)?;
        match self.out.clone() {
            Some(path) => {
                let paths = crate::csv::write_traces(&path, &traces)?;
                line!(self, "simulated T = {}", render::ratmat(&t));
                line!(self, "horizon {} s, step {} s", horizon, self.dt);
                if let Ok(g) = dc_gain(&t) {
                    line!(self, "DC gain = {}", render::qmat(&g));
                }
                for (trace, path) in traces.iter().zip(&paths) {
                    let finals: Vec<String> = trace.final_values().iter().map(|v| crate::csv::format_sig(*v)).collect();
                    line!(self, "{}: final values [{}] -> {}", trace.input, finals.join(", "), path.display());
                }
            }
            None => {
                for trace in &traces {
                    if traces.len() > 1 {
                        line!(self, "# {}", trace.input);
                    }
                    let mut buf = Vec::new();
                    crate::csv::write_trace(&mut buf, trace)?;
                    self.report.push_str(&String::from_utf8_lossy(&buf));
                }
            }
        }
        Ok(0)
    }
}
