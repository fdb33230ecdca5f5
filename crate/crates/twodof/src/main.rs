use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use twodof::{parse_constant, run, Command, FeedbackSign, RunOptions};

#[derive(Parser)]
#[command(name = "twodof", version, about = "Two-degrees-of-freedom controller synthesis for rational plants")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Problem file
    #[arg(global = true)]
    problem: Option<PathBuf>,
    /// Stable divisor s + shift used for the RH-inf factorization
    #[arg(long, global = true, value_parser = parse_shift)]
    shift: Option<twodof_core::Rational>,
    /// Feedback sign convention for feedback blocks
    #[arg(long, global = true, value_enum)]
    sign: Option<Sign>,
    /// Simulation horizon in seconds
    #[arg(long, global = true)]
    horizon: Option<f64>,
    /// Simulation step in seconds
    #[arg(long, global = true)]
    dt: Option<f64>,
    /// CSV output path for `simulate`
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Coprime factorizations, zeros and poles
    Factor,
    /// Bezout identities and sample Youla controllers
    Stabilize,
    /// Model matching for the target `t`
    Match,
    /// Diagonal decoupling with the diagonal `targets`
    Decouple,
    /// Exact inverse, T = I
    Invert,
    /// Constant precompensator giving DC gain `lambda`
    StaticDecouple,
    /// Closed-loop denominator `d_t`
    AssignDenominator,
    /// Closed-loop maps and internal stability of the [config] blocks
    Verify,
    /// Step response of `t`, the configured loop, or the plant
    Simulate,
}

#[derive(ValueEnum, Clone, Copy)]
enum Sign {
    Pos,
    Neg,
}

fn parse_shift(s: &str) -> Result<twodof_core::Rational, String> {
    parse_constant(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let Some(path) = cli.problem else {
        eprintln!("error: a problem file is required");
        return ExitCode::from(1);
    };
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(1);
        }
    };
    let command = match cli.command {
        Cmd::Factor => Command::Factor,
        Cmd::Stabilize => Command::Stabilize,
        Cmd::Match => Command::Match,
        Cmd::Decouple => Command::Decouple,
        Cmd::Invert => Command::Invert,
        Cmd::StaticDecouple => Command::StaticDecouple,
        Cmd::AssignDenominator => Command::AssignDenominator,
        Cmd::Verify => Command::Verify,
        Cmd::Simulate => Command::Simulate,
    };
    let opts = RunOptions {
        shift: cli.shift,
        sign: cli.sign.map(|s| match s {
            Sign::Pos => FeedbackSign::Positive,
            Sign::Neg => FeedbackSign::Negative,
        }),
        horizon: cli.horizon,
        dt: cli.dt,
        out: cli.out,
    };
    let outcome = run(command, &text, &opts);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
