//! File formats, report rendering and the command runner behind the
//! `twodof` binary.

pub mod commands;
pub mod csv;
pub mod expr;
pub mod problem;
pub mod render;

use thiserror::Error;

pub use commands::{run, Command, Outcome, RunOptions};
pub use expr::{parse_constant, parse_polynomial, parse_rational, ParseError};
pub use problem::{parse_problem, FeedbackSign, ProblemError, ProblemFile};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("{0}")]
    Core(#[from] twodof_core::Error),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for design obstructions, 1 for malformed input or IO failures.
    pub fn exit_code(&self) -> i32 {
        use twodof_core::Error as E;
        match self {
            CliError::Core(
                E::Obstructed(_)
                | E::NotStable(_)
                | E::Improper { .. }
                | E::IllPosed
                | E::InadmissibleParameter
                | E::PoleAtOrigin
                | E::NotCoprime
                | E::Singular,
            ) => 2,
            _ => 1,
        }
    }
}
