use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::polyalg::Poly;

/// Everything that can go wrong in the algebra, the factorizations and the
/// synthesis procedures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    DivisionByZero,
    /// gcd of two zero polynomials.
    ZeroGcd,
    ZeroPolynomial,
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    NotSquare { rows: usize, cols: usize },
    EmptyMatrix,
    Singular,
    Improper { what: String, relative_degree: Option<i64> },
    NotCoprime,
    NotColumnReduced,
    NonPolynomial,
    InvalidShift,
    IllPosed,
    /// The Youla parameter makes the controller denominator singular or
    /// its inverse improper.
    InadmissibleParameter,
    PoleAtOrigin,
    NotStable(String),
    InvalidInput(String),
    Obstructed(Obstruction),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by the zero polynomial"),
            Error::ZeroGcd => write!(f, "gcd of two zero polynomials is undefined"),
            Error::ZeroPolynomial => write!(f, "operation is undefined for the zero polynomial"),
            Error::DimensionMismatch { op, left, right } => write!(
                f,
                "dimension mismatch in {op}: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            Error::NotSquare { rows, cols } => write!(f, "expected a square matrix, got {rows}x{cols}"),
            Error::EmptyMatrix => write!(f, "matrices must have at least one row and one column"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::Improper { what, relative_degree } => match relative_degree {
                Some(r) => write!(f, "{what} is improper (relative degree {r})"),
                None => write!(f, "{what} is improper"),
            },
            Error::NotCoprime => write!(f, "factors are not coprime"),
            Error::NotColumnReduced => write!(f, "denominator matrix is not column reduced"),
            Error::NonPolynomial => write!(f, "matrix has non-polynomial entries"),
            Error::InvalidShift => write!(f, "shift must be a positive rational"),
            Error::IllPosed => write!(f, "feedback loop is ill-posed"),
            Error::InadmissibleParameter => {
                write!(f, "parameter makes the controller denominator singular or non-proper")
            }
            Error::PoleAtOrigin => write!(f, "transfer matrix has a pole at the origin"),
            Error::NotStable(what) => write!(f, "{what} is not stable"),
            Error::InvalidInput(msg) => write!(f, "{msg}"),
            Error::Obstructed(o) => write!(f, "{o}"),
        }
    }
}

impl From<Obstruction> for Error {
    fn from(o: Obstruction) -> Self {
        Error::Obstructed(o)
    }
}

/// Reason a design target cannot be attained under internal stability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// Target is not proper and stable.
    TargetNotStable { offending: Vec<Poly> },
    TargetImproper,
    /// Plant unstable zeros that the target does not carry.
    MissingUnstableZeros { zeros: Vec<Poly> },
    /// The parameter `X` would need unstable poles that are not plant zeros.
    UnstableParameter { offending: Vec<Poly> },
    RelativeDegree { what: String, relative_degree: Option<i64> },
    /// `T` is not in the range of `N`.
    Rank,
    /// `T` and `M` are individually reachable but not by the same `X`.
    InconsistentPair,
    ZeroAtOrigin,
    /// A stability condition specific to a restricted configuration failed.
    Condition { condition: String, offending: Vec<Poly> },
}

fn write_factors(f: &mut fmt::Formatter<'_>, factors: &[Poly]) -> fmt::Result {
    for (i, p) in factors.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{}", p)?;
    }
    Ok(())
}

impl core::error::Error for Error {}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::TargetNotStable { offending } => {
                write!(f, "target is not stable (factors: ")?;
                write_factors(f, offending)?;
                write!(f, ")")
            }
            Obstruction::TargetImproper => write!(f, "target is not proper"),
            Obstruction::MissingUnstableZeros { zeros } => {
                for (i, z) in zeros.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    match crate::polyalg::poly::linear_root(z) {
                        Some(r) => write!(f, "missing unstable zero at {}", crate::polyalg::fmt_signed(&r))?,
                        None => write!(f, "missing unstable zeros of {}", z)?,
                    }
                }
                Ok(())
            }
            Obstruction::UnstableParameter { offending } => {
                write!(f, "parameter X is unstable (factors: ")?;
                write_factors(f, offending)?;
                write!(f, ")")
            }
            Obstruction::RelativeDegree { what, relative_degree } => match relative_degree {
                Some(r) => write!(f, "relative-degree violation: {what} has relative degree {r}"),
                None => write!(f, "relative-degree violation: {what} is improper"),
            },
            Obstruction::Rank => write!(f, "rank violation: T is not in the range of N"),
            Obstruction::InconsistentPair => write!(f, "inconsistent (T, M) pair: no common X"),
            Obstruction::ZeroAtOrigin => write!(f, "plant has a zero at the origin (det N'(0) = 0)"),
            Obstruction::Condition { condition, offending } => {
                write!(f, "{condition} fails")?;
                if !offending.is_empty() {
                    write!(f, " (unstable factors: ")?;
                    write_factors(f, offending)?;
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
