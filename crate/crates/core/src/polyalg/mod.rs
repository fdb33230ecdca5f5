//! Exact univariate polynomials, rational functions and matrices of both,
//! all over arbitrary-precision rationals in the Laplace variable `s`.

pub mod linsolve;
pub mod poly;
pub mod polymat;
pub mod ratfn;
pub mod ratmat;

use alloc::format;
use alloc::string::String;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub use linsolve::QMat;
pub use poly::Poly;
pub use polymat::PolyMat;
pub use ratfn::RatFn;
pub use ratmat::RatMat;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`. Panics if `den == 0`.
pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Lossy conversion used for simulation and root display only.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: go through the ratio of leading digits.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Best rational approximation of a finite float (exact binary expansion).
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Formats a rational with an explicit sign, e.g. `+1`, `-3/2`, `0`.
pub fn fmt_signed(r: &Rational) -> String {
    if r.is_zero() {
        String::from("0")
    } else if r.is_positive() {
        format!("+{}", r)
    } else {
        format!("{}", r)
    }
}
