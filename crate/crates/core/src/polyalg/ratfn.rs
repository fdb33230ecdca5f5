use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Reduced rational function `num / den`.
///
/// Canonical form: `gcd(num, den) = 1`, `den` monic, and the zero function is
/// `0 / 1`. Structural equality is therefore mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = Poly::gcd(&num, &den)?;
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let lc = den.leading().expect("nonzero").recip();
        Ok(RatFn { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn zero() -> Self {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFn { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn s() -> Self {
        Self::from_poly(Poly::s())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// `deg den - deg num`; `None` stands for `+inf` (the zero function).
    pub fn relative_degree(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        Some(self.den.degree().expect("den nonzero") as i64 - dn)
    }

    pub fn is_proper(&self) -> bool {
        self.relative_degree().map_or(true, |r| r >= 0)
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.relative_degree().map_or(true, |r| r > 0)
    }

    /// Limit as `s -> inf` for proper functions.
    pub fn value_at_infinity(&self) -> Option<Rational> {
        match self.relative_degree() {
            None => Some(Rational::zero()),
            Some(r) if r > 0 => Some(Rational::zero()),
            Some(0) => Some(self.num.leading().expect("nonzero").clone()),
            Some(_) => None,
        }
    }

    /// `None` flags a pole at `x`.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFn) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, k: usize) -> Self {
        RatFn { num: self.num.pow(k), den: self.den.pow(k) }
    }

    /// Substitutes `s -> s + a`.
    pub fn shift_arg(&self, a: &Rational) -> Self {
        Self::new(self.num.shift_arg(a), self.den.shift_arg(a)).expect("den nonzero")
    }
}

impl Default for RatFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({})", self)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.is_constant() {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.den == rhs.den {
            return RatFn::new(&self.num + &rhs.num, self.den.clone()).expect("den nonzero");
        }
        let g = Poly::gcd(&self.den, &rhs.den).expect("dens nonzero");
        let a = self.den.exact_div(&g).expect("gcd divides");
        let b = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        if num.is_zero() {
            return RatFn::zero();
        }
        // With reduced operands the sum can only share factors with `g`.
        let h = Poly::gcd(&num, &g).expect("num nonzero");
        let den = &a * &rhs.den;
        if h.is_one() {
            return RatFn { num, den };
        }
        RatFn { num: num.exact_div(&h).expect("gcd divides"), den: den.exact_div(&h).expect("gcd divides") }
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        // Cross-cancel first to keep the operands small.
        let g1 = Poly::gcd(&self.num, &rhs.den).expect("den nonzero");
        let g2 = Poly::gcd(&rhs.num, &self.den).expect("den nonzero");
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        // Reduced operands after cross-cancellation give a reduced product.
        RatFn { num: &n1 * &n2, den: &d1 * &d2 }
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFn {
            type Output = RatFn;
            fn $m(self, rhs: RatFn) -> RatFn {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{q, qf};

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    fn plant() -> RatFn {
        RatFn::new(&p(&[-1, 1]) * &p(&[2, 1]), p(&[4, -4, 1])).unwrap()
    }

    #[test]
    fn canonical_form() {
        let r = RatFn::new(p(&[2, 2]), p(&[4, 6, 2])).unwrap();
        assert_eq!(r.num(), &p(&[1]));
        assert_eq!(r.den(), &p(&[2, 1]));
        assert_eq!(RatFn::new(Poly::zero(), p(&[3, 1])).unwrap(), RatFn::zero());
        assert_eq!(RatFn::new(p(&[1]), Poly::zero()), Err(Error::DivisionByZero));
        let again = RatFn::new(r.num().clone(), r.den().clone()).unwrap();
        assert_eq!(again, r);
    }

    #[test]
    fn relative_degree_examples() {
        assert_eq!(plant().relative_degree(), Some(0));
        assert_eq!(RatFn::new(p(&[1]), p(&[1, 2, 1])).unwrap().relative_degree(), Some(2));
        let imp = RatFn::new(p(&[1, 0, 1]), p(&[1, 1])).unwrap();
        assert_eq!(imp.relative_degree(), Some(-1));
        assert!(!imp.is_proper());
        assert_eq!(RatFn::zero().relative_degree(), None);
        assert!(RatFn::zero().is_proper());
    }

    #[test]
    fn eval_examples() {
        let r = RatFn::new(p(&[-1, 1]), p(&[2, 1])).unwrap();
        assert_eq!(r.eval(&q(0)), Some(qf(-1, 2)));
        assert_eq!(RatFn::new(p(&[1]), p(&[-2, 1])).unwrap().eval(&q(2)), None);
        assert_eq!(plant().eval(&q(1)), Some(q(0)));
    }

    #[test]
    fn arithmetic_reduces() {
        // N' X' = ((s-1)/(s+2)) ((s+2)/(s+1)^2) = (s-1)/(s+1)^2
        let n = RatFn::new(p(&[-1, 1]), p(&[2, 1])).unwrap();
        let x = RatFn::new(p(&[2, 1]), p(&[1, 2, 1])).unwrap();
        assert_eq!(&n * &x, RatFn::new(p(&[-1, 1]), p(&[1, 2, 1])).unwrap());
        let sum = &n + &(-&n);
        assert!(sum.is_zero());
        assert_eq!(&x * &x.inv().unwrap(), RatFn::one());
    }
}
