use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::{to_f64, Rational};
use crate::error::{Error, Result};

/// Univariate polynomial in `s` with exact rational coefficients.
///
/// Coefficients are stored in ascending degree and are always trimmed, so the
/// zero polynomial is the empty coefficient list and every other polynomial
/// has a nonzero leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `s`.
    pub fn s() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `s - root`
    pub fn linear(root: &Rational) -> Self {
        Self::from_coeffs(vec![-root.clone(), Rational::one()])
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Ascending integer coefficients, mostly for tests and literals.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| super::q(c)).collect())
    }

    /// Monic polynomial with the given roots (repeated roots allowed).
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| &acc * &Self::linear(r))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for nonzero constants and for zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Coefficient of `s^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + to_f64(c))
    }

    /// Coefficients as floats, ascending.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * super::q(k as i64))
                .collect(),
        )
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `p(-s)`
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Substitutes `s -> s + a`.
    pub fn shift_arg(&self, a: &Rational) -> Self {
        let lin = Self::from_coeffs(vec![a.clone(), Rational::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &lin) + &Self::constant(c.clone()))
    }

    /// Euclidean division: `self = b * quotient + remainder`, `deg remainder < deg b`.
    pub fn divmod(&self, b: &Poly) -> Result<(Poly, Poly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = b.coeffs[db].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + db] * &lc_inv;
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * bj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divmod(b)?.1)
    }

    /// Quotient if `b` divides `self` exactly.
    pub fn exact_div(&self, b: &Poly) -> Option<Poly> {
        match self.divmod(b) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.exact_div(self).is_some()
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut x, mut y) = (a.monic(), b.monic());
        while !y.is_zero() {
            let r = x.rem(&y)?;
            x = y;
            y = r.monic();
        }
        Ok(x.monic())
    }

    /// Monic least common multiple; `lcm(0, b)` is zero.
    pub fn lcm(a: &Poly, b: &Poly) -> Result<Poly> {
        if a.is_zero() || b.is_zero() {
            return Ok(Poly::zero());
        }
        let g = Self::gcd(a, b)?;
        Ok((a * &b.exact_div(&g).expect("gcd divides")).monic())
    }

    /// Yun's square-free decomposition of the monic part: `p = c * prod f_i^i`.
    /// Returns `(f_i, i)` with each `f_i` monic, square-free and nonconstant.
    pub fn square_free(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let c0 = Self::gcd(&f, &f.derivative()).expect("f nonzero");
        let mut w = f.exact_div(&c0).expect("gcd divides");
        let mut c = c0;
        let mut i = 1;
        while !w.is_constant() {
            let y = Self::gcd(&w, &c).expect("w nonzero");
            let z = w.exact_div(&y).expect("gcd divides");
            if !z.is_constant() {
                out.push((z, i));
            }
            i += 1;
            c = c.exact_div(&y).expect("gcd divides");
            w = y;
        }
        out
    }

    /// Distinct rational roots with their multiplicities, ascending.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        let mut out = Vec::new();
        for (f, mult) in self.square_free() {
            for r in crate::roots::rational_roots_squarefree(&f) {
                out.push((r, mult));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Splits into `(content, [(factor, multiplicity)])` where factors are the
    /// linear factors of rational roots plus the square-free residues without
    /// rational roots. The product reconstructs `self`.
    pub fn rational_factorization(&self) -> (Rational, Vec<(Poly, usize)>) {
        let content = self.leading().cloned().unwrap_or_else(Rational::zero);
        let mut factors: Vec<(Poly, usize)> = Vec::new();
        for (f, mult) in self.square_free() {
            let roots = crate::roots::rational_roots_squarefree(&f);
            let mut rest = f.clone();
            for r in &roots {
                let lin = Poly::linear(r);
                rest = rest.exact_div(&lin).expect("root divides");
                factors.push((lin, mult));
            }
            if !rest.is_constant() {
                factors.push((rest, mult));
            }
        }
        factors.sort_by(|a, b| (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())));
        (content, factors)
    }

    /// Renders `c*(s - 1)^2*(s + 2)` style output; falls back to the expanded
    /// form when nothing factors.
    pub fn factored(&self) -> String {
        use alloc::format;
        if self.degree().unwrap_or(0) == 0 {
            return format!("{}", self);
        }
        let (content, factors) = self.rational_factorization();
        let mut parts: Vec<String> = Vec::new();
        if !content.is_one() {
            if (-content.clone()).is_one() {
                parts.push(String::from("-1"));
            } else {
                parts.push(format!("{}", content));
            }
        }
        for (f, m) in &factors {
            let base = format!("({})", f);
            if *m == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{}^{}", base, m));
            }
        }
        parts.join("*")
    }
}

/// Root of a degree-one polynomial.
pub fn linear_root(p: &Poly) -> Option<Rational> {
    if p.degree() == Some(1) {
        Some(-(&p.coeffs[0] / &p.coeffs[1]))
    } else {
        None
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", mag)?;
                    }
                    if k == 1 {
                        write!(f, "s")?;
                    } else {
                        write!(f, "s^{}", k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
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

    #[test]
    fn divmod_examples() {
        // (s^2 - 4s + 4) / (s - 2)
        let (qt, r) = p(&[4, -4, 1]).divmod(&p(&[-2, 1])).unwrap();
        assert_eq!(qt, p(&[-2, 1]));
        assert!(r.is_zero());
        let (qt, r) = p(&[1, 1]).divmod(&p(&[1])).unwrap();
        assert_eq!(qt, p(&[1, 1]));
        assert!(r.is_zero());
        // s^3 + 1 = s (s^2 + 1) + (1 - s)
        let (qt, r) = p(&[1, 0, 0, 1]).divmod(&p(&[1, 0, 1])).unwrap();
        assert_eq!(qt, p(&[0, 1]));
        assert_eq!(r, p(&[1, -1]));
        assert_eq!(p(&[1]).divmod(&Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(Poly::gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        let num = &p(&[-1, 1]) * &p(&[2, 1]);
        let den = p(&[-2, 1]).pow(2);
        assert_eq!(Poly::gcd(&num, &den).unwrap(), Poly::one());
        // root multisets {-3,-3,5} and {-3,-7} share exactly one -3
        let a = &p(&[3, 1]).pow(2) * &p(&[-5, 1]);
        let b = &p(&[3, 1]) * &p(&[7, 1]);
        assert_eq!(Poly::gcd(&a, &b).unwrap(), p(&[3, 1]));
        assert_eq!(Poly::gcd(&Poly::zero(), &Poly::zero()), Err(Error::ZeroGcd));
        assert_eq!(Poly::gcd(&Poly::zero(), &p(&[4, 2])).unwrap(), p(&[2, 1]));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_i64(&[0, 0]).degree(), None);
        assert_eq!(Poly::one().degree(), Some(0));
    }

    #[test]
    fn square_free_and_roots() {
        let f = &(&p(&[-1, 1]).pow(3) * &p(&[2, 1])) * &p(&[1, 0, 1]);
        let sf = f.square_free();
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[0], (&p(&[2, 1]) * &p(&[1, 0, 1]), 1));
        assert_eq!(sf[1], (p(&[-1, 1]), 3));
        let roots = f.rational_roots();
        assert_eq!(roots, vec![(q(-2), 1), (q(1), 3)]);
        let half = Poly::from_coeffs(vec![qf(-1, 2), q(1)]);
        assert_eq!((&half * &p(&[3, 1])).rational_roots(), vec![(q(-3), 1), (qf(1, 2), 1)]);
    }

    #[test]
    fn display_forms() {
        assert_eq!(format!("{}", p(&[4, -4, 1])), "s^2 - 4*s + 4");
        assert_eq!(format!("{}", Poly::from_coeffs(vec![qf(-1, 2), qf(-1, 4)])), "-1/4*s - 1/2");
        let f = &p(&[-1, 1]) * &p(&[2, 1]);
        assert_eq!(f.factored(), "(s - 1)*(s + 2)");
        assert_eq!(p(&[4, -4, 1]).factored(), "(s - 2)^2");
    }

    #[test]
    fn shift_and_reflect() {
        let f = p(&[-2, 1]);
        assert_eq!(f.shift_arg(&q(2)), p(&[0, 1]));
        assert_eq!(p(&[1, 2, 3]).reflect(), p(&[1, -2, 3]));
    }

    use alloc::format;
}
