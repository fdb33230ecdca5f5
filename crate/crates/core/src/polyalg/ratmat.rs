use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use super::{Poly, PolyMat, QMat, RatFn, Rational};
use crate::error::{Error, Result};

/// Matrix of reduced rational functions. Houses plants, targets, parameters
/// and controllers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    entries: Vec<RatFn>,
}

/// Result of evaluating a rational matrix at a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evaluation {
    Value(QMat),
    /// Entry `(row, col)` has a pole at the evaluation point.
    Pole { row: usize, col: usize },
}

impl Evaluation {
    pub fn value(self) -> Option<QMat> {
        match self {
            Evaluation::Value(m) => Some(m),
            Evaluation::Pole { .. } => None,
        }
    }
}

impl RatMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<RatFn>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "RatMat::new",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        Ok(RatMat { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFn) -> Self {
        assert!(rows > 0 && cols > 0, "empty RatMat");
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        RatMat { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| RatFn::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { RatFn::one() } else { RatFn::zero() })
    }

    pub fn diag(d: &[RatFn]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { RatFn::zero() })
    }

    pub fn scalar(r: RatFn) -> Self {
        RatMat { rows: 1, cols: 1, entries: alloc::vec![r] }
    }

    pub fn from_qmat(m: &QMat) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| RatFn::constant(m.get(i, j).clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFn {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[RatFn] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RatFn::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn scale(&self, c: &RatFn) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    fn check_same(&self, rhs: &RatMat, op: &'static str) -> Result<()> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch { op, left: self.shape(), right: rhs.shape() });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &RatMat) -> Result<RatMat> {
        self.check_same(rhs, "RatMat::add")?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j)))
    }

    pub fn sub(&self, rhs: &RatMat) -> Result<RatMat> {
        self.check_same(rhs, "RatMat::sub")?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j)))
    }

    pub fn mul(&self, rhs: &RatMat) -> Result<RatMat> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "RatMat::mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(RatFn::zero(), |acc, k| &acc + &(self.get(i, k) * rhs.get(k, j)))
        }))
    }

    /// Product of a chain of matrices, left to right.
    pub fn product(factors: &[&RatMat]) -> Result<RatMat> {
        let (first, rest) = factors.split_first().ok_or(Error::EmptyMatrix)?;
        rest.iter().try_fold((*first).clone(), |acc, m| acc.mul(m))
    }

    /// `I - self`
    pub fn one_minus(&self) -> Result<RatMat> {
        Self::identity(self.rows).sub(self)
    }

    /// `I + self`
    pub fn one_plus(&self) -> Result<RatMat> {
        Self::identity(self.rows).add(self)
    }

    pub fn vstack(&self, below: &RatMat) -> Result<RatMat> {
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch {
                op: "RatMat::vstack",
                left: self.shape(),
                right: below.shape(),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(below.entries.iter().cloned());
        Ok(RatMat { rows: self.rows + below.rows, cols: self.cols, entries })
    }

    pub fn hstack(&self, right: &RatMat) -> Result<RatMat> {
        Ok(self.transpose().vstack(&right.transpose())?.transpose())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RatMat {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn columns(&self, start: usize, end: usize) -> RatMat {
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (start..end).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn rows_range(&self, start: usize, end: usize) -> RatMat {
        let rows: Vec<usize> = (start..end).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(&rows, &cols)
    }

    /// Gauss-Jordan inverse over the field of rational functions.
    pub fn inv(&self) -> Result<RatMat> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a: Vec<Vec<RatFn>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut b: Vec<Vec<RatFn>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { RatFn::one() } else { RatFn::zero() }).collect())
            .collect();
        for c in 0..n {
            // prefer the simplest nonzero pivot to limit expression growth
            let p = (c..n)
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| (a[i][c].num().degree(), a[i][c].den().degree()))
                .ok_or(Error::Singular)?;
            a.swap(c, p);
            b.swap(c, p);
            let inv = a[c][c].inv()?;
            for j in 0..n {
                a[c][j] = &a[c][j] * &inv;
                b[c][j] = &b[c][j] * &inv;
            }
            for i in 0..n {
                if i == c || a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..n {
                    if !a[c][j].is_zero() {
                        a[i][j] = &a[i][j] - &(&f * &a[c][j]);
                    }
                    if !b[c][j].is_zero() {
                        b[i][j] = &b[i][j] - &(&f * &b[c][j]);
                    }
                }
            }
        }
        Ok(RatMat { rows: n, cols: n, entries: b.into_iter().flatten().collect() })
    }

    pub fn det(&self) -> Result<RatFn> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut a: Vec<Vec<RatFn>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut det = RatFn::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(RatFn::zero());
            };
            if p != c {
                a.swap(c, p);
                det = -det;
            }
            det = &det * &a[c][c];
            let inv = a[c][c].inv()?;
            for i in (c + 1)..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = &a[i][c] * &inv;
                for j in c..n {
                    a[i][j] = &a[i][j] - &(&f * &a[c][j]);
                }
            }
        }
        Ok(det)
    }

    /// Entrywise evaluation; a vanishing denominator is reported, not an error.
    pub fn eval(&self, x: &Rational) -> Evaluation {
        let mut data = Vec::with_capacity(self.entries.len());
        for (k, e) in self.entries.iter().enumerate() {
            match e.eval(x) {
                Some(v) => data.push(v),
                None => return Evaluation::Pole { row: k / self.cols, col: k % self.cols },
            }
        }
        Evaluation::Value(QMat::new(self.rows, self.cols, data).expect("shape"))
    }

    pub fn is_proper(&self) -> bool {
        self.entries.iter().all(RatFn::is_proper)
    }

    pub fn is_strictly_proper(&self) -> bool {
        self.entries.iter().all(RatFn::is_strictly_proper)
    }

    /// Smallest relative degree over all entries (`None` if all zero).
    pub fn min_relative_degree(&self) -> Option<i64> {
        self.entries.iter().filter_map(RatFn::relative_degree).min()
    }

    /// Limit at `s -> inf` of a proper matrix.
    pub fn value_at_infinity(&self) -> Option<QMat> {
        let data: Option<Vec<Rational>> = self.entries.iter().map(RatFn::value_at_infinity).collect();
        data.map(|d| QMat::new(self.rows, self.cols, d).expect("shape"))
    }

    pub fn as_constant(&self) -> Option<QMat> {
        let data: Option<Vec<Rational>> = self.entries.iter().map(RatFn::as_constant).collect();
        data.map(|d| QMat::new(self.rows, self.cols, d).expect("shape"))
    }

    pub fn is_polynomial(&self) -> bool {
        self.entries.iter().all(RatFn::is_polynomial)
    }

    pub fn to_polymat(&self) -> Result<PolyMat> {
        if !self.is_polynomial() {
            return Err(Error::NonPolynomial);
        }
        PolyMat::new(self.rows, self.cols, self.entries.iter().map(|e| e.num().clone()).collect())
    }

    /// Monic least common denominator of column `j`.
    pub fn column_lcd(&self, j: usize) -> Poly {
        (0..self.rows).fold(Poly::one(), |acc, i| {
            Poly::lcm(&acc, self.get(i, j).den()).expect("nonzero")
        })
    }

    /// Monic least common denominator of all entries.
    pub fn lcd(&self) -> Poly {
        self.entries
            .iter()
            .fold(Poly::one(), |acc, e| Poly::lcm(&acc, e.den()).expect("nonzero"))
    }

    pub fn is_all_zero_at(&self, x: &Rational) -> bool {
        match self.eval(x) {
            Evaluation::Value(m) => m.data().iter().all(Zero::is_zero),
            Evaluation::Pole { .. } => false,
        }
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMat{}", self)
    }
}

impl fmt::Display for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 1 && self.cols == 1 {
            return write!(f, "{}", self.entries[0]);
        }
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
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

    #[test]
    fn inverse_of_diagonal_plant() {
        let pl = RatMat::diag(&[rf(&[1], &[1, 1]), rf(&[1], &[2, 1])]);
        assert!(pl.mul(&pl.inv().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn neumann_series_terminates() {
        let a = RatMat::new(
            2,
            2,
            alloc::vec![RatFn::zero(), RatFn::zero(), rf(&[3, 1], &[1, 1]), RatFn::zero()],
        )
        .unwrap();
        let inv = a.one_minus().unwrap().inv().unwrap();
        assert_eq!(inv, a.one_plus().unwrap());
    }

    #[test]
    fn eval_and_pole_flag() {
        let m = RatMat::new(1, 2, alloc::vec![rf(&[-1, 1], &[2, 1]), rf(&[1], &[-2, 1])]).unwrap();
        assert_eq!(m.eval(&q(2)), Evaluation::Pole { row: 0, col: 1 });
        let v = m.eval(&q(0)).value().unwrap();
        assert_eq!(v.get(0, 0), &qf(-1, 2));
        assert_eq!(v.get(0, 1), &qf(-1, 2));
    }

    #[test]
    fn singular_inverse_errors() {
        let m = RatMat::from_fn(2, 2, |_, _| rf(&[1], &[1, 1]));
        assert_eq!(m.inv(), Err(Error::Singular));
        assert!(RatMat::zeros(1, 2).inv().is_err());
    }
}
