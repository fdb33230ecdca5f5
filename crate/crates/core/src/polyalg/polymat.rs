use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{Poly, QMat, RatFn, RatMat, Rational};
use crate::error::{Error, Result};

/// Matrix of polynomials, row-major, with fixed positive dimensions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMat {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "PolyMat::new",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        Ok(PolyMat { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        assert!(rows > 0 && cols > 0, "empty PolyMat");
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        PolyMat { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Poly::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Poly::one() } else { Poly::zero() })
    }

    pub fn diag(d: &[Poly]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { Poly::zero() })
    }

    /// 1x1 matrix.
    pub fn scalar(p: Poly) -> Self {
        PolyMat { rows: 1, cols: 1, entries: alloc::vec![p] }
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

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn scale(&self, c: &Poly) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    fn check_same(&self, rhs: &PolyMat, op: &'static str) -> Result<()> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch { op, left: self.shape(), right: rhs.shape() });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &PolyMat) -> Result<PolyMat> {
        self.check_same(rhs, "PolyMat::add")?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j)))
    }

    pub fn sub(&self, rhs: &PolyMat) -> Result<PolyMat> {
        self.check_same(rhs, "PolyMat::sub")?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j)))
    }

    pub fn mul(&self, rhs: &PolyMat) -> Result<PolyMat> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "PolyMat::mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(Poly::zero(), |acc, k| &acc + &(self.get(i, k) * rhs.get(k, j)))
        }))
    }

    /// `[self; below]`
    pub fn vstack(&self, below: &PolyMat) -> Result<PolyMat> {
        if self.cols != below.cols {
            return Err(Error::DimensionMismatch {
                op: "PolyMat::vstack",
                left: self.shape(),
                right: below.shape(),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(below.entries.iter().cloned());
        Ok(PolyMat { rows: self.rows + below.rows, cols: self.cols, entries })
    }

    /// `[self, right]`
    pub fn hstack(&self, right: &PolyMat) -> Result<PolyMat> {
        Ok(self.transpose().vstack(&right.transpose())?.transpose())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMat {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn rows_range(&self, start: usize, end: usize) -> PolyMat {
        let rows: Vec<usize> = (start..end).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(&rows, &cols)
    }

    pub fn eval(&self, x: &Rational) -> QMat {
        QMat::new(self.rows, self.cols, self.entries.iter().map(|p| p.eval(x)).collect())
            .expect("shape")
    }

    pub fn to_ratmat(&self) -> RatMat {
        RatMat::from_fn(self.rows, self.cols, |i, j| RatFn::from_poly(self.get(i, j).clone()))
    }

    /// Highest degree of any entry (`None` for the zero matrix).
    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(Poly::degree).max()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m: Vec<Vec<Poly>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                let Some(p) = ((k + 1)..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(Poly::zero());
                };
                m.swap(k, p);
                negate = !negate;
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Row (upper) Hermite form: returns `(h, u)` with `u * self = h`, `u`
    /// unimodular, `h` in echelon form with monic pivots and every entry above a
    /// pivot of lower degree than the pivot.
    pub fn hermite(&self) -> (PolyMat, PolyMat) {
        let (r, c) = self.shape();
        let mut h: Vec<Vec<Poly>> =
            (0..r).map(|i| (0..c).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut u: Vec<Vec<Poly>> = (0..r)
            .map(|i| (0..r).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect())
            .collect();

        // row_i -= q * row_p, on both h and u
        fn axpy(m: &mut [Vec<Poly>], i: usize, p: usize, q: &Poly) {
            let src = m[p].clone();
            for (dst, s) in m[i].iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *dst = &*dst - &(q * s);
                }
            }
        }

        let mut pr = 0;
        for col in 0..c {
            if pr == r {
                break;
            }
            loop {
                // lowest-degree nonzero entry at or below the pivot row
                let cand = (pr..r)
                    .filter(|&i| !h[i][col].is_zero())
                    .min_by_key(|&i| (h[i][col].degree(), i));
                let Some(best) = cand else { break };
                h.swap(pr, best);
                u.swap(pr, best);
                let mut done = true;
                for i in (pr + 1)..r {
                    if h[i][col].is_zero() {
                        continue;
                    }
                    let (qt, rem) = h[i][col].divmod(&h[pr][col]).expect("pivot nonzero");
                    axpy(&mut h, i, pr, &qt);
                    axpy(&mut u, i, pr, &qt);
                    if !rem.is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h[pr][col].is_zero() {
                continue;
            }
            let inv = h[pr][col].leading().expect("nonzero").recip();
            if !inv.is_one() {
                for e in h[pr].iter_mut().chain(u[pr].iter_mut()) {
                    *e = e.scale(&inv);
                }
            }
            for i in 0..pr {
                if h[i][col].is_zero() {
                    continue;
                }
                let (qt, _) = h[i][col].divmod(&h[pr][col]).expect("pivot nonzero");
                if !qt.is_zero() {
                    axpy(&mut h, i, pr, &qt);
                    axpy(&mut u, i, pr, &qt);
                }
            }
            pr += 1;
        }
        let flat = |m: Vec<Vec<Poly>>, rows, cols| PolyMat {
            rows,
            cols,
            entries: m.into_iter().flatten().collect(),
        };
        (flat(h, r, c), flat(u, r, r))
    }

    /// Square with a nonzero constant determinant.
    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().map(|d| d.degree() == Some(0)).unwrap_or(false)
    }

    /// Degree of each column; `None` for a zero column.
    pub fn column_degrees(&self) -> Vec<Option<usize>> {
        (0..self.cols)
            .map(|j| (0..self.rows).filter_map(|i| self.get(i, j).degree()).max())
            .collect()
    }

    pub fn row_degrees(&self) -> Vec<Option<usize>> {
        self.transpose().column_degrees()
    }

    /// Coefficient matrix of the highest column degrees. Zero columns give zero.
    pub fn column_leading_matrix(&self) -> QMat {
        let degs = self.column_degrees();
        let mut m = QMat::zeros(self.rows, self.cols);
        for (j, d) in degs.iter().enumerate() {
            if let Some(d) = d {
                for i in 0..self.rows {
                    m.set(i, j, self.get(i, j).coeff(*d));
                }
            }
        }
        m
    }

    pub fn is_column_reduced(&self) -> bool {
        self.is_square() && self.column_leading_matrix().det().map_or(false, |d| !d.is_zero())
    }

    pub fn is_row_reduced(&self) -> bool {
        self.transpose().is_column_reduced()
    }

    /// Column reduction by unimodular column operations: returns `(self * v, v)`
    /// with `self * v` column reduced. Requires a nonsingular square matrix.
    pub fn column_reduce(&self) -> Result<(PolyMat, PolyMat)> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.det()?.is_zero() {
            return Err(Error::Singular);
        }
        let n = self.cols;
        let mut d = self.clone();
        let mut v = Self::identity(n);
        while !d.is_column_reduced() {
            let degs: Vec<usize> =
                d.column_degrees().into_iter().map(|x| x.expect("nonsingular")).collect();
            let hc = d.column_leading_matrix();
            let a = hc.null_space().into_iter().next().expect("singular leading matrix");
            let k = (0..n)
                .filter(|&j| !a[j].is_zero())
                .max_by_key(|&j| (degs[j], core::cmp::Reverse(j)))
                .expect("nonzero null vector");
            let ak_inv = a[k].recip();
            // col_k += sum_j (a_j / a_k) s^(deg_k - deg_j) col_j
            let mut op = Self::identity(n);
            for j in 0..n {
                if j != k && !a[j].is_zero() {
                    op.entries[j * n + k] = Poly::monomial(&a[j] * &ak_inv, degs[k] - degs[j]);
                }
            }
            d = d.mul(&op)?;
            v = v.mul(&op)?;
        }
        Ok((d, v))
    }

    /// Row reduction: returns `(w * self, w)`.
    pub fn row_reduce(&self) -> Result<(PolyMat, PolyMat)> {
        let (d, v) = self.transpose().column_reduce()?;
        Ok((d.transpose(), v.transpose()))
    }
}

impl fmt::Debug for PolyMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMat{}", self)
    }
}

impl fmt::Display for PolyMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
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
