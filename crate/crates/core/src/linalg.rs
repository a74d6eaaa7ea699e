//! Exact dense linear algebra over [`Scalar`].
//!
//! Rank and determinant go through fraction-free (Bareiss) elimination with
//! first-nonzero pivoting, which keeps intermediate entries small and makes
//! every pivot choice deterministic. Kernels and solving use plain
//! Gauss-Jordan reduction; everything is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense row-major matrix of exact scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Scalar::zero();
                for t in 0..self.cols {
                    acc = &acc + &(self.at(r, t) * rhs.at(t, c));
                }
                *out.at_mut(r, c) = acc;
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one());
        }
        let mut m = self.clone();
        let mut sign_flip = false;
        let mut prev = Scalar::one();
        for step in 0..n {
            let pivot_row = match (step..n).find(|&r| !m.at(r, step).is_zero()) {
                Some(r) => r,
                None => return Ok(Scalar::zero()),
            };
            if pivot_row != step {
                m.swap_rows(step, pivot_row);
                sign_flip = !sign_flip;
            }
            let pivot = m.at(step, step).clone();
            for i in step + 1..n {
                let lead = m.at(i, step).clone();
                for j in step + 1..n {
                    let num = &(&pivot * m.at(i, j)) - &(&lead * m.at(step, j));
                    *m.at_mut(i, j) = &num / &prev;
                }
                *m.at_mut(i, step) = Scalar::zero();
            }
            prev = pivot;
        }
        let det = m.at(n - 1, n - 1).clone();
        Ok(if sign_flip { -det } else { det })
    }

    /// Exact rank by fraction-free elimination with column skipping.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut prev = Scalar::one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let pivot_row = match (r..m.rows).find(|&i| !m.at(i, c).is_zero()) {
                Some(i) => i,
                None => continue,
            };
            m.swap_rows(r, pivot_row);
            let pivot = m.at(r, c).clone();
            for i in r + 1..m.rows {
                let lead = m.at(i, c).clone();
                for j in c + 1..m.cols {
                    let num = &(&pivot * m.at(i, j)) - &(&lead * m.at(r, j));
                    *m.at_mut(i, j) = &num / &prev;
                }
                *m.at_mut(i, c) = Scalar::zero();
            }
            prev = pivot;
            r += 1;
        }
        r
    }

    /// Reduced row echelon form; returns the pivot column of each nonzero row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let pivot_row = match (r..self.rows).find(|&i| !self.at(i, c).is_zero()) {
                Some(i) => i,
                None => continue,
            };
            self.swap_rows(r, pivot_row);
            let inv = self.at(r, c).inv();
            for j in c..self.cols {
                *self.at_mut(r, j) = self.at(r, j) * &inv;
            }
            for i in 0..self.rows {
                if i == r || self.at(i, c).is_zero() {
                    continue;
                }
                let factor = self.at(i, c).clone();
                for j in c..self.cols {
                    *self.at_mut(i, j) = self.at(i, j) - &(&factor * self.at(r, j));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of {x : self * x = 0} as matrix columns. The basis follows the
    /// standard free-column parametrization of the RREF, so it is uniquely
    /// determined by the fixed pivot order.
    pub fn right_kernel_basis(&self) -> Matrix {
        let mut rref = self.clone();
        let pivots = rref.rref();
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (kcol, &fc) in free.iter().enumerate() {
            *out.at_mut(fc, kcol) = Scalar::one();
            for (prow, &pc) in pivots.iter().take(rank).enumerate() {
                *out.at_mut(pc, kcol) = -rref.at(prow, fc);
            }
        }
        out
    }

    /// Some particular solution of self * x = b, or None if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!(
                "rhs length {} does not match {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c).clone();
            }
            *aug.at_mut(r, self.cols) = b[r].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None); // pivot in the rhs column
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(prow, self.cols).clone();
        }
        Ok(Some(x))
    }
}

/// Exact dot product.
pub fn dot(x: &[Scalar], y: &[Scalar]) -> Scalar {
    assert_eq!(x.len(), y.len(), "dot of mismatched lengths");
    let mut acc = Scalar::zero();
    for (a, b) in x.iter().zip(y) {
        acc = &acc + &(a * b);
    }
    acc
}

/// Scales a nonzero vector to its canonical primitive representative:
/// denominators cleared, content (gcd over all rational coefficients) divided
/// out, and the first nonzero coordinate given canonical sign (positive
/// rational part, or positive quadratic coefficient when the rational part
/// vanishes). Invariant under rescaling by any nonzero rational.
pub fn primitive_normalize(v: &[Scalar]) -> Result<Vec<Scalar>> {
    if v.iter().all(Scalar::is_zero) {
        return Err(Error::Degenerate("cannot normalize the zero vector".into()));
    }
    let mut denom_lcm = BigInt::one();
    for s in v {
        let (a, b) = s.parts();
        denom_lcm = denom_lcm.lcm(a.denom());
        denom_lcm = denom_lcm.lcm(b.denom());
    }
    let mut numer_gcd = BigInt::zero();
    let scale = BigRational::from_integer(denom_lcm);
    for s in v {
        let (a, b) = s.parts();
        for part in [a * &scale, b * &scale] {
            debug_assert!(part.denom().is_one());
            numer_gcd = numer_gcd.gcd(&part.numer().abs());
        }
    }
    let factor = Scalar::from_rational(scale / BigRational::from_integer(numer_gcd));
    let mut out: Vec<Scalar> = v.iter().map(|s| s * &factor).collect();
    let lead_sign = out
        .iter()
        .map(Scalar::canonical_sign)
        .find(|&s| s != 0)
        .expect("nonzero vector");
    if lead_sign < 0 {
        for s in &mut out {
            *s = -&*s;
        }
    }
    Ok(out)
}

/// Incrementally maintained row space in reduced echelon form. Used for exact
/// span-membership tests during lattice enumeration.
#[derive(Clone, Debug)]
pub struct RowSpace {
    dim: usize,
    // rows sorted by pivot column, each with leading 1 and cleared pivots
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(dim: usize) -> RowSpace {
        RowSpace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let factor = w[p].clone();
            for (wi, ri) in w.iter_mut().zip(row) {
                *wi = &*wi - &(&factor * ri);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds a vector to the span. Returns true when the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = self.reduce(v);
        let pivot = match w.iter().position(|s| !s.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let inv = w[pivot].inv();
        for s in &mut w {
            *s = &*s * &inv;
        }
        for (row, &p) in self.rows.iter_mut().zip(&self.pivots) {
            // keep earlier rows reduced against the new pivot
            let _ = p;
            if row[pivot].is_zero() {
                continue;
            }
            let factor = row[pivot].clone();
            for (ri, wi) in row.iter_mut().zip(&w) {
                *ri = &*ri - &(&factor * wi);
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, w);
        true
    }
}
