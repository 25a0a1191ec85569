use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.name())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, f: impl Fn(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let t = f.mul(a, other.get(k, c));
                    let v = f.add(out.get(r, c), &t);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| f.mul(x, s)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sizes differ".into()));
        }
        let f = &self.field;
        Ok(Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        })
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &F::Elem, other: &Self, b: &F::Elem) -> Result<Self> {
        self.scale(a).add(&other.scale(b))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.field, rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }

    /// Exact rank: fraction-free elimination over the rationals, plain
    /// elimination over `F_p`.
    pub fn rank(&self) -> usize {
        self.field.rank_of(self.rows, self.cols, &self.data)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let t = f.mul(&factor, m.get(r, j));
                    let v = f.sub(m.get(i, j), &t);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right null space, returned as the columns of a
    /// `cols x nullity` matrix.
    pub fn kernel(&self) -> Self {
        let f = &self.field;
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, f.neg(rref.get(r, fc)));
            }
        }
        basis
    }

    /// Solves `self · x = b` for a square nonsingular matrix.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.is_square() || b.len() != self.rows {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let aug = Self::from_fn(f, n, n + 1, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else {
                b[r].clone()
            }
        });
        let (rref, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some((0..n).map(|r| rref.get(r, n).clone()).collect())
    }

    pub fn determinant(&self) -> Option<F::Elem> {
        if !self.is_square() {
            return None;
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Some(f.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("nonzero pivot");
            for r in c + 1..n {
                if f.is_zero(m.get(r, c)) {
                    continue;
                }
                let factor = f.mul(m.get(r, c), &inv);
                for j in c..n {
                    let t = f.mul(&factor, m.get(c, j));
                    let v = f.sub(m.get(r, j), &t);
                    m.set(r, j, v);
                }
            }
        }
        Some(det)
    }

    pub fn map_field<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> Option<G::Elem>) -> Option<Matrix<G>> {
        let data: Option<Vec<G::Elem>> = self.data.iter().map(f).collect();
        Some(Matrix {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: data?,
        })
    }
}

/// Rank of a matrix; see [`Matrix::rank`].
pub fn matrix_rank<F: Field>(m: &Matrix<F>) -> usize {
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rationals> {
        Matrix::from_rows(
            &Rationals,
            rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(&Rationals, 3).rank(), 3);
        assert_eq!(Matrix::zeros(&Rationals, 3, 3).rank(), 0);
        assert_eq!(qm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]).rank(), 2);
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(&f, vec![vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = qm(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).unwrap().is_zero());
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn solve_and_determinant() {
        let m = qm(&[&[2, 1], &[1, 3]]);
        assert_eq!(m.determinant(), Some(q(5)));
        let x = m.solve(&[q(3), q(4)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        assert!(qm(&[&[1, 2], &[2, 4]]).solve(&[q(1), q(1)]).is_none());
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![q(1)], vec![q(1), q(2)]];
        assert!(Matrix::from_rows(&Rationals, rows).is_err());
    }
}
