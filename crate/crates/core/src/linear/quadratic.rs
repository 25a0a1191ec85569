use super::field::Field;
use super::matrix::Matrix;
use super::subspace::LinearSubspace;
use crate::error::{Error, Result};

/// A quadratic form `q(x) = xᵀ·G·x` with symmetric Gram matrix `G`.
///
/// Fields of characteristic 2 are rejected because the Gram matrix of
/// `x₁x₂` needs the entry `1/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticForm<F: Field> {
    gram: Matrix<F>,
}

impl<F: Field> QuadraticForm<F> {
    pub fn new(gram: Matrix<F>) -> Result<Self> {
        if gram.field().characteristic() == 2 {
            return Err(Error::Characteristic2);
        }
        if !gram.is_symmetric() {
            return Err(Error::InvalidArgument("Gram matrix is not symmetric".into()));
        }
        Ok(QuadraticForm { gram })
    }

    pub fn zero(field: &F, n_vars: usize) -> Result<Self> {
        Self::new(Matrix::zeros(field, n_vars, n_vars))
    }

    /// Form with coefficients `c[i][j]` of `x_i·x_j` for `i <= j` (upper triangle).
    pub fn from_upper(field: &F, n_vars: usize, coeff: impl Fn(usize, usize) -> F::Elem) -> Result<Self> {
        if field.characteristic() == 2 {
            return Err(Error::Characteristic2);
        }
        let half = field.inv(&field.from_i64(2)).expect("char != 2");
        let gram = Matrix::from_fn(field, n_vars, n_vars, |r, c| {
            if r == c {
                coeff(r, r)
            } else {
                let (i, j) = if r < c { (r, c) } else { (c, r) };
                field.mul(&coeff(i, j), &half)
            }
        });
        Self::new(gram)
    }

    pub fn diagonal(field: &F, diag: &[F::Elem]) -> Result<Self> {
        let n = diag.len();
        Self::new(Matrix::from_fn(field, n, n, |r, c| {
            if r == c {
                diag[r].clone()
            } else {
                field.zero()
            }
        }))
    }

    pub fn field(&self) -> &F {
        self.gram.field()
    }
    pub fn n_vars(&self) -> usize {
        self.gram.rows()
    }
    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    /// Coefficient of `x_i·x_j` (`i <= j`) in the polynomial expansion.
    pub fn coefficient(&self, i: usize, j: usize) -> F::Elem {
        let f = self.field();
        if i == j {
            self.gram.get(i, i).clone()
        } else {
            f.add(self.gram.get(i, j), self.gram.get(j, i))
        }
    }

    pub fn evaluate(&self, x: &[F::Elem]) -> F::Elem {
        let f = self.field();
        let mut acc = f.zero();
        for i in 0..self.n_vars() {
            for j in 0..self.n_vars() {
                let t = f.mul(&f.mul(&x[i], self.gram.get(i, j)), &x[j]);
                acc = f.add(&acc, &t);
            }
        }
        acc
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &F::Elem, other: &Self, b: &F::Elem) -> Result<Self> {
        if self.n_vars() != other.n_vars() {
            return Err(Error::DimensionMismatch("forms in different numbers of variables".into()));
        }
        Ok(QuadraticForm {
            gram: self.gram.combine(a, &other.gram, b)?,
        })
    }

    /// `Aᵀ·G·A`: the form `x ↦ q(A·x)`.
    pub fn pullback(&self, a: &Matrix<F>) -> Result<Self> {
        let g = a.transpose().mul(&self.gram)?.mul(a)?;
        Ok(QuadraticForm { gram: g })
    }

    /// Restriction onto a subspace in the coordinates of its parametrization.
    pub fn restrict(&self, l: &LinearSubspace<F>) -> Result<Self> {
        if l.ambient_dim() != self.n_vars() {
            return Err(Error::DimensionMismatch(format!(
                "form in {} variables, subspace of K^{}",
                self.n_vars(),
                l.ambient_dim()
            )));
        }
        self.pullback(l.basis())
    }
}

/// Restriction of `q` onto `l`; the rank drops by at most `2·codim(l)`.
pub fn restrict_form<F: Field>(q: &QuadraticForm<F>, l: &LinearSubspace<F>) -> Result<QuadraticForm<F>> {
    q.restrict(l)
}
