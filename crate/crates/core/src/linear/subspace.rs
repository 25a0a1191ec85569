use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A linear subspace of `K^n`, stored by a parametrization: the columns of
/// `basis` are linearly independent and span the subspace. The dual
/// description (cutting linear forms) is derived on demand.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSubspace<F: Field> {
    ambient_dim: usize,
    basis: Matrix<F>,
}

impl<F: Field> LinearSubspace<F> {
    pub fn whole(field: &F, n: usize) -> Self {
        LinearSubspace {
            ambient_dim: n,
            basis: Matrix::identity(field, n),
        }
    }

    /// Subspace spanned by the columns of `basis`; the columns must be independent.
    pub fn from_basis(basis: Matrix<F>) -> Result<Self> {
        if basis.rank() != basis.cols() {
            return Err(Error::InvalidArgument(
                "subspace basis vectors are linearly dependent".into(),
            ));
        }
        Ok(LinearSubspace {
            ambient_dim: basis.rows(),
            basis,
        })
    }

    /// Common zero set of the linear forms given as rows of `equations`.
    /// Dependent equations are allowed.
    pub fn from_equations(equations: &Matrix<F>) -> Self {
        LinearSubspace {
            ambient_dim: equations.cols(),
            basis: equations.kernel(),
        }
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim()
    }
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    /// Independent linear forms (rows) cutting out the subspace.
    pub fn equations(&self) -> Matrix<F> {
        self.basis.transpose().kernel().transpose()
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.field();
        let eq = self.equations();
        (0..eq.rows()).all(|r| {
            let s = eq
                .row(r)
                .iter()
                .zip(v)
                .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
            f.is_zero(&s)
        })
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && (0..self.dim()).all(|c| other.contains(&self.basis.column(c)))
    }

    /// Intersection with the zero set of extra linear forms (rows of `forms`).
    pub fn cut(&self, forms: &Matrix<F>) -> Result<Self> {
        if forms.cols() != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "forms in {} variables cannot cut a subspace of K^{}",
                forms.cols(),
                self.ambient_dim
            )));
        }
        let eq = self.equations();
        let mut rows = eq.to_rows();
        rows.extend(forms.to_rows());
        let all = Matrix::from_rows(self.field(), rows)?;
        if all.rows() == 0 {
            return Ok(self.clone());
        }
        Ok(Self::from_equations(&all))
    }

    /// Expresses a subspace of `self` (given in ambient coordinates) in the
    /// coordinates of `self`'s parametrization.
    pub fn relative_basis(&self, inner: &Self) -> Result<Matrix<F>> {
        if !inner.is_subspace_of(self) {
            return Err(Error::InvalidArgument("subspace is not contained in the ambient one".into()));
        }
        let f = self.field();
        let n = self.dim();
        let mut out = Matrix::zeros(f, n, inner.dim());
        // pick n independent rows of the basis to get a square system
        let (_, pivots) = self.basis.transpose().rref();
        let square = self.basis.submatrix(&pivots, &(0..n).collect::<Vec<_>>());
        for c in 0..inner.dim() {
            let col = inner.basis.column(c);
            let rhs: Vec<F::Elem> = pivots.iter().map(|&r| col[r].clone()).collect();
            let coords = square
                .solve(&rhs)
                .ok_or_else(|| Error::InvalidArgument("degenerate subspace basis".into()))?;
            for (r, v) in coords.into_iter().enumerate() {
                out.set(r, c, v);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::field::PrimeField;

    #[test]
    fn dim_plus_codim_and_annihilation() {
        let f = PrimeField::new(101).unwrap();
        let eq = Matrix::from_rows(&f, vec![vec![1, 2, 3, 4], vec![0, 1, 0, 1]]).unwrap();
        let l = LinearSubspace::from_equations(&eq);
        assert_eq!(l.dim(), 2);
        assert_eq!(l.dim() + l.codim(), 4);
        let back = l.equations();
        assert_eq!(back.rows(), 2);
        assert!(back.mul(l.basis()).unwrap().is_zero());
        assert!(eq.mul(l.basis()).unwrap().is_zero());
    }

    #[test]
    fn relative_coordinates() {
        let f = PrimeField::new(13).unwrap();
        let outer = LinearSubspace::from_equations(&Matrix::from_rows(&f, vec![vec![1, 1, 1]]).unwrap());
        let inner = outer.cut(&Matrix::from_rows(&f, vec![vec![0, 1, 12]]).unwrap()).unwrap();
        assert_eq!(inner.dim(), 1);
        let rel = outer.relative_basis(&inner).unwrap();
        let back = outer.basis().mul(&rel).unwrap();
        assert_eq!(back, *inner.basis());
    }

    #[test]
    fn dependent_basis_rejected() {
        let f = PrimeField::new(5).unwrap();
        let b = Matrix::from_rows(&f, vec![vec![1, 2], vec![2, 4]]).unwrap();
        assert!(LinearSubspace::from_basis(b).is_err());
    }
}
