//! Dense matrices over a [`Ring`].

use std::fmt;

use super::{AlgebraError, Field, Polynomial, Ring, Scalar, Var};

/// Row-major dense matrix; every entry shares the matrix's field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, data: vec![T::zero_of(field); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one_of(field);
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, field, data }
    }

    /// Builds from row-major entries; panics if the length is wrong.
    pub fn from_rows(field: Field, rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Matrix { rows, cols, field, data }
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

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out: Matrix<T> = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.shape() != rhs.shape() {
            return Err(AlgebraError::ShapeMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add_ref(b)).collect();
        Ok(Matrix { data, ..self.clone_shape() })
    }

    pub fn neg(&self) -> Self {
        Matrix { data: self.data.iter().map(T::neg_ref).collect(), ..self.clone_shape() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix { data: self.data.iter().map(|x| x.mul_ref(c)).collect(), ..self.clone_shape() }
    }

    pub fn trace(&self) -> Result<T, AlgebraError> {
        self.require_square()?;
        let mut acc = T::zero_of(self.field);
        for i in 0..self.rows {
            acc = acc.add_ref(self.get(i, i));
        }
        Ok(acc)
    }

    pub fn require_square(&self) -> Result<(), AlgebraError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(AlgebraError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data: self.data.iter().map(f).collect() }
    }

    fn clone_shape(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, field: self.field, data: Vec::new() }
    }
}

impl Matrix<Scalar> {
    /// Integer entries, row-major.
    pub fn from_i64(field: Field, rows: usize, cols: usize, data: &[i64]) -> Self {
        Matrix::from_rows(field, rows, cols, data.iter().map(|&x| Scalar::from_i64(field, x)).collect())
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> Result<Scalar, AlgebraError> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(self.field.zero());
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = det.neg();
            }
            let p = a[col * n + col].clone();
            det = det.mul(&p);
            let pinv = p.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let f = a[r * n + col].mul(&pinv);
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j].mul(&f);
                    a[r * n + j] = a[r * n + j].sub(&v);
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = Matrix::<Scalar>::identity(self.field, n).data;
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r * n + col].is_zero()).ok_or(AlgebraError::Singular)?;
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let pinv = a[col * n + col].inv().expect("nonzero pivot");
            for j in 0..n {
                a[col * n + j] = a[col * n + j].mul(&pinv);
                inv[col * n + j] = inv[col * n + j].mul(&pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col].clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a[col * n + j].mul(&f);
                    a[r * n + j] = a[r * n + j].sub(&v);
                    let w = inv[col * n + j].mul(&f);
                    inv[r * n + j] = inv[r * n + j].sub(&w);
                }
            }
        }
        Ok(Matrix::from_rows(self.field, n, n, inv))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// `Aᵗ = -A` with zero diagonal (the latter matters in characteristic 2).
    pub fn is_alternating(&self) -> bool {
        self.is_square() && *self == self.transpose().neg() && (0..self.rows).all(|i| self.get(i, i).is_zero())
    }
}

/// The generic matrix of arrow `arrow`: entry `(i, j)` is the variable
/// `y[arrow][i+1][j+1]`.
pub fn generic_matrix(field: Field, arrow: &str, rows: usize, cols: usize) -> Matrix<Polynomial> {
    Matrix::from_fn(field, rows, cols, |i, j| Polynomial::var(field, Var::new(arrow, i as u32 + 1, j as u32 + 1)))
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}
