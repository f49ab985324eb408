//! Exact arithmetic: fields, sparse polynomials, matrices over either, the
//! division-free characteristic polynomial and exact linear algebra.

mod charpoly;
mod field;
mod linalg;
mod matrix;
mod poly;
mod random;

use thiserror::Error;

pub use charpoly::{char_poly_coeffs, sigma};
pub use field::{is_prime, Field, Fp, Rational, Scalar};
pub use linalg::{nullspace, rank, reduce_mod_span, RowEchelon};
pub use matrix::{generic_matrix, Matrix};
pub use poly::{natural_cmp, poly_equal, GrlexKey, Monomial, Polynomial, Var, VarKey};
pub use random::{random_invertible, random_matrix, random_scalar, small_rational};

/// Failures of the arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("cannot parse field `{0}` (expected Q or F<p>)")]
    BadField(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("no matrix assigned to arrow `{0}`")]
    MissingAssignment(String),
    #[error("coefficient fields differ: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("budget exceeded: {what} reached {size}, limit {limit}")]
    BudgetExceeded { what: &'static str, size: usize, limit: usize },
    #[error("matrix is singular")]
    Singular,
}

/// Commutative ring elements that know their coefficient field, so zero
/// and one can be produced without a separate context value.
pub trait Ring: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero_of(field: Field) -> Self;
    fn one_of(field: Field) -> Self;
    fn field_of(&self) -> Field;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_scalar(c: &Scalar) -> Self;
}

impl Ring for Scalar {
    fn zero_of(field: Field) -> Self {
        field.zero()
    }
    fn one_of(field: Field) -> Self {
        field.one()
    }
    fn field_of(&self) -> Field {
        self.field()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn from_scalar(c: &Scalar) -> Self {
        c.clone()
    }
}

impl Ring for Polynomial {
    fn zero_of(field: Field) -> Self {
        Polynomial::zero(field)
    }
    fn one_of(field: Field) -> Self {
        Polynomial::constant(field.one())
    }
    fn field_of(&self) -> Field {
        self.field()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn from_scalar(c: &Scalar) -> Self {
        Polynomial::constant(c.clone())
    }
}
