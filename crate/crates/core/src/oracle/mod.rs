//! Characteristic-zero ground truth for the invariant engine: the Lie algebra
//! of the group acting by derivations, exact invariant subspaces of a fixed
//! multidegree, spanning checks for the generators, and alternating sums
//! over Young superclasses.

mod lie;
mod span;
mod young;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::invariant::InvariantError;
use crate::quiver::QuiverError;

pub use lie::{
    component_basis, invariant_dim, invariant_dim_with, lie_derivations, lie_derivations_with, DerivationOperator,
    InvariantSpace,
};
pub(crate) use span::{product_echelon, usable_atoms};
pub use span::{span_check, span_check_with, Budgets, SpanReport};
pub use young::{all_superclasses, labellings, superclass, young_superclass_sum, YoungLayers, YoungSum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the Lie algebra criterion needs characteristic 0, got {0}")]
    UnsupportedCharacteristic(u64),
    #[error("{what} has size {size}, over the budget of {limit}")]
    BudgetExceeded { what: &'static str, size: usize, limit: usize },
    #[error("polynomial has a term outside the component: {0}")]
    OutsideComponent(String),
    #[error("invalid layers: {0}")]
    BadLayers(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

fn require_char_zero(field: crate::algebra::Field) -> Result<(), OracleError> {
    match field.characteristic() {
        0 => Ok(()),
        p => Err(OracleError::UnsupportedCharacteristic(p)),
    }
}
