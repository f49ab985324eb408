//! Generators `σ_j(Z(w))` of invariant algebras, multilinear invariants from
//! permutations, the group action and randomized invariance checks, and the
//! two specialization maps.

mod action;
mod contract;
mod hat;
mod specialize;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{generic_matrix, sigma, AlgebraError, Field, Matrix, Polynomial, Ring};
use crate::quiver::{DoubledQuiver, MixedRep, QuiverError};
use crate::words::{is_admissible, Word, WordError};

pub use action::{
    act, eval_at, random_group_element, random_point, reduce_to, verify_invariance, GroupElement, InvarianceReport,
    Point,
};
pub use contract::{
    contract_formal, contract_neighbors, contract_permutation, tr_star, tr_star_direct, trace_product_poly, Contraction,
};
pub use hat::{hat_quiver, hom_members, perm_in_hom, HatLayout, PermDatum};
pub use specialize::{specialize_dim, specialize_f};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("word `{0}` is not a closed path in the doubled quiver")]
    NotAdmissible(String),
    #[error("permutation {0} does not satisfy the membership equations")]
    NotInHom(String),
    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),
    #[error("multidegree has {r2} arrows of the second kind and {r3} of the third")]
    Unbalanced { r2: u32, r3: u32 },
    #[error("dimension vector does not dominate: {0}")]
    NotDominating(String),
    #[error("group element is singular at factor {0}")]
    Singular(usize),
    #[error("contraction routes disagree for {0}")]
    RouteMismatch(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Where an invariant came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// `σ_j(Z(w))`
    Word { word: Word, j: usize },
    /// multilinear invariant of a permutation
    Permutation { sigma: String, t: usize, s: usize, trace: String },
    /// product of other invariants
    Product { factors: Vec<Provenance> },
    /// image under a specialization map
    Specialized { map: String, from: Box<Provenance> },
    /// element of a computed basis
    Basis { index: usize },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Word { word, j } => write!(f, "sigma_{j}({word})"),
            Provenance::Permutation { sigma, t, s, trace } => {
                write!(f, "tr*{sigma} [t={t}, s={s}] = {trace}")
            }
            Provenance::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join(" * "))
            }
            Provenance::Specialized { map, from } => write!(f, "{map}({from})"),
            Provenance::Basis { index } => write!(f, "basis[{index}]"),
        }
    }
}

/// A polynomial claimed to be invariant, with its origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariant {
    pub poly: Polynomial,
    pub provenance: Provenance,
}

impl Invariant {
    pub fn product(parts: &[Invariant]) -> Invariant {
        let field = parts.first().map_or(Field::Rational, |p| p.poly.field());
        let poly = parts.iter().fold(Polynomial::constant(field.one()), |acc, p| acc.mul(&p.poly));
        Invariant {
            poly,
            provenance: Provenance::Product { factors: parts.iter().map(|p| p.provenance.clone()).collect() },
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "# {}\n{}", self.provenance, self.poly)
    }
}

/// Evaluates `Z(l_1) ... Z(l_L)` with `lookup` supplying `Y(a)` for each arrow.
pub fn eval_word<T: Ring>(
    dq: &DoubledQuiver,
    w: &Word,
    mut lookup: impl FnMut(&str) -> Option<Matrix<T>>,
) -> Result<Matrix<T>, InvariantError> {
    let mut acc: Option<Matrix<T>> = None;
    for l in w.letters() {
        let y = lookup(&l.arrow).ok_or_else(|| AlgebraError::MissingAssignment(l.arrow.to_string()))?;
        let a = dq.rep().arrow(&l.arrow)?;
        let expected = dq.rep().arrow_shape(a);
        if y.shape() != expected {
            return Err(AlgebraError::ShapeMismatch(format!(
                "arrow `{}` needs a {}x{} matrix, got {}x{}",
                l.arrow,
                expected.0,
                expected.1,
                y.rows(),
                y.cols()
            ))
            .into());
        }
        let z = if l.barred { y.transpose() } else { y };
        acc = Some(match acc {
            None => z,
            Some(m) => m.mul(&z)?,
        });
    }
    acc.ok_or(InvariantError::Word(WordError::EmptyWord))
}

/// Generic matrices of every arrow of `rep`.
pub fn generic_point(rep: &MixedRep, field: Field) -> BTreeMap<String, Matrix<Polynomial>> {
    rep.arrows()
        .iter()
        .map(|a| {
            let (r, c) = rep.arrow_shape(a);
            (a.id.clone(), generic_matrix(field, &a.id, r, c))
        })
        .collect()
}

/// `σ_j(Z(w))` over generic matrices. Fourth-case arrows are eliminated
/// first; `w` is read in the doubled quiver of the eliminated quiver and the
/// result is transported back to the original coordinates. Zero when `j`
/// exceeds the size of `Z(w)`.
pub fn generator(rep: &MixedRep, w: &Word, j: usize, field: Field) -> Result<Invariant, InvariantError> {
    generator_bounded(rep, w, j, field, usize::MAX)
}

/// [`generator`] failing with `BudgetExceeded` once an entry of `Z(w)` or
/// the result has more than `max_terms` terms.
pub fn generator_bounded(
    rep: &MixedRep,
    w: &Word,
    j: usize,
    field: Field,
    max_terms: usize,
) -> Result<Invariant, InvariantError> {
    let (normal, relabel) = rep.eliminate_fourth_case();
    let dq = DoubledQuiver::new(&normal)?;
    if !is_admissible(&dq, w)? {
        return Err(InvariantError::NotAdmissible(w.to_string()));
    }
    let over = |size: usize| AlgebraError::BudgetExceeded { what: "polynomial terms", size, limit: max_terms };
    let point = generic_point(&normal, field);
    let z = eval_word(&dq, w, |id| point.get(id).cloned())?;
    if let Some(n) = z.entries().iter().map(Polynomial::len).max().filter(|&n| n > max_terms) {
        return Err(over(n).into());
    }
    let value = sigma(&z, j)?;
    if value.len() > max_terms {
        return Err(over(value.len()).into());
    }
    let poly = relabel.apply(&value);
    Ok(Invariant { poly, provenance: Provenance::Word { word: w.clone(), j } })
}

/// Balance conditions at ordinary vertices and pairs for multidegree `r̄`.
pub fn multidegree_balanced(rep: &MixedRep, md: &[u32]) -> bool {
    let sum = |pred: &dyn Fn(usize, usize) -> bool| -> u32 {
        rep.arrows().iter().zip(md).filter(|(a, _)| pred(a.from, a.to)).map(|(_, &r)| r).sum()
    };
    let ordinary_ok = rep.quiver().ordinary().iter().all(|&v| sum(&|_, to| to == v) == sum(&|from, _| from == v));
    let pairs_ok = rep.quiver().pairs().iter().all(|&(i, j)| {
        let lhs = sum(&|_, to| to == i) + sum(&|from, _| from == j);
        let rhs = sum(&|from, _| from == i) + sum(&|_, to| to == j);
        lhs == rhs
    });
    ordinary_ok && pairs_ok
}
