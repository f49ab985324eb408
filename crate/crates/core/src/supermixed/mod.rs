//! Supermixed representation spaces: some general linear factors replaced by
//! orthogonal or symplectic groups and some components restricted to
//! symmetric, skew or Lie-type subspaces, together with their reduction to a
//! mixed representation space of a larger quiver.

mod reduction;
mod sample;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Field, Matrix, Scalar};
use crate::invariant::InvariantError;
use crate::quiver::{ArrowCase, MixedRep, QuiverError, RawSupermixed};

pub use reduction::{build_reduction, push_invariant, FormPair, ReductionResult, Substitution};
pub use sample::{
    cayley_orthogonal, cayley_symplectic, oracle_comparison, random_subgroup_element, random_supermixed_point,
    verify_supermixed, OracleComparison, SupermixedReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupermixedError {
    #[error("an orthogonal factor needs odd characteristic, the field is {0}")]
    OddCharRequired(Field),
    #[error("symplectic factor at vertex {vertex} has odd size {d}")]
    OddSymplectic { vertex: usize, d: usize },
    #[error("group assignment: {0}")]
    BadFactor(String),
    #[error("arrow `{arrow}` cannot take shape {shape:?}: {reason}")]
    BadShape { arrow: String, shape: ComponentShape, reason: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Group replacing the general linear factor at a vertex or pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    GL,
    O,
    Sp,
}

/// Subspace a component is restricted to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentShape {
    #[default]
    Full,
    Symmetric,
    Skew,
    LieSp,
    LieSpSkew,
}

/// `J = [[0, I], [-I, 0]]` of even size `d`.
pub fn standard_j(field: Field, d: usize) -> Result<Matrix<Scalar>, SupermixedError> {
    if d % 2 == 1 {
        return Err(SupermixedError::OddSymplectic { vertex: 0, d });
    }
    let h = d / 2;
    Ok(Matrix::from_fn(field, d, d, |i, j| {
        if j == i + h {
            field.one()
        } else if i == j + h {
            field.one().neg()
        } else {
            field.zero()
        }
    }))
}

/// The skew form `J` and the identity of one size.
#[derive(Clone, Debug, PartialEq)]
pub struct StandardForm {
    pub j: Matrix<Scalar>,
    pub identity: Matrix<Scalar>,
}

impl StandardForm {
    pub fn new(field: Field, d: usize) -> Result<Self, SupermixedError> {
        Ok(StandardForm { j: standard_j(field, d)?, identity: Matrix::identity(field, d) })
    }
}

/// A validated supermixed space over a base mixed representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupermixedSpec {
    pub base: MixedRep,
    /// one group per factor, in [`MixedRep::factors`] order
    pub groups: Vec<GroupKind>,
    /// shapes of restricted components; absent arrows are full
    pub shapes: BTreeMap<String, ComponentShape>,
}

impl SupermixedSpec {
    /// Checks group sizes and the admissible shapes: symmetric or skew on an
    /// arrow between the two members of a pair (any group) or on a loop of an
    /// orthogonal factor; the Lie-type shapes on such a pair arrow or on a
    /// loop of a symplectic factor.
    pub fn new(
        base: MixedRep,
        groups: Vec<GroupKind>,
        shapes: BTreeMap<String, ComponentShape>,
    ) -> Result<Self, SupermixedError> {
        if groups.len() != base.factors().len() {
            return Err(SupermixedError::BadFactor(format!(
                "{} groups for {} factors",
                groups.len(),
                base.factors().len()
            )));
        }
        for (u, &g) in groups.iter().enumerate() {
            let d = base.factor_dim(u);
            if g == GroupKind::Sp && d % 2 == 1 {
                let vertex = (1..=base.quiver().vertex_count()).find(|&v| base.factor_of(v) == u).unwrap_or(0);
                return Err(SupermixedError::OddSymplectic { vertex, d });
            }
        }
        for (id, &shape) in &shapes {
            let a = base.arrow(id)?;
            let bad = |reason: &str| SupermixedError::BadShape { arrow: id.clone(), shape, reason: reason.to_string() };
            if shape == ComponentShape::Full {
                continue;
            }
            let u = base.factor_of(a.from);
            let same_factor = u == base.factor_of(a.to);
            let group = groups[u];
            let case = base.classify_arrow(a);
            let pair_arrow = same_factor && a.from != a.to && matches!(case, ArrowCase::Case2 | ArrowCase::Case3);
            let is_loop = a.from == a.to && case == ArrowCase::Case1;
            let ok = match shape {
                ComponentShape::Full => true,
                ComponentShape::Symmetric | ComponentShape::Skew => pair_arrow || (is_loop && group == GroupKind::O),
                ComponentShape::LieSp | ComponentShape::LieSpSkew => group == GroupKind::Sp && (pair_arrow || is_loop),
            };
            if !ok {
                return Err(bad(
                    "allowed on arrows between the two members of a pair, or on loops whose group preserves the subspace",
                ));
            }
        }
        Ok(SupermixedSpec { base, groups, shapes })
    }

    /// All factors general linear, all components full.
    pub fn trivial(base: MixedRep) -> Self {
        let groups = vec![GroupKind::GL; base.factors().len()];
        SupermixedSpec { base, groups, shapes: BTreeMap::new() }
    }

    /// From the optional block of a description file; vertices naming the
    /// same factor must agree.
    pub fn from_raw(base: MixedRep, raw: &RawSupermixed) -> Result<Self, SupermixedError> {
        let mut groups: Vec<Option<GroupKind>> = vec![None; base.factors().len()];
        for f in &raw.factors {
            if f.vertex == 0 || f.vertex > base.quiver().vertex_count() {
                return Err(SupermixedError::BadFactor(format!("no vertex {}", f.vertex)));
            }
            let u = base.factor_of(f.vertex);
            match groups[u] {
                Some(g) if g != f.group => {
                    return Err(SupermixedError::BadFactor(format!(
                        "vertex {} is given {:?} but its factor already has {:?}",
                        f.vertex, f.group, g
                    )))
                }
                _ => groups[u] = Some(f.group),
            }
        }
        let mut shapes = BTreeMap::new();
        for s in &raw.shapes {
            if shapes.insert(s.arrow.clone(), s.shape).is_some() {
                return Err(SupermixedError::BadShape {
                    arrow: s.arrow.clone(),
                    shape: s.shape,
                    reason: "given twice".into(),
                });
            }
        }
        let groups = groups.into_iter().map(|g| g.unwrap_or(GroupKind::GL)).collect();
        SupermixedSpec::new(base, groups, shapes)
    }

    pub fn shape(&self, arrow: &str) -> ComponentShape {
        self.shapes.get(arrow).copied().unwrap_or_default()
    }

    pub fn has_orthogonal(&self) -> bool {
        self.groups.contains(&GroupKind::O)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::presets;

    #[test]
    fn j_arithmetic() {
        for d in [2, 4, 6] {
            let f = StandardForm::new(Field::Rational, d).unwrap();
            assert_eq!(f.j.transpose(), f.j.neg());
            assert_eq!(f.j.mul(&f.j.neg()).unwrap(), f.identity);
            assert!(f.j.is_alternating());
        }
        assert!(standard_j(Field::Rational, 3).is_err());
    }

    #[test]
    fn odd_symplectic_is_refused() {
        let e = SupermixedSpec::new(presets::one_loop(3), vec![GroupKind::Sp], BTreeMap::new());
        assert_eq!(e.unwrap_err(), SupermixedError::OddSymplectic { vertex: 1, d: 3 });
    }

    #[test]
    fn shape_rules() {
        let rep = presets::example1(1, 2);
        let shapes = |a: &str, s| BTreeMap::from([(a.to_string(), s)]);
        assert!(SupermixedSpec::new(rep.clone(), vec![GroupKind::GL], shapes("b", ComponentShape::Symmetric)).is_ok());
        assert!(SupermixedSpec::new(rep.clone(), vec![GroupKind::GL], shapes("a1", ComponentShape::Symmetric)).is_err());
        assert!(SupermixedSpec::new(rep.clone(), vec![GroupKind::O], shapes("a1", ComponentShape::Skew)).is_ok());
        assert!(SupermixedSpec::new(rep.clone(), vec![GroupKind::Sp], shapes("a1", ComponentShape::LieSp)).is_ok());
        assert!(SupermixedSpec::new(rep.clone(), vec![GroupKind::GL], shapes("c", ComponentShape::LieSp)).is_err());
        assert!(SupermixedSpec::new(rep, vec![GroupKind::Sp], shapes("c", ComponentShape::LieSpSkew)).is_ok());
        let two = presets::two_cycle(2, 2);
        let e = SupermixedSpec::new(two, vec![GroupKind::O, GroupKind::O], shapes("a", ComponentShape::Symmetric));
        assert!(matches!(e, Err(SupermixedError::BadShape { .. })));
    }

    #[test]
    fn conflicting_vertices_of_one_pair() {
        let raw: RawSupermixed =
            serde_json::from_str(r#"{"factors": [{"vertex": 1, "group": "Sp"}, {"vertex": 2, "group": "O"}]}"#)
                .unwrap();
        assert!(matches!(SupermixedSpec::from_raw(presets::example1(0, 2), &raw), Err(SupermixedError::BadFactor(_))));
    }
}
