//! Quivers with a vertex partition into ordinary vertices and dual pairs,
//! mixed dimension vectors, arrow classification and the doubled quiver.
//!
//! A pair `(i_q, j_q)` carries one group factor `GL(d_q)` acting on `E` at
//! `i_q` and on the dual `E*` at the starred member `j_q`. Arrow `a` has
//! generic matrix `Y(a)` of shape `d_{t(a)} x d_{i(a)}`, and the group acts
//! on coordinates by
//!
//! | case | origin | end | action            |
//! |------|--------|-----|-------------------|
//! | 1    | `E`    | `E` | `g⁻¹ Y h`         |
//! | 2    | `E`    | `E*`| `gᵗ Y h`          |
//! | 3    | `E*`   | `E` | `g⁻¹ Y (hᵗ)⁻¹`    |
//! | 4    | `E*`   | `E*`| `gᵗ Y (hᵗ)⁻¹`     |
//!
//! with `g` the factor at `t(a)` and `h` the factor at `i(a)`.

mod doubled;
mod file;
pub mod presets;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Polynomial, Var};

pub use doubled::{DVertex, DoubledQuiver, Letter};
pub use file::{parse_spec, parse_spec_str, RawArrow, RawFactor, RawQuiver, RawShape, RawSupermixed, SpecFile};

/// Structural problems with a quiver description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("partition violation: {0}")]
    PartitionViolation(String),
    #[error("incompatible dimension at pair ({i}, {j}): {di} vs {dj}")]
    IncompatibleDimension { i: usize, j: usize, di: usize, dj: usize },
    #[error("arrow `{arrow}` has endpoint {vertex} outside 1..={n}")]
    DanglingArrow { arrow: String, vertex: usize, n: usize },
    #[error("star pattern violation: {0}")]
    StarPattern(String),
    #[error("vertex {0} has dimension zero")]
    ZeroDimension(usize),
    #[error("dimension vector has {found} entries for {expected} vertices")]
    DimensionCount { expected: usize, found: usize },
    #[error("invalid arrow id `{0}`")]
    BadArrowId(String),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrow `{0}` joins two starred vertices; eliminate the fourth case first")]
    FourthCasePresent(String),
    #[error("malformed multidegree `{0}`")]
    BadMultidegree(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

/// Arrow of a quiver; endpoints are 1-based vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub from: usize,
    pub to: usize,
}

/// The combinatorial quiver with its vertex partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedQuiver {
    vertices: usize,
    ordinary: Vec<usize>,
    /// `(i_q, j_q)` with `j_q` the starred member
    pairs: Vec<(usize, usize)>,
    arrows: Vec<Arrow>,
}

impl MixedQuiver {
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn ordinary(&self) -> &[usize] {
        &self.ordinary
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
}

/// Per-vertex size and star.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimEntry {
    pub size: usize,
    #[serde(default)]
    pub starred: bool,
}

/// Mixed dimension vector `t`; index `v - 1` holds vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedDimVector {
    entries: Vec<DimEntry>,
}

impl MixedDimVector {
    pub fn entries(&self) -> &[DimEntry] {
        &self.entries
    }

    /// The underlying vector `d` with stars forgotten.
    pub fn underlying(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.size).collect()
    }
}

/// The four star patterns of an arrow's endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArrowCase {
    Case1,
    Case2,
    Case3,
    Case4,
}

impl ArrowCase {
    pub fn from_stars(origin_starred: bool, end_starred: bool) -> Self {
        match (origin_starred, end_starred) {
            (false, false) => ArrowCase::Case1,
            (false, true) => ArrowCase::Case2,
            (true, false) => ArrowCase::Case3,
            (true, true) => ArrowCase::Case4,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            ArrowCase::Case1 => 1,
            ArrowCase::Case2 => 2,
            ArrowCase::Case3 => 3,
            ArrowCase::Case4 => 4,
        }
    }
}

impl fmt::Display for ArrowCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}", self.number())
    }
}

/// One general linear factor of the group `H(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Factor {
    /// ordinary vertex label
    Ordinary(usize),
    /// 0-based pair index
    Pair(usize),
}

/// A validated quiver together with a compatible mixed dimension vector:
/// the data describing the representation space `R(Q, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedRep {
    quiver: MixedQuiver,
    dims: MixedDimVector,
    arrow_index: BTreeMap<String, usize>,
    /// group factor index of each vertex (index `v - 1`)
    factor_of_vertex: Vec<usize>,
    factors: Vec<Factor>,
}

/// Multidegree indexed like [`MixedQuiver::arrows`].
pub type Multidegree = Vec<u32>;

impl MixedRep {
    /// Validates the quiver and dimension vector against each other.
    pub fn new(
        vertices: usize,
        ordinary: Vec<usize>,
        pairs: Vec<Vec<usize>>,
        arrows: Vec<Arrow>,
        dims: Vec<DimEntry>,
    ) -> Result<Self, QuiverError> {
        let mut owner: Vec<Option<String>> = vec![None; vertices];
        let mut claim = |v: usize, who: String| -> Result<(), QuiverError> {
            if v == 0 || v > vertices {
                return Err(QuiverError::PartitionViolation(format!("{who} names vertex {v}, outside 1..={vertices}")));
            }
            if let Some(prev) = &owner[v - 1] {
                return Err(QuiverError::PartitionViolation(format!("vertex {v} belongs to both {prev} and {who}")));
            }
            owner[v - 1] = Some(who);
            Ok(())
        };
        for &v in &ordinary {
            claim(v, "the ordinary set".into())?;
        }
        for (q, p) in pairs.iter().enumerate() {
            if p.len() != 2 {
                return Err(QuiverError::PartitionViolation(format!(
                    "pair {} has {} vertices, expected 2",
                    q + 1,
                    p.len()
                )));
            }
            if p[0] == p[1] {
                return Err(QuiverError::PartitionViolation(format!("pair {} repeats vertex {}", q + 1, p[0])));
            }
            for &v in p {
                claim(v, format!("pair {}", q + 1))?;
            }
        }
        if let Some(v) = owner.iter().position(Option::is_none) {
            return Err(QuiverError::PartitionViolation(format!("vertex {} is neither ordinary nor in a pair", v + 1)));
        }
        if dims.len() != vertices {
            return Err(QuiverError::DimensionCount { expected: vertices, found: dims.len() });
        }
        if let Some(v) = dims.iter().position(|e| e.size == 0) {
            return Err(QuiverError::ZeroDimension(v + 1));
        }
        let mut ordinary = ordinary;
        ordinary.sort_unstable();
        for &v in &ordinary {
            if dims[v - 1].starred {
                return Err(QuiverError::StarPattern(format!("ordinary vertex {v} is starred")));
            }
        }
        let mut oriented = Vec::with_capacity(pairs.len());
        for p in &pairs {
            let (a, b) = (p[0], p[1]);
            let (da, db) = (dims[a - 1], dims[b - 1]);
            if da.size != db.size {
                return Err(QuiverError::IncompatibleDimension { i: a, j: b, di: da.size, dj: db.size });
            }
            match (da.starred, db.starred) {
                (false, true) => oriented.push((a, b)),
                (true, false) => oriented.push((b, a)),
                _ => {
                    return Err(QuiverError::StarPattern(format!(
                        "pair ({a}, {b}) must have exactly one starred vertex"
                    )))
                }
            }
        }
        let mut arrow_index = BTreeMap::new();
        for (k, a) in arrows.iter().enumerate() {
            if !valid_arrow_id(&a.id) {
                return Err(QuiverError::BadArrowId(a.id.clone()));
            }
            if arrow_index.insert(a.id.clone(), k).is_some() {
                return Err(QuiverError::DuplicateArrow(a.id.clone()));
            }
            for v in [a.from, a.to] {
                if v == 0 || v > vertices {
                    return Err(QuiverError::DanglingArrow { arrow: a.id.clone(), vertex: v, n: vertices });
                }
            }
        }
        let mut factors = Vec::new();
        let mut factor_of_vertex = vec![0; vertices];
        for &v in &ordinary {
            factor_of_vertex[v - 1] = factors.len();
            factors.push(Factor::Ordinary(v));
        }
        for (q, &(i, j)) in oriented.iter().enumerate() {
            factor_of_vertex[i - 1] = factors.len();
            factor_of_vertex[j - 1] = factors.len();
            factors.push(Factor::Pair(q));
        }
        Ok(MixedRep {
            quiver: MixedQuiver { vertices, ordinary, pairs: oriented, arrows },
            dims: MixedDimVector { entries: dims },
            arrow_index,
            factor_of_vertex,
            factors,
        })
    }

    pub fn quiver(&self) -> &MixedQuiver {
        &self.quiver
    }

    pub fn dims(&self) -> &MixedDimVector {
        &self.dims
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.quiver.arrows
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize, QuiverError> {
        self.arrow_index.get(id).copied().ok_or_else(|| QuiverError::UnknownArrow(id.to_string()))
    }

    pub fn arrow(&self, id: &str) -> Result<&Arrow, QuiverError> {
        Ok(&self.quiver.arrows[self.arrow_index(id)?])
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims.entries[v - 1].size
    }

    pub fn is_starred(&self, v: usize) -> bool {
        self.dims.entries[v - 1].starred
    }

    pub fn max_dim(&self) -> usize {
        self.dims.entries.iter().map(|e| e.size).max().unwrap_or(0)
    }

    /// Pair index and partner of a paired vertex.
    pub fn partner(&self, v: usize) -> Option<(usize, usize)> {
        self.quiver.pairs.iter().enumerate().find_map(|(q, &(i, j))| {
            if v == i {
                Some((q, j))
            } else if v == j {
                Some((q, i))
            } else {
                None
            }
        })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Index into [`Self::factors`] of the factor acting at `v`.
    pub fn factor_of(&self, v: usize) -> usize {
        self.factor_of_vertex[v - 1]
    }

    pub fn factor_dim(&self, f: usize) -> usize {
        match self.factors[f] {
            Factor::Ordinary(v) => self.dim(v),
            Factor::Pair(q) => self.dim(self.quiver.pairs[q].0),
        }
    }

    pub fn classify_arrow(&self, a: &Arrow) -> ArrowCase {
        ArrowCase::from_stars(self.is_starred(a.from), self.is_starred(a.to))
    }

    pub fn classify(&self, id: &str) -> Result<ArrowCase, QuiverError> {
        Ok(self.classify_arrow(self.arrow(id)?))
    }

    /// `(rows, cols) = (d_{t(a)}, d_{i(a)})`.
    pub fn arrow_shape(&self, a: &Arrow) -> (usize, usize) {
        (self.dim(a.to), self.dim(a.from))
    }

    /// Every coordinate variable `y[a][i][j]`, arrows in declaration order.
    pub fn variables(&self) -> Vec<Var> {
        let mut out = Vec::new();
        for a in self.arrows() {
            let (r, c) = self.arrow_shape(a);
            for i in 1..=r as u32 {
                for j in 1..=c as u32 {
                    out.push(Var::new(&a.id, i, j));
                }
            }
        }
        out
    }

    /// Redirects every arrow `j_q -> j_q'` to `i_q' -> i_q`. The generic
    /// matrix of a redirected arrow is the transpose of the original, which
    /// the returned [`Relabeling`] records.
    pub fn eliminate_fourth_case(&self) -> (MixedRep, Relabeling) {
        let mut transposed = BTreeSet::new();
        let arrows = self
            .arrows()
            .iter()
            .map(|a| {
                if self.classify_arrow(a) != ArrowCase::Case4 {
                    return a.clone();
                }
                transposed.insert(a.id.clone());
                let (_, from) = self.partner(a.to).expect("starred vertex is paired");
                let (_, to) = self.partner(a.from).expect("starred vertex is paired");
                Arrow { id: a.id.clone(), from, to }
            })
            .collect();
        let mut out = self.clone();
        out.quiver.arrows = arrows;
        (out, Relabeling { transposed })
    }

    pub fn has_fourth_case(&self) -> bool {
        self.arrows().iter().any(|a| self.classify_arrow(a) == ArrowCase::Case4)
    }

    /// Parses `a=2,b=1` (by id) or `2,1` (positional) into a multidegree.
    pub fn parse_multidegree(&self, s: &str) -> Result<Multidegree, QuiverError> {
        let bad = || QuiverError::BadMultidegree(s.to_string());
        let parts: Vec<&str> = s.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        let mut md = vec![0; self.arrows().len()];
        if parts.iter().all(|p| p.contains('=')) {
            for p in parts {
                let (id, n) = p.split_once('=').ok_or_else(bad)?;
                let k = self.arrow_index(id.trim())?;
                md[k] = n.trim().parse().map_err(|_| bad())?;
            }
        } else {
            if parts.len() != md.len() {
                return Err(bad());
            }
            for (slot, p) in md.iter_mut().zip(parts) {
                *slot = p.parse().map_err(|_| bad())?;
            }
        }
        Ok(md)
    }

    /// Multidegree map keyed by arrow id, as produced by
    /// [`Polynomial::multidegree`].
    pub fn multidegree_map(&self, md: &[u32]) -> BTreeMap<Arc<str>, u32> {
        self.arrows().iter().zip(md).filter(|(_, &r)| r > 0).map(|(a, &r)| (Arc::from(a.id.as_str()), r)).collect()
    }

    /// Same data with every dimension replaced; stars are kept.
    pub fn with_sizes(&self, sizes: &[usize]) -> Result<MixedRep, QuiverError> {
        let dims = self
            .dims
            .entries
            .iter()
            .zip(sizes)
            .map(|(e, &size)| DimEntry { size, starred: e.starred })
            .collect::<Vec<_>>();
        if dims.len() != self.dims.entries.len() || sizes.len() != dims.len() {
            return Err(QuiverError::DimensionCount { expected: self.dims.entries.len(), found: sizes.len() });
        }
        self.rebuild(self.arrows().to_vec(), dims)
    }

    /// Rebuilds with new arrows and dims, keeping the partition.
    pub fn rebuild(&self, arrows: Vec<Arrow>, dims: Vec<DimEntry>) -> Result<MixedRep, QuiverError> {
        MixedRep::new(
            dims.len(),
            self.quiver.ordinary.clone(),
            self.quiver.pairs.iter().map(|&(i, j)| vec![i, j]).collect(),
            arrows,
            dims,
        )
    }
}

/// Arrow ids are nonempty, avoid the reserved `_bar` suffix and the
/// characters used by word serialization.
fn valid_arrow_id(id: &str) -> bool {
    !id.is_empty()
        && !id.ends_with("_bar")
        && id.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-' || c == '.')
}

/// Variable relabeling produced by [`MixedRep::eliminate_fourth_case`]:
/// `y[a][l][t] ↦ y[a][t][l]` for each redirected arrow `a`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Relabeling {
    transposed: BTreeSet<String>,
}

impl Relabeling {
    pub fn is_identity(&self) -> bool {
        self.transposed.is_empty()
    }

    pub fn transposed_arrows(&self) -> impl Iterator<Item = &str> {
        self.transposed.iter().map(String::as_str)
    }

    pub fn map_var(&self, v: Var) -> Var {
        let k = v.key();
        if self.transposed.contains(&*k.arrow) {
            Var::new(&k.arrow, k.col, k.row)
        } else {
            v
        }
    }

    /// Transports a polynomial across the relabeling (the map is an involution).
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        if self.is_identity() {
            return p.clone();
        }
        p.rename(|v| self.map_var(v))
    }
}

#[cfg(test)]
mod tests {
    use super::presets;
    use super::*;

    fn d(size: usize, starred: bool) -> DimEntry {
        DimEntry { size, starred }
    }

    fn arrow(id: &str, from: usize, to: usize) -> Arrow {
        Arrow { id: id.into(), from, to }
    }

    #[test]
    fn example_one_classifies() {
        let rep = presets::example1(2, 2);
        assert_eq!(rep.classify("a1").unwrap(), ArrowCase::Case1);
        assert_eq!(rep.classify("b").unwrap(), ArrowCase::Case2);
        assert_eq!(rep.classify("c").unwrap(), ArrowCase::Case3);
        assert_eq!(rep.factors().len(), 1);
    }

    #[test]
    fn empty_quiver_is_valid() {
        let rep = MixedRep::new(0, vec![], vec![], vec![], vec![]).unwrap();
        assert!(rep.factors().is_empty());
    }

    #[test]
    fn singleton_pair_is_rejected() {
        let err = MixedRep::new(1, vec![], vec![vec![1]], vec![], vec![d(1, false)]);
        assert!(matches!(err, Err(QuiverError::PartitionViolation(_))));
    }

    #[test]
    fn overlap_and_uncovered_vertices_are_rejected() {
        let dims = vec![d(1, false), d(1, true)];
        let overlap = MixedRep::new(2, vec![1], vec![vec![1, 2]], vec![], dims.clone());
        assert!(matches!(overlap, Err(QuiverError::PartitionViolation(_))));
        let uncovered = MixedRep::new(2, vec![1], vec![], vec![], vec![d(1, false); 2]);
        assert!(matches!(uncovered, Err(QuiverError::PartitionViolation(_))));
    }

    #[test]
    fn incompatible_and_dangling() {
        let e = MixedRep::new(2, vec![], vec![vec![1, 2]], vec![], vec![d(2, false), d(3, true)]);
        assert!(matches!(e, Err(QuiverError::IncompatibleDimension { .. })));
        let e = MixedRep::new(1, vec![1], vec![], vec![arrow("a", 1, 2)], vec![d(1, false)]);
        assert!(matches!(e, Err(QuiverError::DanglingArrow { .. })));
    }

    #[test]
    fn star_pattern_is_enforced() {
        let e = MixedRep::new(1, vec![1], vec![], vec![], vec![d(1, true)]);
        assert!(matches!(e, Err(QuiverError::StarPattern(_))));
        let e = MixedRep::new(2, vec![], vec![vec![1, 2]], vec![], vec![d(1, true), d(1, true)]);
        assert!(matches!(e, Err(QuiverError::StarPattern(_))));
    }

    #[test]
    fn pair_orientation_follows_star() {
        let rep = MixedRep::new(2, vec![], vec![vec![2, 1]], vec![], vec![d(1, false), d(1, true)]).unwrap();
        assert_eq!(rep.quiver().pairs(), &[(1, 2)]);
    }

    fn two_pairs_with_case4() -> MixedRep {
        MixedRep::new(
            4,
            vec![],
            vec![vec![1, 2], vec![3, 4]],
            vec![arrow("a", 2, 4)],
            vec![d(2, false), d(2, true), d(3, false), d(3, true)],
        )
        .unwrap()
    }

    #[test]
    fn fourth_case_elimination() {
        let rep = two_pairs_with_case4();
        assert_eq!(rep.classify("a").unwrap(), ArrowCase::Case4);
        let (q1, rel) = rep.eliminate_fourth_case();
        let a = q1.arrow("a").unwrap();
        assert_eq!((a.from, a.to), (3, 1));
        assert_eq!(q1.classify("a").unwrap(), ArrowCase::Case1);
        assert_eq!(q1.arrow_shape(a), (2, 3));
        assert_eq!(rep.arrow_shape(rep.arrow("a").unwrap()), (3, 2));
        assert_eq!(rel.map_var(Var::new("a", 1, 2)), Var::new("a", 2, 1));
        let (q2, rel2) = q1.eliminate_fourth_case();
        assert_eq!(q2, q1);
        assert!(rel2.is_identity());
    }

    #[test]
    fn no_fourth_case_means_identity() {
        let rep = presets::example1(1, 2);
        let (q, rel) = rep.eliminate_fourth_case();
        assert_eq!(q, rep);
        assert!(rel.is_identity());
    }

    #[test]
    fn multidegree_parsing() {
        let rep = presets::example1(1, 2);
        assert_eq!(rep.parse_multidegree("a1=2,c=1").unwrap(), vec![2, 0, 1]);
        assert_eq!(rep.parse_multidegree("2,1,1").unwrap(), vec![2, 1, 1]);
        assert!(rep.parse_multidegree("2,1").is_err());
        assert!(matches!(rep.parse_multidegree("z=1"), Err(QuiverError::UnknownArrow(_))));
    }
}
