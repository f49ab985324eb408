//! The doubled quiver: every arrow `a` gains a partner `ā` whose matrix is
//! `Y(a)ᵗ`, and every ordinary vertex `v` gains a dual copy `v*`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::{ArrowCase, MixedRep, QuiverError};
use crate::algebra::natural_cmp;

/// Vertex of the doubled quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DVertex {
    /// an original vertex
    V(usize),
    /// the dual copy of an ordinary vertex
    Star(usize),
}

impl fmt::Display for DVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DVertex::V(v) => write!(f, "{v}"),
            DVertex::Star(v) => write!(f, "{v}*"),
        }
    }
}

impl Serialize for DVertex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An arrow of the doubled quiver: an original arrow, possibly barred.
///
/// Ordered by arrow id (digit runs compared numerically), unbarred first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub arrow: Arc<str>,
    pub barred: bool,
}

impl Letter {
    pub fn plain(arrow: &str) -> Self {
        Letter { arrow: Arc::from(arrow), barred: false }
    }

    pub fn bar(arrow: &str) -> Self {
        Letter { arrow: Arc::from(arrow), barred: true }
    }

    pub fn toggled(&self) -> Self {
        Letter { arrow: self.arrow.clone(), barred: !self.barred }
    }

    /// Id in the doubled quiver: `a` or `a_bar`.
    pub fn doubled_id(&self) -> String {
        if self.barred {
            format!("{}_bar", self.arrow)
        } else {
            self.arrow.to_string()
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.arrow, &other.arrow).then(self.barred.cmp(&other.barred))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Written as the arrow id with a trailing apostrophe when barred.
impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.arrow, if self.barred { "'" } else { "" })
    }
}

/// One arrow of the doubled quiver with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DArrow {
    pub id: String,
    #[serde(skip)]
    pub letter: Letter,
    pub from: DVertex,
    pub to: DVertex,
}

/// `Q^(d)` for a mixed representation without fourth-case arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubledQuiver {
    rep: MixedRep,
    vertices: Vec<DVertex>,
    /// original arrows then their bars, in declaration order
    arrows: Vec<DArrow>,
}

impl DoubledQuiver {
    pub fn new(rep: &MixedRep) -> Result<Self, QuiverError> {
        if let Some(a) = rep.arrows().iter().find(|a| rep.classify_arrow(a) == ArrowCase::Case4) {
            return Err(QuiverError::FourthCasePresent(a.id.clone()));
        }
        let n = rep.quiver().vertex_count();
        let mut vertices: Vec<DVertex> = (1..=n).map(DVertex::V).collect();
        vertices.extend(rep.quiver().ordinary().iter().map(|&v| DVertex::Star(v)));
        let dual = |v: usize| match rep.partner(v) {
            Some((_, w)) => DVertex::V(w),
            None => DVertex::Star(v),
        };
        let mut arrows: Vec<DArrow> = rep
            .arrows()
            .iter()
            .map(|a| DArrow {
                id: a.id.clone(),
                letter: Letter::plain(&a.id),
                from: DVertex::V(a.from),
                to: DVertex::V(a.to),
            })
            .collect();
        arrows.extend(rep.arrows().iter().map(|a| DArrow {
            id: format!("{}_bar", a.id),
            letter: Letter::bar(&a.id),
            from: dual(a.to),
            to: dual(a.from),
        }));
        Ok(DoubledQuiver { rep: rep.clone(), vertices, arrows })
    }

    pub fn rep(&self) -> &MixedRep {
        &self.rep
    }

    pub fn vertices(&self) -> &[DVertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[DArrow] {
        &self.arrows
    }

    /// All letters in canonical order.
    pub fn letters(&self) -> Vec<Letter> {
        let mut ls: Vec<Letter> = self.arrows.iter().map(|a| a.letter.clone()).collect();
        ls.sort();
        ls
    }

    fn find(&self, l: &Letter) -> Result<&DArrow, QuiverError> {
        let k = self.rep.arrow_index(&l.arrow)?;
        let off = if l.barred { self.rep.arrows().len() } else { 0 };
        Ok(&self.arrows[off + k])
    }

    /// `(origin, end)` of a letter.
    pub fn endpoints(&self, l: &Letter) -> Result<(DVertex, DVertex), QuiverError> {
        let a = self.find(l)?;
        Ok((a.from, a.to))
    }

    pub fn dim(&self, v: DVertex) -> usize {
        match v {
            DVertex::V(v) | DVertex::Star(v) => self.rep.dim(v),
        }
    }

    /// Shape `(rows, cols)` of `Z(l)`.
    pub fn letter_shape(&self, l: &Letter) -> Result<(usize, usize), QuiverError> {
        let (from, to) = self.endpoints(l)?;
        Ok((self.dim(to), self.dim(from)))
    }
}
