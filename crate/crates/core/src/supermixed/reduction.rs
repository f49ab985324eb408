//! Construction of the mixed quiver `Q'` and pushing its invariants down to
//! the supermixed space.

use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

use super::{standard_j, ComponentShape, GroupKind, SupermixedError, SupermixedSpec};
use crate::algebra::{Field, Matrix, Polynomial, Scalar, Var};
use crate::invariant::{reduce_to, Invariant, Provenance};
use crate::quiver::{Arrow, DimEntry, Factor, MixedRep, RawQuiver};

/// How the image of one arrow of `Q'` is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubstitutionKind {
    /// a fixed form matrix on an added arrow
    Constant,
    /// the parametrization of a restricted component
    Shape,
}

/// Image of `X(arrow)` as a matrix of polynomials in the coordinates of the
/// supermixed space, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pub arrow: String,
    pub kind: SubstitutionKind,
    pub rows: usize,
    pub cols: usize,
    #[serde(serialize_with = "display_entries")]
    pub entries: Vec<Polynomial>,
}

fn display_entries<S: Serializer>(entries: &[Polynomial], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(entries.iter().map(ToString::to_string))
}

impl Substitution {
    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row * self.cols + col]
    }

    fn constant(arrow: &str, m: &Matrix<Scalar>) -> Self {
        Substitution {
            arrow: arrow.to_string(),
            kind: SubstitutionKind::Constant,
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().cloned().map(Polynomial::constant).collect(),
        }
    }

    /// Evaluates a constant substitution.
    pub fn constant_matrix(&self, field: Field) -> Option<Matrix<Scalar>> {
        let mut data = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            match e.total_degree() {
                None => data.push(field.zero()),
                Some(0) => data.push(e.coeff(&crate::algebra::Monomial::one())),
                Some(_) => return None,
            }
        }
        Some(Matrix::from_rows(field, self.rows, self.cols, data))
    }
}

/// The pair of added arrows carrying the form of one factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormPair {
    pub group: GroupKind,
    /// a vertex of the factor in the base quiver
    pub vertex: usize,
    pub b: String,
    pub c: String,
}

/// The mixed quiver `Q'` and the map from its coordinates to those of the
/// supermixed space.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionResult {
    #[serde(serialize_with = "raw_quiver")]
    pub qprime: MixedRep,
    pub substitutions: Vec<Substitution>,
    pub forms: Vec<FormPair>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub spec: SupermixedSpec,
    pub field: Field,
}

fn raw_quiver<S: Serializer>(rep: &MixedRep, s: S) -> Result<S::Ok, S::Error> {
    RawQuiver::from_rep(rep).serialize(s)
}

impl ReductionResult {
    pub fn substitution(&self, arrow: &str) -> Option<&Substitution> {
        self.substitutions.iter().find(|s| s.arrow == arrow)
    }

    pub fn substitution_mut(&mut self, arrow: &str) -> Option<&mut Substitution> {
        self.substitutions.iter_mut().find(|s| s.arrow == arrow)
    }
}

/// Coordinate arrow id of a restricted component; loops of symplectic
/// type are parametrized through `S = Y J`, stored under `{a}.J`.
pub(crate) fn coordinate_arrow(spec: &SupermixedSpec, a: &Arrow) -> String {
    match spec.shape(&a.id) {
        ComponentShape::LieSp | ComponentShape::LieSpSkew if a.from == a.to => format!("{}.J", a.id),
        _ => a.id.clone(),
    }
}

/// Whether the coordinates of a restricted component form a skew matrix.
pub(crate) fn skew_coordinates(shape: ComponentShape) -> bool {
    matches!(shape, ComponentShape::Skew | ComponentShape::LieSpSkew)
}

/// Symmetric or skew matrix of polynomials in coordinates `y[id][i][j]`,
/// `i <= j` (`i < j` when skew).
fn coordinate_matrix(field: Field, id: &str, d: usize, skew: bool) -> Matrix<Polynomial> {
    Matrix::from_fn(field, d, d, |i, j| {
        let (lo, hi) = (i.min(j), i.max(j));
        if skew && i == j {
            return Polynomial::zero(field);
        }
        let p = Polynomial::var(field, Var::new(id, lo as u32 + 1, hi as u32 + 1));
        if skew && i > j {
            p.neg()
        } else {
            p
        }
    })
}

fn shape_substitution(spec: &SupermixedSpec, a: &Arrow, field: Field) -> Result<Substitution, SupermixedError> {
    let shape = spec.shape(&a.id);
    let (rows, cols) = spec.base.arrow_shape(a);
    let id = coordinate_arrow(spec, a);
    let s = coordinate_matrix(field, &id, rows, skew_coordinates(shape));
    let y = if a.from == a.to && matches!(shape, ComponentShape::LieSp | ComponentShape::LieSpSkew) {
        // Y = -S J, so that S = Y J
        let j = standard_j(field, rows)?.map(|c| Polynomial::constant(c.neg()));
        s.mul(&j)?
    } else {
        s
    };
    Ok(Substitution { arrow: a.id.clone(), kind: SubstitutionKind::Shape, rows, cols, entries: y.entries().to_vec() })
}

fn fresh_id(used: &mut BTreeSet<String>, base: &str) -> String {
    let id = if used.contains(base) {
        (1..).map(|k| format!("{base}{k}")).find(|c| !used.contains(c)).expect("unbounded")
    } else {
        base.to_string()
    };
    used.insert(id.clone());
    id
}

/// Builds `Q'`: every orthogonal or symplectic factor receives arrows
/// `b: i -> j*` and `c: j* -> i`, an ordinary vertex `i` first being paired
/// with a new starred vertex. The substitutions send `X(b), X(c)` to
/// `J, -J` (symplectic) or `I, I` (orthogonal) and restricted components to
/// their parametrizations.
pub fn build_reduction(spec: &SupermixedSpec, field: Field) -> Result<ReductionResult, SupermixedError> {
    if spec.has_orthogonal() && field.characteristic() == 2 {
        return Err(SupermixedError::OddCharRequired(field));
    }
    let base = &spec.base;
    let q = base.quiver();
    let mut n = q.vertex_count();
    let mut ordinary: Vec<usize> = q.ordinary().to_vec();
    let mut pairs: Vec<Vec<usize>> = q.pairs().iter().map(|&(i, j)| vec![i, j]).collect();
    let mut arrows: Vec<Arrow> = q.arrows().to_vec();
    let mut dims: Vec<DimEntry> = base.dims().entries().to_vec();
    let mut used: BTreeSet<String> = arrows.iter().map(|a| a.id.clone()).collect();
    let mut substitutions = Vec::new();
    let mut forms = Vec::new();
    let mut notes = Vec::new();

    for a in q.arrows() {
        if spec.shape(&a.id) != ComponentShape::Full {
            substitutions.push(shape_substitution(spec, a, field)?);
        }
    }

    for (u, factor) in base.factors().iter().enumerate() {
        let group = spec.groups[u];
        if group == GroupKind::GL {
            continue;
        }
        let d = base.factor_dim(u);
        let (i, j) = match *factor {
            Factor::Ordinary(v) => {
                n += 1;
                ordinary.retain(|&w| w != v);
                pairs.push(vec![v, n]);
                dims.push(DimEntry { size: d, starred: true });
                notes.push(format!("vertex {v} paired with new starred vertex {n}"));
                (v, n)
            }
            Factor::Pair(k) => q.pairs()[k],
        };
        let b = fresh_id(&mut used, "b");
        let c = fresh_id(&mut used, "c");
        arrows.push(Arrow { id: b.clone(), from: i, to: j });
        arrows.push(Arrow { id: c.clone(), from: j, to: i });
        let (xb, xc) = match group {
            GroupKind::Sp => {
                let jm = standard_j(field, d).map_err(|_| SupermixedError::OddSymplectic { vertex: i, d })?;
                let neg = jm.neg();
                (jm, neg)
            }
            _ => (Matrix::identity(field, d), Matrix::identity(field, d)),
        };
        substitutions.push(Substitution::constant(&b, &xb));
        substitutions.push(Substitution::constant(&c, &xc));
        forms.push(FormPair { group, vertex: i, b, c });
    }

    let qprime = MixedRep::new(n, ordinary, pairs, arrows, dims)?;
    Ok(ReductionResult { qprime, substitutions, forms, notes, spec: spec.clone(), field })
}

/// Restricts an invariant of `Q'` to the supermixed space.
pub fn push_invariant(inv: &Invariant, result: &ReductionResult) -> Result<Invariant, SupermixedError> {
    let poly = reduce_to(&inv.poly, result.field)?;
    let mut bad = None;
    let pushed = poly.substitute(|v: Var| {
        let k = v.key();
        let s = result.substitution(&k.arrow)?;
        let (r, c) = (k.row as usize, k.col as usize);
        if r == 0 || c == 0 || r > s.rows || c > s.cols {
            bad = Some(format!(
                "variable {} outside the {}x{} arrow `{}`",
                Polynomial::var(result.field, v),
                s.rows,
                s.cols,
                s.arrow
            ));
            return Some(Polynomial::zero(result.field));
        }
        Some(s.entry(r - 1, c - 1).clone())
    });
    if let Some(msg) = bad {
        return Err(SupermixedError::ShapeMismatch(msg));
    }
    Ok(Invariant {
        poly: pushed,
        provenance: Provenance::Specialized { map: "restrict".into(), from: Box::new(inv.provenance.clone()) },
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::invariant::generator;
    use crate::quiver::{presets, ArrowCase};

    const Q: Field = Field::Rational;

    fn sp_loop(d: usize) -> SupermixedSpec {
        SupermixedSpec::new(presets::one_loop(d), vec![GroupKind::Sp], BTreeMap::new()).unwrap()
    }

    #[test]
    fn one_symplectic_loop_becomes_example_one() {
        let r = build_reduction(&sp_loop(2), Q).unwrap();
        let e1 = presets::example1(0, 2);
        let qp = r.qprime.quiver();
        assert_eq!(qp.pairs(), &[(1, 2)]);
        assert!(qp.ordinary().is_empty());
        assert_eq!(r.qprime.dims(), e1.with_sizes(&[2, 2]).unwrap().dims());
        assert_eq!(r.qprime.classify("b").unwrap(), ArrowCase::Case2);
        assert_eq!(r.qprime.classify("c").unwrap(), ArrowCase::Case3);
        assert_eq!(r.forms.len(), 1);
    }

    #[test]
    fn all_general_linear_adds_nothing() {
        let spec = SupermixedSpec::trivial(presets::example1(2, 2));
        let r = build_reduction(&spec, Q).unwrap();
        assert_eq!(r.qprime, spec.base);
        assert!(r.substitutions.is_empty() && r.forms.is_empty());
    }

    #[test]
    fn added_ids_avoid_existing_ones() {
        let spec = SupermixedSpec::new(presets::example1(1, 2), vec![GroupKind::O], BTreeMap::new()).unwrap();
        let r = build_reduction(&spec, Q).unwrap();
        assert_eq!((r.forms[0].b.as_str(), r.forms[0].c.as_str()), ("b1", "c1"));
    }

    #[test]
    fn orthogonal_needs_odd_characteristic() {
        let spec = SupermixedSpec::new(presets::one_loop(2), vec![GroupKind::O], BTreeMap::new()).unwrap();
        let e = build_reduction(&spec, Field::Prime(2));
        assert_eq!(e.unwrap_err(), SupermixedError::OddCharRequired(Field::Prime(2)));
        assert!(build_reduction(&spec, Field::Prime(3)).is_ok());
    }

    #[test]
    fn symmetric_component_is_identified() {
        let shapes = BTreeMap::from([("b".to_string(), ComponentShape::Symmetric)]);
        let spec = SupermixedSpec::new(presets::example1(0, 2), vec![GroupKind::GL], shapes).unwrap();
        let r = build_reduction(&spec, Q).unwrap();
        let s = r.substitution("b").unwrap();
        assert_eq!(s.entry(0, 1), s.entry(1, 0));
        assert_eq!(s.entry(1, 0).to_string(), Polynomial::var(Q, Var::new("b", 1, 2)).to_string());
    }

    #[test]
    fn pushed_traces() {
        let r = build_reduction(&sp_loop(2), Q).unwrap();
        let cb = generator(&r.qprime, &"c,b".parse().unwrap(), 1, Q).unwrap();
        // tr(X(c) X(b)) = tr(-J J) = d
        assert_eq!(push_invariant(&cb, &r).unwrap().poly, Polynomial::from_i64(Q, 2));
        let acb = generator(&r.qprime, &"a,c,b".parse().unwrap(), 1, Q).unwrap();
        let tr_a = generator(&presets::one_loop(2), &"a".parse().unwrap(), 1, Q).unwrap();
        assert_eq!(push_invariant(&acb, &r).unwrap().poly, tr_a.poly);
    }

    #[test]
    fn lie_loop_parametrization() {
        let shapes = BTreeMap::from([("a".to_string(), ComponentShape::LieSp)]);
        let spec = SupermixedSpec::new(presets::one_loop(2), vec![GroupKind::Sp], shapes).unwrap();
        let r = build_reduction(&spec, Q).unwrap();
        let s = r.substitution("a").unwrap();
        let y = Matrix::from_rows(Q, 2, 2, s.entries.clone());
        let j = standard_j(Q, 2).unwrap().map(|c| Polynomial::constant(c.clone()));
        let yj = y.mul(&j).unwrap();
        assert_eq!(yj.get(0, 1), yj.get(1, 0));
        assert_eq!(yj.get(0, 0), &Polynomial::var(Q, Var::new("a.J", 1, 1)));
    }

    #[test]
    fn out_of_range_variable() {
        let r = build_reduction(&sp_loop(2), Q).unwrap();
        let inv =
            Invariant { poly: Polynomial::var(Q, Var::new("b", 3, 1)), provenance: Provenance::Basis { index: 0 } };
        assert!(matches!(push_invariant(&inv, &r), Err(SupermixedError::ShapeMismatch(_))));
    }
}
