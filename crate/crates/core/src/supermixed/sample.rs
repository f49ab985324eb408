//! Random points and group elements of supermixed spaces, the exact
//! invariance and relation checks, and the comparison with the oracle.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use super::reduction::{coordinate_arrow, skew_coordinates};
use super::{standard_j, ComponentShape, GroupKind, ReductionResult, SupermixedError, SupermixedSpec};
use crate::algebra::{random_invertible, random_scalar, Field, Matrix, Monomial, RowEchelon, Scalar, Var};
use crate::invariant::{act, generator, reduce_to, GroupElement, Invariant, Point};
use crate::oracle::{invariant_dim_with, Budgets, OracleError};
use crate::quiver::{Arrow, DoubledQuiver};
use crate::words::{base_vertex, enumerate_closed_words, Dedupe};

/// Values of the coordinates of a supermixed space.
pub type Coordinates = BTreeMap<Var, Scalar>;

fn random_square<R: Rng + ?Sized>(field: Field, d: usize, skew: bool, rng: &mut R) -> Matrix<Scalar> {
    let mut m = Matrix::zeros(field, d, d);
    for i in 0..d {
        for j in i..d {
            if skew && i == j {
                continue;
            }
            let x = random_scalar(field, rng);
            m.set(j, i, if skew { x.neg() } else { x.clone() });
            m.set(i, j, x);
        }
    }
    m
}

/// `(I - H)⁻¹ (I + H)`, `None` when `I - H` is singular.
fn cayley(h: &Matrix<Scalar>) -> Option<Matrix<Scalar>> {
    let id = Matrix::identity(h.field(), h.rows());
    let minus = id.add(&h.neg()).ok()?.inverse().ok()?;
    minus.mul(&id.add(h).ok()?).ok()
}

fn preserves(g: &Matrix<Scalar>, form: &Matrix<Scalar>) -> bool {
    g.transpose().mul(form).and_then(|m| m.mul(g)).is_ok_and(|m| &m == form)
}

/// Cayley transform of `J S` with `S` random symmetric, verified to
/// preserve `J`; resamples on singular `I - H`.
pub fn cayley_symplectic<R: Rng + ?Sized>(
    field: Field,
    d: usize,
    rng: &mut R,
) -> Result<Matrix<Scalar>, SupermixedError> {
    let j = standard_j(field, d)?;
    loop {
        let h = j.mul(&random_square(field, d, false, rng))?;
        if let Some(g) = cayley(&h).filter(|g| preserves(g, &j)) {
            return Ok(g);
        }
    }
}

/// Cayley transform of a random skew matrix, composed with a reflection
/// with probability one half so that both components are reached.
pub fn cayley_orthogonal<R: Rng + ?Sized>(
    field: Field,
    d: usize,
    rng: &mut R,
) -> Result<Matrix<Scalar>, SupermixedError> {
    if field.characteristic() == 2 {
        return Err(SupermixedError::OddCharRequired(field));
    }
    let id = Matrix::identity(field, d);
    loop {
        let Some(mut g) = cayley(&random_square(field, d, true, rng)) else {
            continue;
        };
        if d > 0 && rng.gen_bool(0.5) {
            let mut r = id.clone();
            r.set(0, 0, field.one().neg());
            g = g.mul(&r)?;
        }
        if preserves(&g, &id) {
            return Ok(g);
        }
    }
}

/// One element of the product of the groups of a supermixed space.
pub fn random_subgroup_element<R: Rng + ?Sized>(
    spec: &SupermixedSpec,
    field: Field,
    rng: &mut R,
) -> Result<GroupElement, SupermixedError> {
    let mut mats = Vec::with_capacity(spec.groups.len());
    for (u, &g) in spec.groups.iter().enumerate() {
        let d = spec.base.factor_dim(u);
        mats.push(match g {
            GroupKind::GL => random_invertible(field, d, rng),
            GroupKind::Sp => cayley_symplectic(field, d, rng)?,
            GroupKind::O => cayley_orthogonal(field, d, rng)?,
        });
    }
    Ok(GroupElement { mats })
}

/// Random coordinates and the matching point of the base representation.
pub fn random_supermixed_point<R: Rng + ?Sized>(
    result: &ReductionResult,
    field: Field,
    rng: &mut R,
) -> Result<(Coordinates, Point), SupermixedError> {
    let spec = &result.spec;
    let mut coords = Coordinates::new();
    let mut point = Point::new();
    for a in spec.base.arrows() {
        let (rows, cols) = spec.base.arrow_shape(a);
        let shape = spec.shape(&a.id);
        if shape == ComponentShape::Full {
            let mut m = Matrix::zeros(field, rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    let x = random_scalar(field, rng);
                    coords.insert(Var::new(&a.id, i as u32 + 1, j as u32 + 1), x.clone());
                    m.set(i, j, x);
                }
            }
            point.insert(a.id.clone(), m);
            continue;
        }
        let id = coordinate_arrow(spec, a);
        let skew = skew_coordinates(shape);
        for i in 0..rows {
            for j in i..cols {
                if !(skew && i == j) {
                    coords.insert(Var::new(&id, i as u32 + 1, j as u32 + 1), random_scalar(field, rng));
                }
            }
        }
        let sub = result
            .substitution(&a.id)
            .ok_or_else(|| SupermixedError::ShapeMismatch(format!("no substitution for `{}`", a.id)))?;
        let data = sub.entries.iter().map(|e| evaluate(&reduce_to(e, field)?, &coords)).collect::<Result<_, _>>()?;
        point.insert(a.id.clone(), Matrix::from_rows(field, rows, cols, data));
    }
    Ok((coords, point))
}

fn evaluate(p: &crate::algebra::Polynomial, coords: &Coordinates) -> Result<Scalar, SupermixedError> {
    if let Some(v) = p.variables().into_iter().find(|v| !coords.contains_key(v)) {
        return Err(SupermixedError::ShapeMismatch(format!(
            "coordinate {} is not a coordinate of the supermixed space",
            crate::algebra::Polynomial::var(p.field(), v)
        )));
    }
    Ok(p.eval(|v| coords[&v].clone()))
}

/// Reads coordinates back from a point, `None` when a restricted component
/// left its subspace.
fn coordinates_of(spec: &SupermixedSpec, point: &Point, field: Field) -> Result<Option<Coordinates>, SupermixedError> {
    let mut coords = Coordinates::new();
    for a in spec.base.arrows() {
        let y = &point[&a.id];
        let shape = spec.shape(&a.id);
        let s = match shape {
            ComponentShape::Full => {
                for i in 0..y.rows() {
                    for j in 0..y.cols() {
                        coords.insert(Var::new(&a.id, i as u32 + 1, j as u32 + 1), y.get(i, j).clone());
                    }
                }
                continue;
            }
            ComponentShape::LieSp | ComponentShape::LieSpSkew if is_loop(a) => y.mul(&standard_j(field, y.rows())?)?,
            _ => y.clone(),
        };
        let skew = skew_coordinates(shape);
        let inside = if skew { s.is_alternating() } else { s.is_symmetric() };
        if !inside {
            return Ok(None);
        }
        let id = coordinate_arrow(spec, a);
        for i in 0..s.rows() {
            for j in i..s.cols() {
                if !(skew && i == j) {
                    coords.insert(Var::new(&id, i as u32 + 1, j as u32 + 1), s.get(i, j).clone());
                }
            }
        }
    }
    Ok(Some(coords))
}

fn is_loop(a: &Arrow) -> bool {
    a.from == a.to
}

/// Outcome of the supermixed invariance and relation trials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupermixedReport {
    pub field: Field,
    pub trials: usize,
    /// trials with `f(x·g) != f(x)`
    pub invariance_failures: usize,
    /// trials where a form substitution broke its relations
    pub relation_failures: usize,
    /// trials where the action left a restricted subspace
    pub shape_failures: usize,
    pub passed: bool,
}

/// Relations of the substituted forms: `X(b)` alternating (symplectic) or
/// symmetric (orthogonal), and `X(b) X(c) = I`.
fn relations_hold(result: &ReductionResult, field: Field) -> bool {
    result.forms.iter().all(|f| {
        let (Some(b), Some(c)) = (
            result.substitution(&f.b).and_then(|s| s.constant_matrix(field)),
            result.substitution(&f.c).and_then(|s| s.constant_matrix(field)),
        ) else {
            return false;
        };
        let shape_ok = match f.group {
            GroupKind::Sp => b.is_alternating(),
            GroupKind::O => b.is_symmetric(),
            GroupKind::GL => true,
        };
        let id = Matrix::identity(field, b.rows());
        shape_ok && b.mul(&c).is_ok_and(|m| m == id)
    })
}

/// Exact random checks of a pushed invariant: invariance under the
/// supermixed group, closure of the restricted subspaces, and the form
/// relations behind the substitution.
pub fn verify_supermixed<R: Rng + ?Sized>(
    pushed: &Invariant,
    result: &ReductionResult,
    trials: usize,
    field: Field,
    rng: &mut R,
) -> Result<SupermixedReport, SupermixedError> {
    if result.spec.has_orthogonal() && field.characteristic() == 2 {
        return Err(SupermixedError::OddCharRequired(field));
    }
    let poly = reduce_to(&pushed.poly, field)?;
    let field_result = result.field;
    let mut report = SupermixedReport {
        field,
        trials,
        invariance_failures: 0,
        relation_failures: 0,
        shape_failures: 0,
        passed: false,
    };
    let relations = relations_hold(result, field_result);
    for _ in 0..trials {
        if !relations {
            report.relation_failures += 1;
        }
        let (coords, point) = random_supermixed_point(result, field, rng)?;
        let g = random_subgroup_element(&result.spec, field, rng)?;
        let moved = act(&result.spec.base, &point, &g)?;
        match coordinates_of(&result.spec, &moved, field)? {
            None => report.shape_failures += 1,
            Some(after) => {
                if evaluate(&poly, &coords)? != evaluate(&poly, &after)? {
                    report.invariance_failures += 1;
                }
            }
        }
    }
    report.passed = report.invariance_failures == 0 && report.relation_failures == 0 && report.shape_failures == 0;
    Ok(report)
}

/// Rank of the restricted generators of `Q'` against the oracle dimension
/// of the supermixed invariants at one multidegree of the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub multidegree: Vec<u32>,
    pub word_bound: usize,
    pub generators: usize,
    pub span_dim: usize,
    pub oracle_dim: usize,
    pub agree: bool,
}

/// Restricts every generator `σ_j(w)` of `Q'` with `|w| <= word_bound`,
/// takes all products of base multidegree `md`, and compares their rank
/// with the oracle dimension for the groups of the spec. Only full
/// components are supported.
pub fn oracle_comparison(
    result: &ReductionResult,
    md: &[u32],
    word_bound: usize,
    budgets: Budgets,
) -> Result<OracleComparison, OracleError> {
    let spec = &result.spec;
    if let Some((a, &s)) = spec.shapes.iter().find(|(_, &s)| s != ComponentShape::Full) {
        return Err(OracleError::OutsideComponent(format!("arrow `{a}` is restricted to {s:?}")));
    }
    let field = Field::Rational;
    let rational = if result.field == field {
        result.clone()
    } else {
        super::build_reduction(spec, field).map_err(|e| OracleError::OutsideComponent(e.to_string()))?
    };
    let space = invariant_dim_with(&spec.base, md, budgets.max_monomials, &spec.groups)?;
    let index: rustc_hash::FxHashMap<Monomial, usize> =
        space.monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();

    let (normal, _) = rational.qprime.eliminate_fourth_case();
    let dq = DoubledQuiver::new(&normal)?;
    let total: u32 = md.iter().sum();
    let mut atoms = Vec::new();
    for w in enumerate_closed_words(&dq, word_bound, Dedupe::RotationTranspose) {
        let size = base_vertex(&dq, &w).map(|v| dq.dim(v)).map_err(crate::invariant::InvariantError::from)?;
        for j in 1..=size {
            let g = generator(&rational.qprime, &w, j, field)?;
            let pushed =
                super::push_invariant(&g, &rational).map_err(|e| OracleError::OutsideComponent(e.to_string()))?;
            if pushed.poly.total_degree().is_some_and(|t| t <= total) {
                atoms.push(pushed);
            }
        }
    }
    let usable = crate::oracle::usable_atoms(&spec.base, md, &atoms)?;
    let (echelon, _): (RowEchelon, usize) = crate::oracle::product_echelon(&usable, md, &index, budgets)?;
    let span_dim = echelon.rank();
    Ok(OracleComparison {
        multidegree: md.to_vec(),
        word_bound,
        generators: usable.len(),
        span_dim,
        oracle_dim: space.dim(),
        agree: span_dim == space.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::presets;
    use crate::supermixed::{build_reduction, push_invariant};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rational;
    const F101: Field = Field::Prime(101);

    fn spec(rep: crate::quiver::MixedRep, groups: Vec<GroupKind>, shapes: &[(&str, ComponentShape)]) -> SupermixedSpec {
        let shapes = shapes.iter().map(|(a, s)| (a.to_string(), *s)).collect();
        SupermixedSpec::new(rep, groups, shapes).unwrap()
    }

    #[test]
    fn samplers_land_in_their_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [Q, F101] {
            for d in [2, 4] {
                let j = standard_j(field, d).unwrap();
                let g = cayley_symplectic(field, d, &mut rng).unwrap();
                assert!(preserves(&g, &j));
                let o = cayley_orthogonal(field, d, &mut rng).unwrap();
                assert!(preserves(&o, &Matrix::identity(field, d)));
            }
        }
    }

    #[test]
    fn reflections_are_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let dets: Vec<Scalar> = (0..20).map(|_| cayley_orthogonal(F101, 3, &mut rng).unwrap().det().unwrap()).collect();
        assert!(dets.iter().any(|d| d.is_one()));
        assert!(dets.iter().any(|d| !d.is_one()));
    }

    #[test]
    fn pushed_generators_are_invariant() {
        let cases = [
            spec(presets::one_loop(2), vec![GroupKind::Sp], &[]),
            spec(presets::loops(2, 3, true), vec![GroupKind::O], &[]),
            spec(presets::example1(1, 2), vec![GroupKind::Sp], &[("b", ComponentShape::Skew)]),
            spec(presets::example1(1, 2), vec![GroupKind::GL], &[("c", ComponentShape::Symmetric)]),
            spec(presets::one_loop(2), vec![GroupKind::Sp], &[("a", ComponentShape::LieSp)]),
            spec(presets::one_loop(4), vec![GroupKind::Sp], &[("a", ComponentShape::LieSpSkew)]),
            spec(presets::one_loop(3), vec![GroupKind::O], &[("a", ComponentShape::Skew)]),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for s in cases {
            let r = build_reduction(&s, Q).unwrap();
            let dq = DoubledQuiver::new(&r.qprime.eliminate_fourth_case().0).unwrap();
            for w in enumerate_closed_words(&dq, 3, Dedupe::RotationTranspose) {
                let g = generator(&r.qprime, &w, 1, Q).unwrap();
                let p = push_invariant(&g, &r).unwrap();
                let rep = verify_supermixed(&p, &r, 10, F101, &mut rng).unwrap();
                assert!(rep.passed, "{w}: {rep:?}");
            }
        }
    }

    #[test]
    fn corrupted_form_breaks_relations() {
        let mut r = build_reduction(&spec(presets::one_loop(2), vec![GroupKind::Sp], &[]), Q).unwrap();
        let j = standard_j(Q, 2).unwrap();
        let c = r.forms[0].c.clone();
        r.substitution_mut(&c).unwrap().entries =
            j.entries().iter().cloned().map(crate::algebra::Polynomial::constant).collect();
        let g = generator(&r.qprime, &"a,c,b".parse().unwrap(), 1, Q).unwrap();
        let p = push_invariant(&g, &r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let rep = verify_supermixed(&p, &r, 5, F101, &mut rng).unwrap();
        assert_eq!(rep.relation_failures, 5);
        assert!(!rep.passed);
    }

    #[test]
    fn non_invariant_is_caught() {
        let r = build_reduction(&spec(presets::one_loop(2), vec![GroupKind::Sp], &[]), Q).unwrap();
        let y = Invariant {
            poly: crate::algebra::Polynomial::var(Q, Var::new("a", 1, 1)),
            provenance: crate::invariant::Provenance::Basis { index: 0 },
        };
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rep = verify_supermixed(&y, &r, 20, F101, &mut rng).unwrap();
        assert!(rep.invariance_failures > 0);
    }

    #[test]
    fn symplectic_loop_matches_oracle() {
        let r = build_reduction(&spec(presets::one_loop(2), vec![GroupKind::Sp], &[]), Q).unwrap();
        let c = oracle_comparison(&r, &[2], 4, Budgets::default()).unwrap();
        assert_eq!((c.oracle_dim, c.span_dim), (2, 2));
        assert!(c.agree);
    }

    #[test]
    fn orthogonal_oracle_sees_only_rotations() {
        // degree 1: tr(a) for O(2), plus a12 - a21 for SO(2)
        let r = build_reduction(&spec(presets::one_loop(2), vec![GroupKind::O], &[]), Q).unwrap();
        let c = oracle_comparison(&r, &[1], 4, Budgets::default()).unwrap();
        assert_eq!((c.span_dim, c.oracle_dim), (1, 2));
        let c = oracle_comparison(&r, &[2], 4, Budgets::default()).unwrap();
        assert_eq!((c.span_dim, c.oracle_dim), (3, 4));
        let r3 = build_reduction(&spec(presets::one_loop(3), vec![GroupKind::O], &[]), Q).unwrap();
        let c = oracle_comparison(&r3, &[2], 4, Budgets::default()).unwrap();
        assert!(c.agree, "{c:?}");
    }
}
