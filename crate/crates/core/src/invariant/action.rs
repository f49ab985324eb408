//! The action of `H(t)` on points of the representation space and exact
//! randomized invariance checks.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use super::{Invariant, InvariantError};
use crate::algebra::{random_invertible, random_matrix, AlgebraError, Field, Matrix, Polynomial, Scalar, Var};
use crate::quiver::{ArrowCase, MixedRep};

/// Numeric matrices `Y(a)` keyed by arrow id.
pub type Point = BTreeMap<String, Matrix<Scalar>>;

/// One invertible matrix per group factor, in [`MixedRep::factors`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub mats: Vec<Matrix<Scalar>>,
}

impl GroupElement {
    pub fn identity(rep: &MixedRep, field: Field) -> Self {
        GroupElement { mats: (0..rep.factors().len()).map(|f| Matrix::identity(field, rep.factor_dim(f))).collect() }
    }

    /// Factorwise product `self · other`.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement, AlgebraError> {
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.mul(b)).collect::<Result<_, _>>()?;
        Ok(GroupElement { mats })
    }
}

/// `Y(a) ↦ g⁻¹Yh`, `gᵗYh`, `g⁻¹Y(hᵗ)⁻¹` or `gᵗY(hᵗ)⁻¹` by arrow case, with
/// `g` the factor at the end and `h` the factor at the origin. This is a
/// right action: `act(act(x, g), h) = act(x, g·h)`.
pub fn act(rep: &MixedRep, point: &Point, g: &GroupElement) -> Result<Point, InvariantError> {
    if g.mats.len() != rep.factors().len() {
        return Err(AlgebraError::ShapeMismatch(format!(
            "{} factor matrices for {} factors",
            g.mats.len(),
            rep.factors().len()
        ))
        .into());
    }
    let mut inverses = Vec::with_capacity(g.mats.len());
    for (f, m) in g.mats.iter().enumerate() {
        if m.shape() != (rep.factor_dim(f), rep.factor_dim(f)) {
            return Err(AlgebraError::ShapeMismatch(format!("factor {f} matrix is {}x{}", m.rows(), m.cols())).into());
        }
        inverses.push(m.inverse().map_err(|_| InvariantError::Singular(f))?);
    }
    let mut out = Point::new();
    for a in rep.arrows() {
        let y = point.get(&a.id).ok_or_else(|| AlgebraError::MissingAssignment(a.id.clone()))?;
        if y.shape() != rep.arrow_shape(a) {
            return Err(AlgebraError::ShapeMismatch(format!("arrow `{}` is {}x{}", a.id, y.rows(), y.cols())).into());
        }
        let gt = rep.factor_of(a.to);
        let hf = rep.factor_of(a.from);
        let left = match rep.classify_arrow(a) {
            ArrowCase::Case1 | ArrowCase::Case3 => inverses[gt].clone(),
            ArrowCase::Case2 | ArrowCase::Case4 => g.mats[gt].transpose(),
        };
        let right = match rep.classify_arrow(a) {
            ArrowCase::Case1 | ArrowCase::Case2 => g.mats[hf].clone(),
            ArrowCase::Case3 | ArrowCase::Case4 => inverses[hf].transpose(),
        };
        out.insert(a.id.clone(), left.mul(y)?.mul(&right)?);
    }
    Ok(out)
}

pub fn random_point<R: Rng + ?Sized>(rep: &MixedRep, field: Field, rng: &mut R) -> Point {
    rep.arrows()
        .iter()
        .map(|a| {
            let (r, c) = rep.arrow_shape(a);
            (a.id.clone(), random_matrix(field, r, c, rng))
        })
        .collect()
}

pub fn random_group_element<R: Rng + ?Sized>(rep: &MixedRep, field: Field, rng: &mut R) -> GroupElement {
    GroupElement { mats: (0..rep.factors().len()).map(|f| random_invertible(field, rep.factor_dim(f), rng)).collect() }
}

/// Evaluates `p` at a point; every variable must name an entry of it.
pub fn eval_at(p: &Polynomial, point: &Point) -> Result<Scalar, AlgebraError> {
    for v in p.variables() {
        let k = v.key();
        let ok = point
            .get(&*k.arrow)
            .is_some_and(|m| (1..=m.rows()).contains(&(k.row as usize)) && (1..=m.cols()).contains(&(k.col as usize)));
        if !ok {
            return Err(AlgebraError::MissingAssignment(format!("{}", Polynomial::var(p.field(), v))));
        }
    }
    Ok(p.eval(|v: Var| {
        let k = v.key();
        point[&*k.arrow].get(k.row as usize - 1, k.col as usize - 1).clone()
    }))
}

/// Brings `p` into `field`: identity for equal fields, reduction mod `p` of
/// rational coefficients otherwise.
pub fn reduce_to(p: &Polynomial, field: Field) -> Result<Polynomial, AlgebraError> {
    if p.field() == field {
        return Ok(p.clone());
    }
    match (p.field(), field) {
        (Field::Rational, Field::Prime(_)) => p
            .map_coefficients(field, |c| c.as_rational().and_then(|r| Scalar::from_rational(field, r)))
            .ok_or(AlgebraError::FieldMismatch(p.field(), field)),
        _ => Err(AlgebraError::FieldMismatch(p.field(), field)),
    }
}

/// Outcome of repeated `f(x·g) = f(x)` trials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub field: Field,
    pub trials: usize,
    pub failures: usize,
    /// trial indices (0-based) that failed
    pub failed_trials: Vec<usize>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Checks `inv(act(x, g)) = inv(x)` exactly at `trials` random pairs.
pub fn verify_invariance<R: Rng + ?Sized>(
    inv: &Invariant,
    rep: &MixedRep,
    trials: usize,
    field: Field,
    rng: &mut R,
) -> Result<InvarianceReport, InvariantError> {
    let poly = reduce_to(&inv.poly, field)?;
    let mut failed_trials = Vec::new();
    for trial in 0..trials {
        let x = random_point(rep, field, rng);
        let g = random_group_element(rep, field, rng);
        let gx = act(rep, &x, &g)?;
        if eval_at(&poly, &x)? != eval_at(&poly, &gx)? {
            failed_trials.push(trial);
        }
    }
    Ok(InvarianceReport { field, trials, failures: failed_trials.len(), failed_trials })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::generator;
    use crate::quiver::presets;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const F101: Field = Field::Prime(101);

    #[test]
    fn identity_fixes_points() {
        let rep = presets::example1(1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_point(&rep, F101, &mut rng);
        assert_eq!(act(&rep, &x, &GroupElement::identity(&rep, F101)).unwrap(), x);
    }

    #[test]
    fn example_one_action_formula() {
        let rep = presets::example1(1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = random_point(&rep, F101, &mut rng);
        let g = random_group_element(&rep, F101, &mut rng);
        let h = &g.mats[0];
        let y = act(&rep, &x, &GroupElement { mats: vec![h.inverse().unwrap()] }).unwrap();
        let hi = h.inverse().unwrap();
        assert_eq!(y["a1"], h.mul(&x["a1"]).unwrap().mul(&hi).unwrap());
        assert_eq!(y["b"], hi.transpose().mul(&x["b"]).unwrap().mul(&hi).unwrap());
        assert_eq!(y["c"], h.mul(&x["c"]).unwrap().mul(&h.transpose()).unwrap());
    }

    #[test]
    fn right_action_composition() {
        let rep = presets::example1(1, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let x = random_point(&rep, F101, &mut rng);
            let g = random_group_element(&rep, F101, &mut rng);
            let h = random_group_element(&rep, F101, &mut rng);
            let lhs = act(&rep, &act(&rep, &x, &g).unwrap(), &h).unwrap();
            assert_eq!(lhs, act(&rep, &x, &g.compose(&h).unwrap()).unwrap());
        }
    }

    #[test]
    fn singular_elements_are_rejected() {
        let rep = presets::one_loop(2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = random_point(&rep, F101, &mut rng);
        let g = GroupElement { mats: vec![Matrix::zeros(F101, 2, 2)] };
        assert_eq!(act(&rep, &x, &g).unwrap_err(), InvariantError::Singular(0));
    }

    #[test]
    fn trace_of_cb_is_invariant_but_a_coordinate_is_not() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rep = presets::example1(0, 2);
        let cb = generator(&rep, &"c,b".parse().unwrap(), 1, Field::Rational).unwrap();
        assert!(verify_invariance(&cb, &rep, 20, F101, &mut rng).unwrap().passed());
        assert!(verify_invariance(&cb, &rep, 10, Field::Rational, &mut rng).unwrap().passed());
        let loop_rep = presets::one_loop(2);
        let y11 = Invariant {
            poly: Polynomial::var(Field::Rational, Var::new("a", 1, 1)),
            provenance: super::super::Provenance::Basis { index: 0 },
        };
        assert!(!verify_invariance(&y11, &loop_rep, 20, F101, &mut rng).unwrap().passed());
    }

    #[test]
    fn fourth_case_generators_are_invariant() {
        use crate::quiver::{Arrow, DimEntry};
        let rep = MixedRep::new(
            4,
            vec![],
            vec![vec![1, 2], vec![3, 4]],
            vec![Arrow { id: "x".into(), from: 2, to: 4 }, Arrow { id: "y".into(), from: 1, to: 3 }],
            vec![
                DimEntry { size: 2, starred: false },
                DimEntry { size: 2, starred: true },
                DimEntry { size: 2, starred: false },
                DimEntry { size: 2, starred: true },
            ],
        )
        .unwrap();
        assert!(rep.has_fourth_case());
        // x: 2 -> 4 becomes 3 -> 1, so (x, y) is closed at 1
        let g = generator(&rep, &"x,y".parse().unwrap(), 1, Field::Rational).unwrap();
        assert!(!g.poly.is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        assert!(verify_invariance(&g, &rep, 30, F101, &mut rng).unwrap().passed());
    }
}
