//! Derivations of the coordinate ring induced by the Lie algebra of the
//! acting group, and the exact invariant subspace of one multidegree.
//!
//! For `X` in the Lie algebra of the factor at the end `t(a)` and `X'` at the
//! origin `i(a)` the derivative of the coordinate action is
//! `-XY + YX'`, `XᵗY + YX'`, `-XY - YX'ᵗ` or `XᵗY - YX'ᵗ` by arrow case.
//! Over a field of characteristic zero and a connected group, a polynomial
//! is invariant iff every such derivation kills it.

use rustc_hash::FxHashMap;

use super::{require_char_zero, OracleError};
use crate::algebra::{generic_matrix, nullspace, Field, Matrix, Monomial, Polynomial, Scalar, Var};
use crate::quiver::{ArrowCase, MixedRep};
use crate::supermixed::{standard_j, GroupKind};

/// A derivation, stored by its values on the coordinate variables.
#[derive(Clone, Debug)]
pub struct DerivationOperator {
    pub label: String,
    field: Field,
    images: FxHashMap<Var, Polynomial>,
}

impl DerivationOperator {
    pub fn image(&self, v: Var) -> Polynomial {
        self.images.get(&v).cloned().unwrap_or_else(|| Polynomial::zero(self.field))
    }

    /// Extends the variable images by the Leibniz rule.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in p.terms() {
            self.apply_monomial_into(m, c, &mut out);
        }
        out
    }

    fn apply_monomial_into(&self, m: &Monomial, c: &Scalar, out: &mut Polynomial) {
        for &(v, e) in m.powers() {
            let Some(dv) = self.images.get(&v) else { continue };
            let rest = m.without_one(v).expect("variable occurs");
            let k = c.mul(&Scalar::from_i64(self.field, e as i64));
            for (dm, dc) in dv.terms() {
                out.add_term(rest.mul(dm), k.mul(dc));
            }
        }
    }

    /// `δ(pq) = δ(p)q + pδ(q)` on one pair; the rule holds by construction and
    /// this is the check made on freshly built operators.
    pub fn leibniz_holds(&self, p: &Polynomial, q: &Polynomial) -> bool {
        self.apply(&p.mul(q)) == self.apply(p).mul(q).add(&p.mul(&self.apply(q)))
    }
}

fn elementary(field: Field, d: usize, k: usize, l: usize) -> Matrix<Scalar> {
    let mut e = Matrix::zeros(field, d, d);
    e.set(k, l, field.one());
    e
}

/// A basis of the Lie algebra of `kind` in its defining `d`-dimensional
/// representation: all `E_kl` for GL, `E_kl - E_lk` for O, `J·S` with `S`
/// running over a symmetric basis for Sp.
pub(crate) fn lie_basis(field: Field, kind: GroupKind, d: usize) -> Vec<(String, Matrix<Scalar>)> {
    let mut out = Vec::new();
    match kind {
        GroupKind::GL => {
            for k in 0..d {
                for l in 0..d {
                    out.push((format!("E{}{}", k + 1, l + 1), elementary(field, d, k, l)));
                }
            }
        }
        GroupKind::O => {
            for k in 0..d {
                for l in k + 1..d {
                    let x = elementary(field, d, k, l).add(&elementary(field, d, l, k).neg()).expect("square");
                    out.push((format!("E{}{}-E{}{}", k + 1, l + 1, l + 1, k + 1), x));
                }
            }
        }
        GroupKind::Sp => {
            let j = standard_j(field, d).expect("even size checked by caller");
            for k in 0..d {
                for l in k..d {
                    let mut s = elementary(field, d, k, l);
                    if k != l {
                        s = s.add(&elementary(field, d, l, k)).expect("square");
                    }
                    out.push((format!("J*S{}{}", k + 1, l + 1), j.mul(&s).expect("square")));
                }
            }
        }
    }
    out
}

fn lift(x: &Matrix<Scalar>) -> Matrix<Polynomial> {
    x.map(|c| Polynomial::constant(c.clone()))
}

/// One derivation per Lie basis element per group factor, all factors GL.
pub fn lie_derivations(rep: &MixedRep, field: Field) -> Result<Vec<DerivationOperator>, OracleError> {
    lie_derivations_with(rep, field, &vec![GroupKind::GL; rep.factors().len()])
}

/// As [`lie_derivations`] with the group of each factor given explicitly
/// (in [`MixedRep::factors`] order).
pub fn lie_derivations_with(
    rep: &MixedRep,
    field: Field,
    groups: &[GroupKind],
) -> Result<Vec<DerivationOperator>, OracleError> {
    require_char_zero(field)?;
    if groups.len() != rep.factors().len() {
        return Err(OracleError::BadLayers(format!("{} groups for {} factors", groups.len(), rep.factors().len())));
    }
    let generic: Vec<Matrix<Polynomial>> = rep
        .arrows()
        .iter()
        .map(|a| {
            let (r, c) = rep.arrow_shape(a);
            generic_matrix(field, &a.id, r, c)
        })
        .collect();
    let mut out = Vec::new();
    for (u, &kind) in groups.iter().enumerate() {
        let d = rep.factor_dim(u);
        if kind == GroupKind::Sp && d % 2 == 1 {
            return Err(OracleError::BadLayers(format!("Sp factor {u} has odd size {d}")));
        }
        for (name, x) in lie_basis(field, kind, d) {
            let x = lift(&x);
            let xt = x.transpose();
            let mut images = FxHashMap::default();
            for (a, y) in rep.arrows().iter().zip(&generic) {
                let at_end = rep.factor_of(a.to) == u;
                let at_origin = rep.factor_of(a.from) == u;
                if !at_end && !at_origin {
                    continue;
                }
                let (rows, cols) = y.shape();
                let mut dy = Matrix::zeros(field, rows, cols);
                let case = rep.classify_arrow(a);
                if at_end {
                    let left = match case {
                        ArrowCase::Case1 | ArrowCase::Case3 => x.mul(y)?.neg(),
                        ArrowCase::Case2 | ArrowCase::Case4 => xt.mul(y)?,
                    };
                    dy = dy.add(&left)?;
                }
                if at_origin {
                    let right = match case {
                        ArrowCase::Case1 | ArrowCase::Case2 => y.mul(&x)?,
                        ArrowCase::Case3 | ArrowCase::Case4 => y.mul(&xt)?.neg(),
                    };
                    dy = dy.add(&right)?;
                }
                for i in 0..rows {
                    for j in 0..cols {
                        let p = dy.get(i, j);
                        if !p.is_zero() {
                            images.insert(Var::new(&a.id, i as u32 + 1, j as u32 + 1), p.clone());
                        }
                    }
                }
            }
            let op = DerivationOperator { label: format!("factor {u}: {name}"), field, images };
            debug_assert!(leibniz_sample(&op, rep, field));
            out.push(op);
        }
    }
    Ok(out)
}

/// Leibniz check on the product of the first and last coordinate variables.
fn leibniz_sample(op: &DerivationOperator, rep: &MixedRep, field: Field) -> bool {
    let vars = rep.variables();
    match (vars.first(), vars.last()) {
        (Some(&a), Some(&b)) => {
            let pa = Polynomial::var(field, a);
            let pb = Polynomial::var(field, b).add(&Polynomial::from_i64(field, 1));
            op.leibniz_holds(&pa, &pb)
        }
        _ => true,
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Monomial basis of the component of multidegree `md` (indexed like the
/// arrows), in descending graded lexicographic order.
pub fn component_basis(rep: &MixedRep, md: &[u32], limit: usize) -> Result<Vec<Monomial>, OracleError> {
    if md.len() != rep.arrows().len() {
        return Err(crate::quiver::QuiverError::BadMultidegree(format!("{md:?}")).into());
    }
    let mut per_arrow: Vec<(Vec<Var>, u32)> = Vec::new();
    let mut size = 1usize;
    for (a, &r) in rep.arrows().iter().zip(md) {
        let (rows, cols) = rep.arrow_shape(a);
        let vars: Vec<Var> = (1..=rows as u32)
            .flat_map(|i| (1..=cols as u32).map(move |j| (i, j)))
            .map(|(i, j)| Var::new(&a.id, i, j))
            .collect();
        let n = vars.len();
        if r > 0 {
            size = size.saturating_mul(if n == 0 { 0 } else { binomial(n + r as usize - 1, r as usize) });
            per_arrow.push((vars, r));
        }
    }
    if size > limit {
        return Err(OracleError::BudgetExceeded { what: "monomial basis", size, limit });
    }
    let mut basis = vec![Monomial::one()];
    for (vars, r) in per_arrow {
        let mut choices = Vec::new();
        combinations(&vars, r, 0, &mut Vec::new(), &mut choices);
        basis = basis.iter().flat_map(|m| choices.iter().map(move |c| m.mul(c))).collect();
    }
    basis.sort_by(|a, b| b.cmp_grlex(a));
    Ok(basis)
}

fn combinations(vars: &[Var], left: u32, from: usize, cur: &mut Vec<Var>, out: &mut Vec<Monomial>) {
    if left == 0 {
        out.push(Monomial::from_powers(cur.iter().map(|&v| (v, 1))));
        return;
    }
    for k in from..vars.len() {
        cur.push(vars[k]);
        combinations(vars, left - 1, k, cur, out);
        cur.pop();
    }
}

/// The invariant polynomials of one multidegree.
#[derive(Clone, Debug)]
pub struct InvariantSpace {
    pub monomials: Vec<Monomial>,
    pub basis: Vec<Polynomial>,
}

impl InvariantSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Exact nullspace of the stacked derivations on the component `md`.
pub fn invariant_dim(rep: &MixedRep, md: &[u32], limit: usize) -> Result<InvariantSpace, OracleError> {
    invariant_dim_with(rep, md, limit, &vec![GroupKind::GL; rep.factors().len()])
}

pub fn invariant_dim_with(
    rep: &MixedRep,
    md: &[u32],
    limit: usize,
    groups: &[GroupKind],
) -> Result<InvariantSpace, OracleError> {
    let field = Field::Rational;
    let monomials = component_basis(rep, md, limit)?;
    let ops = lie_derivations_with(rep, field, groups)?;
    let ncols = monomials.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for op in &ops {
        let mut row_of: FxHashMap<Monomial, usize> = FxHashMap::default();
        let mut block: Vec<Vec<Scalar>> = Vec::new();
        for (col, m) in monomials.iter().enumerate() {
            let mut image = Polynomial::zero(field);
            op.apply_monomial_into(m, &field.one(), &mut image);
            for (out_m, c) in image.terms() {
                let r = *row_of.entry(out_m.clone()).or_insert_with(|| {
                    block.push(vec![field.zero(); ncols]);
                    block.len() - 1
                });
                block[r][col] = c.clone();
            }
        }
        rows.extend(block);
    }
    let kernel = nullspace(field, ncols, &rows);
    let basis = kernel
        .iter()
        .map(|v| {
            Polynomial::from_terms(
                field,
                monomials.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())),
            )
        })
        .collect();
    Ok(InvariantSpace { monomials, basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::generator;
    use crate::quiver::presets;
    use crate::words::{enumerate_closed_words, Dedupe};

    const Q: Field = Field::Rational;

    #[test]
    fn trace_is_killed_and_a_coordinate_is_moved() {
        let rep = presets::one_loop(2);
        let ops = lie_derivations(&rep, Q).unwrap();
        let e12 = ops.iter().find(|o| o.label.ends_with("E12")).unwrap();
        let tr = generator(&rep, &"a".parse().unwrap(), 1, Q).unwrap().poly;
        assert!(e12.apply(&tr).is_zero());
        let y11 = Polynomial::var(Q, Var::new("a", 1, 1));
        let expect = Polynomial::var(Q, Var::new("a", 2, 1)).neg();
        assert_eq!(e12.apply(&y11), expect);
    }

    #[test]
    fn prime_fields_are_refused() {
        let e = lie_derivations(&presets::one_loop(2), Field::Prime(7));
        assert_eq!(e.unwrap_err(), OracleError::UnsupportedCharacteristic(7));
    }

    #[test]
    fn every_generator_is_annihilated() {
        for rep in [presets::example1(1, 2), presets::two_cycle(2, 1), presets::loops(2, 2, true)] {
            let ops = lie_derivations(&rep, Q).unwrap();
            let (normal, _) = rep.eliminate_fourth_case();
            let dq = crate::quiver::DoubledQuiver::new(&normal).unwrap();
            for w in enumerate_closed_words(&dq, 3, Dedupe::Rotation) {
                for j in 1..=2 {
                    let g = generator(&rep, &w, j, Q).unwrap();
                    for op in &ops {
                        assert!(op.apply(&g.poly).is_zero(), "{} kills {w} j={j}", op.label);
                    }
                }
            }
        }
    }

    #[test]
    fn leibniz_on_random_products() {
        let rep = presets::example1(1, 2);
        let ops = lie_derivations(&rep, Q).unwrap();
        let vars = rep.variables();
        for op in &ops {
            for (k, &v) in vars.iter().enumerate() {
                let p = Polynomial::var(Q, v).pow(2);
                let q = Polynomial::var(Q, vars[(k * 7 + 3) % vars.len()]);
                assert!(op.leibniz_holds(&p, &q));
            }
        }
    }

    #[test]
    fn loop_dimensions() {
        // partitions of r into parts of size at most d
        let dims: Vec<usize> =
            (1..=3).map(|r| invariant_dim(&presets::one_loop(2), &[r], 10_000).unwrap().dim()).collect();
        assert_eq!(dims, [1, 2, 2]);
        let dims: Vec<usize> =
            (1..=3).map(|r| invariant_dim(&presets::one_loop(3), &[r], 10_000).unwrap().dim()).collect();
        assert_eq!(dims, [1, 2, 3]);
    }

    #[test]
    fn example_one_bilinear_dimension() {
        let rep = presets::example1(0, 2);
        assert_eq!(invariant_dim(&rep, &[1, 1], 10_000).unwrap().dim(), 2);
        assert_eq!(invariant_dim(&rep, &[1, 0], 10_000).unwrap().dim(), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let e = invariant_dim(&presets::one_loop(3), &[4], 10);
        assert!(matches!(e, Err(OracleError::BudgetExceeded { size: 495, limit: 10, .. })));
    }

    #[test]
    fn symplectic_conjugation_of_one_matrix() {
        // Sp(2) = SL(2), so conjugation invariants agree with GL(2) ones
        let rep = presets::one_loop(2);
        let sp = invariant_dim_with(&rep, &[2], 10_000, &[GroupKind::Sp]).unwrap();
        assert_eq!(sp.dim(), 2);
        // the Lie algebra only sees SO(2), which is abelian and fixes the
        // skew part: tr(A) and y12 - y21
        let o = invariant_dim_with(&rep, &[1], 10_000, &[GroupKind::O]).unwrap();
        assert_eq!(o.dim(), 2);
    }
}
