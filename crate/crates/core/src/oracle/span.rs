//! Comparison of the span of generator products with the oracle invariant
//! space at one multidegree.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::lie::{invariant_dim, InvariantSpace};
use super::OracleError;
use crate::algebra::{Field, Monomial, Polynomial, RowEchelon, Scalar};
use crate::invariant::{generator, Invariant};
use crate::quiver::{DoubledQuiver, MixedRep};
use crate::words::{enumerate_closed_words, Dedupe};

/// Size limits for the oracle computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub max_monomials: usize,
    pub max_products: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { max_monomials: 20_000, max_products: 200_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub multidegree: BTreeMap<String, u32>,
    pub word_bound: usize,
    /// every generator of a word longer than the total degree has too large a
    /// degree, so a bound at least the total degree loses nothing
    pub bound_is_exhaustive: bool,
    pub generators: usize,
    pub products: usize,
    pub oracle_dim: usize,
    pub span_dim: usize,
    pub pass: bool,
    /// leading monomials of invariants outside the span
    pub witness_monomials: Vec<String>,
    /// invariants completing the span to the oracle space
    pub witness: Vec<String>,
}

pub(crate) fn to_vector(
    p: &Polynomial,
    index: &FxHashMap<Monomial, usize>,
    field: Field,
) -> Result<Vec<Scalar>, OracleError> {
    let mut v = vec![field.zero(); index.len()];
    for (m, c) in p.terms() {
        let &k = index.get(m).ok_or_else(|| OracleError::OutsideComponent(m.to_string()))?;
        v[k] = c.clone();
    }
    Ok(v)
}

/// Multidegree vector of an invariant, indexed like the arrows.
fn degree_vector(rep: &MixedRep, p: &Polynomial) -> Option<Vec<u32>> {
    let md = p.multidegree()?;
    let v = rep.arrows().iter().map(|a| md.get(a.id.as_str()).copied().unwrap_or(0)).collect();
    Some(v)
}

/// Atoms with nonzero degree fitting inside `md`, with their degree vectors.
pub(crate) fn usable_atoms<'a>(
    rep: &MixedRep,
    md: &[u32],
    atoms: &'a [Invariant],
) -> Result<Vec<(Vec<u32>, &'a Polynomial)>, OracleError> {
    let mut usable = Vec::new();
    for a in atoms {
        if a.poly.is_zero() {
            continue;
        }
        let Some(dv) = degree_vector(rep, &a.poly) else {
            return Err(OracleError::OutsideComponent(format!("{} is not multihomogeneous", a.provenance)));
        };
        if dv.iter().all(|&x| x == 0) || dv.iter().zip(md).any(|(x, r)| x > r) {
            continue;
        }
        usable.push((dv, &a.poly));
    }
    Ok(usable)
}

/// Row echelon basis of the span of all products of atoms (with repetition)
/// whose degree vectors add up to `md`, and the number of products.
pub(crate) fn product_echelon(
    usable: &[(Vec<u32>, &Polynomial)],
    md: &[u32],
    index: &FxHashMap<Monomial, usize>,
    budgets: Budgets,
) -> Result<(RowEchelon, usize), OracleError> {
    let field = Field::Rational;
    let mut echelon = RowEchelon::new(field, index.len());
    let mut products = 0usize;
    let mut stack: Vec<(usize, Vec<u32>, Polynomial)> = vec![(0, md.to_vec(), Polynomial::constant(field.one()))];
    while let Some((from, left, acc)) = stack.pop() {
        if left.iter().all(|&x| x == 0) {
            products += 1;
            if products > budgets.max_products {
                return Err(OracleError::BudgetExceeded {
                    what: "generator products",
                    size: products,
                    limit: budgets.max_products,
                });
            }
            echelon.insert(&to_vector(&acc, index, field)?);
            continue;
        }
        for (k, (dv, p)) in usable.iter().enumerate().skip(from) {
            if dv.iter().zip(&left).all(|(x, l)| x <= l) {
                let rest = left.iter().zip(dv).map(|(l, x)| l - x).collect();
                stack.push((k, rest, acc.mul(p)));
            }
        }
    }
    Ok((echelon, products))
}

/// Checks the span of all products of `atoms` landing in multidegree `md`
/// against the oracle space.
pub fn span_check_with(
    rep: &MixedRep,
    md: &[u32],
    atoms: &[Invariant],
    word_bound: usize,
    budgets: Budgets,
) -> Result<SpanReport, OracleError> {
    let field = Field::Rational;
    let space: InvariantSpace = invariant_dim(rep, md, budgets.max_monomials)?;
    let index: FxHashMap<Monomial, usize> = space.monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();

    let usable = usable_atoms(rep, md, atoms)?;
    let (mut echelon, products) = product_echelon(&usable, md, &index, budgets)?;
    let span_dim = echelon.rank();

    let mut witness = Vec::new();
    let mut witness_monomials = Vec::new();
    for b in &space.basis {
        let v = to_vector(b, &index, field)?;
        let residual = echelon.reduce(&v);
        if echelon.insert(&v) {
            let poly = Polynomial::from_terms(
                field,
                space.monomials.iter().zip(residual).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c)),
            );
            if let Some(m) = poly.leading_monomial() {
                witness_monomials.push(m.to_string());
            }
            witness.push(poly.to_string());
        }
    }
    let total: u32 = md.iter().sum();
    let oracle_dim = space.dim();
    Ok(SpanReport {
        multidegree: rep.multidegree_map(md).into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        word_bound,
        bound_is_exhaustive: word_bound >= total as usize,
        generators: usable.len(),
        products,
        oracle_dim,
        span_dim,
        pass: span_dim == oracle_dim && echelon.rank() == oracle_dim,
        witness_monomials,
        witness,
    })
}

/// All generators `σ_j(w)` with `|w| <= word_bound`, and the span check of
/// their products.
pub fn span_check(rep: &MixedRep, md: &[u32], word_bound: usize, budgets: Budgets) -> Result<SpanReport, OracleError> {
    let (normal, _) = rep.eliminate_fourth_case();
    let dq = DoubledQuiver::new(&normal)?;
    let mut atoms = Vec::new();
    for w in enumerate_closed_words(&dq, word_bound, Dedupe::RotationTranspose) {
        let size =
            crate::words::base_vertex(&dq, &w).map(|v| dq.dim(v)).map_err(crate::invariant::InvariantError::from)?;
        for j in 1..=size {
            let md_w: u32 = w.len() as u32 * j as u32;
            if md_w > md.iter().sum::<u32>() {
                break;
            }
            atoms.push(generator(rep, &w, j, Field::Rational)?);
        }
    }
    span_check_with(rep, md, &atoms, word_bound, budgets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::presets;

    #[test]
    fn one_loop_low_degrees() {
        let rep = presets::one_loop(3);
        for r in 1..=3 {
            let rep_r = span_check(&rep, &[r], r as usize, Budgets::default()).unwrap();
            assert!(rep_r.pass, "{rep_r:?}");
            assert_eq!(rep_r.oracle_dim, r as usize);
        }
    }

    #[test]
    fn example_one_bilinear() {
        let r = span_check(&presets::example1(0, 2), &[1, 1], 2, Budgets::default()).unwrap();
        assert!(r.pass);
        assert_eq!((r.oracle_dim, r.span_dim), (2, 2));
    }

    #[test]
    fn crippled_generators_leave_a_witness() {
        let rep = presets::one_loop(2);
        let tr = generator(&rep, &"a".parse().unwrap(), 1, Field::Rational).unwrap();
        let r = span_check_with(&rep, &[2], &[tr], 1, Budgets::default()).unwrap();
        assert!(!r.pass);
        assert_eq!((r.oracle_dim, r.span_dim), (2, 1));
        assert_eq!(r.witness.len(), 1);
        assert!(!r.bound_is_exhaustive);
    }

    #[test]
    fn product_budget() {
        let rep = presets::one_loop(2);
        let budgets = Budgets { max_products: 1, ..Budgets::default() };
        let e = span_check(&rep, &[3], 3, budgets);
        assert!(matches!(e, Err(OracleError::BudgetExceeded { what: "generator products", .. })));
    }
}
