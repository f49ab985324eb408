//! Alternating sums of traces over Young superclasses for several generic
//! matrices, and their expression through `σ_j` of primitive cycles.
//!
//! For a labelling `g: [1, r] -> [1, m]` the trace attached to a permutation
//! `x` is `∏ tr(Y_{g(a)} Y_{g(x(a))} ...)` over the cycles of `x`. Two
//! permutations are equivalent when one is obtained from the other by
//! conjugation with an element of the Young subgroup `S_g`, or by `(a c)·x`
//! where the cycles through `a` and `c` (in whichever of the two permutations
//! keeps them apart) read as powers of one primitive label sequence starting
//! at `a` and at `c`.

use std::collections::{BTreeSet, VecDeque};

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::lie::component_basis;
use super::span::{product_echelon, to_vector, usable_atoms, Budgets};
use super::{require_char_zero, OracleError};
use crate::algebra::{Field, Monomial, Polynomial, Scalar};
use crate::invariant::{generator, Invariant};
use crate::perm::Permutation;
use crate::quiver::{presets, MixedRep};
use crate::words::Word;

/// A set partition of `[1, r]` into layers, with `g` sending each point to
/// the 1-based number of its layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YoungLayers {
    pub layers: Vec<Vec<usize>>,
    pub g: Vec<usize>,
}

impl YoungLayers {
    /// From a labelling of `1..=r` by `1..=m`, every label used.
    pub fn from_map(g: Vec<usize>) -> Result<Self, OracleError> {
        let m = g.iter().copied().max().unwrap_or(0);
        let mut layers = vec![Vec::new(); m];
        for (k, &l) in g.iter().enumerate() {
            if l == 0 {
                return Err(OracleError::BadLayers("labels start at 1".into()));
            }
            layers[l - 1].push(k + 1);
        }
        if layers.iter().any(Vec::is_empty) {
            return Err(OracleError::BadLayers(format!("labelling {g:?} is not onto 1..={m}")));
        }
        Ok(YoungLayers { layers, g })
    }

    pub fn full(r: usize) -> Self {
        YoungLayers::from_map(vec![1; r]).expect("nonempty")
    }

    pub fn singletons(r: usize) -> Self {
        YoungLayers::from_map((1..=r).collect()).expect("onto")
    }

    pub fn degree(&self) -> usize {
        self.g.len()
    }

    /// Number of matrices `m`.
    pub fn count(&self) -> usize {
        self.layers.len()
    }

    /// `|S_g| = ∏ |layer|!`.
    pub fn order(&self) -> u64 {
        self.layers.iter().map(|l| (1..=l.len() as u64).product::<u64>()).product()
    }

    fn label(&self, k: usize) -> usize {
        self.g[k - 1]
    }
}

/// Labels read along the cycle of `x` through `a`, starting at `a`.
fn labels_from(x: &Permutation, layers: &YoungLayers, a: usize) -> Vec<usize> {
    let mut out = vec![layers.label(a)];
    let mut k = x.apply(a);
    while k != a {
        out.push(layers.label(k));
        k = x.apply(k);
    }
    out
}

/// Shortest `q` with `seq = q^k`.
fn primitive_root(seq: &[usize]) -> &[usize] {
    let n = seq.len();
    let p = (1..=n).find(|&p| n % p == 0 && (p..n).all(|i| seq[i] == seq[i - p])).unwrap_or(n);
    &seq[..p]
}

/// `(a c) ∘ x`.
fn left_transposition(x: &Permutation, a: usize, c: usize) -> Permutation {
    let images = x
        .images()
        .iter()
        .map(|&y| {
            if y == a {
                c
            } else if y == c {
                a
            } else {
                y
            }
        })
        .collect();
    Permutation::from_images(images).expect("bijection")
}

fn same_cycle(x: &Permutation, a: usize, c: usize) -> bool {
    let mut k = x.apply(a);
    while k != a {
        if k == c {
            return true;
        }
        k = x.apply(k);
    }
    false
}

/// The Young superclass of `sigma`, sorted.
pub fn superclass(sigma: &Permutation, layers: &YoungLayers, limit: usize) -> Result<Vec<Permutation>, OracleError> {
    let r = sigma.degree();
    if layers.degree() != r {
        return Err(OracleError::BadLayers(format!("{} labels for degree {r}", layers.degree())));
    }
    // adjacent transpositions inside each layer generate S_g
    let gens: Vec<Permutation> = layers
        .layers
        .iter()
        .flat_map(|l| l.windows(2).map(|w| Permutation::identity(r).times_transposition(w[0], w[1])))
        .collect();
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(sigma.clone());
    queue.push_back(sigma.clone());
    while let Some(x) = queue.pop_front() {
        let mut next = Vec::new();
        for t in &gens {
            next.push(t.compose(&x).compose(t));
        }
        for a in 1..=r {
            for c in a + 1..=r {
                let y = left_transposition(&x, a, c);
                let apart = if same_cycle(&x, a, c) { &y } else { &x };
                let la = labels_from(apart, layers, a);
                let lc = labels_from(apart, layers, c);
                if primitive_root(&la) == primitive_root(&lc) {
                    next.push(y);
                }
            }
        }
        for y in next {
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return Err(OracleError::BudgetExceeded { what: "Young superclass", size: seen.len(), limit });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Least rotation of a label sequence.
fn least_rotation(seq: &[usize]) -> Vec<usize> {
    (0..seq.len()).map(|k| seq[k..].iter().chain(&seq[..k]).copied().collect::<Vec<_>>()).min().unwrap_or_default()
}

/// Primitive cycles occurring in `x`, each as its least rotation.
fn primitive_cycles(x: &Permutation, layers: &YoungLayers) -> BTreeSet<Vec<usize>> {
    x.cycles().iter().map(|c| least_rotation(primitive_root(&labels_from(x, layers, c[0])))).collect()
}

fn word_of(labels: &[usize]) -> Word {
    labels.iter().map(|l| format!("a{l}")).collect::<Vec<_>>().join(",").parse().expect("loop letters")
}

#[derive(Clone, Debug, Serialize)]
pub struct YoungSum {
    #[serde(serialize_with = "crate::oracle::young::display")]
    pub poly: Polynomial,
    pub superclass_size: usize,
    pub sg_order: u64,
    /// every coefficient of the sum is an integer
    pub integral: bool,
    /// the sum lies in the span of products of `σ_j(p)`, `p` primitive
    pub member: bool,
    pub primitive_cycles: Vec<String>,
}

pub(crate) fn display<S: serde::Serializer>(p: &Polynomial, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

/// `(1/|S_g|) Σ_{x ∈ D} sign(x) tr(x, g)` over the Young superclass `D` of
/// `sigma`, for `m` generic `d × d` matrices `a1 .. am`, and whether it is a
/// polynomial in the `σ_j` of the primitive cycles of `D`.
pub fn young_superclass_sum(
    sigma: &Permutation,
    layers: &YoungLayers,
    d: usize,
    field: Field,
    budgets: Budgets,
) -> Result<YoungSum, OracleError> {
    require_char_zero(field)?;
    let class = superclass(sigma, layers, budgets.max_products)?;
    let rep: MixedRep = presets::loops(layers.count(), d, true);
    let mut traces: FxHashMap<Vec<usize>, Polynomial> = FxHashMap::default();
    let mut trace_of = |labels: Vec<usize>| -> Result<Polynomial, OracleError> {
        let key = least_rotation(&labels);
        if let Some(p) = traces.get(&key) {
            return Ok(p.clone());
        }
        let p = generator(&rep, &word_of(&key), 1, field)?.poly;
        traces.insert(key, p.clone());
        Ok(p)
    };
    let mut total = Polynomial::zero(field);
    for x in &class {
        let mut term = Polynomial::from_i64(field, x.sign());
        for c in x.cycles() {
            term = term.mul(&trace_of(labels_from(x, layers, c[0]))?);
        }
        total.add_assign(&term);
    }
    let order = layers.order();
    let poly = total.scale(&Scalar::from_ratio(field, 1, order as i64).expect("nonzero order"));
    let integral = poly.terms().all(|(_, c)| c.as_rational().is_some_and(|r| r.is_integer()));

    let prims = primitive_cycles(sigma, layers);
    let mut atoms: Vec<Invariant> = Vec::new();
    for p in &prims {
        for j in 1..=d {
            atoms.push(generator(&rep, &word_of(p), j, field)?);
        }
    }
    let md: Vec<u32> = layers.layers.iter().map(|l| l.len() as u32).collect();
    let member = if poly.is_zero() {
        true
    } else {
        let monomials: Vec<Monomial> = component_basis(&rep, &md, budgets.max_monomials)?;
        let index: FxHashMap<Monomial, usize> = monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        let usable = usable_atoms(&rep, &md, &atoms)?;
        let (echelon, _) = product_echelon(&usable, &md, &index, budgets)?;
        echelon.contains(&to_vector(&poly, &index, field)?)
    };
    Ok(YoungSum {
        poly,
        superclass_size: class.len(),
        sg_order: order,
        integral,
        member,
        primitive_cycles: prims
            .iter()
            .map(|p| p.iter().map(|l| format!("a{l}")).collect::<Vec<_>>().join(","))
            .collect(),
    })
}

/// Every labelling `g` of `[1, r]` onto `[1, m]` up to renaming labels, with
/// labels first used in increasing order.
pub fn labellings(r: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(r: usize, m: usize, cur: &mut Vec<usize>, used: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            if used == m {
                out.push(cur.clone());
            }
            return;
        }
        for l in 1..=(used + 1).min(m) {
            cur.push(l);
            go(r, m, cur, used.max(l), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(r, m, &mut Vec::new(), 0, &mut out);
    out
}

/// Partition of `S_r` into Young superclasses for `layers`.
pub fn all_superclasses(layers: &YoungLayers, limit: usize) -> Result<Vec<Vec<Permutation>>, OracleError> {
    let mut left: BTreeSet<Permutation> = Permutation::all(layers.degree()).into_iter().collect();
    let mut out = Vec::new();
    while let Some(x) = left.iter().next().cloned() {
        let class = superclass(&x, layers, limit)?;
        for y in &class {
            left.remove(y);
        }
        out.push(class);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn sigma_of_a(d: usize, j: usize) -> Polynomial {
        generator(&presets::loops(1, d, true), &"a1".parse().unwrap(), j, Q).unwrap().poly
    }

    #[test]
    fn full_layer_identity_gives_sigma_r() {
        for (r, d) in [(2, 2), (3, 3)] {
            let s = young_superclass_sum(&Permutation::identity(r), &YoungLayers::full(r), d, Q, Budgets::default())
                .unwrap();
            assert_eq!(s.superclass_size, (1..=r).product::<usize>());
            assert_eq!(s.poly, sigma_of_a(d, r));
            assert!(s.integral && s.member);
        }
    }

    #[test]
    fn singleton_layers_give_a_signed_trace() {
        let sigma = Permutation::parse_cycles("(123)", 3).unwrap();
        let s = young_superclass_sum(&sigma, &YoungLayers::singletons(3), 2, Q, Budgets::default()).unwrap();
        assert_eq!(s.superclass_size, 1);
        let rep = presets::loops(3, 2, true);
        let tr = generator(&rep, &"a1,a2,a3".parse().unwrap(), 1, Q).unwrap().poly;
        assert_eq!(s.poly, tr);
        assert!(s.member);
    }

    #[test]
    fn superclasses_partition_and_are_integral() {
        for r in 1..=4 {
            for m in 1..=2.min(r) {
                for g in labellings(r, m) {
                    let layers = YoungLayers::from_map(g).unwrap();
                    let classes = all_superclasses(&layers, 1000).unwrap();
                    let total: usize = classes.iter().map(Vec::len).sum();
                    assert_eq!(total, (1..=r).product::<usize>());
                }
            }
        }
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(&[1, 2, 1, 2]), &[1, 2]);
        assert_eq!(primitive_root(&[1, 1, 1]), &[1]);
        assert_eq!(primitive_root(&[1, 2, 2]), &[1, 2, 2]);
    }

    #[test]
    fn prime_field_is_refused() {
        let e = young_superclass_sum(
            &Permutation::identity(2),
            &YoungLayers::full(2),
            2,
            Field::Prime(5),
            Budgets::default(),
        );
        assert_eq!(e.unwrap_err(), OracleError::UnsupportedCharacteristic(5));
    }

    #[test]
    fn bad_labelling() {
        assert!(YoungLayers::from_map(vec![1, 3]).is_err());
    }
}
