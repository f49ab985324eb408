//! Contraction of a member permutation into a product of traces, by two
//! independent routes, and the direct index-sum polynomial used as an oracle.
//!
//! Hat matrix `k` carries an index pair `(row, col)` of symbols in `[1, r]`:
//! `(k, σ⁻¹(k))` on the first block, `(σ⁻¹(k), σ⁻¹(k+s))` on the second and
//! `(k-s, k)` on the third. Each symbol occurs exactly twice, so chaining
//! matrices through shared symbols splits the product into closed cycles.

use serde::Serialize;

use super::hat::Block;
use super::{eval_word, generic_point, perm_in_hom, Invariant, InvariantError, PermDatum, Provenance};
use crate::algebra::{Field, Polynomial, Var};
use crate::quiver::{DoubledQuiver, MixedRep};
use crate::words::{is_admissible, Sym, TraceProduct};

/// Raw cycle partition and its right record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contraction {
    pub raw: TraceProduct,
    pub right: TraceProduct,
}

/// `(row symbol, column symbol)` of every hat matrix, index `k - 1`.
fn pair_product(p: &PermDatum) -> Vec<(usize, usize)> {
    let l = &p.layout;
    let inv = p.sigma.inverse();
    (1..=l.r)
        .map(|k| match l.block(k) {
            Block::One => (k, inv.apply(k)),
            Block::Two => (inv.apply(k), inv.apply(k + l.s)),
            Block::Three => (k - l.s, k),
        })
        .collect()
}

/// Walks the formal pair product. A letter entered unbarred leaves through
/// its column symbol, a barred one through its row symbol.
pub fn contract_formal(p: &PermDatum) -> TraceProduct {
    let pairs = pair_product(p);
    let r = pairs.len();
    // occurrences[m - 1] = the two (matrix, position) slots holding symbol m
    let mut occurrences = vec![Vec::with_capacity(2); r];
    for (idx, &(a, b)) in pairs.iter().enumerate() {
        occurrences[a - 1].push((idx + 1, 0u8));
        occurrences[b - 1].push((idx + 1, 1u8));
    }
    let other = |m: usize, slot: (usize, u8)| -> (usize, u8) {
        let o = &occurrences[m - 1];
        debug_assert_eq!(o.len(), 2, "symbol {m} must occur twice");
        if o[0] == slot {
            o[1]
        } else {
            o[0]
        }
    };
    let mut used = vec![false; r];
    let mut factors = Vec::new();
    for start in 1..=r {
        if used[start - 1] {
            continue;
        }
        let mut cycle = vec![Sym::plain(start as u32)];
        used[start - 1] = true;
        let mut exit = (start, 1u8);
        loop {
            let (k, pos) = exit;
            let sym = if pos == 0 { pairs[k - 1].0 } else { pairs[k - 1].1 };
            let (next, next_pos) = other(sym, exit);
            if (next, next_pos) == (start, 0) {
                break;
            }
            used[next - 1] = true;
            if next_pos == 0 {
                cycle.push(Sym::plain(next as u32));
                exit = (next, 1);
            } else {
                cycle.push(Sym::bar(next as u32));
                exit = (next, 0);
            }
        }
        factors.push(cycle);
    }
    TraceProduct::new(factors).expect("each hat number is visited once")
}

/// Walks the same cycles with the explicit right-hand neighbor table.
pub fn contract_neighbors(p: &PermDatum) -> TraceProduct {
    let l = &p.layout;
    let s = l.s;
    let sigma = &p.sigma;
    let inv = sigma.inverse();
    let n = |k: usize| k as u32;
    // the occurrence of e as its own block's index
    let a_rule = |e: usize| match l.block(e) {
        Block::One => Sym::plain(n(e)),
        Block::Two => Sym::plain(n(e + s)),
        Block::Three => Sym::bar(n(e)),
    };
    // the occurrence of e as a σ-image index
    let b_rule = |e: usize| {
        let m = sigma.apply(e);
        match l.block(m) {
            Block::One => Sym::bar(n(m)),
            Block::Two => Sym::plain(n(m)),
            Block::Three => Sym::bar(n(m - s)),
        }
    };
    let next = |x: Sym| -> Sym {
        let j = x.n as usize;
        match (x.barred, l.block(j)) {
            (false, Block::One) => a_rule(inv.apply(j)),
            (false, Block::Two) => a_rule(inv.apply(j + s)),
            (false, Block::Three) => b_rule(j),
            (true, Block::One) => b_rule(j),
            (true, Block::Two) => a_rule(inv.apply(j)),
            (true, Block::Three) => b_rule(j - s),
        }
    };
    let mut used = vec![false; l.r];
    let mut factors = Vec::new();
    for start in 1..=l.r {
        if used[start - 1] {
            continue;
        }
        let first = Sym::plain(start as u32);
        let mut cycle = vec![first];
        used[start - 1] = true;
        let mut cur = next(first);
        while cur != first {
            used[cur.n as usize - 1] = true;
            cycle.push(cur);
            cur = next(cur);
        }
        factors.push(cycle);
    }
    TraceProduct::new(factors).expect("each hat number is visited once")
}

/// Contracts a member permutation, requiring both routes to agree.
pub fn contract_permutation(p: &PermDatum) -> Result<Contraction, InvariantError> {
    if !perm_in_hom(p)? {
        return Err(InvariantError::NotInHom(p.sigma.to_string()));
    }
    let raw = contract_formal(p);
    let table = contract_neighbors(p);
    if raw != table {
        return Err(InvariantError::RouteMismatch(format!("{}: pair product {raw}, neighbor table {table}", p.sigma)));
    }
    let right = raw.right_record();
    Ok(Contraction { raw, right })
}

/// `∏ tr(Z(factor))` over generic matrices of the hat quiver. Every factor
/// must be a closed word there.
pub fn trace_product_poly(tp: &TraceProduct, hat: &MixedRep, field: Field) -> Result<Polynomial, InvariantError> {
    let dq = DoubledQuiver::new(hat)?;
    let point = generic_point(hat, field);
    let mut out = Polynomial::constant(field.one());
    for w in tp.factor_words() {
        if !is_admissible(&dq, &w)? {
            return Err(InvariantError::NotAdmissible(w.to_string()));
        }
        let z = eval_word(&dq, &w, |id| point.get(id).cloned())?;
        out = out.mul(&z.trace()?);
    }
    Ok(out)
}

/// The index sum over `j_1 .. j_r`, each ranging over the dimension of the
/// factor its covector belongs to.
pub fn tr_star_direct(p: &PermDatum, field: Field) -> Result<Polynomial, InvariantError> {
    if !perm_in_hom(p)? {
        return Err(InvariantError::NotInHom(p.sigma.to_string()));
    }
    let l = &p.layout;
    let pairs = pair_product(p);
    let ranges: Vec<usize> = (1..=l.r).map(|m| l.hat.factor_dim(l.covector_factor(m))).collect();
    let vars: Vec<Vec<Var>> = (1..=l.r)
        .map(|k| {
            let a = l.hat_arrow(k);
            let (rows, cols) = l.hat.arrow_shape(a);
            (0..rows * cols).map(|e| Var::new(&a.id, (e / cols + 1) as u32, (e % cols + 1) as u32)).collect()
        })
        .collect();
    let cols: Vec<usize> = (1..=l.r).map(|k| l.hat.arrow_shape(l.hat_arrow(k)).1).collect();
    let mut out = Polynomial::zero(field);
    if ranges.iter().any(|&d| d == 0) {
        return Ok(out);
    }
    let mut j = vec![0usize; l.r];
    loop {
        let mono = crate::algebra::Monomial::from_powers(
            pairs.iter().enumerate().map(|(k, &(a, b))| (vars[k][j[a - 1] * cols[k] + j[b - 1]], 1)),
        );
        out.add_term(mono, field.one());
        // odometer over the index tuple
        let mut pos = 0;
        loop {
            if pos == l.r {
                return Ok(out);
            }
            j[pos] += 1;
            if j[pos] < ranges[pos] {
                break;
            }
            j[pos] = 0;
            pos += 1;
        }
    }
}

/// The multilinear invariant of a member permutation over the hat quiver.
pub fn tr_star(p: &PermDatum, field: Field) -> Result<Invariant, InvariantError> {
    let c = contract_permutation(p)?;
    let poly = trace_product_poly(&c.right, &p.layout.hat, field)?;
    Ok(Invariant {
        poly,
        provenance: Provenance::Permutation {
            sigma: p.sigma.to_string(),
            t: p.layout.t,
            s: p.layout.s,
            trace: c.right.to_string(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::{hat_quiver, hom_members, HatLayout};
    use crate::perm::Permutation;
    use crate::quiver::presets;

    const Q: Field = Field::Rational;

    fn datum(cycles: &str, layout: &HatLayout) -> PermDatum {
        PermDatum::new(Permutation::parse_cycles(cycles, layout.r).unwrap(), layout.clone()).unwrap()
    }

    #[test]
    fn worked_example() {
        let l = HatLayout::universal(3, 2, 2).unwrap();
        let c = contract_permutation(&datum("(1726)(354)", &l)).unwrap();
        assert_eq!(c.raw.to_string(), "(1 6' 3' 5)(2 7' 4)");
        assert_eq!(c.right.to_string(), "(6 1' 5' 3)(7 2' 4')");
    }

    #[test]
    fn no_second_block_gives_cycles_of_the_inverse() {
        let l = HatLayout::universal(5, 0, 2).unwrap();
        let p = datum("(123)(45)", &l);
        assert_eq!(contract_permutation(&p).unwrap().raw.to_string(), "(1 3 2)(4 5)");
        let id = datum("()", &HatLayout::universal(2, 0, 2).unwrap());
        assert_eq!(contract_permutation(&id).unwrap().raw.to_string(), "(1)(2)");
    }

    #[test]
    fn routes_agree_and_match_the_index_sum() {
        let layouts = [
            HatLayout::universal(1, 1, 2).unwrap(),
            hat_quiver(&presets::example1(1, 2), &vec![2, 1, 1]).unwrap(),
            hat_quiver(&presets::two_cycle(2, 1), &vec![2, 2]).unwrap(),
        ];
        for l in layouts {
            for sigma in hom_members(&l) {
                let p = PermDatum::new(sigma, l.clone()).unwrap();
                let inv = tr_star(&p, Q).unwrap();
                assert_eq!(inv.poly, tr_star_direct(&p, Q).unwrap(), "{}", p.sigma);
            }
        }
    }

    #[test]
    fn trace_of_two_identity_loops() {
        let l = HatLayout::universal(2, 0, 2).unwrap();
        let p = datum("()", &l);
        let t1 = Polynomial::var(Q, Var::new("1", 1, 1)).add(&Polynomial::var(Q, Var::new("1", 2, 2)));
        let t2 = Polynomial::var(Q, Var::new("2", 1, 1)).add(&Polynomial::var(Q, Var::new("2", 2, 2)));
        assert_eq!(tr_star_direct(&p, Q).unwrap(), t1.mul(&t2));
    }

    #[test]
    fn non_members_are_refused() {
        let l = hat_quiver(&presets::two_cycle(2, 2), &vec![1, 1]).unwrap();
        let id = PermDatum::new(Permutation::identity(2), l).unwrap();
        assert!(matches!(contract_permutation(&id), Err(InvariantError::NotInHom(_))));
        assert!(matches!(tr_star_direct(&id, Q), Err(InvariantError::NotInHom(_))));
    }
}
