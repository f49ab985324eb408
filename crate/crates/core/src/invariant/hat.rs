//! Multilinearization: the hat quiver of a multidegree and membership of
//! permutations in the space of multilinear equivariants.
//!
//! The `r = t + 2s` hat arrows are numbered so that first-case copies come
//! first (`[1, t]`), then second-case copies (`[t+1, t+s]`), then third-case
//! copies (`[t+s+1, r]`); within a block copies of one arrow are contiguous
//! and arrows keep their declaration order.

use std::collections::BTreeSet;

use serde::Serialize;

use super::InvariantError;
use crate::perm::Permutation;
use crate::quiver::{Arrow, ArrowCase, MixedRep, Multidegree};

/// Which of the three blocks a hat arrow lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Block {
    One,
    Two,
    Three,
}

/// The hat quiver and its specialization `f` back to the original arrows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HatLayout {
    pub r: usize,
    pub t: usize,
    pub s: usize,
    /// `f[k - 1]` is the id of the original arrow of hat arrow `k`
    pub f: Vec<String>,
    /// `(arrow id, first, last)` intervals of hat numbers
    pub intervals: Vec<(String, usize, usize)>,
    #[serde(skip)]
    pub hat: MixedRep,
    #[serde(skip)]
    pub base: MixedRep,
}

impl HatLayout {
    pub(crate) fn block(&self, k: usize) -> Block {
        debug_assert!((1..=self.r).contains(&k));
        if k <= self.t {
            Block::One
        } else if k <= self.t + self.s {
            Block::Two
        } else {
            Block::Three
        }
    }

    pub fn hat_arrow(&self, k: usize) -> &Arrow {
        &self.hat.arrows()[k - 1]
    }

    /// The group factor whose covector the index `j_m` contracts against.
    pub(crate) fn covector_factor(&self, m: usize) -> usize {
        let v = match self.block(m) {
            Block::One => self.hat_arrow(m).to,
            Block::Two => self.hat_arrow(m + self.s).to,
            Block::Three => self.hat_arrow(m).from,
        };
        self.hat.factor_of(v)
    }

    /// The group factor whose vector sits at hat position `n`.
    pub(crate) fn vector_factor(&self, n: usize) -> usize {
        let v = match self.block(n) {
            Block::One => self.hat_arrow(n).from,
            Block::Two => self.hat_arrow(n).to,
            Block::Three => self.hat_arrow(n - self.s).from,
        };
        self.hat.factor_of(v)
    }

    /// Layout of the one-pair quiver with `t` loops at the unstarred vertex,
    /// `s` arrows into the starred vertex and `s` arrows out of it, all of
    /// dimension `n`. Every permutation of `[1, t + 2s]` is a member.
    pub fn universal(t: usize, s: usize, n: usize) -> Result<HatLayout, InvariantError> {
        use crate::quiver::DimEntry;
        let mut arrows = Vec::new();
        for k in 1..=t {
            arrows.push(Arrow { id: format!("a{k}"), from: 1, to: 1 });
        }
        for k in 1..=s {
            arrows.push(Arrow { id: format!("b{k}"), from: 1, to: 2 });
        }
        for k in 1..=s {
            arrows.push(Arrow { id: format!("c{k}"), from: 2, to: 1 });
        }
        let count = arrows.len();
        let rep = MixedRep::new(
            2,
            vec![],
            vec![vec![1, 2]],
            arrows,
            vec![DimEntry { size: n, starred: false }, DimEntry { size: n, starred: true }],
        )?;
        hat_quiver(&rep, &vec![1; count])
    }
}

/// Builds the hat quiver of `rep` at multidegree `md` (fourth-case arrows must
/// be eliminated beforehand).
pub fn hat_quiver(rep: &MixedRep, md: &Multidegree) -> Result<HatLayout, InvariantError> {
    if md.len() != rep.arrows().len() {
        return Err(InvariantError::LayoutMismatch(format!(
            "multidegree has {} entries for {} arrows",
            md.len(),
            rep.arrows().len()
        )));
    }
    if let Some(a) = rep.arrows().iter().find(|a| rep.classify_arrow(a) == ArrowCase::Case4) {
        return Err(crate::quiver::QuiverError::FourthCasePresent(a.id.clone()).into());
    }
    let count = |case: ArrowCase| -> u32 {
        rep.arrows().iter().zip(md).filter(|(a, _)| rep.classify_arrow(a) == case).map(|(_, &r)| r).sum()
    };
    let (r1, r2, r3) = (count(ArrowCase::Case1), count(ArrowCase::Case2), count(ArrowCase::Case3));
    if r2 != r3 {
        return Err(InvariantError::Unbalanced { r2, r3 });
    }
    let mut f = Vec::new();
    let mut intervals = Vec::new();
    let mut hat_arrows = Vec::new();
    for case in [ArrowCase::Case1, ArrowCase::Case2, ArrowCase::Case3] {
        for (a, &ra) in rep.arrows().iter().zip(md) {
            if rep.classify_arrow(a) != case || ra == 0 {
                continue;
            }
            let first = f.len() + 1;
            for _ in 0..ra {
                f.push(a.id.clone());
                hat_arrows.push(Arrow { id: f.len().to_string(), from: a.from, to: a.to });
            }
            intervals.push((a.id.clone(), first, f.len()));
        }
    }
    let hat = rep.rebuild(hat_arrows, rep.dims().entries().to_vec())?;
    Ok(HatLayout { r: f.len(), t: r1 as usize, s: r2 as usize, f, intervals, hat, base: rep.clone() })
}

/// A permutation of the hat numbers together with its layout.
#[derive(Clone, Debug)]
pub struct PermDatum {
    pub sigma: Permutation,
    pub layout: HatLayout,
}

impl PermDatum {
    pub fn new(sigma: Permutation, layout: HatLayout) -> Result<Self, InvariantError> {
        if sigma.degree() != layout.r {
            return Err(InvariantError::LayoutMismatch(format!(
                "permutation of degree {} for a layout with r = {}",
                sigma.degree(),
                layout.r
            )));
        }
        Ok(PermDatum { sigma, layout })
    }
}

/// The two sides of the membership equations for every group factor:
/// `(arguments, images)` with `σ(arguments) = images` required.
fn membership_sets(layout: &HatLayout) -> Vec<(BTreeSet<usize>, BTreeSet<usize>)> {
    let hat = &layout.hat;
    let s = layout.s;
    let arrows = hat.arrows();
    let in_block = |k: usize, b: Block| layout.block(k) == b;
    let mut out = Vec::new();
    for (u, _) in hat.factors().iter().enumerate() {
        let (unstarred, starred) = match hat.factors()[u] {
            crate::quiver::Factor::Ordinary(v) => (v, None),
            crate::quiver::Factor::Pair(q) => {
                let (i, j) = hat.quiver().pairs()[q];
                (i, Some(j))
            }
        };
        let mut args = BTreeSet::new();
        let mut imgs = BTreeSet::new();
        for (idx, a) in arrows.iter().enumerate() {
            let k = idx + 1;
            // T(i) ∩ Â1, (T(i) ∩ Â3) - s, T(j_q)
            if a.to == unstarred && in_block(k, Block::One) {
                args.insert(k);
            }
            if a.to == unstarred && in_block(k, Block::Three) {
                args.insert(k - s);
            }
            if Some(a.from) == starred {
                args.insert(k);
            }
            // I(i) ∩ Â1, (I(i) ∩ Â2) + s, I(j_q)
            if a.from == unstarred && in_block(k, Block::One) {
                imgs.insert(k);
            }
            if a.from == unstarred && in_block(k, Block::Two) {
                imgs.insert(k + s);
            }
            if Some(a.to) == starred {
                imgs.insert(k);
            }
        }
        out.push((args, imgs));
    }
    out
}

/// Whether `σ` maps each argument set onto the corresponding image set.
pub fn perm_in_hom(p: &PermDatum) -> Result<bool, InvariantError> {
    if p.sigma.degree() != p.layout.r {
        return Err(InvariantError::LayoutMismatch(format!(
            "permutation of degree {} for r = {}",
            p.sigma.degree(),
            p.layout.r
        )));
    }
    Ok(membership_sets(&p.layout).iter().all(|(args, imgs)| {
        let mapped: BTreeSet<usize> = args.iter().map(|&k| p.sigma.apply(k)).collect();
        mapped == *imgs
    }))
}

/// Every member permutation, in lexicographic order of images: the product
/// over factors of all bijections from argument set to image set.
pub fn hom_members(layout: &HatLayout) -> Vec<Permutation> {
    let r = layout.r;
    // allowed[m] = factor whose images m may map to
    let cov: Vec<usize> = (1..=r).map(|m| layout.covector_factor(m)).collect();
    let vec_f: Vec<usize> = (1..=r).map(|n| layout.vector_factor(n)).collect();
    let mut out = Vec::new();
    let mut images = vec![0usize; r];
    let mut used = vec![false; r];
    fn go(
        m: usize,
        r: usize,
        cov: &[usize],
        vec_f: &[usize],
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Permutation>,
    ) {
        if m == r {
            out.push(Permutation::from_images(images.clone()).expect("bijection"));
            return;
        }
        for n in 0..r {
            if !used[n] && vec_f[n] == cov[m] {
                used[n] = true;
                images[m] = n + 1;
                go(m + 1, r, cov, vec_f, images, used, out);
                used[n] = false;
            }
        }
    }
    go(0, r, &cov, &vec_f, &mut images, &mut used, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::presets;

    #[test]
    fn identity_layout() {
        let rep = presets::example1(1, 2);
        let l = hat_quiver(&rep, &vec![1, 1, 1]).unwrap();
        assert_eq!((l.r, l.t, l.s), (3, 1, 1));
        assert_eq!(l.f, ["a1", "b", "c"]);
    }

    #[test]
    fn loop_copies() {
        let l = hat_quiver(&presets::one_loop(2), &vec![3]).unwrap();
        assert_eq!(l.f, ["a", "a", "a"]);
        assert_eq!(l.hat.arrows().iter().map(|a| (a.from, a.to)).collect::<Vec<_>>(), [(1, 1); 3]);
    }

    #[test]
    fn example_one_intervals() {
        let l = hat_quiver(&presets::example1(1, 2), &vec![2, 1, 1]).unwrap();
        assert_eq!(l.intervals, [("a1".to_string(), 1, 2), ("b".to_string(), 3, 3), ("c".to_string(), 4, 4)]);
        assert_eq!((l.t, l.s), (2, 1));
    }

    #[test]
    fn unbalanced_multidegree() {
        let e = hat_quiver(&presets::example1(0, 2), &vec![1, 0]);
        assert_eq!(e.unwrap_err(), InvariantError::Unbalanced { r2: 1, r3: 0 });
    }

    #[test]
    fn all_loops_admit_every_permutation() {
        let l = hat_quiver(&presets::loops(2, 2, true), &vec![2, 1]).unwrap();
        for s in Permutation::all(3) {
            assert!(perm_in_hom(&PermDatum::new(s, l.clone()).unwrap()).unwrap());
        }
    }

    #[test]
    fn example_one_both_members() {
        let l = hat_quiver(&presets::example1(0, 2), &vec![1, 1]).unwrap();
        let members: Vec<_> = Permutation::all(2)
            .into_iter()
            .filter(|s| perm_in_hom(&PermDatum::new(s.clone(), l.clone()).unwrap()).unwrap())
            .collect();
        assert_eq!(members.len(), 2);
    }

    #[test]
    fn ordinary_balance_rules_out_identity() {
        let l = hat_quiver(&presets::two_cycle(2, 2), &vec![1, 1]).unwrap();
        let id = PermDatum::new(Permutation::identity(2), l.clone()).unwrap();
        assert!(!perm_in_hom(&id).unwrap());
        let swap = PermDatum::new(Permutation::parse_cycles("(12)", 2).unwrap(), l).unwrap();
        assert!(perm_in_hom(&swap).unwrap());
    }

    #[test]
    fn member_enumeration_matches_filter() {
        let layouts = [
            hat_quiver(&presets::example1(1, 2), &vec![2, 1, 1]).unwrap(),
            hat_quiver(&presets::two_cycle(1, 1), &vec![2, 2]).unwrap(),
            hat_quiver(&presets::example1(1, 1), &vec![1, 2, 2]).unwrap(),
        ];
        for l in layouts {
            let filtered: Vec<_> = Permutation::all(l.r)
                .into_iter()
                .filter(|s| perm_in_hom(&PermDatum::new(s.clone(), l.clone()).unwrap()).unwrap())
                .collect();
            assert_eq!(hom_members(&l), filtered);
        }
    }

    #[test]
    fn degree_mismatch() {
        let l = hat_quiver(&presets::one_loop(2), &vec![2]).unwrap();
        assert!(PermDatum::new(Permutation::identity(3), l).is_err());
    }
}
