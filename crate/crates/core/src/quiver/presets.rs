//! Small standard quivers used throughout tests and the acceptance suite.

use super::{Arrow, DimEntry, MixedRep};

fn arrow(id: impl Into<String>, from: usize, to: usize) -> Arrow {
    Arrow { id: id.into(), from, to }
}

/// One ordinary vertex of dimension `d` with a single loop `a`.
pub fn one_loop(d: usize) -> MixedRep {
    loops(1, d, false)
}

/// One ordinary vertex with `m` loops named `a1..am`; a single loop is
/// named `a` unless `numbered` is set.
pub fn loops(m: usize, d: usize, numbered: bool) -> MixedRep {
    let arrows = if m == 1 && !numbered {
        vec![arrow("a", 1, 1)]
    } else {
        (1..=m).map(|k| arrow(format!("a{k}"), 1, 1)).collect()
    };
    MixedRep::new(1, vec![1], vec![], arrows, vec![DimEntry { size: d, starred: false }]).expect("valid preset")
}

/// The pair `(1, 2*)` of dimension `d`, loops `a1..am` at 1,
/// `b: 1 -> 2` and `c: 2 -> 1`.
pub fn example1(m: usize, d: usize) -> MixedRep {
    let mut arrows: Vec<Arrow> = (1..=m).map(|k| arrow(format!("a{k}"), 1, 1)).collect();
    arrows.push(arrow("b", 1, 2));
    arrows.push(arrow("c", 2, 1));
    MixedRep::new(
        2,
        vec![],
        vec![vec![1, 2]],
        arrows,
        vec![DimEntry { size: d, starred: false }, DimEntry { size: d, starred: true }],
    )
    .expect("valid preset")
}

/// Two ordinary vertices of dimensions `d1, d2` with `a: 1 -> 2`, `b: 2 -> 1`.
pub fn two_cycle(d1: usize, d2: usize) -> MixedRep {
    MixedRep::new(
        2,
        vec![1, 2],
        vec![],
        vec![arrow("a", 1, 2), arrow("b", 2, 1)],
        vec![DimEntry { size: d1, starred: false }, DimEntry { size: d2, starred: false }],
    )
    .expect("valid preset")
}
