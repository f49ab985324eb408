use std::collections::BTreeMap;

use proptest::prelude::*;
use qtl_core::algebra::{poly_equal, Field};
use qtl_core::invariant::{
    act, contract_permutation, generator, hat_quiver, hom_members, multidegree_balanced, random_group_element,
    random_point, specialize_dim, tr_star, tr_star_direct, trace_product_poly, verify_invariance, PermDatum,
};
use qtl_core::quiver::{parse_spec_str, presets, ArrowCase, DoubledQuiver, MixedRep};
use qtl_core::supermixed::{
    build_reduction, push_invariant, verify_supermixed, ComponentShape, GroupKind, SupermixedSpec,
};
use qtl_core::words::{enumerate_closed_words, is_admissible, transpose_word, Dedupe, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rational;
const F101: Field = Field::Prime(101);

/// A pair `(1, 2*)` and an ordinary vertex 3, with an arrow of each case
/// and a loop.
fn mixed(d_pair: usize, d_ord: usize) -> MixedRep {
    let text = format!(
        r#"{{
        "vertices": 3,
        "ordinary": [3],
        "pairs": [[1, 2]],
        "arrows": [
            {{"id": "a", "from": 3, "to": 3}},
            {{"id": "b", "from": 3, "to": 1}},
            {{"id": "c", "from": 1, "to": 2}},
            {{"id": "e", "from": 2, "to": 3}},
            {{"id": "f", "from": 2, "to": 1}}
        ],
        "dims": [
            {{"size": {d_pair}, "starred": false}},
            {{"size": {d_pair}, "starred": true}},
            {{"size": {d_ord}, "starred": false}}
        ]
    }}"#
    );
    parse_spec_str(&text).unwrap().rep
}

fn reps() -> Vec<MixedRep> {
    vec![presets::loops(2, 2, true), presets::example1(1, 2), presets::two_cycle(2, 1), mixed(2, 1)]
}

fn words_of(rep: &MixedRep, len: usize) -> Vec<Word> {
    let dq = DoubledQuiver::new(rep).unwrap();
    enumerate_closed_words(&dq, len, Dedupe::Rotation)
}

#[test]
fn normalization_leaves_no_fourth_case() {
    let text = r#"{
        "vertices": 4,
        "pairs": [[1, 2], [3, 4]],
        "arrows": [{"id": "x", "from": 2, "to": 4}, {"id": "y", "from": 1, "to": 3}],
        "dims": [
            {"size": 2, "starred": false}, {"size": 2, "starred": true},
            {"size": 2, "starred": false}, {"size": 2, "starred": true}
        ]
    }"#;
    let rep = parse_spec_str(text).unwrap().rep;
    assert!(rep.has_fourth_case());
    let (norm, relabel) = rep.eliminate_fourth_case();
    assert!(norm.arrows().iter().all(|a| norm.classify_arrow(a) != ArrowCase::Case4));
    assert_eq!(relabel.transposed_arrows().collect::<Vec<_>>(), vec!["x"]);
}

#[test]
fn doubled_quiver_counts() {
    for rep in reps() {
        let dq = DoubledQuiver::new(&rep).unwrap();
        assert_eq!(dq.arrows().len(), 2 * rep.arrows().len());
        assert_eq!(dq.vertices().len(), rep.quiver().vertex_count() + rep.quiver().ordinary().len());
        for l in dq.letters() {
            let (from, to) = dq.endpoints(&l).unwrap();
            let (bfrom, bto) = dq.endpoints(&l.toggled()).unwrap();
            assert_eq!(l.toggled().toggled(), l);
            assert_eq!(dq.dim(from), dq.dim(bto));
            assert_eq!(dq.dim(to), dq.dim(bfrom));
        }
    }
}

#[test]
fn mixed_generators_are_invariant() {
    let rep = mixed(2, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for w in words_of(&rep, 3) {
        for j in 1..=2 {
            let g = generator(&rep, &w, j, Q).unwrap();
            for field in [F101, Q] {
                let r = verify_invariance(&g, &rep, 20, field, &mut rng).unwrap();
                assert!(r.passed(), "sigma_{j}({w}) over {field:?}: {r:?}");
            }
        }
    }
}

#[test]
fn contraction_matches_the_index_sum_on_every_member() {
    let rep = mixed(2, 1);
    let mut tested = 0;
    for md in multidegrees(5, 4) {
        if !multidegree_balanced(&rep, &md) {
            continue;
        }
        let layout = hat_quiver(&rep, &md).unwrap();
        let members = hom_members(&layout);
        tested += usize::from(!members.is_empty());
        let dq = DoubledQuiver::new(&layout.hat).unwrap();
        for sigma in members {
            let p = PermDatum::new(sigma, layout.clone()).unwrap();
            let c = contract_permutation(&p).unwrap();
            for w in c.right.factor_words() {
                assert!(is_admissible(&dq, &w).unwrap(), "{w}");
            }
            let inv = tr_star(&p, Q).unwrap();
            assert!(poly_equal(&inv.poly, &tr_star_direct(&p, Q).unwrap()).unwrap(), "{}", p.sigma);
            assert_eq!(trace_product_poly(&c.right, &layout.hat, Q).unwrap(), inv.poly);
        }
    }
    assert!(tested >= 5, "{tested} multidegrees with members");
}

/// Every multidegree with `n` entries and total at most `max`.
fn multidegrees(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|md: Vec<u32>| {
                let used: u32 = md.iter().sum();
                (0..=max - used).map(move |k| [md.clone(), vec![k]].concat())
            })
            .collect();
    }
    out.retain(|md| md.iter().sum::<u32>() > 0);
    out
}

#[test]
fn pushed_images_on_a_mixed_space() {
    let rep = mixed(2, 2);
    // ordinary factors come first
    let groups = vec![GroupKind::O, GroupKind::Sp];
    let mut shapes = BTreeMap::new();
    shapes.insert("c".to_string(), ComponentShape::Skew);
    shapes.insert("a".to_string(), ComponentShape::Symmetric);
    let spec = SupermixedSpec::new(rep, groups, shapes).unwrap();
    let r = build_reduction(&spec, Q).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let dq = DoubledQuiver::new(&r.qprime.eliminate_fourth_case().0).unwrap();
    let words = enumerate_closed_words(&dq, 3, Dedupe::RotationTranspose);
    assert!(!words.is_empty());
    for w in words {
        let g = generator(&r.qprime, &w, 1, Q).unwrap();
        let p = push_invariant(&g, &r).unwrap();
        let report = verify_supermixed(&p, &r, 8, F101, &mut rng).unwrap();
        assert!(report.passed, "{w}: {report:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generators_ignore_rotation_and_transpose(rep_ix in 0usize..4, pick in any::<prop::sample::Index>(),
                                                 k in 0usize..4, j in 1usize..3) {
        let rep = &reps()[rep_ix];
        let words = words_of(rep, 3);
        let w = pick.get(&words);
        let g = generator(rep, w, j, Q).unwrap().poly;
        prop_assert_eq!(&generator(rep, &w.rotate(k % w.len()), j, Q).unwrap().poly, &g);
        prop_assert_eq!(&generator(rep, &transpose_word(w), j, Q).unwrap().poly, &g);
    }

    #[test]
    fn action_is_a_right_action(rep_ix in 0usize..4, seed in any::<u64>()) {
        let rep = &reps()[rep_ix];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_point(rep, F101, &mut rng);
        let g = random_group_element(rep, F101, &mut rng);
        let h = random_group_element(rep, F101, &mut rng);
        let twice = act(rep, &act(rep, &x, &g).unwrap(), &h).unwrap();
        prop_assert_eq!(twice, act(rep, &x, &g.compose(&h).unwrap()).unwrap());
    }

    #[test]
    fn dimension_specialization_composes(pick in any::<prop::sample::Index>(), j in 1usize..3) {
        let big = mixed(3, 3);
        let mid = mixed(2, 2);
        let small = mixed(1, 1);
        let words = words_of(&big, 3);
        let w = pick.get(&words);
        let inv = generator(&big, w, j, Q).unwrap();
        let stepwise = specialize_dim(&specialize_dim(&inv, &big, &mid).unwrap(), &mid, &small).unwrap();
        prop_assert_eq!(&stepwise.poly, &specialize_dim(&inv, &big, &small).unwrap().poly);
        // specializing a generator gives the generator of the smaller space
        prop_assert_eq!(specialize_dim(&inv, &big, &mid).unwrap().poly, generator(&mid, w, j, Q).unwrap().poly);
    }
}
