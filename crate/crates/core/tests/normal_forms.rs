mod common;

use std::collections::BTreeSet;

use absnum::{
    decompose_unary, frobenius_bound, residue_set, y_decompose, Axes, Level, NfUnion, NormalForm,
    YSet,
};
use common::{frobenius_table, gcd};
use proptest::prelude::*;

/// Members of `form` in `[0, bound]^d` from the level sums, multiplier by
/// multiplier.
fn expand(form: &NormalForm, bound: u64) -> BTreeSet<Vec<u64>> {
    let mut points = vec![vec![0u64; form.dim()]];
    for level in form.levels() {
        let mut next = Vec::new();
        for p in &points {
            for n in 0..=bound {
                let add = level.c * n + level.b;
                let mut q = p.clone();
                for i in level.axes.iter() {
                    q[i] += add;
                }
                if q.iter().any(|&v| v > bound) {
                    break;
                }
                next.push(q);
                if level.c == 0 {
                    break;
                }
            }
        }
        points = next;
    }
    points.into_iter().collect()
}

fn expand_union(set: &NfUnion, bound: u64) -> BTreeSet<Vec<u64>> {
    set.forms().iter().flat_map(|f| expand(f, bound)).collect()
}

fn form_strategy(dim: usize) -> impl Strategy<Value = NormalForm> {
    let full = (1u32 << dim) - 1;
    prop::collection::vec((1u32..=full, 0u64..5, 0u64..4), 1..=3).prop_map(move |raw| {
        let mut prev = full;
        let levels = raw
            .into_iter()
            .map(|(mask, c, b)| {
                let axes = if mask & prev == 0 { prev } else { mask & prev };
                prev = axes;
                Level { axes: Axes(axes), c, b }
            })
            .collect();
        NormalForm::new(dim, levels).unwrap()
    })
}

fn union_strategy() -> impl Strategy<Value = NfUnion> {
    (1usize..=3).prop_flat_map(|dim| {
        prop::collection::vec(form_strategy(dim), 1..=3)
            .prop_map(move |forms| NfUnion::new(dim, forms).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frobenius_matches_table(
        cs in prop::collection::vec(1u64..=12, 1..=4),
        scale in 1u64..=3,
    ) {
        let r = cs.iter().copied().fold(0, gcd) * scale;
        let cs: Vec<u64> = cs.iter().map(|c| c * scale).collect();
        let (bound, residues) = frobenius_table(r, &cs);
        prop_assert_eq!(frobenius_bound(r, &cs).unwrap(), bound);
        let got: Vec<u64> = residue_set(r, &cs, bound).unwrap().into_iter().collect();
        prop_assert_eq!(got, residues);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn membership_matches_expansion(set in union_strategy()) {
        let bound = 12;
        let expected = expand_union(&set, bound);
        prop_assert_eq!(set.points_in_box(bound), expected.clone());
        for x in common_box(set.dim(), bound) {
            prop_assert_eq!(set.contains(&x), expected.contains(&x));
        }
    }

    #[test]
    fn text_roundtrip(set in union_strategy()) {
        let again = NfUnion::parse(&set.to_text()).unwrap();
        prop_assert_eq!(again, set);
    }

    #[test]
    fn decompose_roundtrip(set in union_strategy()) {
        let dfa = set.to_unary_dfa().unwrap();
        let back = decompose_unary(&dfa).unwrap();
        prop_assert!(back.to_unary_dfa().unwrap().equivalent(&dfa).unwrap());
        prop_assert_eq!(expand_union(&back, 10), expand_union(&set, 10));
        for form in back.forms() {
            let mut prev = Axes::all(form.dim());
            for level in form.levels() {
                prop_assert!(!level.axes.is_empty() && level.axes.is_subset(prev));
                prev = level.axes;
            }
        }
    }

    #[test]
    fn y_decomposition_matches(form in (1usize..=3).prop_flat_map(form_strategy)) {
        let y = y_decompose(&form).unwrap();
        let expected = expand(&form, 12);
        for x in common_box(form.dim(), 12) {
            prop_assert_eq!(y.contains(&x), expected.contains(&x), "{:?}", x);
        }
        for term in y.terms() {
            for set in term {
                set.validate(form.dim()).unwrap();
                if set.modulus() > 0 {
                    prop_assert!(set.offset() < set.modulus());
                }
            }
        }
    }
}

fn common_box(dim: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u64>| {
                (0..=bound).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

#[test]
fn frobenius_examples() {
    assert_eq!(frobenius_bound(1, &[3, 5]).unwrap(), 8);
    assert_eq!(residue_set(1, &[3, 5], 8).unwrap(), BTreeSet::from([0, 3, 5, 6]));
    assert_eq!(frobenius_bound(2, &[4, 6]).unwrap(), 2);
    assert!(frobenius_bound(2, &[3, 5]).is_err());
}

#[test]
fn membership_examples() {
    let set = NfUnion::parse(&common::fixture("expart1.nf")).unwrap();
    assert!(set.contains(&[5, 12, 14, 5]));
    assert!(set.contains(&[0, 1, 3, 0]));
    assert!(!set.contains(&[0, 0, 2, 0]));
    assert!(!set.contains(&[5, 5, 7, 0]));
    let diagonal = NfUnion::parse(&common::fixture("diagonal.nf")).unwrap();
    assert!(diagonal.contains(&[9, 9]));
    assert!(!diagonal.contains(&[9, 8]));
}

#[test]
fn invalid_forms_are_rejected() {
    let level = |axes: &[usize], c, b| Level { axes: Axes::from_axes(axes.iter().copied()), c, b };
    assert!(NormalForm::new(2, vec![level(&[0], 1, 0), level(&[0, 1], 1, 0)]).is_err());
    assert!(NormalForm::new(2, vec![]).is_err());
    assert!(NormalForm::new(2, vec![level(&[2], 1, 0)]).is_err());
    assert!(NfUnion::parse("dim 2\nlevel A={1,3} c=1 b=(0,0)\n").is_err());
}

#[test]
fn diagonal_y_decomposition() {
    let set = NfUnion::parse(&common::fixture("diagonal.nf")).unwrap();
    let y = y_decompose(&set.forms()[0]).unwrap();
    assert!(y.a.is_empty());
    assert_eq!(
        y.b,
        vec![
            YSet::OnlyJ { j: 0, r: 1, s: 0, n_min: 0 },
            YSet::JAndK { j: 1, k: 0, r: 0, s: 0, n_min: 0 },
        ]
    );
}
