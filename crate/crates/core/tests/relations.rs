mod common;

use absnum::padded::{self, pad, unpad, validate_padded, well_padded};
use absnum::{Alphabet, Ans, OrderedAlphabet, PaddedRelation, Word};
use common::fleet;
use proptest::prelude::*;

fn ans(name: &str) -> Ans {
    Ans::parse(&common::fixture(name)).unwrap()
}

fn rel_contains(rel: &PaddedRelation, ans: &Ans, ranks: &[u64]) -> bool {
    let tuple: Vec<Word> = ranks.iter().map(|&n| ans.rep(n)).collect();
    rel.contains(&tuple)
}

fn tuple_alphabet(arity: usize) -> Alphabet {
    Alphabet::new(OrderedAlphabet::new(["a", "b"]).unwrap(), arity).unwrap()
}

fn tuple_strategy() -> impl Strategy<Value = Vec<Word>> {
    (1usize..=4).prop_flat_map(|d| prop::collection::vec(prop::collection::vec(0usize..2, 0..=8), d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pad_unpad_roundtrip(tuple in tuple_strategy()) {
        let alphabet = tuple_alphabet(tuple.len());
        let word = pad(&alphabet, &tuple).unwrap();
        prop_assert_eq!(word.len(), tuple.iter().map(Vec::len).max().unwrap());
        prop_assert!(well_padded(&alphabet).accepts(&word));
        prop_assert_eq!(unpad(&alphabet, &word).unwrap(), tuple);
    }

    #[test]
    fn boolean_operations_mirror_sets(a in 0u64..4, b in 0u64..4) {
        let ab = ans("ab.aut");
        let x = PaddedRelation::new(&ab.congruence_pair_recognizer(2, a % 2).unwrap()).unwrap();
        let y = PaddedRelation::new(&ab.congruence_pair_recognizer(3, b % 3).unwrap()).unwrap();
        let union = x.union(&y).unwrap();
        let inter = x.intersect(&y).unwrap();
        let diff = x.difference(&y).unwrap();
        for m in 0..30 {
            for n in 0..30 {
                let (p, q) = (rel_contains(&x, &ab, &[m, n]), rel_contains(&y, &ab, &[m, n]));
                prop_assert_eq!(rel_contains(&union, &ab, &[m, n]), p || q);
                prop_assert_eq!(rel_contains(&inter, &ab, &[m, n]), p && q);
                prop_assert_eq!(rel_contains(&diff, &ab, &[m, n]), p && !q);
            }
        }
    }
}

#[test]
fn ill_padded_words_are_rejected() {
    let alphabet = tuple_alphabet(2);
    let letter = |s: &str| alphabet.parse_letter(s).unwrap();
    let bad = vec![letter("#|a"), letter("a|a")];
    assert!(unpad(&alphabet, &bad).is_err());
    assert!(!well_padded(&alphabet).accepts(&bad));
    assert!(validate_padded(&well_padded(&alphabet)));
    assert!(PaddedRelation::new(&absnum::Dfa::universal(alphabet)).is_err());
}

#[test]
fn cylindrify_adds_a_free_track() {
    let bin = ans("bin.aut");
    let succ = padded::successor(&bin);
    let wide = succ.cylindrify(1, Some(bin.dfa())).unwrap();
    assert_eq!(wide.arity(), 3);
    for m in 0..20 {
        for k in 0..20 {
            for n in 0..20 {
                assert_eq!(rel_contains(&wide, &bin, &[m, k, n]), n == m + 1);
            }
        }
    }
    assert!(wide.project(1).unwrap().dfa().equivalent(succ.dfa()).unwrap());
    let free = succ.cylindrify(0, None).unwrap();
    assert!(free.contains(&[vec![1, 1, 0], bin.rep(4u32), bin.rep(5u32)]));
}

#[test]
fn successor_is_a_function_graph() {
    for (name, ans, _) in fleet() {
        let succ = padded::successor(&ans);
        for m in 0u64..300 {
            assert!(rel_contains(&succ, &ans, &[m, m + 1]), "{name} m={m}");
        }
        for m in 0u64..40 {
            for n in 0u64..40 {
                assert_eq!(rel_contains(&succ, &ans, &[m, n]), n == m + 1, "{name}");
            }
        }
    }
}

#[test]
fn radix_leq_is_a_total_order() {
    for (name, ans, _) in fleet() {
        let leq = padded::radix_leq(&ans);
        let less = padded::radix_less(&ans);
        for m in 0u64..100 {
            for n in 0u64..100 {
                assert_eq!(rel_contains(&leq, &ans, &[m, n]), m <= n, "{name} ({m}, {n})");
                assert_eq!(rel_contains(&less, &ans, &[m, n]), m < n, "{name}");
            }
        }
    }
}

#[test]
fn composition_laws() {
    for (name, ans, _) in fleet() {
        let id = padded::identity(&ans);
        let succ = padded::successor(&ans);
        let less = padded::radix_less(&ans);
        assert!(id.compose(&succ).unwrap().dfa().equivalent(succ.dfa()).unwrap(), "{name}");
        assert!(succ.compose(&id).unwrap().dfa().equivalent(succ.dfa()).unwrap(), "{name}");
        let left = succ.compose(&succ).unwrap().compose(&less).unwrap();
        let right = succ.compose(&succ.compose(&less).unwrap()).unwrap();
        assert!(left.dfa().equivalent(right.dfa()).unwrap(), "{name}");
    }
}

#[test]
fn projected_chain_is_shift_two() {
    for (name, ans, _) in fleet() {
        let succ = padded::successor(&ans);
        let first = succ.embed(&[0, 1], 3).unwrap();
        let second = succ.embed(&[1, 2], 3).unwrap();
        let chain = first.intersect(&second).unwrap().project(1).unwrap();
        let two = padded::shift(&ans, 2);
        assert!(chain.dfa().equivalent(two.dfa()).unwrap(), "{name}");
        for m in 0u64..50 {
            assert!(rel_contains(&two, &ans, &[m, m + 2]));
            assert!(!rel_contains(&two, &ans, &[m, m + 3]));
        }
    }
}

#[test]
fn shift_zero_is_identity() {
    let ab = ans("ab.aut");
    let zero = padded::shift(&ab, 0);
    assert!(zero.dfa().equivalent(padded::identity(&ab).dfa()).unwrap());
    let seven = padded::shift(&ab, 7);
    for m in 0u64..200 {
        assert!(rel_contains(&seven, &ab, &[m, m + 7]));
    }
}

#[test]
fn language_relation_and_tuples() {
    let stars = ans("astarbstar.aut");
    let all = padded::all_in_language(&stars, 2).unwrap();
    let tuples = all.tuples_up_to(2);
    // Words of a*b* of length ≤ 2: ε, a, b, aa, ab, bb.
    assert_eq!(tuples.len(), 36);
    for t in &tuples {
        assert!(t.iter().all(|w| stars.contains(w)));
    }
    assert!(PaddedRelation::empty(all.alphabet()).is_empty());
    assert!(!PaddedRelation::full(all.alphabet()).is_empty());
}
