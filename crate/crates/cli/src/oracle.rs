//! Brute-force reference implementations.
//!
//! Nothing here calls the algorithms it is used to check: radix enumeration
//! is breadth-first generation over live prefixes, Frobenius values come from
//! a coin-change table, and normal-form members are produced by nested loops
//! over the level multipliers.

use std::collections::BTreeSet;

use absnum::{Dfa, Letter, NfUnion};

/// The first `count` words accepted by `dfa`, generated level by level.
///
/// Each level lists the live prefixes of one length in lexicographic order;
/// extending them letter by letter in alphabet order keeps that order.
pub fn radix_enumerate(dfa: &Dfa, count: usize) -> Vec<Vec<Letter>> {
    let n = dfa.num_states();
    let letters: Vec<Letter> = dfa.alphabet().letters().collect();
    let mut live: Vec<bool> = (0..n).map(|q| dfa.is_accepting(q)).collect();
    loop {
        let mut changed = false;
        for q in 0..n {
            if !live[q] && letters.iter().any(|&l| dfa.step(q, l).is_some_and(|t| live[t])) {
                live[q] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut out = Vec::new();
    if n == 0 || !live[dfa.initial()] {
        return out;
    }
    let mut level: Vec<(Vec<Letter>, usize)> = vec![(Vec::new(), dfa.initial())];
    while !level.is_empty() && out.len() < count {
        for (w, q) in &level {
            if dfa.is_accepting(*q) {
                out.push(w.clone());
                if out.len() == count {
                    return out;
                }
            }
        }
        let mut next = Vec::new();
        for (w, q) in &level {
            for &l in &letters {
                if let Some(t) = dfa.step(*q, l).filter(|&t| live[t]) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push((v, t));
                }
            }
        }
        level = next;
    }
    out
}

/// `(N, C)` for multiples of `r` over the coefficients `cs`, read from a
/// representability table.
///
/// Every multiple of `gcd(cs)` above `max(cs)²` is representable, so the
/// table only needs to reach that far.
pub fn frobenius_by_table(r: u64, cs: &[u64]) -> (u64, BTreeSet<u64>) {
    if r == 0 {
        return (0, BTreeSet::new());
    }
    let max = cs.iter().copied().max().unwrap_or(0);
    let limit = (max * max + max) as usize;
    let mut table = vec![false; limit + 1];
    table[0] = true;
    for v in 1..=limit {
        table[v] = cs
            .iter()
            .any(|&c| c > 0 && c as usize <= v && table[v - c as usize]);
    }
    let multiples: Vec<u64> = (0..=limit as u64 / r).collect();
    let bound = multiples
        .iter()
        .rev()
        .find(|&&n| !table[(n * r) as usize])
        .map_or(0, |&n| n + 1);
    let residues = (0..bound).filter(|&n| table[(n * r) as usize]).collect();
    (bound, residues)
}

/// Members of a normal-form union with every coordinate at most `bound`,
/// by direct evaluation of the level sums.
pub fn normal_form_points(set: &NfUnion, bound: u64) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    for nf in set.forms() {
        let levels = nf.levels();
        // Largest useful multiplier per level.
        let caps: Vec<u64> = levels
            .iter()
            .map(|l| bound.checked_div(l.c).unwrap_or(0))
            .collect();
        let mut n = vec![0u64; levels.len()];
        loop {
            let mut x = vec![0u64; set.dim()];
            for (level, &m) in levels.iter().zip(&n) {
                for i in level.axes.iter() {
                    x[i] += level.c * m + level.b;
                }
            }
            if x.iter().all(|&v| v <= bound) {
                out.insert(x);
            }
            let Some(i) = (0..n.len()).find(|&i| n[i] < caps[i]) else {
                break;
            };
            n[i] += 1;
            n[..i].iter_mut().for_each(|v| *v = 0);
        }
    }
    out
}

/// Every tuple of `[0, bound]^dim` in lexicographic order.
pub fn box_tuples(dim: usize, bound: u64) -> impl Iterator<Item = Vec<u64>> {
    let side = bound + 1;
    let total = side.pow(dim as u32);
    (0..total).map(move |mut code| {
        let mut x = vec![0u64; dim];
        for slot in x.iter_mut().rev() {
            *slot = code % side;
            code /= side;
        }
        x
    })
}
