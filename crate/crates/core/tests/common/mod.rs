#![allow(dead_code)]

use std::path::PathBuf;

use absnum::{Ans, Dfa, Letter};

pub const FLEET: [&str; 4] = ["unary.aut", "ab.aut", "bin.aut", "astarbstar.aut"];

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

pub fn fleet() -> Vec<(&'static str, Ans, Dfa)> {
    FLEET
        .iter()
        .map(|&name| {
            let text = fixture(name);
            (name, Ans::parse(&text).unwrap(), Dfa::parse(&text).unwrap())
        })
        .collect()
}

/// Every word over `letters` symbols of length at most `max_len`, shortest
/// first and lexicographic within a length.
pub fn all_words(letters: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut level = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for l in 0..letters {
                let mut v: Vec<Letter> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// First `count` accepted words in radix order: generate every word by
/// length, keep the accepted ones. Only for languages dense enough that
/// `count` words appear at small lengths.
pub fn radix_by_filter(dfa: &Dfa, count: usize, max_len: usize) -> Vec<Vec<Letter>> {
    all_words(dfa.alphabet().len(), max_len)
        .into_iter()
        .filter(|w| dfa.accepts(w))
        .take(count)
        .collect()
}

/// Euclid.
pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(N, C)` by a representability table up to `max(cs)²`.
pub fn frobenius_table(r: u64, cs: &[u64]) -> (u64, Vec<u64>) {
    if r == 0 {
        return (0, Vec::new());
    }
    let max = *cs.iter().max().unwrap();
    let limit = (max * max + max) as usize;
    let mut ok = vec![false; limit + 1];
    ok[0] = true;
    for v in 1..=limit {
        ok[v] = cs.iter().any(|&c| c > 0 && c as usize <= v && ok[v - c as usize]);
    }
    let top = limit as u64 / r;
    let bound = (0..=top).rev().find(|&n| !ok[(n * r) as usize]).map_or(0, |n| n + 1);
    (bound, (0..bound).filter(|&n| ok[(n * r) as usize]).collect())
}
