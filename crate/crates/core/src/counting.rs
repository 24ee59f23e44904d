//! Path counting and radix-order enumeration.
//!
//! `u_q(m)` is the number of words of length `m` accepted from state `q`.
//! It satisfies `u_q(0) = [q accepting]` and
//! `u_q(m) = Σ_σ u_{δ(q,σ)}(m-1)`, with missing transitions counting zero.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::alphabet::Letter;
use crate::automaton::Dfa;
use crate::error::{Error, Result};

/// Memo table of `u_q(m)` and of `V(m)`, the number of accepted words of
/// length below `m` from the initial state.
#[derive(Clone, Debug)]
pub struct CountTable {
    successors: Vec<Vec<usize>>,
    accepting: Vec<bool>,
    initial: usize,
    rows: Vec<Vec<BigUint>>,
    below: Vec<BigUint>,
}

impl CountTable {
    pub fn new(dfa: &Dfa) -> Self {
        let successors = (0..dfa.num_states())
            .map(|q| {
                dfa.alphabet()
                    .letters()
                    .filter_map(|l| dfa.step(q, l))
                    .collect()
            })
            .collect();
        let accepting: Vec<bool> = (0..dfa.num_states()).map(|q| dfa.is_accepting(q)).collect();
        let first: Vec<BigUint> = accepting
            .iter()
            .map(|&a| if a { BigUint::one() } else { BigUint::zero() })
            .collect();
        CountTable {
            successors,
            accepting,
            initial: dfa.initial(),
            rows: vec![first],
            below: vec![BigUint::zero()],
        }
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    /// Makes rows `0..=m` available.
    pub fn ensure(&mut self, m: usize) {
        while self.rows.len() <= m {
            let prev = self.rows.last().expect("row 0 always present");
            let next: Vec<BigUint> = self
                .successors
                .iter()
                .map(|succ| succ.iter().map(|&t| &prev[t]).sum())
                .collect();
            self.rows.push(next);
        }
        while self.below.len() <= m + 1 {
            let k = self.below.len() - 1;
            let v = &self.below[k] + &self.rows[k][self.initial];
            self.below.push(v);
        }
    }

    /// `u_q(m)`; rows must have been made available with [`ensure`](Self::ensure).
    pub fn get(&self, q: usize, m: usize) -> &BigUint {
        &self.rows[m][q]
    }

    /// `V(m)`, available once `ensure(m)` was called.
    pub fn below(&self, m: usize) -> &BigUint {
        &self.below[m]
    }

    /// Number of rows currently computed.
    pub fn rows(&self) -> usize {
        self.rows.len()
    }
}

impl Dfa {
    /// `u_q(m)`: the number of words of length `m` accepted from `q`.
    pub fn count_words(&self, q: usize, m: usize) -> Result<BigUint> {
        if q >= self.num_states() {
            return Err(Error::UnknownState(format!("q{q}")));
        }
        let mut table = CountTable::new(self);
        table.ensure(m);
        Ok(table.get(q, m).clone())
    }

    /// Accepted words in radix order (shorter first, then lexicographic by
    /// letter order).
    pub fn radix_words(&self) -> RadixWords {
        RadixWords::new(self)
    }

    /// The first `count` accepted words in radix order.
    pub fn enumerate_radix(&self, count: usize) -> Vec<Vec<Letter>> {
        self.radix_words().take(count).collect()
    }
}

/// Iterator over the accepted words of a DFA in radix order.
///
/// Within one length the next word is obtained by the usual lexicographic
/// successor step, pruned by a table telling which states accept some word of
/// exactly the remaining length.
pub struct RadixWords {
    dfa: Dfa,
    live: Vec<Vec<bool>>,
    max_len: Option<usize>,
    length: usize,
    current: Option<(Vec<Letter>, Vec<usize>)>,
    started: bool,
}

impl RadixWords {
    fn new(dfa: &Dfa) -> Self {
        let dfa = dfa.trim();
        let max_len = dfa.is_finite().then(|| dfa.num_states());
        let live = vec![(0..dfa.num_states()).map(|q| dfa.is_accepting(q)).collect()];
        RadixWords {
            dfa,
            live,
            max_len,
            length: 0,
            current: None,
            started: false,
        }
    }

    fn ensure(&mut self, m: usize) {
        while self.live.len() <= m {
            let prev = self.live.last().unwrap();
            let next = (0..self.dfa.num_states())
                .map(|q| {
                    self.dfa
                        .alphabet()
                        .letters()
                        .any(|l| self.dfa.step(q, l).is_some_and(|t| prev[t]))
                })
                .collect();
            self.live.push(next);
        }
    }

    /// Smallest completion of length `rem` from `q`, appended to the buffers.
    fn complete_from(&self, mut q: usize, rem: usize, word: &mut Vec<Letter>, path: &mut Vec<usize>) {
        for r in (0..rem).rev() {
            let l = self
                .dfa
                .alphabet()
                .letters()
                .find(|&l| self.dfa.step(q, l).is_some_and(|t| self.live[r][t]))
                .expect("live state has a live successor");
            q = self.dfa.step(q, l).unwrap();
            word.push(l);
            path.push(q);
        }
    }

    fn first_of_length(&mut self, m: usize) -> Option<(Vec<Letter>, Vec<usize>)> {
        self.ensure(m);
        let q0 = self.dfa.initial();
        if !self.live[m][q0] {
            return None;
        }
        let mut word = Vec::with_capacity(m);
        let mut path = vec![q0];
        self.complete_from(q0, m, &mut word, &mut path);
        Some((word, path))
    }

    fn successor(&self, word: &[Letter], path: &[usize]) -> Option<(Vec<Letter>, Vec<usize>)> {
        let m = word.len();
        let letters = self.dfa.alphabet().len();
        for i in (0..m).rev() {
            let q = path[i];
            let rem = m - i - 1;
            let next = (word[i] + 1..letters)
                .find(|&l| self.dfa.step(q, l).is_some_and(|t| self.live[rem][t]));
            if let Some(l) = next {
                let mut w = word[..i].to_vec();
                let mut p = path[..=i].to_vec();
                let t = self.dfa.step(q, l).unwrap();
                w.push(l);
                p.push(t);
                self.complete_from(t, rem, &mut w, &mut p);
                return Some((w, p));
            }
        }
        None
    }
}

impl Iterator for RadixWords {
    type Item = Vec<Letter>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.started {
            if let Some((w, p)) = &self.current {
                if let Some(next) = self.successor(w, p) {
                    self.current = Some(next);
                    return self.current.as_ref().map(|(w, _)| w.clone());
                }
            }
            self.length += 1;
        }
        self.started = true;
        loop {
            if self.max_len.is_some_and(|max| self.length > max) {
                self.current = None;
                return None;
            }
            if let Some(first) = self.first_of_length(self.length) {
                self.current = Some(first);
                return self.current.as_ref().map(|(w, _)| w.clone());
            }
            self.length += 1;
        }
    }
}
