//! Finite automata over [`Alphabet`]s.
//!
//! [`Nfa`] is the general carrier (several initial states, ε-moves) and
//! [`Dfa`] the deterministic one, possibly partial. Every boolean operation
//! returns a minimal complete DFA in canonical form: states are numbered in
//! breadth-first discovery order from the initial state, following the
//! letter order. Two canonical DFAs over the same alphabet are equal as
//! values exactly when they accept the same language.

use std::collections::{HashMap, VecDeque};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

pub(crate) const NONE: u32 = u32::MAX;

/// Nondeterministic automaton with ε-moves.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    initial: Vec<usize>,
    accepting: Vec<bool>,
    transitions: Vec<Vec<(Letter, usize)>>,
    epsilon: Vec<Vec<usize>>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            initial: Vec::new(),
            accepting: Vec::new(),
            transitions: Vec::new(),
            epsilon: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.accepting.push(accepting);
        self.transitions.push(Vec::new());
        self.epsilon.push(Vec::new());
        self.accepting.len() - 1
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) {
        self.accepting[state] = accepting;
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn add_initial(&mut self, state: usize) {
        if !self.initial.contains(&state) {
            self.initial.push(state);
        }
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn add_transition(&mut self, from: usize, letter: Letter, to: usize) {
        debug_assert!(letter < self.alphabet.len());
        if !self.transitions[from].contains(&(letter, to)) {
            self.transitions[from].push((letter, to));
        }
    }

    pub fn add_epsilon(&mut self, from: usize, to: usize) {
        if from != to && !self.epsilon[from].contains(&to) {
            self.epsilon[from].push(to);
        }
    }

    pub fn transitions(&self, state: usize) -> &[(Letter, usize)] {
        &self.transitions[state]
    }

    pub fn epsilon_moves(&self, state: usize) -> &[usize] {
        &self.epsilon[state]
    }

    /// Copies every state of `other` into `self` (same alphabet required) and
    /// returns the offset of the copied states. Initial states of `other`
    /// are not marked initial.
    pub fn absorb(&mut self, other: &Nfa) -> Result<usize> {
        check_alphabets(&self.alphabet, &other.alphabet)?;
        let offset = self.num_states();
        for q in 0..other.num_states() {
            self.add_state(other.accepting[q]);
        }
        for q in 0..other.num_states() {
            for &(l, t) in &other.transitions[q] {
                self.transitions[offset + q].push((l, offset + t));
            }
            for &t in &other.epsilon[q] {
                self.epsilon[offset + q].push(offset + t);
            }
        }
        Ok(offset)
    }

    /// Language union by juxtaposition.
    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        let mut out = self.clone();
        let offset = out.absorb(other)?;
        for &q in &other.initial {
            out.add_initial(offset + q);
        }
        Ok(out)
    }

    /// Language concatenation `self · other`.
    pub fn concat(&self, other: &Nfa) -> Result<Nfa> {
        let mut out = self.clone();
        let offset = out.absorb(other)?;
        for q in 0..self.num_states() {
            if self.accepting[q] {
                out.accepting[q] = false;
                for &i in &other.initial {
                    out.add_epsilon(q, offset + i);
                }
            }
        }
        Ok(out)
    }

    fn closure(&self, set: &mut Vec<usize>) {
        let mut stack: Vec<usize> = set.clone();
        let mut seen: Vec<bool> = vec![false; self.num_states()];
        for &q in set.iter() {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &t in &self.epsilon[q] {
                if !seen[t] {
                    seen[t] = true;
                    set.push(t);
                    stack.push(t);
                }
            }
        }
        set.sort_unstable();
        set.dedup();
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut current = self.initial.clone();
        self.closure(&mut current);
        for &l in word {
            let mut next = Vec::new();
            for &q in &current {
                for &(m, t) in &self.transitions[q] {
                    if m == l {
                        next.push(t);
                    }
                }
            }
            self.closure(&mut next);
            if next.is_empty() {
                return false;
            }
            current = next;
        }
        current.iter().any(|&q| self.accepting[q])
    }

    pub fn is_deterministic(&self) -> bool {
        if self.initial.len() != 1 || self.epsilon.iter().any(|e| !e.is_empty()) {
            return false;
        }
        self.transitions.iter().all(|ts| {
            let mut letters: Vec<Letter> = ts.iter().map(|&(l, _)| l).collect();
            letters.sort_unstable();
            letters.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// Reinterprets a deterministic NFA as a (possibly partial) DFA.
    pub fn to_dfa(&self) -> Result<Dfa> {
        if !self.is_deterministic() {
            return Err(Error::NotDeterministic);
        }
        let letters = self.alphabet.len();
        let mut delta = vec![NONE; self.num_states() * letters];
        for (q, ts) in self.transitions.iter().enumerate() {
            for &(l, t) in ts {
                delta[q * letters + l] = t as u32;
            }
        }
        Ok(Dfa {
            alphabet: self.alphabet.clone(),
            initial: self.initial[0],
            accepting: self.accepting.clone(),
            delta,
        })
    }

    /// Subset construction. The result is complete; the empty subset becomes
    /// the dead state when it is reachable.
    pub fn determinize(&self) -> Dfa {
        let letters = self.alphabet.len();
        let mut start = self.initial.clone();
        self.closure(&mut start);
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        index.insert(start.clone(), 0);
        subsets.push(start);
        let mut delta: Vec<u32> = Vec::new();
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); letters];
        let mut i = 0;
        while i < subsets.len() {
            for b in buckets.iter_mut() {
                b.clear();
            }
            for &q in &subsets[i] {
                for &(l, t) in &self.transitions[q] {
                    buckets[l].push(t);
                }
            }
            for bucket in buckets.iter_mut() {
                let mut target = std::mem::take(bucket);
                self.closure(&mut target);
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        index.insert(target.clone(), id);
                        subsets.push(target);
                        id
                    }
                };
                delta.push(id as u32);
            }
            i += 1;
        }
        let accepting = subsets
            .iter()
            .map(|s| s.iter().any(|&q| self.accepting[q]))
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            accepting,
            delta,
        }
    }
}

/// Which boolean combination to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersect,
    Difference,
    Complement,
}

/// Deterministic automaton. Missing transitions go to an implicit dead state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: usize,
    accepting: Vec<bool>,
    delta: Vec<u32>,
}

pub(crate) fn check_alphabets(a: &Alphabet, b: &Alphabet) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch(format!("{a:?} vs {b:?}")))
    }
}

impl Dfa {
    /// Builds a DFA from a dense transition table (`None` for missing moves).
    pub fn from_table(
        alphabet: Alphabet,
        initial: usize,
        accepting: Vec<bool>,
        table: Vec<Vec<Option<usize>>>,
    ) -> Result<Dfa> {
        let n = accepting.len();
        if table.len() != n || initial >= n {
            return Err(Error::InvalidArgument("table shape".into()));
        }
        let mut delta = Vec::with_capacity(n * alphabet.len());
        for row in &table {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidArgument("table row length".into()));
            }
            for t in row {
                match t {
                    Some(t) if *t >= n => {
                        return Err(Error::UnknownState(format!("q{t}")));
                    }
                    Some(t) => delta.push(*t as u32),
                    None => delta.push(NONE),
                }
            }
        }
        Ok(Dfa {
            alphabet,
            initial,
            accepting,
            delta,
        })
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        initial: usize,
        accepting: Vec<bool>,
        delta: Vec<u32>,
    ) -> Dfa {
        debug_assert_eq!(delta.len(), accepting.len() * alphabet.len());
        Dfa {
            alphabet,
            initial,
            accepting,
            delta,
        }
    }

    /// The DFA accepting nothing.
    pub fn empty(alphabet: Alphabet) -> Dfa {
        let letters = alphabet.len();
        Dfa {
            alphabet,
            initial: 0,
            accepting: vec![false],
            delta: vec![0; letters],
        }
    }

    /// The DFA accepting every word over the alphabet.
    pub fn universal(alphabet: Alphabet) -> Dfa {
        let letters = alphabet.len();
        Dfa {
            alphabet,
            initial: 0,
            accepting: vec![true],
            delta: vec![0; letters],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    #[inline]
    pub fn step(&self, state: usize, letter: Letter) -> Option<usize> {
        let t = self.delta[state * self.alphabet.len() + letter];
        (t != NONE).then_some(t as usize)
    }

    /// State reached after reading `word`, if any.
    pub fn run(&self, word: &[Letter]) -> Option<usize> {
        word.iter()
            .try_fold(self.initial, |q, &l| self.step(q, l))
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.run(word).is_some_and(|q| self.accepting[q])
    }

    pub fn is_complete(&self) -> bool {
        !self.delta.contains(&NONE)
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone());
        for q in 0..self.num_states() {
            nfa.add_state(self.accepting[q]);
        }
        nfa.add_initial(self.initial);
        for q in 0..self.num_states() {
            for l in self.alphabet.letters() {
                if let Some(t) = self.step(q, l) {
                    nfa.transitions[q].push((l, t));
                }
            }
        }
        nfa
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for l in self.alphabet.letters() {
                if let Some(t) = self.step(q, l) {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        seen
    }

    fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for q in 0..n {
            for l in self.alphabet.letters() {
                if let Some(t) = self.step(q, l) {
                    preds[t].push(q);
                }
            }
        }
        let mut seen = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| seen[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Keeps only states that are reachable and can reach acceptance. The
    /// result is partial; an empty language gives a single rejecting state.
    pub fn trim(&self) -> Dfa {
        let reach = self.reachable();
        let coreach = self.coreachable();
        if !coreach[self.initial] {
            let letters = self.alphabet.len();
            return Dfa {
                alphabet: self.alphabet.clone(),
                initial: 0,
                accepting: vec![false],
                delta: vec![NONE; letters],
            };
        }
        let keep: Vec<bool> = (0..self.num_states())
            .map(|q| reach[q] && coreach[q])
            .collect();
        self.restrict(&keep)
    }

    fn restrict(&self, keep: &[bool]) -> Dfa {
        let mut map = vec![NONE; self.num_states()];
        let mut next = 0u32;
        for q in 0..self.num_states() {
            if keep[q] {
                map[q] = next;
                next += 1;
            }
        }
        let letters = self.alphabet.len();
        let mut delta = Vec::with_capacity(next as usize * letters);
        let mut accepting = Vec::with_capacity(next as usize);
        for q in 0..self.num_states() {
            if !keep[q] {
                continue;
            }
            accepting.push(self.accepting[q]);
            for l in 0..letters {
                let t = self.delta[q * letters + l];
                delta.push(if t == NONE { NONE } else { map[t as usize] });
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: map[self.initial] as usize,
            accepting,
            delta,
        }
    }

    /// Adds an explicit dead state if some transition is missing.
    pub fn complete(&self) -> Dfa {
        if self.is_complete() {
            return self.clone();
        }
        let mut out = self.clone();
        let dead = out.num_states() as u32;
        for t in out.delta.iter_mut() {
            if *t == NONE {
                *t = dead;
            }
        }
        out.accepting.push(false);
        out.delta
            .extend(std::iter::repeat_n(dead, self.alphabet.len()));
        out
    }

    /// Minimal complete DFA with canonical state numbering.
    pub fn minimize(&self) -> Dfa {
        let letters = self.alphabet.len();
        let dfa = self.restrict(&self.reachable()).complete();
        let n = dfa.num_states();

        // Moore refinement: split classes by successor classes until stable.
        let mut class: Vec<u32> = dfa.accepting.iter().map(|&a| a as u32).collect();
        let mut count = if dfa.accepting.iter().all(|&a| a) || !dfa.accepting.iter().any(|&a| a)
        {
            for c in class.iter_mut() {
                *c = 0;
            }
            1
        } else {
            2
        };
        let mut signature: Vec<u32> = vec![0; letters + 1];
        loop {
            let mut ids: HashMap<Vec<u32>, u32> = HashMap::with_capacity(count * 2);
            let mut next = vec![0u32; n];
            for q in 0..n {
                signature[0] = class[q];
                for l in 0..letters {
                    signature[l + 1] = class[dfa.delta[q * letters + l] as usize];
                }
                let fresh = ids.len() as u32;
                next[q] = *ids.entry(signature.clone()).or_insert(fresh);
            }
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        // Canonical relabelling of the quotient.
        let mut order = vec![NONE; count];
        let mut rep = vec![0usize; count];
        for q in (0..n).rev() {
            rep[class[q] as usize] = q;
        }
        let start = class[dfa.initial] as usize;
        order[start] = 0;
        let mut queue = VecDeque::from([start]);
        let mut seq = vec![start];
        while let Some(c) = queue.pop_front() {
            let q = rep[c];
            for l in 0..letters {
                let t = class[dfa.delta[q * letters + l] as usize] as usize;
                if order[t] == NONE {
                    order[t] = seq.len() as u32;
                    seq.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut delta = Vec::with_capacity(seq.len() * letters);
        let mut accepting = Vec::with_capacity(seq.len());
        for &c in &seq {
            let q = rep[c];
            accepting.push(dfa.accepting[q]);
            for l in 0..letters {
                delta.push(order[class[dfa.delta[q * letters + l] as usize] as usize]);
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            accepting,
            delta,
        }
    }

    /// Reachable part of the synchronous product. `alive` tells which pairs
    /// of (possibly dead) components can still lead to acceptance, `accept`
    /// combines the acceptance flags.
    fn product(
        &self,
        other: &Dfa,
        alive: impl Fn(bool, bool) -> bool,
        accept: impl Fn(bool, bool) -> bool,
    ) -> Result<Dfa> {
        check_alphabets(&self.alphabet, &other.alphabet)?;
        let letters = self.alphabet.len();
        let encode = |p: Option<usize>| p.map_or(NONE, |p| p as u32);
        let mut index: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        let start = (self.initial as u32, other.initial as u32);
        index.insert(start, 0);
        pairs.push(start);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            for l in 0..letters {
                let ta = (a != NONE).then(|| self.step(a as usize, l)).flatten();
                let tb = (b != NONE).then(|| other.step(b as usize, l)).flatten();
                if !alive(ta.is_some(), tb.is_some()) {
                    delta.push(NONE);
                    continue;
                }
                let key = (encode(ta), encode(tb));
                let id = *index.entry(key).or_insert_with(|| {
                    pairs.push(key);
                    (pairs.len() - 1) as u32
                });
                delta.push(id);
            }
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(a, b)| {
                accept(
                    a != NONE && self.accepting[a as usize],
                    b != NONE && other.accepting[b as usize],
                )
            })
            .collect();
        Ok(Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            accepting,
            delta,
        })
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        Ok(self
            .product(other, |a, b| a && b, |a, b| a && b)?
            .minimize())
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        Ok(self
            .product(other, |a, b| a || b, |a, b| a || b)?
            .minimize())
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        Ok(self
            .product(other, |a, _| a, |a, b| a && !b)?
            .minimize())
    }

    /// Complement relative to all words over the alphabet.
    pub fn complement(&self) -> Dfa {
        let mut out = self.complete();
        for a in out.accepting.iter_mut() {
            *a = !*a;
        }
        out.minimize()
    }

    pub fn boolean(&self, op: BoolOp, other: Option<&Dfa>) -> Result<Dfa> {
        let need = || other.ok_or_else(|| Error::InvalidArgument(format!("{op:?} needs two operands")));
        match op {
            BoolOp::Union => self.union(need()?),
            BoolOp::Intersect => self.intersect(need()?),
            BoolOp::Difference => self.difference(need()?),
            BoolOp::Complement => Ok(self.complement()),
        }
    }

    pub fn is_empty(&self) -> bool {
        let reach = self.reachable();
        !(0..self.num_states()).any(|q| reach[q] && self.accepting[q])
    }

    /// Language inclusion `L(self) ⊆ L(other)`.
    pub fn is_subset(&self, other: &Dfa) -> Result<bool> {
        Ok(self
            .product(other, |a, _| a, |a, b| a && !b)?
            .is_empty())
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        check_alphabets(&self.alphabet, &other.alphabet)?;
        Ok(self.minimize() == other.minimize())
    }

    /// True when the accepted language is finite.
    pub fn is_finite(&self) -> bool {
        !self.trim().has_cycle()
    }

    fn has_cycle(&self) -> bool {
        // Iterative three-colour DFS.
        let n = self.num_states();
        let letters = self.alphabet.len();
        let mut colour = vec![0u8; n];
        for root in 0..n {
            if colour[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            colour[root] = 1;
            while let Some(&mut (q, ref mut l)) = stack.last_mut() {
                if *l == letters {
                    colour[q] = 2;
                    stack.pop();
                    continue;
                }
                let letter = *l;
                *l += 1;
                if let Some(t) = self.step(q, letter) {
                    match colour[t] {
                        0 => {
                            colour[t] = 1;
                            stack.push((t, 0));
                        }
                        1 => return true,
                        _ => {}
                    }
                }
            }
        }
        false
    }
}
