//! Abstract numeration systems.
//!
//! An [`Ans`] is an infinite regular language `L` over an ordered alphabet.
//! `rep(n)` is the `(n+1)`-th word of `L` in radix order and `val` is its
//! inverse. Both run by greedy descent over the counts `u_q(m)`, so they cost
//! `O(|w|·|Σ|)` big-integer operations rather than an enumeration.
//!
//! For a word `w = σ_1…σ_m ∈ L` read from the initial state through states
//! `q_0, q_1, …`:
//!
//! ```text
//! val(w) = V(m) + Σ_i Σ_{τ < σ_i} u_{δ(q_{i-1}, τ)}(m - i)
//! ```
//!
//! where `V(m)` counts the words of `L` shorter than `m`. Reducing this
//! formula modulo `r` gives the recognizers for arithmetic progressions and
//! for the congruence relation `n - m ≡ s (mod r)`, see [`ModClassTable`].

use std::collections::HashMap;
use std::sync::{RwLock, RwLockReadGuard};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::alphabet::{Alphabet, Letter, OrderedAlphabet, Symbol, Word};
use crate::automaton::{Dfa, Nfa};
use crate::counting::CountTable;
use crate::error::{Error, Result};

/// An abstract numeration system `S = (L, Σ, <)`.
pub struct Ans {
    dfa: Dfa,
    /// Per state, the letter of its only transition when that is a self-loop.
    sole_loop: Vec<Option<Letter>>,
    counts: RwLock<CountTable>,
}

impl Clone for Ans {
    fn clone(&self) -> Self {
        Ans {
            dfa: self.dfa.clone(),
            sole_loop: self.sole_loop.clone(),
            counts: RwLock::new(self.counts.read().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for Ans {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ans")
            .field("alphabet", self.dfa.alphabet().base())
            .field("states", &self.dfa.num_states())
            .finish()
    }
}

impl Ans {
    /// Builds the system from an automaton for `L` over `order`.
    pub fn new(language: &Nfa, order: &OrderedAlphabet) -> Result<Ans> {
        let alphabet = language.alphabet();
        if alphabet.arity() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: alphabet.arity(),
            });
        }
        if alphabet.base() != order {
            return Err(Error::AlphabetMismatch(format!(
                "{:?} vs {:?}",
                alphabet.base(),
                order
            )));
        }
        Ans::from_dfa(&language.determinize())
    }

    /// Uses the automaton's own alphabet order.
    pub fn from_language(language: &Nfa) -> Result<Ans> {
        Ans::new(language, language.alphabet().base())
    }

    pub fn from_dfa(language: &Dfa) -> Result<Ans> {
        if language.alphabet().arity() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: language.alphabet().arity(),
            });
        }
        let dfa = language.minimize().trim();
        if dfa.is_finite() {
            return Err(Error::FiniteLanguage);
        }
        let counts = RwLock::new(CountTable::new(&dfa));
        let sole_loop = (0..dfa.num_states())
            .map(|q| {
                let mut outs = dfa.alphabet().letters().filter_map(|l| dfa.step(q, l).map(|t| (l, t)));
                match (outs.next(), outs.next()) {
                    (Some((l, t)), None) if t == q => Some(l),
                    _ => None,
                }
            })
            .collect();
        Ok(Ans {
            dfa,
            sole_loop,
            counts,
        })
    }

    /// Parses an automaton file; the `alphabet` line fixes the order.
    pub fn parse(text: &str) -> Result<Ans> {
        Ans::from_language(&Nfa::parse(text)?)
    }

    /// `Σ*` over the given symbols.
    pub fn full<I, S>(symbols: I) -> Result<Ans>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let alphabet = Alphabet::plain(OrderedAlphabet::new(symbols)?);
        Ans::from_dfa(&Dfa::universal(alphabet))
    }

    /// Trim minimal DFA of `L` (partial).
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }

    pub fn order(&self) -> &OrderedAlphabet {
        self.dfa.alphabet().base()
    }

    pub fn contains(&self, word: &[Symbol]) -> bool {
        self.dfa.accepts(word)
    }

    fn table(&self, m: usize) -> RwLockReadGuard<'_, CountTable> {
        {
            let table = self.counts.read().unwrap();
            if table.rows() > m + 1 {
                return table;
            }
        }
        self.counts.write().unwrap().ensure(m + 1);
        self.counts.read().unwrap()
    }

    /// `u_q(m)` for a state of [`dfa`](Self::dfa).
    pub fn count(&self, q: usize, m: usize) -> Result<BigUint> {
        if q >= self.dfa.num_states() {
            return Err(Error::UnknownState(format!("q{q}")));
        }
        Ok(self.table(m).get(q, m).clone())
    }

    /// The `(n+1)`-th word of `L` in radix order.
    pub fn rep(&self, n: impl Into<BigUint>) -> Word {
        let n: BigUint = n.into();
        // Length: the smallest m with V(m+1) > n.
        let mut hi = 1usize;
        while self.table(hi).below(hi + 1) <= &n {
            hi *= 2;
        }
        let table = self.table(hi);
        let (mut lo, mut hi) = (0usize, hi);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if table.below(mid + 1) > &n {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let m = lo;
        let mut rest = n - table.below(m);
        let mut q = self.dfa.initial();
        let mut word = Vec::with_capacity(m);
        for i in 0..m {
            if let Some(sigma) = self.sole_loop[q] {
                word.resize(m, sigma);
                break;
            }
            let remaining = m - i - 1;
            // The last letter with a nonzero count is taken without comparing.
            let mut chosen = None;
            let mut pending: Option<(Letter, usize)> = None;
            for sigma in self.dfa.alphabet().letters() {
                let Some(t) = self.dfa.step(q, sigma) else {
                    continue;
                };
                if table.get(t, remaining).is_zero() {
                    continue;
                }
                if let Some((ps, pt)) = pending {
                    let c = table.get(pt, remaining);
                    if &rest < c {
                        chosen = Some((ps, pt));
                        break;
                    }
                    rest -= c;
                }
                pending = Some((sigma, t));
            }
            let (sigma, t) = chosen
                .or(pending)
                .expect("rank lies within the counted words");
            word.push(sigma);
            q = t;
        }
        word
    }

    /// Rank of `word` in radix order.
    pub fn val(&self, word: &[Symbol]) -> Result<BigUint> {
        if word.iter().any(|&s| s >= self.order().len()) {
            return Err(Error::UnknownSymbol(format!("{word:?}")));
        }
        let m = word.len();
        let table = self.table(m);
        let mut rank = table.below(m).clone();
        let mut q = self.dfa.initial();
        for (i, &sigma) in word.iter().enumerate() {
            if let Some(only) = self.sole_loop[q] {
                if word[i..].iter().all(|&s| s == only) {
                    break;
                }
                return Err(Error::NotInLanguage);
            }
            let remaining = m - i - 1;
            for tau in 0..sigma {
                if let Some(t) = self.dfa.step(q, tau) {
                    rank += table.get(t, remaining);
                }
            }
            q = self.dfa.step(q, sigma).ok_or(Error::NotInLanguage)?;
        }
        if !self.dfa.is_accepting(q) {
            return Err(Error::NotInLanguage);
        }
        Ok(rank)
    }

    /// `val` for ranks that fit a `u64`.
    pub fn val_u64(&self, word: &[Symbol]) -> Result<u64> {
        self.val(word)?
            .to_u64()
            .ok_or_else(|| Error::InvalidArgument("rank does not fit in u64".into()))
    }

    /// Number of words of `L` of length below `m`.
    pub fn words_below(&self, m: usize) -> BigUint {
        self.table(m).below(m).clone()
    }

    pub fn mod_class_table(&self, modulus: u64) -> Result<ModClassTable> {
        ModClassTable::new(&self.dfa, modulus)
    }

    /// DFA accepting exactly `{rep(r·n + s) : n ≥ threshold}`.
    ///
    /// With `r = 0` the set is the singleton `{rep(s)}`. Any `s` is accepted;
    /// `s ≥ r` is folded into the threshold.
    pub fn progression_recognizer(&self, r: u64, s: u64, threshold: u64) -> Result<Dfa> {
        if r == 0 {
            return Ok(word_dfa(self.alphabet(), &self.rep(s)));
        }
        let (s, threshold) = (s % r, threshold + s / r);
        let table = self.mod_class_table(r)?;
        let nfa = self.residue_nfa(&table, s);
        let all = nfa.determinize().minimize();
        if threshold == 0 {
            return Ok(all);
        }
        let excluded: Vec<Word> = (0..threshold)
            .map(|n| self.rep(BigUint::from(r) * n + s))
            .collect();
        all.difference(&finite_dfa(self.alphabet(), &excluded))
    }

    /// NFA for the words whose rank is `≡ s (mod r)`.
    fn residue_nfa(&self, table: &ModClassTable, s: u64) -> Nfa {
        let r = table.modulus;
        let mut nfa = Nfa::new(self.alphabet().clone());
        let mut ids: HashMap<(usize, u64, usize), usize> = HashMap::new();
        let mut queue: Vec<(usize, u64, usize)> = Vec::new();
        let q0 = self.dfa.initial();
        let mut intern = |nfa: &mut Nfa, key: (usize, u64, usize), queue: &mut Vec<_>| {
            *ids.entry(key).or_insert_with(|| {
                let (q, rho, class) = key;
                let id = nfa.add_state(self.dfa.is_accepting(q) && rho == s && class == 0);
                queue.push(key);
                id
            })
        };
        for class in 0..table.classes() {
            let id = intern(&mut nfa, (q0, table.below(class), class), &mut queue);
            nfa.add_initial(id);
        }
        while let Some(key) = queue.pop() {
            let (q, rho, class) = key;
            let from = intern(&mut nfa, key, &mut queue);
            for &prev in table.predecessors(class).iter() {
                let mut acc = rho;
                for sigma in self.dfa.alphabet().letters() {
                    let Some(t) = self.dfa.step(q, sigma) else {
                        continue;
                    };
                    let to = intern(&mut nfa, (t, acc, prev), &mut queue);
                    nfa.add_transition(from, sigma, to);
                    acc = (acc + table.count(prev, t)) % r;
                }
            }
        }
        nfa
    }

    /// DFA over the padded pair alphabet accepting
    /// `{(rep m, rep n)^# : n - m ≡ s (mod r)}`.
    pub fn congruence_pair_recognizer(&self, r: u64, s: u64) -> Result<Dfa> {
        if r == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let s = s % r;
        let table = self.mod_class_table(r)?;
        let pair = self.alphabet().with_arity(2)?;
        let mut nfa = Nfa::new(pair.clone());

        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        struct Track {
            state: usize,
            class: usize,
            done: bool,
        }
        type Key = (Track, Track, u64);

        let mut ids: HashMap<Key, usize> = HashMap::new();
        let mut queue: Vec<Key> = Vec::new();
        let dfa = &self.dfa;
        let mut intern = |nfa: &mut Nfa, key: Key, queue: &mut Vec<Key>| {
            *ids.entry(key).or_insert_with(|| {
                let (a, b, rho) = key;
                let ok = |t: Track| dfa.is_accepting(t.state) && t.class == 0;
                let id = nfa.add_state(ok(a) && ok(b) && rho == s);
                queue.push(key);
                id
            })
        };
        let q0 = dfa.initial();
        for c1 in 0..table.classes() {
            for c2 in 0..table.classes() {
                let a = Track { state: q0, class: c1, done: false };
                let b = Track { state: q0, class: c2, done: false };
                let rho = (table.below(c2) + r - table.below(c1)) % r;
                let id = intern(&mut nfa, (a, b, rho), &mut queue);
                nfa.add_initial(id);
            }
        }

        // Moves of one track on one track value: (next track, rank delta mod r).
        let moves = |t: Track, value: Option<Symbol>| -> Vec<(Track, u64)> {
            match value {
                None if t.class == 0 => vec![(Track { done: true, ..t }, 0)],
                None => vec![],
                Some(_) if t.done => vec![],
                Some(sigma) => {
                    let Some(next) = dfa.step(t.state, sigma) else {
                        return vec![];
                    };
                    table
                        .predecessors(t.class)
                        .iter()
                        .map(|&prev| {
                            let delta = (0..sigma)
                                .filter_map(|tau| dfa.step(t.state, tau))
                                .map(|q| table.count(prev, q))
                                .sum::<u64>()
                                % r;
                            (Track { state: next, class: prev, done: false }, delta)
                        })
                        .collect()
                }
            }
        };

        while let Some(key) = queue.pop() {
            let (a, b, rho) = key;
            let from = intern(&mut nfa, key, &mut queue);
            for letter in pair.letters() {
                let tracks = pair.decode(letter);
                for (a2, da) in moves(a, tracks[0]) {
                    for (b2, db) in moves(b, tracks[1]) {
                        let rho2 = (rho + db + r - da) % r;
                        let to = intern(&mut nfa, (a2, b2, rho2), &mut queue);
                        nfa.add_transition(from, letter, to);
                    }
                }
            }
        }
        Ok(nfa.determinize().minimize())
    }
}

/// Counts modulo `r`, indexed by length class.
///
/// The vector `W(m) = (u_q(m) mod r for each q, V(m) mod r)` evolves by a
/// fixed map over a finite set, hence is eventually periodic: `W(m + p) =
/// W(m)` for `m ≥ P`. Lengths are folded into `P + p` classes; class `c < P`
/// is the length `c` itself, and a length `m ≥ P` has class
/// `P + (m - P) mod p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModClassTable {
    modulus: u64,
    preperiod: usize,
    period: usize,
    counts: Vec<Vec<u64>>,
    below: Vec<u64>,
}

impl ModClassTable {
    pub fn new(dfa: &Dfa, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        let n = dfa.num_states();
        let successors: Vec<Vec<usize>> = (0..n)
            .map(|q| dfa.alphabet().letters().filter_map(|l| dfa.step(q, l)).collect())
            .collect();
        let step = |w: &Vec<u64>| -> Vec<u64> {
            let mut next: Vec<u64> = successors
                .iter()
                .map(|succ| succ.iter().map(|&t| w[t]).sum::<u64>() % modulus)
                .collect();
            next.push((w[n] + w[dfa.initial()]) % modulus);
            next
        };
        let mut first: Vec<u64> = (0..n)
            .map(|q| u64::from(dfa.is_accepting(q)) % modulus)
            .collect();
        first.push(0);

        let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut history: Vec<Vec<u64>> = Vec::new();
        let mut current = first;
        let (preperiod, period) = loop {
            if let Some(&start) = seen.get(&current) {
                break (start, history.len() - start);
            }
            seen.insert(current.clone(), history.len());
            let next = step(&current);
            history.push(current);
            current = next;
        };
        // Re-check periodicity over three further periods.
        let mut probe = history[preperiod].clone();
        for m in preperiod..=preperiod + 3 * period {
            let class = preperiod + (m - preperiod) % period;
            assert_eq!(probe, history[class], "count vectors must be periodic");
            probe = step(&probe);
        }
        let counts = history.iter().map(|w| w[..n].to_vec()).collect();
        let below = history.iter().map(|w| w[n]).collect();
        Ok(ModClassTable {
            modulus,
            preperiod,
            period,
            counts,
            below,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn preperiod(&self) -> usize {
        self.preperiod
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn classes(&self) -> usize {
        self.preperiod + self.period
    }

    pub fn class_of(&self, length: usize) -> usize {
        if length < self.preperiod {
            length
        } else {
            self.preperiod + (length - self.preperiod) % self.period
        }
    }

    /// `u_q(m) mod r` for any `m` of class `class`.
    pub fn count(&self, class: usize, q: usize) -> u64 {
        self.counts[class][q]
    }

    /// `V(m) mod r` for any `m` of class `class`.
    pub fn below(&self, class: usize) -> u64 {
        self.below[class]
    }

    /// Classes of `m - 1` for the lengths `m ≥ 1` of class `class`.
    pub fn predecessors(&self, class: usize) -> Vec<usize> {
        let (p, per) = (self.preperiod, self.period);
        let mut out = Vec::with_capacity(2);
        if class == p {
            if p > 0 {
                out.push(p - 1);
            }
            if !out.contains(&(p + per - 1)) {
                out.push(p + per - 1);
            }
        } else if class > 0 {
            out.push(class - 1);
        }
        out
    }
}

/// DFA accepting exactly one word.
pub fn word_dfa(alphabet: &Alphabet, word: &[Letter]) -> Dfa {
    finite_dfa(alphabet, &[word.to_vec()])
}

/// DFA accepting exactly the listed words.
pub fn finite_dfa(alphabet: &Alphabet, words: &[Vec<Letter>]) -> Dfa {
    let mut nfa = Nfa::new(alphabet.clone());
    let root = nfa.add_state(false);
    nfa.add_initial(root);
    let mut children: HashMap<(usize, Letter), usize> = HashMap::new();
    for w in words {
        let mut q = root;
        for &l in w {
            q = match children.get(&(q, l)) {
                Some(&t) => t,
                None => {
                    let t = nfa.add_state(false);
                    nfa.add_transition(q, l, t);
                    children.insert((q, l), t);
                    t
                }
            };
        }
        nfa.set_accepting(q, true);
    }
    nfa.determinize().minimize()
}
