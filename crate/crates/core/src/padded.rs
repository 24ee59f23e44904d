//! Synchronous relations as acceptors of `#`-padded tuple words.
//!
//! A tuple `(w_1, …, w_d)` is written as one word over the tuple alphabet by
//! right-padding every component with `#` up to the longest length. A word is
//! *well padded* when, on every track, `#` never precedes a base symbol; the
//! all-`#` letter does not exist. [`PaddedRelation`] wraps a canonical DFA
//! whose language consists of well-padded words only.
//!
//! Track conventions: tracks are numbered from 0. [`PaddedRelation::embed`]
//! places the tracks of a relation at given positions of a wider tuple,
//! leaving the other tracks free; [`cylindrify`](PaddedRelation::cylindrify)
//! inserts one new track at index `at`, shifting the later ones up; and
//! [`compose`](PaddedRelation::compose) works on `(x, y, z)`, joining
//! `R1(x, y)` and `R2(y, z)` and projecting away track 1.

use std::collections::HashMap;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::ans::Ans;
use crate::automaton::{check_alphabets, Dfa, Nfa, NONE};
use crate::error::{Error, Result};

/// Pads a tuple of words into one word over the tuple alphabet.
pub fn pad(alphabet: &Alphabet, tuple: &[Word]) -> Result<Vec<Letter>> {
    if tuple.len() != alphabet.arity() {
        return Err(Error::ArityMismatch {
            expected: alphabet.arity(),
            found: tuple.len(),
        });
    }
    let len = tuple.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = Vec::with_capacity(len);
    let mut tracks = vec![None; tuple.len()];
    for i in 0..len {
        for (slot, w) in tracks.iter_mut().zip(tuple) {
            *slot = w.get(i).copied();
        }
        out.push(alphabet.encode(&tracks).expect("some track is not padded"));
    }
    Ok(out)
}

/// Inverse of [`pad`]; fails on ill-padded words.
pub fn unpad(alphabet: &Alphabet, word: &[Letter]) -> Result<Vec<Word>> {
    let mut tuple: Vec<Word> = vec![Vec::new(); alphabet.arity()];
    let mut ended = vec![false; alphabet.arity()];
    for &letter in word {
        for (t, value) in alphabet.decode(letter).into_iter().enumerate() {
            match value {
                Some(_) if ended[t] => return Err(Error::IllPadded),
                Some(s) => tuple[t].push(s),
                None => ended[t] = true,
            }
        }
    }
    Ok(tuple)
}

/// DFA accepting every well-padded word over `alphabet`. State `m` is the
/// bitmask of tracks that have already ended.
pub fn well_padded(alphabet: &Alphabet) -> Dfa {
    let d = alphabet.arity();
    let letters = alphabet.len();
    let full = (1u64 << d) - 1;
    let masks: Vec<u64> = alphabet.letters().map(|l| alphabet.pad_mask(l)).collect();
    let mut table = vec![Vec::with_capacity(letters); 1 << d];
    for (mask, row) in table.iter_mut().enumerate() {
        let mask = mask as u64;
        for &pm in &masks {
            let symbols = full & !pm;
            row.push((mask & symbols == 0).then_some((mask | pm) as usize));
        }
    }
    Dfa::from_table(alphabet.clone(), 0, vec![true; 1 << d], table)
        .expect("well-formed table")
        .minimize()
}

/// True when every accepted word is well padded.
pub fn validate_padded(dfa: &Dfa) -> bool {
    dfa.is_subset(&well_padded(dfa.alphabet()))
        .expect("same alphabet")
}

/// A synchronous relation: a canonical DFA over a tuple alphabet accepting
/// only well-padded words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PaddedRelation {
    dfa: Dfa,
}

impl PaddedRelation {
    pub fn new(dfa: &Dfa) -> Result<Self> {
        if !validate_padded(dfa) {
            return Err(Error::IllPadded);
        }
        Ok(PaddedRelation {
            dfa: dfa.minimize(),
        })
    }

    /// Wraps a DFA already known to be well padded.
    pub(crate) fn trusted(dfa: Dfa) -> Self {
        debug_assert!(validate_padded(&dfa));
        PaddedRelation { dfa }
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn into_dfa(self) -> Dfa {
        self.dfa
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }

    pub fn arity(&self) -> usize {
        self.dfa.alphabet().arity()
    }

    pub fn contains(&self, tuple: &[Word]) -> bool {
        pad(self.alphabet(), tuple).is_ok_and(|w| self.dfa.accepts(&w))
    }

    pub fn is_empty(&self) -> bool {
        self.dfa.is_empty()
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        Ok(PaddedRelation {
            dfa: self.dfa.intersect(&other.dfa)?,
        })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        Ok(PaddedRelation {
            dfa: self.dfa.union(&other.dfa)?,
        })
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        Ok(PaddedRelation {
            dfa: self.dfa.difference(&other.dfa)?,
        })
    }

    /// The empty relation of the given arity.
    pub fn empty(alphabet: &Alphabet) -> Self {
        PaddedRelation {
            dfa: Dfa::empty(alphabet.clone()).minimize(),
        }
    }

    /// Every well-padded tuple of the given arity.
    pub fn full(alphabet: &Alphabet) -> Self {
        PaddedRelation {
            dfa: well_padded(alphabet),
        }
    }

    /// Places track `i` of `self` at `positions[i]` of an `arity`-tuple; the
    /// remaining tracks range over all words.
    pub fn embed(&self, positions: &[usize], arity: usize) -> Result<Self> {
        if positions.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: positions.len(),
            });
        }
        if positions.iter().any(|&p| p >= arity)
            || (1..positions.len()).any(|i| positions[..i].contains(&positions[i]))
        {
            return Err(Error::InvalidArgument(format!(
                "bad track positions {positions:?} for arity {arity}"
            )));
        }
        let wide = self.alphabet().with_arity(arity)?;
        let narrow = self.alphabet();
        let full = (1u64 << arity) - 1;
        // Per wide letter: narrow letter (None when all embedded tracks pad) and pad mask.
        let letter_info: Vec<(Option<Letter>, u64)> = wide
            .letters()
            .map(|l| {
                let tracks = wide.decode(l);
                let sub: Vec<_> = positions.iter().map(|&p| tracks[p]).collect();
                (narrow.encode(&sub), wide.pad_mask(l))
            })
            .collect();

        const FIN: u32 = NONE - 1;
        let rel = &self.dfa;
        let mut ids: HashMap<(u32, u64), u32> = HashMap::new();
        let mut states: Vec<(u32, u64)> = vec![(rel.initial() as u32, 0)];
        ids.insert(states[0], 0);
        let mut delta: Vec<u32> = Vec::new();
        let mut i = 0;
        while i < states.len() {
            let (q, mask) = states[i];
            for &(sub, pm) in &letter_info {
                let next_state = if mask & (full & !pm) != 0 {
                    None
                } else {
                    match sub {
                        None if q == FIN || rel.is_accepting(q as usize) => Some(FIN),
                        None => None,
                        Some(_) if q == FIN => None,
                        Some(l) => rel.step(q as usize, l).map(|t| t as u32),
                    }
                };
                let target = match next_state {
                    None => NONE,
                    Some(t) => {
                        let key = (t, mask | pm);
                        *ids.entry(key).or_insert_with(|| {
                            states.push(key);
                            (states.len() - 1) as u32
                        })
                    }
                };
                delta.push(target);
            }
            i += 1;
        }
        let accepting = states
            .iter()
            .map(|&(q, _)| q == FIN || rel.is_accepting(q as usize))
            .collect();
        let dfa = Dfa::from_parts(wide, 0, accepting, delta).minimize();
        Ok(PaddedRelation::trusted(dfa))
    }

    /// Inserts a new track at index `at`, unconstrained or ranging over the
    /// language of `constrain` (an arity-1 automaton over the same base).
    pub fn cylindrify(&self, at: usize, constrain: Option<&Dfa>) -> Result<Self> {
        let d = self.arity();
        if at > d {
            return Err(Error::InvalidArgument(format!("track {at} out of range")));
        }
        let positions: Vec<usize> = (0..d).map(|i| if i < at { i } else { i + 1 }).collect();
        let lifted = self.embed(&positions, d + 1)?;
        match constrain {
            None => Ok(lifted),
            Some(language) => {
                check_alphabets(language.alphabet(), &self.alphabet().with_arity(1)?)?;
                let track = PaddedRelation::trusted(language.minimize()).embed(&[at], d + 1)?;
                lifted.intersect(&track)
            }
        }
    }

    /// Existential projection: removes track `drop` and re-pads.
    ///
    /// Letters that become all-`#` after erasing the track can only form a
    /// suffix of a well-padded word; they turn into ε-moves.
    pub fn project(&self, drop: usize) -> Result<Self> {
        let d = self.arity();
        if d < 2 {
            return Err(Error::InvalidArgument("cannot project a unary relation".into()));
        }
        if drop >= d {
            return Err(Error::InvalidArgument(format!("track {drop} out of range")));
        }
        let wide = self.alphabet();
        let narrow = wide.with_arity(d - 1)?;
        let erase: Vec<Option<Letter>> = wide
            .letters()
            .map(|l| {
                let mut tracks = wide.decode(l);
                tracks.remove(drop);
                narrow.encode(&tracks)
            })
            .collect();
        let mut nfa = Nfa::new(narrow.clone());
        for q in 0..self.dfa.num_states() {
            nfa.add_state(self.dfa.is_accepting(q));
        }
        nfa.add_initial(self.dfa.initial());
        for q in 0..self.dfa.num_states() {
            for l in wide.letters() {
                if let Some(t) = self.dfa.step(q, l) {
                    match erase[l] {
                        Some(e) => nfa.add_transition(q, e, t),
                        None => nfa.add_epsilon(q, t),
                    }
                }
            }
        }
        let dfa = nfa.determinize().intersect(&well_padded(&narrow))?;
        Ok(PaddedRelation::trusted(dfa))
    }

    /// `{(x, z) : ∃y. (x, y) ∈ self ∧ (y, z) ∈ other}`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        for r in [self, other] {
            if r.arity() != 2 {
                return Err(Error::ArityMismatch {
                    expected: 2,
                    found: r.arity(),
                });
            }
        }
        check_alphabets(self.alphabet(), other.alphabet())?;
        let left = self.cylindrify(2, None)?;
        let right = other.cylindrify(0, None)?;
        left.intersect(&right)?.project(1)
    }

    /// Accepted tuples as word vectors, for short words.
    pub fn tuples_up_to(&self, max_len: usize) -> Vec<Vec<Word>> {
        let mut out = Vec::new();
        for w in self.dfa.radix_words() {
            if w.len() > max_len {
                break;
            }
            out.push(unpad(self.alphabet(), &w).expect("relation is well padded"));
        }
        out
    }
}

/// `{(w, w) : w ∈ L}`.
pub fn identity(ans: &Ans) -> PaddedRelation {
    let l = ans.dfa();
    let pair = ans.alphabet().with_arity(2).expect("small alphabet");
    let table = (0..l.num_states())
        .map(|q| {
            pair.letters()
                .map(|letter| match pair.decode(letter)[..] {
                    [Some(x), Some(y)] if x == y => l.step(q, x),
                    _ => None,
                })
                .collect()
        })
        .collect();
    let accepting = (0..l.num_states()).map(|q| l.is_accepting(q)).collect();
    let dfa = Dfa::from_table(pair, l.initial(), accepting, table).expect("well-formed table");
    PaddedRelation::trusted(dfa.minimize())
}

/// `{(x, y)^# : x, y ∈ L, x ≤ y in radix order}`.
pub fn radix_leq(ans: &Ans) -> PaddedRelation {
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum Cmp {
        Equal,
        Less,
        Greater,
    }
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    struct State {
        x: usize,
        y: usize,
        x_done: bool,
        y_done: bool,
        cmp: Cmp,
    }
    let l = ans.dfa();
    let pair = ans.alphabet().with_arity(2).expect("small alphabet");
    let start = State {
        x: l.initial(),
        y: l.initial(),
        x_done: false,
        y_done: false,
        cmp: Cmp::Equal,
    };
    let advance = |q: usize, done: bool, value: Option<usize>| -> Option<(usize, bool)> {
        match value {
            None => Some((q, true)),
            Some(_) if done => None,
            Some(s) => l.step(q, s).map(|t| (t, false)),
        }
    };
    let mut ids: HashMap<State, usize> = HashMap::from([(start, 0)]);
    let mut states = vec![start];
    let mut table: Vec<Vec<Option<usize>>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let st = states[i];
        let mut row = Vec::with_capacity(pair.len());
        for letter in pair.letters() {
            let tracks = pair.decode(letter);
            let next = advance(st.x, st.x_done, tracks[0]).and_then(|(x, x_done)| {
                advance(st.y, st.y_done, tracks[1]).map(|(y, y_done)| {
                    let cmp = match (st.cmp, tracks[0], tracks[1]) {
                        (Cmp::Equal, Some(a), Some(b)) if a < b => Cmp::Less,
                        (Cmp::Equal, Some(a), Some(b)) if a > b => Cmp::Greater,
                        (c, _, _) => c,
                    };
                    State {
                        x,
                        y,
                        x_done,
                        y_done,
                        cmp,
                    }
                })
            });
            row.push(next.map(|s| {
                *ids.entry(s).or_insert_with(|| {
                    states.push(s);
                    states.len() - 1
                })
            }));
        }
        table.push(row);
        i += 1;
    }
    let accepting = states
        .iter()
        .map(|s| {
            let in_l = l.is_accepting(s.x) && l.is_accepting(s.y);
            let ordered = match (s.x_done, s.y_done) {
                (true, false) => true,
                (false, true) => false,
                _ => s.cmp != Cmp::Greater,
            };
            in_l && ordered
        })
        .collect();
    let dfa = Dfa::from_table(pair, 0, accepting, table).expect("well-formed table");
    PaddedRelation::trusted(dfa.minimize())
}

/// Strict radix order on `L`.
pub fn radix_less(ans: &Ans) -> PaddedRelation {
    radix_leq(ans)
        .difference(&identity(ans))
        .expect("same alphabet")
}

/// `{(rep n, rep(n+1))^#}`, obtained as `< \ (< ∘ <)`.
pub fn successor(ans: &Ans) -> PaddedRelation {
    let less = radix_less(ans);
    let skip = less.compose(&less).expect("binary relations");
    less.difference(&skip).expect("same alphabet")
}

/// `{(rep n, rep(n+k))^#}` as the `k`-fold composition of the successor.
pub fn shift(ans: &Ans, k: u64) -> PaddedRelation {
    let mut result = identity(ans);
    if k == 0 {
        return result;
    }
    let mut power = successor(ans);
    let mut k = k;
    let mut first = true;
    loop {
        if k & 1 == 1 {
            result = if first {
                power.clone()
            } else {
                result.compose(&power).expect("binary relations")
            };
            first = false;
        }
        k >>= 1;
        if k == 0 {
            break;
        }
        power = power.compose(&power).expect("binary relations");
    }
    result
}

/// The `arity`-tuples whose components all lie in `L`.
pub fn all_in_language(ans: &Ans, arity: usize) -> Result<PaddedRelation> {
    let single = PaddedRelation::trusted(ans.dfa().minimize());
    let mut out = PaddedRelation::full(&ans.alphabet().with_arity(arity)?);
    for t in 0..arity {
        out = out.intersect(&single.embed(&[t], arity)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::OrderedAlphabet;

    fn pair(symbols: &[&str]) -> Alphabet {
        Alphabet::new(OrderedAlphabet::new(symbols.iter().copied()).unwrap(), 2).unwrap()
    }

    #[test]
    fn pad_examples() {
        let alpha = pair(&["a", "b"]);
        let w = pad(&alpha, &[vec![0, 1], vec![0]]).unwrap();
        let names: Vec<_> = w.iter().map(|&l| alpha.letter_name(l)).collect();
        assert_eq!(names, ["a|a", "b|#"]);
        assert_eq!(unpad(&alpha, &w).unwrap(), vec![vec![0, 1], vec![0]]);

        let unary = pair(&["a"]);
        let w = pad(&unary, &[vec![0; 2], vec![0; 4]]).unwrap();
        let names: Vec<_> = w.iter().map(|&l| unary.letter_name(l)).collect();
        assert_eq!(names, ["a|a", "a|a", "#|a", "#|a"]);

        let bad = [unary.parse_letter("#|a").unwrap(), unary.parse_letter("a|a").unwrap()];
        assert_eq!(unpad(&unary, &bad).unwrap_err(), Error::IllPadded);
    }

    #[test]
    fn validation() {
        let unary = pair(&["a"]);
        let good = Dfa::parse(
            "alphabet a\narity 2\nstates p q\ninitial p\naccepting p q\n\
             trans p a|a p\ntrans p #|a q\ntrans q #|a q\n",
        )
        .unwrap();
        assert!(validate_padded(&good));
        let bad = Dfa::parse(
            "alphabet a\narity 2\nstates p q r\ninitial p\naccepting r\n\
             trans p #|a q\ntrans q a|a r\n",
        )
        .unwrap();
        assert!(!validate_padded(&bad));
        assert_eq!(PaddedRelation::new(&bad).unwrap_err(), Error::IllPadded);
        assert!(validate_padded(&well_padded(&unary)));
    }

    #[test]
    fn unary_successor() {
        let ans = Ans::full(["a"]).unwrap();
        let succ = successor(&ans);
        let expected = Dfa::parse(
            "alphabet a\narity 2\nstates p q\ninitial p\naccepting q\n\
             trans p a|a p\ntrans p #|a q\n",
        )
        .unwrap();
        assert!(succ.dfa().equivalent(&expected).unwrap());
    }

    #[test]
    fn cylinder_then_project() {
        let ans = Ans::full(["a", "b"]).unwrap();
        let eq = identity(&ans);
        let cyl = eq.cylindrify(2, None).unwrap();
        assert_eq!(cyl.arity(), 3);
        assert!(cyl.contains(&[vec![0, 1], vec![0, 1], vec![1, 1, 1]]));
        assert!(!cyl.contains(&[vec![0, 1], vec![1], vec![]]));
        assert_eq!(cyl.project(2).unwrap(), eq);
        let constrained = eq.cylindrify(0, Some(ans.dfa())).unwrap();
        assert_eq!(constrained.project(0).unwrap(), eq);
    }

    #[test]
    fn leq_basics() {
        let ans = Ans::full(["a", "b"]).unwrap();
        let leq = radix_leq(&ans);
        let r = |n: u64| ans.rep(n);
        assert!(leq.contains(&[r(3), r(5)]));
        assert!(!leq.contains(&[r(5), r(3)]));
        assert!(leq.contains(&[r(4), r(4)]));
    }

    #[test]
    fn shift_matches_rank_arithmetic() {
        let ans = Ans::full(["a", "b"]).unwrap();
        for k in [0u64, 1, 2, 3] {
            let rel = shift(&ans, k);
            for n in 0u64..40 {
                for m in 0u64..40 {
                    assert_eq!(rel.contains(&[ans.rep(n), ans.rep(m)]), m == n + k);
                }
            }
        }
    }

    #[test]
    fn embedding_checks_positions() {
        let ans = Ans::full(["a"]).unwrap();
        let eq = identity(&ans);
        assert!(eq.embed(&[0, 0], 3).is_err());
        assert!(eq.embed(&[0, 3], 3).is_err());
        assert!(eq.embed(&[0], 3).is_err());
        let swapped = eq.embed(&[1, 0], 2).unwrap();
        assert_eq!(swapped, eq);
    }
}
