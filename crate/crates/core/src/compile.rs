//! Compiling 1-recognizable sets into automata for an arbitrary numeration
//! system, and checking the result against the set by enumeration.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::alphabet::Word;
use crate::ans::Ans;
use crate::automaton::Dfa;
use crate::error::Result;
use crate::normal_form::NfUnion;
use crate::padded::{all_in_language, pad, radix_leq, shift, unpad, PaddedRelation};
use crate::yset::{y_decompose, YSet};

/// An automaton accepting `rep_S(X)^#` together with a description of `X`.
#[derive(Clone, Debug)]
pub struct CompiledSet {
    pub relation: PaddedRelation,
    pub source: String,
}

impl CompiledSet {
    pub fn dfa(&self) -> &Dfa {
        self.relation.dfa()
    }
}

/// Builds relations for one numeration system and dimension, caching the
/// shift relations and compiled Y-sets it has already produced.
pub struct Compiler<'a> {
    ans: &'a Ans,
    dim: usize,
    tracks_in_l: PaddedRelation,
    shifts: HashMap<u64, PaddedRelation>,
    pairs: HashMap<(u64, u64, u64), PaddedRelation>,
    ysets: HashMap<YSet, PaddedRelation>,
    leq: Option<PaddedRelation>,
}

impl<'a> Compiler<'a> {
    pub fn new(ans: &'a Ans, dim: usize) -> Result<Self> {
        Ok(Compiler {
            ans,
            dim,
            tracks_in_l: all_in_language(ans, dim)?,
            shifts: HashMap::new(),
            pairs: HashMap::new(),
            ysets: HashMap::new(),
            leq: None,
        })
    }

    fn shift(&mut self, k: u64) -> PaddedRelation {
        self.shifts
            .entry(k)
            .or_insert_with(|| shift(self.ans, k))
            .clone()
    }

    /// `{(rep m, rep n)^# : n = m + r·i + s, i ≥ n_min}` with `r > 0`.
    ///
    /// A third track guesses `v = rep(m + r·n_min + s)`; then `v ≤ rep n` in
    /// radix order together with `n − m ≡ s (mod r)` is the condition.
    fn progression_pair(&mut self, r: u64, s: u64, n_min: u64) -> Result<PaddedRelation> {
        if let Some(done) = self.pairs.get(&(r, s, n_min)) {
            return Ok(done.clone());
        }
        let shifted = self.shift(r * n_min + s).embed(&[0, 1], 3)?;
        let leq = self.leq.get_or_insert_with(|| radix_leq(self.ans)).embed(&[1, 2], 3)?;
        let cong = PaddedRelation::new(&self.ans.congruence_pair_recognizer(r, s)?)?;
        let cong = cong.embed(&[0, 2], 3)?;
        let pair = shifted.intersect(&leq)?.intersect(&cong)?.project(1)?;
        self.pairs.insert((r, s, n_min), pair.clone());
        Ok(pair)
    }

    /// Relation of arity `dim` for a single Y-set.
    pub fn yset(&mut self, y: &YSet) -> Result<PaddedRelation> {
        y.validate(self.dim)?;
        if let Some(done) = self.ysets.get(y) {
            return Ok(done.clone());
        }
        let base = self.ans.alphabet();
        let rel = match y {
            YSet::OnlyJ { j, r, s, n_min } => {
                let language = self.ans.progression_recognizer(*r, *s, *n_min)?;
                self.on_tracks(&PaddedRelation::new(&language)?, &[*j])?
            }
            YSet::JAndK {
                j,
                k,
                r: 0,
                s,
                ..
            } => {
                let pair = self.shift(*s);
                self.on_tracks(&pair, &[*k, *j])?
            }
            YSet::JAndK { j, k, r, s, n_min } => {
                let pair = self.progression_pair(*r, *s, *n_min)?;
                self.on_tracks(&pair, &[*k, *j])?
            }
            YSet::OnlyJFinite { j, r, s, finite } => {
                let mut out = PaddedRelation::empty(&base.with_arity(self.dim)?);
                for n in finite {
                    let single = YSet::OnlyJ {
                        j: *j,
                        r: 0,
                        s: r * n + s,
                        n_min: 0,
                    };
                    out = out.union(&self.yset(&single)?)?;
                }
                out
            }
            YSet::JAndKFinite {
                j,
                k,
                r,
                s,
                finite,
            } => {
                let mut out = PaddedRelation::empty(&base.with_arity(self.dim)?);
                for n in finite {
                    let single = YSet::JAndK {
                        j: *j,
                        k: *k,
                        r: 0,
                        s: r * n + s,
                        n_min: 0,
                    };
                    out = out.union(&self.yset(&single)?)?;
                }
                out
            }
        };
        self.ysets.insert(y.clone(), rel.clone());
        Ok(rel)
    }

    fn on_tracks(&self, rel: &PaddedRelation, positions: &[usize]) -> Result<PaddedRelation> {
        rel.embed(positions, self.dim)?.intersect(&self.tracks_in_l)
    }

    /// Relation for a finite union of normal forms.
    pub fn set(&mut self, set: &NfUnion) -> Result<PaddedRelation> {
        let mut out = PaddedRelation::empty(&self.ans.alphabet().with_arity(self.dim)?);
        for nf in set.forms() {
            let decomposition = y_decompose(nf)?;
            for term in decomposition.terms() {
                let mut acc = self.tracks_in_l.clone();
                for y in term {
                    acc = acc.intersect(&self.yset(y)?)?;
                }
                out = out.union(&acc)?;
            }
        }
        Ok(out)
    }
}

pub fn compile_yset(ans: &Ans, y: &YSet, dim: usize) -> Result<CompiledSet> {
    let relation = Compiler::new(ans, dim)?.yset(y)?;
    Ok(CompiledSet {
        relation,
        source: y.to_string(),
    })
}

pub fn compile(ans: &Ans, set: &NfUnion) -> Result<CompiledSet> {
    let relation = Compiler::new(ans, set.dim())?.set(set)?;
    Ok(CompiledSet {
        relation,
        source: set.to_text(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// In the set, rejected by the automaton.
    Missing,
    /// Accepted by the automaton, not in the set.
    Spurious,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Missing => "missing",
            Direction::Spurious => "spurious",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: u64,
    pub failures: Vec<(Vec<u64>, Direction)>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return writeln!(f, "OK n_checked={}", self.checked);
        }
        for (tuple, direction) in &self.failures {
            let coords: Vec<String> = tuple.iter().map(u64::to_string).collect();
            writeln!(f, "FAIL tuple=({}) direction={direction}", coords.join(","))?;
        }
        Ok(())
    }
}

/// Two-sided check of an automaton against a set.
///
/// Every tuple of `[0, bound]^d` is tested for agreement between set
/// membership and acceptance of its padded representation. Then every
/// accepted word no longer than `rep(bound)` is decoded and must lie in the
/// set.
pub fn verify(ans: &Ans, set: &NfUnion, automaton: &Dfa, bound: u64) -> Result<VerifyReport> {
    let d = set.dim();
    let alphabet = ans.alphabet().with_arity(d)?;
    crate::automaton::check_alphabets(&alphabet, automaton.alphabet())?;
    let members = set.points_in_box(bound);
    let reps: Vec<Word> = (0..=bound).map(|n| ans.rep(n)).collect();
    let side = bound + 1;
    let total = side.pow(d as u32);

    let mut failures: Vec<(Vec<u64>, Direction)> = (0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let mut x = vec![0u64; d];
            for slot in x.iter_mut().rev() {
                *slot = code % side;
                code /= side;
            }
            let words: Vec<Word> = x.iter().map(|&n| reps[n as usize].clone()).collect();
            let word = pad(&alphabet, &words).expect("arity matches");
            let expected = members.contains(&x);
            let accepted = automaton.accepts(&word);
            match (expected, accepted) {
                (true, false) => Some((x, Direction::Missing)),
                (false, true) => Some((x, Direction::Spurious)),
                _ => None,
            }
        })
        .collect();
    let mut checked = total;

    let max_len = reps.last().map_or(0, Vec::len);
    let mut spurious = BTreeSet::new();
    for word in automaton.radix_words() {
        if word.len() > max_len {
            break;
        }
        checked += 1;
        let decoded = unpad(&alphabet, &word).and_then(|tuple| {
            tuple
                .iter()
                .map(|w| ans.val_u64(w))
                .collect::<Result<Vec<u64>>>()
        });
        match decoded {
            Ok(x) if set.contains(&x) => {}
            Ok(x) => {
                spurious.insert(x);
            }
            Err(_) => {
                spurious.insert(Vec::new());
            }
        }
    }
    for x in spurious {
        if !failures.iter().any(|(y, _)| *y == x) {
            failures.push((x, Direction::Spurious));
        }
    }
    failures.sort();
    Ok(VerifyReport { checked, failures })
}
